//! q-expansions of the weight-1/2/3 generators of the quasi-modular ring
//! for Gamma_1(3): Dedekind eta products, the second Eisenstein series,
//! the Hauptmodul y(tau), and the generators A, B, C.

use crate::rational::{rat, rat_int, Rat};
use crate::series::{RatSeries, Series, Var};
use num_traits::{One, Zero};

pub const VAR_TAU_Q: Var = Var("q");

/// Euler product prod_{n>=1} (1 - q^{kn}) via the pentagonal number
/// theorem, truncated at q^cut.
pub fn euler_product(k: i64, cut: i64) -> RatSeries {
    let mut acc = Series::zero(VAR_TAU_Q, cut);
    let mut j = 0i64;
    loop {
        let mut hit = false;
        for s in [j, -j] {
            if s == 0 && j != 0 {
                continue;
            }
            let e = k * s * (3 * s - 1) / 2;
            if e < cut {
                hit = true;
                let sign = if s.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
                acc = acc.add(&Series::monomial(VAR_TAU_Q, sign, e).truncate(cut));
            }
            if j == 0 {
                break;
            }
        }
        if !hit && j > 0 {
            break;
        }
        j += 1;
    }
    acc
}

/// E_2(k tau) = 1 - 24 sum sigma_1(n) q^{kn}.
pub fn eisenstein_e2(k: i64, cut: i64) -> RatSeries {
    let mut coeffs = vec![Rat::zero(); cut.max(1) as usize];
    coeffs[0] = Rat::one();
    let mut n = 1i64;
    while k * n < cut {
        let mut sigma = 0i64;
        for d in 1..=n {
            if n % d == 0 {
                sigma += d;
            }
        }
        coeffs[(k * n) as usize] = rat_int(-24 * sigma);
        n += 1;
    }
    Series::from_coeffs(VAR_TAU_Q, coeffs)
}

/// Modular q-expansion data for the Gamma_1(3) frame.
#[derive(Clone)]
pub struct ModularData {
    pub order: i64,
    /// eta(tau)/q^{1/24} = prod (1-q^n).
    pub p1: RatSeries,
    /// eta(3 tau)/q^{1/8} = prod (1-q^{3n}).
    pub p3: RatSeries,
    pub e2: RatSeries,
    pub e2_3: RatSeries,
    /// Hauptmodul y(tau) = -eta(3t)^12/(eta(t)^12 + 27 eta(3t)^12).
    pub y_of_q: RatSeries,
    /// A(tau) = (eta(t)^9/eta(3t)^3 + 27 eta(3t)^9/eta(t)^3)^{1/3}.
    pub a: RatSeries,
    /// B(tau) = (E2(t) + 3 E2(3t))/4.
    pub b: RatSeries,
    /// C(tau) = eta(t)^9/eta(3t)^3.
    pub c: RatSeries,
}

impl ModularData {
    pub fn new(order: i64) -> Self {
        assert!(order >= 5, "modular data needs order >= 5");
        let cut = order + 2;
        let p1 = euler_product(1, cut);
        let p3 = euler_product(3, cut);
        let p1_12 = p1.pow(12).expect("unit");
        let p3_12 = p3.pow(12).expect("unit");
        // y = -q P3^12 / (P1^12 + 27 q P3^12)
        let denom = p1_12.add(&p3_12.shift(1).scale_rat(&rat_int(27)));
        let y_of_q = p3_12.shift(1).neg().div(&denom).expect("unit denominator");
        // A^3 = P1^9/P3^3 + 27 q P3^9/P1^3
        let p1_9 = p1.pow(9).expect("unit");
        let p3_9 = p3.pow(9).expect("unit");
        let p1_3 = p1.pow(3).expect("unit");
        let p3_3 = p3.pow(3).expect("unit");
        let a3 = p1_9.div(&p3_3).unwrap().add(&p3_9.shift(1).scale_rat(&rat_int(27)).div(&p1_3).unwrap());
        // cube root of a unit series with leading 1
        let a = a3.log().expect("leading 1").scale_rat(&rat(1, 3)).exp().expect("val >= 1");
        let e2 = eisenstein_e2(1, cut);
        let e2_3 = eisenstein_e2(3, cut);
        let b = e2.add(&e2_3.scale_rat(&rat_int(3))).scale_rat(&rat(1, 4));
        let c = p1_9.div(&p3_3).unwrap();
        ModularData { order, p1, p3, e2, e2_3, y_of_q, a, b, c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_product_expansion() {
        // prod (1-q^n) = 1 - q - q^2 + q^5 + q^7 - q^12 - ...
        let p = euler_product(1, 13);
        let expect = [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(p.coeff(k as i64).unwrap(), rat_int(*e), "k={k}");
        }
    }

    #[test]
    fn eisenstein_expansion() {
        // E2 = 1 - 24q - 72q^2 - 96q^3 - 168q^4 - ...
        let e2 = eisenstein_e2(1, 5);
        assert_eq!(e2.coeff(0).unwrap(), rat_int(1));
        assert_eq!(e2.coeff(1).unwrap(), rat_int(-24));
        assert_eq!(e2.coeff(2).unwrap(), rat_int(-72));
        assert_eq!(e2.coeff(3).unwrap(), rat_int(-96));
        assert_eq!(e2.coeff(4).unwrap(), rat_int(-168));
    }

    #[test]
    fn hauptmodul_expansion() {
        // y(tau) = -q + 15q^2 - 171q^3 + ..., cross-checked numerically
        // against the eta products at q = 3e-3 to 40 digits.
        let m = ModularData::new(6);
        assert_eq!(m.y_of_q.coeff(1).unwrap(), rat_int(-1));
        assert_eq!(m.y_of_q.coeff(2).unwrap(), rat_int(15));
        assert_eq!(m.y_of_q.coeff(3).unwrap(), rat_int(-171));
    }

    #[test]
    fn modular_bridge_a() {
        // A(y(tau)) equals the eta-product form of A(tau).
        let m = ModularData::new(12);
        let fr = crate::mirror::LargeRadiusFrame::new(14);
        let a_y = Series::from_coeffs(
            VAR_TAU_Q,
            (0..fr.a.cut()).map(|k| fr.a.coeff(k).unwrap()).collect(),
        );
        let composed = a_y.compose(&m.y_of_q).unwrap();
        assert!(composed.agrees_with(&m.a));
    }

    #[test]
    fn modular_bridge_b() {
        // B(tau) = ((6F - X + 2)/D)(y(tau)) with D = X/A^2.
        let m = ModularData::new(12);
        let fr = crate::mirror::LargeRadiusFrame::new(14);
        let comb = fr
            .f
            .scale_rat(&rat_int(6))
            .sub(&fr.x)
            .add(&Series::constant(crate::mirror::VAR_Y, rat_int(2)))
            .div(&fr.d)
            .unwrap();
        let comb_q = Series::from_coeffs(
            VAR_TAU_Q,
            (0..comb.cut()).map(|k| comb.coeff(k).unwrap()).collect(),
        );
        let composed = comb_q.compose(&m.y_of_q).unwrap();
        assert!(composed.agrees_with(&m.b));
    }
}
