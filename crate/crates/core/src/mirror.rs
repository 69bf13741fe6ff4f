//! Large-radius and orbifold frame data for local P^2.
//!
//! The large-radius frame packages the generators A, F, X, D, E as exact
//! series in the B-model coordinate y, together with the mirror map
//! Q(y) = exp(log y + s1(y)) and its inverse, and the genus-zero Yukawa
//! coupling -X/(3A^3). The orbifold frame provides the analogous data in
//! the coordinate x at y = x^{-3}, with its own mirror map sigma(x).
//!
//! Both constructors verify the defining ring relations (A^2 D = X,
//! E = (D-X)/2 at large radius; A_orb^2 D_orb = 27 X, E_orb = 3X/2 at the
//! orbifold) before returning, as a transcription guard.

use crate::rational::{factorial, harmonic, pochhammer, rat, rat_int, Rat};
use crate::ringxf::RingXF;
use crate::series::{hypergeometric_2f1, RatSeries, Series, Var};
use num_traits::{One, Zero};

pub const VAR_Y: Var = Var("y");
pub const VAR_X: Var = Var("x");
pub const VAR_Q: Var = Var("Q");
pub const VAR_SIGMA: Var = Var("sigma");

/// Frame of large-radius generators, exact to order N.
#[derive(Clone)]
pub struct LargeRadiusFrame {
    pub order: i64,
    /// A(y) = 1 + theta s1 = 2F1(1/3, 2/3; 1; -27y).
    pub a: RatSeries,
    /// F(y) = theta log A.
    pub f: RatSeries,
    /// X(y) = 1/(1+27y).
    pub x: RatSeries,
    /// D(y) with A^2 D = X.
    pub d: RatSeries,
    /// E(y) = (D - X)/2.
    pub e: RatSeries,
    /// Power-series tail of the logarithmic solution: log Q = log y + s1.
    pub s1: RatSeries,
    /// Power-series tail of the double-logarithmic solution.
    pub s2: RatSeries,
    /// Q(y)/y, a unit series.
    pub q_over_y: RatSeries,
    /// y(Q), valuation-1 series in Q.
    pub y_of_q: RatSeries,
    /// Genus-zero Yukawa coupling -X/(3A^3) in y.
    pub yukawa: RatSeries,
}

impl LargeRadiusFrame {
    pub fn new(order: i64) -> Self {
        assert!(order >= 3, "large-radius frame needs order >= 3");
        let n = order + 2;
        // s1 = 3 sum_{d>=1} (3d-1)!/(d!)^3 (-y)^d
        let mut s1c = vec![Rat::zero(); n as usize];
        // s2 = 9 sum_{d>=1} (3d-1)! (H_{3d-1} - H_d)/(d!)^3 (-y)^d
        let mut s2c = vec![Rat::zero(); n as usize];
        // shat = -3 sum_{d>=1} (3d-1)! H_d (-y)^d / (d!)^3
        let mut shatc = vec![Rat::zero(); n as usize];
        for d in 1..n {
            let du = d as u64;
            let base = Rat::from_integer(factorial(3 * du - 1))
                / Rat::from_integer(factorial(du).pow(3));
            let sign = if d % 2 == 1 { -Rat::one() } else { Rat::one() };
            s1c[d as usize] = rat_int(3) * &base * &sign;
            s2c[d as usize] =
                rat_int(9) * &base * (harmonic(3 * du - 1) - harmonic(du)) * &sign;
            shatc[d as usize] = rat_int(-3) * &base * harmonic(du) * &sign;
        }
        let s1 = Series::from_coeffs(VAR_Y, s1c);
        let s2 = Series::from_coeffs(VAR_Y, s2c);
        let shat = Series::from_coeffs(VAR_Y, shatc);

        let a = Series::one(VAR_Y).add(&s1.theta());
        let f = a.theta().div(&a).expect("A is a unit series");
        let x = Series::one(VAR_Y)
            .add(&Series::monomial(VAR_Y, rat_int(27), 1))
            .truncate(n)
            .inverse()
            .expect("1+27y is a unit series");
        // D = 1 + theta((s1 + theta s2)/A)
        let d = Series::one(VAR_Y).add(
            &s1.add(&s2.theta()).div(&a).expect("unit").theta(),
        );
        // E = theta((theta shat)/A)
        let e = shat.theta().div(&a).expect("unit").theta();

        // internal relation checks
        let hyp_arg = Series::monomial(VAR_Y, rat_int(-27), 1).truncate(n);
        let a_hyp = hypergeometric_2f1(&rat(1, 3), &rat(2, 3), &Rat::one(), &hyp_arg)
            .expect("2F1 parameters regular");
        assert!(a.agrees_with(&a_hyp), "A disagrees with its hypergeometric form");
        assert!(
            a.mul(&a).mul(&d).agrees_with(&x),
            "modularity relation A^2 D = X violated"
        );
        assert!(
            e.scale_rat(&rat_int(2)).agrees_with(&d.sub(&x)),
            "modularity relation 2E = D - X violated"
        );
        assert!(
            RingXF::derivation_self_test(&x, &f),
            "theta F closure coefficient failed its series self-test"
        );

        let q_over_y = s1.exp().expect("s1 has positive valuation");
        let q_of_y = q_over_y.shift(1);
        let y_of_q = {
            let mut r = q_of_y.revert().expect("mirror map has valuation 1");
            r = r.map(|c| c.clone());
            Series::from_coeffs(VAR_Q, (0..r.cut()).map(|k| r.coeff(k).unwrap()).collect())
        };
        let yukawa = x
            .scale_rat(&rat(-1, 3))
            .div(&a.mul(&a).mul(&a))
            .expect("A unit");

        LargeRadiusFrame {
            order,
            a,
            f,
            x,
            d,
            e,
            s1,
            s2,
            q_over_y,
            y_of_q,
            yukawa,
        }
    }

    /// Re-expands a y-series as a Q-series through the inverse mirror map.
    pub fn to_q_series(&self, s: &RatSeries) -> RatSeries {
        let relabeled =
            Series::from_coeffs(VAR_Y, (0..s.cut()).map(|k| s.coeff(k).unwrap()).collect());
        let y_q = Series::from_coeffs(
            VAR_Y,
            (0..self.y_of_q.cut())
                .map(|k| self.y_of_q.coeff(k).unwrap())
                .collect(),
        );
        let composed = relabeled.compose(&y_q).expect("mirror map valuation 1");
        Series::from_coeffs(
            VAR_Q,
            (0..composed.cut()).map(|k| composed.coeff(k).unwrap()).collect(),
        )
    }

    /// Evaluates a ring element on (X(y), F(y)).
    pub fn eval_ring(&self, e: &RingXF) -> RatSeries {
        e.eval(&self.x, &self.f).expect("X(y) is a unit series")
    }
}

/// Structure constants of the small quantum product in closed form, as
/// Laurent polynomials in A, X with coefficients polynomial in the
/// elementary symmetric functions e1, e2, e3 of the fixed-point weights
/// (and 1/e3 where it appears).
#[derive(Clone, Debug, PartialEq)]
pub struct AXPoly {
    /// ((a, x, p1, p2, p3), coeff) for A^a X^x e1^p1 e2^p2 e3^p3.
    pub terms: Vec<((i32, i32, i32, i32, i32), Rat)>,
}

impl AXPoly {
    pub fn zero() -> Self {
        AXPoly { terms: vec![] }
    }

    pub fn term(c: Rat, a: i32, x: i32, p1: i32, p2: i32, p3: i32) -> Self {
        AXPoly { terms: vec![((a, x, p1, p2, p3), c)] }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Self::normalize(terms)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = vec![];
        for ((a1, x1, p1, q1, r1), c1) in &self.terms {
            for ((a2, x2, p2, q2, r2), c2) in &o.terms {
                terms.push(((a1 + a2, x1 + x2, p1 + p2, q1 + q2, r1 + r2), c1 * c2));
            }
        }
        Self::normalize(terms)
    }

    pub fn neg(&self) -> Self {
        AXPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn normalize(terms: Vec<((i32, i32, i32, i32, i32), Rat)>) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (k, c) in terms {
            let e = map.entry(k).or_insert_with(Rat::zero);
            *e += c;
        }
        map.retain(|_, v: &mut Rat| !v.is_zero());
        AXPoly { terms: map.into_iter().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Reduces modulo the rational-torus locus e2^2 = 3 e1 e3, leaving
    /// all e2-exponents in {0, 1}.
    pub fn reduce_rational_locus(&self) -> Self {
        let mut terms = vec![];
        for ((a, x, p1, p2, p3), c) in &self.terms {
            let pairs = p2 / 2;
            let rem = p2 % 2;
            let scale = crate::rational::power(&rat_int(3), pairs as i64);
            terms.push(((*a, *x, p1 + pairs, rem, p3 + pairs), c * scale));
        }
        Self::normalize(terms)
    }
}

/// The structure constants C^c_{ab} of the small quantum product, indexed
/// by (a, b, c) with a, b, c in {0, 1, 2}.
pub fn structure_constants() -> std::collections::BTreeMap<(u8, u8, u8), AXPoly> {
    use std::collections::BTreeMap;
    let mut m: BTreeMap<(u8, u8, u8), AXPoly> = BTreeMap::new();
    let one = AXPoly::term(Rat::one(), 0, 0, 0, 0, 0);
    // C^b_{0a} = delta_a^b (string axiom)
    for a in 0..3u8 {
        for b in 0..3u8 {
            let val = if a == b { one.clone() } else { AXPoly::zero() };
            m.insert((0, a, b), val.clone());
            m.insert((a, 0, b), val);
        }
    }
    // C^0_{ab} = eta^{00} eta_{ab}: with the block pairing this gives
    // C^0_{11} = 0, C^0_{12} = -e3, C^0_{22} = e1 e3.
    m.insert((1, 1, 0), AXPoly::zero());
    m.insert((1, 2, 0), AXPoly::term(-Rat::one(), 0, 0, 0, 0, 1));
    m.insert((2, 1, 0), AXPoly::term(-Rat::one(), 0, 0, 0, 0, 1));
    m.insert((2, 2, 0), AXPoly::term(Rat::one(), 0, 0, 1, 0, 1));
    // C^1_{11} = e1 X (1 - A^2) / (2 A^3)
    m.insert(
        (1, 1, 1),
        AXPoly::term(rat(1, 2), -3, 1, 1, 0, 0).add(&AXPoly::term(rat(-1, 2), -1, 1, 1, 0, 0)),
    );
    // C^2_{11} = X / A^3
    m.insert((1, 1, 2), AXPoly::term(Rat::one(), -3, 1, 0, 0, 0));
    // C^2_{12} = -e1 (A^2+1) X / (2A^3)
    let c212 = AXPoly::term(rat(-1, 2), -1, 1, 1, 0, 0).add(&AXPoly::term(rat(-1, 2), -3, 1, 1, 0, 0));
    m.insert((1, 2, 2), c212.clone());
    m.insert((2, 1, 2), c212);
    // C^1_{12} = (A^4-1) X e1^2 / (4A^3) - A e2
    let c112 = AXPoly::term(rat(1, 4), 1, 1, 2, 0, 0)
        .add(&AXPoly::term(rat(-1, 4), -3, 1, 2, 0, 0))
        .add(&AXPoly::term(-Rat::one(), 1, 0, 0, 1, 0));
    m.insert((1, 2, 1), c112.clone());
    m.insert((2, 1, 1), c112);
    // C^2_{22} = ((A^2+1)^2 X e1^2 - 4 A^4 e2) / (4A^3)
    let c222 = AXPoly::term(rat(1, 4), 1, 1, 2, 0, 0)
        .add(&AXPoly::term(rat(1, 2), -1, 1, 2, 0, 0))
        .add(&AXPoly::term(rat(1, 4), -3, 1, 2, 0, 0))
        .add(&AXPoly::term(-Rat::one(), 1, 0, 0, 1, 0));
    m.insert((2, 2, 2), c222);
    // C^1_{22} = -A^3 e3 / X + (A^2+1) A e1 e2 / 2 - (A^2-1)(A^2+1)^2 X e1^3 / (8A^3)
    let c122 = AXPoly::term(-Rat::one(), 3, -1, 0, 0, 1)
        .add(&AXPoly::term(rat(1, 2), 3, 0, 1, 1, 0))
        .add(&AXPoly::term(rat(1, 2), 1, 0, 1, 1, 0))
        .add(&{
            // -(A^2-1)(A^2+1)^2/(8A^3) X e1^3
            // (A^2-1)(A^2+1)^2 = A^6 + A^4 - A^2 - 1
            AXPoly::term(rat(-1, 8), 3, 1, 3, 0, 0)
                .add(&AXPoly::term(rat(-1, 8), 1, 1, 3, 0, 0))
                .add(&AXPoly::term(rat(1, 8), -1, 1, 3, 0, 0))
                .add(&AXPoly::term(rat(1, 8), -3, 1, 3, 0, 0))
        });
    m.insert((2, 2, 1), c122);
    m
}

/// WDVV consistency of the closed-form structure constants:
/// sum_{ab} eta_{ab} (C^a_{12} C^b_{12} - C^a_{11} C^b_{22}) = 0, with the
/// pairing eta_{00} = 1/e3, eta_{12} = eta_{21} = -1, eta_{22} = e1 (up to
/// the overall 1/(3 e1e2-scale), which drops out).
pub fn wdvv_check() -> bool {
    let c = structure_constants();
    let pair = |a: u8, b: u8| -> AXPoly {
        match (a, b) {
            (0, 0) => AXPoly::term(Rat::one(), 0, 0, 0, 0, -1),
            (1, 2) | (2, 1) => AXPoly::term(-Rat::one(), 0, 0, 0, 0, 0),
            (2, 2) => AXPoly::term(Rat::one(), 0, 0, 1, 0, 0),
            _ => AXPoly::zero(),
        }
    };
    let mut acc = AXPoly::zero();
    for a in 0..3u8 {
        for b in 0..3u8 {
            let eta = pair(a, b);
            if eta.is_zero() {
                continue;
            }
            let t = c[&(1, 2, a)].mul(&c[&(1, 2, b)]).sub(&c[&(1, 1, a)].mul(&c[&(2, 2, b)]));
            acc = acc.add(&eta.mul(&t));
        }
    }
    acc.reduce_rational_locus().is_zero()
}

/// Frame of orbifold-point generators, exact to order N in x.
#[derive(Clone)]
pub struct OrbifoldFrame {
    pub order: i64,
    /// A_orb(x) = x 2F1(1/3,1/3;2/3;-x^3/27).
    pub a_orb: RatSeries,
    /// F_orb = theta_x log A_orb.
    pub f_orb: RatSeries,
    /// X at y = x^{-3}: x^3/(x^3+27).
    pub x_of: RatSeries,
    /// D_orb with A_orb^2 D_orb = 27 X.
    pub d_orb: RatSeries,
    /// Orbifold mirror map sigma(x).
    pub sigma: RatSeries,
    /// Inverse mirror map x(sigma).
    pub x_of_sigma: RatSeries,
}

impl OrbifoldFrame {
    pub fn new(order: i64) -> Self {
        assert!(order >= 5, "orbifold frame needs order >= 5");
        let n = order + 3;
        let third = rat(1, 3);
        let two_thirds = rat(2, 3);
        let mut a_c = vec![Rat::zero(); n as usize];
        let mut sig_c = vec![Rat::zero(); n as usize];
        let mut i21_c = vec![Rat::zero(); n as usize];
        let mut shat_c = vec![Rat::zero(); n as usize];
        let mut m = 0u64;
        while (3 * m + 1) < n as u64 {
            let sign = if m % 2 == 1 { -Rat::one() } else { Rat::one() };
            let p13 = pochhammer(&third, m);
            let p23 = pochhammer(&two_thirds, m);
            let c13 = &p13 * &p13 * &p13;
            let c23 = &p23 * &p23 * &p23;
            a_c[(3 * m + 1) as usize] = &sign * &c13 / Rat::from_integer(factorial(3 * m));
            sig_c[(3 * m + 1) as usize] =
                &sign * &c13 / Rat::from_integer(factorial(3 * m + 1));
            if 3 * m + 2 < n as u64 {
                i21_c[(3 * m + 2) as usize] =
                    &sign * &c23 / Rat::from_integer(factorial(3 * m + 2));
            }
            // h(m) = sum_{j<m} 1/(3j+1)
            let mut h = Rat::zero();
            for j in 0..m {
                h += rat(1, 3 * j as i64 + 1);
            }
            shat_c[(3 * m + 1) as usize] =
                rat_int(-3) * &sign * &c13 * h / Rat::from_integer(factorial(3 * m + 1));
            m += 1;
        }
        let a_orb = Series::from_coeffs(VAR_X, a_c);
        let sigma = Series::from_coeffs(VAR_X, sig_c);
        let i21 = Series::from_coeffs(VAR_X, i21_c);
        let shat = Series::from_coeffs(VAR_X, shat_c);

        let f_orb = a_orb.theta().div(&a_orb).expect("A_orb/x is a unit");
        let x3_plus = Series::monomial(VAR_X, Rat::one(), 3)
            .add(&Series::constant(VAR_X, rat_int(27)))
            .truncate(n + 3);
        let x_of = Series::monomial(VAR_X, Rat::one(), 3)
            .truncate(n + 3)
            .div(&x3_plus)
            .expect("unit denominator");
        let d_orb = i21.theta().div(&a_orb).expect("unit").theta();
        let e_orb = shat.theta().div(&a_orb).expect("unit").theta();

        // hypergeometric cross-check of A_orb
        let arg = Series::monomial(VAR_X, rat(-1, 27), 3).truncate(n);
        let a_hyp = hypergeometric_2f1(&third, &third, &two_thirds, &arg)
            .expect("2F1 parameters regular")
            .shift(1);
        assert!(a_orb.agrees_with(&a_hyp), "A_orb disagrees with its hypergeometric form");
        assert!(
            a_orb.mul(&a_orb).mul(&d_orb).agrees_with(&x_of.scale_rat(&rat_int(27))),
            "orbifold relation A_orb^2 D_orb = 27X violated"
        );
        assert!(
            e_orb.agrees_with(&x_of.scale_rat(&rat(3, 2))),
            "orbifold relation E_orb = 3X/2 violated"
        );

        let x_of_sigma = {
            let r = sigma.revert().expect("sigma has valuation 1");
            Series::from_coeffs(
                VAR_SIGMA,
                (0..r.cut()).map(|k| r.coeff(k).unwrap()).collect(),
            )
        };

        OrbifoldFrame { order, a_orb, f_orb, x_of, d_orb, sigma, x_of_sigma }
    }

    /// The crepant-resolution transported image of a ring element:
    /// X -> X(x^{-3}), F -> -F_orb(x)/3, as an x-series. Fails when the
    /// image has a pole at x = 0.
    pub fn orb_image(&self, e: &RingXF) -> Result<RatSeries, crate::series::SeriesError> {
        let f_img = self.f_orb.scale_rat(&rat(-1, 3));
        e.eval(&self.x_of, &f_img)
    }

    /// Expands an x-series in the orbifold flat coordinate sigma.
    pub fn to_sigma_series(&self, s: &RatSeries) -> RatSeries {
        let x_sig = Series::from_coeffs(
            VAR_X,
            (0..self.x_of_sigma.cut())
                .map(|k| self.x_of_sigma.coeff(k).unwrap())
                .collect(),
        );
        let relabeled =
            Series::from_coeffs(VAR_X, (0..s.cut()).map(|k| s.coeff(k).unwrap()).collect());
        let composed = relabeled.compose(&x_sig).expect("valuation 1");
        Series::from_coeffs(
            VAR_SIGMA,
            (0..composed.cut()).map(|k| composed.coeff(k).unwrap()).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_radius_generators_low_orders() {
        let fr = LargeRadiusFrame::new(6);
        // A = 1 - 6y + 90y^2 - 1680y^3
        assert_eq!(fr.a.coeff(0).unwrap(), rat_int(1));
        assert_eq!(fr.a.coeff(1).unwrap(), rat_int(-6));
        assert_eq!(fr.a.coeff(2).unwrap(), rat_int(90));
        assert_eq!(fr.a.coeff(3).unwrap(), rat_int(-1680));
        // F = -6y + 144y^2 - 3636y^3
        assert_eq!(fr.f.coeff(1).unwrap(), rat_int(-6));
        assert_eq!(fr.f.coeff(2).unwrap(), rat_int(144));
        assert_eq!(fr.f.coeff(3).unwrap(), rat_int(-3636));
        // mirror map Q(y)/y = 1 - 6y + 63y^2 ...
        assert_eq!(fr.q_over_y.coeff(0).unwrap(), rat_int(1));
        assert_eq!(fr.q_over_y.coeff(1).unwrap(), rat_int(-6));
        assert_eq!(fr.q_over_y.coeff(2).unwrap(), rat_int(63));
        // inverse mirror map y(Q) = Q + 6Q^2 + 9Q^3 + 56Q^4...
        assert_eq!(fr.y_of_q.coeff(1).unwrap(), rat_int(1));
        assert_eq!(fr.y_of_q.coeff(2).unwrap(), rat_int(6));
        assert_eq!(fr.y_of_q.coeff(3).unwrap(), rat_int(9));
    }

    #[test]
    fn mirror_round_trip() {
        let fr = LargeRadiusFrame::new(8);
        // y(Q(y)) = y: compose y_of_q (in Q) with Q(y) (in y)
        let q_of_y = fr.q_over_y.shift(1);
        let y_q = Series::from_coeffs(
            VAR_Y,
            (0..fr.y_of_q.cut()).map(|k| fr.y_of_q.coeff(k).unwrap()).collect(),
        );
        let rt = y_q.compose(&q_of_y).unwrap();
        let id = Series::monomial(VAR_Y, Rat::one(), 1);
        assert!(rt.agrees_with(&id));
    }

    #[test]
    fn yukawa_series() {
        // -X/(3A^3) = -1/3 + 3y + ... ; [Q^1] of Yukawa in Q gives 3 (degree-1
        // genus-zero invariant via triple log-derivative).
        let fr = LargeRadiusFrame::new(8);
        assert_eq!(fr.yukawa.coeff(0).unwrap(), rat(-1, 3));
        assert_eq!(fr.yukawa.coeff(1).unwrap(), rat_int(3));
        let in_q = fr.to_q_series(&fr.yukawa);
        assert_eq!(in_q.coeff(1).unwrap(), rat_int(3));
        // degree 2: (Q d/dQ)^3 F_0 coefficient = -45/8 * 8 = -45; /d^3 = -45/8
        assert_eq!(in_q.coeff(2).unwrap(), rat_int(-45));
    }

    #[test]
    fn orbifold_generators_low_orders() {
        let fr = OrbifoldFrame::new(8);
        // A_orb = x - x^4/162 + ...
        assert_eq!(fr.a_orb.coeff(1).unwrap(), rat_int(1));
        assert_eq!(fr.a_orb.coeff(4).unwrap(), rat(-1, 162));
        // F_orb = 1 - x^3/54 + ...
        assert_eq!(fr.f_orb.coeff(0).unwrap(), rat_int(1));
        assert_eq!(fr.f_orb.coeff(3).unwrap(), rat(-1, 54));
        // sigma = x - x^4/648 + ...
        assert_eq!(fr.sigma.coeff(1).unwrap(), rat_int(1));
        assert_eq!(fr.sigma.coeff(4).unwrap(), rat(-1, 648));
    }

    #[test]
    fn structure_constant_closed_forms() {
        let c = structure_constants();
        // C^2_{11} = X/A^3
        assert_eq!(c[&(1, 1, 2)], AXPoly::term(Rat::one(), -3, 1, 0, 0, 0));
        // C^1_{11} = e1 X (1 - A^2)/(2A^3)
        assert_eq!(
            c[&(1, 1, 1)],
            AXPoly::term(rat(1, 2), -3, 1, 1, 0, 0).add(&AXPoly::term(rat(-1, 2), -1, 1, 1, 0, 0))
        );
        // string axiom row
        assert_eq!(c[&(0, 2, 2)], AXPoly::term(Rat::one(), 0, 0, 0, 0, 0));
        assert!(c[&(0, 2, 1)].is_zero());
    }

    #[test]
    fn wdvv_holds() {
        assert!(wdvv_check());
    }
}
