//! High-precision numerics over exact rationals: logarithms, pi, and the
//! conifold connection constant.
//!
//! Everything here is big-rational arithmetic with controlled truncation;
//! there is no floating point. The connection constant lambda is obtained
//! by expanding the conifold flat coordinate
//!
//!   t_cf = (sqrt(3)/2 pi) I_{2,1}(y)
//!
//! in the Frobenius basis {1, Pi_cf, Pi_log} at delta = 1 + 27y by
//! matching the value and two theta-derivatives at the midpoint
//! y = -1/54 (delta = 1/2), where both expansions converge like 2^-N.
//! The coefficients of 1 and Pi_log must vanish (the flat coordinate
//! vanishes linearly at the conifold); their observed size is returned
//! as a diagnostic. Only lambda^2 is consumed downstream.

use crate::conifold::{conifold_operator, ConifoldFrame, VAR_DELTA};
use crate::rational::{
    agreement_digits, decimal_string, factorial, harmonic, is_below_tolerance, rat, rat_int,
    round_to_digits, Rat,
};
use crate::series::{RatSeries, Series};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// atanh(x) = sum x^{2k+1}/(2k+1) for |x| < 1, to the requested accuracy.
fn atanh(x: &Rat, digits: u32) -> Rat {
    assert!(x.abs() < Rat::one());
    let tol = Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits + 5));
    let x2 = x * x;
    let mut term = x.clone();
    let mut acc = Rat::zero();
    let mut k = 0i64;
    loop {
        let contrib = &term / rat_int(2 * k + 1);
        acc += &contrib;
        if contrib.abs() < tol {
            break;
        }
        term = round_to_digits(&(&term * &x2), digits + 15);
        k += 1;
    }
    round_to_digits(&acc, digits + 10)
}

/// Natural logarithm of a positive rational to `digits` accurate digits.
pub fn ln_rat(x: &Rat, digits: u32) -> Rat {
    assert!(x.is_positive(), "ln of non-positive rational");
    let two = rat_int(2);
    let half = rat(1, 2);
    let mut x = x.clone();
    let mut pow2 = 0i64;
    while x > two {
        x = &x * &half;
        pow2 += 1;
    }
    while x < half {
        x = &x * &two;
        pow2 -= 1;
    }
    // ln x = 2 atanh((x-1)/(x+1)) for x in [1/2, 2]
    let core = atanh(&((&x - Rat::one()) / (&x + Rat::one())), digits) * rat_int(2);
    let ln2 = atanh(&rat(1, 3), digits) * rat_int(2);
    round_to_digits(&(core + ln2 * rat_int(pow2)), digits)
}

/// pi by the Machin formula, to `digits` accurate digits.
pub fn pi_approx(digits: u32) -> Rat {
    // pi/4 = 4 atan(1/5) - atan(1/239); atan via the atanh-style series
    fn atan(x: &Rat, digits: u32) -> Rat {
        let tol = Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits + 5));
        let x2 = x * x;
        let mut term = x.clone();
        let mut acc = Rat::zero();
        let mut k = 0i64;
        loop {
            let contrib = &term / rat_int(2 * k + 1);
            if k % 2 == 0 {
                acc += &contrib;
            } else {
                acc -= &contrib;
            }
            if contrib.abs() < tol {
                break;
            }
            term = round_to_digits(&(&term * &x2), digits + 15);
            k += 1;
        }
        acc
    }
    let p = atan(&rat(1, 5), digits + 5) * rat_int(16) - atan(&rat(1, 239), digits + 5) * rat_int(4);
    round_to_digits(&p, digits)
}

/// Result of the conifold connection-constant computation.
#[derive(Clone, Debug)]
pub struct ConnectionData {
    /// Coefficient of Pi_cf in t_cf.
    pub lambda: Rat,
    /// lambda^2, the only combination consumed by the ambiguity solver.
    pub lambda2: Rat,
    /// Residual coefficient of the constant solution (must vanish).
    pub a: Rat,
    /// Residual coefficient of the logarithmic solution (must vanish).
    pub mu: Rat,
    /// Requested precision in decimal digits.
    pub digits: u32,
    /// Series truncation order used on both sides of the matching.
    pub order: i64,
    /// Attempted small-fraction reconstruction of lambda, if any.
    pub lambda_reconstructed: Option<Rat>,
}

impl ConnectionData {
    pub fn lambda_decimal(&self, digits: u32) -> String {
        decimal_string(&self.lambda, digits)
    }
}

/// Value and first two theta-derivatives of the power-series tails of the
/// logarithmic and double-logarithmic solutions at a rational point.
fn large_radius_tails(y0: &Rat, n_terms: i64, digits: u32) -> [Rat; 6] {
    // s1 = 3 sum (3d-1)!/(d!)^3 (-y)^d,  s2 = 9 sum (3d-1)!(H_{3d-1}-H_d)/(d!)^3 (-y)^d
    let mut s1 = Rat::zero();
    let mut ts1 = Rat::zero();
    let mut tts1 = Rat::zero();
    let mut s2 = Rat::zero();
    let mut ts2 = Rat::zero();
    let mut tts2 = Rat::zero();
    let mut ypow = Rat::one();
    for d in 1..=n_terms {
        ypow = round_to_digits(&(&ypow * y0), digits + 25);
        let du = d as u64;
        let base = Rat::from_integer(factorial(3 * du - 1)) / Rat::from_integer(factorial(du).pow(3));
        let sgn = if d % 2 == 1 { -Rat::one() } else { Rat::one() };
        let c1 = rat_int(3) * &base * &sgn;
        let c2 = rat_int(9) * &base * (harmonic(3 * du - 1) - harmonic(du)) * &sgn;
        let t1 = round_to_digits(&(&c1 * &ypow), digits + 20);
        let t2 = round_to_digits(&(&c2 * &ypow), digits + 20);
        s1 += &t1;
        ts1 += &t1 * rat_int(d);
        tts1 += &t1 * rat_int(d * d);
        s2 += &t2;
        ts2 += &t2 * rat_int(d);
        tts2 += &t2 * rat_int(d * d);
    }
    [s1, ts1, tts1, s2, ts2, tts2].map(|v| round_to_digits(&v, digits + 15))
}

/// Evaluates a series and its first two theta_y-derivatives at delta0,
/// where theta_y = (delta - 1) d/d(delta).
fn theta_values(f: &RatSeries, delta0: &Rat, digits: u32) -> [Rat; 3] {
    let dm1 = Series::monomial(VAR_DELTA, Rat::one(), 1).sub(&Series::one(VAR_DELTA));
    let t1 = dm1.mul(&f.derivative());
    let t2 = dm1.mul(&t1.derivative());
    [f, &t1, &t2].map(|s| round_to_digits(&s.eval_partial(delta0), digits + 15))
}

/// Computes the connection constant by three-condition matching at
/// y = -1/54. `precision` is the target number of accurate digits.
pub fn connection_constant(precision: u32) -> ConnectionData {
    let digits = precision + 15;
    // 2^-N < 10^-(digits+5): N ~ 3.33 (digits+5)
    let n_terms = (((digits + 10) as f64) * 3.33).ceil() as i64;
    let y0 = rat(-1, 54);
    let delta0 = rat(1, 2);

    let [s1, ts1, tts1, s2, ts2, tts2] = large_radius_tails(&y0, n_terms, digits);
    let ln54 = ln_rat(&rat_int(54), digits);
    let l = -ln54; // log|y0|
    // t~ = L^2/2 + L s1 + s2 (real branch), and its theta-derivatives:
    //   theta t~ = L A + s1 + theta s2, A = 1 + theta s1
    //   theta^2 t~ = A + L theta A + theta s1 + theta^2 s2
    let a_val = Rat::one() + &ts1;
    let ta_val = &tts1;
    let v0 = &l * &l * rat(1, 2) + &l * &s1 + &s2;
    let v1 = &l * &a_val + &s1 + &ts2;
    let v2 = &a_val + &l * ta_val + &ts1 + &tts2;
    let pi_v = pi_approx(digits);
    // sqrt(3) via integer square root of 3 * 10^(2*digits)
    let sqrt3 = {
        let scale = BigInt::from(10u32).pow(digits);
        let v = (BigInt::from(3u32) * &scale * &scale).sqrt();
        Rat::new(v, scale)
    };
    let pref = round_to_digits(&(sqrt3 / (rat_int(2) * &pi_v)), digits + 10);
    let rhs = [v0, v1, v2].map(|v| round_to_digits(&(&pref * v), digits + 10));

    // Frobenius basis values at delta0.
    let frame = ConifoldFrame::new(n_terms + 4);
    let pi_vals = theta_values(&frame.pi_cf, &delta0, digits);
    // Pi_log = Pi_cf log(delta) + h:
    //   theta(Pi log d) = (theta Pi) log d + Pi (d-1)/d
    //   theta^2(Pi log d) = (theta^2 Pi) log d + 2 (theta Pi)(d-1)/d
    //                      + Pi (d-1)/d^2 * ((d-1) - (d-1)) ... computed
    // symbolically below through the operator helpers instead.
    let lnd0 = ln_rat(&rat(1, 2), digits);
    let h_vals = theta_values(&frame.pi_log_tail, &delta0, digits);
    // theta acts on u + v log(delta) as (theta u + (d-1) v / d, theta v).
    let dm1 = Series::monomial(VAR_DELTA, Rat::one(), 1).sub(&Series::one(VAR_DELTA));
    let pair_theta = |u: &RatSeries, v: &RatSeries| -> (RatSeries, RatSeries) {
        let tu = dm1.mul(&u.derivative()).add(&dm1.mul(&v.shift(-1)));
        let tv = dm1.mul(&v.derivative());
        (tu, tv)
    };
    let (u1, w1) = pair_theta(&frame.pi_log_tail, &frame.pi_cf);
    let (u2, w2) = pair_theta(&u1, &w1);
    let eval_pair = |u: &RatSeries, v: &RatSeries| -> Rat {
        round_to_digits(
            &(u.eval_partial(&delta0) + v.eval_partial(&delta0) * &lnd0),
            digits + 15,
        )
    };
    let log_vals = [
        round_to_digits(
            &(frame.pi_log_tail.eval_partial(&delta0)
                + frame.pi_cf.eval_partial(&delta0) * &lnd0),
            digits + 15,
        ),
        eval_pair(&u1, &w1),
        eval_pair(&u2, &w2),
    ];
    let _ = h_vals;

    // Solve [1, Pi, Pi_log; 0, theta..; 0, theta^2..] [a, lambda, mu] = rhs.
    let m = [
        [Rat::one(), pi_vals[0].clone(), log_vals[0].clone()],
        [Rat::zero(), pi_vals[1].clone(), log_vals[1].clone()],
        [Rat::zero(), pi_vals[2].clone(), log_vals[2].clone()],
    ];
    let sol = solve3(&m, &rhs, digits);
    let lambda = round_to_digits(&sol[1], precision);
    let lambda2 = round_to_digits(&(&lambda * &lambda), precision);
    let lambda_reconstructed = crate::rational::rational_reconstruct(
        &lambda,
        &BigInt::from(10u64).pow(precision / 3),
        &Rat::new(BigInt::one(), BigInt::from(10u32).pow(precision.saturating_sub(12))),
    );
    ConnectionData {
        lambda,
        lambda2,
        a: round_to_digits(&sol[0], precision),
        mu: round_to_digits(&sol[2], precision),
        digits: precision,
        order: n_terms,
        lambda_reconstructed,
    }
}

fn solve3(m: &[[Rat; 3]; 3], rhs: &[Rat; 3], digits: u32) -> [Rat; 3] {
    // Cramer's rule with rounding; the system is well-conditioned here.
    let det = |a: &[[Rat; 3]; 3]| -> Rat {
        let d = &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1])
            - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
            + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0]);
        round_to_digits(&d, digits + 10)
    };
    let d0 = det(m);
    assert!(!d0.is_zero(), "singular Frobenius matching system");
    let mut out = [Rat::zero(), Rat::zero(), Rat::zero()];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut mm = m.clone();
        for row in 0..3 {
            mm[row][col] = rhs[row].clone();
        }
        *slot = round_to_digits(&(det(&mm) / &d0), digits);
    }
    out
}

/// Checks stability of lambda under a precision/truncation increase; used
/// by the verification suites.
pub fn lambda_stability_digits(base: &ConnectionData, refined: &ConnectionData) -> u32 {
    agreement_digits(&base.lambda2, &refined.lambda2)
}

/// Convenience: |x| < 10^-digits.
pub fn vanishes(x: &Rat, digits: u32) -> bool {
    is_below_tolerance(x, digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_and_pi_digits() {
        let l2 = ln_rat(&rat_int(2), 40);
        // ln 2 = 0.693147180559945309417232121458...
        let expect = crate::rational::rat_from_str(
            "6931471805599453094172321214581765680755/10000000000000000000000000000000000000000",
        )
        .unwrap();
        assert!(agreement_digits(&l2, &expect) >= 38);
        let p = pi_approx(40);
        let pe = crate::rational::rat_from_str(
            "31415926535897932384626433832795028841971/10000000000000000000000000000000000000000",
        )
        .unwrap();
        assert!(agreement_digits(&p, &pe) >= 38);
    }

    #[test]
    fn connection_constant_is_unimodular() {
        // The conifold flat coordinate is exactly the normalized vanishing
        // solution: a = mu = 0 and lambda = +-1 to working precision.
        let c = connection_constant(30);
        assert!(vanishes(&c.a, 20), "constant admixture a = {}", c.lambda_decimal(25));
        assert!(vanishes(&c.mu, 20), "log admixture mu = {}", decimal_string(&c.mu, 25));
        assert!(
            agreement_digits(&c.lambda2, &Rat::one()) >= 20,
            "lambda^2 = {}",
            decimal_string(&c.lambda2, 25)
        );
    }
}
