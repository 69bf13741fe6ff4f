//! Conifold-point Frobenius data.
//!
//! In the local variable delta = 1 + 27y (so delta = 0 at the conifold
//! point y = -1/27) the level-zero Picard-Fuchs operator becomes
//!
//!   L = delta T^3 + (delta - 1) T^2 + (2/9)(delta - 1) T,
//!   T = (delta - 1) d/d(delta) = theta_y,
//!
//! with indicial roots {0, 1, 1}. The frame carries the normalized
//! vanishing solution Pi_cf = delta + O(delta^2), its logarithmic partner
//! Pi_log = Pi_cf log(delta) + h(delta), the conifold propagator
//! F_cf = theta_y log theta_y Pi_cf, and the reversion delta(Pi) used to
//! recoordinatize Laurent expansions into the conifold flat coordinate.

use crate::rational::{rat, rat_int, Rat};
use crate::series::{RatSeries, Series, SeriesError, Var};
use num_traits::{One, Zero};

pub const VAR_DELTA: Var = Var("delta");
pub const VAR_PI: Var = Var("Pi");

/// Applies T = (delta - 1) d/d(delta) to an exact polynomial/series.
fn t_op(f: &RatSeries) -> RatSeries {
    let dm1 = Series::monomial(VAR_DELTA, Rat::one(), 1).sub(&Series::one(VAR_DELTA));
    dm1.mul(&f.derivative())
}

/// Applies the level-zero Picard-Fuchs operator in the conifold chart.
pub fn conifold_operator(f: &RatSeries) -> RatSeries {
    let dm1 = Series::monomial(VAR_DELTA, Rat::one(), 1).sub(&Series::one(VAR_DELTA));
    let delta = Series::monomial(VAR_DELTA, Rat::one(), 1);
    let t1 = t_op(f);
    let t2 = t_op(&t1);
    let t3 = t_op(&t2);
    delta
        .mul(&t3)
        .add(&dm1.mul(&t2))
        .add(&dm1.mul(&t1).scale_rat(&rat(2, 9)))
}

/// Applies the operator to a log-decorated pair u + v*log(delta).
fn t_op_pair(u: &RatSeries, v: &RatSeries) -> (RatSeries, RatSeries) {
    let dm1 = Series::monomial(VAR_DELTA, Rat::one(), 1).sub(&Series::one(VAR_DELTA));
    // T(u + v log d) = (T u + (d-1) v / d) + (T v) log d
    let extra = dm1.mul(&v.shift(-1));
    (t_op(u).add(&extra), t_op(v))
}

fn operator_pair(u: &RatSeries, v: &RatSeries) -> (RatSeries, RatSeries) {
    let dm1 = Series::monomial(VAR_DELTA, Rat::one(), 1).sub(&Series::one(VAR_DELTA));
    let delta = Series::monomial(VAR_DELTA, Rat::one(), 1);
    let (u1, v1) = t_op_pair(u, v);
    let (u2, v2) = t_op_pair(&u1, &v1);
    let (u3, v3) = t_op_pair(&u2, &v2);
    let ur = delta
        .mul(&u3)
        .add(&dm1.mul(&u2))
        .add(&dm1.mul(&u1).scale_rat(&rat(2, 9)));
    let vr = delta
        .mul(&v3)
        .add(&dm1.mul(&v2))
        .add(&dm1.mul(&v1).scale_rat(&rat(2, 9)));
    (ur, vr)
}

#[derive(Clone)]
pub struct ConifoldFrame {
    pub order: i64,
    /// Pi_cf = delta + sum_{k>=2} c_k delta^k, the vanishing solution.
    pub pi_cf: RatSeries,
    /// Power-series part h of Pi_log = Pi_cf log(delta) + h(delta),
    /// normalized by h(0) = 0 and [delta^1] h = 0.
    pub pi_log_tail: RatSeries,
    /// F_cf(delta) = theta_y log theta_y Pi_cf.
    pub f_cf: RatSeries,
    /// delta as a series in Pi_cf (compositional inverse).
    pub delta_of_pi: RatSeries,
}

impl ConifoldFrame {
    pub fn new(order: i64) -> Self {
        assert!(order >= 4, "conifold frame needs order >= 4");
        let n = order + 2;

        // indicial structure check: the operator must kill delta^rho to
        // leading order exactly for rho in {0, 1, 1}; concretely L(1) = 0
        // and [delta^{-1}] L(delta) = 0.
        let one = Series::one(VAR_DELTA);
        assert!(conifold_operator(&one).is_known_zero(), "constant solution lost");
        let l_delta = conifold_operator(&Series::monomial(VAR_DELTA, Rat::one(), 1));
        assert_eq!(l_delta.coeff(-1).unwrap(), Rat::zero(), "indicial roots are not {{0,1,1}}");

        // Frobenius recursion for the vanishing solution.
        let mut pi = Series::monomial(VAR_DELTA, Rat::one(), 1);
        for k in 2..=n {
            // [delta^{k-2}] L(pi + c delta^k) = 0 with leading (indicial)
            // coefficient [delta^{k-2}] L(delta^k) = -k (k-1)^2
            let resid = conifold_operator(&pi).coeff(k - 2).unwrap();
            let c = resid / (rat_int(k) * rat_int(k - 1) * rat_int(k - 1));
            pi = pi.add(&Series::monomial(VAR_DELTA, c, k));
        }
        // exact annihilation to the computed order
        let lp = conifold_operator(&pi);
        for j in 0..(n - 1) {
            assert_eq!(lp.coeff(j).unwrap(), Rat::zero(), "Pi_cf not annihilated at order {j}");
        }

        // Logarithmic partner: solve L(h) = -N with N the log-free part of
        // L(Pi log delta); h normalized by h_0 = h_1 = 0.
        let (n_part, log_part) = operator_pair(&Series::zero(VAR_DELTA, n + 1), &pi);
        for j in 0..(n - 1) {
            assert_eq!(log_part.coeff(j).unwrap(), Rat::zero(), "log component survives");
        }
        assert_eq!(n_part.coeff(-1).unwrap_or_else(|_| Rat::zero()), Rat::zero());
        let mut h_poly = Series::zero(VAR_DELTA, crate::series::EXACT);
        for k in 2..=n {
            let resid = conifold_operator(&h_poly).add(&n_part).coeff(k - 2).unwrap();
            let c = resid / (rat_int(k) * rat_int(k - 1) * rat_int(k - 1));
            h_poly = h_poly.add(&Series::monomial(VAR_DELTA, c, k));
        }
        let h = h_poly.truncate(n + 1);
        let lcheck = conifold_operator(&h_poly).add(&n_part);
        for j in 0..(n - 1) {
            assert_eq!(lcheck.coeff(j).unwrap(), Rat::zero(), "Pi_log defect at order {j}");
        }

        // F_cf = T(T Pi)/ T Pi applied as theta_y log.
        let a_cf = t_op(&pi.clone().truncate(n + 1));
        let f_cf = t_op(&a_cf).div(&a_cf).expect("theta Pi_cf is a unit");

        let delta_of_pi = {
            let r = pi.truncate(n + 1).revert().expect("Pi_cf has valuation 1");
            Series::from_coeffs(VAR_PI, (0..r.cut()).map(|k| r.coeff(k).unwrap()).collect())
        };

        ConifoldFrame {
            order,
            pi_cf: pi.truncate(n + 1),
            pi_log_tail: h,
            f_cf,
            delta_of_pi,
        }
    }

    /// Re-expands a Laurent series in delta as a Laurent series in Pi_cf.
    pub fn to_pi_series(&self, s: &RatSeries) -> Result<RatSeries, SeriesError> {
        let d_pi = Series::from_coeffs(
            VAR_DELTA,
            (0..self.delta_of_pi.cut())
                .map(|k| self.delta_of_pi.coeff(k).unwrap())
                .collect(),
        );
        let composed = s.compose(&d_pi)?;
        let lo = composed.valuation();
        let mut out = Series::zero(VAR_PI, composed.cut());
        for e in lo..composed.cut() {
            out = out.add(
                &Series::monomial(VAR_PI, composed.coeff(e)?, e).truncate(composed.cut()),
            );
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_solution_coefficients() {
        let fr = ConifoldFrame::new(6);
        assert_eq!(fr.pi_cf.coeff(1).unwrap(), rat_int(1));
        assert_eq!(fr.pi_cf.coeff(2).unwrap(), rat(11, 18));
        assert_eq!(fr.pi_cf.coeff(3).unwrap(), rat(109, 243));
        assert_eq!(fr.pi_cf.coeff(4).unwrap(), rat(9389, 26244));
    }

    #[test]
    fn operator_annihilates_basis() {
        let fr = ConifoldFrame::new(8);
        let l = conifold_operator(&fr.pi_cf);
        for j in 0..8 {
            assert_eq!(l.coeff(j).unwrap(), Rat::zero());
        }
    }

    #[test]
    fn conifold_propagator_expansion() {
        // F_cf = -2/9 + (2/81) delta + (28/2187) delta^2 + ...
        let fr = ConifoldFrame::new(6);
        assert_eq!(fr.f_cf.coeff(0).unwrap(), rat(-2, 9));
        assert_eq!(fr.f_cf.coeff(1).unwrap(), rat(2, 81));
        assert_eq!(fr.f_cf.coeff(2).unwrap(), rat(28, 2187));
    }

    #[test]
    fn conifold_propagator_satisfies_ring_closure() {
        // theta F = -F^2 + (X-1)F + (2/9)(X-1) with X = 1/delta holds for
        // the conifold propagator as well (same Riccati flow).
        let fr = ConifoldFrame::new(10);
        let f = &fr.f_cf;
        let n = f.cut();
        let x = Series::monomial(VAR_DELTA, Rat::one(), -1).truncate(n);
        let xm1 = x.sub(&Series::one(VAR_DELTA));
        let lhs = t_op(f);
        let rhs = f
            .mul(f)
            .neg()
            .add(&xm1.mul(f))
            .add(&xm1.scale_rat(&rat(2, 9)));
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn pi_reversion_round_trip() {
        let fr = ConifoldFrame::new(6);
        let x_in_delta = Series::monomial(VAR_DELTA, Rat::one(), -1).truncate(5);
        let in_pi = fr.to_pi_series(&x_in_delta).unwrap();
        // 1/delta = Pi^{-1} + 11/18 + ... with zero gap structure checked
        // against the hand expansion of the reversion.
        assert_eq!(in_pi.coeff(-1).unwrap(), rat_int(1));
        assert_eq!(in_pi.coeff(0).unwrap(), rat(11, 18));
    }
}
