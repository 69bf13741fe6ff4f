//! The finite-generation ring Q[X^{+-1}, F] carrying the refined
//! potentials, with its logarithmic derivation.
//!
//! X = 1/(1+27y) is the inverse discriminant and F = theta log A the
//! propagator-type generator; theta = y d/dy acts through
//!
//!   theta X = X^2 - X,
//!   theta F = -F^2 + (X-1) F + (2/9)(X-1),
//!
//! extended by the Leibniz rule. The F-coefficient 2/9 is pinned by the
//! mandatory self-test against the power series of F(y) (see
//! [`RingXF::derivation_self_test`] and the large-radius frame).

use crate::rational::{rat, rat_int, rat_to_string, Rat};
use crate::series::{RatSeries, Series, SeriesError};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Element of Q[X^{+-1}, F]: finitely supported map
/// (m, n) -> coefficient of X^m F^n, with n >= 0.
#[derive(Clone, PartialEq, Default)]
pub struct RingXF {
    terms: BTreeMap<(i32, u32), Rat>,
}

impl fmt::Debug for RingXF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl RingXF {
    pub fn zero() -> Self {
        RingXF { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(rat_int(1), 0, 0)
    }

    pub fn monomial(c: Rat, m: i32, n: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((m, n), c);
        }
        RingXF { terms }
    }

    pub fn x_power(m: i32) -> Self {
        Self::monomial(rat_int(1), m, 0)
    }

    pub fn f_power(n: u32) -> Self {
        Self::monomial(rat_int(1), 0, n)
    }

    pub fn from_terms(terms: Vec<((i32, u32), Rat)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            if !c.is_zero() {
                let e = map.entry(k).or_insert_with(Rat::zero);
                *e += c;
            }
        }
        map.retain(|_, v: &mut Rat| !v.is_zero());
        RingXF { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: i32, n: u32) -> Rat {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let e = terms.entry(*k).or_insert_with(Rat::zero);
            *e += c;
        }
        terms.retain(|_, v: &mut Rat| !v.is_zero());
        RingXF { terms }
    }

    pub fn neg(&self) -> Self {
        RingXF {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RingXF {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<(i32, u32), Rat> = BTreeMap::new();
        for ((m1, n1), c1) in &self.terms {
            for ((m2, n2), c2) in &o.terms {
                let e = terms.entry((m1 + m2, n1 + n2)).or_insert_with(Rat::zero);
                *e += c1 * c2;
            }
        }
        terms.retain(|_, v: &mut Rat| !v.is_zero());
        RingXF { terms }
    }

    /// Degree in F (None when zero).
    pub fn deg_f(&self) -> Option<u32> {
        self.terms.keys().map(|(_, n)| *n).max()
    }

    /// Highest X-exponent (None when zero).
    pub fn deg_x(&self) -> Option<i32> {
        self.terms.keys().map(|(m, _)| *m).max()
    }

    /// Lowest X-exponent (None when zero).
    pub fn low_x(&self) -> Option<i32> {
        self.terms.keys().map(|(m, _)| *m).min()
    }

    /// Partial derivative in F.
    pub fn d_f(&self) -> Self {
        let mut terms = BTreeMap::new();
        for ((m, n), c) in &self.terms {
            if *n > 0 {
                terms.insert((*m, n - 1), c * rat_int(*n as i64));
            }
        }
        RingXF { terms }
    }

    /// Unique F-primitive with vanishing F-constant part.
    pub fn integrate_f(&self) -> Self {
        let mut terms = BTreeMap::new();
        for ((m, n), c) in &self.terms {
            terms.insert((*m, n + 1), c / rat_int(*n as i64 + 1));
        }
        RingXF { terms }
    }

    /// The logarithmic derivation: theta X = X^2 - X and
    /// theta F = -F^2 + (X-1)F + (2/9)(X-1), by the Leibniz rule.
    pub fn theta(&self) -> Self {
        let theta_f = Self::from_terms(vec![
            ((0, 2), rat_int(-1)),
            ((1, 1), rat_int(1)),
            ((0, 1), rat_int(-1)),
            ((1, 0), rat(2, 9)),
            ((0, 0), rat(-2, 9)),
        ]);
        let mut acc = Self::zero();
        for ((m, n), c) in &self.terms {
            // theta(X^m) = m X^m (X - 1); theta(F^n) = n F^{n-1} theta F
            if *m != 0 {
                let t = Self::from_terms(vec![
                    ((m + 1, *n), c * rat_int(*m as i64)),
                    ((*m, *n), -c * rat_int(*m as i64)),
                ]);
                acc = acc.add(&t);
            }
            if *n > 0 {
                let t = Self::monomial(c * rat_int(*n as i64), *m, n - 1).mul(&theta_f);
                acc = acc.add(&t);
            }
        }
        acc
    }

    /// Specialization X -> x_series, F -> f_series; exact and
    /// truncation-propagating. Negative X-powers require an invertible
    /// specialization of X.
    pub fn eval(&self, x_series: &RatSeries, f_series: &RatSeries) -> Result<RatSeries, SeriesError> {
        let var = x_series.var;
        let min_m = self.low_x().unwrap_or(0);
        let max_m = self.deg_x().unwrap_or(0);
        let max_n = self.deg_f().unwrap_or(0);
        // cache powers of X and F
        let x_inv = if min_m < 0 { Some(x_series.inverse()?) } else { None };
        let mut xp: BTreeMap<i32, RatSeries> = BTreeMap::new();
        xp.insert(0, Series::one(var));
        for m in 1..=max_m.max(0) {
            let prev = xp[&(m - 1)].clone();
            xp.insert(m, prev.mul(x_series));
        }
        if let Some(xi) = &x_inv {
            for m in 1..=(-min_m.min(0)) {
                let prev = xp[&(1 - m)].clone();
                xp.insert(-m, prev.mul(xi));
            }
        }
        let mut fp: Vec<RatSeries> = vec![Series::one(var)];
        for n in 1..=max_n {
            let prev = fp[(n - 1) as usize].clone();
            fp.push(prev.mul(f_series));
        }
        let mut acc = Series::zero(var, crate::series::EXACT);
        for ((m, n), c) in &self.terms {
            let t = xp[m].mul(&fp[*n as usize]).scale_rat(c);
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Rewrites the element in the shifted basis X^m Ft^n with
    /// Ft = F + 1/3, returning its coefficient map.
    pub fn to_shifted_f_basis(&self) -> BTreeMap<(i32, u32), Rat> {
        // F = Ft - 1/3: expand F^n binomially.
        let mut out: BTreeMap<(i32, u32), Rat> = BTreeMap::new();
        for ((m, n), c) in &self.terms {
            // F^n = sum_j C(n,j) Ft^j (-1/3)^{n-j}
            let mut binom = Rat::zero();
            let _ = binom;
            for j in 0..=*n {
                binom = crate::rational::binomial(*n as i64, j as i64);
                let coeff = c * &binom * crate::rational::power(&rat(-1, 3), (*n - j) as i64);
                if !coeff.is_zero() {
                    let e = out.entry((*m, j)).or_insert_with(Rat::zero);
                    *e += coeff;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Builds an element from shifted-basis coefficients (inverse of
    /// [`Self::to_shifted_f_basis`]).
    pub fn from_shifted_f_basis(map: &BTreeMap<(i32, u32), Rat>) -> Self {
        // Ft^j = (F + 1/3)^j
        let mut acc = Self::zero();
        for ((m, j), c) in map {
            let mut term = Self::monomial(c.clone(), *m, 0);
            let shift = Self::from_terms(vec![((0, 1), rat_int(1)), ((0, 0), rat(1, 3))]);
            for _ in 0..*j {
                term = term.mul(&shift);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Value at the large-radius point (X, F) = (1, 0).
    pub fn value_at_large_radius(&self) -> Rat {
        let mut acc = Rat::zero();
        for ((_, n), c) in &self.terms {
            if *n == 0 {
                acc += c;
            }
        }
        acc
    }

    /// Canonical text serialization: map "m,n" -> "num/den" with sorted keys.
    pub fn to_canonical_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|((m, n), c)| (format!("{},{}", m, n), rat_to_string(c)))
            .collect()
    }

    pub fn from_canonical_map(map: &BTreeMap<String, String>) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (k, v) in map {
            let (m, n) = k.split_once(',')?;
            let m: i32 = m.trim().parse().ok()?;
            let n: u32 = n.trim().parse().ok()?;
            let c = crate::rational::rat_from_str(v)?;
            if !c.is_zero() {
                terms.insert((m, n), c);
            }
        }
        Some(RingXF { terms })
    }

    /// Startup self-test pinning the derived theta-F coefficient 2/9:
    /// checks eval(theta e) = theta_y(eval e) for e = F against the
    /// actual series X(y), F(y) to the given order.
    pub fn derivation_self_test(x_series: &RatSeries, f_series: &RatSeries) -> bool {
        let f = Self::f_power(1);
        let lhs = f.theta().eval(x_series, f_series).expect("eval theta F");
        let rhs = f_series.theta();
        lhs.agrees_with(&rhs)
    }
}

impl fmt::Display for RingXF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((m, n), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})", rat_to_string(c))?;
            if *m != 0 {
                write!(f, "*X^{}", m)?;
            }
            if *n != 0 {
                write!(f, "*F^{}", n)?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::series::Var;

    const Y: Var = Var("y");

    /// X(y) = 1/(1+27y) and F(y) = theta log A(y) to a given order.
    fn frames(order: i64) -> (RatSeries, RatSeries) {
        let one_plus = Series::one(Y)
            .add(&Series::monomial(Y, rat_int(27), 1))
            .truncate(order);
        let x = one_plus.inverse().unwrap();
        let z = Series::monomial(Y, rat_int(-27), 1).truncate(order);
        let a = crate::series::hypergeometric_2f1(&rat(1, 3), &rat(2, 3), &rat_int(1), &z).unwrap();
        let f = a.theta().div(&a).unwrap();
        (x, f)
    }

    #[test]
    fn theta_x() {
        let t = RingXF::x_power(1).theta();
        assert_eq!(t, RingXF::from_terms(vec![((2, 0), rat_int(1)), ((1, 0), rat_int(-1))]));
    }

    #[test]
    fn theta_one_is_zero() {
        assert!(RingXF::one().theta().is_zero());
    }

    #[test]
    fn theta_f_matches_series() {
        // The 2/9 coefficient self-test: theta F = -F^2 + (X-1)F + (2/9)(X-1)
        // must hold for the actual series F(y) = -6y + 144y^2 - 3636y^3 ...
        let (x, f) = frames(12);
        assert_eq!(f.coeff(1).unwrap(), rat_int(-6));
        assert_eq!(f.coeff(2).unwrap(), rat_int(144));
        assert_eq!(f.coeff(3).unwrap(), rat_int(-3636));
        assert!(RingXF::derivation_self_test(&x, &f));
    }

    #[test]
    fn eval_projection() {
        let (x, f) = frames(8);
        let e = RingXF::x_power(1);
        let v = e.eval(&x, &f).unwrap();
        assert_eq!(v.coeff(0).unwrap(), rat_int(1));
        assert_eq!(v.coeff(1).unwrap(), rat_int(-27));
        assert_eq!(v.coeff(2).unwrap(), rat_int(729));
    }

    #[test]
    fn eval_intertwines_theta() {
        let (x, f) = frames(10);
        let e = RingXF::from_terms(vec![
            ((-2, 3), rat(3, 7)),
            ((1, 1), rat_int(2)),
            ((0, 0), rat(-1, 5)),
            ((2, 2), rat(5, 11)),
        ]);
        let lhs = e.theta().eval(&x, &f).unwrap();
        let rhs = e.eval(&x, &f).unwrap().theta();
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn yukawa_leading_term_eval() {
        // eval(XF/384) reproduces the series of the leading weight-2 term.
        let (x, f) = frames(6);
        let e = RingXF::monomial(rat(1, 384), 1, 1);
        let v = e.eval(&x, &f).unwrap();
        // XF/384 = (1-27y+...)(-6y+144y^2+...)/384 = -y/64 + ...
        assert_eq!(v.coeff(1).unwrap(), rat(-6, 384));
        assert_eq!(v.coeff(2).unwrap(), (rat_int(144) + rat_int(27 * 6)) / rat_int(384));
    }

    #[test]
    fn integrate_f_examples() {
        // integral F dF = F^2/2
        let e = RingXF::f_power(1).integrate_f();
        assert_eq!(e, RingXF::monomial(rat(1, 2), 0, 2));
        // integral (15/8) F^2 / X dF = (5/8) F^3 / X
        let e = RingXF::monomial(rat(15, 8), -1, 2).integrate_f();
        assert_eq!(e, RingXF::monomial(rat(5, 8), -1, 3));
    }

    #[test]
    fn integrate_then_differentiate_round_trip() {
        let e = RingXF::from_terms(vec![
            ((-3, 0), rat(1, 2)),
            ((2, 4), rat(-7, 3)),
            ((0, 1), rat_int(9)),
        ]);
        assert_eq!(e.integrate_f().d_f(), e);
    }

    #[test]
    fn theta_is_a_derivation() {
        let a = RingXF::from_terms(vec![((1, 2), rat(2, 3)), ((-1, 0), rat_int(4))]);
        let b = RingXF::from_terms(vec![((0, 1), rat(1, 7)), ((2, 3), rat_int(-2))]);
        let lhs = a.mul(&b).theta();
        let rhs = a.theta().mul(&b).add(&a.mul(&b.theta()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn shifted_basis_round_trip() {
        let e = RingXF::from_terms(vec![
            ((-1, 3), rat(5, 8)),
            ((0, 2), rat(-1, 2)),
            ((1, 0), rat(13, 96)),
        ]);
        let m = e.to_shifted_f_basis();
        assert_eq!(RingXF::from_shifted_f_basis(&m), e);
    }

    #[test]
    fn canonical_map_round_trip() {
        let e = RingXF::from_terms(vec![((-2, 1), rat(3, 5)), ((4, 0), rat_int(-11))]);
        let m = e.to_canonical_map();
        assert_eq!(RingXF::from_canonical_map(&m).unwrap(), e);
    }
}
