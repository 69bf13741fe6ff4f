//! Laurent polynomials/series in the equivariant parameters eps1, eps2,
//! truncated by total degree.
//!
//! Elements are finitely supported maps (a, b) -> rational for the
//! monomial eps1^a eps2^b. A value carries the exclusive total-degree
//! bound `cut`: monomials with a+b >= cut are unknown. This is the home
//! of the sinh-expansion helpers shared by the beta-polynomials, the
//! local-curve closed forms, and BPS extraction.

use crate::rational::{power, rat, rat_int, Rat};
use crate::series::EXACT;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct EpsLaurent {
    terms: BTreeMap<(i32, i32), Rat>,
    cut: i64,
}

impl fmt::Debug for EpsLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})*e1^{}*e2^{}", c, a, b)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if self.cut < EXACT {
            write!(f, " + O(deg {})", self.cut)?;
        }
        Ok(())
    }
}

impl EpsLaurent {
    pub fn zero(cut: i64) -> Self {
        EpsLaurent { terms: BTreeMap::new(), cut }
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0, 0)
    }

    pub fn monomial(c: Rat, a: i32, b: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        EpsLaurent { terms, cut: EXACT }
    }

    pub fn from_terms(terms: Vec<((i32, i32), Rat)>, cut: i64) -> Self {
        let mut map = BTreeMap::new();
        for ((a, b), c) in terms {
            if !c.is_zero() && ((a + b) as i64) < cut {
                map.insert((a, b), c);
            }
        }
        EpsLaurent { terms: map, cut }
    }

    pub fn cut(&self) -> i64 {
        self.cut
    }

    pub fn truncate(&self, cut: i64) -> Self {
        let cut = cut.min(self.cut);
        let terms = self
            .terms
            .iter()
            .filter(|((a, b), _)| ((*a + *b) as i64) < cut)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        EpsLaurent { terms, cut }
    }

    pub fn is_known_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &Rat)> {
        self.terms.iter()
    }

    /// Lowest total degree of the support (None if empty).
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|(a, b)| (*a + *b) as i64).min()
    }

    pub fn coeff(&self, a: i32, b: i32) -> Rat {
        assert!(
            ((a + b) as i64) < self.cut,
            "coefficient of degree {} requested beyond truncation {}",
            a + b,
            self.cut
        );
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let cut = self.cut.min(o.cut);
        let mut terms = BTreeMap::new();
        for src in [&self.terms, &o.terms] {
            for ((a, b), c) in src {
                if ((*a + *b) as i64) < cut {
                    let e = terms.entry((*a, *b)).or_insert_with(Rat::zero);
                    *e += c;
                }
            }
        }
        terms.retain(|_, v: &mut Rat| !v.is_zero());
        EpsLaurent { terms, cut }
    }

    pub fn neg(&self) -> Self {
        EpsLaurent {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
            cut: self.cut,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.cut);
        }
        EpsLaurent {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            cut: self.cut,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let lo_a = self.min_degree();
        let lo_b = o.min_degree();
        let cut = match (lo_a, lo_b) {
            (Some(la), Some(lb)) => (self.cut.saturating_add(lb))
                .min(o.cut.saturating_add(la))
                .min(EXACT),
            _ => {
                // a known-zero factor: result known-zero to combined bound
                let la = lo_a.unwrap_or(0);
                let lb = lo_b.unwrap_or(0);
                return Self::zero(
                    (self.cut.saturating_add(lb))
                        .min(o.cut.saturating_add(la))
                        .min(EXACT),
                );
            }
        };
        let mut terms: BTreeMap<(i32, i32), Rat> = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                let key = (a1 + a2, b1 + b2);
                if ((key.0 + key.1) as i64) < cut {
                    let e = terms.entry(key).or_insert_with(Rat::zero);
                    *e += c1 * c2;
                }
            }
        }
        terms.retain(|_, v: &mut Rat| !v.is_zero());
        EpsLaurent { terms, cut }
    }

    /// Inverse, requiring the lowest-total-degree part to be a single
    /// monomial (the only invertible shape in the Laurent ring).
    pub fn inverse(&self) -> Option<Self> {
        let lo = self.min_degree()?;
        let bottom: Vec<_> = self
            .terms
            .iter()
            .filter(|((a, b), _)| (*a + *b) as i64 == lo)
            .collect();
        if bottom.len() != 1 {
            return None;
        }
        let (&(a0, b0), c0) = bottom[0];
        let m_inv = Self::monomial(c0.recip(), -a0, -b0);
        // self = m (1 + u), u of positive reduced degree
        let u = m_inv.mul(self).sub(&Self::one());
        if self.cut >= EXACT {
            if u.is_known_zero() {
                return Some(m_inv);
            }
            panic!("inverse of an exactly-known non-monomial Laurent element is infinite; truncate first");
        }
        // f = m (1 + u); (1+u)^{-1} is known to the same bound as u.
        let unit_cut = self.cut - lo;
        let u_lo = u.min_degree().unwrap_or(1).max(1);
        let mut geo = Self::one().truncate(unit_cut);
        let mut upow = Self::one();
        let mut k = 1i64;
        loop {
            if k * u_lo >= unit_cut {
                break;
            }
            upow = upow.mul(&u).truncate(unit_cut);
            geo = if k % 2 == 1 { geo.sub(&upow) } else { geo.add(&upow) };
            k += 1;
        }
        Some(m_inv.mul(&geo))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// True when all monomials have the same total degree (vacuously for 0).
    pub fn is_homogeneous(&self) -> bool {
        let mut deg = None;
        for (a, b) in self.terms.keys() {
            let d = a + b;
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return false,
                _ => {}
            }
        }
        true
    }

    /// Symmetry under eps1 <-> eps2.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|((a, b), c)| self.terms.get(&(*b, *a)) == Some(c))
    }

    /// Homogeneous part of total degree d.
    pub fn homogeneous_part(&self, d: i64) -> Self {
        assert!(d < self.cut);
        let terms = self
            .terms
            .iter()
            .filter(|((a, b), _)| (*a + *b) as i64 == d)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        EpsLaurent { terms, cut: self.cut }
    }

    /// Restriction eps1 = t, eps2 = -t: a one-variable Laurent series in t.
    pub fn restrict_antidiagonal(&self, var: crate::series::Var) -> crate::series::RatSeries {
        let mut acc = crate::series::Series::zero(var, self.cut);
        for ((a, b), c) in &self.terms {
            let sign = if b.rem_euclid(2) == 1 { -c } else { c.clone() };
            acc = acc.add(&crate::series::Series::monomial(var, sign, (*a + *b) as i64).truncate(self.cut));
        }
        acc
    }

    /// Restriction eps2 -> 0 of eps1^k * self, as a series in eps1
    /// (the Nekrasov-Shatashvili slice): keeps monomials with b + k = 0.
    pub fn ns_slice(&self, k: i32, var: crate::series::Var) -> crate::series::RatSeries {
        let mut acc = crate::series::Series::zero(var, self.cut.saturating_add(k as i64));
        for ((a, b), c) in &self.terms {
            if *b + k == 0 {
                acc = acc.add(
                    &crate::series::Series::monomial(var, c.clone(), (*a + k) as i64)
                        .truncate(self.cut.saturating_add(k as i64)),
                );
            }
        }
        acc
    }

    /// 2 sinh((cx*eps1 + cy*eps2)/2), truncated at total degree `cut`.
    pub fn two_sinh_half(cx: &Rat, cy: &Rat, cut: i64) -> Self {
        // 2 sinh(u/2) = sum_{j odd} 2 (u/2)^j / j!, u = cx eps1 + cy eps2
        let u = Self::monomial(cx / rat_int(2), 1, 0).add(&Self::monomial(cy / rat_int(2), 0, 1));
        let mut acc = Self::zero(cut);
        let mut upow = u.clone().truncate(cut);
        let mut j = 1i64;
        let mut fact = Rat::one(); // j!
        while j < cut.max(1) {
            if j % 2 == 1 {
                acc = acc.add(&upow.scale(&(rat_int(2) / &fact)));
            }
            j += 1;
            fact *= rat_int(j);
            upow = upow.mul(&u).truncate(cut);
        }
        acc
    }

    /// (2 sinh(k eps1/2) * 2 sinh(k eps2/2))^{-1}, truncated so that all
    /// total degrees below `cut` are known.
    pub fn inv_four_sinh_sinh(k: i64, cut: i64) -> Self {
        let s1 = Self::two_sinh_half(&rat_int(k), &Rat::zero(), cut + 4);
        let s2 = Self::two_sinh_half(&Rat::zero(), &rat_int(k), cut + 4);
        s1.mul(&s2)
            .inverse()
            .expect("sinh product has monomial bottom")
            .truncate(cut)
    }

    /// Rendering for diagnostics.
    pub fn to_string_pretty(&self) -> String {
        format!("{:?}", self)
    }
}

/// Laurent polynomials in three equivariant parameters eps0, eps1, eps2,
/// truncated by total degree; used for the shifted local P1 geometry.
#[derive(Clone, PartialEq, Debug)]
pub struct Eps3Laurent {
    terms: BTreeMap<(i32, i32, i32), Rat>,
    cut: i64,
}

impl Eps3Laurent {
    pub fn zero(cut: i64) -> Self {
        Eps3Laurent { terms: BTreeMap::new(), cut }
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0, 0, 0)
    }

    pub fn monomial(c: Rat, a: i32, b: i32, d: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b, d), c);
        }
        Eps3Laurent { terms, cut: EXACT }
    }

    pub fn cut(&self) -> i64 {
        self.cut
    }

    pub fn truncate(&self, cut: i64) -> Self {
        let cut = cut.min(self.cut);
        let terms = self
            .terms
            .iter()
            .filter(|((a, b, d), _)| ((*a + *b + *d) as i64) < cut)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Eps3Laurent { terms, cut }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|(a, b, d)| (*a + *b + *d) as i64).min()
    }

    pub fn coeff(&self, a: i32, b: i32, d: i32) -> Rat {
        assert!(((a + b + d) as i64) < self.cut);
        self.terms.get(&(a, b, d)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let cut = self.cut.min(o.cut);
        let mut terms = BTreeMap::new();
        for src in [&self.terms, &o.terms] {
            for (k, c) in src {
                if ((k.0 + k.1 + k.2) as i64) < cut {
                    let e = terms.entry(*k).or_insert_with(Rat::zero);
                    *e += c;
                }
            }
        }
        terms.retain(|_, v: &mut Rat| !v.is_zero());
        Eps3Laurent { terms, cut }
    }

    pub fn neg(&self) -> Self {
        Eps3Laurent {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
            cut: self.cut,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.cut);
        }
        Eps3Laurent {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            cut: self.cut,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (la, lb) = match (self.min_degree(), o.min_degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                let la = self.min_degree().unwrap_or(0);
                let lb = o.min_degree().unwrap_or(0);
                return Self::zero(
                    (self.cut.saturating_add(lb))
                        .min(o.cut.saturating_add(la))
                        .min(EXACT),
                );
            }
        };
        let cut = (self.cut.saturating_add(lb)).min(o.cut.saturating_add(la)).min(EXACT);
        let mut terms: BTreeMap<(i32, i32, i32), Rat> = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let key = (k1.0 + k2.0, k1.1 + k2.1, k1.2 + k2.2);
                if ((key.0 + key.1 + key.2) as i64) < cut {
                    let e = terms.entry(key).or_insert_with(Rat::zero);
                    *e += c1 * c2;
                }
            }
        }
        terms.retain(|_, v: &mut Rat| !v.is_zero());
        Eps3Laurent { terms, cut }
    }

    pub fn inverse(&self) -> Option<Self> {
        let lo = self.min_degree()?;
        let bottom: Vec<_> = self
            .terms
            .iter()
            .filter(|((a, b, d), _)| (*a + *b + *d) as i64 == lo)
            .collect();
        if bottom.len() != 1 {
            return None;
        }
        let (&(a0, b0, d0), c0) = bottom[0];
        let m_inv = Self::monomial(c0.recip(), -a0, -b0, -d0);
        let u = m_inv.mul(self).sub(&Self::one());
        if u.is_empty() && self.cut >= EXACT {
            return Some(m_inv);
        }
        assert!(self.cut < EXACT, "inverse of exact non-monomial is infinite");
        let unit_cut = self.cut - lo;
        let u_lo = u.min_degree().unwrap_or(1).max(1);
        let mut geo = Self::one().truncate(unit_cut);
        let mut upow = Self::one();
        let mut k = 1i64;
        loop {
            if k * u_lo >= unit_cut {
                break;
            }
            upow = upow.mul(&u).truncate(unit_cut);
            geo = if k % 2 == 1 { geo.sub(&upow) } else { geo.add(&upow) };
            k += 1;
        }
        Some(m_inv.mul(&geo))
    }

    fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// 2 sinh((c0*eps0 + c1*eps1 + c2*eps2)/2) truncated at degree `cut`.
    pub fn two_sinh_half(c0: &Rat, c1: &Rat, c2: &Rat, cut: i64) -> Self {
        let u = Self::monomial(c0 / rat_int(2), 1, 0, 0)
            .add(&Self::monomial(c1 / rat_int(2), 0, 1, 0))
            .add(&Self::monomial(c2 / rat_int(2), 0, 0, 1));
        let mut acc = Self::zero(cut);
        let mut upow = u.clone().truncate(cut);
        let mut j = 1i64;
        let mut fact = Rat::one();
        while j < cut.max(1) {
            if j % 2 == 1 {
                acc = acc.add(&upow.scale(&(rat_int(2) / &fact)));
            }
            j += 1;
            fact *= rat_int(j);
            upow = upow.mul(&u).truncate(cut);
        }
        acc
    }

    /// Substitute eps0 = u*eps1 + v*eps2.
    pub fn substitute_eps0(&self, u: &Rat, v: &Rat) -> EpsLaurent {
        let mut acc = EpsLaurent::zero(self.cut);
        for ((a, b, d), c) in &self.terms {
            assert!(*a >= 0, "cannot substitute into a pole of eps0");
            // (u e1 + v e2)^a expanded binomially
            let mut term = EpsLaurent::monomial(c.clone(), *b, *d);
            let lin = EpsLaurent::monomial(u.clone(), 1, 0).add(&EpsLaurent::monomial(v.clone(), 0, 1));
            for _ in 0..*a {
                term = term.mul(&lin);
            }
            acc = acc.add(&term.truncate(self.cut));
        }
        acc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32, i32), &Rat)> {
        self.terms.iter()
    }
}

#[allow(unused)]
fn unused_power_guard() {
    let _ = power(&rat(1, 2), 2);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{bernoulli_numbers, rat, rat_int};

    #[test]
    fn sinh_product_inverse_leading_terms() {
        // (4 sinh(e1/2) sinh(e2/2))^{-1} = 1/(e1 e2) - (e1^2+e2^2)/(24 e1 e2) + ...
        let f = EpsLaurent::inv_four_sinh_sinh(1, 4);
        assert_eq!(f.coeff(-1, -1), rat_int(1));
        assert_eq!(f.coeff(1, -1), rat(-1, 24));
        assert_eq!(f.coeff(-1, 1), rat(-1, 24));
        assert_eq!(f.coeff(0, 0), rat_int(0));
    }

    #[test]
    fn antidiagonal_restriction_matches_sinh_square() {
        // at eps1 = t, eps2 = -t: (4 sinh sinh)^{-1} -> -1/(2 sinh(t/2))^2
        let f = EpsLaurent::inv_four_sinh_sinh(1, 6);
        let r = f.restrict_antidiagonal(crate::series::Var("t"));
        // -1/(4 sinh^2(t/2)) = -1/t^2 + 1/12 - t^2/240 + ...
        assert_eq!(r.coeff(-2).unwrap(), rat_int(-1));
        assert_eq!(r.coeff(0).unwrap(), rat(1, 12));
        assert_eq!(r.coeff(2).unwrap(), rat(-1, 240));
    }

    #[test]
    fn bernoulli_cross_check_for_antidiagonal() {
        // -1/(2sinh(t/2))^2 = d/dt [ 1/(e^{t/2}-e^{-t/2}) * ... ] ; spot-check
        // the t^4 coefficient against B_6/(6!)-type data by direct expansion.
        let f = EpsLaurent::inv_four_sinh_sinh(1, 8);
        let r = f.restrict_antidiagonal(crate::series::Var("t"));
        let b = bernoulli_numbers(8);
        // known: -1/(4 sinh^2(t/2)) = -1/t^2 + sum_{k>=1} (2k-1) B_{2k} t^{2k-2} / (2k)!
        for k in 1..=3i64 {
            let expect = rat_int(2 * k - 1) * &b[(2 * k) as usize]
                / Rat::from_integer(crate::rational::factorial(2 * k as u64));
            assert_eq!(r.coeff(2 * k - 2).unwrap(), expect, "k={k}");
        }
    }

    #[test]
    fn homogeneity_and_symmetry() {
        let f = EpsLaurent::monomial(rat_int(7), 3, -1)
            .add(&EpsLaurent::monomial(rat_int(10), 1, 1))
            .add(&EpsLaurent::monomial(rat_int(7), -1, 3));
        assert!(f.is_homogeneous());
        assert!(f.is_symmetric());
        let g = f.add(&EpsLaurent::monomial(rat_int(1), 0, 0));
        assert!(!g.is_homogeneous());
    }

    #[test]
    fn eps3_sinh_ratio_vanishes_on_cy_locus() {
        // numerator 2sinh(d(e0+e1+e2)/2) restricted to e0 = -e1-e2 is 0
        let num = Eps3Laurent::two_sinh_half(&rat_int(1), &rat_int(1), &rat_int(1), 7);
        let restricted = num.substitute_eps0(&rat_int(-1), &rat_int(-1));
        assert!(restricted.is_known_zero());
    }
}
