//! Truncated power/Laurent series with explicit truncation tracking.
//!
//! Every series carries the exclusive exponent bound `cut` up to which its
//! coefficients are known. All operations propagate the minimum valid
//! bound, and reading a coefficient at or beyond `cut` is a hard error
//! rather than a silent zero. Coefficients live in a pluggable exact ring.

use crate::rational::{pochhammer, rat, rat_int, Rat};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Sentinel bound for exactly known (polynomial) data.
pub const EXACT: i64 = i64::MAX / 4;

/// Formal variable tag.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Var(pub &'static str);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("coefficient of exponent {wanted} requested but series truncated at {cut}")]
    TruncationExceeded { wanted: i64, cut: i64 },
    #[error("leading coefficient is not invertible")]
    NonInvertibleLeading,
    #[error("composition argument must have positive valuation")]
    ValuationViolation,
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(&'static str, &'static str),
    #[error("hypergeometric lower parameter hits a non-positive integer")]
    PochhammerPole,
    #[error("series order {have} insufficient, need at least {need}")]
    InsufficientOrder { have: i64, need: i64 },
}

/// Coefficient ring abstraction: exact, with partial inversion.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn inv(&self) -> Option<Self>;
    /// Embedding of the rationals.
    fn from_rat(r: &Rat) -> Self;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

/// A truncated Laurent series: coefficients for exponents `lo..cut`,
/// stored densely; exponents below `lo` are exact zeros, exponents at or
/// beyond `cut` are unknown.
#[derive(Clone, PartialEq)]
pub struct Series<R: Scalar> {
    pub var: Var,
    lo: i64,
    cut: i64,
    coeffs: Vec<R>,
}

/// Series over exact rationals, the common case.
pub type RatSeries = Series<Rat>;

impl<R: Scalar> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({:?})*{}^{}", c, self.var, self.lo + i as i64)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if self.cut < EXACT {
            write!(f, " + O({}^{})", self.var, self.cut)?;
        }
        Ok(())
    }
}

impl<R: Scalar> Series<R> {
    // Stored coefficients may end before `cut`: the tail is known zeros.
    fn normalized(var: Var, mut lo: i64, cut: i64, mut coeffs: Vec<R>) -> Self {
        if lo + (coeffs.len() as i64) > cut {
            coeffs.truncate((cut - lo).max(0) as usize);
        }
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        while let Some(c) = coeffs.first() {
            if c.is_zero() {
                coeffs.remove(0);
                lo += 1;
            } else {
                break;
            }
        }
        if coeffs.is_empty() {
            lo = cut;
        }
        Series { var, lo, cut, coeffs }
    }

    /// The zero series, known up to (but excluding) exponent `cut`.
    pub fn zero(var: Var, cut: i64) -> Self {
        Series { var, lo: cut, cut, coeffs: vec![] }
    }

    /// Constant series, exactly known.
    pub fn constant(var: Var, c: R) -> Self {
        if c.is_zero() {
            Self::zero(var, EXACT)
        } else {
            Series { var, lo: 0, cut: EXACT, coeffs: vec![c] }
        }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, R::one())
    }

    /// Monomial c * t^k, exactly known.
    pub fn monomial(var: Var, c: R, k: i64) -> Self {
        if c.is_zero() {
            Self::zero(var, EXACT)
        } else {
            Series { var, lo: k, cut: EXACT, coeffs: vec![c] }
        }
    }

    /// Builds a power series from coefficients for exponents `0..n`,
    /// truncated at `n`.
    pub fn from_coeffs(var: Var, coeffs: Vec<R>) -> Self {
        let cut = coeffs.len() as i64;
        Self::normalized(var, 0, cut, coeffs)
    }

    /// Exclusive truncation bound.
    pub fn cut(&self) -> i64 {
        self.cut
    }

    /// Lowest stored exponent (== cut for a known-zero series).
    pub fn valuation(&self) -> i64 {
        self.lo
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of exponent `n`; reading past the truncation is an error.
    pub fn coeff(&self, n: i64) -> Result<R, SeriesError> {
        if n >= self.cut {
            return Err(SeriesError::TruncationExceeded { wanted: n, cut: self.cut });
        }
        if n < self.lo {
            return Ok(R::zero());
        }
        let idx = (n - self.lo) as usize;
        Ok(self.coeffs.get(idx).cloned().unwrap_or_else(R::zero))
    }

    /// Lowers the truncation bound.
    pub fn truncate(&self, cut: i64) -> Self {
        let cut = cut.min(self.cut);
        Self::normalized(self.var, self.lo, cut, self.coeffs.clone())
    }

    fn check_var(&self, o: &Self) -> Result<(), SeriesError> {
        if self.var != o.var {
            Err(SeriesError::VariableMismatch(self.var.0, o.var.0))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_var(o).expect("series variable mismatch");
        let cut = self.cut.min(o.cut);
        // Allocate over the support union only; exponents between the
        // stored support and `cut` are known zeros.
        if self.coeffs.is_empty() && o.coeffs.is_empty() {
            return Self::zero(self.var, cut);
        }
        let mut hi = i64::MIN;
        let mut lo = i64::MAX;
        for s in [self, o] {
            if !s.coeffs.is_empty() {
                hi = hi.max(s.lo + s.coeffs.len() as i64);
                lo = lo.min(s.lo);
            }
        }
        hi = hi.min(cut);
        lo = lo.min(hi);
        let mut coeffs = vec![R::zero(); (hi - lo).max(0) as usize];
        for s in [self, o] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let e = s.lo + i as i64;
                if e < cut {
                    let slot = &mut coeffs[(e - lo) as usize];
                    *slot = slot.add(c);
                }
            }
        }
        Self::normalized(self.var, lo, cut, coeffs)
    }

    pub fn neg(&self) -> Self {
        Series {
            var: self.var,
            lo: self.lo,
            cut: self.cut,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::normalized(
            self.var,
            self.lo,
            self.cut,
            self.coeffs.iter().map(|x| x.mul(c)).collect(),
        )
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        self.scale(&R::from_rat(c))
    }

    /// Multiplication; the truncation accounts for both factors'
    /// valuations (min of lo_a + cut_b and lo_b + cut_a).
    pub fn mul(&self, o: &Self) -> Self {
        self.check_var(o).expect("series variable mismatch");
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            let cut = (self.lo.saturating_add(o.cut))
                .min(o.lo.saturating_add(self.cut))
                .min(EXACT);
            return Self::zero(self.var, cut);
        }
        let cut = (self.lo.saturating_add(o.cut))
            .min(o.lo.saturating_add(self.cut))
            .min(EXACT);
        let lo = self.lo + o.lo;
        let n = (cut - lo)
            .max(0)
            .min(self.coeffs.len() as i64 + o.coeffs.len() as i64 - 1) as usize;
        let mut coeffs = vec![R::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let e = (i + j) as i64;
                if e >= n as i64 {
                    break;
                }
                let slot = &mut coeffs[(i + j) as usize];
                *slot = slot.add(&a.mul(b));
            }
        }
        Self::normalized(self.var, lo, cut, coeffs)
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i64) -> Self {
        Series {
            var: self.var,
            lo: self.lo + k,
            cut: self.cut.saturating_add(k).min(EXACT),
            coeffs: self.coeffs.clone(),
        }
    }

    /// Multiplicative inverse; requires invertible lowest coefficient.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let lead = self.coeffs.first().ok_or(SeriesError::NonInvertibleLeading)?;
        let lead_inv = lead.inv().ok_or(SeriesError::NonInvertibleLeading)?;
        let v = self.lo;
        if self.cut >= EXACT {
            if self.coeffs.len() == 1 {
                // exact monomial: exact inverse
                return Ok(Series {
                    var: self.var,
                    lo: -v,
                    cut: EXACT,
                    coeffs: vec![lead_inv],
                });
            }
            // the inverse of an exact non-monomial is an infinite series
            return Err(SeriesError::InsufficientOrder { have: EXACT, need: 0 });
        }
        // self = t^v * c (1 + u); invert the unit part order by order.
        let n = (self.cut - v) as usize; // known length of the unit part
        let mut inv = vec![R::zero(); n];
        inv[0] = lead_inv.clone();
        for k in 1..n {
            // sum_{j=0..k} a_j * inv_{k-j} = 0 for k >= 1 (a_j = unit coeffs)
            let mut acc = R::zero();
            for j in 1..=k {
                let aj = if j < self.coeffs.len() { &self.coeffs[j] } else { break };
                acc = acc.add(&aj.mul(&inv[k - j]));
            }
            inv[k] = acc.neg().mul(&lead_inv);
        }
        let cut = self.cut.saturating_sub(v).saturating_sub(v).min(EXACT);
        Ok(Self::normalized(self.var, -v, cut, inv))
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Integer power (negative allowed when invertible).
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        if e == 0 {
            return Ok(Self::one(self.var));
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc: Option<Self> = None;
        for _ in 0..e.unsigned_abs() {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.mul(&base),
            });
        }
        Ok(acc.unwrap())
    }

    /// Formal derivative d/dt.
    pub fn derivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.lo + i as i64;
            coeffs.push(c.mul(&R::from_rat(&rat_int(e))));
        }
        Self::normalized(self.var, self.lo - 1, self.cut.saturating_sub(1).min(EXACT), coeffs)
    }

    /// Logarithmic derivative operator theta = t d/dt.
    pub fn theta(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.lo + i as i64;
            coeffs.push(c.mul(&R::from_rat(&rat_int(e))));
        }
        Self::normalized(self.var, self.lo, self.cut, coeffs)
    }

    /// Composition self(o); `o` must have positive valuation. Laurent
    /// principal parts of `self` are allowed when `o` is invertible.
    pub fn compose(&self, o: &Self) -> Result<Self, SeriesError> {
        if !o.coeffs.is_empty() && o.lo < 1 {
            return Err(SeriesError::ValuationViolation);
        }
        if o.coeffs.is_empty() && o.cut < 1 {
            return Err(SeriesError::ValuationViolation);
        }
        let var = o.var;
        // Split self into principal (negative exponents) and regular parts.
        let top = self.lo + self.coeffs.len() as i64; // exclusive
        let mut result = Series::zero(var, EXACT);

        // Regular part by Horner from the top coefficient down.
        let start = self.lo.max(0);
        if top > start {
            let mut acc = Series::zero(var, EXACT);
            let mut e = top - 1;
            loop {
                let c = if e >= self.lo {
                    self.coeffs[(e - self.lo) as usize].clone()
                } else {
                    R::zero()
                };
                acc = acc.mul(o).add(&Series::constant(var, c));
                if e == start {
                    break;
                }
                e -= 1;
            }
            if start > 0 {
                acc = acc.mul(&o.pow(start)?);
            }
            result = result.add(&acc);
        }
        // Principal part: sum_{k=1..} f_{-k} (o^{-1})^k.
        if self.lo < 0 {
            let oinv = o.inverse()?;
            let mut pw = oinv.clone();
            for k in 1..=(-self.lo) {
                let c = self.coeff(-k).unwrap_or_else(|_| R::zero());
                if !c.is_zero() {
                    result = result.add(&pw.scale(&c));
                }
                if k < -self.lo {
                    pw = pw.mul(&oinv);
                }
            }
        }
        // Truncation from self's own cut: error term t^{cut} o(g) = O(g^{cut}).
        if self.cut < EXACT {
            let w = if o.coeffs.is_empty() { o.cut } else { o.lo };
            let bound = w.saturating_mul(self.cut).min(EXACT);
            result = result.truncate(bound);
        }
        Ok(result)
    }

    /// Reversion: the compositional inverse of a series with valuation 1
    /// and invertible linear coefficient.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if self.lo != 1 {
            return Err(SeriesError::ValuationViolation);
        }
        let c1 = self.coeff(1)?;
        let c1_inv = c1.inv().ok_or(SeriesError::NonInvertibleLeading)?;
        if self.cut >= EXACT && self.coeffs.len() > 1 {
            return Err(SeriesError::InsufficientOrder { have: EXACT, need: 0 });
        }
        if self.coeffs.len() == 1 && self.cut >= EXACT {
            return Ok(Series {
                var: self.var,
                lo: 1,
                cut: EXACT,
                coeffs: vec![c1_inv],
            });
        }
        let n = self.cut; // we can determine the inverse to the same order
        let var = self.var;
        let mut s = Series::monomial(var, c1_inv.clone(), 1).truncate(2);
        for k in 2..n {
            // extend s by one order, then fix coefficient k of self(s) - id
            let mut coeffs: Vec<R> = (s.lo..k).map(|e| s.coeff(e).unwrap()).collect();
            coeffs.push(R::zero());
            s = Series::normalized(var, s.lo.min(1), k + 1, coeffs);
            let err = self.truncate(k + 1).compose(&s)?.coeff(k)?;
            if !err.is_zero() {
                let fix = err.mul(&c1_inv).neg();
                s = s.add(&Series::monomial(var, fix, k).truncate(k + 1));
            }
        }
        Ok(s.truncate(n))
    }

    /// exp of a series with positive valuation, via theta(exp s) = theta(s) exp s.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs.is_empty() && self.lo < 1 {
            return Err(SeriesError::ValuationViolation);
        }
        if self.cut >= EXACT && !self.coeffs.is_empty() {
            return Err(SeriesError::InsufficientOrder { have: EXACT, need: 0 });
        }
        let n = if self.coeffs.is_empty() { self.cut.min(1) } else { self.cut };
        let mut out = vec![R::zero(); n.max(1) as usize];
        out[0] = R::one();
        let ts = self.theta();
        for k in 1..n {
            // k * out_k = sum_{j=1..k} (theta s)_j out_{k-j}
            let mut acc = R::zero();
            for j in 1..=k {
                let tj = ts.coeff(j).unwrap_or_else(|_| R::zero());
                if !tj.is_zero() {
                    acc = acc.add(&tj.mul(&out[(k - j) as usize]));
                }
            }
            out[k as usize] = acc.mul(&R::from_rat(&rat(1, k)));
        }
        Ok(Self::normalized(self.var, 0, n, out))
    }

    /// log of a series with leading coefficient 1 at exponent 0.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.lo != 0 || self.coeffs.first().map(|c| c != &R::one()).unwrap_or(true) {
            return Err(SeriesError::NonInvertibleLeading);
        }
        if self.cut >= EXACT && self.coeffs.len() > 1 {
            return Err(SeriesError::InsufficientOrder { have: EXACT, need: 0 });
        }
        if self.coeffs.len() == 1 {
            return Ok(Self::zero(self.var, self.cut));
        }
        let t = self.theta().div(self)?;
        let n = t.cut;
        let mut out = vec![R::zero(); n.max(0) as usize];
        for k in 1..n {
            out[k as usize] = t.coeff(k)?.mul(&R::from_rat(&rat(1, k)));
        }
        Ok(Self::normalized(self.var, 0, n, out))
    }

    /// Square root of a series whose leading term is `lead_sqrt^2 * t^{2k}`.
    /// The caller supplies the square root of the leading coefficient.
    pub fn sqrt_with(&self, lead_sqrt: &R) -> Result<Self, SeriesError> {
        let lead = self.coeffs.first().ok_or(SeriesError::NonInvertibleLeading)?;
        if lead_sqrt.mul(lead_sqrt) != *lead || self.lo.rem_euclid(2) != 0 {
            return Err(SeriesError::NonInvertibleLeading);
        }
        if self.cut >= EXACT && self.coeffs.len() > 1 {
            return Err(SeriesError::InsufficientOrder { have: EXACT, need: 0 });
        }
        if self.coeffs.len() == 1 {
            return Ok(Series {
                var: self.var,
                lo: self.lo / 2,
                cut: if self.cut >= EXACT { EXACT } else { self.cut - self.lo + self.lo / 2 },
                coeffs: vec![lead_sqrt.clone()],
            });
        }
        let v = self.lo;
        let n = (self.cut - v) as usize;
        let lead_inv = lead.inv().ok_or(SeriesError::NonInvertibleLeading)?;
        let half = R::from_rat(&rat(1, 2));
        let mut out = vec![R::zero(); n];
        out[0] = lead_sqrt.clone();
        for k in 1..n {
            // (sum out)^2 = self: 2 lead_sqrt out_k = a_k - sum_{0<j<k} out_j out_{k-j}
            let mut acc = if k < self.coeffs.len() { self.coeffs[k].clone() } else { R::zero() };
            for j in 1..k {
                acc = acc.sub(&out[j].mul(&out[k - j]));
            }
            out[k] = acc.mul(&lead_inv).mul(lead_sqrt).mul(&half);
        }
        Ok(Self::normalized(self.var, v / 2, self.cut - v + v / 2, out))
    }

    /// Equality up to the common truncation order.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let cut = self.cut.min(o.cut);
        let lo = self.lo.min(o.lo);
        for e in lo..cut {
            let a = self.coeff(e).unwrap_or_else(|_| R::zero());
            let b = o.coeff(e).unwrap_or_else(|_| R::zero());
            if a != b {
                return false;
            }
        }
        true
    }

    /// Map coefficients into another scalar ring.
    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series {
            var: self.var,
            lo: self.lo,
            cut: self.cut,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Substitute t -> c * t for an invertible scalar c.
    pub fn rescale_var(&self, c: &R) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut pw = {
            // c^{lo}
            let mut acc = R::one();
            if self.lo >= 0 {
                for _ in 0..self.lo {
                    acc = acc.mul(c);
                }
            } else {
                let ci = c.inv().expect("rescale by non-invertible scalar");
                for _ in 0..(-self.lo) {
                    acc = acc.mul(&ci);
                }
            }
            acc
        };
        for x in &self.coeffs {
            coeffs.push(x.mul(&pw));
            pw = pw.mul(c);
        }
        Self::normalized(self.var, self.lo, self.cut, coeffs)
    }
}

impl RatSeries {
    /// Evaluates the known part at a rational point (partial sum).
    pub fn eval_partial(&self, x: &Rat) -> Rat {
        let mut acc = <Rat as Scalar>::zero();
        // Horner over stored coefficients, then multiply by x^{lo}.
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * crate::rational::power(x, self.lo)
    }
}

/// Gauss hypergeometric series 2F1(a, b; c; z) composed with a truncated
/// series argument of positive valuation (or the identity monomial).
pub fn hypergeometric_2f1(
    a: &Rat,
    b: &Rat,
    c: &Rat,
    z: &RatSeries,
) -> Result<RatSeries, SeriesError> {
    let w = if z.is_known_zero() { z.cut() } else { z.valuation() };
    if w < 1 {
        return Err(SeriesError::ValuationViolation);
    }
    let m_max = if z.cut() >= EXACT { 64 } else { (z.cut() / w.max(1)) + 1 };
    // guard against poles of the Pochhammer denominator within range
    for m in 0..m_max {
        let cm = c + rat_int(m);
        if Scalar::is_zero(&cm) {
            return Err(SeriesError::PochhammerPole);
        }
    }
    let mut coeffs = Vec::with_capacity(m_max as usize + 1);
    for m in 0..=m_max {
        let num = pochhammer(a, m as u64) * pochhammer(b, m as u64);
        let den = pochhammer(c, m as u64) * Rat::from_integer(crate::rational::factorial(m as u64));
        coeffs.push(num / den);
    }
    let f = Series::normalized(z.var, 0, m_max + 1, coeffs);
    f.compose(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    const Y: Var = Var("y");

    fn poly(coeffs: &[i64]) -> RatSeries {
        Series::from_coeffs(Y, coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let a = Series::from_coeffs(Y, vec![rat_int(1), rat_int(1), rat_int(0)]);
        let b = Series::from_coeffs(Y, vec![rat_int(1), rat_int(-1), rat_int(0)]);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0).unwrap(), rat_int(1));
        assert_eq!(p.coeff(1).unwrap(), rat_int(0));
        assert_eq!(p.coeff(2).unwrap(), rat_int(-1));
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1+27y) = 1 - 27y + 729y^2 - ...
        let f = poly(&[1, 27, 0, 0]);
        let inv = f.inverse().unwrap();
        assert_eq!(inv.coeff(0).unwrap(), rat_int(1));
        assert_eq!(inv.coeff(1).unwrap(), rat_int(-27));
        assert_eq!(inv.coeff(2).unwrap(), rat_int(729));
    }

    #[test]
    fn exp_of_mirror_log() {
        // exp(-6y + 45y^2) = 1 - 6y + 63y^2 + O(y^3)
        let s = poly(&[0, -6, 45]);
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(0).unwrap(), rat_int(1));
        assert_eq!(e.coeff(1).unwrap(), rat_int(-6));
        assert_eq!(e.coeff(2).unwrap(), rat_int(63));
    }

    #[test]
    fn reversion_cubic() {
        // revert(y - 6y^2 + 63y^3) = Q + 6Q^2 + 9Q^3 + ...
        let s = poly(&[0, 1, -6, 63]);
        let r = s.revert().unwrap();
        assert_eq!(r.coeff(1).unwrap(), rat_int(1));
        assert_eq!(r.coeff(2).unwrap(), rat_int(6));
        assert_eq!(r.coeff(3).unwrap(), rat_int(9));
    }

    #[test]
    fn reversion_identity() {
        let id = Series::monomial(Y, rat_int(1), 1).truncate(8);
        let r = id.revert().unwrap();
        assert!(r.agrees_with(&id));
    }

    #[test]
    fn revert_round_trip() {
        let s = poly(&[0, 3, -5, 7, 11, -2, 1, 4]);
        let r = s.revert().unwrap();
        let rt = s.compose(&r).unwrap();
        let id = Series::monomial(Y, rat_int(1), 1);
        assert!(rt.agrees_with(&id));
    }

    #[test]
    fn hypergeometric_jacobian() {
        // 2F1(1/3, 2/3; 1; -27y) = 1 - 6y + 90y^2 - 1680y^3
        let z = Series::monomial(Y, rat_int(-27), 1).truncate(5);
        let f = hypergeometric_2f1(&rat(1, 3), &rat(2, 3), &rat_int(1), &z).unwrap();
        assert_eq!(f.coeff(0).unwrap(), rat_int(1));
        assert_eq!(f.coeff(1).unwrap(), rat_int(-6));
        assert_eq!(f.coeff(2).unwrap(), rat_int(90));
        assert_eq!(f.coeff(3).unwrap(), rat_int(-1680));
    }

    #[test]
    fn hypergeometric_at_zero_argument() {
        let z = Series::zero(Y, 4);
        let f = hypergeometric_2f1(&rat(1, 2), &rat(1, 3), &rat(5, 7), &z).unwrap();
        assert_eq!(f.coeff(0).unwrap(), rat_int(1));
        assert_eq!(f.coeff(3).unwrap(), rat_int(0));
    }

    #[test]
    fn hypergeometric_orbifold_jacobian() {
        // x * 2F1(1/3,1/3;2/3; -x^3/27) = x - x^4/162 + ...
        let x = Var("x");
        let z = Series::monomial(x, rat(-1, 27), 3).truncate(8);
        let f = hypergeometric_2f1(&rat(1, 3), &rat(1, 3), &rat(2, 3), &z).unwrap();
        let a = f.shift(1);
        assert_eq!(a.coeff(1).unwrap(), rat_int(1));
        assert_eq!(a.coeff(4).unwrap(), rat(-1, 162));
    }

    #[test]
    fn pochhammer_pole_detected() {
        let z = Series::monomial(Y, rat_int(1), 1).truncate(6);
        let err = hypergeometric_2f1(&rat(1, 2), &rat(1, 2), &rat_int(-2), &z);
        assert_eq!(err.unwrap_err(), SeriesError::PochhammerPole);
    }

    #[test]
    fn truncation_is_hard_error() {
        let f = poly(&[1, 2, 3]).truncate(3);
        assert!(f.coeff(2).is_ok());
        assert!(matches!(
            f.coeff(3),
            Err(SeriesError::TruncationExceeded { wanted: 3, cut: 3 })
        ));
    }

    #[test]
    fn laurent_inverse_and_compose() {
        // f = y^{-1} + 1, g = y + y^2; f(g) = 1/(y+y^2) + 1
        let f = Series::monomial(Y, rat_int(1), -1).add(&Series::one(Y)).truncate(4);
        let g = poly(&[0, 1, 1]).truncate(5);
        let fg = f.compose(&g).unwrap();
        let direct = g.inverse().unwrap().add(&Series::one(Y));
        assert!(fg.agrees_with(&direct));
    }

    #[test]
    fn mul_truncation_respects_valuation() {
        // (y^2 + O(y^5)) * (y + O(y^3)) is known to order y^5 exclusive:
        // lo1 + cut2 = 2+3 = 5, lo2 + cut1 = 1+5 = 6 -> min 5
        let a = Series::monomial(Y, rat_int(1), 2).truncate(5);
        let b = Series::monomial(Y, rat_int(1), 1).truncate(3);
        let p = a.mul(&b);
        assert_eq!(p.cut(), 5);
        assert_eq!(p.coeff(3).unwrap(), rat_int(1));
        assert!(p.coeff(5).is_err());
    }

    #[test]
    fn log_exp_round_trip() {
        let s = poly(&[0, 2, -1, 5, 3]);
        let e = s.exp().unwrap();
        let l = e.log().unwrap();
        assert!(l.agrees_with(&s));
    }

    #[test]
    fn sqrt_round_trip() {
        let f = poly(&[1, 4, 10, -3, 7]);
        let r = f.sqrt_with(&rat_int(1)).unwrap();
        assert!(r.mul(&r).agrees_with(&f));
    }
}
