//! Exact rational scalars and small number-theoretic helpers.
//!
//! All coefficient arithmetic in this crate is exact: scalars are
//! arbitrary-precision rationals, always reduced, with positive
//! denominator. `num_rational::BigRational` provides exactly those
//! invariants, so we use it as the scalar type throughout and collect
//! the recurring constructors and integer helpers here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar: reduced fraction with positive denominator.
pub type Rat = num_rational::BigRational;

/// `n` as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational (reduced on construction).
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `num/den` (or just `num` when integral).
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the `num/den` format produced by [`rat_to_string`].
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Pochhammer symbol (x)_n = x (x+1) ... (x+n-1).
pub fn pochhammer(x: &Rat, n: u64) -> Rat {
    let mut acc = Rat::one();
    for k in 0..n {
        acc *= x + rat_int(k as i64);
    }
    acc
}

/// Harmonic number H_n = 1 + 1/2 + ... + 1/n.
pub fn harmonic(n: u64) -> Rat {
    let mut acc = Rat::zero();
    for k in 1..=n {
        acc += rat(1, k as i64);
    }
    acc
}

/// Bernoulli numbers B_0..B_n (B_1 = -1/2 convention), via the
/// triangular recurrence sum_{j<=m} C(m+1,j) B_j = 0.
pub fn bernoulli_numbers(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rat::one());
            continue;
        }
        let mut acc = Rat::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate() {
            acc += Rat::from_integer(binom.clone()) * bj;
            // C(m+1, j+1) from C(m+1, j)
            binom = binom * BigInt::from(m as i64 + 1 - j as i64) / BigInt::from(j as i64 + 1);
        }
        // acc + C(m+1, m) B_m = 0, C(m+1, m) = m+1
        b.push(-acc / rat_int(m as i64 + 1));
    }
    b
}

/// Bernoulli polynomial value B_n(x).
pub fn bernoulli_poly(n: usize, x: &Rat) -> Rat {
    let b = bernoulli_numbers(n);
    let mut acc = Rat::zero();
    let mut binom = BigInt::one();
    // B_n(x) = sum_k C(n,k) B_k x^{n-k}
    for k in 0..=n {
        let pow = power(x, (n - k) as i64);
        acc += Rat::from_integer(binom.clone()) * &b[k] * pow;
        if k < n {
            binom = binom * BigInt::from((n - k) as i64) / BigInt::from(k as i64 + 1);
        }
    }
    acc
}

/// x^e for integer e (negative allowed, x nonzero then).
pub fn power(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mut base = if e < 0 {
        assert!(!x.is_zero(), "negative power of zero");
        x.recip()
    } else {
        x.clone()
    };
    let mut e = e.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Truncates a rational towards zero to `digits` decimal places, keeping
/// numbers small during long numeric computations. The result differs
/// from the input by less than 10^-digits in absolute value.
pub fn round_to_digits(x: &Rat, digits: u32) -> Rat {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (x * Rat::from_integer(scale.clone())).trunc();
    Rat::new(scaled.to_integer(), scale)
}

/// Decimal rendering with `digits` digits after the point (truncated).
pub fn decimal_string(x: &Rat, digits: u32) -> String {
    let neg = x.is_negative();
    let ax = x.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (ax * Rat::from_integer(scale)).trunc().to_integer();
    let s = scaled.to_string();
    let (int_part, frac_part) = if s.len() > digits as usize {
        let split = s.len() - digits as usize;
        (s[..split].to_string(), s[split..].to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", s, width = digits as usize))
    };
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
}

/// Number of leading decimal digits on which `a` and `b` agree,
/// measured as -log10 |a - b| (0 when they differ by 1 or more).
pub fn agreement_digits(a: &Rat, b: &Rat) -> u32 {
    let diff = (a - b).abs();
    if diff.is_zero() {
        return u32::MAX;
    }
    let mut digits = 0u32;
    let ten = rat_int(10);
    let mut bound = Rat::one();
    while digits < 4096 {
        bound /= &ten;
        if diff > bound {
            return digits;
        }
        digits += 1;
    }
    digits
}

/// Rational reconstruction: finds the fraction p/q of smallest height
/// with |q| <= den_bound whose value is closest to `x`, via the
/// continued-fraction expansion of `x`. Returns `None` if the best
/// candidate does not round-trip to within `tol` of `x`.
pub fn rational_reconstruct(x: &Rat, den_bound: &BigInt, tol: &Rat) -> Option<Rat> {
    // Continued fraction convergents of x.
    let mut a = x.numer().clone();
    let mut b = x.denom().clone();
    let (mut p0, mut p1) = (BigInt::one(), BigInt::zero());
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    let mut best: Option<Rat> = None;
    while !b.is_zero() {
        let (quot, rem) = a.div_rem(&b);
        let p = &quot * &p0 + &p1;
        let q = &quot * &q0 + &q1;
        if q.abs() > *den_bound {
            break;
        }
        best = Some(Rat::new(p.clone(), q.clone()));
        p1 = p0;
        p0 = p;
        q1 = q0;
        q0 = q;
        a = b;
        b = rem;
    }
    let cand = best?;
    if (&cand - x).abs() <= *tol {
        Some(cand)
    } else {
        None
    }
}

/// Integer square root check: returns `Some(r)` with r^2 = n when n is a
/// perfect square (n >= 0).
pub fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational, when it exists.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    let n = perfect_sqrt(x.numer())?;
    let d = perfect_sqrt(x.denom())?;
    Some(Rat::new(n, d))
}

/// Binomial coefficient C(n, k) as a rational.
pub fn binomial(n: i64, k: i64) -> Rat {
    if k < 0 || k > n {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    for j in 0..k {
        acc *= rat(n - j, j + 1);
    }
    acc
}

/// (2n-1)!! with (-1)!! = 1.
pub fn double_factorial_odd(n: i64) -> Rat {
    let mut acc = Rat::one();
    let mut k = 2 * n - 1;
    while k >= 3 {
        acc *= rat_int(k);
        k -= 2;
    }
    acc
}

/// Mobius function on positive integers.
pub fn moebius(n: u64) -> i64 {
    let mut n = n;
    let mut primes = 0;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Checks that a float-free big rational is small: |x| < 10^-digits.
pub fn is_below_tolerance(x: &Rat, digits: u32) -> bool {
    x.abs() < Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

/// Approximate size of |x| as an f64 (for diagnostics only).
pub fn to_f64_lossy(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small_values() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[0], rat_int(1));
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
        assert!(b[3].is_zero() && b[5].is_zero() && b[7].is_zero());
    }

    #[test]
    fn bernoulli_poly_half() {
        // B_n(1/2) = (2^{1-n} - 1) B_n
        let b = bernoulli_numbers(6);
        for n in 0..=6usize {
            let expect = (power(&rat(1, 2), n as i64 - 1) - rat_int(1)) * &b[n];
            assert_eq!(bernoulli_poly(n, &rat(1, 2)), expect, "n={n}");
        }
    }

    #[test]
    fn reconstruct_simple_fraction() {
        let approx = rat(1234567, 1000000) + Rat::new(BigInt::from(1), BigInt::from(10u8).pow(16));
        let target = rat(1234567, 1000000);
        let got = rational_reconstruct(
            &approx,
            &BigInt::from(10_000_000u64),
            &Rat::new(BigInt::from(1), BigInt::from(10u8).pow(14)),
        );
        assert_eq!(got, Some(target));
    }

    #[test]
    fn moebius_values() {
        let vals: Vec<i64> = (1..=10).map(moebius).collect();
        assert_eq!(vals, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn round_trip_strings() {
        for x in [rat(3, 7), rat_int(-5), rat(-22, 6)] {
            assert_eq!(rat_from_str(&rat_to_string(&x)).unwrap(), x);
        }
    }
}
