//! Certified enclosures of real roots: Sturm sequences for isolation, exact
//! rational sign bisection for refinement.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("no real root greater than {0}")]
    NoRoot(String),
}

/// Closed interval with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Entirely to the left of `other`.
    pub fn lies_below(&self, other: &RationalInterval) -> bool {
        self.hi < other.lo
    }

    pub fn is_within(&self, lo: &BigRational, hi: &BigRational) -> bool {
        lo <= &self.lo && &self.hi <= hi
    }

    /// Exact form `[p/q, r/s]`.
    pub fn exact_string(&self) -> String {
        format!("[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for RationalInterval {
    /// Outward-rounded decimals (15 significant digits), then the exact form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] = {}",
            to_decimal(&self.lo, 15, Rounding::Down),
            to_decimal(&self.hi, 15, Rounding::Up),
            self.exact_string()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
    Nearest,
}

/// Decimal rendering with `digits` significant digits. Uses positional
/// notation for magnitudes in `[1e-4, 1e15)`, scientific otherwise.
pub fn to_decimal(x: &BigRational, digits: usize, rounding: Rounding) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let negative = x.is_negative();
    let abs = x.abs();
    // exponent e with 10^e <= abs < 10^(e+1)
    let mut e: i64 = (abs.numer().bits() as i64 - abs.denom().bits() as i64) * 30103 / 100000;
    while pow10(e) > abs {
        e -= 1;
    }
    while pow10(e + 1) <= abs {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &abs * pow10(shift);
    // rounding direction is on the signed value
    let mode = match (rounding, negative) {
        (Rounding::Nearest, _) => Rounding::Nearest,
        (Rounding::Down, false) | (Rounding::Up, true) => Rounding::Down,
        _ => Rounding::Up,
    };
    let mut mantissa = match mode {
        Rounding::Down => scaled.floor().to_integer(),
        Rounding::Up => scaled.ceil().to_integer(),
        Rounding::Nearest => scaled.round().to_integer(),
    };
    if mantissa >= BigInt::from(10).pow(digits as u32) {
        mantissa /= 10;
        e += 1;
    }
    let s = mantissa.to_string();
    let body = if (-4..15).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if s.len() > int_len {
                format!("{}.{}", &s[..int_len], &s[int_len..])
            } else {
                format!("{}{}", s, "0".repeat(int_len - s.len()))
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
        }
    } else {
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            format!("{head}e{e}")
        } else {
            format!("{head}.{tail}e{e}")
        }
    };
    let body = trim_fraction(&body);
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: &str) -> String {
    let (mant, exp) = match s.find('e') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
    format!("{mant}{exp}")
}

fn pow10(e: i64) -> BigRational {
    let p = BigInt::from(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Sturm chain of a squarefree polynomial: `p, p', −rem(p, p'), …`, each
/// member scaled by a positive constant.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    /// Squarefree part is taken first, so counts are of distinct roots.
    pub fn new(p: &IntPolynomial) -> Self {
        let chain = raw_chain(&p.primitive_part());
        let gcd = chain.last().expect("nonempty chain");
        if gcd.degree().unwrap_or(0) == 0 {
            return SturmChain { chain };
        }
        let squarefree = p.primitive_part().exact_div(&gcd.primitive_part()).expect("gcd divides p");
        SturmChain { chain: raw_chain(&squarefree) }
    }

    /// The squarefree polynomial the chain starts from.
    pub fn base(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|q| q.sign_at(x)))
    }

    pub fn variations_at_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(|q| q.sign_at_infinity()))
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct real roots in `(a, ∞)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at_infinity())
    }
}

fn raw_chain(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![p.clone()];
    let d = p.derivative().primitive_part();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        if chain[n - 1].degree() == Some(0) {
            break;
        }
        let r = chain[n - 2].positive_pseudo_rem(&chain[n - 1]).neg().primitive_part();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

/// Strict upper bound on the absolute value of every root (Cauchy).
pub fn cauchy_bound(p: &IntPolynomial) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs().iter().rev().skip(1).map(|c| c.abs()).max().unwrap_or_default();
    BigRational::one() + BigRational::new(max, lead)
}

/// Encloses the largest real root of `p` in `(search_from, ∞)`.
///
/// Sturm counts isolate the largest root. Refinement is exact sign bisection
/// over the grid `search_from + j·tol`, so a nondegenerate result is one grid
/// cell whose endpoints have opposite signs under the squarefree part of `p`
/// and which holds no other root. When a cell holds several roots, plain
/// dyadic bisection of the isolating interval is used instead.
pub fn perron_root(
    p: &IntPolynomial,
    search_from: &BigRational,
    tol: &BigRational,
) -> Result<RationalInterval, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if !tol.is_positive() {
        return Err(RootError::BadTolerance);
    }
    let sturm = SturmChain::new(p);
    if sturm.count_above(search_from) == 0 {
        return Err(RootError::NoRoot(search_from.to_string()));
    }
    let q = sturm.base();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut lo = search_from.clone();
    let mut hi = cauchy_bound(q).max(search_from + BigRational::one());

    // isolate: keep the rightmost subinterval that still holds a root
    while sturm.count_in(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / &two;
        if sturm.count_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let hi_sign = q.sign_at(&hi);
    if hi_sign == Ordering::Equal {
        return Ok(RationalInterval::point(hi));
    }
    // the unique root r in (lo, hi] satisfies x < r iff x <= lo or sign(x) != sign(hi)
    let below_root = |x: &BigRational| -> Option<bool> {
        if x <= &lo {
            return Some(true);
        }
        if x >= &hi {
            return Some(false);
        }
        match q.sign_at(x) {
            Ordering::Equal => None,
            s => Some(s != hi_sign),
        }
    };
    let grid = |j: &BigInt| search_from + tol * BigRational::from_integer(j.clone());
    let mut j_lo = ((&lo - search_from) / tol).floor().to_integer();
    let mut j_hi = ((&hi - search_from) / tol).ceil().to_integer();
    while &j_hi - &j_lo > BigInt::one() {
        let mid = (&j_lo + &j_hi) / 2;
        let x = grid(&mid);
        match below_root(&x) {
            Some(true) => j_lo = mid,
            Some(false) => j_hi = mid,
            None => return Ok(RationalInterval::point(x)),
        }
    }
    let (cell_lo, cell_hi) = (grid(&j_lo), grid(&j_hi));
    if q.sign_at(&cell_hi) == Ordering::Equal {
        return Ok(RationalInterval::point(cell_hi));
    }
    if q.sign_at(&cell_lo) != Ordering::Equal && sturm.count_in(&cell_lo, &cell_hi) == 1 {
        return Ok(RationalInterval::new(cell_lo, cell_hi));
    }
    while &hi - &lo > *tol || q.sign_at(&lo) == Ordering::Equal {
        let mid = (&lo + &hi) / &two;
        match q.sign_at(&mid) {
            Ordering::Equal => return Ok(RationalInterval::point(mid)),
            s if s == hi_sign => hi = mid,
            _ => lo = mid,
        }
    }
    Ok(RationalInterval::new(lo, hi))
}
