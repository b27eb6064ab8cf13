//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients stored constant term first, with no trailing zeros. The zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyParseError {
    #[error("empty coefficient list")]
    Empty,
    #[error("bad coefficient `{0}`")]
    BadCoefficient(String),
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// From coefficients, constant term first.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Sparse constructor from `(exponent, coefficient)` terms.
    pub fn from_terms(terms: &[(usize, i64)]) -> Self {
        let degree = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        for &(e, c) in terms {
            coeffs[e] += c;
        }
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Coefficient sequence equals its reverse.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPolynomial::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(IntPolynomial::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|x| x / &c).collect() }
    }

    /// Exact quotient `self / divisor` over the integers; `None` when the
    /// division leaves a remainder or a non-integral coefficient.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?;
        let Some(nd) = self.degree() else { return Some(IntPolynomial::zero()) };
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPolynomial::new(quot))
    }

    /// A positive multiple of the remainder of `self` modulo `divisor`.
    pub fn positive_pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else { return IntPolynomial::zero() };
        if nd < dd {
            return self.clone();
        }
        let lead_abs = lead.abs();
        let lead_sign = lead.signum();
        for i in (dd..=nd).rev() {
            let top = rem[i].clone();
            if top.is_zero() {
                continue;
            }
            // rem <- |lc|·rem − sign(lc)·top·x^(i−dd)·divisor, cancelling the x^i term
            for c in rem.iter_mut().take(i) {
                *c *= &lead_abs;
            }
            let factor = &top * &lead_sign;
            for (j, d) in divisor.coeffs.iter().enumerate().take(dd) {
                rem[i - dd + j] -= &factor * d;
            }
            rem[i] = BigInt::zero();
        }
        rem.truncate(dd);
        IntPolynomial::new(rem)
    }

    /// Sign of the value at `x`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        // den^deg · p(num/den), with den > 0
        let Some(deg) = self.degree() else { return Ordering::Equal };
        let (num, den) = (x.numer(), x.denom());
        let mut acc = self.coeffs[deg].clone();
        let mut den_pow = den.clone();
        for i in (0..deg).rev() {
            acc = acc * num + &self.coeffs[i] * &den_pow;
            if i > 0 {
                den_pow *= den;
            }
        }
        acc.sign_ord()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of the leading coefficient, i.e. the sign at +∞.
    pub fn sign_at_infinity(&self) -> Ordering {
        self.leading().map_or(Ordering::Equal, |c| c.sign_ord())
    }

    /// Comma-separated coefficients, constant term first.
    pub fn to_coefficient_list(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl FromStr for IntPolynomial {
    type Err = PolyParseError;

    /// Parses the coefficient-list form, constant term first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Err(PolyParseError::Empty);
        }
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|_| PolyParseError::BadCoefficient(t.trim().into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

impl fmt::Display for IntPolynomial {
    /// Human-readable form in `x`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
