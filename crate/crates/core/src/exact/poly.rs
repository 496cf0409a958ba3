use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use super::{common_denominator, rat_big};

/// Polynomial with integer coefficients, lowest degree first.
///
/// The zero polynomial has an empty coefficient list; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_big(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.coeffs.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient up to a rational scalar when `divisor` divides `self` over
    /// the rationals, returned primitive.
    pub fn divide(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.to_rational().div_rem(&divisor.to_rational());
        r.is_zero().then(|| Self::from_rational(&q))
    }

    pub(crate) fn to_rational(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(rat_big).collect())
    }

    /// Clears denominators and content of a rational polynomial.
    pub(crate) fn from_rational(p: &RatPoly) -> Self {
        let l = common_denominator(p.coeffs.iter());
        Self::new(p.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect()).primitive()
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let digits: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        digits.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let digits = Vec::<String>::deserialize(d)?;
        digits
            .iter()
            .map(|t| t.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial over the rationals, lowest degree first. Internal helper for
/// characteristic polynomials, deflation and Sturm chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RatPoly {
    pub(crate) coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub(crate) fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub(crate) fn one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub(crate) fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// `self * (t + c)`.
    pub(crate) fn mul_linear(&self, c: &BigRational) -> Self {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i + 1] += a;
            out[i] += a * c;
        }
        Self::new(out)
    }

    pub(crate) fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        self.sub(&other.scale(&-BigRational::one()))
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                    match other.coeffs.get(i) {
                        Some(b) => a - b,
                        None => a,
                    }
                })
                .collect(),
        )
    }

    pub(crate) fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub(crate) fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_big(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub(crate) fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if self.coeffs.len() <= dd {
            return (Self::new(vec![]), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub(crate) fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            // Keep coefficients small: the gcd is only defined up to units.
            a = b;
            b = if r.is_zero() {
                r
            } else {
                IntPolynomial::from_rational(&r).to_rational()
            };
        }
        a.monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    #[test]
    fn display_and_eval() {
        let p = IntPolynomial::from_i64(&[-1, 0, 1]);
        assert_eq!(p.to_string(), "t^2 - 1");
        assert_eq!(p.eval(&rat(3)), rat(8));
        assert_eq!(IntPolynomial::from_i64(&[3, -2, 0, 1]).to_string(), "t^3 - 2t + 3");
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let p = IntPolynomial::from_i64(&[4, -6, -2]);
        assert_eq!(p.primitive(), IntPolynomial::from_i64(&[-2, 3, 1]));
    }

    #[test]
    fn rational_division_and_gcd() {
        // (t - 1)(t + 2) and (t - 1)(2t + 1)
        let a = RatPoly::new(vec![rat(-2), rat(1), rat(1)]);
        let b = RatPoly::new(vec![rat(-1), rat(-1), rat(2)]);
        let g = a.gcd(&b);
        assert_eq!(g, RatPoly::new(vec![rat(-1), rat(1)]));
        let (q, r) = b.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, RatPoly::new(vec![rat(1), rat(2)]));
        assert_eq!(b.eval(&frac(-1, 2)), rat(0));
    }

    #[test]
    fn integer_division() {
        let f = IntPolynomial::from_i64(&[-1, 1, 1]);
        let g = IntPolynomial::from_i64(&[3, 1]);
        assert_eq!(f.pow(2).mul(&g).divide(&f.pow(2)), Some(g.clone()));
        assert_eq!(g.divide(&f), None);
        assert_eq!(f.divide(&IntPolynomial::zero()), None);
    }
}
