//! Quantities computable from classical parameters `(D, q, alpha, beta)`.

mod array;
mod closed;
mod local;
mod spectrum;

pub use array::IntersectionArray;
pub use closed::{multiplicity_closed_form, p633_closed_form, ClosedForm};
pub(crate) use closed::{fd_family2, kd_family2};
pub use local::{
    local_eig_candidates, srg_from_local, thin_module_scalars, tilde, DiameterClass, Extended,
    LocalEigenvalues, LocalSrg, SrgParams, ThinScalars,
};
pub use spectrum::{multiplicity, spectrum, spectrum_with_candidates, Eigenvalue, SpectrumEntry};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{big_pow, rat, rat_big, serde_rational};

/// `[j] = 1 + q + ... + q^(j-1)`; zero for `j = 0`.
pub fn qbracket(j: u32, q: i64) -> BigInt {
    let qb = BigInt::from(q);
    let mut term = BigInt::one();
    let mut sum = BigInt::zero();
    for _ in 0..j {
        sum += &term;
        term *= &qb;
    }
    sum
}

fn qbr(j: u32, q: i64) -> BigRational {
    rat_big(qbracket(j, q))
}

/// The two parameter families that survive the local-graph analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `alpha = q + 1`, `beta = (q^(D+1)(q+1) - q^2 - 1)/(q - 1)`.
    One,
    /// `alpha = q`, `beta = q^2 (q^D - 1)/(q - 1)`.
    Two,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::One => write!(f, "1"),
            Family::Two => write!(f, "2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassicalParams {
    d: u32,
    q: i64,
    #[serde(with = "serde_rational")]
    alpha: BigRational,
    #[serde(with = "serde_rational")]
    beta: BigRational,
}

impl ClassicalParams {
    pub fn new(d: u32, q: i64, alpha: BigRational, beta: BigRational) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameters("D must be at least 1".into()));
        }
        if q == 0 || q == -1 {
            return Err(Error::InvalidParameters(format!(
                "q = {q} is excluded (q must not be 0 or -1)"
            )));
        }
        Ok(Self { d, q, alpha, beta })
    }

    pub fn from_ints(d: u32, q: i64, alpha: i64, beta: i64) -> Result<Self> {
        Self::new(d, q, rat(alpha), rat(beta))
    }

    /// Parameters of the given family. Requires `q >= 2`.
    pub fn family(family: Family, d: u32, q: i64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameters(format!(
                "family parameters need q >= 2, got {q}"
            )));
        }
        let qm1 = BigInt::from(q - 1);
        let (alpha, beta) = match family {
            Family::One => {
                let num = big_pow(q, d + 1) * (q + 1) - q * q - 1;
                (rat(q + 1), BigRational::new(num, qm1))
            }
            Family::Two => {
                let num = big_pow(q, d) - 1;
                (rat(q), BigRational::new(num * q * q, qm1))
            }
        };
        Self::new(d, q, alpha, beta)
    }

    /// Which family, if any, these parameters belong to.
    pub fn family_of(&self) -> Option<Family> {
        if self.q < 2 {
            return None;
        }
        [Family::One, Family::Two].into_iter().find(|&f| {
            Self::family(f, self.d, self.q)
                .map(|p| p == *self)
                .unwrap_or(false)
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn bracket(&self, j: u32) -> BigRational {
        qbr(j, self.q)
    }

    /// `c_i = [i](1 + alpha [i-1])` for `1 <= i <= D`.
    pub fn c(&self, i: u32) -> BigRational {
        debug_assert!(i >= 1);
        self.bracket(i) * (BigRational::one() + &self.alpha * self.bracket(i - 1))
    }

    /// `b_i = ([D] - [i])(beta - alpha [i])` for `0 <= i <= D - 1`.
    pub fn b(&self, i: u32) -> BigRational {
        (self.bracket(self.d) - self.bracket(i)) * (&self.beta - &self.alpha * self.bracket(i))
    }

    /// Intersection array; fails on the first nonpositive `b_i` or `c_i`.
    pub fn intersection_array(&self) -> Result<IntersectionArray> {
        let b: Vec<BigRational> = (0..self.d).map(|i| self.b(i)).collect();
        let c: Vec<BigRational> = (1..=self.d).map(|i| self.c(i)).collect();
        IntersectionArray::new(b, c)
    }
}

impl fmt::Display for ClassicalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.d, self.q, self.alpha, self.beta)
    }
}
