//! Local-graph data: the tilde map, candidate local eigenvalues, the forced
//! strongly regular parameters of the local graph, and thin-module scalars.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use super::ClassicalParams;
use crate::error::{Error, Result};
use crate::exact::{rat, serde_rational};

/// A rational or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extended {
    Finite(#[serde(with = "serde_rational")] BigRational),
    Infinity,
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinity => write!(f, "inf"),
        }
    }
}

/// `z~ = -1 - b_1/(1 + z)`, infinite at `z = -1`.
pub fn tilde(z: &BigRational, b1: &BigRational) -> Extended {
    let one = BigRational::one();
    let denom = &one + z;
    if denom.is_zero() {
        Extended::Infinity
    } else {
        Extended::Finite(-one - b1 / denom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalEigenvalues {
    /// `eta_1..eta_4`.
    #[serde(with = "serde_rational::vec")]
    pub eta: Vec<BigRational>,
    pub eta4_eq_eta2: bool,
    pub eta4_eq_eta3: bool,
}

/// `-q-1`, `beta-alpha-1`, `-1`, `alpha q [D-1] - 1`.
pub fn local_eig_candidates(cp: &ClassicalParams) -> LocalEigenvalues {
    let q = rat(cp.q());
    let one = BigRational::one();
    let eta1 = -&q - &one;
    let eta2 = cp.beta() - cp.alpha() - &one;
    let eta3 = -one.clone();
    let eta4 = cp.alpha() * &q * cp.bracket(cp.d() - 1) - &one;
    LocalEigenvalues {
        eta4_eq_eta2: eta4 == eta2,
        eta4_eq_eta3: eta4 == eta3,
        eta: vec![eta1, eta2, eta3, eta4],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    #[serde(with = "serde_rational")]
    pub n: BigRational,
    #[serde(with = "serde_rational")]
    pub k: BigRational,
    #[serde(with = "serde_rational")]
    pub lambda: BigRational,
    #[serde(with = "serde_rational")]
    pub mu: BigRational,
    #[serde(with = "serde_rational")]
    pub r: BigRational,
    #[serde(with = "serde_rational")]
    pub s: BigRational,
}

impl SrgParams {
    /// Parameters of a connected strongly regular graph from `n`, `k` and the
    /// two restricted eigenvalues: `mu = k + rs`, `lambda = mu + r + s`.
    pub fn from_eigenvalues(n: BigRational, k: BigRational, r: BigRational, s: BigRational) -> Self {
        let mu = &k + &r * &s;
        let lambda = &mu + &r + &s;
        Self { n, k, lambda, mu, r, s }
    }

    /// Checks `mu = k + rs`, `lambda = mu + r + s` and
    /// `n = 1 + k + k(k - lambda - 1)/mu`.
    pub fn is_consistent(&self) -> bool {
        if self.mu.is_zero() {
            return false;
        }
        let one = BigRational::one();
        self.mu == &self.k + &self.r * &self.s
            && self.lambda == &self.mu + &self.r + &self.s
            && self.n == &one + &self.k + &self.k * (&self.k - &self.lambda - &one) / &self.mu
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSrg {
    pub srg: SrgParams,
    /// `beta = alpha [D+1] - q`, the only value compatible with the local graph.
    #[serde(with = "serde_rational")]
    pub forced_beta: BigRational,
    pub beta_matches: bool,
}

/// Strongly regular parameters the local graph must have, written with
/// brackets so they hold for every admissible `q`:
/// `n = [D](alpha [D+1] - q)`, `k = (q+1)(alpha [D] - 1)`,
/// `lambda = alpha([D] + q) - q - 2`, `mu = alpha (q+1)`,
/// `r = eta_4`, `s = -q - 1`.
pub fn srg_from_local(cp: &ClassicalParams) -> Result<LocalSrg> {
    if cp.alpha().is_zero() {
        return Err(Error::AlphaZero);
    }
    let q = rat(cp.q());
    let one = BigRational::one();
    let a = cp.alpha();
    let d = cp.d();
    let n = cp.bracket(d) * (a * cp.bracket(d + 1) - &q);
    let k = (&q + &one) * (a * cp.bracket(d) - &one);
    let lambda = a * (cp.bracket(d) + &q) - &q - rat(2);
    let mu = a * (&q + &one);
    let r = local_eig_candidates(cp).eta[3].clone();
    let s = -&q - &one;
    let forced_beta = a * cp.bracket(d + 1) - &q;
    Ok(LocalSrg {
        beta_matches: &forced_beta == cp.beta(),
        forced_beta,
        srg: SrgParams { n, k, lambda, mu, r, s },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiameterClass {
    /// Thin endpoint-1 modules of diameter `D - 2`.
    #[serde(rename = "D-2")]
    DMinus2,
    /// Thin endpoint-1 modules of diameter `D - 1`.
    #[serde(rename = "D-1")]
    DMinus1,
}

impl DiameterClass {
    pub fn diameter(self, d: u32) -> u32 {
        match self {
            DiameterClass::DMinus2 => d.saturating_sub(2),
            DiameterClass::DMinus1 => d.saturating_sub(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinScalars {
    pub class: DiameterClass,
    /// `beta_1..beta_d` (index 0 holds `beta_1`).
    #[serde(with = "serde_rational::vec")]
    pub beta: Vec<BigRational>,
    /// `beta'_1..beta'_d`.
    #[serde(with = "serde_rational::vec")]
    pub beta_prime: Vec<BigRational>,
    /// `gamma_0..gamma_(d-1)`, each `c_(i+1)`.
    #[serde(with = "serde_rational::vec")]
    pub gamma: Vec<BigRational>,
}

/// Raising/lowering scalars of the two thin endpoint-1 modules sharing a
/// diameter class, in the basis `E*_(i+1) A_i v`.
///
/// Class `D-2`: `beta_i = b_(i+1)`,
/// `beta'_i = (c_(i+1)/c_i) q^(i+1) [D-i-1]/[i+1] [i] (beta - alpha [i])`.
/// Class `D-1`: `beta_i = b_i`,
/// `beta'_i = (c_(i+1)/c_i) q^i [D-i]/[i+1] [i] (beta - alpha [i+1])`.
pub fn thin_module_scalars(cp: &ClassicalParams, class: DiameterClass) -> ThinScalars {
    let d = cp.d();
    let dm = class.diameter(d);
    let q = rat(cp.q());
    let qpow = |e: u32| num_traits::pow(q.clone(), e as usize);
    let mut beta = Vec::new();
    let mut beta_prime = Vec::new();
    for i in 1..=dm {
        let ratio_c = cp.c(i + 1) / cp.c(i);
        let bi = cp.bracket(i);
        let (b, bp) = match class {
            DiameterClass::DMinus2 => (
                cp.b(i + 1),
                ratio_c * qpow(i + 1) * cp.bracket(d - i - 1) / cp.bracket(i + 1)
                    * &bi
                    * (cp.beta() - cp.alpha() * &bi),
            ),
            DiameterClass::DMinus1 => (
                cp.b(i),
                ratio_c * qpow(i) * cp.bracket(d - i) / cp.bracket(i + 1)
                    * &bi
                    * (cp.beta() - cp.alpha() * cp.bracket(i + 1)),
            ),
        };
        beta.push(b);
        beta_prime.push(bp);
    }
    let gamma = (0..dm).map(|i| cp.c(i + 1)).collect();
    ThinScalars {
        class,
        beta,
        beta_prime,
        gamma,
    }
}
