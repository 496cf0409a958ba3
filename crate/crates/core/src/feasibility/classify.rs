use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use super::{conference_check, neumaier_cases, NeumaierCase};
use crate::error::{Error, Result};
use crate::exact::{big_pow, frac, is_integral, rat, serde_rational};
use crate::params::{srg_from_local, ClassicalParams};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCandidate {
    #[serde(with = "serde_rational")]
    pub alpha: BigRational,
    pub mu: u64,
    pub neumaier: BTreeSet<NeumaierCase>,
    /// `None` for a survivor.
    pub rejected_by: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaClassification {
    pub q: i64,
    pub d: u32,
    /// Every `mu = alpha (q+1)` in `1..=mu_max` was examined; above it no
    /// alternative of Neumaier's theorem can hold.
    pub mu_max: u64,
    pub survivors: Vec<AlphaCandidate>,
    /// Candidates that passed the Neumaier screen but failed later.
    pub late_rejections: Vec<AlphaCandidate>,
    /// Rejection counts by reason.
    pub rejected: BTreeMap<String, u64>,
}

impl AlphaClassification {
    pub fn survivor_alphas(&self) -> Vec<BigRational> {
        self.survivors.iter().map(|c| c.alpha.clone()).collect()
    }
}

/// Enumerates `alpha = mu/(q+1)` for every positive integer `mu` that could
/// satisfy one of Neumaier's alternatives for the forced local graph, then
/// applies the integrality, conference, `eta_4 >= 1` and array-validity
/// screens.
///
/// With `s = -q-1` and `r = alpha q [D-1] - 1`, the first alternative is
/// equivalent to `mu X <= (q+1)(q^2-1)` with
/// `X = 2q^(D-1) - q^3 - q^2 + q - 1 > 0`, so it holds exactly for
/// `mu <= floor((q+1)(q^2-1)/X)`. The other two fix `mu` at `(q+1)^2` and
/// `q(q+1)`. The cheap test is cross-checked against [`neumaier_cases`] on
/// every candidate that passes it.
pub fn alpha_classification(q: i64, d: u32) -> Result<AlphaClassification> {
    if q < 2 || d < 4 {
        return Err(Error::InvalidParameters(format!(
            "alpha classification needs q >= 2 and D >= 4, got q = {q}, D = {d}"
        )));
    }
    let x = big_pow(q, d - 1) * 2 - q * q * q - q * q + q - 1;
    let case_i_max: u64 = BigInt::from((q + 1) * (q * q - 1))
        .div_floor(&x)
        .try_into()
        .map_err(|_| Error::Invariant("case (i) bound does not fit in u64".into()))?;
    let steiner = ((q + 1) * (q + 1)) as u64;
    let latin = (q * (q + 1)) as u64;
    let mu_max = case_i_max.max(steiner);

    let mut survivors = Vec::new();
    let mut late_rejections = Vec::new();
    let mut rejected: BTreeMap<String, u64> = BTreeMap::new();
    for mu in 1..=mu_max {
        let mut cases = BTreeSet::new();
        if mu <= case_i_max {
            cases.insert(NeumaierCase::CaseI);
        }
        if mu == steiner {
            cases.insert(NeumaierCase::CaseIiSteiner);
        }
        if mu == latin {
            cases.insert(NeumaierCase::CaseIiiLatin);
        }
        if cases.is_empty() {
            *rejected.entry("neumaier".into()).or_default() += 1;
            continue;
        }
        let alpha = frac(mu as i64, q + 1);
        let cand = examine(q, d, alpha, mu, cases)?;
        match &cand.rejected_by {
            None => survivors.push(cand),
            Some(why) => {
                *rejected.entry(why.clone()).or_default() += 1;
                late_rejections.push(cand);
            }
        }
    }
    Ok(AlphaClassification {
        q,
        d,
        mu_max,
        survivors,
        late_rejections,
        rejected,
    })
}

fn examine(q: i64, d: u32, alpha: BigRational, mu: u64, cases: BTreeSet<NeumaierCase>) -> Result<AlphaCandidate> {
    let probe = ClassicalParams::new(d, q, alpha.clone(), rat(0))?;
    let local = srg_from_local(&probe)?;
    let cp = ClassicalParams::new(d, q, alpha.clone(), local.forced_beta.clone())?;
    let srg = local.srg;
    let full = neumaier_cases(&srg)?;
    if full != cases {
        return Err(Error::Invariant(format!(
            "cheap Neumaier test disagrees at q = {q}, D = {d}, mu = {mu}: {cases:?} vs {full:?}"
        )));
    }
    let reject = |why: &str| Some(why.to_string());
    let named = [("n", &srg.n), ("k", &srg.k), ("lambda", &srg.lambda), ("mu", &srg.mu)];
    let rejected_by = if let Some((name, _)) = named.iter().find(|(_, v)| !is_integral(v) || v.is_negative()) {
        reject(&format!("{name}_not_nonnegative_integer"))
    } else if conference_check(&srg) {
        reject("conference")
    } else if srg.r < rat(1) {
        reject("eta4_below_one")
    } else if cp.intersection_array().is_err() {
        reject("array_not_positive")
    } else {
        None
    };
    Ok(AlphaCandidate {
        alpha,
        mu,
        neumaier: cases,
        rejected_by,
    })
}
