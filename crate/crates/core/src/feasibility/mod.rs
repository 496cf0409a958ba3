//! Verdicts on classical parameters. Every rejection carries a certificate
//! that can be re-checked with one exact evaluation or one modular reduction.

mod classify;
mod families;
mod sweep;

pub use classify::{alpha_classification, AlphaCandidate, AlphaClassification};
pub use families::{family1_eliminate, family2_eliminate};
pub use sweep::{conjecture_sweep, sweep_cell, SweepEntry, SweepOptions, SweepResult, SweepStore};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{describe, is_integral, rat, serde_bigint, serde_rational};
use crate::params::{spectrum_with_candidates, ClassicalParams, Eigenvalue, IntersectionArray, SrgParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `quantity` evaluates to `value`, which is not an integer.
    NonInteger {
        quantity: String,
        #[serde(with = "serde_rational")]
        value: BigRational,
    },
    /// `quantity` evaluates to a negative number.
    Negative {
        quantity: String,
        #[serde(with = "serde_rational")]
        value: BigRational,
    },
    /// `divisor` does not divide `dividend`; integrality of the named
    /// quantity would force it to.
    NotDivides {
        quantity: String,
        #[serde(with = "serde_bigint")]
        divisor: BigInt,
        #[serde(with = "serde_bigint")]
        dividend: BigInt,
    },
    /// Each factor of the numerator is `2 mod 4`, so the numerator has
    /// 2-adic valuation equal to the number of factors, below that of the
    /// denominator.
    TwoAdic {
        quantity: String,
        #[serde(with = "serde_rational::vec")]
        factors: Vec<BigRational>,
        #[serde(with = "serde_bigint")]
        denominator: BigInt,
    },
    Note {
        text: String,
    },
}

impl Certificate {
    /// Re-checks the certificate from its stored data alone.
    pub fn verify(&self) -> bool {
        match self {
            Certificate::NonInteger { value, .. } => !is_integral(value),
            Certificate::Negative { value, .. } => value.is_negative(),
            Certificate::NotDivides { divisor, dividend, .. } => {
                !divisor.is_zero() && !dividend.is_multiple_of(divisor)
            }
            Certificate::TwoAdic { factors, denominator, .. } => {
                let four = BigInt::from(4);
                let ok = factors.iter().all(|f| {
                    is_integral(f) && f.to_integer().mod_floor(&four) == BigInt::from(2)
                });
                ok && !denominator.is_zero()
                    && crate::exact::valuation(denominator, 2) as usize > factors.len()
            }
            Certificate::Note { .. } => true,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::NonInteger { quantity, value } => {
                write!(f, "{quantity} = {} is not an integer", describe(value))
            }
            Certificate::Negative { quantity, value } => {
                write!(f, "{quantity} = {} is negative", describe(value))
            }
            Certificate::NotDivides { quantity, divisor, dividend } => write!(
                f,
                "{divisor} does not divide {dividend} (required for {quantity} to be an integer)"
            ),
            Certificate::TwoAdic { quantity, factors, denominator } => {
                let fs: Vec<String> = factors.iter().map(|x| x.to_string()).collect();
                write!(
                    f,
                    "{quantity}: numerator factors [{}] are all 2 mod 4, so 2^{} exactly divides the numerator while 2^{} divides {denominator}",
                    fs.join(", "),
                    factors.len(),
                    crate::exact::valuation(denominator, 2)
                )
            }
            Certificate::Note { text } => f.write_str(text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Pass,
            certificates: Vec::new(),
        }
    }

    pub fn fail(name: impl Into<String>, cert: Certificate) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Fail,
            certificates: vec![cert],
        }
    }

    pub fn inapplicable(name: impl Into<String>, why: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Inapplicable,
            certificates: vec![Certificate::Note { text: why.into() }],
        }
    }

    /// Adds a further certificate; all must verify.
    pub fn with(mut self, cert: Certificate) -> Self {
        self.certificates.push(cert);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    FeasibleSoFar,
    Eliminated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub params: ClassicalParams,
    pub checks: Vec<Check>,
    pub overall: Overall,
}

impl FeasibilityReport {
    pub fn new(params: ClassicalParams, checks: Vec<Check>) -> Self {
        let overall = if checks.iter().any(|c| c.verdict == Verdict::Fail) {
            Overall::Eliminated
        } else {
            Overall::FeasibleSoFar
        };
        Self {
            params,
            checks,
            overall,
        }
    }

    pub fn is_eliminated(&self) -> bool {
        self.overall == Overall::Eliminated
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.verdict == Verdict::Fail)
    }

    /// Every certificate on a failed check re-verifies.
    pub fn certificates_verify(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .all(|c| !c.certificates.is_empty() && c.certificates.iter().all(Certificate::verify))
    }
}

/// Fails with one certificate per offending quantity, in input order.
fn nonneg_integer_check(name: &str, items: impl IntoIterator<Item = (String, BigRational)>) -> Check {
    let mut failures = items.into_iter().filter_map(|(quantity, value)| {
        if !is_integral(&value) {
            Some(Certificate::NonInteger { quantity, value })
        } else if value.is_negative() {
            Some(Certificate::Negative { quantity, value })
        } else {
            None
        }
    });
    match failures.next() {
        Some(first) => failures.fold(Check::fail(name, first), Check::with),
        None => Check::pass(name),
    }
}

/// `theta_i = [D-i](beta - alpha [i]) - [i]`, tried first by the spectrum
/// routine and confirmed there exactly.
pub(crate) fn classical_eigenvalue_candidates(cp: &ClassicalParams) -> Vec<BigRational> {
    let d = cp.d();
    (0..=d)
        .map(|i| cp.bracket(d - i) * (cp.beta() - cp.alpha() * cp.bracket(i)) - cp.bracket(i))
        .collect()
}

/// Integrality and nonnegativity of `b_i`, `c_i`, `k_i`, all `p^h_ij`, and all
/// multiplicities. Each group is its own check; its first certificate names
/// the first failing quantity in the group.
pub fn integrality_screen(cp: &ClassicalParams) -> FeasibilityReport {
    let ia = match cp.intersection_array() {
        Ok(ia) => ia,
        Err(Error::NonPositiveIntersectionNumber { name, index, .. }) => {
            let value = if name == "b" { cp.b(index as u32) } else { cp.c(index as u32) };
            let check = Check::fail(
                "intersection_numbers_positive",
                Certificate::Negative {
                    quantity: format!("{name}_{index}"),
                    value,
                },
            );
            // A zero entry is not negative; record it as a note instead.
            let check = match &check.certificates[0] {
                Certificate::Negative { value, .. } if value.is_zero() => Check {
                    certificates: vec![Certificate::Note {
                        text: format!("{name}_{index} = 0"),
                    }],
                    ..check
                },
                _ => check,
            };
            return FeasibilityReport::new(cp.clone(), vec![check]);
        }
        Err(e) => {
            let check = Check::fail("intersection_numbers_positive", Certificate::Note { text: e.to_string() });
            return FeasibilityReport::new(cp.clone(), vec![check]);
        }
    };
    let mut checks = vec![Check::pass("intersection_numbers_positive")];
    checks.extend(screen_array(&ia, &classical_eigenvalue_candidates(cp)));
    FeasibilityReport::new(cp.clone(), checks)
}

/// The integrality checks of [`integrality_screen`] for an arbitrary array.
/// `candidates` are eigenvalue guesses tried before bisection.
pub fn screen_array(ia: &IntersectionArray, candidates: &[BigRational]) -> Vec<Check> {
    let d = ia.diameter();
    let mut checks = Vec::new();

    let bc = (0..d)
        .map(|i| (format!("b_{i}"), ia.b(i)))
        .chain((1..=d).map(|i| (format!("c_{i}"), ia.c(i))));
    checks.push(nonneg_integer_check("b_c_integral", bc));

    let ks = ia
        .valencies()
        .iter()
        .enumerate()
        .map(|(i, k)| (format!("k_{i}"), k.clone()));
    checks.push(nonneg_integer_check("valencies_integral", ks));

    let di = d as i64;
    let triples = (0..=di).flat_map(move |h| {
        (0..=di).flat_map(move |i| (i..=di).map(move |j| (h, i, j)))
    });
    let ps = triples.map(|(h, i, j)| (format!("p^{h}_{{{i},{j}}}"), ia.p(h, i, j)));
    checks.push(nonneg_integer_check("triple_intersection_numbers_integral", ps));

    // Every failing multiplicity is recorded, not only the first.
    let spec = spectrum_with_candidates(ia, candidates);
    let mut failures = Vec::new();
    let mut irrational = None;
    for (i, e) in spec.iter().enumerate() {
        match (&e.theta, &e.multiplicity) {
            (Eigenvalue::Rational { .. }, Some(m)) => {
                let quantity = format!("f_{i}");
                if !is_integral(m) {
                    failures.push(Certificate::NonInteger { quantity, value: m.clone() });
                } else if m.is_negative() {
                    failures.push(Certificate::Negative { quantity, value: m.clone() });
                }
            }
            (Eigenvalue::Irrational { factor, .. }, _) => {
                irrational.get_or_insert_with(|| format!("theta_{i} is a root of {factor}; multiplicities not screened"));
            }
            (Eigenvalue::Rational { .. }, None) => unreachable!("rational eigenvalues carry multiplicities"),
        }
    }
    let mut failures = failures.into_iter();
    let mult_check = match (failures.next(), irrational) {
        (Some(first), _) => failures.fold(Check::fail("multiplicities_integral", first), Check::with),
        (None, Some(why)) => Check::inapplicable("multiplicities_integral", why),
        (None, None) => Check::pass("multiplicities_integral"),
    };
    checks.push(mult_check);
    checks
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeumaierCase {
    /// `r <= s(s+1)(mu+1)/2 - 1`.
    CaseI,
    /// `mu = s^2`.
    CaseIiSteiner,
    /// `mu = s(s+1)`.
    CaseIiiLatin,
}

/// Which of the three alternatives hold for a strongly regular parameter set
/// with integral `s < -1`. An empty set rules the parameters out.
pub fn neumaier_cases(srg: &SrgParams) -> Result<BTreeSet<NeumaierCase>> {
    let s = &srg.s;
    if !is_integral(s) || s >= &rat(-1) {
        return Err(Error::HypothesisViolated(s.to_string()));
    }
    let one = rat(1);
    let mut out = BTreeSet::new();
    if srg.r <= s * (s + &one) * (&srg.mu + &one) / rat(2) - &one {
        out.insert(NeumaierCase::CaseI);
    }
    if srg.mu == s * s {
        out.insert(NeumaierCase::CaseIiSteiner);
    }
    if srg.mu == s * (s + &one) {
        out.insert(NeumaierCase::CaseIiiLatin);
    }
    Ok(out)
}

/// `lambda = mu - 1` and `k = 2 mu`.
pub fn conference_check(srg: &SrgParams) -> bool {
    srg.lambda == &srg.mu - rat(1) && srg.k == &srg.mu * rat(2)
}
