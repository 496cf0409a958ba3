//! Eigenvalues and multiplicities of an intersection array.
//!
//! The tridiagonal matrix is scaled to integers; its leading principal minors
//! `det(tI - M_j)` form a Sturm sequence whose sign changes at `t` count the
//! eigenvalues above `t`. Since the scaled characteristic polynomial is monic
//! over the integers, every rational eigenvalue of the scaled matrix is an
//! integer, so bisection on the half-integer grid finds all of them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use super::IntersectionArray;
use crate::exact::{
    common_denominator, rat_big, serde_rational, signum, sturm_isolate, IntPolynomial, RatPoly,
};

/// Width of the reported isolating intervals for irrational eigenvalues.
const ISOLATION_BITS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Eigenvalue {
    Rational {
        #[serde(with = "serde_rational")]
        value: BigRational,
    },
    /// A root of `factor` (irreducible part of the characteristic polynomial
    /// with no rational roots), located in `(lower, upper)`.
    Irrational {
        factor: IntPolynomial,
        #[serde(with = "serde_rational")]
        lower: BigRational,
        #[serde(with = "serde_rational")]
        upper: BigRational,
    },
}

impl Eigenvalue {
    pub fn rational(&self) -> Option<&BigRational> {
        match self {
            Eigenvalue::Rational { value } => Some(value),
            Eigenvalue::Irrational { .. } => None,
        }
    }

    /// A rational point usable for ordering: the value, or the interval midpoint.
    fn anchor(&self) -> BigRational {
        match self {
            Eigenvalue::Rational { value } => value.clone(),
            Eigenvalue::Irrational { lower, upper, .. } => (lower + upper) / BigRational::from_integer(2.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub theta: Eigenvalue,
    /// `None` for an irrational eigenvalue whose multiplicity is not rational
    /// as an element of the factor's number field.
    #[serde(with = "serde_rational::option")]
    pub multiplicity: Option<BigRational>,
}

/// Integer-scaled tridiagonal matrix `L * M`.
struct Scaled {
    scale: BigInt,
    diag: Vec<BigInt>,
    /// `offdiag[j] = B_(j-1) C_j` for `1 <= j <= D`; index 0 unused.
    offdiag: Vec<BigInt>,
}

impl Scaled {
    fn new(ia: &IntersectionArray) -> Self {
        let d = ia.diameter();
        let all: Vec<BigRational> = (0..=d)
            .flat_map(|i| [ia.a(i), ia.b(i), ia.c(i)])
            .collect();
        let scale = common_denominator(all.iter());
        let int = |x: BigRational| (x * rat_big(scale.clone())).to_integer();
        let diag = (0..=d).map(|i| int(ia.a(i))).collect();
        let offdiag = (0..=d)
            .map(|j| {
                if j == 0 {
                    BigInt::zero()
                } else {
                    int(ia.b(j - 1)) * int(ia.c(j))
                }
            })
            .collect();
        Self { scale, diag, offdiag }
    }

    fn n(&self) -> usize {
        self.diag.len()
    }

    /// `den^j det(t I - M_j)` at `t = num/den` for `j = 0..=n`.
    fn minors(&self, num: &BigInt, den: &BigInt) -> Vec<BigInt> {
        let n = self.n();
        let den2 = den * den;
        let mut out = Vec::with_capacity(n + 1);
        out.push(BigInt::one());
        out.push(num - den * &self.diag[0]);
        for j in 1..n {
            let next = (num - den * &self.diag[j]) * &out[j] - &den2 * &self.offdiag[j] * &out[j - 1];
            out.push(next);
        }
        out
    }

    /// Eigenvalues strictly above `num/den`, assuming `num/den` is not one.
    fn count_above(&self, num: &BigInt, den: &BigInt) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for m in self.minors(num, den) {
            let s = match m.sign() {
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
                num_bigint::Sign::Plus => 1,
            };
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    fn is_root(&self, m: &BigInt) -> bool {
        self.minors(m, &BigInt::one())
            .last()
            .expect("nonempty")
            .is_zero()
    }

    fn gershgorin(&self) -> BigInt {
        let n = self.n();
        (0..n)
            .map(|i| {
                // |B_(i-1) C_i| bounds the product of the two off-diagonal
                // entries, so its square-root-free majorant 1 + |.| works.
                let off_l = if i > 0 { self.offdiag[i].abs() } else { BigInt::zero() };
                let off_r = if i + 1 < n { self.offdiag[i + 1].abs() } else { BigInt::zero() };
                self.diag[i].abs() + off_l + off_r + 1
            })
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Integer eigenvalues of the scaled matrix, decreasing.
    fn integer_eigenvalues(&self, hints: &[BigInt]) -> Vec<BigInt> {
        let n = self.n();
        let mut found: Vec<BigInt> = Vec::new();
        for h in hints {
            if !found.contains(h) && self.is_root(h) {
                found.push(h.clone());
            }
        }
        if found.len() < n {
            found = self.bisect();
        }
        found.sort_by(|a, b| b.cmp(a));
        found
    }

    fn bisect(&self) -> Vec<BigInt> {
        let two = BigInt::from(2);
        let above_half = |k: &BigInt| self.count_above(&(k * 2 + 1), &two);
        let g = self.gershgorin();
        let lo = -&g - 1;
        let hi = g;
        let mut found = Vec::new();
        let mut stack = vec![(above_half(&lo), above_half(&hi), lo, hi)];
        while let Some((nlo, nhi, lo, hi)) = stack.pop() {
            if nlo == nhi {
                continue;
            }
            if &hi - &lo == BigInt::one() {
                if self.is_root(&hi) {
                    found.push(hi);
                }
                continue;
            }
            let mid: BigInt = (&lo + &hi).div_floor(&two);
            let nmid = above_half(&mid);
            stack.push((nlo, nmid, lo, mid.clone()));
            stack.push((nmid, nhi, mid, hi));
        }
        found
    }

    fn char_poly(&self) -> RatPoly {
        let n = self.n();
        let lin = |c: &BigInt| RatPoly::new(vec![rat_big(-c.clone()), BigRational::one()]);
        let mut prev = RatPoly::one();
        let mut cur = lin(&self.diag[0]);
        for j in 1..n {
            let next = lin(&self.diag[j])
                .mul(&cur)
                .sub(&prev.scale(&rat_big(self.offdiag[j].clone())));
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// `u_0, ..., u_D` for eigenvalue `theta`, as polynomials in `theta`.
fn u_sequence(ia: &IntersectionArray, theta: &RatPoly) -> Vec<RatPoly> {
    let d = ia.diameter();
    let mut u = vec![RatPoly::one()];
    if d >= 1 {
        u.push(theta.scale(&ia.k().recip()));
    }
    for j in 1..d {
        let t = theta
            .sub(&RatPoly::new(vec![ia.a(j)]))
            .mul(&u[j])
            .sub(&u[j - 1].scale(&ia.c(j)));
        u.push(t.scale(&ia.b(j).recip()));
    }
    u
}

/// `m(theta) = n / sum_j k_j u_j(theta)^2` for a rational eigenvalue.
pub fn multiplicity(ia: &IntersectionArray, theta: &BigRational) -> BigRational {
    let d = ia.diameter();
    let mut u = vec![BigRational::one(), theta / ia.k()];
    for j in 1..d {
        let next = ((theta - ia.a(j)) * &u[j] - ia.c(j) * &u[j - 1]) / ia.b(j);
        u.push(next);
    }
    let s: BigRational = ia
        .valencies()
        .iter()
        .zip(&u)
        .map(|(k, x)| k * x * x)
        .sum();
    ia.order() / s
}

/// Full spectrum in strictly decreasing order.
pub fn spectrum(ia: &IntersectionArray) -> Vec<SpectrumEntry> {
    spectrum_with_candidates(ia, &[])
}

/// As [`spectrum`], first testing the given candidate eigenvalues exactly.
/// Bisection runs only if the candidates do not account for every eigenvalue.
pub fn spectrum_with_candidates(
    ia: &IntersectionArray,
    candidates: &[BigRational],
) -> Vec<SpectrumEntry> {
    let sc = Scaled::new(ia);
    let l = rat_big(sc.scale.clone());
    let hints: Vec<BigInt> = candidates
        .iter()
        .map(|t| t * &l)
        .filter(|t| t.is_integer())
        .map(|t| t.to_integer())
        .collect();
    let ints = sc.integer_eigenvalues(&hints);
    let mut entries: Vec<SpectrumEntry> = ints
        .iter()
        .map(|m| {
            let theta = BigRational::new(m.clone(), sc.scale.clone());
            let mult = multiplicity(ia, &theta);
            SpectrumEntry {
                theta: Eigenvalue::Rational { value: theta },
                multiplicity: Some(mult),
            }
        })
        .collect();

    if ints.len() < sc.n() {
        entries.extend(irrational_entries(ia, &sc, &ints));
        entries.sort_by(|x, y| y.theta.anchor().cmp(&x.theta.anchor()));
    }
    entries
}

fn irrational_entries(ia: &IntersectionArray, sc: &Scaled, ints: &[BigInt]) -> Vec<SpectrumEntry> {
    let mut rem = sc.char_poly();
    for m in ints {
        let lin = RatPoly::new(vec![rat_big(-m.clone()), BigRational::one()]);
        let (q, r) = rem.div_rem(&lin);
        debug_assert!(r.is_zero());
        rem = q;
    }
    // Back to the unscaled variable: r(L t).
    let l = rat_big(sc.scale.clone());
    let mut pow = BigRational::one();
    let mut coeffs = Vec::with_capacity(rem.coeffs.len());
    for c in &rem.coeffs {
        coeffs.push(c * &pow);
        pow *= &l;
    }
    let factor = IntPolynomial::from_rational(&RatPoly::new(coeffs));
    let rfactor = factor.to_rational().monic();

    let theta = RatPoly::new(vec![BigRational::zero(), BigRational::one()]);
    let u = u_sequence(ia, &theta);
    let mut s = RatPoly::new(Vec::new());
    for (k, x) in ia.valencies().iter().zip(&u) {
        s = s.add(&x.mul(x).scale(k));
    }
    let (_, s_mod) = s.div_rem(&rfactor);
    let mult = (s_mod.degree() == 0 && !s_mod.is_zero()).then(|| ia.order() / s_mod.leading());

    let rationals: Vec<BigRational> = ints
        .iter()
        .map(|m| BigRational::new(m.clone(), sc.scale.clone()))
        .collect();
    sturm_isolate(&factor, ISOLATION_BITS)
        .into_iter()
        .map(|(lo, hi)| {
            let (lower, upper) = separate(&factor, lo, hi, &rationals);
            SpectrumEntry {
                theta: Eigenvalue::Irrational {
                    factor: factor.clone(),
                    lower,
                    upper,
                },
                multiplicity: mult.clone(),
            }
        })
        .collect()
}

/// Shrinks an isolating interval until it holds none of `avoid`.
fn separate(
    f: &IntPolynomial,
    mut lo: BigRational,
    mut hi: BigRational,
    avoid: &[BigRational],
) -> (BigRational, BigRational) {
    let half = BigRational::new(1.into(), 2.into());
    while avoid.iter().any(|x| &lo <= x && x <= &hi) {
        let mid = (&lo + &hi) * &half;
        let s_mid = signum(&f.eval(&mid));
        if s_mid == 0 {
            unreachable!("factor has no rational roots");
        }
        if signum(&f.eval(&lo)) != s_mid {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

impl PartialOrd for Eigenvalue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.anchor().cmp(&other.anchor()))
    }
}
