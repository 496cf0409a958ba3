use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::signum;
use super::poly::{IntPolynomial, RatPoly};
use super::{frac, rat_big};
use crate::error::{Error, Result};

/// Below this root bound the integer candidates are scanned directly; above
/// it roots are located by Sturm bisection.
const SCAN_LIMIT: u64 = 1 << 16;

/// Width to which irrational roots are isolated for reporting.
const INTERVAL_BITS: u32 = 10;

/// Rational roots with multiplicities, plus the factor with no rational roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDecomposition {
    /// Distinct rational roots in strictly decreasing order.
    pub roots: Vec<(BigRational, usize)>,
    /// Primitive factor left after deflating every rational root.
    pub remainder: IntPolynomial,
    /// Disjoint intervals, each holding exactly one distinct real root of the
    /// remainder, in increasing order. Metadata only.
    pub remainder_intervals: Vec<(BigRational, BigRational)>,
}

impl RootDecomposition {
    pub fn multiplicity_total(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

pub fn rational_roots(p: &IntPolynomial) -> Result<RootDecomposition> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut f = p.primitive();
    let mut roots: Vec<(BigRational, usize)> = Vec::new();

    let zeros = f.coefficients().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push((BigRational::zero(), zeros));
        f = IntPolynomial::new(f.coefficients()[zeros..].to_vec());
    }

    let mut rf = f.to_rational();
    for y in integer_roots_of_monic_transform(&f) {
        let root = BigRational::new(y, f.leading().expect("nonzero").clone());
        let linear = RatPoly::new(vec![-root.clone(), BigRational::one()]);
        let mut mult = 0;
        loop {
            let (q, r) = rf.div_rem(&linear);
            if !r.is_zero() {
                break;
            }
            rf = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        roots.push((root, mult));
    }
    roots.sort_by(|a, b| b.0.cmp(&a.0));

    let remainder = IntPolynomial::from_rational(&rf);
    let remainder_intervals = if remainder.degree() > 0 {
        sturm_isolate(&remainder, INTERVAL_BITS)
    } else {
        Vec::new()
    };
    Ok(RootDecomposition {
        roots,
        remainder,
        remainder_intervals,
    })
}

/// Integer roots of `g(y) = a^(n-1) f(y / a)`, where `a` is the leading
/// coefficient of `f` and `f(0) != 0`. Rational roots of `f` are exactly
/// `y / a` for these `y`.
fn integer_roots_of_monic_transform(f: &IntPolynomial) -> Vec<BigInt> {
    let n = f.degree();
    if n == 0 {
        return Vec::new();
    }
    let a = f.leading().expect("nonzero").clone();
    let mut g: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut apow = BigInt::one();
    let mut powers = vec![BigInt::one(); n];
    for k in 1..n {
        apow *= &a;
        powers[k] = apow.clone();
    }
    for (i, c) in f.coefficients().iter().enumerate().take(n) {
        g.push(c * &powers[n - 1 - i]);
    }
    g.push(BigInt::one());
    let g = IntPolynomial::new(g);
    let bound = fujiwara_bound(&g);

    let mut found = Vec::new();
    if bound <= BigInt::from(SCAN_LIMIT) {
        let g0 = g.coefficients()[0].clone();
        let limit: u64 = bound.try_into().unwrap_or(SCAN_LIMIT);
        for m in 1..=limit {
            let bm = BigInt::from(m);
            if !(&g0 % &bm).is_zero() {
                continue;
            }
            for y in [bm.clone(), -bm] {
                if g.eval_int(&y).is_zero() {
                    found.push(y);
                }
            }
        }
        return found;
    }

    let sturm = SturmChain::new(&squarefree(&g.to_rational()));
    let lo = -bound.clone() - 1;
    let hi = bound + 1;
    let half = |m: &BigInt| BigRational::new(2 * m + 1, BigInt::from(2));
    let vlo = sturm.variations(&half(&lo));
    let vhi = sturm.variations(&half(&hi));
    let mut stack = vec![(lo, hi, vlo, vhi)];
    // Each unit cell (m - 1/2, m + 1/2) holds at most one integer.
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        if vlo <= vhi {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            let m = &hi;
            if g.eval_int(m).is_zero() {
                found.push(m.clone());
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        let vmid = sturm.variations(&half(&mid));
        stack.push((lo, mid.clone(), vlo, vmid));
        stack.push((mid, hi, vmid, vhi));
    }
    found
}

/// Fujiwara's bound on the absolute value of every complex root of a monic
/// polynomial, rounded up to an integer.
fn fujiwara_bound(g: &IntPolynomial) -> BigInt {
    let n = g.degree();
    let c = g.coefficients();
    let mut best = BigInt::zero();
    for k in 1..=n {
        let mut a = c[n - k].abs();
        if k == n {
            a = (a + 1) / 2;
        }
        if a.is_zero() {
            continue;
        }
        let mut r = a.nth_root(k as u32);
        if num_traits::pow(r.clone(), k) < a {
            r += 1;
        }
        if r > best {
            best = r;
        }
    }
    2 * best + 1
}

fn squarefree(p: &RatPoly) -> RatPoly {
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).0
}

/// Sturm chain of a square-free polynomial.
pub(crate) struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub(crate) fn new(p: &RatPoly) -> Self {
        let mut chain = vec![positive_normalize(p)];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(positive_normalize(&d));
        }
        while chain.len() >= 2 {
            let k = chain.len();
            let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(positive_normalize(&r.scale(&-BigRational::one())));
        }
        Self { chain }
    }

    pub(crate) fn variations(&self, x: &BigRational) -> usize {
        count_changes(self.chain.iter().map(|p| signum(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_changes(self.chain.iter().map(|p| {
            let s = signum(&p.leading());
            if positive || p.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }
}

fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Scales by a positive rational so the coefficients are coprime integers.
fn positive_normalize(p: &RatPoly) -> RatPoly {
    let ip = IntPolynomial::from_rational(p);
    let flipped = p.leading().is_negative();
    let rp = ip.to_rational();
    if flipped {
        rp.scale(&-BigRational::one())
    } else {
        rp
    }
}

/// Isolating intervals for the distinct real roots of `p`, each of width at
/// most `2^-bits`, in increasing order. Endpoints are never roots.
pub fn sturm_isolate(p: &IntPolynomial, bits: u32) -> Vec<(BigRational, BigRational)> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let sf = squarefree(&p.to_rational());
    let sturm = SturmChain::new(&sf);
    let total = sturm.variations_at_infinity(false) - sturm.variations_at_infinity(true);
    if total == 0 {
        return Vec::new();
    }
    // Cauchy bound, rounded up to a power of two.
    let lead = sf.leading().abs();
    let max = sf
        .coeffs
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(BigRational::zero);
    let mut bound = BigRational::one();
    while bound <= max.clone() + BigRational::one() {
        bound *= rat_big(BigInt::from(2));
    }
    let width_limit = frac(1, 1i64 << bits.min(62));
    let mut lo = -bound.clone();
    let mut hi = bound;
    // Nudge endpoints off roots.
    while sf.eval(&lo).is_zero() {
        lo -= BigRational::one();
    }
    while sf.eval(&hi).is_zero() {
        hi += BigRational::one();
    }
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), sturm.variations(&lo), sturm.variations(&hi))];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        let count = vlo.saturating_sub(vhi);
        if count == 0 {
            continue;
        }
        if count == 1 && &hi - &lo <= width_limit {
            out.push((lo, hi));
            continue;
        }
        let mut mid = (&lo + &hi) / rat_big(BigInt::from(2));
        if sf.eval(&mid).is_zero() {
            // Shift off the rational root; only reachable for inputs that
            // still carry rational roots.
            mid = (&lo + &mid * rat_big(BigInt::from(3))) / rat_big(BigInt::from(4));
        }
        let vmid = sturm.variations(&mid);
        stack.push((lo, mid.clone(), vlo, vmid));
        stack.push((mid, hi, vmid, vhi));
    }
    out.sort();
    out
}
