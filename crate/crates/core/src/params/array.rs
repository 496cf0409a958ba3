use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, serde_rational};

/// `{b_0, ..., b_(D-1); c_1, ..., c_D}` with derived `a_i` and `k_i`.
///
/// Triple products `p^h_ij` are memoized per `h` on first use.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawArray", into = "RawArray")]
pub struct IntersectionArray {
    b: Vec<BigRational>,
    c: Vec<BigRational>,
    a: Vec<BigRational>,
    valencies: Arc<OnceLock<Vec<BigRational>>>,
    memo: Arc<Vec<OnceLock<Vec<Vec<BigRational>>>>>,
}

#[derive(Serialize, Deserialize)]
struct RawArray {
    #[serde(with = "serde_rational::vec")]
    b: Vec<BigRational>,
    #[serde(with = "serde_rational::vec")]
    c: Vec<BigRational>,
}

impl TryFrom<RawArray> for IntersectionArray {
    type Error = Error;
    fn try_from(raw: RawArray) -> Result<Self> {
        Self::new(raw.b, raw.c)
    }
}

impl From<IntersectionArray> for RawArray {
    fn from(ia: IntersectionArray) -> Self {
        RawArray { b: ia.b, c: ia.c }
    }
}

impl PartialEq for IntersectionArray {
    fn eq(&self, other: &Self) -> bool {
        self.b == other.b && self.c == other.c
    }
}

impl Eq for IntersectionArray {}

impl fmt::Debug for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntersectionArray{self}")
    }
}

impl IntersectionArray {
    /// `b = [b_0..b_(D-1)]`, `c = [c_1..c_D]`; every entry must be positive.
    pub fn new(b: Vec<BigRational>, c: Vec<BigRational>) -> Result<Self> {
        if b.len() != c.len() || b.is_empty() {
            return Err(Error::InvalidParameters(format!(
                "array needs D >= 1 entries on each side, got {} and {}",
                b.len(),
                c.len()
            )));
        }
        for (i, v) in b.iter().enumerate() {
            if !v.is_positive() {
                return Err(Error::NonPositiveIntersectionNumber {
                    name: "b",
                    index: i,
                    value: v.to_string(),
                });
            }
        }
        for (i, v) in c.iter().enumerate() {
            if !v.is_positive() {
                return Err(Error::NonPositiveIntersectionNumber {
                    name: "c",
                    index: i + 1,
                    value: v.to_string(),
                });
            }
        }
        let d = b.len();
        let k = b[0].clone();
        let a = (0..=d)
            .map(|i| {
                let bi = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                let ci = if i == 0 { BigRational::zero() } else { c[i - 1].clone() };
                &k - bi - ci
            })
            .collect();
        let memo = Arc::new((0..=d).map(|_| OnceLock::new()).collect());
        Ok(Self {
            b,
            c,
            a,
            valencies: Arc::new(OnceLock::new()),
            memo,
        })
    }

    pub fn from_i64(b: &[i64], c: &[i64]) -> Result<Self> {
        let conv = |xs: &[i64]| xs.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        Self::new(conv(b), conv(c))
    }

    /// Parses `{b_0,...,b_(D-1); c_1,...,c_D}`; braces optional.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim().trim_start_matches('{').trim_end_matches('}');
        let (bs, cs) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected '{{b...; c...}}', got {text:?}")))?;
        let list = |part: &str| -> Result<Vec<BigRational>> {
            part.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(parse_rational)
                .collect()
        };
        Self::new(list(bs)?, list(cs)?)
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    /// Valency `k = b_0`.
    pub fn k(&self) -> &BigRational {
        &self.b[0]
    }

    /// `b_i`, zero for `i >= D`.
    pub fn b(&self, i: usize) -> BigRational {
        self.b.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `c_i`, zero for `i = 0` and `i > D`.
    pub fn c(&self, i: usize) -> BigRational {
        if i == 0 {
            return BigRational::zero();
        }
        self.c.get(i - 1).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `a_i`, zero outside `0..=D`.
    pub fn a(&self, i: usize) -> BigRational {
        self.a.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn b_list(&self) -> &[BigRational] {
        &self.b
    }

    pub fn c_list(&self) -> &[BigRational] {
        &self.c
    }

    pub fn a_list(&self) -> &[BigRational] {
        &self.a
    }

    /// `k_0, ..., k_D`.
    /// `k_0..k_D`, computed on first use.
    pub fn valencies(&self) -> &[BigRational] {
        self.valencies.get_or_init(|| {
            let mut k = vec![BigRational::from_integer(BigInt::from(1))];
            for (b, c) in self.b.iter().zip(&self.c) {
                let next = &k[k.len() - 1] * b / c;
                k.push(next);
            }
            k
        })
    }

    /// Number of vertices `sum k_i`.
    pub fn order(&self) -> BigRational {
        self.valencies().iter().sum()
    }

    /// `p^h_ij`; indices outside `0..=D` give 0.
    pub fn p(&self, h: i64, i: i64, j: i64) -> BigRational {
        let d = self.diameter() as i64;
        if [h, i, j].iter().any(|&x| x < 0 || x > d) {
            return BigRational::zero();
        }
        let table = self.memo[h as usize].get_or_init(|| self.p_table(h as usize));
        table[i as usize][j as usize].clone()
    }

    /// A single `p^h_ij` without filling the memo; runs the recurrence only up
    /// to column `min(i, j)`. Cheaper than [`Self::p`] for one entry at large `D`.
    pub fn p_single(&self, h: i64, i: i64, j: i64) -> BigRational {
        let d = self.diameter() as i64;
        if [h, i, j].iter().any(|&x| x < 0 || x > d) {
            return BigRational::zero();
        }
        if let Some(table) = self.memo[h as usize].get() {
            return table[i as usize][j as usize].clone();
        }
        let (lo, hi) = (i.min(j) as usize, i.max(j) as usize);
        self.p_columns(h as usize, lo)[hi][lo].clone()
    }

    /// All `p^h_ij` for fixed `h`, from
    /// `A_i A_1 A_j = (A_1 A_i) A_j` read off at `A_h`:
    /// `b_(j-1) P[i][j-1] + a_j P[i][j] + c_(j+1) P[i][j+1]
    ///   = b_(i-1) P[i-1][j] + a_i P[i][j] + c_(i+1) P[i+1][j]`.
    fn p_table(&self, h: usize) -> Vec<Vec<BigRational>> {
        self.p_columns(h, self.diameter())
    }

    /// Columns `0..=last` of the table for `h`. Entries with `|i - j| > h`
    /// vanish by the triangle inequality and are skipped.
    fn p_columns(&self, h: usize, last: usize) -> Vec<Vec<BigRational>> {
        let d = self.diameter();
        let mut p = vec![vec![BigRational::zero(); d + 1]; d + 1];
        p[h][0] = BigRational::from_integer(1.into());
        let at = |p: &Vec<Vec<BigRational>>, i: isize, j: usize| -> BigRational {
            if i < 0 || i as usize > d {
                BigRational::zero()
            } else {
                p[i as usize][j].clone()
            }
        };
        for j in 0..last {
            for i in (j + 1).saturating_sub(h)..=(j + 1 + h).min(d) {
                let ii = i as isize;
                let mut rhs = &self.a(i) * &p[i][j];
                if i > 0 {
                    rhs += self.b(i - 1) * at(&p, ii - 1, j);
                }
                rhs += self.c(i + 1) * at(&p, ii + 1, j);
                rhs -= &self.a(j) * &p[i][j];
                if j > 0 {
                    rhs -= self.b(j - 1) * &p[i][j - 1];
                }
                p[i][j + 1] = rhs / self.c(j + 1);
            }
        }
        p
    }

    /// Tridiagonal intersection matrix rows: `(c_i, a_i, b_i)` for each `i`.
    pub fn tridiagonal(&self) -> Vec<(BigRational, BigRational, BigRational)> {
        (0..=self.diameter())
            .map(|i| (self.c(i), self.a(i), self.b(i)))
            .collect()
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[BigRational]| {
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn petersen() -> IntersectionArray {
        IntersectionArray::parse("{3,2;1,1}").unwrap()
    }

    #[test]
    fn parse_and_display() {
        let ia = petersen();
        assert_eq!(ia.to_string(), "{3,2;1,1}");
        assert_eq!(ia.a_list(), &[rat(0), rat(0), rat(2)]);
        assert_eq!(ia.valencies(), &[rat(1), rat(3), rat(6)]);
        assert_eq!(ia.order(), rat(10));
        assert!(IntersectionArray::parse("{3,2;1}").is_err());
        assert!(IntersectionArray::parse("3,2,1,1").is_err());
        assert!(matches!(
            IntersectionArray::parse("{3,0;1,1}"),
            Err(Error::NonPositiveIntersectionNumber { name: "b", index: 1, .. })
        ));
    }

    #[test]
    fn small_triple_products() {
        let ia = petersen();
        assert_eq!(ia.p(0, 1, 1), rat(3));
        assert_eq!(ia.p(0, 2, 2), rat(6));
        assert_eq!(ia.p(1, 1, 1), rat(0));
        assert_eq!(ia.p(2, 1, 1), rat(1));
        let q4 = IntersectionArray::from_i64(&[4, 3, 2, 1], &[1, 2, 3, 4]).unwrap();
        assert_eq!(q4.p(2, 1, 1), rat(2));
        assert_eq!(q4.p(4, 2, 2), rat(6));
        assert_eq!(q4.p(0, 3, 1), rat(0));
        assert_eq!(q4.p(5, 1, 1), rat(0));
    }

    #[test]
    fn serde_round_trip() {
        let ia = petersen();
        let json = serde_json::to_string(&ia).unwrap();
        let back: IntersectionArray = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ia);
    }

    fn arrays() -> impl Strategy<Value = IntersectionArray> {
        (2usize..6).prop_flat_map(|d| {
            (
                proptest::collection::vec(1i64..9, d),
                proptest::collection::vec(1i64..9, d),
            )
                .prop_map(|(b, c)| IntersectionArray::from_i64(&b, &c).unwrap())
        })
    }

    /// Unbanded recurrence over every row, as an oracle for the banded one.
    fn naive_table(ia: &IntersectionArray, h: usize) -> Vec<Vec<BigRational>> {
        let d = ia.diameter();
        let get = |p: &Vec<Vec<BigRational>>, i: usize, j: usize| p.get(i).map_or(BigRational::zero(), |r| r[j].clone());
        let mut p = vec![vec![BigRational::zero(); d + 1]; d + 1];
        p[h][0] = rat(1);
        for j in 0..d {
            for i in 0..=d {
                let mut rhs = ia.a(i) * &p[i][j] + ia.c(i + 1) * get(&p, i + 1, j) - ia.a(j) * &p[i][j];
                if i > 0 {
                    rhs += ia.b(i - 1) * &p[i - 1][j];
                }
                if j > 0 {
                    rhs -= ia.b(j - 1) * &p[i][j - 1];
                }
                p[i][j + 1] = rhs / ia.c(j + 1);
            }
        }
        p
    }

    proptest! {
        #[test]
        fn banded_matches_naive(ia in arrays()) {
            let d = ia.diameter();
            let fresh = IntersectionArray::new(ia.b_list().to_vec(), ia.c_list().to_vec()).unwrap();
            for h in 0..=d {
                let naive = naive_table(&ia, h);
                for i in 0..=d {
                    for j in 0..=d {
                        prop_assert_eq!(&fresh.p_single(h as i64, i as i64, j as i64), &naive[i][j]);
                        prop_assert_eq!(&ia.p(h as i64, i as i64, j as i64), &naive[i][j]);
                    }
                }
            }
        }

        #[test]
        fn symmetric_and_triangle(ia in arrays()) {
            let d = ia.diameter() as i64;
            for h in 0..=d {
                for i in 0..=d {
                    for j in 0..=d {
                        prop_assert_eq!(ia.p(h, i, j), ia.p(h, j, i));
                        if h > i + j || i > h + j || j > h + i {
                            prop_assert!(ia.p(h, i, j).is_zero());
                        }
                    }
                }
                prop_assert_eq!(ia.p(0, h, h), ia.valencies()[h as usize].clone());
            }
        }
    }
}
