use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use super::poly::{IntPolynomial, RatPoly};
use super::{common_denominator, rat_big};
use crate::error::{Error, Result};

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "super::serde_rational::vec")]
    entries: Vec<BigRational>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(d)?;
        Self::new(raw.rows, raw.cols, raw.entries).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Affine solution set `particular + span(homogeneous)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<BigRational>,
    pub homogeneous: Vec<Vec<BigRational>>,
    /// Indices of the coordinates left free by the row reduction.
    pub free_coordinates: Vec<usize>,
}

impl AffineSolution {
    pub fn is_unique(&self) -> bool {
        self.homogeneous.is_empty()
    }

    /// `particular + sum_k t_k * homogeneous[k]`.
    pub fn point(&self, params: &[BigRational]) -> Vec<BigRational> {
        let mut x = self.particular.clone();
        for (t, h) in params.iter().zip(&self.homogeneous) {
            for (xi, hi) in x.iter_mut().zip(h) {
                *xi += t * hi;
            }
        }
        x
    }
}

/// Result of asking for coefficients `x` with `sum_k x_k * targets[k] = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearCombination {
    Solved(AffineSolution),
    /// The system has no solution. `residual` is `rhs` minus its orthogonal
    /// projection onto the span of the targets (Frobenius inner product). It
    /// is orthogonal to every target and pairs nonzero with `rhs`, so it
    /// certifies infeasibility on its own.
    Infeasible { residual: RationalMatrix },
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| rat_big(BigInt::from(rows[i][j]))))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { data, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { data, ..*self })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row echelon form and rank.
    pub fn rref(&self) -> (Self, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    pub(crate) fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m.get(row, col).recip();
            for j in col..m.cols {
                let idx = row * m.cols + j;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let sub = &factor * m.get(row, j);
                    if !sub.is_zero() {
                        m.data[r * m.cols + j] -= sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (prow, &pcol) in pivots.iter().enumerate() {
                    v[pcol] = -r.get(prow, f).clone();
                }
                v
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination on the row-scaled
    /// integer matrix.
    pub fn determinant(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let l = common_denominator(self.row(i));
                scale *= &l;
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigRational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = t.div_floor(&prev);
                }
            }
            prev = m[k][k].clone();
        }
        Ok(BigRational::new(sign * &m[n - 1][n - 1], scale))
    }

    /// Characteristic polynomial `det(tI - M)`, returned as a primitive
    /// integer polynomial with positive leading coefficient (monic whenever
    /// the matrix is integral).
    pub fn char_poly(&self) -> Result<IntPolynomial> {
        Ok(IntPolynomial::from_rational(&self.char_poly_rational()?))
    }

    /// Monic characteristic polynomial over the rationals, via reduction to
    /// upper Hessenberg form.
    pub(crate) fn char_poly_rational(&self) -> Result<RatPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(p) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if p != m {
                h.swap_rows(p, m);
                h.swap_cols(p, m);
            }
            let pivot = h.get(m, m - 1).clone();
            for i in m + 1..n {
                if h.get(i, m - 1).is_zero() {
                    continue;
                }
                let u = h.get(i, m - 1) / &pivot;
                for j in 0..n {
                    let t = &u * h.get(m, j);
                    if !t.is_zero() {
                        h.data[i * n + j] -= t;
                    }
                }
                for r in 0..n {
                    let t = &u * h.get(r, i);
                    if !t.is_zero() {
                        h.data[r * n + m] += t;
                    }
                }
            }
        }
        // p_k is the characteristic polynomial of the leading k x k block.
        let mut p: Vec<RatPoly> = vec![RatPoly::one()];
        for k in 1..=n {
            let hk = k - 1;
            let mut next = p[k - 1].mul_linear(&-h.get(hk, hk).clone());
            let mut prod = BigRational::one();
            for i in (1..k).rev() {
                prod *= h.get(i, i - 1);
                if prod.is_zero() {
                    break;
                }
                let coeff = &prod * h.get(i - 1, hk);
                if !coeff.is_zero() {
                    next = next.sub(&p[i - 1].scale(&coeff));
                }
            }
            p.push(next);
        }
        Ok(p.pop().expect("non-empty"))
    }

    /// Frobenius inner product.
    pub fn frobenius(&self, other: &Self) -> Result<BigRational> {
        self.same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
    }
}

/// Finds all `x` with `sum_k x_k * targets[k] = rhs` (entrywise).
pub fn solve_linear_combination(
    targets: &[RationalMatrix],
    rhs: &RationalMatrix,
) -> Result<LinearCombination> {
    for t in targets {
        t.same_shape(rhs)?;
    }
    let m = rhs.rows * rhs.cols;
    let k = targets.len();
    let system = RationalMatrix::from_fn(m, k + 1, |i, j| {
        if j < k {
            targets[j].data[i].clone()
        } else {
            rhs.data[i].clone()
        }
    });
    let (r, pivots) = system.rref_with_pivots();
    if pivots.last() == Some(&k) {
        return Ok(LinearCombination::Infeasible {
            residual: projection_residual(targets, rhs),
        });
    }
    let mut particular = vec![BigRational::zero(); k];
    for (prow, &pcol) in pivots.iter().enumerate() {
        particular[pcol] = r.get(prow, k).clone();
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    let homogeneous = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); k];
            v[f] = BigRational::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.get(prow, f).clone();
            }
            v
        })
        .collect();
    Ok(LinearCombination::Solved(AffineSolution {
        particular,
        homogeneous,
        free_coordinates: free,
    }))
}

/// `rhs` minus its orthogonal projection onto `span(targets)`.
fn projection_residual(targets: &[RationalMatrix], rhs: &RationalMatrix) -> RationalMatrix {
    let mut basis: Vec<(RationalMatrix, BigRational)> = Vec::new();
    for t in targets {
        let mut v = t.clone();
        for (b, bb) in &basis {
            let c = v.frobenius(b).expect("same shape") / bb;
            if !c.is_zero() {
                v = v.sub(&b.scale(&c)).expect("same shape");
            }
        }
        let vv = v.frobenius(&v).expect("same shape");
        if !vv.is_zero() {
            basis.push((v, vv));
        }
    }
    let mut res = rhs.clone();
    for (b, bb) in &basis {
        let c = res.frobenius(b).expect("same shape") / bb;
        if !c.is_zero() {
            res = res.sub(&b.scale(&c)).expect("same shape");
        }
    }
    res
}

/// Sign of a rational as -1, 0 or 1.
pub(crate) fn signum(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
