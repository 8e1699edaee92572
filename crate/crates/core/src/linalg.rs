//! Exact dense linear algebra over the rationals.
//!
//! Ranks use fraction-free (Bareiss) elimination on integer rows; solves use
//! Gauss-Jordan elimination over `Rational` with deterministic pivoting (first
//! nonzero entry in the column).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != nrows {
                return Err(Error::DimensionMismatch("column length".into()));
            }
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
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

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.integer_rows())
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect()
            })
            .collect()
    }

    /// Some solution of `self * x = b`, free variables set to zero; `None` if
    /// the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let n = self.cols;
        let mut aug: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = gauss_jordan(&mut aug, n);
        for row in aug.iter().skip(pivots.len()) {
            if !row[n].is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![Rational::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[r][n].clone() / aug[r][c].clone();
        }
        Ok(Some(x))
    }

    /// Minimum-norm exact solution `A^T u` with `A A^T u = b`, or `None` when
    /// `A x = b` is inconsistent (b lies in the range of `A` iff it lies in
    /// the range of `A A^T`).
    pub fn min_norm_solution(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let t = self.transpose();
        let h = self.mul(&t)?;
        match h.solve(b)? {
            Some(u) => Ok(Some(t.mul_vec(&u)?)),
            None => Ok(None),
        }
    }

    /// Minimum-norm least-squares solution `A^+ b`, computed exactly.
    ///
    /// For the consistent case this is the minimum-norm exact solution. The
    /// work happens in the smaller of the two Gram matrices.
    pub fn min_norm_least_squares(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        if self.cols == 0 {
            return Ok(Vec::new());
        }
        let t = self.transpose();
        if self.cols <= self.rows {
            // x = G y with G^2 y = A^T b, G = A^T A.
            let g = t.mul(self)?;
            let g2 = g.mul(&g)?;
            let rhs = t.mul_vec(b)?;
            let y = g2
                .solve(&rhs)?
                .expect("normal equations are always consistent");
            g.mul_vec(&y)
        } else {
            // x = A^T u with H^2 u = H b, H = A A^T.
            let h = self.mul(&t)?;
            let h2 = h.mul(&h)?;
            let rhs = h.mul_vec(b)?;
            let u = h2
                .solve(&rhs)?
                .expect("normal equations are always consistent");
            t.mul_vec(&u)
        }
    }
}

/// Row-reduces `rows` in place over the first `ncols` columns; returns the
/// pivot columns in order.
fn gauss_jordan(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        let support: Vec<usize> = (c..width).filter(|&j| !rows[r][j].is_zero()).collect();
        for j in &support {
            rows[r][*j] = &rows[r][*j] * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let mut v = &pivot * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                if !prev.is_one() {
                    debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}
