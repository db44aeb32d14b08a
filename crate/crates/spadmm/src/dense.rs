//! Minimal dense matrix kernels: row-major storage, Cholesky factorization
//! and Gaussian row reduction. These back the affine projector and the LP
//! path; sizes are desk-scale (hundreds of rows), so no blocking or pivoting
//! heroics, just numerically careful loops.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::Invalid {
                    what: "matrix rows",
                    why: format!("ragged rows: {} vs {}", r.len(), ncols),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Mat { rows: nrows, cols: ncols, data })
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Invalid {
                what: "matrix data",
                why: format!("expected {} entries, got {}", rows * cols, data.len()),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// out = A v
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| crate::vecmath::dot(self.row(i), v)).collect()
    }

    /// out = A^T w
    pub fn tr_matvec(&self, w: &[f64]) -> Vec<f64> {
        debug_assert_eq!(w.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let wi = w[i];
            let row = self.row(i);
            for j in 0..self.cols {
                out[j] += wi * row[j];
            }
        }
        out
    }

    /// A A^T as a dense symmetric matrix.
    pub fn gram(&self) -> Mat {
        let m = self.rows;
        let mut g = Mat::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let v = crate::vecmath::dot(self.row(i), self.row(j));
                *g.at_mut(i, j) = v;
                *g.at_mut(j, i) = v;
            }
        }
        g
    }
}

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: Mat,
}

impl Cholesky {
    /// Returns None when the matrix is not positive definite to working
    /// precision (pivot <= tol * scale).
    pub fn new(a: &Mat) -> Option<Self> {
        assert_eq!(a.rows, a.cols);
        let n = a.rows;
        let scale = (0..n).map(|i| a.at(i, i).abs()).fold(1.0, f64::max);
        let tol = 1e-13 * scale;
        let mut l = Mat::zeros(n, n);
        for j in 0..n {
            let mut d = a.at(j, j);
            for k in 0..j {
                d -= l.at(j, k) * l.at(j, k);
            }
            if d <= tol {
                return None;
            }
            let dj = d.sqrt();
            *l.at_mut(j, j) = dj;
            for i in j + 1..n {
                let mut v = a.at(i, j);
                for k in 0..j {
                    v -= l.at(i, k) * l.at(j, k);
                }
                *l.at_mut(i, j) = v / dj;
            }
        }
        Some(Cholesky { l })
    }

    /// Solves (L L^T) x = b.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.l.rows;
        debug_assert_eq!(b.len(), n);
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.l.at(i, k) * y[k];
            }
            y[i] /= self.l.at(i, i);
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= self.l.at(k, i) * y[k];
            }
            y[i] /= self.l.at(i, i);
        }
        y
    }
}

/// Row-reduces the augmented system [A | b] with partial pivoting, dropping
/// rows that become numerically zero. The returned rows span the same affine
/// subspace and have full row rank at the given tolerance.
///
/// Errors with `EmptySet` if a zero row has a nonzero right-hand side
/// (inconsistent system).
pub fn reduce_rows(a: &Mat, b: &[f64], tol: f64) -> Result<(Mat, Vec<f64>)> {
    assert_eq!(a.rows, b.len());
    let (m, n) = (a.rows, a.cols);
    let mut work = a.clone();
    let mut rhs = b.to_vec();
    let mut rank = 0usize;
    for col in 0..n {
        if rank == m {
            break;
        }
        let mut piv = rank;
        for i in rank + 1..m {
            if work.at(i, col).abs() > work.at(piv, col).abs() {
                piv = i;
            }
        }
        if work.at(piv, col).abs() <= tol {
            continue;
        }
        if piv != rank {
            for j in 0..n {
                let t = work.at(rank, j);
                *work.at_mut(rank, j) = work.at(piv, j);
                *work.at_mut(piv, j) = t;
            }
            rhs.swap(rank, piv);
        }
        for i in rank + 1..m {
            let f = work.at(i, col) / work.at(rank, col);
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                let v = work.at(rank, j);
                *work.at_mut(i, j) -= f * v;
            }
            rhs[i] -= f * rhs[rank];
        }
        rank += 1;
    }
    for i in rank..m {
        let row_norm = crate::vecmath::norm_inf(work.row(i));
        if row_norm <= tol && rhs[i].abs() > tol.max(1e-9) {
            return Err(Error::EmptySet(format!(
                "inconsistent equality rows (0 = {:.3e} after elimination)",
                rhs[i]
            )));
        }
    }
    let mut rows = Vec::with_capacity(rank);
    for i in 0..rank {
        rows.push(work.row(i).to_vec());
    }
    let reduced = Mat::from_rows(rows).expect("reduced rows are rectangular");
    rhs.truncate(rank);
    Ok((reduced, rhs))
}
