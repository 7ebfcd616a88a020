//! Dense matrices and a cyclic Jacobi eigensolver, generic over the scalar.
//!
//! Jacobi is the simplest full symmetric eigensolver that delivers an
//! orthonormal eigenbasis, which is all the certificate machinery needs at
//! n <= 4000. Sweep order is fixed, so decompositions are deterministic.

use thiserror::Error;

use crate::graph::Graph;
use crate::real::{rf, ri, Real};

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("jacobi failed to converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NonConvergence { sweeps: usize, off_norm: f64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Real> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn frobenius_norm(&self) -> F {
        self.data.iter().map(|&x| x * x).sum::<F>().sqrt()
    }

    pub fn hadamard(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a * b).collect(),
        }
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// Frobenius inner product sum_{i,j} A_ij B_ij.
    pub fn inner(&self, other: &Matrix<F>) -> F {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(&a, &b)| a * b).sum()
    }

    pub fn sum_entries(&self) -> F {
        self.data.iter().copied().sum()
    }

    pub fn max_diag(&self) -> F {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).fold(F::neg_infinity(), F::max)
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Adds `scale * v v^T` in place (v must have `rows` entries).
    pub fn add_outer(&mut self, scale: F, v: &[F]) {
        assert_eq!(self.rows, v.len());
        assert_eq!(self.cols, v.len());
        for i in 0..self.rows {
            let vi = scale * v[i];
            let row = self.row_mut(i);
            for (j, &vj) in v.iter().enumerate() {
                row[j] += vi * vj;
            }
        }
    }

    pub fn matvec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }
}

/// Dense +-0/1 adjacency matrix of a graph.
pub fn adjacency_matrix<F: Real>(g: &Graph) -> Matrix<F> {
    let n = g.n();
    let mut m = Matrix::zeros(n, n);
    for u in 0..n {
        for v in g.neighbors(u) {
            m.set(u, v, F::one());
        }
    }
    m
}

/// A^2 computed combinatorially: (A^2)_{uv} = |N(u) cap N(v)|, and
/// (A^2)_{vv} = deg(v). Exact integer counts cast into the scalar.
pub fn adjacency_square<F: Real>(g: &Graph) -> Matrix<F> {
    let n = g.n();
    let mut m = Matrix::zeros(n, n);
    for u in 0..n {
        m.set(u, u, ri(g.degree(u)));
        for v in (u + 1)..n {
            let common = ri(g.common_neighbors(u, v));
            m.set(u, v, common);
            m.set(v, u, common);
        }
    }
    m
}

pub struct JacobiConfig {
    /// Convergence: off-diagonal Frobenius norm <= tol_factor * ||A||_F.
    pub tol_factor: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiConfig {
    fn default() -> Self {
        JacobiConfig { tol_factor: 1e-12, max_sweeps: 100 }
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Returns unsorted eigenvalues and the orthogonal matrix whose columns are
/// the matching eigenvectors. The input is consumed as workspace.
pub fn jacobi_eigen<F: Real>(
    mut a: Matrix<F>,
    config: &JacobiConfig,
) -> Result<(Vec<F>, Matrix<F>), LinalgError> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "jacobi requires a square matrix");
    let mut v = Matrix::identity(n);
    if n <= 1 {
        return Ok(((0..n).map(|i| a.get(i, i)).collect(), v));
    }
    let scale = a.frobenius_norm();
    let tol = rf::<F>(config.tol_factor) * scale;
    let tiny = rf::<F>(1e-300);

    for sweep in 0..config.max_sweeps {
        let mut off = F::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                off += apq * apq;
            }
        }
        off = (off + off).sqrt();
        if off <= tol || off <= tiny {
            return Ok(finish_jacobi(a, v));
        }
        let _ = sweep;

        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == F::zero() {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (rf::<F>(2.0) * apq);
                let t = {
                    let sign = if theta >= F::zero() { F::one() } else { -F::one() };
                    sign / (theta.abs() + (theta * theta + F::one()).sqrt())
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                let tau = s / (F::one() + c);

                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, F::zero());
                a.set(q, p, F::zero());
                // Rows/columns p and q of the symmetric matrix.
                for i in 0..n {
                    if i != p && i != q {
                        let aip = a.get(i, p);
                        let aiq = a.get(i, q);
                        let new_p = aip - s * (aiq + tau * aip);
                        let new_q = aiq + s * (aip - tau * aiq);
                        a.set(i, p, new_p);
                        a.set(p, i, new_p);
                        a.set(i, q, new_q);
                        a.set(q, i, new_q);
                    }
                }
                // Accumulate eigenvectors.
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip - s * (viq + tau * vip));
                    v.set(i, q, viq + s * (vip - tau * viq));
                }
            }
        }
    }

    let mut off = F::zero();
    for p in 0..n {
        for q in (p + 1)..n {
            let apq = a.get(p, q);
            off += apq * apq;
        }
    }
    let achieved = (off + off).sqrt();
    if achieved <= tol || achieved <= tiny {
        return Ok(finish_jacobi(a, v));
    }
    Err(LinalgError::NonConvergence {
        sweeps: config.max_sweeps,
        off_norm: achieved.to_f64().unwrap_or(f64::NAN),
    })
}

fn finish_jacobi<F: Real>(a: Matrix<F>, v: Matrix<F>) -> (Vec<F>, Matrix<F>) {
    let n = a.rows();
    ((0..n).map(|i| a.get(i, i)).collect(), v)
}

/// Sorts eigenpairs descending by eigenvalue (stable) and fixes each
/// eigenvector's sign so its largest-magnitude coordinate is positive.
pub fn sort_eigenpairs<F: Real>(values: Vec<F>, vectors: Matrix<F>) -> (Vec<F>, Matrix<F>) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).expect("no NaN eigenvalues").then(i.cmp(&j)));
    let sorted_values: Vec<F> = order.iter().map(|&i| values[i]).collect();
    let mut sorted_vectors = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut best_idx = 0;
        let mut best_abs = F::neg_infinity();
        for i in 0..n {
            let a = vectors.get(i, old_col).abs();
            if a > best_abs {
                best_abs = a;
                best_idx = i;
            }
        }
        let flip = vectors.get(best_idx, old_col) < F::zero();
        for i in 0..n {
            let x = vectors.get(i, old_col);
            sorted_vectors.set(i, new_col, if flip { -x } else { x });
        }
    }
    (sorted_values, sorted_vectors)
}
