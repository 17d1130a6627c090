//! Dense complex matrices and a self-contained Hermitian eigensolver.
//!
//! The eigensolver is a two-sided complex Jacobi iteration with cyclic pivot
//! order. The Gram matrices produced elsewhere in this crate have exactly two
//! distinct eigenvalues, and Jacobi keeps eigenvector orthogonality tight on
//! such degenerate spectra.

pub use num_complex::Complex64;
use thiserror::Error;

/// Convergence threshold for Jacobi sweeps, relative to the Frobenius norm.
pub const DEFAULT_JACOBI_TOL: f64 = 1e-13;
/// Maximum allowed entrywise deviation from M = M* on eigensolver input.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Relative eigenvalue cutoff for pseudo-inverse square roots.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix dimensions must be positive")]
    EmptyMatrix,
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("{rows}x{cols} matrix is not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |M - M*| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi iteration did not converge within the sweep cap")]
    NoConvergence,
    #[error("matrix has a negative eigenvalue {value:.6e}")]
    NegativeEigenvalue { value: f64 },
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                left_rows: rows,
                left_cols: cols,
                right_rows: data.len(),
                right_cols: 1,
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_fn<F>(rows: usize, cols: usize, f: F) -> Result<Self, LinalgError>
    where
        F: Fn(usize, usize) -> Complex64,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    fn same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conjugate(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Self) -> Result<f64, LinalgError> {
        Ok(self.sub(other)?.frobenius_norm())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, LinalgError> {
        self.same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Max entrywise deviation from M = M*.
    pub fn hermitian_deviation(&self) -> Result<f64, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                dev = dev.max(d);
            }
        }
        Ok(dev)
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    /// Copy with column `j` removed.
    pub fn without_column(&self, j: usize) -> Self {
        let mut data = Vec::with_capacity(self.rows * (self.cols - 1));
        for i in 0..self.rows {
            for k in 0..self.cols {
                if k != j {
                    data.push(self.data[i * self.cols + k]);
                }
            }
        }
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols - 1,
            data,
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i * self.cols + i])
            .sum()
    }
}

/// Eigenvalues (real, descending) and a unitary matrix of eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Hermitian eigendecomposition with the default convergence threshold.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition, LinalgError> {
    hermitian_eig_with_tol(m, DEFAULT_JACOBI_TOL)
}

/// Cyclic complex Jacobi. Sweeps until every off-diagonal magnitude is at
/// most `tol` times the Frobenius norm of the input; eigenvalues are sorted
/// descending with index-stable ties, so identical inputs give identical
/// output.
pub fn hermitian_eig_with_tol(
    m: &ComplexMatrix,
    tol: f64,
) -> Result<EigenDecomposition, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let deviation = m.hermitian_deviation()?;
    if deviation > HERMITIAN_TOL {
        return Err(LinalgError::NotHermitian { deviation });
    }
    let n = m.rows;
    let mut a = m.data.clone();
    let mut v = ComplexMatrix::identity(n).data;

    // Symmetrize exactly so rounding in the input cannot drift.
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = (a[i * n + j] + a[j * n + i].conj()) * 0.5;
            a[i * n + j] = avg;
            a[j * n + i] = avg.conj();
        }
        a[i * n + i] = Complex64::new(a[i * n + i].re, 0.0);
    }

    let fro = m.frobenius_norm();
    let threshold = tol * fro;
    let sweep_cap = 100 * n * n;
    let mut converged = fro == 0.0 || n == 1;

    for _ in 0..sweep_cap {
        if converged {
            break;
        }
        let mut off_max: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off_max = off_max.max(a[p * n + q].norm());
            }
        }
        if off_max <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let phase = apq / r;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let u = phase.conj() * s;

                // A <- A * U
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * u;
                    a[k * n + q] = -akp * u.conj() + akq * c;
                }
                // A <- U^* * A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c + aqk * u.conj();
                    a[q * n + k] = -apk * u + aqk * c;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
                // V <- V * U
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c + vkq * u;
                    v[k * n + q] = -vkp * u.conj() + vkq * c;
                }
            }
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence);
    }

    let raw: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[j].partial_cmp(&raw[i]).expect("finite").then(i.cmp(&j)));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (newcol, &oldcol) in order.iter().enumerate() {
        for row in 0..n {
            vectors.data[row * n + newcol] = v[row * n + oldcol];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        vectors,
    })
}

/// Pseudo-inverse square root of a Hermitian positive semidefinite matrix:
/// V diag(lambda^(-1/2) where lambda > rank_tol * lambda_max, else 0) V*.
pub fn inv_sqrt_psd(s: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix, LinalgError> {
    let deviation = s.hermitian_deviation()?;
    if deviation > 1e-10 {
        return Err(LinalgError::NotHermitian { deviation });
    }
    let eig = hermitian_eig(s)?;
    let lambda_max = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    if let Some(&lambda_min) = eig.eigenvalues.last() {
        if lambda_min < -1e-9 * lambda_max.max(1.0) {
            return Err(LinalgError::NegativeEigenvalue { value: lambda_min });
        }
    }
    let cutoff = rank_tol * lambda_max;
    let n = s.rows;
    // V * diag(f(lambda)) * V^*
    let mut scaled = eig.vectors.clone();
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let f = if lambda > cutoff { 1.0 / lambda.sqrt() } else { 0.0 };
        for i in 0..n {
            let v = scaled.get(i, j);
            scaled.set(i, j, v * f);
        }
    }
    scaled.multiply(&eig.vectors.adjoint())
}

/// Number of eigenvalues above `rank_tol` times the largest one.
pub fn psd_rank(eig: &EigenDecomposition, rank_tol: f64) -> usize {
    let lambda_max = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let cutoff = rank_tol * lambda_max;
    eig.eigenvalues.iter().filter(|&&l| l > cutoff).count()
}
