//! Exact integer matrices with entries in {-1, 0, +1}.
//!
//! These hold tournament adjacency matrices and skew conference matrices, and
//! all of their defining identities are checked in integer arithmetic with
//! zero tolerance.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignError {
    #[error("entry {value} at ({row}, {col}) is not in {{-1, 0, +1}}")]
    InvalidEntry { row: usize, col: usize, value: i32 },
    #[error("expected {expected} entries for a {size}x{size} matrix, got {got}")]
    LengthMismatch {
        size: usize,
        expected: usize,
        got: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    size: usize,
    entries: Vec<i32>,
}

impl SignMatrix {
    pub fn new(size: usize, entries: Vec<i32>) -> Result<Self, SignError> {
        if entries.len() != size * size {
            return Err(SignError::LengthMismatch {
                size,
                expected: size * size,
                got: entries.len(),
            });
        }
        for (idx, &v) in entries.iter().enumerate() {
            if !(-1..=1).contains(&v) {
                return Err(SignError::InvalidEntry {
                    row: idx / size,
                    col: idx % size,
                    value: v,
                });
            }
        }
        Ok(SignMatrix { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.size + j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        SignMatrix { size: n, entries }
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.size;
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.size).all(|i| self.get(i, i) == 0)
    }

    /// Integer product with another sign matrix, as i64 entries.
    pub fn product(&self, rhs: &Self) -> Vec<i64> {
        let n = self.size;
        assert_eq!(n, rhs.size, "sign matrix sizes must agree");
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k] as i64;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j] as i64;
                }
            }
        }
        out
    }

    /// Exact check of A^T = -A, A e = 0, and A^2 = J - n I.
    pub fn satisfies_core_identities(&self) -> bool {
        let n = self.size;
        if !self.is_antisymmetric() || !self.has_zero_diagonal() {
            return false;
        }
        for i in 0..n {
            let row_sum: i64 = (0..n).map(|j| self.get(i, j) as i64).sum();
            if row_sum != 0 {
                return false;
            }
        }
        let sq = self.product(self);
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { 1 - n as i64 } else { 1 };
                if sq[i * n + j] != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Exact check of zero diagonal, all off-diagonal entries +-1, C^T = -C,
    /// and C C^T = (n - 1) I.
    pub fn is_skew_conference(&self) -> bool {
        let n = self.size;
        if !self.has_zero_diagonal() || !self.is_antisymmetric() {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.get(i, j) == 0 {
                    return false;
                }
            }
        }
        let prod = self.product(&self.transpose());
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { n as i64 - 1 } else { 0 };
                if prod[i * n + j] != expected {
                    return false;
                }
            }
        }
        true
    }
}
