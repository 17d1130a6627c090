//! Numerical checks: equiangularity, tightness, Gram spectra, and Gram
//! equivalence up to conjugation.
//!
//! Checks never throw on mathematical failure; a failed property is recorded
//! in the report so that experiments can treat negative outcomes as data.
//! Errors are reserved for malformed inputs. Every check recomputes its
//! quantities from the synthesis matrix rather than trusting stored Grams.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::Frame;
use crate::linalg::{hermitian_eig, ComplexMatrix, LinalgError};

/// Default tolerance for equiangularity and tightness checks.
pub const DEFAULT_CHECK_TOL: f64 = 1e-9;
/// Default tolerance for Gram spectrum checks.
pub const DEFAULT_SPECTRUM_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("invalid frame dimensions (n = {n}, d = {d})")]
    InvalidDimensions { n: u64, d: u64 },
    #[error("gram matrices have different shapes: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// One measured property: pass iff |measured - target| <= tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub target: f64,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(name: &str, target: f64, measured: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            target,
            measured,
            tolerance,
            pass: (measured - target).abs() <= tolerance,
        }
    }
}

/// Verdict of comparing two Gram matrices entrywise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GramVerdict {
    Equal,
    ConjugateEqual,
    Different,
}

impl std::fmt::Display for GramVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GramVerdict::Equal => "Equal",
            GramVerdict::ConjugateEqual => "ConjugateEqual",
            GramVerdict::Different => "Different",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramComparison {
    pub verdict: GramVerdict,
    /// Max entrywise deviation from G1 = G2.
    pub deviation_direct: f64,
    /// Max entrywise deviation from G1 = conj(G2).
    pub deviation_conjugated: f64,
}

/// Report schema version emitted in JSON output.
pub const REPORT_FORMAT_VERSION: u32 = 1;

/// Structured pass/fail record; the verdict is the conjunction of the
/// per-check passes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub format_version: u32,
    pub subject: String,
    pub checks: Vec<CheckResult>,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<GramComparison>,
}

impl VerificationReport {
    pub fn from_checks(subject: String, checks: Vec<CheckResult>) -> Self {
        let verdict = checks.iter().all(|c| c.pass);
        VerificationReport {
            format_version: REPORT_FORMAT_VERSION,
            subject,
            checks,
            verdict,
            comparison: None,
        }
    }

    pub fn with_comparison(mut self, comparison: GramComparison) -> Self {
        self.comparison = Some(comparison);
        self
    }

    /// Concatenates the checks of several reports on the same subject.
    pub fn merge(subject: String, reports: Vec<VerificationReport>) -> Self {
        let mut checks = Vec::new();
        let mut comparison = None;
        for r in reports {
            checks.extend(r.checks);
            comparison = comparison.or(r.comparison);
        }
        let verdict = checks.iter().all(|c| c.pass);
        VerificationReport {
            format_version: REPORT_FORMAT_VERSION,
            subject,
            checks,
            verdict,
            comparison,
        }
    }
}

/// The squared-overlap target (n - d) / (d (n - 1)); 0 when n = d.
pub fn welch_target(n: u64, d: u64) -> Result<f64, VerifyError> {
    if n < 2 || d < 1 || d > n {
        return Err(VerifyError::InvalidDimensions { n, d });
    }
    if n == d {
        return Ok(0.0);
    }
    Ok((n - d) as f64 / (d as f64 * (n - 1) as f64))
}

/// Checks that all pairwise squared overlaps equal the Welch target, and that
/// every column has unit norm.
pub fn check_equiangular(frame: &Frame, tol: f64) -> VerificationReport {
    let n = frame.n();
    let d = frame.d();
    let target = if n == d {
        0.0
    } else {
        (n - d) as f64 / (d as f64 * (n as f64 - 1.0) * 1.0)
    };
    let gram = frame.gram();

    // Overlap farthest from the target over all pairs j < k.
    let mut worst = target;
    let mut worst_dev = 0.0;
    for j in 0..n {
        for k in (j + 1)..n {
            let overlap_sq = gram.get(j, k).norm_sqr();
            let dev = (overlap_sq - target).abs();
            if dev >= worst_dev {
                worst_dev = dev;
                worst = overlap_sq;
            }
        }
    }

    let worst_norm = frame
        .column_norms()
        .into_iter()
        .max_by(|a, b| {
            (a - 1.0)
                .abs()
                .partial_cmp(&(b - 1.0).abs())
                .expect("finite")
        })
        .unwrap_or(1.0);

    VerificationReport::from_checks(
        frame.describe(),
        vec![
            CheckResult::new("equiangularity", target, worst, tol),
            CheckResult::new("unit-norm", 1.0, worst_norm, tol),
        ],
    )
}

/// Checks the frame operator against (n/d) I.
pub fn check_tight(frame: &Frame, tol: f64) -> VerificationReport {
    let n = frame.n();
    let d = frame.d();
    let ratio = n as f64 / d as f64;
    let s = frame.frame_operator();
    let mut dev: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let expected = if i == j { ratio } else { 0.0 };
            dev = dev.max((s.get(i, j) - num_complex::Complex64::new(expected, 0.0)).norm());
        }
    }
    VerificationReport::from_checks(
        frame.describe(),
        vec![CheckResult::new("tightness", 0.0, dev, tol)],
    )
}

/// Equiangularity, unit norms, and tightness in one report.
pub fn check_frame(frame: &Frame, tol: f64) -> VerificationReport {
    VerificationReport::merge(
        frame.describe(),
        vec![check_equiangular(frame, tol), check_tight(frame, tol)],
    )
}

/// Compares the spectrum of a Hermitian Gram matrix against n/d with
/// multiplicity d and 0 with multiplicity n - d.
pub fn check_gram_spectrum(
    gram: &ComplexMatrix,
    d: usize,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let eig = hermitian_eig(gram)?;
    let n = gram.rows();
    let ratio = n as f64 / d as f64;
    let mut dev: f64 = 0.0;
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let expected = if i < d { ratio } else { 0.0 };
        dev = dev.max((lambda - expected).abs());
    }
    Ok(VerificationReport::from_checks(
        format!("gram spectrum (n={n}, d={d})"),
        vec![CheckResult::new("gram-spectrum", 0.0, dev, tol)],
    ))
}

/// Entrywise comparison of two Gram matrices, allowing global conjugation.
pub fn gram_equal_up_to_conjugation(
    g1: &ComplexMatrix,
    g2: &ComplexMatrix,
    tol: f64,
) -> Result<GramComparison, VerifyError> {
    if g1.rows() != g2.rows() || g1.cols() != g2.cols() {
        return Err(VerifyError::DimensionMismatch {
            left_rows: g1.rows(),
            left_cols: g1.cols(),
            right_rows: g2.rows(),
            right_cols: g2.cols(),
        });
    }
    let deviation_direct = g1.max_abs_diff(g2).expect("shapes checked");
    let deviation_conjugated = g1.max_abs_diff(&g2.conjugate()).expect("shapes checked");
    let verdict = if deviation_direct <= tol {
        GramVerdict::Equal
    } else if deviation_conjugated <= tol {
        GramVerdict::ConjugateEqual
    } else {
        GramVerdict::Different
    };
    Ok(GramComparison {
        verdict,
        deviation_direct,
        deviation_conjugated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{ConstructionTag, Provenance};
    use num_complex::Complex64;

    fn orthonormal(n: usize) -> Frame {
        Frame::new(
            ComplexMatrix::identity(n),
            Provenance::new(ConstructionTag::Zauner),
        )
        .unwrap()
    }

    #[test]
    fn welch_values() {
        assert_eq!(welch_target(7, 4).unwrap(), 0.125);
        assert!((welch_target(8, 4).unwrap() - 1.0 / 7.0).abs() < 1e-16);
        assert_eq!(welch_target(3, 1).unwrap(), 1.0);
        assert_eq!(welch_target(5, 5).unwrap(), 0.0);
        assert!(welch_target(1, 1).is_err());
        assert!(welch_target(3, 4).is_err());
        assert!(welch_target(3, 0).is_err());
    }

    #[test]
    fn welch_closed_forms_by_rational_arithmetic() {
        // welch(2d-1, d) = 1/(2d) and welch(2d, d) = 1/(2d-1), checked by
        // integer cross-multiplication.
        for d in 1u64..=64 {
            let n = 2 * d - 1;
            if n >= 2 {
                // (n-d) * 2d == d * (n-1)
                assert_eq!((n - d) * 2 * d, d * (n - 1));
            }
            let n = 2 * d;
            // (n-d) * (2d-1) == d * (n-1)
            assert_eq!((n - d) * (2 * d - 1), d * (n - 1));
        }
    }

    #[test]
    fn orthonormal_basis_passes_both_checks() {
        let f = orthonormal(4);
        let eq = check_equiangular(&f, DEFAULT_CHECK_TOL);
        assert!(eq.verdict, "{eq:?}");
        let tight = check_tight(&f, DEFAULT_CHECK_TOL);
        assert!(tight.verdict, "{tight:?}");
    }

    #[test]
    fn tightness_of_smallest_residue_frame() {
        // (4, 2): the frame operator is 2I.
        let field = crate::field::FiniteField::new(3, 1).unwrap();
        let frame = crate::constructions::zauner_frame(&field).unwrap();
        let report = check_tight(&frame, DEFAULT_CHECK_TOL);
        assert!(report.verdict);
        assert!(report.checks[0].measured <= 1e-9);
    }

    #[test]
    fn corrupted_frame_fails_with_named_check() {
        // Two copies of e_1: overlap 1 against target 0.
        let m = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let f = Frame::from_parts_unchecked(m, Provenance::new(ConstructionTag::Zauner)).unwrap();
        let report = check_equiangular(&f, DEFAULT_CHECK_TOL);
        assert!(!report.verdict);
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        assert!(failing.contains(&"equiangularity"));
    }

    #[test]
    fn spectrum_of_scaled_projector_passes() {
        // (n/d) * diag(1, 1, 0) is its own spectral model at n=3, d=2.
        let ratio = 1.5;
        let g = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j && i < 2 {
                Complex64::new(ratio, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap();
        let report = check_gram_spectrum(&g, 2, DEFAULT_SPECTRUM_TOL).unwrap();
        assert!(report.verdict);
    }

    #[test]
    fn spectrum_check_fails_on_identity_with_small_d() {
        let report = check_gram_spectrum(&ComplexMatrix::identity(4), 2, DEFAULT_SPECTRUM_TOL)
            .unwrap();
        assert!(!report.verdict);
    }

    #[test]
    fn gram_comparison_verdicts() {
        let g = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.25, if i < j { 0.5 } else { -0.5 })
            }
        })
        .unwrap();
        let same = gram_equal_up_to_conjugation(&g, &g, 1e-12).unwrap();
        assert_eq!(same.verdict, GramVerdict::Equal);

        let conj = gram_equal_up_to_conjugation(&g, &g.conjugate(), 1e-12).unwrap();
        assert_eq!(conj.verdict, GramVerdict::ConjugateEqual);

        let other = g.scale(Complex64::new(2.0, 0.0));
        let diff = gram_equal_up_to_conjugation(&g, &other, 1e-12).unwrap();
        assert_eq!(diff.verdict, GramVerdict::Different);
        assert!(diff.deviation_direct > 0.1);

        assert!(matches!(
            gram_equal_up_to_conjugation(&g, &ComplexMatrix::identity(3), 1e-12).unwrap_err(),
            VerifyError::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn report_serializes_with_verdict_names() {
        let report = VerificationReport::from_checks(
            "test".into(),
            vec![CheckResult::new("x", 0.0, 0.0, 1e-9)],
        )
        .with_comparison(GramComparison {
            verdict: GramVerdict::ConjugateEqual,
            deviation_direct: 1.0,
            deviation_conjugated: 0.0,
        });
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"ConjugateEqual\""));
        assert!(json.contains("\"verdict\":true"));
    }
}
