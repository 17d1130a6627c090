//! Frame constructions: Paley tournament adjacency matrices, the 2^k skew
//! conference recursion, the two Gram-matrix routes, frame extraction from a
//! Gram matrix, quadratic-residue (Zauner) frames, and drop-one canonical
//! tight frames.
//!
//! A tournament core is an n x n matrix A with zero diagonal, off-diagonal
//! entries +-1, A^T = -A, and A^2 = J - nI. Such an A exists for every prime
//! power n = 3 (mod 4) (the Paley tournament) and for every n = 2^k - 1 (the
//! lower-right block of the recursive skew conference matrix). Either way,
//! (J + nI + i*sqrt(n)*A) / (n+1) is the Gram matrix of an (n, (n+1)/2)
//! equiangular tight frame, and (nI - J + i*sqrt(n)*A) / (n-1) of an
//! (n, (n-1)/2) one.

use num_complex::Complex64;
use thiserror::Error;

use crate::characters::{additive_character, quadratic_character, residues, CharError};
use crate::field::{FieldElement, FieldError, FiniteField};
use crate::frame::{ConstructionTag, Frame, FrameError, Provenance};
use crate::linalg::{
    hermitian_eig, inv_sqrt_psd, psd_rank, ComplexMatrix, LinalgError, DEFAULT_RANK_TOL,
};
use crate::sign::{SignError, SignMatrix};
use crate::verify::{
    check_equiangular, check_tight, gram_equal_up_to_conjugation, VerificationReport,
    DEFAULT_CHECK_TOL,
};

/// Largest supported skew conference exponent: sizes up to 2^8.
pub const MAX_CONFERENCE_EXP: u32 = 8;
/// Constructions are rejected below this many vectors.
pub const MIN_FRAME_SIZE: usize = 3;
/// Tolerance on the spectrum test a Gram matrix must pass before frame
/// extraction.
pub const SPECTRUM_CHECK_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("q = {q} is not 3 (mod 4); the Paley tournament is only skew there")]
    WrongResidueClass { q: u64 },
    #[error("requested size {size} exceeds the bound {bound}")]
    OrderTooLarge { size: u64, bound: u64 },
    #[error("constructions need at least {MIN_FRAME_SIZE} vectors, got {n}")]
    TooSmall { n: usize },
    #[error("matrix does not have the (0, -e^T; e, A) border of a normalized skew conference matrix")]
    BadBorder,
    #[error("core identities A^T = -A, A e = 0, A^2 = J - nI failed")]
    CoreIdentityFailed,
    #[error("spectrum does not match n/d with multiplicity d and 0 elsewhere (max deviation {max_deviation:.3e})")]
    SpectrumMismatch { max_deviation: f64 },
    #[error("dropping the vector left rank {actual}, need {expected}")]
    RankDeficient { expected: usize, actual: usize },
    #[error("index {index} out of range for a frame of {n} vectors")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix is not an exact skew conference matrix")]
    NotConference,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Character(#[from] CharError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Sign(#[from] SignError),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// Adjacency matrix of the Paley tournament on GF(q): A[j][k] = chi(a_j - a_k)
/// in the canonical element order. Requires q = 3 (mod 4), which makes A
/// skew rather than symmetric.
pub fn paley_adjacency(field: &FiniteField) -> Result<SignMatrix, ConstructionError> {
    let q = field.q();
    if q % 4 != 3 {
        return Err(ConstructionError::WrongResidueClass { q });
    }
    let chi: Vec<i32> = field
        .elements()
        .map(|a| quadratic_character(field, a))
        .collect::<Result<_, _>>()?;
    let elements: Vec<FieldElement> = field.elements().collect();
    let n = q as usize;
    let mut entries = vec![0i32; n * n];
    for j in 0..n {
        for k in 0..n {
            let diff = field.sub(elements[j], elements[k])?;
            entries[j * n + k] = chi[diff.encoding() as usize];
        }
    }
    Ok(SignMatrix::new(n, entries)?)
}

/// Skew conference matrix of order 2^k from the doubling recursion
/// C_2 = (0 -1; 1 0), C_2m = (C_m, C_m - I; C_m + I, -C_m).
pub fn conference_skew(k: u32) -> Result<SignMatrix, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::TooSmall { n: 1 });
    }
    if k > MAX_CONFERENCE_EXP {
        return Err(ConstructionError::OrderTooLarge {
            size: 1u64 << k,
            bound: 1u64 << MAX_CONFERENCE_EXP,
        });
    }
    let mut c: Vec<i32> = vec![0, -1, 1, 0];
    let mut m = 2usize;
    for _ in 1..k {
        let n = 2 * m;
        let mut next = vec![0i32; n * n];
        for i in 0..m {
            for j in 0..m {
                let v = c[i * m + j];
                let eye = i32::from(i == j);
                next[i * n + j] = v;
                next[i * n + (j + m)] = v - eye;
                next[(i + m) * n + j] = v + eye;
                next[(i + m) * n + (j + m)] = -v;
            }
        }
        c = next;
        m = n;
    }
    Ok(SignMatrix::new(m, c)?)
}

/// Strips the first row and column of a normalized skew conference matrix,
/// after verifying the border is (0, -e^T) over (e, A). The returned core is
/// checked against the exact identities before returning.
pub fn extract_core(conference: &SignMatrix) -> Result<SignMatrix, ConstructionError> {
    let full = conference.size();
    if full < 2 {
        return Err(ConstructionError::BadBorder);
    }
    if conference.get(0, 0) != 0 {
        return Err(ConstructionError::BadBorder);
    }
    for i in 1..full {
        if conference.get(0, i) != -1 || conference.get(i, 0) != 1 {
            return Err(ConstructionError::BadBorder);
        }
    }
    let n = full - 1;
    let mut entries = vec![0i32; n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = conference.get(i + 1, j + 1);
        }
    }
    let core = SignMatrix::new(n, entries)?;
    if !core.satisfies_core_identities() {
        return Err(ConstructionError::CoreIdentityFailed);
    }
    Ok(core)
}

fn require_core(a: &SignMatrix) -> Result<usize, ConstructionError> {
    let n = a.size();
    if n < MIN_FRAME_SIZE {
        return Err(ConstructionError::TooSmall { n });
    }
    if !a.satisfies_core_identities() {
        return Err(ConstructionError::CoreIdentityFailed);
    }
    Ok(n)
}

/// Gram matrix (J + nI + i*sqrt(n)*A) / 2d with d = (n+1)/2. Unit diagonal,
/// spectrum n/d with multiplicity d and 0 with multiplicity n - d.
pub fn gram_upper(a: &SignMatrix) -> Result<ComplexMatrix, ConstructionError> {
    let n = require_core(a)?;
    let scale = 1.0 / (n as f64 + 1.0);
    let root = (n as f64).sqrt();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        let re = if i == j { n as f64 + 1.0 } else { 1.0 };
        let im = root * a.get(i, j) as f64;
        Complex64::new(re * scale, im * scale)
    })?)
}

/// Gram matrix (nI - J + i*sqrt(n)*A) / 2(d-1) with d - 1 = (n-1)/2. Unit
/// diagonal, spectrum n/(d-1) with multiplicity d - 1 and 0 with
/// multiplicity d.
pub fn gram_lower(a: &SignMatrix) -> Result<ComplexMatrix, ConstructionError> {
    let n = require_core(a)?;
    let scale = 1.0 / (n as f64 - 1.0);
    let root = (n as f64).sqrt();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        let re = if i == j { n as f64 - 1.0 } else { -1.0 };
        let im = root * a.get(i, j) as f64;
        Complex64::new(re * scale, im * scale)
    })?)
}

/// Extracts an (n, d) frame from a Hermitian Gram matrix whose spectrum is
/// n/d with multiplicity d and 0 elsewhere. The synthesis matrix is
/// T = sqrt(n/d) V_d^*, so T^* T reproduces the Gram matrix.
pub fn frame_from_gram(
    gram: &ComplexMatrix,
    d: usize,
    provenance: Provenance,
) -> Result<Frame, ConstructionError> {
    let n = gram.rows();
    let eig = hermitian_eig(gram)?;
    let ratio = n as f64 / d as f64;
    let mut max_deviation: f64 = 0.0;
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let expected = if i < d { ratio } else { 0.0 };
        max_deviation = max_deviation.max((lambda - expected).abs());
    }
    if max_deviation > SPECTRUM_CHECK_TOL {
        return Err(ConstructionError::SpectrumMismatch { max_deviation });
    }
    let amp = ratio.sqrt();
    let synthesis = ComplexMatrix::from_fn(d, n, |l, k| eig.vectors.get(k, l).conj() * amp)?;
    debug_assert!(
        synthesis
            .adjoint()
            .multiply(&synthesis)
            .expect("conforming")
            .max_abs_diff(gram)
            .expect("same shape")
            <= 1e-9,
        "extracted frame must reproduce its Gram matrix"
    );
    Ok(Frame::new(synthesis, provenance)?)
}

/// The (q+1, (q+1)/2) quadratic-residue frame. Column 0 is e_1; column
/// 1 + j has first entry 1/sqrt(q) and entries sqrt(2)*psi_c(b_l * a_j) /
/// sqrt(q) over the nonzero quadratic residues b_l.
pub fn zauner_frame(field: &FiniteField) -> Result<Frame, ConstructionError> {
    zauner_frame_with_character(field, field.one())
}

/// [`zauner_frame`] with an explicit nontrivial additive character psi_c.
pub fn zauner_frame_with_character(
    field: &FiniteField,
    c: FieldElement,
) -> Result<Frame, ConstructionError> {
    if field.p() == 2 {
        return Err(ConstructionError::Character(CharError::EvenCharacteristic));
    }
    if c.is_zero() {
        return Err(ConstructionError::Character(CharError::TrivialCharacter));
    }
    let q = field.q();
    let n = (q + 1) as usize;
    let d = n / 2;
    let res = residues(field)?;
    let elements: Vec<FieldElement> = field.elements().collect();
    let inv_root_q = 1.0 / (q as f64).sqrt();
    let amp = 2f64.sqrt() * inv_root_q;

    let mut t = ComplexMatrix::zeros(d, n);
    t.set(0, 0, Complex64::new(1.0, 0.0));
    for (j, &a) in elements.iter().enumerate() {
        t.set(0, j + 1, Complex64::new(inv_root_q, 0.0));
        for (l, &b) in res.iter().enumerate() {
            let arg = field.mul(b, a)?;
            let psi = additive_character(field, c, arg)?;
            t.set(l + 1, j + 1, psi * amp);
        }
    }
    let provenance = Provenance::new(ConstructionTag::Zauner)
        .with_field(field)
        .with_character_c(c.encoding());
    Ok(Frame::new(t, provenance)?)
}

/// Frame operator T' T'^* of the frame with column `index` removed.
pub fn dropped_frame_operator(
    frame: &Frame,
    index: usize,
) -> Result<ComplexMatrix, ConstructionError> {
    if index >= frame.n() {
        return Err(ConstructionError::IndexOutOfRange {
            index,
            n: frame.n(),
        });
    }
    let reduced = frame.synthesis().without_column(index);
    Ok(reduced.multiply(&reduced.adjoint())?)
}

/// Removes one vector and forms the canonical tight frame of the remainder:
/// columns S^(-1/2) f_k, renormalized to unit length, where S is the frame
/// operator of the reduced set. Fails if the removal destroys spanning.
pub fn drop_one_canonical(frame: &Frame, index: usize) -> Result<Frame, ConstructionError> {
    let d = frame.d();
    let s = dropped_frame_operator(frame, index)?;
    let eig = hermitian_eig(&s)?;
    let rank = psd_rank(&eig, DEFAULT_RANK_TOL);
    if rank < d {
        return Err(ConstructionError::RankDeficient {
            expected: d,
            actual: rank,
        });
    }
    let s_inv_sqrt = inv_sqrt_psd(&s, DEFAULT_RANK_TOL)?;
    let reduced = frame.synthesis().without_column(index);
    let mut mapped = s_inv_sqrt.multiply(&reduced)?;
    for k in 0..mapped.cols() {
        let norm: f64 = (0..mapped.rows())
            .map(|i| mapped.get(i, k).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm < 1e-12 {
            return Err(ConstructionError::RankDeficient {
                expected: d,
                actual: rank,
            });
        }
        for i in 0..mapped.rows() {
            let v = mapped.get(i, k);
            mapped.set(i, k, v / norm);
        }
    }
    let source = frame.provenance();
    let mut provenance = Provenance::new(ConstructionTag::DropOneCanonical)
        .with_dropped_index(index);
    provenance.field = source.field.clone();
    provenance.character_c = source.character_c;
    provenance.conference_k = source.conference_k;
    Ok(Frame::new(mapped, provenance)?)
}

/// The (n, n/2) frame whose Gram matrix is I + i C / sqrt(n-1) for an exact
/// skew conference matrix C of order n = 2^k.
pub fn conference_etf(conference: &SignMatrix) -> Result<Frame, ConstructionError> {
    let n = conference.size();
    if n < 4 {
        return Err(ConstructionError::TooSmall { n });
    }
    if !n.is_power_of_two() || !conference.is_skew_conference() {
        return Err(ConstructionError::NotConference);
    }
    let scale = 1.0 / ((n - 1) as f64).sqrt();
    let gram = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, conference.get(i, j) as f64 * scale)
        }
    })?;
    let provenance =
        Provenance::new(ConstructionTag::ConferenceEtf).with_conference_k(n.trailing_zeros());
    frame_from_gram(&gram, n / 2, provenance)
}

/// Drop-one experiment on the conference-matrix route with the default
/// tolerance.
pub fn conjecture_experiment(k: u32) -> Result<VerificationReport, ConstructionError> {
    conjecture_experiment_with_tol(k, DEFAULT_CHECK_TOL)
}

/// Builds the (2^k, 2^(k-1)) conference ETF, removes its first vector, forms
/// the canonical tight frame, and compares the resulting Gram matrix against
/// (J + nI + i*sqrt(n)*A) / 2d built from the conference core A at
/// n = 2^k - 1. Equiangularity and tightness of the derived set gate the
/// report verdict; the Gram-form comparison is recorded as data.
pub fn conjecture_experiment_with_tol(
    k: u32,
    tol: f64,
) -> Result<VerificationReport, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::TooSmall {
            n: (1usize << k).saturating_sub(1),
        });
    }
    let conference = conference_skew(k)?;
    let etf = conference_etf(&conference)?;
    let dropped = drop_one_canonical(&etf, 0)?;

    let derived_gram = dropped.gram();
    let core = extract_core(&conference)?;
    let reference_gram = gram_upper(&core)?;
    let comparison = gram_equal_up_to_conjugation(&derived_gram, &reference_gram, tol)
        .expect("same dimensions by construction");

    let subject = format!(
        "conference drop-one experiment k={k} (n={}, d={})",
        dropped.n(),
        dropped.d()
    );
    Ok(VerificationReport::merge(
        subject,
        vec![
            check_equiangular(&dropped, tol),
            check_tight(&dropped, tol),
        ],
    )
    .with_comparison(comparison))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{check_frame, GramVerdict};

    fn gf(p: u64, m: u32) -> FiniteField {
        FiniteField::new(p, m).unwrap()
    }

    #[test]
    fn paley_gf3_matrix() {
        let a = paley_adjacency(&gf(3, 1)).unwrap();
        let expected = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.get(i, j), expected[i][j]);
            }
        }
    }

    #[test]
    fn paley_identities_exact() {
        for (p, m) in [(3u64, 1u32), (7, 1), (11, 1), (19, 1), (23, 1), (3, 3)] {
            let a = paley_adjacency(&gf(p, m)).unwrap();
            assert!(a.satisfies_core_identities(), "q = {}", p.pow(m));
        }
    }

    #[test]
    fn paley_rejects_wrong_residue_class() {
        assert!(matches!(
            paley_adjacency(&gf(5, 1)).unwrap_err(),
            ConstructionError::WrongResidueClass { q: 5 }
        ));
        assert!(matches!(
            paley_adjacency(&gf(3, 2)).unwrap_err(),
            ConstructionError::WrongResidueClass { q: 9 }
        ));
        assert!(matches!(
            paley_adjacency(&gf(2, 3)).unwrap_err(),
            ConstructionError::WrongResidueClass { q: 8 }
        ));
    }

    #[test]
    fn conference_seed_and_first_doubling() {
        let c2 = conference_skew(1).unwrap();
        assert_eq!(
            (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| c2.get(i, j)).collect::<Vec<_>>(),
            vec![0, -1, 1, 0]
        );
        let c4 = conference_skew(2).unwrap();
        let expected = [
            [0, -1, -1, -1],
            [1, 0, 1, -1],
            [1, -1, 0, 1],
            [1, 1, -1, 0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(c4.get(i, j), expected[i][j]);
            }
        }
    }

    #[test]
    fn conference_identity_exact_up_to_k7() {
        for k in 1..=7 {
            let c = conference_skew(k).unwrap();
            assert!(c.is_skew_conference(), "k = {k}");
        }
    }

    #[test]
    fn conference_size_bound() {
        assert!(matches!(
            conference_skew(MAX_CONFERENCE_EXP + 1).unwrap_err(),
            ConstructionError::OrderTooLarge { .. }
        ));
    }

    #[test]
    fn extract_core_of_c4() {
        let core = extract_core(&conference_skew(2).unwrap()).unwrap();
        let expected = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(core.get(i, j), expected[i][j]);
            }
        }
    }

    #[test]
    fn cores_satisfy_identities_up_to_k7() {
        for k in 2..=7 {
            let core = extract_core(&conference_skew(k).unwrap()).unwrap();
            assert!(core.satisfies_core_identities(), "k = {k}");
        }
    }

    #[test]
    fn core_at_k4_covers_non_prime_power_15() {
        let core = extract_core(&conference_skew(4).unwrap()).unwrap();
        assert_eq!(core.size(), 15);
        // A^2 = J - 15I, already covered by the identity check.
        assert!(core.satisfies_core_identities());
    }

    #[test]
    fn extract_core_rejects_bad_border() {
        let eye = SignMatrix::new(3, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]).unwrap();
        assert!(matches!(
            extract_core(&eye).unwrap_err(),
            ConstructionError::BadBorder
        ));
    }

    #[test]
    fn gram_upper_gf3_entry() {
        let a = paley_adjacency(&gf(3, 1)).unwrap();
        let g = gram_upper(&a).unwrap();
        // A[0][1] = -1, so G[0][1] = (1 - i*sqrt(3)) / 4.
        let expected = Complex64::new(0.25, -3f64.sqrt() / 4.0);
        assert!((g.get(0, 1) - expected).norm() < 1e-15);
        assert!((g.get(0, 1).norm_sqr() - 0.25).abs() < 1e-15);
        for i in 0..3 {
            assert_eq!(g.get(i, i), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn gram_upper_spectrum_n7() {
        let a = paley_adjacency(&gf(7, 1)).unwrap();
        let g = gram_upper(&a).unwrap();
        let eig = hermitian_eig(&g).unwrap();
        for i in 0..4 {
            assert!((eig.eigenvalues[i] - 7.0 / 4.0).abs() < 1e-10);
        }
        for i in 4..7 {
            assert!(eig.eigenvalues[i].abs() < 1e-10);
        }
    }

    #[test]
    fn gram_lower_spectrum_and_overlap_n7() {
        let a = paley_adjacency(&gf(7, 1)).unwrap();
        let g = gram_lower(&a).unwrap();
        // Off-diagonal magnitude^2 = 2/9 = (7-3)/(3*6).
        assert!((g.get(0, 1).norm_sqr() - 2.0 / 9.0).abs() < 1e-14);
        let eig = hermitian_eig(&g).unwrap();
        for i in 0..3 {
            assert!((eig.eigenvalues[i] - 7.0 / 3.0).abs() < 1e-10);
        }
        for i in 3..7 {
            assert!(eig.eigenvalues[i].abs() < 1e-10);
        }
    }

    #[test]
    fn gram_lower_rank_one_at_n3() {
        let a = paley_adjacency(&gf(3, 1)).unwrap();
        let g = gram_lower(&a).unwrap();
        let eig = hermitian_eig(&g).unwrap();
        assert!((eig.eigenvalues[0] - 3.0).abs() < 1e-12);
        assert!(eig.eigenvalues[1].abs() < 1e-12);
        assert!(eig.eigenvalues[2].abs() < 1e-12);
    }

    #[test]
    fn gram_rejects_broken_core() {
        let sym = SignMatrix::new(3, vec![0, 1, 1, 1, 0, 1, 1, 1, 0]).unwrap();
        assert!(matches!(
            gram_upper(&sym).unwrap_err(),
            ConstructionError::CoreIdentityFailed
        ));
    }

    #[test]
    fn frame_from_identity_gram() {
        let f = frame_from_gram(
            &ComplexMatrix::identity(4),
            4,
            Provenance::new(ConstructionTag::Zauner),
        )
        .unwrap();
        let report = check_frame(&f, DEFAULT_CHECK_TOL);
        assert!(report.verdict, "{report:?}");
    }

    #[test]
    fn frame_from_gram_paley7_overlaps() {
        let a = paley_adjacency(&gf(7, 1)).unwrap();
        let g = gram_upper(&a).unwrap();
        let f = frame_from_gram(&g, 4, Provenance::new(ConstructionTag::PaleyUpper)).unwrap();
        assert_eq!((f.n(), f.d()), (7, 4));
        let gram = f.gram();
        for j in 0..7 {
            for k in (j + 1)..7 {
                assert!((gram.get(j, k).norm_sqr() - 0.125).abs() < 1e-10);
            }
        }
        // Round trip against the source Gram matrix.
        assert!(gram.max_abs_diff(&g).unwrap() < 1e-9);
    }

    #[test]
    fn frame_from_gram_rejects_wrong_spectrum() {
        let g = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                Complex64::new((3 - i) as f64 - 1.0, 0.0) // diag(2, 1, 0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap();
        assert!(matches!(
            frame_from_gram(&g, 2, Provenance::new(ConstructionTag::Zauner)).unwrap_err(),
            ConstructionError::SpectrumMismatch { .. }
        ));
    }

    #[test]
    fn zauner_gf3_explicit_matrix() {
        let f = gf(3, 1);
        let frame = zauner_frame(&f).unwrap();
        assert_eq!((frame.n(), frame.d()), (4, 2));
        let t = frame.synthesis();
        let s3 = 3f64.sqrt();
        let s2 = 2f64.sqrt();
        let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        assert!((t.get(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((t.get(1, 0)).norm() < 1e-15);
        for j in 0..3 {
            assert!((t.get(0, j + 1) - Complex64::new(1.0 / s3, 0.0)).norm() < 1e-15);
            let expected = omega.powu(j as u32) * (s2 / s3);
            assert!((t.get(1, j + 1) - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn zauner_overlaps() {
        // q = 7: all 28 pairs at 1/7. q = 5 exercises q = 1 (mod 4).
        for (p, m, q) in [(7u64, 1u32, 7.0), (5, 1, 5.0), (3, 2, 9.0)] {
            let frame = zauner_frame(&gf(p, m)).unwrap();
            let gram = frame.gram();
            let n = frame.n();
            for j in 0..n {
                for k in (j + 1)..n {
                    assert!(
                        (gram.get(j, k).norm_sqr() - 1.0 / q).abs() < 1e-10,
                        "pair ({j}, {k}) off target at q = {q}"
                    );
                }
            }
        }
    }

    #[test]
    fn zauner_rejects_characteristic_two() {
        assert!(matches!(
            zauner_frame(&gf(2, 2)).unwrap_err(),
            ConstructionError::Character(CharError::EvenCharacteristic)
        ));
    }

    #[test]
    fn drop_one_zauner_gf7_frame_operator_and_gram() {
        let frame = zauner_frame(&gf(7, 1)).unwrap();
        let s = dropped_frame_operator(&frame, 0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i != j {
                    0.0
                } else if i == 0 {
                    1.0
                } else {
                    2.0
                };
                assert!((s.get(i, j) - Complex64::new(expected, 0.0)).norm() < 1e-10);
            }
        }
        let dropped = drop_one_canonical(&frame, 0).unwrap();
        assert_eq!((dropped.n(), dropped.d()), (7, 4));
        let gram = dropped.gram();
        for j in 0..7 {
            for k in (j + 1)..7 {
                assert!((gram.get(j, k).norm_sqr() - 0.125).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn drop_one_matches_paley_gram_up_to_conjugation() {
        for (p, m) in [(3u64, 1u32), (7, 1), (3, 3)] {
            let field = gf(p, m);
            let dropped = drop_one_canonical(&zauner_frame(&field).unwrap(), 0).unwrap();
            let reference = gram_upper(&paley_adjacency(&field).unwrap()).unwrap();
            let cmp =
                gram_equal_up_to_conjugation(&dropped.gram(), &reference, 1e-9).unwrap();
            assert_ne!(cmp.verdict, GramVerdict::Different, "q = {}", field.q());
        }
    }

    #[test]
    fn drop_from_orthonormal_basis_is_rank_deficient() {
        let basis = frame_from_gram(
            &ComplexMatrix::identity(3),
            3,
            Provenance::new(ConstructionTag::Zauner),
        )
        .unwrap();
        assert!(matches!(
            drop_one_canonical(&basis, 0).unwrap_err(),
            ConstructionError::RankDeficient { expected: 3, actual: 2 }
        ));
    }

    #[test]
    fn drop_index_out_of_range() {
        let frame = zauner_frame(&gf(3, 1)).unwrap();
        assert!(matches!(
            drop_one_canonical(&frame, 4).unwrap_err(),
            ConstructionError::IndexOutOfRange { index: 4, n: 4 }
        ));
    }

    #[test]
    fn drop_one_nonzero_index_still_unit_norm() {
        let frame = zauner_frame(&gf(7, 1)).unwrap();
        let dropped = drop_one_canonical(&frame, 3).unwrap();
        for norm in dropped.column_norms() {
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn conference_etf_small_orders() {
        for (k, overlap) in [(2u32, 1.0 / 3.0), (4, 1.0 / 15.0)] {
            let c = conference_skew(k).unwrap();
            let frame = conference_etf(&c).unwrap();
            let n = 1usize << k;
            assert_eq!((frame.n(), frame.d()), (n, n / 2));
            let gram = frame.gram();
            for j in 0..n {
                for i in (j + 1)..n {
                    assert!((gram.get(j, i).norm_sqr() - overlap).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn conference_etf_rejects_symmetric_input() {
        let sym = SignMatrix::new(4, vec![
            0, 1, 1, 1,
            1, 0, 1, 1,
            1, 1, 0, 1,
            1, 1, 1, 0,
        ])
        .unwrap();
        assert!(matches!(
            conference_etf(&sym).unwrap_err(),
            ConstructionError::NotConference
        ));
    }

    #[test]
    fn experiment_small_orders() {
        let r2 = conjecture_experiment(2).unwrap();
        assert!(r2.verdict, "{r2:?}");
        let eq = r2.checks.iter().find(|c| c.name == "equiangularity").unwrap();
        assert!((eq.target - 0.25).abs() < 1e-15);

        let r4 = conjecture_experiment(4).unwrap();
        assert!(r4.verdict, "{r4:?}");

        let r3 = conjecture_experiment(3).unwrap();
        let cmp = r3.comparison.expect("experiment records a comparison");
        assert!(matches!(
            cmp.verdict,
            GramVerdict::Equal | GramVerdict::ConjugateEqual | GramVerdict::Different
        ));
    }

    #[test]
    fn experiment_rejects_k_below_two() {
        assert!(conjecture_experiment(1).is_err());
    }

    #[test]
    fn gram_route_round_trip() {
        for k in [2u32, 3, 5] {
            let core = extract_core(&conference_skew(k).unwrap()).unwrap();
            let n = core.size();
            let g = gram_upper(&core).unwrap();
            let f = frame_from_gram(&g, (n + 1) / 2, Provenance::new(ConstructionTag::ConferenceUpper))
                .unwrap();
            assert!(f.gram().max_abs_diff(&g).unwrap() < 1e-9, "k = {k}");
        }
    }
}
