//! Characters of GF(q) and the character sums behind the frame constructions.
//!
//! The quadratic character chi maps nonzero squares to +1, non-squares to -1,
//! and 0 to 0. Additive characters are psi_c(a) = exp(2*pi*i*Tr(c*a)/p); the
//! sum sigma(a) = sum_b psi_c(a*b^2) has modulus sqrt(q) for a != 0, which is
//! the single fact carrying the equiangularity of the quadratic-residue
//! frames. Values are computed in double precision from exact integer traces.

use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

use crate::field::{FieldElement, FiniteField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("the quadratic character is undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("element does not belong to the field")]
    FieldMismatch,
    #[error("the additive character parameter c must be nonzero")]
    TrivialCharacter,
}

fn ensure_member(field: &FiniteField, a: FieldElement) -> Result<(), CharError> {
    field
        .element(a.encoding())
        .map_err(|_| CharError::FieldMismatch)
        .and_then(|e| {
            if e == a {
                Ok(())
            } else {
                Err(CharError::FieldMismatch)
            }
        })
}

fn ensure_odd(field: &FiniteField) -> Result<(), CharError> {
    if field.p() == 2 {
        Err(CharError::EvenCharacteristic)
    } else {
        Ok(())
    }
}

/// Quadratic character chi(a) in {-1, 0, +1}, computed as a^((q-1)/2).
pub fn quadratic_character(field: &FiniteField, a: FieldElement) -> Result<i32, CharError> {
    ensure_odd(field)?;
    ensure_member(field, a)?;
    if a.is_zero() {
        return Ok(0);
    }
    let r = field.pow(a, (field.q() - 1) / 2).expect("member checked");
    if r == field.one() {
        Ok(1)
    } else {
        debug_assert_eq!(r, field.neg(field.one()).expect("one is a member"));
        Ok(-1)
    }
}

/// The (q-1)/2 nonzero quadratic residues, in ascending encoding order.
pub fn residues(field: &FiniteField) -> Result<Vec<FieldElement>, CharError> {
    ensure_odd(field)?;
    let mut seen = vec![false; field.q() as usize];
    for b in field.elements().skip(1) {
        let sq = field.mul(b, b).expect("member");
        seen[sq.encoding() as usize] = true;
    }
    Ok(field
        .elements()
        .filter(|e| seen[e.encoding() as usize])
        .collect())
}

/// Additive character psi_c(a) = exp(2*pi*i*Tr(c*a)/p).
///
/// psi_0 is identically 1; every nontrivial additive character arises from
/// some c != 0.
pub fn additive_character(
    field: &FiniteField,
    c: FieldElement,
    a: FieldElement,
) -> Result<Complex64, CharError> {
    ensure_member(field, c)?;
    ensure_member(field, a)?;
    let t = field
        .trace(field.mul(c, a).expect("members checked"))
        .expect("member");
    Ok(Complex64::from_polar(1.0, TAU * t as f64 / field.p() as f64))
}

/// sigma(a) = sum over all b in GF(q) of psi_c(a*b^2), as a literal q-term sum.
///
/// For a != 0 the modulus is sqrt(q); sigma(0) = q.
pub fn sigma(
    field: &FiniteField,
    c: FieldElement,
    a: FieldElement,
) -> Result<Complex64, CharError> {
    ensure_odd(field)?;
    ensure_member(field, c)?;
    ensure_member(field, a)?;
    if c.is_zero() {
        return Err(CharError::TrivialCharacter);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for b in field.elements() {
        let sq = field.mul(b, b).expect("member");
        let x = field.mul(a, sq).expect("member");
        total += additive_character(field, c, x)?;
    }
    Ok(total)
}

/// Gauss sum sum over a of psi_c(a) * chi(a); modulus sqrt(q) for c != 0.
pub fn gauss_sum(field: &FiniteField, c: FieldElement) -> Result<Complex64, CharError> {
    ensure_odd(field)?;
    ensure_member(field, c)?;
    if c.is_zero() {
        return Err(CharError::TrivialCharacter);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for a in field.elements().skip(1) {
        let chi = quadratic_character(field, a)? as f64;
        total += additive_character(field, c, a)? * chi;
    }
    Ok(total)
}
