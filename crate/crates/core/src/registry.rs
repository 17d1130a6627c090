//! Runtime registry of frame constructions.
//!
//! Each construction family sits behind the [`Construction`] trait and is
//! selected by its tag string, so the CLI and the catalog drive every family
//! through one interface. `n` in a [`BuildRequest`] is always the number of
//! vectors in the produced frame.

use crate::constructions::{
    conference_etf, conference_skew, drop_one_canonical, extract_core, frame_from_gram,
    gram_lower, gram_upper, paley_adjacency, zauner_frame_with_character, ConstructionError,
    MAX_CONFERENCE_EXP,
};
use crate::field::FiniteField;
use crate::frame::{ConstructionTag, Frame, Provenance};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("{0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Parameters for one frame build. Unset fields take construction-specific
/// defaults; constructions ignore fields they do not use.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildRequest {
    /// Number of vectors in the requested frame.
    pub n: Option<u64>,
    /// Explicit field characteristic; overrides `n`-based field inference.
    pub p: Option<u64>,
    /// Extension degree, defaulting to 1 when `p` is given.
    pub m: Option<u32>,
    /// Conference matrix exponent (order 2^k).
    pub k: Option<u32>,
    /// Vector to remove for drop-one constructions (default 0).
    pub drop_index: Option<usize>,
    /// Additive character parameter (default 1).
    pub character_c: Option<u64>,
}

impl BuildRequest {
    pub fn for_n(n: u64) -> Self {
        BuildRequest {
            n: Some(n),
            ..Default::default()
        }
    }

    pub fn for_k(k: u32) -> Self {
        BuildRequest {
            k: Some(k),
            ..Default::default()
        }
    }
}

/// A frame construction selectable by name at runtime.
pub trait Construction: Sync {
    fn tag(&self) -> ConstructionTag;

    fn description(&self) -> &'static str;

    fn build(&self, req: &BuildRequest) -> Result<Frame, BuildError>;

    /// Build requests for every instance this family contributes to the
    /// catalog, bounded by the number of vectors. Families outside the
    /// catalog return nothing.
    fn catalog_entries(&self, max_n: u64) -> Vec<BuildRequest>;
}

/// Decomposes x as p^m by trial division; None when x is not a prime power.
pub fn prime_power(x: u64) -> Option<(u64, u32)> {
    if x < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= x {
        if x % p == 0 {
            let mut rest = x;
            let mut m = 0u32;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            return if rest == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    Some((x, 1))
}

fn field_from_request(req: &BuildRequest, q_from_n: Option<u64>) -> Result<FiniteField, BuildError> {
    let (p, m) = if let Some(p) = req.p {
        (p, req.m.unwrap_or(1))
    } else if let Some(q) = q_from_n {
        prime_power(q).ok_or_else(|| not_a_prime_power(q))?
    } else {
        return Err(BuildError::InvalidParameters(
            "pass --n, or --p with optional --m, to identify the field".into(),
        ));
    };
    FiniteField::new(p, m).map_err(|e| BuildError::InvalidParameters(e.to_string()))
}

fn not_a_prime_power(q: u64) -> BuildError {
    let mut msg = format!("{q} is not a prime power");
    if q >= 3 && (q + 1).is_power_of_two() {
        msg.push_str("; use --construction conference-upper or conference-lower");
    }
    BuildError::InvalidParameters(msg)
}

fn paley_field(req: &BuildRequest) -> Result<FiniteField, BuildError> {
    let field = field_from_request(req, req.n)?;
    let q = field.q();
    if q % 2 == 1 && q % 4 != 3 {
        return Err(BuildError::InvalidParameters(format!(
            "q = {q} is a prime power but {q} = 1 (mod 4); the Paley tournament needs q = 3 (mod 4). \
             The zauner construction covers q = 1 (mod 4) with n = q + 1 vectors."
        )));
    }
    Ok(field)
}

fn conference_k(req: &BuildRequest) -> Result<u32, BuildError> {
    if let Some(k) = req.k {
        return Ok(k);
    }
    if let Some(n) = req.n {
        if n >= 3 && (n + 1).is_power_of_two() {
            return Ok((n + 1).trailing_zeros());
        }
        return Err(BuildError::InvalidParameters(format!(
            "{n} is not of the form 2^k - 1; pass --k or a matching --n"
        )));
    }
    Err(BuildError::InvalidParameters(
        "pass --k, or --n of the form 2^k - 1".into(),
    ))
}

fn odd_prime_powers(max: u64) -> Vec<u64> {
    (3..=max)
        .filter(|&q| q % 2 == 1 && prime_power(q).is_some())
        .collect()
}

struct PaleyUpper;

impl Construction for PaleyUpper {
    fn tag(&self) -> ConstructionTag {
        ConstructionTag::PaleyUpper
    }

    fn description(&self) -> &'static str {
        "(q, (q+1)/2) frame from the Paley tournament on GF(q), q = 3 (mod 4)"
    }

    fn build(&self, req: &BuildRequest) -> Result<Frame, BuildError> {
        let field = paley_field(req)?;
        let a = paley_adjacency(&field)?;
        let g = gram_upper(&a)?;
        let d = (field.q() as usize + 1) / 2;
        let provenance = Provenance::new(self.tag()).with_field(&field);
        Ok(frame_from_gram(&g, d, provenance)?)
    }

    fn catalog_entries(&self, max_n: u64) -> Vec<BuildRequest> {
        odd_prime_powers(max_n)
            .into_iter()
            .filter(|q| q % 4 == 3)
            .map(BuildRequest::for_n)
            .collect()
    }
}

struct PaleyLower;

impl Construction for PaleyLower {
    fn tag(&self) -> ConstructionTag {
        ConstructionTag::PaleyLower
    }

    fn description(&self) -> &'static str {
        "(q, (q-1)/2) frame from the Paley tournament on GF(q), q = 3 (mod 4)"
    }

    fn build(&self, req: &BuildRequest) -> Result<Frame, BuildError> {
        let field = paley_field(req)?;
        let a = paley_adjacency(&field)?;
        let g = gram_lower(&a)?;
        let d = (field.q() as usize - 1) / 2;
        let provenance = Provenance::new(self.tag()).with_field(&field);
        Ok(frame_from_gram(&g, d, provenance)?)
    }

    fn catalog_entries(&self, max_n: u64) -> Vec<BuildRequest> {
        PaleyUpper.catalog_entries(max_n)
    }
}

struct ConferenceUpper;

impl Construction for ConferenceUpper {
    fn tag(&self) -> ConstructionTag {
        ConstructionTag::ConferenceUpper
    }

    fn description(&self) -> &'static str {
        "(2^k - 1, 2^(k-1)) frame from the skew conference matrix core"
    }

    fn build(&self, req: &BuildRequest) -> Result<Frame, BuildError> {
        let k = conference_k(req)?;
        let core = extract_core(&conference_skew(k)?)?;
        let g = gram_upper(&core)?;
        let d = 1usize << (k - 1);
        let provenance = Provenance::new(self.tag()).with_conference_k(k);
        Ok(frame_from_gram(&g, d, provenance)?)
    }

    fn catalog_entries(&self, max_n: u64) -> Vec<BuildRequest> {
        (2..=MAX_CONFERENCE_EXP)
            .filter(|&k| (1u64 << k) - 1 <= max_n)
            .map(BuildRequest::for_k)
            .collect()
    }
}

struct ConferenceLower;

impl Construction for ConferenceLower {
    fn tag(&self) -> ConstructionTag {
        ConstructionTag::ConferenceLower
    }

    fn description(&self) -> &'static str {
        "(2^k - 1, 2^(k-1) - 1) frame from the skew conference matrix core"
    }

    fn build(&self, req: &BuildRequest) -> Result<Frame, BuildError> {
        let k = conference_k(req)?;
        let core = extract_core(&conference_skew(k)?)?;
        let g = gram_lower(&core)?;
        let d = (1usize << (k - 1)) - 1;
        let provenance = Provenance::new(self.tag()).with_conference_k(k);
        Ok(frame_from_gram(&g, d, provenance)?)
    }

    fn catalog_entries(&self, max_n: u64) -> Vec<BuildRequest> {
        ConferenceUpper.catalog_entries(max_n)
    }
}

struct Zauner;

impl Construction for Zauner {
    fn tag(&self) -> ConstructionTag {
        ConstructionTag::Zauner
    }

    fn description(&self) -> &'static str {
        "(q + 1, (q+1)/2) quadratic-residue frame over GF(q), q odd"
    }

    fn build(&self, req: &BuildRequest) -> Result<Frame, BuildError> {
        let q_from_n = match req.n {
            Some(n) if n >= 4 => Some(n - 1),
            Some(n) => {
                return Err(BuildError::InvalidParameters(format!(
                    "a zauner frame has n = q + 1 >= 4 vectors, got n = {n}"
                )))
            }
            None => None,
        };
        let field = field_from_request(req, q_from_n)?;
        let c = field
            .element(req.character_c.unwrap_or(1))
            .map_err(|e| BuildError::InvalidParameters(e.to_string()))?;
        Ok(zauner_frame_with_character(&field, c)?)
    }

    fn catalog_entries(&self, max_n: u64) -> Vec<BuildRequest> {
        odd_prime_powers(max_n)
            .into_iter()
            .map(|q| BuildRequest::for_n(q + 1))
            .collect()
    }
}

struct DropOneCanonical;

impl Construction for DropOneCanonical {
    fn tag(&self) -> ConstructionTag {
        ConstructionTag::DropOneCanonical
    }

    fn description(&self) -> &'static str {
        "(q, (q+1)/2) canonical tight frame of a quadratic-residue frame with one vector removed"
    }

    fn build(&self, req: &BuildRequest) -> Result<Frame, BuildError> {
        let field = field_from_request(req, req.n)?;
        let c = field
            .element(req.character_c.unwrap_or(1))
            .map_err(|e| BuildError::InvalidParameters(e.to_string()))?;
        let source = zauner_frame_with_character(&field, c)?;
        let index = req.drop_index.unwrap_or(0);
        if index >= source.n() {
            return Err(BuildError::InvalidParameters(format!(
                "drop index {index} out of range for {} vectors",
                source.n()
            )));
        }
        Ok(drop_one_canonical(&source, index)?)
    }

    fn catalog_entries(&self, _max_n: u64) -> Vec<BuildRequest> {
        Vec::new()
    }
}

struct ConferenceEtf;

impl Construction for ConferenceEtf {
    fn tag(&self) -> ConstructionTag {
        ConstructionTag::ConferenceEtf
    }

    fn description(&self) -> &'static str {
        "(2^k, 2^(k-1)) frame whose Gram matrix is I + iC/sqrt(2^k - 1)"
    }

    fn build(&self, req: &BuildRequest) -> Result<Frame, BuildError> {
        let k = if let Some(k) = req.k {
            k
        } else if let Some(n) = req.n {
            if n >= 4 && n.is_power_of_two() {
                n.trailing_zeros()
            } else {
                return Err(BuildError::InvalidParameters(format!(
                    "{n} is not a power of two >= 4; pass --k or a matching --n"
                )));
            }
        } else {
            return Err(BuildError::InvalidParameters(
                "pass --k, or --n = 2^k".into(),
            ));
        };
        Ok(conference_etf(&conference_skew(k)?)?)
    }

    fn catalog_entries(&self, _max_n: u64) -> Vec<BuildRequest> {
        Vec::new()
    }
}

static REGISTRY: [&(dyn Construction + Sync); 7] = [
    &PaleyUpper,
    &PaleyLower,
    &ConferenceUpper,
    &ConferenceLower,
    &Zauner,
    &DropOneCanonical,
    &ConferenceEtf,
];

/// All registered constructions, in tag order.
pub fn all() -> &'static [&'static (dyn Construction + Sync)] {
    &REGISTRY
}

/// Finds a construction by its tag string.
pub fn lookup(name: &str) -> Option<&'static (dyn Construction + Sync)> {
    let tag = ConstructionTag::parse(name)?;
    REGISTRY.iter().copied().find(|c| c.tag() == tag)
}
