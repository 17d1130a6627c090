//! Frames: d x n synthesis matrices whose columns are the frame vectors.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FiniteField;
use crate::linalg::ComplexMatrix;

/// Unit-norm tolerance enforced on constructed frames.
pub const UNIT_NORM_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("frame dimension d = {d} exceeds the number of vectors n = {n}")]
    DimensionOrder { d: usize, n: usize },
    #[error("column {column} has norm {norm}, expected 1")]
    NotUnitNorm { column: usize, norm: f64 },
}

/// Which construction produced a frame. The string forms double as the CLI
/// and file-format tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionTag {
    PaleyUpper,
    PaleyLower,
    ConferenceUpper,
    ConferenceLower,
    Zauner,
    DropOneCanonical,
    ConferenceEtf,
}

impl ConstructionTag {
    pub const ALL: [ConstructionTag; 7] = [
        ConstructionTag::PaleyUpper,
        ConstructionTag::PaleyLower,
        ConstructionTag::ConferenceUpper,
        ConstructionTag::ConferenceLower,
        ConstructionTag::Zauner,
        ConstructionTag::DropOneCanonical,
        ConstructionTag::ConferenceEtf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionTag::PaleyUpper => "paley-upper",
            ConstructionTag::PaleyLower => "paley-lower",
            ConstructionTag::ConferenceUpper => "conference-upper",
            ConstructionTag::ConferenceLower => "conference-lower",
            ConstructionTag::Zauner => "zauner",
            ConstructionTag::DropOneCanonical => "drop-one-canonical",
            ConstructionTag::ConferenceEtf => "conference-etf",
        }
    }

    pub fn parse(name: &str) -> Option<ConstructionTag> {
        Self::ALL.into_iter().find(|t| t.as_str() == name)
    }
}

impl std::fmt::Display for ConstructionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Serializable description of the field a construction was built over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
}

impl FieldDescriptor {
    pub fn of(field: &FiniteField) -> Self {
        FieldDescriptor {
            p: field.p(),
            m: field.m(),
            modulus: field.modulus().to_vec(),
        }
    }
}

/// Construction tag plus the parameters needed to reproduce a frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: ConstructionTag,
    pub field: Option<FieldDescriptor>,
    pub dropped_index: Option<usize>,
    pub character_c: Option<u64>,
    pub conference_k: Option<u32>,
}

impl Provenance {
    pub fn new(construction: ConstructionTag) -> Self {
        Provenance {
            construction,
            field: None,
            dropped_index: None,
            character_c: None,
            conference_k: None,
        }
    }

    pub fn with_field(mut self, field: &FiniteField) -> Self {
        self.field = Some(FieldDescriptor::of(field));
        self
    }

    pub fn with_conference_k(mut self, k: u32) -> Self {
        self.conference_k = Some(k);
        self
    }

    pub fn with_character_c(mut self, c: u64) -> Self {
        self.character_c = Some(c);
        self
    }

    pub fn with_dropped_index(mut self, index: usize) -> Self {
        self.dropped_index = Some(index);
        self
    }

    pub fn describe(&self) -> String {
        let mut s = self.construction.to_string();
        if let Some(fd) = &self.field {
            if fd.m == 1 {
                s.push_str(&format!(" over GF({})", fd.p));
            } else {
                s.push_str(&format!(" over GF({}^{})", fd.p, fd.m));
            }
        }
        if let Some(k) = self.conference_k {
            s.push_str(&format!(" k={k}"));
        }
        if let Some(i) = self.dropped_index {
            s.push_str(&format!(" dropped={i}"));
        }
        s
    }
}

/// A set of n unit vectors in C^d, stored as the columns of a d x n
/// synthesis matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    synthesis: ComplexMatrix,
    provenance: Provenance,
}

impl Frame {
    /// Builds a frame, requiring d <= n and unit-norm columns within
    /// [`UNIT_NORM_TOL`].
    pub fn new(synthesis: ComplexMatrix, provenance: Provenance) -> Result<Self, FrameError> {
        let f = Self::from_parts_unchecked(synthesis, provenance)?;
        for (k, norm) in f.column_norms().into_iter().enumerate() {
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(FrameError::NotUnitNorm { column: k, norm });
            }
        }
        Ok(f)
    }

    /// Builds a frame without the unit-norm check. Used when loading files
    /// whose contents the verifier is about to judge.
    pub fn from_parts_unchecked(
        synthesis: ComplexMatrix,
        provenance: Provenance,
    ) -> Result<Self, FrameError> {
        if synthesis.rows() > synthesis.cols() {
            return Err(FrameError::DimensionOrder {
                d: synthesis.rows(),
                n: synthesis.cols(),
            });
        }
        Ok(Frame {
            synthesis,
            provenance,
        })
    }

    /// Number of vectors.
    pub fn n(&self) -> usize {
        self.synthesis.cols()
    }

    /// Ambient dimension.
    pub fn d(&self) -> usize {
        self.synthesis.rows()
    }

    pub fn synthesis(&self) -> &ComplexMatrix {
        &self.synthesis
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Gram matrix T^* T of pairwise inner products.
    pub fn gram(&self) -> ComplexMatrix {
        self.synthesis
            .adjoint()
            .multiply(&self.synthesis)
            .expect("conforming by construction")
    }

    /// Frame operator T T^*.
    pub fn frame_operator(&self) -> ComplexMatrix {
        self.synthesis
            .multiply(&self.synthesis.adjoint())
            .expect("conforming by construction")
    }

    pub fn column_norms(&self) -> Vec<f64> {
        (0..self.n())
            .map(|k| {
                self.synthesis
                    .column(k)
                    .iter()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        format!("{} (n={}, d={})", self.provenance.describe(), self.n(), self.d())
    }
}
