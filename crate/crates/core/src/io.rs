//! JSON frame files.
//!
//! A frame file stores the synthesis matrix column by column, each entry as a
//! [re, im] pair, together with the construction tag and the parameters
//! needed to reproduce it. Serialization is deterministic and floats use the
//! shortest representation that parses back to the identical bits, so
//! write -> read -> write is byte-identical.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{ConstructionTag, FieldDescriptor, Frame, FrameError, Provenance};
use crate::linalg::ComplexMatrix;
use num_complex::Complex64;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed frame file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u32),
    #[error("vector data does not match n = {n}, d = {d}")]
    ShapeMismatch { n: usize, d: usize },
    #[error("vector entries must be finite")]
    NonFinite,
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// Optional reproduction parameters carried alongside the construction tag.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FileParameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dropped_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character_c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conference_k: Option<u32>,
}

impl FileParameters {
    fn is_empty(&self) -> bool {
        self.dropped_index.is_none() && self.character_c.is_none() && self.conference_k.is_none()
    }
}

/// On-disk frame representation, format_version 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameFile {
    pub format_version: u32,
    pub n: usize,
    pub d: usize,
    pub construction: ConstructionTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<FileParameters>,
    /// n columns of d entries, each entry [re, im].
    pub vectors: Vec<Vec<[f64; 2]>>,
}

impl FrameFile {
    pub fn from_frame(frame: &Frame) -> Self {
        let prov = frame.provenance();
        let params = FileParameters {
            dropped_index: prov.dropped_index,
            character_c: prov.character_c,
            conference_k: prov.conference_k,
        };
        let vectors = (0..frame.n())
            .map(|k| {
                frame
                    .synthesis()
                    .column(k)
                    .into_iter()
                    .map(|z| [z.re, z.im])
                    .collect()
            })
            .collect();
        FrameFile {
            format_version: FORMAT_VERSION,
            n: frame.n(),
            d: frame.d(),
            construction: prov.construction,
            field: prov.field.clone(),
            parameters: if params.is_empty() { None } else { Some(params) },
            vectors,
        }
    }

    /// Rebuilds the frame. Unit norms are not enforced here; the verifier
    /// judges the loaded vectors.
    pub fn to_frame(&self) -> Result<Frame, IoError> {
        if self.format_version != FORMAT_VERSION {
            return Err(IoError::UnsupportedVersion(self.format_version));
        }
        if self.n == 0 || self.d == 0 || self.vectors.len() != self.n {
            return Err(IoError::ShapeMismatch { n: self.n, d: self.d });
        }
        for col in &self.vectors {
            if col.len() != self.d {
                return Err(IoError::ShapeMismatch { n: self.n, d: self.d });
            }
            if col.iter().any(|e| !e[0].is_finite() || !e[1].is_finite()) {
                return Err(IoError::NonFinite);
            }
        }
        let synthesis = ComplexMatrix::from_fn(self.d, self.n, |i, j| {
            Complex64::new(self.vectors[j][i][0], self.vectors[j][i][1])
        })
        .map_err(|_| IoError::NonFinite)?;
        let mut provenance = Provenance::new(self.construction);
        provenance.field = self.field.clone();
        if let Some(params) = &self.parameters {
            provenance.dropped_index = params.dropped_index;
            provenance.character_c = params.character_c;
            provenance.conference_k = params.conference_k;
        }
        Ok(Frame::from_parts_unchecked(synthesis, provenance)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::zauner_frame;
    use crate::field::FiniteField;

    #[test]
    fn round_trip_is_byte_identical() {
        let field = FiniteField::new(7, 1).unwrap();
        let frame = zauner_frame(&field).unwrap();
        let file = FrameFile::from_frame(&frame);
        let text = file.to_json();
        let parsed = FrameFile::from_json(&text).unwrap();
        assert_eq!(parsed, file);
        assert_eq!(parsed.to_json(), text);
        let rebuilt = parsed.to_frame().unwrap();
        assert_eq!(rebuilt.synthesis(), frame.synthesis());
        assert_eq!(rebuilt.provenance(), frame.provenance());
    }

    #[test]
    fn field_descriptor_appears_in_json() {
        let field = FiniteField::new(3, 3).unwrap();
        let frame = zauner_frame(&field).unwrap();
        let text = FrameFile::from_frame(&frame).to_json();
        assert!(text.contains("\"construction\": \"zauner\""));
        assert!(text.contains("\"p\": 3"));
        assert!(text.contains("\"m\": 3"));
        assert!(text.contains("\"modulus\""));
        assert!(text.contains("\"character_c\": 1"));
    }

    #[test]
    fn rejects_bad_shapes_and_versions() {
        let field = FiniteField::new(3, 1).unwrap();
        let frame = zauner_frame(&field).unwrap();
        let mut file = FrameFile::from_frame(&frame);
        file.format_version = 2;
        assert!(matches!(
            file.to_frame().unwrap_err(),
            IoError::UnsupportedVersion(2)
        ));
        file.format_version = 1;
        file.vectors.pop();
        assert!(matches!(
            file.to_frame().unwrap_err(),
            IoError::ShapeMismatch { .. }
        ));
    }

    #[test]
    fn rejects_truncated_json() {
        let field = FiniteField::new(3, 1).unwrap();
        let frame = zauner_frame(&field).unwrap();
        let text = FrameFile::from_frame(&frame).to_json();
        let truncated = &text[..text.len() / 2];
        assert!(FrameFile::from_json(truncated).is_err());
    }
}
