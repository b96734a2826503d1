//! Derivations given by generator images, as a JSON object such as
//! `{"a": "a a", "a*": "-a* a*"}`. Absent generators map to zero.

use std::collections::BTreeMap;

use leavitt::deriv::GeneratorAssignment;
use leavitt::rewrite::{Algebra, Letter};
use thiserror::Error;

use crate::expr::{parse_expression, ExprError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DerivFileError {
    #[error("not a JSON object of strings: {0}")]
    Json(String),
    #[error("key `{0}` is not a generator")]
    UnknownGenerator(String),
    #[error("key `{key}`: {source}")]
    Image { key: String, source: ExprError },
}

pub fn parse_derivation_file(
    alg: &Algebra,
    text: &str,
) -> Result<GeneratorAssignment, DerivFileError> {
    let map: BTreeMap<String, String> =
        serde_json::from_str(text).map_err(|e| DerivFileError::Json(e.to_string()))?;
    let mut asg = GeneratorAssignment::new();
    for (key, value) in map {
        let letter = match alg.letter(key.trim()) {
            Ok(Letter::Vertex(_)) if key.trim().ends_with('*') => None,
            Ok(l) => Some(l),
            Err(_) => None,
        }
        .ok_or_else(|| DerivFileError::UnknownGenerator(key.clone()))?;
        let image = parse_expression(alg, &value)
            .map_err(|source| DerivFileError::Image { key, source })?;
        asg.set(letter, image);
    }
    Ok(asg)
}
