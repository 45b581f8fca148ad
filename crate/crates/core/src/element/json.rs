//! The element interchange format `{"bp": [["x", "y"], ...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{CircleElement, ElementError};
use crate::dyadic::{Dyadic, DyadicParseError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed element JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad coordinate: {0}")]
    Coordinate(#[from] DyadicParseError),
    #[error("invalid element: {0}")]
    Invalid(#[from] ElementError),
}

/// Wire form of an element. Serialization emits the normalized breakpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub bp: Vec<(String, String)>,
}

impl ElementJson {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("string pairs always serialize")
    }

    pub fn into_element(self) -> Result<CircleElement, JsonError> {
        let bp = self
            .bp
            .iter()
            .map(|(x, y)| Ok((x.parse::<Dyadic>()?, y.parse::<Dyadic>()?)))
            .collect::<Result<Vec<_>, DyadicParseError>>()?;
        Ok(CircleElement::new(bp)?)
    }
}

impl From<&CircleElement> for ElementJson {
    fn from(g: &CircleElement) -> Self {
        ElementJson {
            bp: g
                .breakpoints()
                .iter()
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .collect(),
        }
    }
}

impl CircleElement {
    pub fn to_json(&self) -> String {
        ElementJson::from(self).to_json_string()
    }

    pub fn from_json(s: &str) -> Result<CircleElement, JsonError> {
        serde_json::from_str::<ElementJson>(s)?.into_element()
    }
}
