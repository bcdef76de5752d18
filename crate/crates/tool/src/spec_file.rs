//! JSON form of a [`GraphSpec`]. All integers are decimal strings, since
//! prime-family periods run to thousands of bits.
//!
//! ```json
//! {"name": "...", "layers": [
//!   {"label": "E_0", "period": "1", "templates": [{"offset": "0", "length": "1"}]}
//! ]}
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use omega_core::{GraphSpec, LayerSpec};
use serde::{Deserialize, Serialize};

use crate::error::ToolError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub name: String,
    pub layers: Vec<LayerDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerDoc {
    pub label: String,
    pub period: String,
    pub templates: Vec<TemplateDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateDoc {
    pub offset: String,
    pub length: String,
}

fn parse_int(field: &str, s: &str) -> Result<BigInt, ToolError> {
    BigInt::from_str(s).map_err(|_| ToolError::BadInteger { field: field.to_string(), value: s.to_string() })
}

impl From<&GraphSpec> for SpecDoc {
    fn from(spec: &GraphSpec) -> Self {
        SpecDoc {
            name: spec.name().to_string(),
            layers: spec
                .layers()
                .iter()
                .map(|l| LayerDoc {
                    label: l.label().to_string(),
                    period: l.period().to_string(),
                    templates: l
                        .templates()
                        .iter()
                        .map(|t| TemplateDoc {
                            offset: t.offset().to_string(),
                            length: t.length().to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&SpecDoc> for GraphSpec {
    type Error = ToolError;

    fn try_from(doc: &SpecDoc) -> Result<Self, ToolError> {
        let mut layers = Vec::with_capacity(doc.layers.len());
        for l in &doc.layers {
            let period = parse_int("period", &l.period)?;
            let templates = l
                .templates
                .iter()
                .map(|t| Ok((parse_int("offset", &t.offset)?, parse_int("length", &t.length)?)))
                .collect::<Result<Vec<_>, ToolError>>()?;
            layers.push(LayerSpec::new(l.label.clone(), period, templates)?);
        }
        Ok(GraphSpec::new(doc.name.clone(), layers)?)
    }
}

pub fn to_json(spec: &GraphSpec) -> String {
    serde_json::to_string_pretty(&SpecDoc::from(spec)).expect("spec documents always serialize")
}

pub fn from_json(text: &str) -> Result<GraphSpec, ToolError> {
    let doc: SpecDoc = serde_json::from_str(text)?;
    GraphSpec::try_from(&doc)
}
