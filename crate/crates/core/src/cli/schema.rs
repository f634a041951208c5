//! On-disk formats, version 1.
//!
//! A diagram file:
//!
//! ```json
//! {
//!   "version": 1,
//!   "components": [
//!     {"id": "K", "coefficient": "-5/3",
//!      "knot": {"front": ["L",1,"R",1]},
//!      "linking": {"J": 1}},
//!     {"id": "J", "coefficient": "inf", "knot": {"tb": -2, "rot": 1, "type": "unknot"}}
//!   ],
//!   "options": {"policy": "all-negative", "enumerate": false}
//! }
//! ```
//!
//! A knot is one of `{"front": [...], "reversed": bool}`, `{"tb", "rot",
//! "type"}` or `{"link_component": k}`; the last refers to component `k` of
//! the top-level `"link_front": {"word": [...], "reversed": [...]}`.
//!
//! A result file is `{"version": 1, "diagram": <PmOneDiagram>}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::fronts::{FrontWord, LegendrianKnotData, OrientedFront};
use crate::surgery::{ContactDiagram, DiagramComponent, KnotSpec, PmOneDiagram, Policy};

use super::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub policy: Policy,
    #[serde(default)]
    pub enumerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub front: Option<FrontWord>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reversed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link_component: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tb: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rot: Option<i64>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub knot_type: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub id: String,
    pub coefficient: Rational,
    pub knot: KnotEntry,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub linking: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub version: u32,
    pub components: Vec<ComponentEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link_front: Option<OrientedFront>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub version: u32,
    pub diagram: PmOneDiagram,
}

impl ResultFile {
    pub fn new(diagram: PmOneDiagram) -> Self {
        ResultFile {
            version: FORMAT_VERSION,
            diagram,
        }
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, source: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        source_name: source.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn check_version(version: u32) -> Result<(), CliError> {
    if version != FORMAT_VERSION {
        return Err(CliError::UnsupportedVersion(version));
    }
    Ok(())
}

fn knot_spec(id: &str, k: &KnotEntry) -> Result<KnotSpec, CliError> {
    let shape = |msg: &str| CliError::Schema {
        id: id.to_string(),
        message: msg.to_string(),
    };
    let has_abstract = k.tb.is_some() || k.rot.is_some() || k.knot_type.is_some();
    match (&k.front, k.link_component, has_abstract) {
        (Some(word), None, false) => {
            let mut front = OrientedFront::new(word.clone()).map_err(|source| CliError::Front {
                id: id.to_string(),
                source,
            })?;
            if k.reversed {
                for c in 0..front.component_count() {
                    front.reverse(c).expect("component in range");
                }
            }
            Ok(KnotSpec::Front(front))
        }
        (None, Some(index), false) if !k.reversed => Ok(KnotSpec::LinkComponent(index)),
        (None, None, true) if !k.reversed => {
            let (Some(tb), Some(rot), Some(knot_type)) = (k.tb, k.rot, k.knot_type.clone()) else {
                return Err(shape("abstract knots need tb, rot and type"));
            };
            Ok(KnotSpec::Abstract(LegendrianKnotData {
                tb,
                rot,
                knot_type,
            }))
        }
        (None, None, false) => Err(shape(
            "knot needs one of front, link_component or tb/rot/type",
        )),
        _ if k.reversed => Err(shape("reversed applies to front knots only")),
        _ => Err(shape("knot mixes front, link_component and tb/rot/type")),
    }
}

fn knot_entry(spec: &KnotSpec) -> KnotEntry {
    match spec {
        KnotSpec::Front(front) => KnotEntry {
            front: Some(front.word().clone()),
            reversed: front.orientation().first().copied().unwrap_or(false),
            ..KnotEntry::default()
        },
        KnotSpec::LinkComponent(index) => KnotEntry {
            link_component: Some(*index),
            ..KnotEntry::default()
        },
        KnotSpec::Abstract(data) => KnotEntry {
            tb: Some(data.tb),
            rot: Some(data.rot),
            knot_type: Some(data.knot_type.clone()),
            ..KnotEntry::default()
        },
    }
}

impl DiagramFile {
    pub fn parse(text: &str, source: &str) -> Result<Self, CliError> {
        let file: DiagramFile = parse_json(text, source)?;
        check_version(file.version)?;
        Ok(file)
    }

    /// Builds and validates the diagram.
    pub fn to_diagram(&self) -> Result<ContactDiagram, CliError> {
        let components = self
            .components
            .iter()
            .map(|c| {
                Ok(DiagramComponent {
                    id: c.id.clone(),
                    knot: knot_spec(&c.id, &c.knot)?,
                    coefficient: c.coefficient,
                    linking: c.linking.clone(),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let diagram = ContactDiagram {
            components,
            link_front: self.link_front.clone(),
        };
        diagram.validate()?;
        Ok(diagram)
    }

    pub fn from_diagram(diagram: &ContactDiagram, options: Options) -> Self {
        DiagramFile {
            version: FORMAT_VERSION,
            components: diagram
                .components
                .iter()
                .map(|c| ComponentEntry {
                    id: c.id.clone(),
                    coefficient: c.coefficient,
                    knot: knot_entry(&c.knot),
                    linking: c.linking.clone(),
                })
                .collect(),
            link_front: diagram.link_front.clone(),
            options,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram files always serialize")
    }
}

impl ResultFile {
    pub fn parse(text: &str, source: &str) -> Result<Self, CliError> {
        let file: ResultFile = parse_json(text, source)?;
        check_version(file.version)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result files always serialize")
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("result files always serialize")
    }
}
