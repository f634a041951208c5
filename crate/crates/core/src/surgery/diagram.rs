use std::collections::{BTreeMap, HashSet};

use crate::arith::Rational;
use crate::fronts::{FrontEvent, LegendrianKnotData, OrientedFront};

use super::SurgeryError;

/// How a component's Legendrian knot is given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotSpec {
    /// A one-component front of its own.
    Front(OrientedFront),
    /// Component `index` of the diagram's shared link front.
    LinkComponent(usize),
    /// Classical invariants only.
    Abstract(LegendrianKnotData),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramComponent {
    pub id: String,
    pub knot: KnotSpec,
    /// Contact surgery coefficient, measured against the contact framing.
    pub coefficient: Rational,
    /// Linking numbers with other components, keyed by id.
    pub linking: BTreeMap<String, i64>,
}

impl DiagramComponent {
    pub fn new(id: impl Into<String>, knot: KnotSpec, coefficient: Rational) -> Self {
        DiagramComponent {
            id: id.into(),
            knot,
            coefficient,
            linking: BTreeMap::new(),
        }
    }

    pub fn abstract_unknot(
        id: impl Into<String>,
        tb: i64,
        rot: i64,
        coefficient: Rational,
    ) -> Self {
        Self::new(
            id,
            KnotSpec::Abstract(LegendrianKnotData::unknot(tb, rot)),
            coefficient,
        )
    }
}

/// A Legendrian link in the standard contact 3-sphere with a rational
/// contact surgery coefficient on every component.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContactDiagram {
    pub components: Vec<DiagramComponent>,
    pub link_front: Option<OrientedFront>,
}

fn front_data(
    front: &OrientedFront,
    component: usize,
) -> Result<LegendrianKnotData, crate::fronts::FrontError> {
    let inv = front.invariants(component)?;
    // one-component crossing-free fronts are unknots
    let knot_type = if front.component_count() == 1
        && !front
            .word()
            .events()
            .iter()
            .any(|e| matches!(e, FrontEvent::Crossing(_)))
    {
        "unknot"
    } else {
        "front"
    };
    Ok(LegendrianKnotData {
        tb: inv.tb,
        rot: inv.rot,
        knot_type: knot_type.to_string(),
    })
}

impl ContactDiagram {
    pub fn new(components: Vec<DiagramComponent>) -> Self {
        ContactDiagram {
            components,
            link_front: None,
        }
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    /// Classical invariants of component `i`.
    pub fn knot_data(&self, i: usize) -> Result<LegendrianKnotData, SurgeryError> {
        let c = &self.components[i];
        let front_err = |source| SurgeryError::Front {
            id: c.id.clone(),
            source,
        };
        match &c.knot {
            KnotSpec::Abstract(data) => Ok(data.clone()),
            KnotSpec::Front(front) => {
                if front.component_count() != 1 {
                    return Err(SurgeryError::MultiComponentFront {
                        id: c.id.clone(),
                        components: front.component_count(),
                    });
                }
                front_data(front, 0).map_err(front_err)
            }
            KnotSpec::LinkComponent(index) => {
                let front = self
                    .link_front
                    .as_ref()
                    .ok_or_else(|| SurgeryError::MissingLinkFront { id: c.id.clone() })?;
                front_data(front, *index).map_err(front_err)
            }
        }
    }

    /// Linking number of components `i` and `j` from the stated linking maps,
    /// falling back to the shared link front.
    pub fn linking(&self, i: usize, j: usize) -> Option<i64> {
        let (a, b) = (&self.components[i], &self.components[j]);
        if let Some(&v) = a.linking.get(&b.id).or_else(|| b.linking.get(&a.id)) {
            return Some(v);
        }
        match (&a.knot, &b.knot, &self.link_front) {
            (KnotSpec::LinkComponent(x), KnotSpec::LinkComponent(y), Some(front)) if x != y => {
                front.linking_number(*x, *y).ok()
            }
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), SurgeryError> {
        let mut ids = HashSet::new();
        for c in &self.components {
            if c.id.is_empty() {
                return Err(SurgeryError::EmptyId);
            }
            if !ids.insert(c.id.as_str()) {
                return Err(SurgeryError::DuplicateId(c.id.clone()));
            }
        }
        let mut used_link_components = HashSet::new();
        for (i, c) in self.components.iter().enumerate() {
            if let KnotSpec::LinkComponent(index) = c.knot {
                if !used_link_components.insert(index) {
                    return Err(SurgeryError::SharedLinkComponent {
                        id: c.id.clone(),
                        index,
                    });
                }
            }
            let data = self.knot_data(i)?;
            data.validate().map_err(|source| SurgeryError::Front {
                id: c.id.clone(),
                source,
            })?;
            for (target, &value) in &c.linking {
                if *target == c.id {
                    return Err(SurgeryError::SelfLinking(c.id.clone()));
                }
                let j = self
                    .index_of(target)
                    .ok_or_else(|| SurgeryError::UnknownLinkTarget {
                        id: c.id.clone(),
                        target: target.clone(),
                    })?;
                let other = &self.components[j];
                if let Some(&back) = other.linking.get(&c.id) {
                    if back != value {
                        return Err(SurgeryError::AsymmetricLinking {
                            a: c.id.clone(),
                            b: other.id.clone(),
                            ab: value,
                            ba: back,
                        });
                    }
                }
                if let (KnotSpec::LinkComponent(x), KnotSpec::LinkComponent(y), Some(front)) =
                    (&c.knot, &other.knot, &self.link_front)
                {
                    let derived =
                        front
                            .linking_number(*x, *y)
                            .map_err(|source| SurgeryError::Front {
                                id: c.id.clone(),
                                source,
                            })?;
                    if derived != value {
                        return Err(SurgeryError::AsymmetricLinking {
                            a: c.id.clone(),
                            b: other.id.clone(),
                            ab: value,
                            ba: derived,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}
