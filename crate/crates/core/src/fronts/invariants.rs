use serde::{Deserialize, Serialize};

use super::word::{FrontEvent, FrontTrace, FrontWord};
use super::FrontError;

/// A front with a choice of orientation on every component.
///
/// `reversed[c] == false` means component `c` carries the default
/// orientation, in which its first strand runs to the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedFront {
    word: FrontWord,
    trace: FrontTrace,
    reversed: Vec<bool>,
}

/// Classical data of one component of an oriented front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInvariants {
    pub tb: i64,
    pub rot: i64,
    pub writhe: i64,
    pub left_cusps: usize,
    pub right_cusps: usize,
    /// Left cusps traversed downwards.
    pub down_left_cusps: usize,
    /// Right cusps traversed upwards.
    pub up_right_cusps: usize,
    pub self_crossings: usize,
}

impl OrientedFront {
    pub fn new(word: FrontWord) -> Result<Self, FrontError> {
        let trace = word.trace()?;
        let reversed = vec![false; trace.component_count()];
        Ok(OrientedFront {
            word,
            trace,
            reversed,
        })
    }

    pub fn with_orientation(word: FrontWord, reversed: Vec<bool>) -> Result<Self, FrontError> {
        let mut front = Self::new(word)?;
        if reversed.len() != front.reversed.len() {
            return Err(FrontError::OrientationLength {
                expected: front.reversed.len(),
                found: reversed.len(),
            });
        }
        front.reversed = reversed;
        Ok(front)
    }

    pub fn word(&self) -> &FrontWord {
        &self.word
    }

    pub fn trace(&self) -> &FrontTrace {
        &self.trace
    }

    pub fn orientation(&self) -> &[bool] {
        &self.reversed
    }

    pub fn component_count(&self) -> usize {
        self.trace.component_count()
    }

    pub fn reverse(&mut self, component: usize) -> Result<(), FrontError> {
        self.check_component(component)?;
        self.reversed[component] ^= true;
        Ok(())
    }

    pub fn reversed(mut self, component: usize) -> Result<Self, FrontError> {
        self.reverse(component)?;
        Ok(self)
    }

    pub(crate) fn check_component(&self, component: usize) -> Result<(), FrontError> {
        if component >= self.component_count() {
            return Err(FrontError::ComponentOutOfRange {
                component,
                components: self.component_count(),
            });
        }
        Ok(())
    }

    /// Direction of travel along a strand under the chosen orientation.
    pub(crate) fn rightward(&self, strand: usize) -> bool {
        self.trace.rightward(strand) ^ self.reversed[self.trace.component_of(strand)]
    }

    /// Crossing sign: +1 when both strands travel the same horizontal way.
    fn crossing_sign(&self, upper: usize, lower: usize) -> i64 {
        if self.rightward(upper) == self.rightward(lower) {
            1
        } else {
            -1
        }
    }

    pub fn invariants(&self, component: usize) -> Result<ComponentInvariants, FrontError> {
        self.check_component(component)?;
        let mut inv = ComponentInvariants {
            tb: 0,
            rot: 0,
            writhe: 0,
            left_cusps: 0,
            right_cusps: 0,
            down_left_cusps: 0,
            up_right_cusps: 0,
            self_crossings: 0,
        };
        for (index, event) in self.word.events().iter().enumerate() {
            let (upper, lower) = self.trace.event_strands(index);
            let on_upper = self.trace.component_of(upper) == component;
            let on_lower = self.trace.component_of(lower) == component;
            match event {
                FrontEvent::LeftCusp(_) if on_upper => {
                    inv.left_cusps += 1;
                    // enter on the upper strand, leave on the lower one
                    if !self.rightward(upper) {
                        inv.down_left_cusps += 1;
                    }
                }
                FrontEvent::RightCusp(_) if on_upper => {
                    inv.right_cusps += 1;
                    if self.rightward(lower) {
                        inv.up_right_cusps += 1;
                    }
                }
                FrontEvent::Crossing(_) if on_upper && on_lower => {
                    inv.self_crossings += 1;
                    inv.writhe += self.crossing_sign(upper, lower);
                }
                _ => {}
            }
        }
        let cusps = (inv.left_cusps + inv.right_cusps) as i64;
        inv.tb = inv.writhe - cusps / 2;
        inv.rot = inv.down_left_cusps as i64 - inv.up_right_cusps as i64;
        Ok(inv)
    }

    /// Writhe minus half the number of cusps.
    pub fn thurston_bennequin(&self, component: usize) -> Result<i64, FrontError> {
        Ok(self.invariants(component)?.tb)
    }

    /// Down-oriented left cusps minus up-oriented right cusps.
    pub fn rotation(&self, component: usize) -> Result<i64, FrontError> {
        Ok(self.invariants(component)?.rot)
    }

    /// Half the signed count of crossings between two distinct components.
    pub fn linking_number(&self, a: usize, b: usize) -> Result<i64, FrontError> {
        self.check_component(a)?;
        self.check_component(b)?;
        if a == b {
            return Err(FrontError::SameComponent(a));
        }
        let mut total = 0;
        for (index, event) in self.word.events().iter().enumerate() {
            if let FrontEvent::Crossing(_) = event {
                let (upper, lower) = self.trace.event_strands(index);
                let pair = (
                    self.trace.component_of(upper),
                    self.trace.component_of(lower),
                );
                if pair == (a, b) || pair == (b, a) {
                    total += self.crossing_sign(upper, lower);
                }
            }
        }
        Ok(total / 2)
    }
}

/// Oriented front on the wire: the word plus per-component reversal flags.
#[derive(Serialize, Deserialize)]
struct OrientedFrontRepr {
    word: FrontWord,
    reversed: Vec<bool>,
}

impl Serialize for OrientedFront {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OrientedFrontRepr {
            word: self.word.clone(),
            reversed: self.reversed.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrientedFront {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = OrientedFrontRepr::deserialize(d)?;
        OrientedFront::with_orientation(repr.word, repr.reversed).map_err(serde::de::Error::custom)
    }
}
