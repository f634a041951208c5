use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::FrontError;

/// One event of a front read from left to right. Positions count strands
/// from 1 at the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrontEvent {
    /// Two new strands are born at positions `i` and `i + 1`.
    LeftCusp(usize),
    /// Strands `i` and `i + 1` end in a right cusp.
    RightCusp(usize),
    /// Strands `i` and `i + 1` cross. The strand moving down from `i` to
    /// `i + 1` is in front.
    Crossing(usize),
}

impl FrontEvent {
    pub fn position(&self) -> usize {
        match *self {
            FrontEvent::LeftCusp(i) | FrontEvent::RightCusp(i) | FrontEvent::Crossing(i) => i,
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            FrontEvent::LeftCusp(_) => "L",
            FrontEvent::RightCusp(_) => "R",
            FrontEvent::Crossing(_) => "X",
        }
    }
}

/// A generic front: a word of cusp and crossing events.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FrontWord {
    events: Vec<FrontEvent>,
}

/// Strand bookkeeping for a traced front.
///
/// Strands are numbered in order of birth; the upper strand of a left cusp
/// gets the smaller number. Components are numbered in order of their first
/// left cusp.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontTrace {
    component_count: usize,
    strand_component: Vec<usize>,
    strand_rightward: Vec<bool>,
    event_strands: Vec<(usize, usize)>,
}

impl FrontTrace {
    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn strand_count(&self) -> usize {
        self.strand_component.len()
    }

    pub fn component_of(&self, strand: usize) -> usize {
        self.strand_component[strand]
    }

    /// Direction of travel along a strand under the default orientation,
    /// in which the first strand of every component runs to the right.
    pub fn rightward(&self, strand: usize) -> bool {
        self.strand_rightward[strand]
    }

    /// `(upper, lower)` strands taking part in event `index`, read just before
    /// the event. For crossings the upper strand is the descending one.
    pub fn event_strands(&self, index: usize) -> (usize, usize) {
        self.event_strands[index]
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn push(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl FrontWord {
    pub fn new(events: Vec<FrontEvent>) -> Self {
        FrontWord { events }
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub(crate) fn insert(&mut self, at: usize, new: &[FrontEvent]) {
        self.events.splice(at..at, new.iter().copied());
    }

    /// Number of cusps, left and right together.
    pub fn cusp_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| !matches!(e, FrontEvent::Crossing(_)))
            .count()
    }

    /// Checks the structural invariants and returns the number of components.
    pub fn validate(&self) -> Result<usize, FrontError> {
        self.trace().map(|t| t.component_count)
    }

    pub fn trace(&self) -> Result<FrontTrace, FrontError> {
        if self.events.is_empty() {
            return Err(FrontError::EmptyWord);
        }
        let mut stack: Vec<usize> = Vec::new();
        let mut uf = UnionFind(Vec::new());
        let mut left_partner: Vec<usize> = Vec::new();
        let mut right_partner: Vec<Option<usize>> = Vec::new();
        let mut event_strands = Vec::with_capacity(self.events.len());

        for (index, event) in self.events.iter().enumerate() {
            let count = stack.len();
            let i = event.position();
            let in_range = match event {
                FrontEvent::LeftCusp(_) => (1..=count + 1).contains(&i),
                _ => i >= 1 && i < count,
            };
            if !in_range {
                return Err(FrontError::IndexOutOfRange {
                    event: index,
                    position: i,
                    strands: count,
                });
            }
            let k = i - 1;
            match event {
                FrontEvent::LeftCusp(_) => {
                    let upper = uf.push();
                    let lower = uf.push();
                    uf.union(upper, lower);
                    left_partner.extend([lower, upper]);
                    right_partner.extend([None, None]);
                    stack.splice(k..k, [upper, lower]);
                    event_strands.push((upper, lower));
                }
                FrontEvent::RightCusp(_) => {
                    let (upper, lower) = (stack[k], stack[k + 1]);
                    uf.union(upper, lower);
                    right_partner[upper] = Some(lower);
                    right_partner[lower] = Some(upper);
                    stack.drain(k..k + 2);
                    event_strands.push((upper, lower));
                }
                FrontEvent::Crossing(_) => {
                    event_strands.push((stack[k], stack[k + 1]));
                    stack.swap(k, k + 1);
                }
            }
        }
        if !stack.is_empty() {
            return Err(FrontError::UnbalancedCusps {
                open_strands: stack.len(),
            });
        }

        let n = left_partner.len();
        let mut strand_component = vec![usize::MAX; n];
        let mut root_component = vec![usize::MAX; n];
        let mut component_count = 0;
        for (s, slot) in strand_component.iter_mut().enumerate() {
            let root = uf.find(s);
            if root_component[root] == usize::MAX {
                root_component[root] = component_count;
                component_count += 1;
            }
            *slot = root_component[root];
        }

        // Walk each component's cycle from its first strand, alternating
        // right and left cusps; every cusp reverses the direction of travel.
        let mut strand_rightward = vec![false; n];
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut s = start;
            let mut rightward = true;
            loop {
                seen[s] = true;
                strand_rightward[s] = rightward;
                let next = if rightward {
                    right_partner[s].expect("closed front")
                } else {
                    left_partner[s]
                };
                rightward = !rightward;
                if next == start {
                    break;
                }
                s = next;
            }
        }

        Ok(FrontTrace {
            component_count,
            strand_component,
            strand_rightward,
            event_strands,
        })
    }
}

impl From<Vec<FrontEvent>> for FrontWord {
    fn from(events: Vec<FrontEvent>) -> Self {
        FrontWord::new(events)
    }
}

impl fmt::Display for FrontWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", e.tag(), e.position())?;
        }
        Ok(())
    }
}

// Serialized as a flat array of tag/position pairs: ["L",1,"X",1,"R",1].
impl Serialize for FrontWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.events.len() * 2))?;
        for e in &self.events {
            seq.serialize_element(e.tag())?;
            seq.serialize_element(&e.position())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for FrontWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct WordVisitor;

        impl<'de> Visitor<'de> for WordVisitor {
            type Value = FrontWord;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(
                    f,
                    "a flat array of event tags and positions, e.g. [\"L\",1,\"R\",1]"
                )
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<FrontWord, A::Error> {
                let mut events = Vec::new();
                while let Some(tag) = seq.next_element::<String>()? {
                    let pos: usize = seq.next_element()?.ok_or_else(|| {
                        de::Error::custom(format!("event {tag:?} has no position"))
                    })?;
                    events.push(match tag.as_str() {
                        "L" => FrontEvent::LeftCusp(pos),
                        "R" => FrontEvent::RightCusp(pos),
                        "X" => FrontEvent::Crossing(pos),
                        other => {
                            return Err(de::Error::custom(format!(
                                "unknown front event {other:?}, expected \"L\", \"R\" or \"X\""
                            )))
                        }
                    });
                }
                Ok(FrontWord::new(events))
            }
        }

        d.deserialize_seq(WordVisitor)
    }
}
