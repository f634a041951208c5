use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Contact surgery coefficient of an output instruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PmSign {
    Plus,
    Minus,
}

impl PmSign {
    pub fn value(self) -> i64 {
        match self {
            PmSign::Plus => 1,
            PmSign::Minus => -1,
        }
    }

    pub fn inverse(self) -> PmSign {
        match self {
            PmSign::Plus => PmSign::Minus,
            PmSign::Minus => PmSign::Plus,
        }
    }
}

impl fmt::Display for PmSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PmSign::Plus => "+1",
            PmSign::Minus => "-1",
        })
    }
}

impl Serialize for PmSign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for PmSign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match i64::deserialize(d)? {
            1 => Ok(PmSign::Plus),
            -1 => Ok(PmSign::Minus),
            v => Err(serde::de::Error::custom(format!(
                "instruction coefficient must be +1 or -1, found {v}"
            ))),
        }
    }
}

/// Which rewrite produced an instruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// The input component already had coefficient +1 or -1.
    Passthrough,
    /// Contact (-1)-surgery of a chain realising a negative coefficient.
    NegativeChain,
    /// Contact (+1)-surgery on a push-off, from a (1/k)-surgery.
    PushOff,
    ZeroSurgery,
    SimpleLutz,
    FullLutz,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Passthrough => "passthrough",
            Provenance::NegativeChain => "negative-chain",
            Provenance::PushOff => "push-off",
            Provenance::ZeroSurgery => "zero-surgery",
            Provenance::SimpleLutz => "simple-lutz",
            Provenance::FullLutz => "full-lutz",
        })
    }
}

/// One contact (+1)- or (-1)-surgery of a converted presentation.
///
/// `tb_local` is measured in the coordinates of the solid torus at `level`,
/// not in the ambient sphere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmOneInstruction {
    pub coefficient: PmSign,
    pub level: usize,
    pub tb_local: i64,
    pub rot_choice: i64,
    pub parent: String,
    pub provenance: Provenance,
}

impl PmOneInstruction {
    /// Same knot: same parent, level and classical data.
    pub fn same_knot(&self, other: &PmOneInstruction) -> bool {
        self.parent == other.parent
            && self.level == other.level
            && self.tb_local == other.tb_local
            && self.rot_choice == other.rot_choice
    }
}

/// Rotation numbers available to a stabilized unknot with the given `tb`:
/// `-m, -m + 2, ..., m` where `m = |tb| - 1`. Empty for `tb >= 0`.
pub fn allowed_rotations(tb: i64) -> impl Iterator<Item = i64> + Clone {
    let m = if tb <= -1 { -tb - 1 } else { -1 };
    (0..=m).map(move |j| -m + 2 * j)
}

pub fn rotation_allowed(tb: i64, rot: i64) -> bool {
    let m = -tb - 1;
    tb <= -1 && rot.abs() <= m && (rot + m) % 2 == 0
}

/// How rotation numbers are picked along (-1)-chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum Policy {
    /// The most negative rotation at every level.
    #[default]
    AllNegative,
    /// The most positive rotation at every level.
    AllPositive,
    /// Explicit choices for every chain instruction, in component order.
    Tuple(Vec<i64>),
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::AllNegative => f.write_str("all-negative"),
            Policy::AllPositive => f.write_str("all-positive"),
            Policy::Tuple(v) => {
                f.write_str("tuple=")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid policy {0:?}: expected all-negative, all-positive or tuple=r1,r2,...")]
pub struct ParsePolicyError(pub String);

impl FromStr for Policy {
    type Err = ParsePolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "all-negative" => Ok(Policy::AllNegative),
            "all-positive" => Ok(Policy::AllPositive),
            t => {
                let body = t
                    .strip_prefix("tuple=")
                    .ok_or_else(|| ParsePolicyError(s.to_string()))?;
                if body.trim().is_empty() {
                    return Ok(Policy::Tuple(Vec::new()));
                }
                body.split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map(Policy::Tuple)
                    .map_err(|_| ParsePolicyError(s.to_string()))
            }
        }
    }
}

impl Serialize for Policy {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Policy {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
