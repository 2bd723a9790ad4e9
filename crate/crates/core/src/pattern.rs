use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PairRelation;

/// The forbidden structures handled by the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PatternKind {
    Sep,
    Nest,
    Cross,
    NonSep,
    NonNest,
    NonCross,
    /// Strongly non-nested: separated islands of pairwise crossing edges.
    Snn,
    /// Alternating path; the size is the number of vertices.
    AltPath,
    /// Two separated crossing matchings.
    MStar,
    /// Two separated nested matchings.
    MStarStar,
}

impl PatternKind {
    pub const ALL: [PatternKind; 10] = [
        PatternKind::Sep,
        PatternKind::Nest,
        PatternKind::Cross,
        PatternKind::NonSep,
        PatternKind::NonNest,
        PatternKind::NonCross,
        PatternKind::Snn,
        PatternKind::AltPath,
        PatternKind::MStar,
        PatternKind::MStarStar,
    ];

    /// The six kinds defined by a single pairwise relation.
    pub const PAIRWISE: [PatternKind; 6] = [
        PatternKind::Sep,
        PatternKind::Nest,
        PatternKind::Cross,
        PatternKind::NonSep,
        PatternKind::NonNest,
        PatternKind::NonCross,
    ];

    /// Whether two independent edges in this relation may coexist in a matching of
    /// this kind. `None` for kinds that are not defined pairwise.
    pub fn allows(self, rel: PairRelation) -> Option<bool> {
        use PairRelation::*;
        let ok = match self {
            PatternKind::Sep => rel == Separated,
            PatternKind::Nest => rel == Nested,
            PatternKind::Cross => rel == Crossing,
            PatternKind::NonSep => matches!(rel, Nested | Crossing),
            PatternKind::NonNest => matches!(rel, Separated | Crossing),
            PatternKind::NonCross => matches!(rel, Separated | Nested),
            _ => return None,
        };
        Some(ok)
    }

    pub fn is_pairwise(self) -> bool {
        self.allows(PairRelation::Crossing).is_some()
    }

    pub fn name(self) -> &'static str {
        match self {
            PatternKind::Sep => "sep",
            PatternKind::Nest => "nest",
            PatternKind::Cross => "cross",
            PatternKind::NonSep => "nonsep",
            PatternKind::NonNest => "nonnest",
            PatternKind::NonCross => "noncross",
            PatternKind::Snn => "snn",
            PatternKind::AltPath => "altpath",
            PatternKind::MStar => "mstar",
            PatternKind::MStarStar => "mstarstar",
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PatternKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace(['_', '-'], "");
        PatternKind::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| Error::Malformed(format!("unknown pattern kind `{s}`")))
    }
}

/// A pattern kind with its size: the matching size `k`, or the vertex count `t`
/// of an alternating path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternSpec {
    pub kind: PatternKind,
    pub size: usize,
}

impl PatternSpec {
    pub fn new(kind: PatternKind, size: usize) -> Result<Self> {
        let min = if kind == PatternKind::AltPath { 2 } else { 1 };
        if size < min {
            return Err(Error::Invalid(format!("{kind} needs size >= {min}, got {size}")));
        }
        Ok(PatternSpec { kind, size })
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.size)
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    /// Parses `kind:size`, e.g. `nonsep:3` or `altpath:4`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, size) =
            s.split_once(':').ok_or_else(|| Error::Malformed(format!("expected kind:size, got `{s}`")))?;
        let size = size.trim().parse().map_err(|_| Error::Malformed(format!("bad size in `{s}`")))?;
        PatternSpec::new(kind.trim().parse()?, size)
    }
}

impl Serialize for PatternSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PatternSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for kind in PatternKind::ALL {
            let spec = PatternSpec::new(kind, 3).unwrap();
            assert_eq!(spec.to_string().parse::<PatternSpec>().unwrap(), spec);
        }
        assert_eq!("NON_SEP:2".parse::<PatternSpec>().unwrap().kind, PatternKind::NonSep);
    }

    #[test]
    fn size_guards() {
        assert!(PatternSpec::new(PatternKind::Sep, 0).is_err());
        assert!(PatternSpec::new(PatternKind::AltPath, 1).is_err());
        assert!(PatternSpec::new(PatternKind::AltPath, 2).is_ok());
        assert!("cross".parse::<PatternSpec>().is_err());
        assert!("bogus:2".parse::<PatternSpec>().is_err());
    }
}
