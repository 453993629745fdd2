//! Gauss codes for links and spatial graphs.
//!
//! A link code is a list of cyclic passage lists. A spatial-graph code is a
//! list of edges, each written `[a1, 3, -4, a2]`: an endpoint symbol (slot
//! letter followed by vertex number), the signed crossing passages along the
//! edge, and a closing endpoint symbol. A positive entry is an over-passage,
//! a negative entry an under-passage.

mod braid;
mod parse;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use parse::{parse_any, parse_link_gauss, parse_spatial_gauss, split_codes, RawCode};
pub use validate::{validate_link, validate_spatial, Issue, ValidationReport};

use crate::error::GaussError;

/// Crossing passages of a link, one cyclic list per component.
///
/// An empty component denotes a crossing-free circle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkGaussCode {
    pub components: Vec<Vec<i32>>,
}

/// One end of an edge: a slot letter at a vertex, written `a1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub slot: char,
    pub vertex: u32,
}

impl Endpoint {
    pub fn new(slot: char, vertex: u32) -> Self {
        Endpoint { slot, vertex }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.slot, self.vertex)
    }
}

impl FromStr for Endpoint {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let slot = chars
            .next()
            .filter(|c| c.is_ascii_lowercase())
            .ok_or_else(|| GaussError::syntax(0, format!("bad endpoint symbol `{s}`")))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(GaussError::syntax(0, format!("bad endpoint symbol `{s}`")));
        }
        let vertex: u32 = digits
            .parse()
            .map_err(|_| GaussError::syntax(0, format!("vertex number out of range in `{s}`")))?;
        if vertex == 0 {
            return Err(GaussError::syntax(0, format!("vertex number must be positive in `{s}`")));
        }
        Ok(Endpoint { slot, vertex })
    }
}

impl Serialize for Endpoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeCode {
    pub start: Endpoint,
    pub passages: Vec<i32>,
    pub end: Endpoint,
}

impl EdgeCode {
    pub fn new(start: Endpoint, passages: Vec<i32>, end: Endpoint) -> Self {
        EdgeCode { start, passages, end }
    }

    pub fn is_loop(&self) -> bool {
        self.start.vertex == self.end.vertex
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpatialGaussCode {
    pub edges: Vec<EdgeCode>,
}

impl SpatialGaussCode {
    /// Vertex numbers in ascending order.
    pub fn vertices(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self
            .edges
            .iter()
            .flat_map(|e| [e.start.vertex, e.end.vertex])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Number of edge-ends at `vertex`; a loop counts twice.
    pub fn degree(&self, vertex: u32) -> usize {
        self.edges
            .iter()
            .map(|e| (e.start.vertex == vertex) as usize + (e.end.vertex == vertex) as usize)
            .sum()
    }

    pub fn crossing_count(&self) -> usize {
        self.edges
            .iter()
            .flat_map(|e| e.passages.iter())
            .filter(|&&p| p > 0)
            .count()
    }
}

impl LinkGaussCode {
    pub fn crossing_count(&self) -> usize {
        self.components
            .iter()
            .flat_map(|c| c.iter())
            .filter(|&&p| p > 0)
            .count()
    }
}

/// Either flavour of Gauss code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GaussCode {
    Link(LinkGaussCode),
    Spatial(SpatialGaussCode),
}

impl GaussCode {
    pub fn validate(&self) -> ValidationReport {
        match self {
            GaussCode::Link(l) => validate_link(l),
            GaussCode::Spatial(s) => validate_spatial(s),
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            GaussCode::Link(l) => l.to_string(),
            GaussCode::Spatial(s) => s.to_string(),
        }
    }
}

impl From<LinkGaussCode> for GaussCode {
    fn from(l: LinkGaussCode) -> Self {
        GaussCode::Link(l)
    }
}

impl From<SpatialGaussCode> for GaussCode {
    fn from(s: SpatialGaussCode) -> Self {
        GaussCode::Spatial(s)
    }
}

// Canonical text form: `[[1,-2,3],[...]]` for links and
// `[[a1, 3, -4, a2], [b1, b2]]` for spatial graphs, the latter matching the
// spacing of the published listings.

impl fmt::Display for LinkGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, p) in comp.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for EdgeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.start)?;
        for p in &self.passages {
            write!(f, ", {p}")?;
        }
        write!(f, ", {}]", self.end)
    }
}

impl fmt::Display for SpatialGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaussCode::Link(l) => l.fmt(f),
            GaussCode::Spatial(s) => s.fmt(f),
        }
    }
}

impl FromStr for LinkGaussCode {
    type Err = GaussError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_link_gauss(s)
    }
}

impl FromStr for SpatialGaussCode {
    type Err = GaussError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spatial_gauss(s)
    }
}

impl FromStr for GaussCode {
    type Err = GaussError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_any(s)
    }
}
