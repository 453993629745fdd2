//! Incidence model of a truncated diagram.
//!
//! Removing every vertex of degree at least three leaves free ends; cutting
//! each edge (and each vertex-free cycle) at its under-passages yields the
//! strands. Every crossing then references one over-strand and the two
//! strands that end at its under-passage.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{DiagramError, GaussError};
use crate::gauss::{
    validate_link, validate_spatial, Endpoint, GaussCode, LinkGaussCode, SpatialGaussCode,
};

pub type StrandId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrandKind {
    /// One end at a removed vertex, the other at an under-passage.
    FreeToUnder,
    UnderToUnder,
    /// Both ends at removed vertices with no under-passage between them.
    FreeToFree,
    /// A cycle without under-passages; it can only ever be a seed.
    Closed,
}

/// How a strand terminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrandEnd {
    Free(u32),
    Under(u32),
}

/// The edge or vertex-free cycle a strand lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Carrier {
    Edge(usize),
    Cycle(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Strand {
    pub id: StrandId,
    /// Signed labels traversed, bounding under-passages included.
    pub passages: Vec<i32>,
    pub kind: StrandKind,
    pub end_vertices: Vec<u32>,
    #[serde(skip)]
    pub start: Option<StrandEnd>,
    #[serde(skip)]
    pub end: Option<StrandEnd>,
    #[serde(skip)]
    pub carrier: Carrier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub label: u32,
    pub over: StrandId,
    /// Strand arriving at the under-passage.
    pub under_in: StrandId,
    /// Strand leaving the under-passage.
    pub under_out: StrandId,
}

/// A vertex of the normalized graph (degree at least three).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub number: u32,
    pub degree: usize,
}

/// An open edge after degree-two vertices have been fused away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenEdge {
    pub start: Endpoint,
    pub passages: Vec<i32>,
    pub end: Endpoint,
}

impl OpenEdge {
    fn reversed(mut self) -> Self {
        self.passages.reverse();
        std::mem::swap(&mut self.start, &mut self.end);
        self
    }
}

/// Edges and vertex-free cycles of a code with degree-two vertices removed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Skeleton {
    pub edges: Vec<OpenEdge>,
    pub cycles: Vec<Vec<i32>>,
}

impl Skeleton {
    pub fn from_link(code: &LinkGaussCode) -> Self {
        Skeleton {
            edges: Vec::new(),
            cycles: code.components.clone(),
        }
    }

    /// Fuses the two edge-ends at every degree-two vertex. A loop at a
    /// degree-two vertex becomes a cycle.
    pub fn from_spatial(code: &SpatialGaussCode) -> Self {
        let mut edges: Vec<OpenEdge> = code
            .edges
            .iter()
            .map(|e| OpenEdge {
                start: e.start,
                passages: e.passages.clone(),
                end: e.end,
            })
            .collect();
        let mut cycles = Vec::new();
        loop {
            let mut ends: BTreeMap<u32, Vec<(usize, bool)>> = BTreeMap::new();
            for (i, e) in edges.iter().enumerate() {
                ends.entry(e.start.vertex).or_default().push((i, true));
                ends.entry(e.end.vertex).or_default().push((i, false));
            }
            let Some((&v, at)) = ends.iter().find(|(_, at)| at.len() == 2) else {
                break;
            };
            let (i, i_start) = at[0];
            let (j, j_start) = at[1];
            if i == j {
                let e = edges.remove(i);
                cycles.push(e.passages);
                continue;
            }
            let first = if i_start {
                edges[i].clone().reversed()
            } else {
                edges[i].clone()
            };
            let second = if j_start {
                edges[j].clone()
            } else {
                edges[j].clone().reversed()
            };
            debug_assert_eq!(first.end.vertex, v);
            debug_assert_eq!(second.start.vertex, v);
            let mut passages = first.passages;
            passages.extend_from_slice(&second.passages);
            edges[i] = OpenEdge {
                start: first.start,
                passages,
                end: second.end,
            };
            edges.remove(j);
        }
        Skeleton { edges, cycles }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagram {
    strands: Vec<Strand>,
    crossings: Vec<Crossing>,
    #[serde(skip)]
    vertices: Vec<Vertex>,
    pods: BTreeMap<u32, Vec<StrandId>>,
    #[serde(skip)]
    edge_loops: Vec<bool>,
    #[serde(skip)]
    cycle_count: usize,
    /// Crossing indices touching each strand, as over or under.
    #[serde(skip)]
    incident: Vec<Vec<u32>>,
}

/// Builds the diagram of a validated spatial-graph code.
pub fn build_diagram(code: &SpatialGaussCode) -> Result<Diagram, DiagramError> {
    let report = validate_spatial(code);
    if !report.ok {
        return Err(GaussError::Validation(report).into());
    }
    Diagram::from_skeleton(Skeleton::from_spatial(code))
}

impl Diagram {
    pub fn from_link(code: &LinkGaussCode) -> Result<Diagram, DiagramError> {
        let report = validate_link(code);
        if !report.ok {
            return Err(GaussError::Validation(report).into());
        }
        Diagram::from_skeleton(Skeleton::from_link(code))
    }

    pub fn from_spatial(code: &SpatialGaussCode) -> Result<Diagram, DiagramError> {
        build_diagram(code)
    }

    pub fn from_code(code: &GaussCode) -> Result<Diagram, DiagramError> {
        match code {
            GaussCode::Link(l) => Diagram::from_link(l),
            GaussCode::Spatial(s) => Diagram::from_spatial(s),
        }
    }

    pub fn from_skeleton(sk: Skeleton) -> Result<Diagram, DiagramError> {
        let mut degree: BTreeMap<u32, usize> = BTreeMap::new();
        for e in &sk.edges {
            *degree.entry(e.start.vertex).or_default() += 1;
            *degree.entry(e.end.vertex).or_default() += 1;
        }
        if let Some((&v, _)) = degree.iter().find(|(_, &d)| d == 1) {
            return Err(DiagramError::DegreeOne(v));
        }

        let mut strands: Vec<Strand> = Vec::new();
        let mut push = |passages: Vec<i32>,
                        start: Option<StrandEnd>,
                        end: Option<StrandEnd>,
                        carrier: Carrier| {
            let kind = match (start, end) {
                (None, None) => StrandKind::Closed,
                (Some(StrandEnd::Free(_)), Some(StrandEnd::Free(_))) => StrandKind::FreeToFree,
                (Some(StrandEnd::Under(_)), Some(StrandEnd::Under(_))) => StrandKind::UnderToUnder,
                _ => StrandKind::FreeToUnder,
            };
            let end_vertices = [start, end]
                .into_iter()
                .filter_map(|e| match e {
                    Some(StrandEnd::Free(v)) => Some(v),
                    _ => None,
                })
                .collect();
            let id = strands.len();
            strands.push(Strand {
                id,
                passages,
                kind,
                end_vertices,
                start,
                end,
                carrier,
            });
        };

        for (ei, e) in sk.edges.iter().enumerate() {
            let mut current = Vec::new();
            let mut start = StrandEnd::Free(e.start.vertex);
            for &p in &e.passages {
                current.push(p);
                if p < 0 {
                    let end = StrandEnd::Under(p.unsigned_abs());
                    push(
                        std::mem::replace(&mut current, vec![p]),
                        Some(start),
                        Some(end),
                        Carrier::Edge(ei),
                    );
                    start = end;
                }
            }
            push(
                current,
                Some(start),
                Some(StrandEnd::Free(e.end.vertex)),
                Carrier::Edge(ei),
            );
        }

        for (ci, cyc) in sk.cycles.iter().enumerate() {
            let Some(first_under) = cyc.iter().position(|&p| p < 0) else {
                push(cyc.clone(), None, None, Carrier::Cycle(ci));
                continue;
            };
            let n = cyc.len();
            let mut current = vec![cyc[first_under]];
            let mut start = StrandEnd::Under(cyc[first_under].unsigned_abs());
            for step in 1..=n {
                let p = cyc[(first_under + step) % n];
                current.push(p);
                if p < 0 {
                    let end = StrandEnd::Under(p.unsigned_abs());
                    push(
                        std::mem::replace(&mut current, vec![p]),
                        Some(start),
                        Some(end),
                        Carrier::Cycle(ci),
                    );
                    start = end;
                }
            }
        }

        let mut over_of: BTreeMap<u32, StrandId> = BTreeMap::new();
        let mut in_of: BTreeMap<u32, StrandId> = BTreeMap::new();
        let mut out_of: BTreeMap<u32, StrandId> = BTreeMap::new();
        for s in &strands {
            for &p in &s.passages {
                if p > 0 {
                    over_of.insert(p as u32, s.id);
                }
            }
            if let Some(StrandEnd::Under(k)) = s.end {
                in_of.insert(k, s.id);
            }
            if let Some(StrandEnd::Under(k)) = s.start {
                out_of.insert(k, s.id);
            }
        }
        let crossings: Vec<Crossing> = over_of
            .iter()
            .map(|(&label, &over)| Crossing {
                label,
                over,
                under_in: in_of[&label],
                under_out: out_of[&label],
            })
            .collect();

        let mut incident = vec![Vec::new(); strands.len()];
        for (ci, c) in crossings.iter().enumerate() {
            for s in [c.over, c.under_in, c.under_out] {
                if incident[s].last() != Some(&(ci as u32)) {
                    incident[s].push(ci as u32);
                }
            }
        }

        let mut pods: BTreeMap<u32, Vec<StrandId>> = BTreeMap::new();
        for s in &strands {
            for &v in &s.end_vertices {
                pods.entry(v).or_default().push(s.id);
            }
        }
        let vertices = degree
            .into_iter()
            .map(|(number, degree)| Vertex { number, degree })
            .collect();
        let edge_loops = sk
            .edges
            .iter()
            .map(|e| e.start.vertex == e.end.vertex)
            .collect();

        Ok(Diagram {
            strands,
            crossings,
            vertices,
            pods,
            edge_loops,
            cycle_count: sk.cycles.len(),
            incident,
        })
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn strand(&self, id: StrandId) -> &Strand {
        &self.strands[id]
    }

    pub fn strand_count(&self) -> usize {
        self.strands.len()
    }

    /// Crossings in ascending label order.
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, label: u32) -> Option<&Crossing> {
        self.crossings
            .binary_search_by_key(&label, |c| c.label)
            .ok()
            .map(|i| &self.crossings[i])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn degree(&self, vertex: u32) -> usize {
        self.vertices
            .iter()
            .find(|v| v.number == vertex)
            .map_or(0, |v| v.degree)
    }

    /// Strand-ends at each vertex. A strand appears once per free end it has
    /// at the vertex, so each list has the vertex degree as its length.
    pub fn pods(&self) -> &BTreeMap<u32, Vec<StrandId>> {
        &self.pods
    }

    pub fn pod(&self, vertex: u32) -> &[StrandId] {
        self.pods.get(&vertex).map_or(&[], Vec::as_slice)
    }

    pub fn edge_count(&self) -> usize {
        self.edge_loops.len()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_count
    }

    pub fn is_loop_edge(&self, edge: usize) -> bool {
        self.edge_loops[edge]
    }

    /// Vertices minus edges of the abstract graph; vertex-free cycles
    /// contribute zero.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_loops.len() as i64
    }

    pub(crate) fn incident(&self, strand: StrandId) -> &[u32] {
        &self.incident[strand]
    }

    /// Strands that share an under-passage with `strand`.
    pub fn under_neighbours(&self, strand: StrandId) -> impl Iterator<Item = StrandId> + '_ {
        self.incident[strand].iter().filter_map(move |&ci| {
            let c = &self.crossings[ci as usize];
            if c.under_in == strand {
                Some(c.under_out)
            } else if c.under_out == strand {
                Some(c.under_in)
            } else {
                None
            }
        })
    }
}
