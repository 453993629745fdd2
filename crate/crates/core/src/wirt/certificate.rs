//! Bridge-position certificates read off a complete coloring.
//!
//! Strand heights are minus their coloring stage. Pod seeds become upper
//! pods and arc seeds local maxima. Each crossing whose under-strands end
//! with different colors needs a local minimum; a same-colored crossing needs
//! one only when its over-strand is no higher than both under-strands. A
//! strand whose color closes up around a component through monotone
//! crossings only, such as a kinked circle seeded at its over-arc, bottoms
//! out on the strand itself. The remaining pods are lower pods.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{ColoringState, SeedItem, WirtingerResult};
use crate::diagram::{Carrier, Diagram, StrandEnd, StrandId, StrandKind};
use crate::error::WirtError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CrossingClass {
    /// Same color on both sides and the over-strand sits higher than one of
    /// them: the connecting arc can be monotone.
    Monotone,
    /// Under-strands of different colors: one local minimum.
    MinimumMulti,
    /// Same color, over-strand no higher than either under-strand: the
    /// crossing closes an unknotted component or a self-loop with one minimum.
    MinimumSame,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub height: Vec<i64>,
    pub crossing_class: BTreeMap<u32, CrossingClass>,
    pub upper_pods: usize,
    pub maxima: usize,
    pub minima: usize,
    pub lower_pods: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleReport {
    pub tau1: usize,
    pub tau2: usize,
    /// Degrees of the upper-tangle components: vertex degree for a pod seed,
    /// two for an arc seed.
    pub degrees: Vec<usize>,
    pub degree_sum: usize,
    pub chi: i64,
}

/// Local minima and lower pods implied by a complete coloring.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct LowerCount {
    pub multi: usize,
    pub same: usize,
    /// Crossing-free seed circles, each with one minimum.
    pub closed: usize,
    /// Strands both of whose ends climb: toward a higher strand through a
    /// monotone crossing, or into a seed pod.
    pub valleys: usize,
    pub lower_pods: usize,
}

impl LowerCount {
    pub fn minima(&self) -> usize {
        self.multi + self.same + self.closed + self.valleys
    }

    pub fn total(&self) -> usize {
        self.minima() + self.lower_pods
    }
}

fn height(st: &ColoringState, s: StrandId) -> i64 {
    -(st.stage[s].expect("strand colored") as i64)
}

/// Classifies every crossing of a completely colored diagram, in label order.
pub fn classify_crossings(d: &Diagram, st: &ColoringState) -> BTreeMap<u32, CrossingClass> {
    d.crossings()
        .iter()
        .map(|c| {
            let class = if st.color[c.under_in] != st.color[c.under_out] {
                CrossingClass::MinimumMulti
            } else if height(st, c.over) > height(st, c.under_in).min(height(st, c.under_out)) {
                CrossingClass::Monotone
            } else {
                CrossingClass::MinimumSame
            };
            (c.label, class)
        })
        .collect()
}

/// Whether the lift rises when leaving strand `s` through `end`.
fn climbs(
    d: &Diagram,
    st: &ColoringState,
    classes: &BTreeMap<u32, CrossingClass>,
    seed_pods: &BTreeSet<u32>,
    s: StrandId,
    end: StrandEnd,
) -> bool {
    match end {
        StrandEnd::Free(v) => seed_pods.contains(&v),
        StrandEnd::Under(label) => {
            if classes[&label] != CrossingClass::Monotone {
                return false;
            }
            let c = d.crossing(label).expect("strand ends at a crossing");
            let other = if c.under_in == s { c.under_out } else { c.under_in };
            height(st, other) > height(st, s)
        }
    }
}

pub(crate) fn lower_count(d: &Diagram, st: &ColoringState, witness: &[SeedItem]) -> LowerCount {
    let classes = classify_crossings(d, st);
    let seed_pods: BTreeSet<u32> = witness
        .iter()
        .filter_map(|i| match i {
            SeedItem::Pod(v) => Some(*v),
            SeedItem::Arc(_) => None,
        })
        .collect();
    let mut closed = 0;
    let mut valleys = 0;
    for s in d.strands() {
        match (s.start, s.end) {
            (Some(a), Some(b)) => {
                valleys += (climbs(d, st, &classes, &seed_pods, s.id, a)
                    && climbs(d, st, &classes, &seed_pods, s.id, b)) as usize
            }
            _ => closed += (s.kind == StrandKind::Closed) as usize,
        }
    }
    let count = |k| classes.values().filter(|&&c| c == k).count();
    LowerCount {
        multi: count(CrossingClass::MinimumMulti),
        same: count(CrossingClass::MinimumSame),
        closed,
        valleys,
        lower_pods: d.pods().len() - seed_pods.len(),
    }
}

/// Checks that every color class is one connected chain of strands (arc
/// seed) or a union of chains each reaching its seed pod (pod seed), where
/// strands are adjacent when they meet at an under-passage.
pub fn check_color_connectivity(
    d: &Diagram,
    st: &ColoringState,
    witness: &[SeedItem],
) -> Result<(), WirtError> {
    let n = d.strand_count();
    let mut seen = vec![false; n];
    for start in 0..n {
        let Some(color) = st.color[start] else {
            continue;
        };
        if seen[start] {
            continue;
        }
        // flood the same-colored component through under-passages
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(s) = queue.pop_front() {
            comp.push(s);
            for t in d.under_neighbours(s) {
                if !seen[t] && st.color[t] == Some(color) {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        let seed = witness[color as usize];
        let ok = match seed {
            SeedItem::Arc(s) => comp.contains(&s),
            SeedItem::Pod(v) => comp.iter().any(|s| d.pod(v).contains(s)),
        };
        if !ok {
            return Err(WirtError::LemmaViolation(format!(
                "color {color} ({seed}) has a component {comp:?} detached from its seed"
            )));
        }
    }
    Ok(())
}

fn check_minimum_uniqueness(
    d: &Diagram,
    st: &ColoringState,
    witness: &[SeedItem],
    classes: &BTreeMap<u32, CrossingClass>,
) -> Result<(), WirtError> {
    let mut per_color: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (&label, &class) in classes {
        if class == CrossingClass::MinimumSame {
            let c = d.crossing(label).expect("classified crossing exists");
            let color = st.color[c.under_in].expect("complete coloring");
            per_color.entry(color).or_default().push(label);
        }
    }
    for (color, labels) in per_color {
        match witness[color as usize] {
            SeedItem::Arc(_) => {
                if labels.len() > 1 {
                    return Err(WirtError::LemmaViolation(format!(
                        "color {color} closes up at several crossings {labels:?}"
                    )));
                }
            }
            SeedItem::Pod(v) => {
                let mut per_edge: BTreeMap<Carrier, u32> = BTreeMap::new();
                for label in labels {
                    let c = d.crossing(label).expect("classified crossing exists");
                    let carrier = d.strand(c.under_in).carrier;
                    let on_loop = match carrier {
                        Carrier::Edge(e) => {
                            d.is_loop_edge(e)
                                && d.strands()
                                    .iter()
                                    .filter(|s| s.carrier == carrier)
                                    .flat_map(|s| s.end_vertices.iter())
                                    .all(|&w| w == v)
                        }
                        Carrier::Cycle(_) => false,
                    };
                    if !on_loop {
                        return Err(WirtError::LemmaViolation(format!(
                            "crossing {label} closes pod color {color} off a self-loop at {v}"
                        )));
                    }
                    if let Some(prev) = per_edge.insert(carrier, label) {
                        return Err(WirtError::LemmaViolation(format!(
                            "self-loop at {v} closes at both crossings {prev} and {label}"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Heights, crossing classes and tangle counts for a complete coloring,
/// after checking color connectivity and minimum uniqueness.
pub fn embedding_certificate(
    d: &Diagram,
    r: &WirtingerResult,
) -> Result<EmbeddingCertificate, WirtError> {
    if !r.fully_colored {
        return Err(WirtError::NotFullyColored);
    }
    let st = &r.final_state;
    check_color_connectivity(d, st, &r.witness)?;
    let crossing_class = classify_crossings(d, st);
    check_minimum_uniqueness(d, st, &r.witness, &crossing_class)?;
    let lower = lower_count(d, st, &r.witness);
    let upper_pods = r.witness.iter().filter(|i| i.is_pod()).count();
    Ok(EmbeddingCertificate {
        height: (0..d.strand_count()).map(|s| height(st, s)).collect(),
        crossing_class,
        upper_pods,
        maxima: r.witness.len() - upper_pods,
        minima: lower.minima(),
        lower_pods: lower.lower_pods,
    })
}

/// Upper and lower tangle sizes with the Euler identity
/// `chi = tau1 + tau2 - sum of upper degrees` checked.
pub fn tangle_report(d: &Diagram, r: &WirtingerResult) -> Result<TangleReport, WirtError> {
    if !r.fully_colored {
        return Err(WirtError::NotFullyColored);
    }
    let degrees: Vec<usize> = r
        .witness
        .iter()
        .map(|i| match *i {
            SeedItem::Pod(v) => d.degree(v),
            SeedItem::Arc(_) => 2,
        })
        .collect();
    let degree_sum: usize = degrees.iter().sum();
    let chi = d.euler_characteristic();
    let tau1 = r.omega;
    let tau2 = r.tau2;
    if chi != tau1 as i64 + tau2 as i64 - degree_sum as i64 {
        return Err(WirtError::Consistency {
            chi,
            tau1,
            tau2,
            degree_sum,
        });
    }
    Ok(TangleReport {
        tau1,
        tau2,
        degrees,
        degree_sum,
        chi,
    })
}
