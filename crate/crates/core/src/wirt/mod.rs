//! Wirtinger colorings of truncated diagrams.
//!
//! A seed set colors some strands: a pod seed gives every strand with a free
//! end at its vertex one shared color, an arc seed colors a single strand.
//! The coloring move then spreads colors across crossings: when the
//! over-strand is colored and exactly one under-strand is, the other
//! under-strand takes that under-strand's color. The Wirtinger number of a
//! diagram is the fewest seeds whose moves color every strand.

mod certificate;
mod propagate;
mod search;

use serde::{Deserialize, Serialize};

pub use certificate::{
    check_color_connectivity, classify_crossings, embedding_certificate, tangle_report,
    CrossingClass, EmbeddingCertificate, TangleReport,
};
pub use propagate::{colored_set, propagate, ColoringState, MoveSource, Saturator};
pub use search::{is_k_colorable, seed_items, wirtinger_number, SearchOptions, SearchStats};

use crate::diagram::{Diagram, StrandId};

/// One seed: a whole pod or a single strand.
///
/// The derived order (pods before arcs, then by number) is the enumeration
/// order of the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedItem {
    Pod(u32),
    Arc(StrandId),
}

impl SeedItem {
    /// Strands this item colors, in pod order for pods.
    pub fn strands(&self, d: &Diagram) -> Vec<StrandId> {
        match *self {
            SeedItem::Pod(v) => {
                let mut s = d.pod(v).to_vec();
                s.dedup();
                s
            }
            SeedItem::Arc(s) => vec![s],
        }
    }

    pub fn is_pod(&self) -> bool {
        matches!(self, SeedItem::Pod(_))
    }
}

impl std::fmt::Display for SeedItem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeedItem::Pod(v) => write!(f, "pod({v})"),
            SeedItem::Arc(s) => write!(f, "arc({s})"),
        }
    }
}

/// Outcome of a Wirtinger number computation on one diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirtingerResult {
    pub omega: usize,
    pub witness: Vec<SeedItem>,
    pub final_state: ColoringState,
    pub fully_colored: bool,
    /// Crossings whose two under-strands end up with different colors.
    pub multicolored_crossings: Vec<u32>,
    /// Components of the lower tangle in the bridge position built from
    /// the coloring.
    pub tau2: usize,
}

impl WirtingerResult {
    /// Propagates `witness` and fills in the derived counts.
    pub fn from_witness(d: &Diagram, witness: Vec<SeedItem>) -> WirtingerResult {
        let final_state = propagate(d, &witness);
        let fully_colored = final_state.is_complete();
        let multicolored_crossings = d
            .crossings()
            .iter()
            .filter(|c| {
                let a = final_state.color[c.under_in];
                let b = final_state.color[c.under_out];
                a.is_some() && b.is_some() && a != b
            })
            .map(|c| c.label)
            .collect();
        let tau2 = if fully_colored {
            certificate::lower_count(d, &final_state, &witness).total()
        } else {
            0
        };
        WirtingerResult {
            omega: witness.len(),
            witness,
            final_state,
            fully_colored,
            multicolored_crossings,
            tau2,
        }
    }

    /// Pods of the diagram that are not seeds.
    pub fn non_seed_pods(&self, d: &Diagram) -> usize {
        d.pods()
            .keys()
            .filter(|&&v| !self.witness.contains(&SeedItem::Pod(v)))
            .count()
    }
}
