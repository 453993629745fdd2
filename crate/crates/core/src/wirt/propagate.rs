use serde::{Deserialize, Serialize};

use super::SeedItem;
use crate::diagram::{Diagram, StrandId};

/// The crossing move that colored a strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSource {
    pub crossing: u32,
    /// The under-strand the color was copied from.
    pub from: StrandId,
}

/// Strand colors and the stage at which each was set. Seeds have stage 0;
/// the j-th move has stage j. Colors are indices into the seed list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringState {
    pub color: Vec<Option<u32>>,
    pub stage: Vec<Option<u32>>,
    pub source: Vec<Option<MoveSource>>,
}

impl ColoringState {
    fn new(n: usize) -> Self {
        ColoringState {
            color: vec![None; n],
            stage: vec![None; n],
            source: vec![None; n],
        }
    }

    pub fn is_complete(&self) -> bool {
        self.color.iter().all(Option::is_some)
    }

    pub fn colored_count(&self) -> usize {
        self.color.iter().filter(|c| c.is_some()).count()
    }

    /// Number of moves applied.
    pub fn moves(&self) -> u32 {
        self.stage.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Non-seed strands in the order they were colored.
    pub fn move_order(&self) -> Vec<StrandId> {
        let mut order: Vec<(u32, StrandId)> = self
            .stage
            .iter()
            .enumerate()
            .filter_map(|(s, st)| st.filter(|&j| j > 0).map(|j| (j, s)))
            .collect();
        order.sort_unstable();
        order.into_iter().map(|(_, s)| s).collect()
    }
}

/// Least fixpoint of the coloring move from `seeds`, with recorded stages.
///
/// Each round scans the crossings in ascending label order and applies
/// every move that has become available; rounds repeat until nothing
/// changes. Colors are never overwritten, so an arc seed on a strand that an
/// earlier pod seed already covers adds nothing.
pub fn propagate(d: &Diagram, seeds: &[SeedItem]) -> ColoringState {
    let mut st = ColoringState::new(d.strand_count());
    for (color, item) in seeds.iter().enumerate() {
        for s in item.strands(d) {
            if st.color[s].is_none() {
                st.color[s] = Some(color as u32);
                st.stage[s] = Some(0);
            }
        }
    }
    let mut stage = 0u32;
    loop {
        let mut changed = false;
        for c in d.crossings() {
            if st.color[c.over].is_none() {
                continue;
            }
            let (from, to) = match (st.color[c.under_in], st.color[c.under_out]) {
                (Some(_), None) => (c.under_in, c.under_out),
                (None, Some(_)) => (c.under_out, c.under_in),
                _ => continue,
            };
            stage += 1;
            st.color[to] = st.color[from];
            st.stage[to] = Some(stage);
            st.source[to] = Some(MoveSource {
                crossing: c.label,
                from,
            });
            changed = true;
        }
        if !changed {
            break;
        }
    }
    st
}

/// Allocation-free saturation of the colored set, for the search.
///
/// Only which strands end up colored matters for colorability, and that set
/// does not depend on the order moves are applied in, so a crossing-indexed
/// worklist suffices.
pub struct Saturator<'d> {
    d: &'d Diagram,
    colored: Vec<u64>,
    stack: Vec<u32>,
}

impl<'d> Saturator<'d> {
    pub fn new(d: &'d Diagram) -> Self {
        Saturator {
            d,
            colored: vec![0; d.strand_count().div_ceil(64)],
            stack: Vec::with_capacity(d.crossings().len()),
        }
    }

    #[inline]
    fn is_set(&self, s: usize) -> bool {
        self.colored[s >> 6] >> (s & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, s: usize) -> bool {
        let word = &mut self.colored[s >> 6];
        let bit = 1u64 << (s & 63);
        let fresh = *word & bit == 0;
        *word |= bit;
        if fresh {
            self.stack.extend_from_slice(self.d.incident(s));
        }
        fresh
    }

    /// Colors the given strands and saturates; returns the colored count.
    pub fn saturate<I>(&mut self, seeds: I) -> usize
    where
        I: IntoIterator<Item = StrandId>,
    {
        self.colored.fill(0);
        self.stack.clear();
        let mut count = 0;
        for s in seeds {
            count += self.set(s) as usize;
        }
        let crossings = self.d.crossings();
        while let Some(ci) = self.stack.pop() {
            let c = crossings[ci as usize];
            if !self.is_set(c.over) {
                continue;
            }
            match (self.is_set(c.under_in), self.is_set(c.under_out)) {
                (true, false) => count += self.set(c.under_out) as usize,
                (false, true) => count += self.set(c.under_in) as usize,
                _ => {}
            }
        }
        count
    }

    pub fn is_colored(&self, s: StrandId) -> bool {
        self.is_set(s)
    }
}

/// Strands colored at the fixpoint from `seeds`, via the worklist engine.
pub fn colored_set(d: &Diagram, seeds: &[SeedItem]) -> Vec<bool> {
    let mut sat = Saturator::new(d);
    sat.saturate(seeds.iter().flat_map(|i| i.strands(d)));
    (0..d.strand_count()).map(|s| sat.is_colored(s)).collect()
}
