use serde::{Deserialize, Serialize};

use super::{propagate::Saturator, SeedItem, WirtingerResult};
use crate::diagram::{Diagram, StrandId, StrandKind};
use crate::error::WirtError;
use crate::exec::{self, Exec};

/// Seed sets evaluated per batch; the batch is the unit of parallel work and
/// of budget accounting.
const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Largest seed count tried; `None` means every seed item.
    pub max_k: Option<usize>,
    /// Only try seed sets containing at least one pod. Ignored for diagrams
    /// without vertices.
    pub require_pod_seed: bool,
    /// Maximum number of seed sets propagated before giving up.
    pub budget: Option<u64>,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_k: None,
            require_pod_seed: false,
            budget: None,
            exec: Exec::Parallel,
        }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions {
            exec: Exec::Sequential,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Seed sets propagated.
    pub tried: u64,
}

/// All seed items in enumeration order: pods by vertex, then strands by id.
pub fn seed_items(d: &Diagram) -> Vec<SeedItem> {
    d.pods()
        .keys()
        .map(|&v| SeedItem::Pod(v))
        .chain((0..d.strand_count()).map(SeedItem::Arc))
        .collect()
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    idx: Vec<usize>,
    n: usize,
    fresh: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Option<Self> {
        (k <= n).then(|| Combinations {
            idx: (0..k).collect(),
            n,
            fresh: true,
        })
    }

    fn advance(&mut self) -> Option<&[usize]> {
        if self.fresh {
            self.fresh = false;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
        None
    }
}

struct Searcher<'d> {
    d: &'d Diagram,
    items: Vec<SeedItem>,
    item_strands: Vec<Vec<StrandId>>,
    /// Items every successful seed set must contain: closed strands cannot
    /// be reached by any move.
    forced: Vec<usize>,
    free: Vec<usize>,
    pod_count: usize,
}

impl<'d> Searcher<'d> {
    fn new(d: &'d Diagram) -> Self {
        let items = seed_items(d);
        let item_strands = items.iter().map(|i| i.strands(d)).collect();
        let pod_count = d.pods().len();
        let (forced, free) = (0..items.len()).partition(|&i| match items[i] {
            SeedItem::Arc(s) => d.strand(s).kind == StrandKind::Closed,
            SeedItem::Pod(_) => false,
        });
        Searcher {
            d,
            items,
            item_strands,
            forced,
            free,
            pod_count,
        }
    }

    fn colors_all(&self, sat: &mut Saturator<'_>, combo: &[u32]) -> bool {
        let strands = combo
            .iter()
            .flat_map(|&i| self.item_strands[i as usize].iter().copied());
        sat.saturate(strands) == self.d.strand_count()
    }

    /// First seed set of size `k` in enumeration order that colors everything.
    fn search_k(
        &self,
        k: usize,
        opts: &SearchOptions,
        stats: &mut SearchStats,
    ) -> Result<Option<Vec<SeedItem>>, WirtError> {
        if k < self.forced.len() {
            return Ok(None);
        }
        let r = k - self.forced.len();
        let Some(mut combos) = Combinations::new(self.free.len(), r) else {
            return Ok(None);
        };
        let need_pod = opts.require_pod_seed && self.pod_count > 0;
        let mut buf: Vec<u32> = Vec::with_capacity(CHUNK * k.max(1));
        let mut exhausted = false;
        while !exhausted {
            buf.clear();
            let mut rows = 0usize;
            let cap = match opts.budget {
                Some(b) => CHUNK.min(b.saturating_sub(stats.tried) as usize),
                None => CHUNK,
            };
            while rows < cap {
                let Some(c) = combos.advance() else {
                    exhausted = true;
                    break;
                };
                // pods come first among the free items
                if need_pod && c.first().is_none_or(|&i| self.free[i] >= self.pod_count) {
                    continue;
                }
                let start = buf.len();
                buf.extend(c.iter().map(|&i| self.free[i] as u32));
                buf.extend(self.forced.iter().map(|&i| i as u32));
                buf[start..].sort_unstable();
                rows += 1;
            }
            if cap == 0 {
                // budget spent: fail only if an eligible seed set remains
                let remains = std::iter::from_fn(|| combos.advance().map(<[usize]>::to_vec))
                    .any(|c| !need_pod || c.first().is_some_and(|&i| self.free[i] < self.pod_count));
                if remains {
                    return Err(WirtError::BudgetExceeded {
                        budget: opts.budget.unwrap_or(0),
                        k,
                    });
                }
                return Ok(None);
            }
            let width = k;
            let hit = exec::first_index(
                opts.exec,
                rows,
                || Saturator::new(self.d),
                |sat, row| self.colors_all(sat, &buf[row * width..(row + 1) * width]),
            );
            if let Some(row) = hit {
                stats.tried += row as u64 + 1;
                let combo = &buf[row * width..(row + 1) * width];
                return Ok(Some(combo.iter().map(|&i| self.items[i as usize]).collect()));
            }
            stats.tried += rows as u64;
        }
        Ok(None)
    }
}

/// First seed set of size `k` (pods before arcs, ascending, lexicographic)
/// whose propagation colors every strand.
pub fn is_k_colorable(
    d: &Diagram,
    k: usize,
    opts: &SearchOptions,
) -> Result<Option<Vec<SeedItem>>, WirtError> {
    let mut stats = SearchStats::default();
    Searcher::new(d).search_k(k, opts, &mut stats)
}

/// Smallest `k` with a coloring witness, the witness itself and the derived
/// bridge data.
pub fn wirtinger_number(d: &Diagram, opts: &SearchOptions) -> Result<WirtingerResult, WirtError> {
    wirtinger_number_with_stats(d, opts).map(|(r, _)| r)
}

pub fn wirtinger_number_with_stats(
    d: &Diagram,
    opts: &SearchOptions,
) -> Result<(WirtingerResult, SearchStats), WirtError> {
    let searcher = Searcher::new(d);
    let max_k = opts.max_k.unwrap_or(searcher.items.len());
    let mut stats = SearchStats::default();
    for k in 1..=max_k {
        if let Some(w) = searcher.search_k(k, opts, &mut stats)? {
            return Ok((WirtingerResult::from_witness(d, w), stats));
        }
    }
    Err(WirtError::NotFoundWithinBound { max_k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{parse_link_gauss, parse_spatial_gauss};

    #[test]
    fn combinations_lexicographic() {
        let mut c = Combinations::new(4, 2).unwrap();
        let mut all = Vec::new();
        while let Some(x) = c.advance() {
            all.push(x.to_vec());
        }
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut c = Combinations::new(3, 0).unwrap();
        assert_eq!(c.advance(), Some(&[][..]));
        assert_eq!(c.advance(), None);
        assert!(Combinations::new(2, 3).is_none());
    }

    #[test]
    fn theta_k1() {
        let d = Diagram::from_spatial(&parse_spatial_gauss("[[a1, a2],[b1, b2],[c1, c2]]").unwrap())
            .unwrap();
        let w = is_k_colorable(&d, 1, &SearchOptions::default()).unwrap();
        assert_eq!(w, Some(vec![SeedItem::Pod(1)]));
    }

    #[test]
    fn trefoil_omega() {
        let d = Diagram::from_link(&parse_link_gauss("[[1,-2,3,-1,2,-3]]").unwrap()).unwrap();
        let r = wirtinger_number(&d, &SearchOptions::default()).unwrap();
        assert_eq!(r.omega, 2);
        assert_eq!(r.witness, vec![SeedItem::Arc(0), SeedItem::Arc(1)]);
        assert_eq!(r.multicolored_crossings.len(), 2);
        assert_eq!(r.tau2, 2);
    }

    #[test]
    fn closed_strands_forced() {
        // unlink of a crossing-free circle and a kinked circle
        let d = Diagram::from_link(&parse_link_gauss("[[],[1,-1]]").unwrap()).unwrap();
        let r = wirtinger_number(&d, &SearchOptions::default()).unwrap();
        assert_eq!(r.omega, 2);
        assert!(r.witness.contains(&SeedItem::Arc(1)));
    }

    #[test]
    fn budget_reported() {
        let d = Diagram::from_link(&crate::gauss::LinkGaussCode::torus_2(7)).unwrap();
        let opts = SearchOptions {
            budget: Some(3),
            ..SearchOptions::sequential()
        };
        assert!(matches!(
            wirtinger_number(&d, &opts),
            Err(WirtError::BudgetExceeded { budget: 3, .. })
        ));
        let opts = SearchOptions {
            budget: Some(1_000),
            ..SearchOptions::sequential()
        };
        assert_eq!(wirtinger_number(&d, &opts).unwrap().omega, 2);
    }

    #[test]
    fn require_pod_seed_restricts() {
        let d = Diagram::from_spatial(
            &parse_spatial_gauss(
                "[[a1, 3, -4, a2], [b1, -5, 6, 7, -8, 9, -7, 10, -11, 12, -10, -13, 14, b2], \
                 [c1, -9, 8, -3, 5, -6, 13, -14, 4, -12, 11, c2]]",
            )
            .unwrap(),
        )
        .unwrap();
        let opts = SearchOptions {
            require_pod_seed: true,
            ..Default::default()
        };
        let r = wirtinger_number(&d, &opts).unwrap();
        assert!(r.witness.iter().any(SeedItem::is_pod));
        assert!(r.fully_colored);
    }

}
