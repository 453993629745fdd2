//! Theta-4 graphs from two-component links.
//!
//! A crossing pair `(x, y)` is singularizable when `x` and `y` are both
//! over-passages of one component and under-passages of the other. Replacing
//! both crossings by 4-valent vertices cuts each component into two arcs, and
//! the four arcs become the edges of a graph with two vertices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::GenerateError;
use crate::exec::{self, Exec};
use crate::gauss::{EdgeCode, Endpoint, LinkGaussCode, SpatialGaussCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularizablePair {
    /// The smaller label; becomes vertex 1.
    pub x: u32,
    pub y: u32,
    /// Indices of `±x` and `±y` in the first component, then in the second.
    pub positions: [usize; 4],
    /// Passages strictly inside the arcs `x→y` and `y→x` of the first
    /// component, then of the second.
    pub arc_lengths: [usize; 4],
}

impl SingularizablePair {
    pub fn min_arc(&self) -> usize {
        self.arc_lengths.iter().copied().min().unwrap_or(0)
    }
}

fn index_of(comp: &[i32], value: i32) -> Option<usize> {
    comp.iter().position(|&e| e == value)
}

/// Entries strictly between positions `from` and `to`, read cyclically.
fn cyclic_between(comp: &[i32], from: usize, to: usize) -> Vec<i32> {
    let n = comp.len();
    let len = (to + n - from) % n;
    (1..len).map(|i| comp[(from + i) % n]).collect()
}

fn locate(link: &LinkGaussCode, x: u32, y: u32) -> Option<[usize; 4]> {
    let [c1, c2] = link.components.as_slice() else {
        return None;
    };
    let (x, y) = (x as i32, y as i32);
    for sign in [1, -1] {
        let found = (
            index_of(c1, sign * x),
            index_of(c1, sign * y),
            index_of(c2, -sign * x),
            index_of(c2, -sign * y),
        );
        if let (Some(a), Some(b), Some(c), Some(d)) = found {
            return Some([a, b, c, d]);
        }
    }
    None
}

fn pair_at(link: &LinkGaussCode, x: u32, y: u32) -> Option<SingularizablePair> {
    let positions = locate(link, x, y)?;
    let (c1, c2) = (&link.components[0], &link.components[1]);
    let [p, q, r, s] = positions;
    Some(SingularizablePair {
        x,
        y,
        positions,
        arc_lengths: [
            cyclic_between(c1, p, q).len(),
            cyclic_between(c1, q, p).len(),
            cyclic_between(c2, r, s).len(),
            cyclic_between(c2, s, r).len(),
        ],
    })
}

/// Every singularizable pair whose four arcs each carry at least `min_arc`
/// passages, ordered by `(x, y)`.
pub fn singularizable_pairs(
    link: &LinkGaussCode,
    min_arc: usize,
) -> Result<Vec<SingularizablePair>, GenerateError> {
    if link.components.len() != 2 {
        return Err(GenerateError::Arity(link.components.len()));
    }
    // inter-component crossings, by which component holds the over-passage
    let mut over_in_first: Vec<u32> = link.components[0]
        .iter()
        .filter(|&&e| e > 0 && link.components[1].contains(&-e))
        .map(|&e| e as u32)
        .collect();
    let mut over_in_second: Vec<u32> = link.components[1]
        .iter()
        .filter(|&&e| e > 0 && link.components[0].contains(&-e))
        .map(|&e| e as u32)
        .collect();
    over_in_first.sort_unstable();
    over_in_second.sort_unstable();
    let mut pairs = Vec::new();
    for group in [&over_in_first, &over_in_second] {
        for (i, &x) in group.iter().enumerate() {
            for &y in &group[i + 1..] {
                if let Some(p) = pair_at(link, x, y) {
                    if p.min_arc() >= min_arc {
                        pairs.push(p);
                    }
                }
            }
        }
    }
    pairs.sort_unstable_by_key(|p| (p.x, p.y));
    Ok(pairs)
}

/// The Theta-4 code obtained by turning crossings `x` (vertex 1) and `y`
/// (vertex 2) into vertices. Edges `a`, `b` come from the first component,
/// `c`, `d` from the second, each oriented along its component; surviving
/// crossings are renumbered from 3 in order of first appearance.
pub fn singularize(
    link: &LinkGaussCode,
    pair: &SingularizablePair,
) -> Result<SpatialGaussCode, GenerateError> {
    if link.components.len() != 2 {
        return Err(GenerateError::Arity(link.components.len()));
    }
    let (x, y) = (pair.x.min(pair.y), pair.x.max(pair.y));
    let [p, q, r, s] = locate(link, x, y).ok_or(GenerateError::NotSingularizable { x, y })?;
    let (c1, c2) = (&link.components[0], &link.components[1]);
    let arcs = [
        cyclic_between(c1, p, q),
        cyclic_between(c1, q, p),
        cyclic_between(c2, r, s),
        cyclic_between(c2, s, r),
    ];
    let mut relabel: HashMap<u32, i32> = HashMap::new();
    let mut next = 3;
    let edges = arcs
        .into_iter()
        .zip(['a', 'b', 'c', 'd'])
        .enumerate()
        .map(|(i, (arc, slot))| {
            let passages = arc
                .into_iter()
                .map(|e| {
                    let label = *relabel.entry(e.unsigned_abs()).or_insert_with(|| {
                        next += 1;
                        next - 1
                    });
                    label * e.signum()
                })
                .collect();
            // even arcs run from vertex 1 to vertex 2, odd arcs back
            let (from, to) = if i % 2 == 0 { (1, 2) } else { (2, 1) };
            EdgeCode::new(Endpoint::new(slot, from), passages, Endpoint::new(slot, to))
        })
        .collect();
    Ok(SpatialGaussCode { edges })
}

/// One generated graph code and where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generated {
    pub source: usize,
    pub x: u32,
    pub y: u32,
    pub output_id: usize,
    pub code: SpatialGaussCode,
}

/// Singularizes every qualifying pair of every link. Output ids run
/// consecutively in input order, then pair order; per-link failures are
/// returned alongside the input index and do not stop the batch.
pub fn generate_batch(
    links: &[LinkGaussCode],
    min_arc: usize,
    exec: Exec,
) -> (Vec<Generated>, Vec<(usize, GenerateError)>) {
    let per_link = exec::map(exec, links, |link| {
        singularizable_pairs(link, min_arc).and_then(|pairs| {
            pairs
                .iter()
                .map(|p| singularize(link, p).map(|code| (*p, code)))
                .collect::<Result<Vec<_>, _>>()
        })
    });
    let mut out = Vec::new();
    let mut failures = Vec::new();
    for (source, res) in per_link.into_iter().enumerate() {
        match res {
            Ok(codes) => {
                for (p, code) in codes {
                    out.push(Generated {
                        source,
                        x: p.x,
                        y: p.y,
                        output_id: out.len(),
                        code,
                    });
                }
            }
            Err(e) => failures.push((source, e)),
        }
    }
    (out, failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{parse_link_gauss, validate_spatial};

    fn link(s: &str) -> LinkGaussCode {
        parse_link_gauss(s).unwrap()
    }

    #[test]
    fn pairs_of_four_crossing_link() {
        let l = link("[[1,-2,3,-4],[-1,2,-3,4]]");
        let pairs = singularizable_pairs(&l, 0).unwrap();
        let xy: Vec<_> = pairs.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(xy, vec![(1, 3), (2, 4)]);
        assert_eq!(pairs[0].arc_lengths, [1, 1, 1, 1]);
        assert!(singularizable_pairs(&l, 2).unwrap().is_empty());
    }

    #[test]
    fn intra_component_crossings_never_pair() {
        assert!(singularizable_pairs(&link("[[1,-1],[2,-2]]"), 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn arity_checked() {
        assert_eq!(
            singularizable_pairs(&link("[[1,-2,3,-1,2,-3]]"), 0),
            Err(GenerateError::Arity(1))
        );
    }

    #[test]
    fn singularize_cut_and_relabel() {
        let l = link("[[1,-2,3,-4],[-1,2,-3,4]]");
        let p = singularizable_pairs(&l, 0).unwrap()[0];
        let g = singularize(&l, &p).unwrap();
        assert_eq!(
            g.to_string(),
            "[[a1, -3, a2], [b2, -4, b1], [c1, 3, c2], [d2, 4, d1]]"
        );
        assert!(validate_spatial(&g).ok);
        assert_eq!((g.degree(1), g.degree(2)), (4, 4));
    }

    #[test]
    fn positives_in_second_component() {
        let l = link("[[-1,5,-2,6],[1,-5,2,-6]]");
        let pairs = singularizable_pairs(&l, 0).unwrap();
        let xy: Vec<_> = pairs.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(xy, vec![(1, 2), (5, 6)]);
        let g = singularize(&l, &pairs[0]).unwrap();
        assert!(validate_spatial(&g).ok);
        assert_eq!(g.crossing_count(), 2);
    }

    #[test]
    fn batch_ids_follow_input_order() {
        let links = vec![
            link("[[1,-2,3,-4],[-1,2,-3,4]]"),
            link("[[1,-2,3,-1,2,-3]]"),
            link("[[1,-2,3,-4],[-1,2,-3,4]]"),
        ];
        for exec in [Exec::Sequential, Exec::Parallel] {
            let (out, failures) = generate_batch(&links, 0, exec);
            assert_eq!(out.len(), 4);
            assert_eq!(out[2].source, 2);
            assert!(out.iter().enumerate().all(|(i, g)| g.output_id == i));
            assert_eq!(failures, vec![(1, GenerateError::Arity(1))]);
        }
    }
}
