#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use wirtgraph::gauss::{parse_any, split_codes, EdgeCode, Endpoint, LinkGaussCode, SpatialGaussCode};
use wirtgraph::wirt::seed_items;
use wirtgraph::{Diagram, FiniteQuandle, SeedItem};

pub fn fixture_text(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Every code in a fixture file, labeled `file:line`.
pub fn fixture_codes(name: &str) -> Vec<(String, String)> {
    split_codes(&fixture_text(name))
        .unwrap()
        .into_iter()
        .map(|(line, code)| (format!("{name}:{line}"), code))
        .collect()
}

pub fn diagram(code: &str) -> Diagram {
    Diagram::from_code(&parse_any(code).unwrap()).unwrap()
}

pub const SINGLE_FIXTURES: &[&str] = &[
    "fig5.sg",
    "fig3_standin.sg",
    "fig14_standin.sg",
    "trivial_theta.sg",
    "trefoil.lk",
    "figure_eight.lk",
    "unknot.lk",
];

/// All fixture diagrams: the named figures, the torus family and the
/// two-component corpus.
pub fn all_fixtures() -> Vec<(String, Diagram)> {
    SINGLE_FIXTURES
        .iter()
        .chain(["torus_2.lk", "links2.lk"].iter())
        .flat_map(|f| fixture_codes(f))
        .map(|(name, code)| {
            let d = diagram(&code);
            (name, d)
        })
        .collect()
}

pub fn builtin_quandles() -> Vec<(String, FiniteQuandle)> {
    let mut qs: Vec<(String, FiniteQuandle)> = [3, 4, 5, 7]
        .iter()
        .map(|&n| (format!("dihedral:{n}"), FiniteQuandle::dihedral(n)))
        .collect();
    qs.push(("alexander:4".into(), FiniteQuandle::alexander4()));
    qs.extend([1, 2, 3].iter().map(|&n| (format!("trivial:{n}"), FiniteQuandle::trivial(n))));
    qs
}

// ---- naive oracles ----

/// Colored set after repeated full rescans of all crossings.
pub fn naive_colored(d: &Diagram, seeds: &[SeedItem]) -> Vec<bool> {
    let mut colored = vec![false; d.strand_count()];
    for s in seeds {
        match *s {
            SeedItem::Arc(a) => colored[a] = true,
            SeedItem::Pod(v) => {
                for &a in d.pod(v) {
                    colored[a] = true;
                }
            }
        }
    }
    loop {
        let mut changed = false;
        for c in d.crossings() {
            if colored[c.over] && colored[c.under_in] != colored[c.under_out] {
                colored[c.under_in] = true;
                colored[c.under_out] = true;
                changed = true;
            }
        }
        if !changed {
            return colored;
        }
    }
}

fn combos(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        combos(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Smallest k and the first k-subset in lexicographic order of items that
/// colors everything, by brute force.
pub fn naive_wirtinger(d: &Diagram) -> (usize, Vec<SeedItem>) {
    let items = seed_items(d);
    for k in 1..=items.len() {
        let mut all = Vec::new();
        combos(items.len(), k, 0, &mut Vec::new(), &mut all);
        for c in all {
            let seeds: Vec<SeedItem> = c.iter().map(|&i| items[i]).collect();
            if naive_colored(d, &seeds).iter().all(|&b| b) {
                return (k, seeds);
            }
        }
    }
    unreachable!("seeding every item colors everything")
}

/// Colored set when moves are applied one at a time in a random order.
pub fn random_order_colored(d: &Diagram, seeds: &[SeedItem], rng: &mut impl Rng) -> Vec<bool> {
    let mut colored = naive_seeded(d, seeds);
    let mut order: Vec<usize> = (0..d.crossings().len()).collect();
    loop {
        order.shuffle(rng);
        let next = order.iter().find(|&&i| {
            let c = &d.crossings()[i];
            colored[c.over] && colored[c.under_in] != colored[c.under_out]
        });
        match next {
            Some(&i) => {
                let c = &d.crossings()[i];
                colored[c.under_in] = true;
                colored[c.under_out] = true;
            }
            None => return colored,
        }
    }
}

fn naive_seeded(d: &Diagram, seeds: &[SeedItem]) -> Vec<bool> {
    let mut colored = vec![false; d.strand_count()];
    for s in seeds {
        for a in s.strands(d) {
            colored[a] = true;
        }
    }
    colored
}

/// Quandle colorings by enumerating every labeling of every strand.
pub fn brute_force_count(d: &Diagram, q: &FiniteQuandle) -> u64 {
    let n = q.order() as u64;
    let m = d.strand_count() as u32;
    let mut count = 0;
    let mut label = vec![0u32; m as usize];
    for mut idx in 0..n.pow(m) {
        for l in label.iter_mut() {
            *l = (idx % n) as u32;
            idx /= n;
        }
        let crossings_ok = d
            .crossings()
            .iter()
            .all(|c| q.op(label[c.under_in], label[c.over]) == label[c.under_out]);
        let pods_ok = d
            .pods()
            .values()
            .all(|p| p.iter().all(|&s| label[s] == label[p[0]]));
        count += (crossings_ok && pods_ok) as u64;
    }
    count
}

// ---- random diagrams ----

pub fn random_braid_word(rng: &mut impl Rng, strands: usize, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let g = rng.random_range(1..strands as i32);
            if rng.random_bool(0.6) {
                g
            } else {
                -g
            }
        })
        .collect()
}

/// Crossing labels shifted past the vertex numbers used below.
pub fn shifted(link: &LinkGaussCode, by: i32) -> LinkGaussCode {
    LinkGaussCode {
        components: link
            .components
            .iter()
            .map(|c| c.iter().map(|&e| e + by * e.signum()).collect())
            .collect(),
    }
}

/// A theta graph: a knot cut at two points into edges `a` and `b`, plus a
/// crossing-free edge `c` between the cut points.
pub fn theta_from_knot(knot: &[i32], i: usize, j: usize) -> SpatialGaussCode {
    let (i, j) = (i.min(j), i.max(j));
    let a: Vec<i32> = knot[i..j].to_vec();
    let b: Vec<i32> = knot[j..].iter().chain(&knot[..i]).copied().collect();
    SpatialGaussCode {
        edges: vec![
            EdgeCode::new(Endpoint::new('a', 1), a, Endpoint::new('a', 2)),
            EdgeCode::new(Endpoint::new('b', 2), b, Endpoint::new('b', 1)),
            EdgeCode::new(Endpoint::new('c', 1), vec![], Endpoint::new('c', 2)),
        ],
    }
}

/// A handcuff graph: each component of a two-component link becomes a loop
/// at its own vertex, joined by a crossing-free edge.
pub fn handcuff_from_link(link: &LinkGaussCode, i: usize, j: usize) -> SpatialGaussCode {
    let rot = |c: &[i32], k: usize| -> Vec<i32> {
        let k = if c.is_empty() { 0 } else { k % c.len() };
        c[k..].iter().chain(&c[..k]).copied().collect()
    };
    SpatialGaussCode {
        edges: vec![
            EdgeCode::new(Endpoint::new('a', 1), rot(&link.components[0], i), Endpoint::new('b', 1)),
            EdgeCode::new(Endpoint::new('c', 2), rot(&link.components[1], j), Endpoint::new('d', 2)),
            EdgeCode::new(Endpoint::new('e', 1), vec![], Endpoint::new('e', 2)),
        ],
    }
}
