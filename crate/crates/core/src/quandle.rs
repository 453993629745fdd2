//! Finite quandles and coloring counts.
//!
//! A quandle coloring labels every strand with an element so that at each
//! crossing `under_in ▷ over = under_out`, and all strands with a free end at
//! one vertex share a label. Each coloring is determined by the labels of a
//! Wirtinger seed set, so `log_n(count)` bounds the bridge index from below.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, StrandId};
use crate::error::{QuandleError, WirtError};
use crate::exec::{self, Exec};
use crate::wirt::{self, SearchOptions, WirtingerResult};

/// Largest order for which homogeneity is decided by exhaustive search
/// without a budget.
pub const EXHAUSTIVE_ORDER: usize = 8;

/// A finite quandle on `0..order`, stored row-major: `x ▷ y` at `x * n + y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct FiniteQuandle {
    n: usize,
    table: Vec<u32>,
    /// `inv[y * n + z]` is the `x` with `x ▷ y = z`.
    inv: Vec<u32>,
}

/// Outcome of one axiom check; `witness` is a failing element tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub witness: Option<Vec<u32>>,
}

impl AxiomCheck {
    fn from_witness(witness: Option<Vec<u32>>) -> Self {
        AxiomCheck {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub order: usize,
    /// `x ▷ x = x`.
    pub idempotent: AxiomCheck,
    /// Every column map `x ↦ x ▷ y` is a bijection.
    pub right_invertible: AxiomCheck,
    /// `(x ▷ y) ▷ z = (x ▷ z) ▷ (y ▷ z)`.
    pub self_distributive: AxiomCheck,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.idempotent.holds && self.right_invertible.holds && self.self_distributive.holds
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |f: &mut fmt::Formatter<'_>, name: &str, c: &AxiomCheck| match &c.witness {
            None => writeln!(f, "{name}: pass"),
            Some(w) => writeln!(f, "{name}: FAIL at {w:?}"),
        };
        writeln!(f, "order: {}", self.order)?;
        line(f, "idempotent", &self.idempotent)?;
        line(f, "right-invertible", &self.right_invertible)?;
        line(f, "self-distributive", &self.self_distributive)
    }
}

fn check_shape(rows: &[Vec<u32>]) -> Result<usize, QuandleError> {
    let n = rows.len();
    if n == 0 {
        return Err(QuandleError::Malformed("empty table".into()));
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(QuandleError::Shape {
                row,
                len: r.len(),
                order: n,
            });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v as usize >= n) {
            return Err(QuandleError::OutOfRange {
                row,
                col,
                value,
                order: n,
            });
        }
    }
    Ok(n)
}

/// Checks the three quandle axioms on a square table `rows[x][y] = x ▷ y`.
pub fn check_quandle(rows: &[Vec<u32>]) -> Result<AxiomReport, QuandleError> {
    let n = check_shape(rows)?;
    let op = |x: usize, y: usize| rows[x][y] as usize;
    let idem = (0..n).find(|&x| op(x, x) != x).map(|x| vec![x as u32]);
    // two rows colliding in one column
    let bij = (0..n).find_map(|y| {
        let mut seen = vec![None; n];
        (0..n).find_map(|x| {
            seen[op(x, y)]
                .replace(x)
                .map(|x0| vec![x0 as u32, x as u32, y as u32])
        })
    });
    let dist = (0..n).find_map(|x| {
        (0..n).find_map(|y| {
            (0..n)
                .find(|&z| op(op(x, y), z) != op(op(x, z), op(y, z)))
                .map(|z| vec![x as u32, y as u32, z as u32])
        })
    });
    Ok(AxiomReport {
        order: n,
        idempotent: AxiomCheck::from_witness(idem),
        right_invertible: AxiomCheck::from_witness(bij),
        self_distributive: AxiomCheck::from_witness(dist),
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FiniteQuandle {
    /// Builds a quandle from rows `rows[x][y] = x ▷ y`, rejecting tables that
    /// fail an axiom.
    pub fn from_table(rows: Vec<Vec<u32>>) -> Result<Self, QuandleError> {
        let report = check_quandle(&rows)?;
        if !report.ok() {
            return Err(QuandleError::Axioms(report.to_string().trim().replace('\n', "; ")));
        }
        let n = rows.len();
        let table: Vec<u32> = rows.into_iter().flatten().collect();
        let mut inv = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                inv[y * n + table[x * n + y] as usize] = x as u32;
            }
        }
        Ok(FiniteQuandle { n, table, inv })
    }

    /// `x ▷ y = 2y - x mod n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0, "dihedral quandle of order 0");
        let rows = (0..n)
            .map(|x| (0..n).map(|y| ((2 * y + n - x) % n) as u32).collect())
            .collect();
        FiniteQuandle::from_table(rows).expect("dihedral tables are quandles")
    }

    /// The order-four Alexander quandle.
    pub fn alexander4() -> Self {
        FiniteQuandle::from_table(vec![
            vec![0, 2, 3, 1],
            vec![3, 1, 0, 2],
            vec![1, 3, 2, 0],
            vec![2, 0, 1, 3],
        ])
        .expect("built-in table is a quandle")
    }

    /// `x ▷ y = x`.
    pub fn trivial(n: usize) -> Self {
        assert!(n > 0, "trivial quandle of order 0");
        let rows = (0..n).map(|x| vec![x as u32; n]).collect();
        FiniteQuandle::from_table(rows).expect("trivial tables are quandles")
    }

    /// Rows of comma- or whitespace-separated elements, one row per element.
    /// Blank lines and `#` comments are skipped.
    pub fn from_csv(text: &str) -> Result<Self, QuandleError> {
        let rows = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|_| QuandleError::Malformed(format!("bad entry `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteQuandle::from_table(rows)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.n + y as usize]
    }

    /// The `x` with `x ▷ y = z`.
    #[inline]
    pub fn op_inv(&self, z: u32, y: u32) -> u32 {
        self.inv[y as usize * self.n + z as usize]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    /// Smallest `m ≥ 1` with `f_y^m = id` for every column map `f_y`, the
    /// lcm of their orders.
    pub fn n_quandle_order(&self) -> u64 {
        let n = self.n;
        let mut l = 1u64;
        for y in 0..n as u32 {
            let mut seen = vec![false; n];
            for x in 0..n {
                if seen[x] {
                    continue;
                }
                let mut len = 0u64;
                let mut cur = x as u32;
                while !seen[cur as usize] {
                    seen[cur as usize] = true;
                    cur = self.op(cur, y);
                    len += 1;
                }
                l = l / gcd(l, len) * len;
            }
        }
        l
    }

    /// Orbits of the group generated by the column maps, which are
    /// automorphisms by right self-distributivity.
    pub fn inner_orbits(&self) -> Vec<Vec<u32>> {
        let n = self.n;
        let mut orbit = vec![usize::MAX; n];
        let mut out: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if orbit[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start as u32];
            orbit[start] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for y in 0..n as u32 {
                    let z = self.op(x, y);
                    if orbit[z as usize] == usize::MAX {
                        orbit[z as usize] = id;
                        members.push(z);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The table conjugated by the permutation `p`: `p(x) ▷' p(y) = p(x ▷ y)`.
    pub fn relabel(&self, p: &[u32]) -> Self {
        let n = self.n;
        let mut rows = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                rows[p[x] as usize][p[y] as usize] = p[self.op(x as u32, y as u32) as usize];
            }
        }
        FiniteQuandle::from_table(rows).expect("relabeling preserves the axioms")
    }

    /// Whether `h` preserves the operation.
    pub fn is_automorphism(&self, h: &[u32]) -> bool {
        let n = self.n as u32;
        h.len() == self.n
            && h.iter().copied().collect::<BTreeSet<_>>().len() == self.n
            && (0..n).all(|x| (0..n).all(|y| h[self.op(x, y) as usize] == self.op(h[x as usize], h[y as usize])))
    }

    /// Every automorphism, in lexicographic order of images, or `None` when
    /// more than `budget` search nodes would be needed.
    pub fn automorphisms(&self, budget: Option<u64>) -> Option<Vec<Vec<u32>>> {
        let mut found = Vec::new();
        let mut h = vec![u32::MAX; self.n];
        let mut used = vec![false; self.n];
        let mut nodes = 0u64;
        self.extend_automorphism(0, &mut h, &mut used, &mut nodes, budget, &mut found)
            .then_some(found)
    }

    fn extend_automorphism(
        &self,
        k: usize,
        h: &mut [u32],
        used: &mut [bool],
        nodes: &mut u64,
        budget: Option<u64>,
        found: &mut Vec<Vec<u32>>,
    ) -> bool {
        if k == self.n {
            found.push(h.to_vec());
            return true;
        }
        for img in 0..self.n as u32 {
            if used[img as usize] {
                continue;
            }
            *nodes += 1;
            if budget.is_some_and(|b| *nodes > b) {
                return false;
            }
            h[k] = img;
            // every product among the first k+1 elements whose value is also
            // mapped already must be preserved
            let ok = (0..=k).all(|a| {
                [(a, k), (k, a)].into_iter().all(|(x, y)| {
                    let z = self.op(x as u32, y as u32) as usize;
                    z > k || h[z] == self.op(h[x], h[y])
                })
            });
            if ok {
                used[img as usize] = true;
                let done = self.extend_automorphism(k + 1, h, used, nodes, budget, found);
                used[img as usize] = false;
                if !done {
                    return false;
                }
            }
            h[k] = u32::MAX;
        }
        true
    }
}

impl TryFrom<Vec<Vec<u32>>> for FiniteQuandle {
    type Error = QuandleError;
    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self, Self::Error> {
        FiniteQuandle::from_table(rows)
    }
}

impl From<FiniteQuandle> for Vec<Vec<u32>> {
    fn from(q: FiniteQuandle) -> Self {
        q.rows()
    }
}

/// Named built-ins: `dihedral:N`, `alexander:4`, `trivial:N`.
impl FromStr for FiniteQuandle {
    type Err = QuandleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || QuandleError::UnknownSpec(s.to_string());
        let (name, arg) = s.trim().split_once(':').ok_or_else(unknown)?;
        let n: usize = arg.trim().parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        match (name.trim().to_ascii_lowercase().as_str(), n) {
            ("dihedral", n) => Ok(FiniteQuandle::dihedral(n)),
            ("alexander", 4) => Ok(FiniteQuandle::alexander4()),
            ("trivial", n) => Ok(FiniteQuandle::trivial(n)),
            _ => Err(unknown()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homogeneity {
    pub homogeneous: bool,
    /// Size of the automorphism group when it was enumerated.
    pub automorphisms: Option<u64>,
    /// Orbits of the automorphism group, or of the inner automorphisms when
    /// the full group was not enumerated.
    pub orbits: Vec<Vec<u32>>,
}

/// Whether automorphisms act transitively. Orders up to
/// [`EXHAUSTIVE_ORDER`] are enumerated outright; larger quandles are first
/// tried with inner automorphisms, then with a search of at most `budget`
/// nodes.
pub fn is_homogeneous(q: &FiniteQuandle, budget: Option<u64>) -> Result<Homogeneity, QuandleError> {
    let n = q.order();
    if n > EXHAUSTIVE_ORDER {
        let orbits = q.inner_orbits();
        if orbits.len() == 1 {
            return Ok(Homogeneity {
                homogeneous: true,
                automorphisms: None,
                orbits,
            });
        }
    }
    let budget = if n <= EXHAUSTIVE_ORDER { None } else { budget };
    let autos = q
        .automorphisms(budget)
        .ok_or(QuandleError::BudgetExceeded {
            what: "automorphism search",
            budget: budget.unwrap_or(0),
        })?;
    // union of images of each element
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    let mut placed = vec![false; n];
    for x in 0..n {
        if placed[x] {
            continue;
        }
        let orbit: BTreeSet<u32> = autos.iter().map(|h| h[x]).collect();
        for &y in &orbit {
            placed[y as usize] = true;
        }
        orbits.push(orbit.into_iter().collect());
    }
    Ok(Homogeneity {
        homogeneous: orbits.len() == 1,
        automorphisms: Some(autos.len() as u64),
        orbits,
    })
}

/// Number of quandle colorings of a diagram and the bridge-index lower bound
/// it implies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCount {
    pub count: u64,
    pub order: usize,
    /// Smallest `b ≥ 1` with `order^b ≥ count`.
    pub bound: u32,
}

impl ColoringCount {
    pub fn new(count: u64, order: usize) -> Self {
        let mut bound = 1u32;
        let mut reach = order as u128;
        if order > 1 {
            while reach < count as u128 {
                reach *= order as u128;
                bound += 1;
            }
        }
        ColoringCount {
            count,
            order,
            bound,
        }
    }
}

/// Options for [`count_colorings_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    /// Largest number of seed labelings enumerated.
    pub budget: Option<u64>,
    pub exec: Exec,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: None,
            exec: Exec::Parallel,
        }
    }
}

/// Whether a complete labeling satisfies every crossing relation and vertex
/// constancy.
pub fn is_coloring(d: &Diagram, q: &FiniteQuandle, label: &[u32]) -> bool {
    d.crossings()
        .iter()
        .all(|c| q.op(label[c.under_in], label[c.over]) == label[c.under_out])
        && d
            .pods()
            .values()
            .all(|pod| pod.iter().all(|&s| label[s] == label[pod[0]]))
}

/// Counts colorings by labeling the seeds of a Wirtinger witness and
/// replaying its coloring moves.
pub fn count_colorings(d: &Diagram, q: &FiniteQuandle) -> Result<ColoringCount, QuandleError> {
    let r = match wirt::wirtinger_number(d, &SearchOptions::default()) {
        Ok(r) => r,
        Err(WirtError::NotFoundWithinBound { .. }) => return count_colorings_backtrack(d, q, None),
        Err(e) => return Err(e.into()),
    };
    count_colorings_with(d, q, &r, &CountOptions::default())
}

/// Seed-propagation count from a given fully colored witness.
pub fn count_colorings_with(
    d: &Diagram,
    q: &FiniteQuandle,
    r: &WirtingerResult,
    opts: &CountOptions,
) -> Result<ColoringCount, QuandleError> {
    if !r.fully_colored {
        return Err(QuandleError::NoWitness);
    }
    let n = q.order() as u64;
    let seed_strands: Vec<Vec<StrandId>> = r.witness.iter().map(|i| i.strands(d)).collect();
    let total = u32::try_from(seed_strands.len())
        .ok()
        .and_then(|k| n.checked_pow(k))
        .filter(|&t| opts.budget.is_none_or(|b| t <= b))
        .ok_or(QuandleError::BudgetExceeded {
            what: "seed labeling count",
            budget: opts.budget.unwrap_or(u64::MAX),
        })?;
    let steps: Vec<(StrandId, u32)> = r
        .final_state
        .move_order()
        .into_iter()
        .map(|s| (s, r.final_state.source[s].expect("moved strand has a source").crossing))
        .collect();
    let m = d.strand_count();
    let count = exec::sum(
        opts.exec,
        total,
        || vec![0u32; m],
        |label, mut index| {
            for strands in &seed_strands {
                let v = (index % n) as u32;
                index /= n;
                for &s in strands {
                    label[s] = v;
                }
            }
            for &(s, c) in &steps {
                let c = d.crossing(c).expect("move crossing exists");
                label[s] = if s == c.under_out {
                    q.op(label[c.under_in], label[c.over])
                } else {
                    q.op_inv(label[c.under_out], label[c.over])
                };
            }
            is_coloring(d, q, label) as u64
        },
    );
    Ok(ColoringCount::new(count, q.order()))
}

/// Counts colorings by depth-first labeling of strands, with pods labeled as
/// one unit. Exponential in the strand count; meant for small diagrams and
/// diagrams without a witness.
pub fn count_colorings_backtrack(
    d: &Diagram,
    q: &FiniteQuandle,
    budget: Option<u64>,
) -> Result<ColoringCount, QuandleError> {
    let m = d.strand_count();
    // labeling units: whole pods, then remaining strands
    let mut unit_of = vec![usize::MAX; m];
    let mut units: Vec<Vec<StrandId>> = Vec::new();
    for pod in d.pods().values() {
        let id = units.len();
        let mut members = Vec::new();
        for &s in pod {
            if unit_of[s] == usize::MAX {
                unit_of[s] = id;
                members.push(s);
            } else if unit_of[s] != id {
                // a strand joining two pods merges them
                let other = unit_of[s];
                for &t in &units[other].clone() {
                    unit_of[t] = id;
                    members.push(t);
                }
                units[other].clear();
            }
        }
        units.push(members);
    }
    for (s, u) in unit_of.iter_mut().enumerate() {
        if *u == usize::MAX {
            *u = units.len();
            units.push(vec![s]);
        }
    }
    units.retain(|u| !u.is_empty());
    let mut bt = Backtrack {
        d,
        q,
        units: &units,
        label: vec![None; m],
        nodes: 0,
        budget,
    };
    let count = bt.run(0).ok_or(QuandleError::BudgetExceeded {
        what: "backtracking node count",
        budget: budget.unwrap_or(0),
    })?;
    Ok(ColoringCount::new(count, q.order()))
}

struct Backtrack<'a> {
    d: &'a Diagram,
    q: &'a FiniteQuandle,
    units: &'a [Vec<StrandId>],
    label: Vec<Option<u32>>,
    nodes: u64,
    budget: Option<u64>,
}

impl Backtrack<'_> {
    fn consistent(&self, unit: usize) -> bool {
        self.units[unit].iter().all(|&s| {
            self.d.incident(s).iter().all(|&ci| {
                let c = &self.d.crossings()[ci as usize];
                match (self.label[c.under_in], self.label[c.over], self.label[c.under_out]) {
                    (Some(a), Some(b), Some(z)) => self.q.op(a, b) == z,
                    _ => true,
                }
            })
        })
    }

    fn run(&mut self, unit: usize) -> Option<u64> {
        if unit == self.units.len() {
            return Some(1);
        }
        let mut total = 0;
        for v in 0..self.q.order() as u32 {
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return None;
            }
            for &s in &self.units[unit] {
                self.label[s] = Some(v);
            }
            if self.consistent(unit) {
                total += self.run(unit + 1)?;
            }
        }
        for &s in &self.units[unit] {
            self.label[s] = None;
        }
        Some(total)
    }
}

/// Vertex-sum multiplicativity: `count_sum · n = count_g · count_h`.
pub fn vertex_sum_check(count_g: u64, count_h: u64, count_sum: u64, n: u64) -> bool {
    count_sum as u128 * n as u128 == count_g as u128 * count_h as u128
}
