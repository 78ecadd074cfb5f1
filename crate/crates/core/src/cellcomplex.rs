//! Pillay rank on finite abstract stratified complexes.
//!
//! A complex is a finite set of cells with a dimension each and a strict order
//! `a < b` meaning `a ⊆ ∂b`. Each cell is taken to be a locally closed manifold, so
//! `∂c` is closed and nowhere dense in `cl c`. Under that axiom a union of cells `Y`
//! is closed in `X` iff it is downward closed within `X`, and a closed `Y` is nowhere
//! dense in `X` iff its combinatorial interior is empty.
//!
//! Ranks are finite here. Rank `∞` needs an infinite descending chain of closed
//! nowhere-dense sets, which a finite complex cannot have.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::Ordinal;

/// Most cells a complex may have; sets of cells are bitmasks.
pub const MAX_CELLS: usize = 64;
/// Most strata the brute-force oracle accepts.
pub const ORACLE_MAX: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("invalid complex: {0}")]
    InvalidComplex(Violation),
    #[error("unknown cell id '{0}'")]
    UnknownCell(String),
    #[error("duplicate cell id '{0}'")]
    DuplicateCell(String),
    #[error("{n} strata exceed the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("{0} is not contained in {1}")]
    NotSubset(String, String),
    #[error("{0} is not closed in {1}")]
    NotClosed(String, String),
    #[error("malformed complex JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Irreflexivity(String),
    /// `a < b`, `b < c`, but not `a < c`.
    Transitivity(String, String, String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Irreflexivity(c) => write!(f, "irreflexivity: {c} < {c}"),
            Violation::Transitivity(a, b, c) => {
                write!(f, "transitivity: {a} < {b} and {b} < {c} but not {a} < {c}")
            }
        }
    }
}

/// Subset of the cells of a complex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrataSet(u64);

impl StrataSet {
    pub const EMPTY: StrataSet = StrataSet(0);

    pub fn from_bits(bits: u64) -> Self {
        StrataSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        StrataSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, o: Self) -> Self {
        StrataSet(self.0 | o.0)
    }

    pub fn intersect(self, o: Self) -> Self {
        StrataSet(self.0 & o.0)
    }

    pub fn minus(self, o: Self) -> Self {
        StrataSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub id: String,
    pub dim: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub cells: Vec<Cell>,
    #[serde(default)]
    pub frontier: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct StratComplex {
    cells: Vec<Cell>,
    /// `below[c]`: cells `c'` with `c' < c`.
    below: Vec<StrataSet>,
    above: Vec<StrataSet>,
}

impl StratComplex {
    /// Builds a complex from cells and frontier pairs `(a, b)` meaning `a < b`. The
    /// order axioms are not checked here; see [`StratComplex::validate`].
    pub fn new(cells: Vec<Cell>, frontier: &[(String, String)]) -> Result<Self, ComplexError> {
        if cells.len() > MAX_CELLS {
            return Err(ComplexError::TooLarge { n: cells.len(), max: MAX_CELLS });
        }
        let mut index = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(ComplexError::DuplicateCell(c.id.clone()));
            }
        }
        let n = cells.len();
        let (mut below, mut above) = (vec![StrataSet::EMPTY; n], vec![StrataSet::EMPTY; n]);
        for (a, b) in frontier {
            let ia = *index.get(a).ok_or_else(|| ComplexError::UnknownCell(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| ComplexError::UnknownCell(b.clone()))?;
            below[ib].insert(ia);
            above[ia].insert(ib);
        }
        Ok(StratComplex { cells, below, above })
    }

    /// Builds from numeric relation data; cells are named `c0, c1, …`.
    pub fn from_relation(dims: &[u32], less: &[(usize, usize)]) -> Self {
        let cells = dims.iter().enumerate().map(|(i, &d)| Cell { id: format!("c{i}"), dim: d }).collect();
        let pairs: Vec<_> = less.iter().map(|&(a, b)| (format!("c{a}"), format!("c{b}"))).collect();
        Self::new(cells, &pairs).expect("generated ids are distinct")
    }

    pub fn from_spec(spec: &ComplexSpec) -> Result<Self, ComplexError> {
        Self::new(spec.cells.clone(), &spec.frontier)
    }

    pub fn from_json(src: &str) -> Result<Self, ComplexError> {
        let spec: ComplexSpec = serde_json::from_str(src).map_err(|e| ComplexError::Json(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> ComplexSpec {
        let mut frontier = Vec::new();
        for b in 0..self.len() {
            for a in self.below[b].iter() {
                frontier.push((self.cells[a].id.clone(), self.cells[b].id.clone()));
            }
        }
        ComplexSpec { cells: self.cells.clone(), frontier }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn all(&self) -> StrataSet {
        StrataSet(if self.len() == 64 { u64::MAX } else { (1u64 << self.len()) - 1 })
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn set_of(&self, ids: &[&str]) -> Result<StrataSet, ComplexError> {
        let mut s = StrataSet::EMPTY;
        for id in ids {
            let i = self
                .cells
                .iter()
                .position(|c| c.id == *id)
                .ok_or_else(|| ComplexError::UnknownCell(id.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn describe(&self, s: StrataSet) -> String {
        let ids: Vec<&str> = s.iter().map(|i| self.cells[i].id.as_str()).collect();
        format!("{{{}}}", ids.join(","))
    }

    /// All violations of irreflexivity and transitivity.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for c in 0..self.len() {
            if self.less(c, c) {
                out.push(Violation::Irreflexivity(self.cells[c].id.clone()));
            }
        }
        for b in 0..self.len() {
            for a in self.below[b].iter() {
                for c in self.above[b].iter() {
                    if !self.less(a, c) {
                        let id = |i: usize| self.cells[i].id.clone();
                        out.push(Violation::Transitivity(id(a), id(b), id(c)));
                    }
                }
            }
        }
        out
    }

    pub fn validated(self) -> Result<Self, ComplexError> {
        match self.validate().into_iter().next() {
            Some(v) => Err(ComplexError::InvalidComplex(v)),
            None => Ok(self),
        }
    }

    /// Downward saturation.
    pub fn closure_of(&self, s: StrataSet) -> StrataSet {
        s.iter().fold(s, |acc, c| acc.union(self.below[c]))
    }

    /// `c ∈ int_X(Y)` iff every `c̃ ∈ X` with `c ≤ c̃` lies in `Y`.
    pub fn interior_in(&self, y: StrataSet, x: StrataSet) -> Result<StrataSet, ComplexError> {
        self.require_subset(y, x)?;
        let mut out = StrataSet::EMPTY;
        for c in y.iter() {
            if self.above[c].intersect(x).is_subset(y) {
                out.insert(c);
            }
        }
        Ok(out)
    }

    pub fn is_closed_in(&self, y: StrataSet, x: StrataSet) -> bool {
        y.is_subset(x) && y.iter().all(|c| self.below[c].intersect(x).is_subset(y))
    }

    pub fn is_open_in(&self, y: StrataSet, x: StrataSet) -> bool {
        y.is_subset(x) && y.iter().all(|c| self.above[c].intersect(x).is_subset(y))
    }

    /// Convex within `X`: the intersection of an open and a closed subset of `X`.
    pub fn is_locally_closed_in(&self, y: StrataSet, x: StrataSet) -> bool {
        y.is_subset(x)
            && x.minus(y).iter().all(|b| {
                let (lo, hi) = (self.below[b].intersect(y), self.above[b].intersect(y));
                lo.is_empty() || hi.is_empty()
            })
    }

    pub fn is_nowhere_dense_in(&self, y: StrataSet, x: StrataSet) -> Result<bool, ComplexError> {
        self.require_subset(y, x)?;
        if !self.is_closed_in(y, x) {
            return Err(ComplexError::NotClosed(self.describe(y), self.describe(x)));
        }
        Ok(self.interior_in(y, x)?.is_empty())
    }

    fn require_subset(&self, y: StrataSet, x: StrataSet) -> Result<(), ComplexError> {
        if y.is_subset(x) {
            Ok(())
        } else {
            Err(ComplexError::NotSubset(self.describe(y), self.describe(x)))
        }
    }

    /// Cells of `X` with nothing of `X` above them.
    fn maximal_in(&self, x: StrataSet) -> StrataSet {
        let mut m = StrataSet::EMPTY;
        for c in x.iter() {
            if self.above[c].intersect(x).is_empty() {
                m.insert(c);
            }
        }
        m
    }

    /// Subsets of `m` that are downward closed within `x`.
    fn closed_subsets(&self, m: StrataSet, x: StrataSet) -> Vec<StrataSet> {
        // fewer cells below comes first: a linear extension of a transitive order
        let mut order: Vec<usize> = m.iter().collect();
        order.sort_by_key(|&c| self.below[c].len());
        let mut out = Vec::new();
        self.closed_rec(&order, x, StrataSet::EMPTY, &mut out);
        out
    }

    fn closed_rec(&self, order: &[usize], x: StrataSet, cur: StrataSet, out: &mut Vec<StrataSet>) {
        let Some((&c, rest)) = order.split_first() else {
            out.push(cur);
            return;
        };
        self.closed_rec(rest, x, cur, out);
        if self.below[c].intersect(x).is_subset(cur) {
            let mut with = cur;
            with.insert(c);
            self.closed_rec(rest, x, with, out);
        }
    }

    /// Pillay rank of `X`, `None` for the empty set (the `−1` sentinel).
    pub fn pillay_rank(&self, x: StrataSet) -> Option<Ordinal> {
        let mut memo = HashMap::new();
        let r = self.rank_memo(x, &mut memo);
        (r >= 0).then(|| Ordinal::from(r as u64))
    }

    /// Pillay rank as an integer, `−1` for the empty set.
    pub fn pillay_rank_value(&self, x: StrataSet) -> i64 {
        self.rank_memo(x, &mut HashMap::new())
    }

    fn rank_memo(&self, x: StrataSet, memo: &mut HashMap<StrataSet, i64>) -> i64 {
        if x.is_empty() {
            return -1;
        }
        if let Some(&r) = memo.get(&x) {
            return r;
        }
        // closed nowhere-dense subsets of X are exactly the closed subsets avoiding
        // the maximal cells of X
        let candidates = x.minus(self.maximal_in(x));
        let mut best = -1;
        for y in self.closed_subsets(candidates, x) {
            if !y.is_empty() {
                best = best.max(self.rank_memo(y, memo));
            }
        }
        let r = best + 1;
        memo.insert(x, r);
        r
    }

    /// Brute-force Pillay rank: every subset of `X` is tried against the definitions
    /// of closedness and interior, without memoization.
    pub fn pillay_rank_oracle(&self, x: StrataSet) -> Result<Option<Ordinal>, ComplexError> {
        if x.len() > ORACLE_MAX {
            return Err(ComplexError::TooLarge { n: x.len(), max: ORACLE_MAX });
        }
        let r = self.oracle_value(x);
        Ok((r >= 0).then(|| Ordinal::from(r as u64)))
    }

    fn oracle_value(&self, x: StrataSet) -> i64 {
        if x.is_empty() {
            return -1;
        }
        let members: Vec<usize> = x.iter().collect();
        let mut best = -1;
        for mask in 1u64..(1u64 << members.len()) {
            let mut y = StrataSet::EMPTY;
            for (k, &c) in members.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    y.insert(c);
                }
            }
            let closed = members
                .iter()
                .all(|&a| !y.contains(a) || members.iter().all(|&b| !self.less(b, a) || y.contains(b)));
            if !closed {
                continue;
            }
            let interior_empty = members
                .iter()
                .filter(|&&c| y.contains(c))
                .all(|&c| members.iter().any(|&t| self.less(c, t) && !y.contains(t)));
            if interior_empty {
                best = best.max(self.oracle_value(y));
            }
        }
        best + 1
    }

    /// Dimensions drop strictly along `<`, minimal cells have dimension 0 and every
    /// cell of dimension `d > 0` has a cell of dimension `d − 1` below it.
    pub fn is_dimension_graded(&self) -> bool {
        (0..self.len()).all(|c| {
            let d = self.cells[c].dim;
            self.below[c].iter().all(|a| self.cells[a].dim < d)
                && (d == 0 || self.below[c].iter().any(|a| self.cells[a].dim + 1 == d))
        })
    }

    pub fn max_dim(&self, x: StrataSet) -> Option<u32> {
        x.iter().map(|c| self.cells[c].dim).max()
    }

    /// Every subset of the cells that is downward closed.
    pub fn all_closed_sets(&self) -> Vec<StrataSet> {
        self.closed_subsets(self.all(), self.all())
    }
}

/// One line of an inequality report: `CHECK <name> PASS|FAIL <witness>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub witness: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "CHECK {} {} {}", self.name, verdict, self.witness)
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checked: 0, failure: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn finish(self) -> Check {
        match self.failure {
            Some(w) => Check { name: self.name, pass: false, witness: w },
            None => Check { name: self.name, pass: true, witness: format!("checked={}", self.checked) },
        }
    }
}

fn ord(r: i64) -> Ordinal {
    Ordinal::from(r.max(0) as u64)
}

/// [`check_rank_inequalities`] driven by a ChaCha stream seeded with `seed`.
pub fn check_rank_inequalities_seeded(k: &StratComplex, seed: u64, samples: usize) -> Vec<Check> {
    check_rank_inequalities(k, &mut ChaCha8Rng::seed_from_u64(seed), samples)
}

/// Rank identities and inequalities over sampled closed sets, covers, open splits
/// and locally closed partitions of `K`.
pub fn check_rank_inequalities<R: Rng>(k: &StratComplex, rng: &mut R, samples: usize) -> Vec<Check> {
    let mut memo = HashMap::new();
    let mut rank = |s: StrataSet| k.rank_memo(s, &mut memo);
    let mut closed = k.all_closed_sets();
    closed.shuffle(rng);
    closed.truncate(samples.max(1));
    if !closed.contains(&k.all()) {
        closed.push(k.all());
    }
    let random_subset = |rng: &mut R, x: StrataSet| {
        let mut s = StrataSet::EMPTY;
        for c in x.iter() {
            if rng.gen_bool(0.5) {
                s.insert(c);
            }
        }
        s
    };

    let mut oracle = Tally::new("rkp_oracle");
    let mut mono = Tally::new("rkp_monotone");
    let mut cover = Tally::new("rkp_closed_cover");
    let mut union = Tally::new("rkp_union");
    let mut lclosed = Tally::new("rkp_lclosed");
    let mut lomin = Tally::new("rkp_lomin");
    let graded = k.is_dimension_graded();

    for &x in &closed {
        let rx = rank(x);
        if x.len() <= ORACLE_MAX {
            let ro = k.oracle_value(x);
            oracle.record(rx == ro, || format!("X={} memo={rx} oracle={ro}", k.describe(x)));
        }
        // trivial cover and closed subsets
        cover.record(rx == rank(x), || format!("X={}", k.describe(x)));
        for &y in &closed {
            if y.is_subset(x) {
                let ry = rank(y);
                mono.record(ry <= rx, || format!("Y={} rank={ry} X={} rank={rx}", k.describe(y), k.describe(x)));
            }
        }
        for _ in 0..4 {
            let a = k.closure_of(random_subset(rng, x)).intersect(x);
            let b = k.closure_of(x.minus(a)).intersect(x);
            let b = b.union(k.closure_of(random_subset(rng, x)).intersect(x));
            if a.union(b) == x {
                let (ra, rb) = (rank(a), rank(b));
                cover.record(rx == ra.max(rb), || {
                    format!("X={} rank={rx} X1={} rank={ra} X2={} rank={rb}", k.describe(x), k.describe(a), k.describe(b))
                });
            }
            // open split X = A ∪ B with A open in X
            let mut a = random_subset(rng, x);
            for c in a.iter() {
                a = a.union(k.above[c].intersect(x));
            }
            let b = x.minus(a);
            if !a.is_empty() && !b.is_empty() {
                let (ra, rb) = (rank(a), rank(b));
                let bound = ord(rb).add(&ord(ra)).add(&Ordinal::one());
                union.record(ord(rx) <= bound, || {
                    format!("X={} rank={rx} A={} rank={ra} B={} rank={rb}", k.describe(x), k.describe(a), k.describe(b))
                });
            }
        }
        // partitions of X into locally closed unions of strata
        let mut partitions: Vec<Vec<StrataSet>> = vec![x.iter().map(StrataSet::singleton).collect()];
        for _ in 0..8 {
            let r = rng.gen_range(1..=3usize);
            let mut parts = vec![StrataSet::EMPTY; r];
            for c in x.iter() {
                parts[rng.gen_range(0..r)].insert(c);
            }
            parts.retain(|p| !p.is_empty());
            if parts.iter().all(|&p| k.is_locally_closed_in(p, x)) {
                partitions.push(parts);
            }
        }
        for parts in partitions.iter().filter(|p| !p.is_empty()) {
            let r = parts.len() as u64;
            let gamma = parts.iter().map(|&p| rank(p)).max().unwrap_or(0);
            let bound = ord(gamma)
                .mul_nat(r)
                .expect("r is positive")
                .add(&Ordinal::from(r - 1));
            lclosed.record(ord(rx) <= bound, || {
                let ps: Vec<String> = parts.iter().map(|&p| k.describe(p)).collect();
                format!("X={} rank={rx} pieces=[{}] gamma={gamma} bound={bound}", k.describe(x), ps.join(" "))
            });
        }
        if graded && !x.is_empty() {
            let d = k.max_dim(x).unwrap_or(0) as i64;
            lomin.record(rx == d, || format!("X={} rank={rx} max_dim={d}", k.describe(x)));
        }
    }
    let mut out = vec![oracle.finish(), mono.finish(), cover.finish(), union.finish(), lclosed.finish()];
    let lomin = if graded {
        lomin.finish()
    } else {
        Check { name: "rkp_lomin", pass: true, witness: "vacuous: dimensions not graded".into() }
    };
    out.push(lomin);
    out
}

/// Random complex with `1..=max_cells` cells: a random relation on cell indices
/// followed by transitive closure. With `graded`, dimensions drop by exactly one
/// along every generating pair and minimal cells have dimension 0.
pub fn random_complex<R: Rng>(rng: &mut R, max_cells: usize, graded: bool) -> StratComplex {
    let n = rng.gen_range(1..=max_cells.min(MAX_CELLS));
    let mut less = vec![vec![false; n]; n];
    let dims: Vec<u32> = if graded {
        let mut dims = vec![0u32; n];
        for b in 0..n {
            let lower: Vec<usize> = (0..b).filter(|&a| dims[a] + 1 <= 3).collect();
            if !lower.is_empty() && rng.gen_bool(0.7) {
                let a = lower[rng.gen_range(0..lower.len())];
                dims[b] = dims[a] + 1;
                less[a][b] = true;
                for &a2 in &lower {
                    if a2 != a && dims[a2] + 1 == dims[b] && rng.gen_bool(0.3) {
                        less[a2][b] = true;
                    }
                }
            }
        }
        dims
    } else {
        let dims: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        for b in 0..n {
            for a in 0..b {
                less[a][b] = rng.gen_bool(0.35);
            }
        }
        dims
    };
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if less[a][m] && less[m][b] {
                    less[a][b] = true;
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| less[a][b]).collect();
    StratComplex::from_relation(&dims, &pairs)
}

/// `c₀ < c₁ < … < c_k`, with `c_i` of dimension `i`.
pub fn chain_complex(k: usize) -> StratComplex {
    let dims: Vec<u32> = (0..=k as u32).collect();
    let pairs: Vec<(usize, usize)> = (0..=k).flat_map(|a| (a + 1..=k).map(move |b| (a, b))).collect();
    StratComplex::from_relation(&dims, &pairs)
}

/// `{0}, {1}, (0,1)`.
pub fn unit_interval_complex() -> StratComplex {
    StratComplex::from_relation(&[0, 0, 1], &[(0, 2), (1, 2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validation() {
        assert!(StratComplex::from_relation(&[], &[]).validate().is_empty());
        let v = StratComplex::from_relation(&[0], &[(0, 0)]).validate();
        assert_eq!(v, vec![Violation::Irreflexivity("c0".into())]);
        let v = StratComplex::from_relation(&[0, 1, 2], &[(0, 1), (1, 2)]).validate();
        assert_eq!(v, vec![Violation::Transitivity("c0".into(), "c1".into(), "c2".into())]);
    }

    #[test]
    fn closure_and_interior() {
        let k = unit_interval_complex();
        let top = StrataSet::singleton(2);
        assert_eq!(k.closure_of(top), k.all());
        assert_eq!(k.interior_in(k.all(), k.all()).unwrap(), k.all());
        assert!(k.interior_in(StrataSet::singleton(0), k.all()).unwrap().is_empty());
        assert!(k.is_nowhere_dense_in(StrataSet::EMPTY, k.all()).unwrap());
        assert!(!k.is_nowhere_dense_in(k.all(), k.all()).unwrap());
        let ends = k.set_of(&["c0", "c1"]).unwrap();
        assert!(k.is_nowhere_dense_in(ends, k.all()).unwrap());
        assert!(k.interior_in(k.all(), ends).is_err());
        assert!(k.is_nowhere_dense_in(top, k.all()).is_err());
    }

    #[test]
    fn rank_examples() {
        let single = StratComplex::from_relation(&[0], &[]);
        assert_eq!(single.pillay_rank(single.all()), Some(Ordinal::zero()));
        assert_eq!(single.pillay_rank(StrataSet::EMPTY), None);
        for k in 0..=6 {
            let c = chain_complex(k);
            assert_eq!(c.pillay_rank(c.all()), Some(Ordinal::from(k as u64)));
            assert_eq!(c.pillay_rank_oracle(c.all()).unwrap(), Some(Ordinal::from(k as u64)));
        }
        let i = unit_interval_complex();
        assert_eq!(i.pillay_rank(i.all()), Some(Ordinal::one()));
        assert_eq!(i.pillay_rank_oracle(i.all()).unwrap(), Some(Ordinal::one()));
    }

    #[test]
    fn memo_matches_oracle_on_every_subset() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let k = random_complex(&mut rng, 6, false);
            for bits in 0..=k.all().bits() {
                let x = StrataSet::from_bits(bits);
                assert_eq!(k.pillay_rank_value(x), k.oracle_value(x));
            }
        }
    }

    #[test]
    fn closed_subsets_are_all_downsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let k = random_complex(&mut rng, 7, false);
            let mut fast = k.all_closed_sets();
            fast.sort();
            let brute: Vec<StrataSet> = (0..=k.all().bits())
                .map(StrataSet::from_bits)
                .filter(|&s| k.is_closed_in(s, k.all()))
                .collect();
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn open_split_example() {
        let k = chain_complex(2);
        let a = StrataSet::singleton(2);
        assert!(k.is_open_in(a, k.all()));
        let b = k.all().minus(a);
        assert_eq!(k.pillay_rank_value(k.all()), 2);
        assert_eq!(k.pillay_rank_value(a) + k.pillay_rank_value(b) + 1, 2);
    }

    #[test]
    fn inequalities_hold_on_random_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in 0..60 {
            let k = random_complex(&mut rng, 7, i % 2 == 0).validated().unwrap();
            for c in check_rank_inequalities(&k, &mut rng, 16) {
                assert!(c.pass, "{c}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"cells":[{"id":"a","dim":0},{"id":"b","dim":1}],"frontier":[["a","b"]]}"#;
        let k = StratComplex::from_json(src).unwrap();
        assert!(k.less(0, 1));
        let again = StratComplex::from_spec(&k.to_spec()).unwrap();
        assert!(again.less(0, 1) && !again.less(1, 0));
        assert!(matches!(
            StratComplex::from_json(r#"{"cells":[],"frontier":[["x","y"]]}"#),
            Err(ComplexError::UnknownCell(_))
        ));
    }
}
