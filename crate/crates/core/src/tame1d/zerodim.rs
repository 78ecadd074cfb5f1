//! Zero-dimensional tame sets as chain forests.
//!
//! A [`Chain`] with limit `ℓ`, coefficient `c`, ratio `q ∈ (0,1)` has anchors
//! `a_k = ℓ + c·g^k` where `g = q` (convergent) or `g = 1/q` (divergent). At each
//! anchor a copy of the template is placed, scaled by `s_k = |c|·g^k·(1−q)/3`.
//! If the template fits in `[−w, w]` then copy `k` lies in the hull
//! `a_k ± w·s_k`; `w·(1+q) < 3` keeps hulls pairwise disjoint and away from `ℓ`.
//!
//! Boolean operations against arbitrary tame sets go through [`ZeroDimSet::filter`]:
//! near a chain's limit the other set is localized to chains sharing that limit,
//! chains with commensurable ratios are split to a common ratio, and the
//! self-similar overlap pattern turns into a filter on the template. Away from
//! the limit only finitely many copies remain; they are expanded and filtered
//! recursively. Nesting depth strictly decreases in every recursive call.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::interval::Interval;
use super::rat::{fmt_rat, int, least_index, ln, powi, primitive_root, solve_independent_powers, Rat};
use super::{Tame1DSet, TameError};

/// Maximum number of copies expanded for a single chain.
pub const ENUM_CAP: i64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Point(Rat),
    Chain(Chain),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    limit: Rat,
    c: Rat,
    q: Rat,
    divergent: bool,
    template: ZeroDimSet,
    limit_included: bool,
    /// Upper bound on `|x|` over the template's closure.
    extent: Rat,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZeroDimSet {
    nodes: Vec<Node>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Inside,
    Outside,
}

/// Position of a point relative to the copies of a chain.
struct Located {
    /// Copy whose closed hull contains the point.
    hit: Option<i64>,
    /// Positive lower bound on the distance to every other copy and to the limit.
    gap: Option<Rat>,
}

/// Structure of a tame set on a one-sided neighbourhood of a limit (convergent case)
/// or of infinity (divergent case).
struct Local {
    covers: bool,
    holes: Vec<Chain>,
    zs: Vec<Chain>,
    /// Window radius (convergent) or start distance (divergent); `None` = unconstrained.
    bound: Option<Rat>,
}

fn third() -> Rat {
    Rat::new(1.into(), 3.into())
}

impl Chain {
    pub fn new(
        limit: Rat,
        c: Rat,
        q: Rat,
        template: ZeroDimSet,
        limit_included: bool,
        divergent: bool,
    ) -> Result<Chain, TameError> {
        let bad = |m: &str| Err(TameError::InvalidChain(m.to_string()));
        if c.is_zero() {
            return bad("coefficient c must be nonzero");
        }
        if !(q.is_positive() && q < Rat::one()) {
            return bad("ratio q must lie in (0,1)");
        }
        if divergent && limit_included {
            return bad("a divergent chain has no limit point to include");
        }
        if template.has_divergent() {
            return bad("templates must be bounded (no divergent chains)");
        }
        let chain = Chain::raw(limit, c, q, template, limit_included, divergent);
        if &chain.extent * (Rat::one() + &chain.q) >= int(3) {
            return bad("template too wide: copies at consecutive anchors would overlap");
        }
        Ok(chain)
    }

    fn raw(limit: Rat, c: Rat, q: Rat, template: ZeroDimSet, limit_included: bool, divergent: bool) -> Chain {
        let extent = template.extent();
        Chain {
            limit,
            c,
            q,
            divergent,
            template,
            limit_included: limit_included && !divergent,
            extent,
        }
    }

    pub fn limit(&self) -> &Rat {
        &self.limit
    }
    pub fn coefficient(&self) -> &Rat {
        &self.c
    }
    pub fn ratio(&self) -> &Rat {
        &self.q
    }
    pub fn is_divergent(&self) -> bool {
        self.divergent
    }
    pub fn limit_included(&self) -> bool {
        self.limit_included
    }
    pub fn template(&self) -> &ZeroDimSet {
        &self.template
    }

    fn sigma(&self) -> i32 {
        if self.c.is_positive() {
            1
        } else {
            -1
        }
    }

    fn g(&self) -> Rat {
        if self.divergent {
            self.q.recip()
        } else {
            self.q.clone()
        }
    }

    /// `|c|·g^k`, the distance from the limit to anchor `k`.
    fn dist(&self, k: i64) -> Rat {
        self.c.abs() * powi(&self.g(), k)
    }

    pub fn anchor(&self, k: i64) -> Rat {
        &self.limit + &self.c * powi(&self.g(), k)
    }

    pub fn scale(&self, k: i64) -> Rat {
        self.dist(k) * (Rat::one() - &self.q) * third()
    }

    /// Relative hull half-width: hull `k` is `a_k ± kappa·dist(k)`.
    fn kappa(&self) -> Rat {
        &self.extent * (Rat::one() - &self.q) * third()
    }

    pub fn copy(&self, k: i64) -> ZeroDimSet {
        self.template.affine(&self.anchor(k), &self.scale(k))
    }

    /// Same chain with anchors re-indexed from `k`.
    fn tail_from(&self, k: i64) -> Chain {
        Chain::raw(
            self.limit.clone(),
            &self.c * powi(&self.g(), k),
            self.q.clone(),
            self.template.clone(),
            false,
            self.divergent,
        )
    }

    fn affine(&self, a: &Rat, s: &Rat) -> Chain {
        let template = if s.is_positive() {
            self.template.clone()
        } else {
            self.template.affine(&Rat::zero(), &int(-1))
        };
        Chain::raw(a + s * &self.limit, s * &self.c, self.q.clone(), template, self.limit_included, self.divergent)
    }

    fn log_g(&self) -> f64 {
        ln(&self.g())
    }

    /// Locates `p ≠ limit` among the copy hulls.
    fn locate(&self, p: &Rat) -> Located {
        let abs_c = self.c.abs();
        let t = Rat::from_integer(self.sigma().into()) * (p - &self.limit) / &abs_c;
        let kappa = self.kappa();
        let one = Rat::one();
        let (inner, outer) = (&one - &kappa, &one + &kappa);
        let g = self.g();
        let lg = self.log_g();
        if !self.divergent {
            if !t.is_positive() {
                return Located {
                    hit: None,
                    gap: Some((p - &self.limit).abs()),
                };
            }
            // first copy lying strictly between the limit and p
            let est = (ln(&t) - ln(&outer)) / lg;
            let k1 = least_index(est, i64::MAX / 4, |k| powi(&g, k) * &outer < t).unwrap();
            let mut gap = (&t - powi(&g, k1) * &outer) * &abs_c;
            let mut hit = None;
            if k1 >= 1 {
                let above = powi(&g, k1 - 1) * &inner;
                if above <= t {
                    hit = Some(k1 - 1);
                    if k1 >= 2 {
                        gap = gap.min((powi(&g, k1 - 2) * &inner - &t) * &abs_c);
                    }
                } else {
                    gap = gap.min((above - &t) * &abs_c);
                }
            }
            Located { hit, gap: Some(gap) }
        } else {
            let est = if t.is_positive() { (ln(&t) - ln(&inner)) / lg } else { 0.0 };
            // first copy lying strictly beyond p
            let k1 = least_index(est, i64::MAX / 4, |k| powi(&g, k) * &inner > t).unwrap();
            let mut gap = (powi(&g, k1) * &inner - &t) * &abs_c;
            let mut hit = None;
            if k1 >= 1 {
                let below = powi(&g, k1 - 1) * &outer;
                if below >= t {
                    hit = Some(k1 - 1);
                    if k1 >= 2 {
                        gap = gap.min((&t - powi(&g, k1 - 2) * &outer) * &abs_c);
                    }
                } else {
                    gap = gap.min((&t - below) * &abs_c);
                }
            }
            Located { hit, gap: Some(gap) }
        }
    }

    pub fn contains(&self, p: &Rat) -> bool {
        if *p == self.limit {
            return self.limit_included;
        }
        match self.locate(p).hit {
            Some(k) => self.template.contains(&((p - self.anchor(k)) / self.scale(k))),
            None => false,
        }
    }

    /// First index whose copy hull lies inside the one-sided window of radius `rho`
    /// (convergent) or beyond distance `r` (divergent).
    fn window_start(&self, bound: &Option<Rat>) -> Result<i64, TameError> {
        let Some(b) = bound else { return Ok(0) };
        let g = self.g();
        let abs_c = self.c.abs();
        let k = if !self.divergent {
            let outer = Rat::one() + self.kappa();
            let est = (ln(b) - ln(&(&abs_c * &outer))) / self.log_g();
            least_index(est, ENUM_CAP, |k| &abs_c * powi(&g, k) * &outer < *b)
        } else {
            let inner = Rat::one() - self.kappa();
            let est = if b.is_positive() { (ln(b) - ln(&(&abs_c * &inner))) / self.log_g() } else { 0.0 };
            least_index(est, ENUM_CAP, |k| &abs_c * powi(&g, k) * &inner > *b)
        };
        k.ok_or(TameError::EnumerationCapExceeded { cap: ENUM_CAP as usize })
    }

    /// Splits into `n` chains of ratio `q^n`, chain `r` carrying anchors `r, r+n, …`.
    fn split(&self, n: i64) -> Vec<Chain> {
        if n == 1 {
            return vec![self.tail_from(0)];
        }
        let qs = powi(&self.q, n);
        let f = (Rat::one() - &self.q) / (Rat::one() - &qs);
        let t = self.template.affine(&Rat::zero(), &f);
        (0..n)
            .map(|r| Chain::raw(self.limit.clone(), &self.c * powi(&self.g(), r), qs.clone(), t.clone(), false, self.divergent))
            .collect()
    }

    fn points_only_template(&self) -> Option<Vec<Rat>> {
        self.template
            .nodes
            .iter()
            .map(|n| match n {
                Node::Point(p) => Some(p.clone()),
                Node::Chain(_) => None,
            })
            .collect()
    }
}

impl ZeroDimSet {
    pub fn empty() -> Self {
        ZeroDimSet::default()
    }

    pub fn from_nodes(nodes: Vec<Node>) -> Self {
        ZeroDimSet { nodes }.clean()
    }

    pub fn point(p: Rat) -> Self {
        ZeroDimSet {
            nodes: vec![Node::Point(p)],
        }
    }

    pub fn chain(c: Chain) -> Self {
        ZeroDimSet::from_nodes(vec![Node::Chain(c)])
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn union(&self, other: &ZeroDimSet) -> ZeroDimSet {
        ZeroDimSet::from_nodes(self.nodes.iter().chain(&other.nodes).cloned().collect())
    }

    fn has_divergent(&self) -> bool {
        self.nodes.iter().any(|n| match n {
            Node::Point(_) => false,
            Node::Chain(c) => c.divergent || c.template.has_divergent(),
        })
    }

    pub fn has_divergent_chain(&self) -> bool {
        self.has_divergent()
    }

    /// Nesting depth: 0 for the empty set, 1 for finitely many points.
    pub fn depth(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| match n {
                Node::Point(_) => 1,
                Node::Chain(c) => 1 + c.template.depth(),
            })
            .max()
            .unwrap_or(0)
    }

    fn extent(&self) -> Rat {
        let mut e = Rat::zero();
        for n in &self.nodes {
            let m = match n {
                Node::Point(p) => p.abs(),
                Node::Chain(c) => c.limit.abs().max(c.anchor(0).abs() + c.scale(0) * &c.extent),
            };
            e = e.max(m);
        }
        e
    }

    pub fn affine(&self, a: &Rat, s: &Rat) -> ZeroDimSet {
        ZeroDimSet {
            nodes: self
                .nodes
                .iter()
                .map(|n| match n {
                    Node::Point(p) => Node::Point(a + s * p),
                    Node::Chain(c) => Node::Chain(c.affine(a, s)),
                })
                .collect(),
        }
    }

    /// Normal form: empty chains removed, childless chains collapsed to their limit,
    /// points sitting on a convergent chain's limit merged into it, duplicates dropped,
    /// expanded copies folded back (see [`compress`]).
    fn clean(self) -> ZeroDimSet {
        let mut points: BTreeSet<Rat> = BTreeSet::new();
        let mut chains: Vec<Chain> = Vec::new();
        for n in self.nodes {
            match n {
                Node::Point(p) => {
                    points.insert(p);
                }
                Node::Chain(mut c) => {
                    c.template = std::mem::take(&mut c.template).clean();
                    if c.template.is_empty() {
                        if c.limit_included {
                            points.insert(c.limit);
                        }
                    } else {
                        chains.push(c);
                    }
                }
            }
        }
        for c in chains.iter_mut() {
            if !c.divergent && points.remove(&c.limit) {
                c.limit_included = true;
            }
        }
        let mut nodes: Vec<Node> = points.into_iter().map(Node::Point).collect();
        nodes.extend(chains.into_iter().map(Node::Chain));
        nodes.sort();
        nodes.dedup();
        ZeroDimSet { nodes: compress(nodes) }
    }

    pub fn contains(&self, p: &Rat) -> bool {
        self.nodes.iter().any(|n| match n {
            Node::Point(x) => x == p,
            Node::Chain(c) => c.contains(p),
        })
    }

    /// Accumulation points in the line.
    pub fn accumulation(&self) -> ZeroDimSet {
        let nodes = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Point(_) => None,
                Node::Chain(c) => Some(Node::Chain(Chain::raw(
                    c.limit.clone(),
                    c.c.clone(),
                    c.q.clone(),
                    c.template.accumulation(),
                    !c.divergent,
                    c.divergent,
                ))),
            })
            .collect();
        ZeroDimSet::from_nodes(nodes)
    }

    pub fn closure(&self) -> ZeroDimSet {
        self.union(&self.accumulation())
    }

    /// Keeps the points inside (`Mode::Inside`) or outside (`Mode::Outside`) of `s`.
    pub fn filter(&self, s: &Tame1DSet, mode: Mode) -> Result<ZeroDimSet, TameError> {
        Ok(self.filter_inner(s, mode)?.unwrap_or_else(|| self.clone()))
    }

    /// `None` when nothing changed.
    fn filter_inner(&self, s: &Tame1DSet, mode: Mode) -> Result<Option<ZeroDimSet>, TameError> {
        let mut changed = false;
        let mut out = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            match filter_node(n, s, mode)? {
                None => out.push(n.clone()),
                Some(v) => {
                    changed = true;
                    out.extend(v);
                }
            }
        }
        Ok(changed.then(|| ZeroDimSet::from_nodes(out)))
    }

    /// Finite truncation: every chain keeps its first `count` copies, recursing
    /// `depth` chain levels; a chain reached with no depth left contributes its limit
    /// (when included).
    pub fn truncate_points(&self, depth: usize, count: usize, out: &mut BTreeSet<Rat>) {
        for n in &self.nodes {
            match n {
                Node::Point(p) => {
                    out.insert(p.clone());
                }
                Node::Chain(c) => {
                    if c.limit_included {
                        out.insert(c.limit.clone());
                    }
                    if depth == 0 {
                        continue;
                    }
                    for k in 0..count as i64 {
                        c.copy(k).truncate_points(depth - 1, count, out);
                    }
                }
            }
        }
    }

    /// Whether some chain (at any level) accumulates at a point, which forces
    /// arbitrarily small gaps.
    pub fn has_convergent_accumulation(&self) -> bool {
        self.nodes.iter().any(|n| match n {
            Node::Point(_) => false,
            Node::Chain(c) => !c.divergent || c.template.has_convergent_accumulation(),
        })
    }

    pub fn divergent_chains(&self) -> impl Iterator<Item = &Chain> {
        self.nodes.iter().filter_map(|n| match n {
            Node::Chain(c) if c.divergent => Some(c),
            _ => None,
        })
    }

    /// Largest absolute value attained by points or hulls of bounded parts.
    pub fn bounded_extent(&self) -> Rat {
        let mut e = Rat::zero();
        for n in &self.nodes {
            let m = match n {
                Node::Point(p) => p.abs(),
                Node::Chain(c) if !c.divergent => c.limit.abs().max(c.anchor(0).abs() + c.scale(0) * &c.extent),
                Node::Chain(c) => c.limit.abs(),
            };
            e = e.max(m);
        }
        e
    }
}

/// Steps a chain may be extended backwards over expanded copies.
const FOLD_CAP: usize = 64;

/// Undoes copy expansion: expanded copies sitting just before a chain are folded
/// back into it, chains that are tails of another chain and points lying on a
/// chain are dropped.
fn compress(nodes: Vec<Node>) -> Vec<Node> {
    if !nodes.iter().any(|n| matches!(n, Node::Chain(_))) {
        return nodes;
    }
    let mut set: BTreeSet<Node> = nodes.into_iter().collect();
    let chains: Vec<Chain> = set
        .iter()
        .filter_map(|n| match n {
            Node::Chain(c) => Some(c.clone()),
            Node::Point(_) => None,
        })
        .collect();
    for c in chains {
        if !set.contains(&Node::Chain(c.clone())) {
            continue;
        }
        let mut x = c.clone();
        for _ in 0..FOLD_CAP {
            let prev = x.copy(-1);
            if prev.nodes.is_empty() || !prev.nodes.iter().all(|n| set.contains(n)) {
                break;
            }
            for n in &prev.nodes {
                set.remove(n);
            }
            let mut y = x.tail_from(-1);
            y.limit_included = x.limit_included;
            x = y;
        }
        if x != c {
            set.remove(&Node::Chain(c));
            set.insert(Node::Chain(x));
        }
    }
    let chains: Vec<Chain> = set
        .iter()
        .filter_map(|n| match n {
            Node::Chain(c) => Some(c.clone()),
            Node::Point(_) => None,
        })
        .collect();
    set.into_iter()
        .filter(|n| match n {
            Node::Point(p) => !chains.iter().any(|c| c.contains(p)),
            Node::Chain(y) => !chains.iter().any(|x| x != y && x.has_tail(y)),
        })
        .collect()
}

impl Chain {
    /// Whether `y` is a re-indexed tail of `self` (and so a subset of it).
    fn has_tail(&self, y: &Chain) -> bool {
        if self.limit != y.limit
            || self.q != y.q
            || self.divergent != y.divergent
            || self.template != y.template
            || (y.limit_included && !self.limit_included)
        {
            return false;
        }
        let r = &y.c / &self.c;
        if !r.is_positive() {
            return false;
        }
        let g = self.g();
        let est = ln(&r) / ln(&g);
        if !est.is_finite() || est < -0.5 {
            return false;
        }
        let j = est.round() as i64;
        powi(&g, j) == r
    }
}

fn localize(s: &Tame1DSet, limit: &Rat, sigma: i32, divergent: bool) -> Result<Local, TameError> {
    let sg = Rat::from_integer(sigma.into());
    let mut local = Local {
        covers: false,
        holes: Vec::new(),
        zs: Vec::new(),
        bound: None,
    };
    let tighten = |bound: &mut Option<Rat>, r: Rat| {
        if divergent {
            *bound = Some(bound.take().map_or(r.clone(), |b| b.max(r)));
        } else if r.is_positive() {
            *bound = Some(bound.take().map_or(r.clone(), |b| b.min(r)));
        }
    };
    for iv in s.intervals() {
        if divergent {
            let unbounded = if sigma > 0 { !iv.hi.is_finite() } else { !iv.lo.is_finite() };
            local.covers |= unbounded;
        } else {
            let probe_in = |x: &Rat| iv.contains(x);
            // covers a one-sided neighbourhood iff it contains ℓ + σε for small ε
            let near = iv
                .endpoints()
                .filter(|e| (&sg * (*e - limit)).is_positive())
                .map(|e| &sg * (e - limit))
                .min();
            let eps = near.clone().unwrap_or_else(Rat::one) / int(2);
            local.covers |= probe_in(&(limit + &sg * eps));
        }
        for e in iv.endpoints() {
            tighten(&mut local.bound, &sg * (e - limit));
        }
    }
    localize_zero(s.holes(), limit, sigma, divergent, &mut local.holes, &mut local.bound)?;
    localize_zero(s.zerodim(), limit, sigma, divergent, &mut local.zs, &mut local.bound)?;
    Ok(local)
}

fn localize_zero(
    z: &ZeroDimSet,
    limit: &Rat,
    sigma: i32,
    divergent: bool,
    found: &mut Vec<Chain>,
    bound: &mut Option<Rat>,
) -> Result<(), TameError> {
    let sg = Rat::from_integer(sigma.into());
    let tighten_min = |bound: &mut Option<Rat>, r: Rat| {
        if r.is_positive() {
            *bound = Some(bound.take().map_or(r.clone(), |b| b.min(r)));
        }
    };
    let tighten_max = |bound: &mut Option<Rat>, r: Rat| {
        *bound = Some(bound.take().map_or(r.clone(), |b| b.max(r)));
    };
    for n in &z.nodes {
        match n {
            Node::Point(p) => {
                if divergent {
                    tighten_max(bound, &sg * (p - limit));
                } else {
                    tighten_min(bound, &sg * (p - limit));
                }
            }
            Node::Chain(ch) if !divergent => {
                if !ch.divergent && ch.limit == *limit {
                    if ch.sigma() == sigma {
                        found.push(ch.tail_from(0));
                    }
                    continue;
                }
                let loc = ch.locate(limit);
                if let Some(gap) = loc.gap {
                    tighten_min(bound, gap);
                }
                if let Some(k) = loc.hit {
                    localize_zero(&ch.copy(k), limit, sigma, divergent, found, bound)?;
                }
            }
            Node::Chain(ch) => {
                if !ch.divergent {
                    let reach = &sg * (&ch.limit - limit) + ch.c.abs() * (Rat::one() + ch.kappa());
                    tighten_max(bound, reach);
                } else if ch.sigma() != sigma {
                    tighten_max(bound, &sg * (&ch.limit - limit));
                } else if ch.limit == *limit {
                    found.push(ch.tail_from(0));
                } else {
                    return Err(TameError::NoSeparationCertificate(format!(
                        "divergent chains towards the same end with different centres {} and {}",
                        fmt_rat(limit),
                        fmt_rat(&ch.limit)
                    )));
                }
            }
        }
    }
    Ok(())
}

fn filter_node(n: &Node, s: &Tame1DSet, mode: Mode) -> Result<Option<Vec<Node>>, TameError> {
    let want = mode == Mode::Inside;
    match n {
        Node::Point(p) => Ok(if s.contains(p) == want { None } else { Some(Vec::new()) }),
        Node::Chain(c) => filter_chain(c, s, mode),
    }
}

/// Smallest `m` with `rho'/g^m` in the fundamental domain between 1 (inclusive) and `g`.
fn alignment_exponent(ratio: &Rat, g: &Rat) -> i64 {
    let est = (ln(ratio) / ln(g)).round() as i64;
    let one = Rat::one();
    for m in est - 3..=est + 3 {
        let r = ratio / powi(g, m);
        let ok = if *g < one { r > *g && r <= one } else { r >= one && r < *g };
        if ok {
            return m;
        }
    }
    unreachable!("alignment exponent search failed")
}

fn filter_chain(c: &Chain, s: &Tame1DSet, mode: Mode) -> Result<Option<Vec<Node>>, TameError> {
    let want = mode == Mode::Inside;
    let local = localize(s, &c.limit, c.sigma(), c.divergent)?;
    let mut k0 = c.window_start(&local.bound)?;

    let (root, a_c) = primitive_root(&c.q)
        .ok_or_else(|| TameError::NoSeparationCertificate("ratio too large to factor".into()))?;
    let mut aligned: Vec<(Chain, bool, u64)> = Vec::new();
    for (chains, is_hole) in [(&local.holes, true), (&local.zs, false)] {
        for b in chains {
            let (root_b, a_b) = primitive_root(&b.q)
                .ok_or_else(|| TameError::NoSeparationCertificate("ratio too large to factor".into()))?;
            if root_b == root {
                aligned.push((b.clone(), is_hole, a_b));
                continue;
            }
            // multiplicatively independent ratios: only finitely many coincidences
            let (Some(xs), Some(ys)) = (c.points_only_template(), b.points_only_template()) else {
                return Err(TameError::NoSeparationCertificate(format!(
                    "chains at {} with independent ratios {} and {} and nested templates",
                    fmt_rat(&c.limit),
                    fmt_rat(&c.q),
                    fmt_rat(&b.q)
                )));
            };
            let sg = Rat::from_integer(c.sigma().into());
            let lc = (Rat::one() - &c.q) * third();
            let lb = (Rat::one() - &b.q) * third();
            for x in &xs {
                for y in &ys {
                    let num = b.c.abs() * (Rat::one() + &sg * &lb * y);
                    let den = c.c.abs() * (Rat::one() + &sg * &lc * x);
                    if den.is_zero() || num.is_zero() {
                        continue;
                    }
                    let target = num / den;
                    let sol = solve_independent_powers(&c.g(), &b.g(), &target).ok_or_else(|| {
                        TameError::NoSeparationCertificate("ratio too large to factor".into())
                    })?;
                    if let Some((k, _)) = sol {
                        k0 = k0.max(k as i64 + 1);
                    }
                }
            }
        }
    }

    let mut lcm = a_c;
    for (_, _, a_b) in &aligned {
        lcm = lcm.lcm(a_b);
    }
    let n_c = (lcm / a_c) as i64;
    let qs = powi(&root, lcm as i64);
    let g_s = if c.divergent { qs.recip() } else { qs.clone() };
    let three_over = int(3) / (Rat::one() - &qs);
    let sg = Rat::from_integer(c.sigma().into());

    // split every aligned chain to the common ratio and record its base alignment
    let subs_c = c.split(n_c);
    let mut pieces: Vec<(Chain, bool, Vec<i64>)> = Vec::new();
    let mut i0 = (k0 + n_c - 1) / n_c;
    for (b, is_hole, a_b) in &aligned {
        for bt in b.split((lcm / a_b) as i64) {
            let ms: Vec<i64> = subs_c.iter().map(|cr| alignment_exponent(&(&bt.c / &cr.c), &g_s)).collect();
            for m in &ms {
                i0 = i0.max(m + 2);
            }
            pieces.push((bt, *is_hole, ms));
        }
    }
    let k_total = n_c * i0;
    if k_total > ENUM_CAP {
        return Err(TameError::EnumerationCapExceeded { cap: ENUM_CAP as usize });
    }

    let mut tail_changed = false;
    let mut tails = Vec::with_capacity(subs_c.len());
    for (r, cr0) in subs_c.iter().enumerate() {
        let cr = cr0.tail_from(i0);
        let mut model_holes = Vec::new();
        let mut model_zs = Vec::new();
        for (bt, is_hole, ms) in &pieces {
            let m = ms[r] - i0;
            let rho = &bt.c / &cr.c / powi(&g_s, m);
            for delta in -2..=1i64 {
                let scale = &rho * powi(&g_s, delta);
                let shift = &sg * (&scale - Rat::one()) * &three_over;
                let img = bt.template.affine(&shift, &scale);
                if *is_hole {
                    model_holes.extend(img.nodes);
                } else {
                    model_zs.extend(img.nodes);
                }
            }
        }
        let model = Tame1DSet::raw(
            if local.covers { vec![Interval::line()] } else { Vec::new() },
            ZeroDimSet { nodes: model_holes },
            ZeroDimSet { nodes: model_zs },
        );
        match cr.template.filter_inner(&model, mode)? {
            None => tails.push(cr),
            Some(t) => {
                tail_changed = true;
                tails.push(Chain::raw(cr.limit, cr.c, cr.q, t, false, cr.divergent));
            }
        }
    }

    let mut out: Vec<Node> = Vec::new();
    let mut changed = tail_changed;
    for k in 0..k_total {
        let copy = c.copy(k);
        match copy.filter_inner(s, mode)? {
            None => out.extend(copy.nodes),
            Some(f) => {
                changed = true;
                out.extend(f.nodes);
            }
        }
    }
    if c.limit_included && s.contains(&c.limit) != want {
        changed = true;
    }
    if !changed {
        return Ok(None);
    }
    if tail_changed {
        out.extend(tails.into_iter().map(Node::Chain));
    } else {
        out.push(Node::Chain(c.tail_from(k_total)));
    }
    if c.limit_included && s.contains(&c.limit) == want {
        out.push(Node::Point(c.limit.clone()));
    }
    Ok(Some(out))
}

/// Serializable view of a node.
#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeView {
    Point {
        p: String,
    },
    Chain {
        limit: String,
        c: String,
        q: String,
        divergent: bool,
        limit_included: bool,
        template: Vec<NodeView>,
    },
}

impl ZeroDimSet {
    pub fn view(&self) -> Vec<NodeView> {
        self.nodes
            .iter()
            .map(|n| match n {
                Node::Point(p) => NodeView::Point { p: fmt_rat(p) },
                Node::Chain(c) => NodeView::Chain {
                    limit: fmt_rat(&c.limit),
                    c: fmt_rat(&c.c),
                    q: fmt_rat(&c.q),
                    divergent: c.divergent,
                    limit_included: c.limit_included,
                    template: c.template.view(),
                },
            })
            .collect()
    }
}

impl std::fmt::Display for ZeroDimSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .nodes
            .iter()
            .map(|n| match n {
                Node::Point(p) => format!("point({})", fmt_rat(p)),
                Node::Chain(c) => {
                    let mut s = format!("chain({}, {}, {}", fmt_rat(&c.limit), fmt_rat(&c.c), fmt_rat(&c.q));
                    if c.template != ZeroDimSet::point(Rat::zero()) {
                        s.push_str(&format!(", {}", c.template.as_expr()));
                    }
                    if c.limit_included {
                        s.push_str(", closed");
                    }
                    if c.divergent {
                        s.push_str(", divergent");
                    }
                    s.push(')');
                    s
                }
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl ZeroDimSet {
    /// Expression-grammar form (re-parseable).
    pub fn as_expr(&self) -> String {
        match self.nodes.len() {
            0 => "empty".to_string(),
            1 => self.to_string(),
            _ => format!("union({self})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame1d::rat::rat;

    fn dyadic(closed: bool) -> Chain {
        Chain::new(int(0), int(1), rat(1, 2), ZeroDimSet::point(int(0)), closed, false).unwrap()
    }

    #[test]
    fn anchors_and_membership() {
        let c = dyadic(false);
        assert_eq!(c.anchor(3), rat(1, 8));
        assert!(c.contains(&rat(1, 1024)));
        assert!(!c.contains(&rat(3, 1024)));
        assert!(!c.contains(&int(0)));
        assert!(dyadic(true).contains(&int(0)));
        assert!(!c.contains(&int(-1)));
    }

    #[test]
    fn divergent_membership() {
        let c = Chain::new(int(0), int(1), rat(1, 2), ZeroDimSet::point(int(0)), false, true).unwrap();
        assert!(c.contains(&int(1)));
        assert!(c.contains(&int(1 << 20)));
        assert!(!c.contains(&int(3)));
        assert!(!c.contains(&rat(1, 2)));
    }

    #[test]
    fn rejects_bad_chains() {
        assert!(Chain::new(int(0), int(0), rat(1, 2), ZeroDimSet::point(int(0)), false, false).is_err());
        assert!(Chain::new(int(0), int(1), int(1), ZeroDimSet::point(int(0)), false, false).is_err());
        assert!(Chain::new(int(0), int(1), rat(1, 2), ZeroDimSet::point(int(3)), false, false).is_err());
        assert!(Chain::new(int(0), int(1), rat(1, 2), ZeroDimSet::point(int(0)), true, true).is_err());
    }

    #[test]
    fn split_preserves_points() {
        let c = dyadic(false);
        let parts = c.split(2);
        for k in 0..12 {
            let a = c.anchor(k);
            assert!(parts.iter().any(|p| p.contains(&a)));
        }
        assert!(!parts.iter().any(|p| p.contains(&rat(3, 8))));
    }

    #[test]
    fn accumulation_of_nested_chain() {
        let inner = ZeroDimSet::chain(dyadic(true));
        let outer = Chain::new(int(0), int(1), rat(1, 2), inner, true, false).unwrap();
        let acc = ZeroDimSet::chain(outer).accumulation();
        // accumulation points: every anchor plus the limit
        assert!(acc.contains(&rat(1, 4)));
        assert!(acc.contains(&int(0)));
        assert!(!acc.contains(&(rat(1, 4) + rat(1, 48))));
    }

    #[test]
    fn expanded_copies_fold_back() {
        let c = dyadic(false);
        let mut nodes: Vec<Node> = (0..3).flat_map(|k| c.copy(k).nodes).collect();
        nodes.push(Node::Chain(c.tail_from(3)));
        let z = ZeroDimSet::from_nodes(nodes);
        assert_eq!(z.nodes(), &[Node::Chain(c.clone())]);
        // a tail of a chain and points on it are absorbed
        let z = ZeroDimSet::from_nodes(vec![
            Node::Chain(c.clone()),
            Node::Chain(c.tail_from(2)),
            Node::Point(rat(1, 8)),
            Node::Point(int(5)),
        ]);
        assert_eq!(z.nodes(), &[Node::Point(int(5)), Node::Chain(c)]);
    }

    #[test]
    fn derivative_layers_stay_compact() {
        let n = 4;
        let layers = crate::tame1d::nested_chain(n).decompose_discrete(n + 1).unwrap();
        for l in &layers {
            assert_eq!(l.zerodim().nodes().len(), 1, "{l}");
        }
    }
}
