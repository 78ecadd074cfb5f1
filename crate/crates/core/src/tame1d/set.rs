use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::interval::{fmt_intervals, Cells, Interval};
use super::rat::{fmt_rat, ExtRat, Rat};
use super::zerodim::{Chain, Mode, Node, NodeView, ZeroDimSet};
use super::TameError;
use crate::ordinal::Ordinal;

/// Derivatives are iterated at most this many times; the nesting depth of any
/// representable set is far below it.
const DERIVATIVE_CAP: usize = 256;

#[derive(Clone, Debug, Default)]
pub struct Tame1DSet {
    intervals: Vec<Interval>,
    holes: ZeroDimSet,
    zerodim: ZeroDimSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dim {
    Empty,
    Zero,
    One,
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dim::Empty => "-inf",
            Dim::Zero => "0",
            Dim::One => "1",
        })
    }
}

/// Finite truncation of a set, used as an independent oracle.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Truncation {
    pub intervals: Vec<Interval>,
    pub holes: BTreeSet<Rat>,
    pub points: BTreeSet<Rat>,
}

#[derive(Serialize)]
pub struct SetView {
    pub expr: String,
    pub intervals: Vec<Interval>,
    pub holes: Vec<NodeView>,
    pub zerodim: Vec<NodeView>,
}

fn points(ps: impl IntoIterator<Item = Rat>) -> ZeroDimSet {
    ZeroDimSet::from_nodes(ps.into_iter().map(Node::Point).collect())
}

impl Tame1DSet {
    /// Unnormalized constructor: the set `(∪ intervals ∖ holes) ∪ zerodim`.
    pub(crate) fn raw(intervals: Vec<Interval>, holes: ZeroDimSet, zerodim: ZeroDimSet) -> Self {
        Tame1DSet {
            intervals,
            holes,
            zerodim,
        }
    }

    pub fn new(intervals: Vec<Interval>, holes: ZeroDimSet, zerodim: ZeroDimSet) -> Result<Self, TameError> {
        Tame1DSet::raw(intervals, holes, zerodim).normalize()
    }

    pub fn empty() -> Self {
        Tame1DSet::default()
    }

    pub fn line() -> Self {
        Tame1DSet::raw(vec![Interval::line()], ZeroDimSet::empty(), ZeroDimSet::empty())
    }

    pub fn interval(i: Interval) -> Self {
        Tame1DSet::raw(vec![i], ZeroDimSet::empty(), ZeroDimSet::empty())
    }

    pub fn point(p: Rat) -> Self {
        Tame1DSet::from_zerodim(ZeroDimSet::point(p))
    }

    pub fn from_zerodim(z: ZeroDimSet) -> Self {
        Tame1DSet::raw(Vec::new(), ZeroDimSet::empty(), z)
    }

    pub fn chain(c: Chain) -> Self {
        Tame1DSet::from_zerodim(ZeroDimSet::chain(c))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn holes(&self) -> &ZeroDimSet {
        &self.holes
    }

    pub fn zerodim(&self) -> &ZeroDimSet {
        &self.zerodim
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.zerodim.is_empty()
    }

    pub fn contains(&self, p: &Rat) -> bool {
        (self.intervals.iter().any(|i| i.contains(p)) && !self.holes.contains(p)) || self.zerodim.contains(p)
    }

    fn normalize(self) -> Result<Self, TameError> {
        let mut cells = Cells::from_intervals(&self.intervals);
        cells.set_breakpoints(|e| self.contains(e));
        let (intervals, bp_holes, isolated) = cells.to_parts();

        let open_gaps = Tame1DSet::raw(cells.open_gaps(), ZeroDimSet::empty(), ZeroDimSet::empty());
        let filled = Tame1DSet::from_zerodim(self.zerodim.clone());
        let holes = if intervals.is_empty() {
            ZeroDimSet::empty()
        } else {
            self.holes.filter(&open_gaps, Mode::Inside)?.filter(&filled, Mode::Outside)?
        };
        let holes = holes.union(&points(bp_holes));

        let closed = Tame1DSet::raw(cells.closed_gaps(), ZeroDimSet::empty(), points(cells.breaks().to_vec()));
        let zerodim = self.zerodim.filter(&closed, Mode::Outside)?.union(&points(isolated));
        Ok(Tame1DSet {
            intervals,
            holes,
            zerodim,
        })
    }

    /// Isolated breakpoints of a cell decomposition that belong to both operands'
    /// combination, decided pointwise.
    fn cells_parts(
        &self,
        other: &Tame1DSet,
        op: impl Fn(bool, bool) -> bool + Copy,
    ) -> (Vec<Interval>, Vec<Rat>, Vec<Rat>) {
        let a = Cells::from_intervals(&self.intervals);
        let b = Cells::from_intervals(&other.intervals);
        let (ints, bp_holes, pts) = a.combine(&b, op).to_parts();
        let pts = pts
            .into_iter()
            .filter(|p| op(self.contains(p), other.contains(p)))
            .collect();
        (ints, bp_holes, pts)
    }

    pub fn union(&self, other: &Tame1DSet) -> Result<Tame1DSet, TameError> {
        let intervals = self.intervals.iter().chain(&other.intervals).cloned().collect();
        let holes = self
            .holes
            .filter(other, Mode::Outside)?
            .union(&other.holes.filter(self, Mode::Outside)?);
        Tame1DSet::new(intervals, holes, self.zerodim.union(&other.zerodim))
    }

    pub fn intersect(&self, other: &Tame1DSet) -> Result<Tame1DSet, TameError> {
        let (ints, bp_holes, pts) = self.cells_parts(other, |x, y| x && y);
        let holes = self.holes.union(&other.holes).union(&points(bp_holes));
        let zerodim = self
            .zerodim
            .filter(other, Mode::Inside)?
            .union(&other.zerodim.filter(self, Mode::Inside)?)
            .union(&points(pts));
        Tame1DSet::new(ints, holes, zerodim)
    }

    pub fn difference(&self, other: &Tame1DSet) -> Result<Tame1DSet, TameError> {
        let (ints, bp_holes, pts) = self.cells_parts(other, |x, y| x && !y);
        let holes = self.holes.union(&other.zerodim).union(&points(bp_holes));
        let zerodim = self
            .zerodim
            .filter(other, Mode::Outside)?
            .union(&other.holes.filter(self, Mode::Inside)?.filter(other, Mode::Outside)?)
            .union(&points(pts));
        Tame1DSet::new(ints, holes, zerodim)
    }

    pub fn complement(&self) -> Result<Tame1DSet, TameError> {
        Tame1DSet::line().difference(self)
    }

    /// Semantic equality.
    pub fn set_eq(&self, other: &Tame1DSet) -> Result<bool, TameError> {
        Ok(self.difference(other)?.is_empty() && other.difference(self)?.is_empty())
    }

    pub fn is_subset(&self, other: &Tame1DSet) -> Result<bool, TameError> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn is_disjoint(&self, other: &Tame1DSet) -> Result<bool, TameError> {
        Ok(self.intersect(other)?.is_empty())
    }

    pub fn closure(&self) -> Result<Tame1DSet, TameError> {
        let ints = self.intervals.iter().map(Interval::closure).collect();
        Tame1DSet::new(ints, ZeroDimSet::empty(), self.zerodim.closure())
    }

    /// Accumulation points of the set in the line.
    pub fn accumulation(&self) -> Result<Tame1DSet, TameError> {
        let ints = self.intervals.iter().map(Interval::closure).collect();
        Tame1DSet::new(ints, ZeroDimSet::empty(), self.zerodim.accumulation())
    }

    pub fn interior(&self) -> Result<Tame1DSet, TameError> {
        let ints = self.intervals.iter().map(Interval::interior).collect();
        Tame1DSet::new(ints, self.holes.closure(), ZeroDimSet::empty())
    }

    /// `∂A = cl A ∖ A`.
    pub fn frontier(&self) -> Result<Tame1DSet, TameError> {
        self.closure()?.difference(self)
    }

    /// `bd A = cl A ∖ int A`.
    pub fn boundary(&self) -> Result<Tame1DSet, TameError> {
        self.closure()?.difference(&self.interior()?)
    }

    pub fn is_closed(&self) -> Result<bool, TameError> {
        Ok(self.frontier()?.is_empty())
    }

    pub fn is_open(&self) -> Result<bool, TameError> {
        self.set_eq(&self.interior()?)
    }

    /// Cantor-Bendixson derivative: the non-isolated points of the set.
    pub fn cb_derivative(&self) -> Result<Tame1DSet, TameError> {
        self.intersect(&self.accumulation()?)
    }

    pub fn isolated_points(&self) -> Result<Tame1DSet, TameError> {
        self.difference(&self.cb_derivative()?)
    }

    pub fn is_discrete(&self) -> Result<bool, TameError> {
        Ok(self.cb_derivative()?.is_empty())
    }

    /// Non-locally-closed locus: points of `A` where points of `cl A ∖ A`
    /// accumulate. Computed directly from the holes, the open interval ends and the
    /// accumulation points missing from the zero-dimensional part.
    pub fn nlc_part(&self) -> Result<Tame1DSet, TameError> {
        let mut missing: Vec<Node> = self.holes.nodes().to_vec();
        for iv in &self.intervals {
            if let (ExtRat::Fin(lo), false) = (&iv.lo, iv.lo_closed) {
                missing.push(Node::Point(lo.clone()));
            }
            if let (ExtRat::Fin(hi), false) = (&iv.hi, iv.hi_closed) {
                missing.push(Node::Point(hi.clone()));
            }
        }
        let acc_missing = self.zerodim.accumulation().filter(self, Mode::Outside)?;
        missing.extend(acc_missing.nodes().iter().cloned());
        let limit_points = ZeroDimSet::from_nodes(missing).accumulation();
        Tame1DSet::new(Vec::new(), ZeroDimSet::empty(), limit_points.filter(self, Mode::Inside)?)
    }

    /// `A ∩ ∂(∂A)`, the classical identity for the non-locally-closed locus.
    pub fn nlc_via_frontier(&self) -> Result<Tame1DSet, TameError> {
        self.intersect(&self.frontier()?.frontier()?)
    }

    pub fn lc_part(&self) -> Result<Tame1DSet, TameError> {
        self.difference(&self.nlc_part()?)
    }

    pub fn is_locally_closed(&self) -> Result<bool, TameError> {
        Ok(self.nlc_part()?.is_empty())
    }

    /// Number of nonempty iterates `A, nlc A, nlc nlc A, …`; `0` for the empty set.
    pub fn constructible_depth(&self) -> Result<usize, TameError> {
        Ok(self.decompose_locally_closed()?.len())
    }

    /// `[lc(A), lc(nlc A), lc(nlc² A), …]`: disjoint locally closed pieces covering `A`.
    pub fn decompose_locally_closed(&self) -> Result<Vec<Tame1DSet>, TameError> {
        let mut pieces = Vec::new();
        let mut cur = self.clone();
        while !cur.is_empty() {
            if pieces.len() >= DERIVATIVE_CAP {
                return Err(TameError::EnumerationCapExceeded { cap: DERIVATIVE_CAP });
            }
            let nlc = cur.nlc_part()?;
            pieces.push(cur.difference(&nlc)?);
            cur = nlc;
        }
        Ok(pieces)
    }

    fn require_empty_interior(&self) -> Result<(), TameError> {
        if self.intervals.is_empty() {
            Ok(())
        } else {
            Err(TameError::HasInterior)
        }
    }

    /// Cantor-Bendixson rank: least `n` with `CBⁿ(A) = ∅`. Only defined here for sets
    /// with empty interior.
    pub fn cb_rank(&self) -> Result<Ordinal, TameError> {
        Ok(Ordinal::from(self.cb_layers()?.len() as u64))
    }

    /// `CB⁰ ∖ CB¹, CB¹ ∖ CB², …` until the derivative vanishes.
    fn cb_layers(&self) -> Result<Vec<Tame1DSet>, TameError> {
        self.require_empty_interior()?;
        let mut layers = Vec::new();
        let mut cur = self.clone();
        while !cur.is_empty() {
            if layers.len() >= DERIVATIVE_CAP {
                return Err(TameError::EnumerationCapExceeded { cap: DERIVATIVE_CAP });
            }
            let d = cur.cb_derivative()?;
            layers.push(cur.difference(&d)?);
            cur = d;
        }
        Ok(layers)
    }

    /// Splits a set of Cantor-Bendixson rank at most `n` into `n` disjoint discrete
    /// sets by peeling isolated points; trailing layers are empty when the rank is
    /// below `n`.
    pub fn decompose_discrete(&self, n: usize) -> Result<Vec<Tame1DSet>, TameError> {
        let mut layers = self.cb_layers()?;
        if layers.len() > n {
            return Err(TameError::RankExceeded {
                rank: layers.len(),
                layers: n,
            });
        }
        layers.resize_with(n, Tame1DSet::empty);
        Ok(layers)
    }

    pub fn dim(&self) -> Dim {
        if !self.intervals.is_empty() {
            Dim::One
        } else if !self.zerodim.is_empty() {
            Dim::Zero
        } else {
            Dim::Empty
        }
    }

    /// `δ(A) = inf { d(c, A ∖ {c}) : c ∈ A }`, `+∞` for sets with fewer than two points.
    pub fn gap_delta(&self) -> Result<ExtRat, TameError> {
        self.require_empty_interior()?;
        let z = &self.zerodim;
        if z.has_convergent_accumulation() {
            return Ok(ExtRat::Fin(Rat::zero()));
        }
        // finitely many points plus divergent chains with point templates; the
        // divergent part is self-similar, so a few periods beyond the bounded part
        // contain a closest pair
        let mut count = 1usize;
        let divergent: Vec<&Chain> = z.divergent_chains().collect();
        if !divergent.is_empty() {
            for (i, a) in divergent.iter().enumerate() {
                for b in &divergent[i + 1..] {
                    let same_end = a.coefficient().is_positive() == b.coefficient().is_positive();
                    if same_end && a.limit() != b.limit() {
                        return Err(TameError::NoSeparationCertificate(
                            "divergent chains towards the same end with different centres".into(),
                        ));
                    }
                }
            }
            let reach = z.bounded_extent() + Rat::one();
            let mut lcm_periods = 1usize;
            for c in &divergent {
                let mut k = 0usize;
                while (c.anchor(k as i64) - c.limit()).abs() <= &reach + c.limit().abs() {
                    k += 1;
                }
                count = count.max(k);
                let root = super::rat::primitive_root(c.ratio()).map(|r| r.1 as usize).unwrap_or(1);
                lcm_periods = num_integer::lcm(lcm_periods, root.max(1));
            }
            count += 2 * lcm_periods + 2;
        }
        let mut pts = BTreeSet::new();
        z.truncate_points(1, count, &mut pts);
        let v: Vec<Rat> = pts.into_iter().collect();
        Ok(v
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .min()
            .map_or(ExtRat::PosInf, ExtRat::Fin))
    }

    pub fn truncate(&self, depth: usize, count: usize) -> Truncation {
        let mut holes = BTreeSet::new();
        self.holes.truncate_points(depth, count, &mut holes);
        let mut points = BTreeSet::new();
        self.zerodim.truncate_points(depth, count, &mut points);
        Truncation {
            intervals: self.intervals.clone(),
            holes,
            points,
        }
    }

    pub fn view(&self) -> SetView {
        SetView {
            expr: self.as_expr(),
            intervals: self.intervals.clone(),
            holes: self.holes.view(),
            zerodim: self.zerodim.view(),
        }
    }

    /// Expression-grammar form; parsing it yields an equal set.
    pub fn as_expr(&self) -> String {
        let mut parts: Vec<String> = self
            .intervals
            .iter()
            .map(|i| {
                format!(
                    "interval({},{},{}{})",
                    i.lo,
                    i.hi,
                    if i.lo_closed { 'c' } else { 'o' },
                    if i.hi_closed { 'c' } else { 'o' }
                )
            })
            .collect();
        let open_part = match parts.len() {
            0 => None,
            1 => Some(parts.remove(0)),
            _ => Some(format!("union({})", parts.join(", "))),
        };
        let open_part = match (open_part, self.holes.is_empty()) {
            (Some(o), false) => Some(format!("difference({o}, {})", self.holes.as_expr())),
            (o, _) => o,
        };
        match (open_part, self.zerodim.is_empty()) {
            (None, true) => "empty".to_string(),
            (None, false) => self.zerodim.as_expr(),
            (Some(o), true) => o,
            (Some(o), false) => format!("union({o}, {})", self.zerodim),
        }
    }
}

impl fmt::Display for Tame1DSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        let mut parts = Vec::new();
        if !self.intervals.is_empty() {
            parts.push(fmt_intervals(&self.intervals));
        }
        if !self.holes.is_empty() {
            parts.push(format!("minus {{{}}}", self.holes));
        }
        if !self.zerodim.is_empty() {
            parts.push(format!("{{{}}}", self.zerodim));
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl Truncation {
    pub fn describe(&self) -> String {
        let p: Vec<String> = self.points.iter().map(fmt_rat).collect();
        format!("{} {{{}}}", fmt_intervals(&self.intervals), p.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame1d::rat::{int, rat};
    use crate::tame1d::{nested_chain, parse_set};

    fn s(e: &str) -> Tame1DSet {
        parse_set(e).unwrap()
    }

    fn eq(a: &Tame1DSet, b: &Tame1DSet) -> bool {
        a.set_eq(b).unwrap()
    }

    fn dyadic() -> Tame1DSet {
        s("chain(0,1,1/2)")
    }

    fn dyadic_closed() -> Tame1DSet {
        s("chain(0,1,1/2,point,closed)")
    }

    #[test]
    fn union_examples() {
        let x = s("union(interval(0,1,oc), point(3))");
        assert!(eq(&Tame1DSet::empty().union(&x).unwrap(), &x));
        let u = s("interval(0,1,oo)").union(&dyadic()).unwrap();
        assert!(eq(&u, &s("interval(0,1,oc)")));
        assert!(u.zerodim().is_empty());
        let two = dyadic().union(&s("chain(0,3,1/2)")).unwrap();
        assert!(two.contains(&rat(3, 4)) && two.contains(&rat(1, 4)) && !two.contains(&int(0)));
        assert_eq!(two.zerodim().nodes().len(), 2);
    }

    #[test]
    fn intersect_examples() {
        let x = nested_chain(2);
        assert!(eq(&x.intersect(&x).unwrap(), &x));
        let r = dyadic().intersect(&s("interval(1/4,1,cc)")).unwrap();
        assert!(eq(&r, &s("union(point(1), point(1/2), point(1/4))")));
        let r = dyadic().intersect(&s("chain(0,1,1/3)")).unwrap();
        assert!(eq(&r, &s("point(1)")));
        let r = dyadic().intersect(&s("chain(0,1,1/4)")).unwrap();
        assert!(eq(&r, &s("chain(0,1,1/4)")));
    }

    #[test]
    fn topology_examples() {
        let a = s("union(interval(0,1,oo), chain(0,1,1/2))");
        assert!(eq(&a.closure().unwrap(), &s("interval(0,1,cc)")));
        assert!(eq(&dyadic().frontier().unwrap(), &s("point(0)")));
        assert!(eq(&s("interval(0,1,oo)").boundary().unwrap(), &s("union(point(0), point(1))")));
        assert!(dyadic().interior().unwrap().is_empty());
    }

    #[test]
    fn complement_has_holes() {
        let c = dyadic_closed().complement().unwrap();
        assert!(c.contains(&rat(3, 4)));
        assert!(!c.contains(&rat(1, 2)));
        assert!(!c.contains(&int(0)));
        assert!(c.contains(&int(-1)));
        assert!(c.is_open().unwrap());
        assert!(eq(&c.complement().unwrap(), &dyadic_closed()));
        // keeping 0 breaks openness and local closedness at 0
        let d = dyadic().complement().unwrap();
        assert!(d.contains(&int(0)));
        assert!(!d.is_open().unwrap());
        assert!(eq(&d.nlc_part().unwrap(), &s("point(0)")));
        assert!(eq(&d.nlc_via_frontier().unwrap(), &s("point(0)")));
    }

    #[test]
    fn derivative_examples() {
        assert!(s("union(point(1), point(2), point(3))").cb_derivative().unwrap().is_empty());
        assert!(eq(&dyadic_closed().cb_derivative().unwrap(), &s("point(0)")));
        assert!(eq(&nested_chain(2).cb_derivative().unwrap(), &dyadic_closed()));
        assert!(eq(&s("interval(0,1,oo)").cb_derivative().unwrap(), &s("interval(0,1,oo)")));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Tame1DSet::empty().cb_rank().unwrap(), Ordinal::zero());
        assert_eq!(dyadic_closed().cb_rank().unwrap(), Ordinal::from(2));
        for n in 1..=5 {
            assert_eq!(nested_chain(n).cb_rank().unwrap(), Ordinal::from(n as u64 + 1));
        }
        assert_eq!(s("interval(0,1,oo)").cb_rank(), Err(TameError::HasInterior));
    }

    #[test]
    fn isolated_examples() {
        assert!(eq(&s("union(point(0), interval(1,2,oo))").isolated_points().unwrap(), &s("point(0)")));
        assert!(eq(&dyadic_closed().isolated_points().unwrap(), &dyadic()));
    }

    fn nlc_example() -> Tame1DSet {
        s("chain(0,1,1/2,chain(0,1,1/2),closed)")
    }

    #[test]
    fn lc_examples() {
        assert!(nested_chain(3).nlc_part().unwrap().is_empty());
        assert!(eq(&nlc_example().nlc_part().unwrap(), &s("point(0)")));
        assert!(eq(&nlc_example().nlc_via_frontier().unwrap(), &s("point(0)")));
        let a = s("union(interval(0,1,oc), point(2))");
        assert!(eq(&a.lc_part().unwrap(), &a));
    }

    #[test]
    fn depth_examples() {
        assert_eq!(s("interval(0,1,cc)").constructible_depth().unwrap(), 1);
        assert_eq!(nlc_example().constructible_depth().unwrap(), 2);
        assert_eq!(Tame1DSet::empty().constructible_depth().unwrap(), 0);
        let pieces = nlc_example().decompose_locally_closed().unwrap();
        assert!(eq(&pieces[1], &s("point(0)")));
        for p in &pieces {
            assert!(p.is_locally_closed().unwrap());
        }
        let closed = nested_chain(2);
        assert_eq!(closed.decompose_locally_closed().unwrap().len(), 1);
        assert!(Tame1DSet::empty().decompose_locally_closed().unwrap().is_empty());
    }

    #[test]
    fn discrete_decomposition_examples() {
        let layers = dyadic_closed().decompose_discrete(2).unwrap();
        assert!(eq(&layers[0], &dyadic()) && eq(&layers[1], &s("point(0)")));
        let d = s("union(point(1), point(5))");
        assert_eq!(d.decompose_discrete(1).unwrap().len(), 1);
        assert!(matches!(nested_chain(3).decompose_discrete(2), Err(TameError::RankExceeded { .. })));
    }

    #[test]
    fn gap_examples() {
        assert_eq!(s("union(point(0), point(1), point(3))").gap_delta().unwrap(), ExtRat::Fin(int(1)));
        assert_eq!(dyadic_closed().gap_delta().unwrap(), ExtRat::Fin(int(0)));
        assert_eq!(s("chain(0,1,1/2,divergent)").gap_delta().unwrap(), ExtRat::Fin(int(1)));
        assert_eq!(s("point(4)").gap_delta().unwrap(), ExtRat::PosInf);
        assert_eq!(s("interval(0,1,oo)").gap_delta(), Err(TameError::HasInterior));
    }

    #[test]
    fn dim_examples() {
        assert_eq!(Tame1DSet::empty().dim(), Dim::Empty);
        assert_eq!(dyadic().dim(), Dim::Zero);
        assert_eq!(s("union(interval(0,1,oo), point(5))").dim(), Dim::One);
    }

    #[test]
    fn truncate_examples() {
        let t = dyadic_closed().truncate(1, 3);
        let want: BTreeSet<Rat> = [int(1), rat(1, 2), rat(1, 4), int(0)].into_iter().collect();
        assert_eq!(t.points, want);
        // 2 anchors, each with 2 sub-anchors and the sub-limit, plus the limit
        assert_eq!(nested_chain(2).truncate(2, 2).points.len(), 2 * 3 + 1);
        assert!(Tame1DSet::empty().truncate(3, 3).points.is_empty());
    }

    #[test]
    fn expr_round_trip() {
        for e in [
            "union(interval(0,1,oo), chain(0,1,1/2))",
            "chain(0,1,1/2,chain(0,1,1/2),closed)",
            "union(interval(-inf,0,oc), point(3))",
        ] {
            let a = s(e);
            let b = parse_set(&a.as_expr()).unwrap();
            assert!(eq(&a, &b), "{e} -> {}", a.as_expr());
        }
        let c = dyadic_closed().complement().unwrap();
        assert!(eq(&parse_set(&c.as_expr()).unwrap(), &c));
    }
}
