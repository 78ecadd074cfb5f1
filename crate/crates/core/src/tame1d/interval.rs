//! Finite unions of intervals.
//!
//! [`Cells`] is the working representation: sorted breakpoints with a membership flag
//! for every breakpoint and every open gap between consecutive breakpoints. Boolean
//! operations are pointwise on a common refinement, which makes the algebra exact and
//! trivially closed.

use num_traits::One;
use serde::Serialize;

use super::rat::{fmt_rat, int, ExtRat, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Interval {
    pub lo: ExtRat,
    pub hi: ExtRat,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    /// Builds a nondegenerate interval. Infinite ends are always open.
    pub fn new(lo: ExtRat, hi: ExtRat, lo_closed: bool, hi_closed: bool) -> Option<Self> {
        if lo >= hi || lo == ExtRat::PosInf || hi == ExtRat::NegInf {
            return None;
        }
        Some(Interval {
            lo_closed: lo_closed && lo.is_finite(),
            hi_closed: hi_closed && hi.is_finite(),
            lo,
            hi,
        })
    }

    pub fn line() -> Self {
        Interval::new(ExtRat::NegInf, ExtRat::PosInf, false, false).unwrap()
    }

    pub fn open(lo: Rat, hi: Rat) -> Option<Self> {
        Interval::new(lo.into(), hi.into(), false, false)
    }

    pub fn closed(lo: Rat, hi: Rat) -> Option<Self> {
        Interval::new(lo.into(), hi.into(), true, true)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = match self.lo.partial_cmp(x).unwrap() {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => self.lo_closed,
            std::cmp::Ordering::Greater => false,
        };
        let below = match self.hi.partial_cmp(x).unwrap() {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => self.hi_closed,
            std::cmp::Ordering::Less => false,
        };
        above && below
    }

    pub fn closure(&self) -> Self {
        Interval::new(self.lo.clone(), self.hi.clone(), true, true).unwrap()
    }

    pub fn interior(&self) -> Self {
        Interval::new(self.lo.clone(), self.hi.clone(), false, false).unwrap()
    }

    pub fn endpoints(&self) -> impl Iterator<Item = &Rat> {
        self.lo.fin().into_iter().chain(self.hi.fin())
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Sample point strictly inside gap `i` of a breakpoint list.
fn gap_sample(breaks: &[Rat], i: usize) -> Rat {
    match (i.checked_sub(1).and_then(|j| breaks.get(j)), breaks.get(i)) {
        (None, None) => int(0),
        (None, Some(b)) => b - Rat::one(),
        (Some(a), None) => a + Rat::one(),
        (Some(a), Some(b)) => (a + b) / int(2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cells {
    breaks: Vec<Rat>,
    /// `gaps[i]` is the open gap before `breaks[i]`; `gaps[len]` is the last one.
    gaps: Vec<bool>,
    at: Vec<bool>,
}

impl Cells {
    pub fn empty() -> Self {
        Cells {
            breaks: Vec::new(),
            gaps: vec![false],
            at: Vec::new(),
        }
    }

    fn tabulate(mut breaks: Vec<Rat>, member: impl Fn(&Rat) -> bool) -> Self {
        breaks.sort();
        breaks.dedup();
        let gaps = (0..=breaks.len()).map(|i| member(&gap_sample(&breaks, i))).collect();
        let at = breaks.iter().map(&member).collect();
        let mut c = Cells { breaks, gaps, at };
        c.simplify();
        c
    }

    pub fn from_intervals(ints: &[Interval]) -> Self {
        let breaks = ints.iter().flat_map(|i| i.endpoints().cloned()).collect();
        Cells::tabulate(breaks, |x| ints.iter().any(|i| i.contains(x)))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        match self.breaks.binary_search(x) {
            Ok(i) => self.at[i],
            Err(i) => self.gaps[i],
        }
    }

    pub fn breaks(&self) -> &[Rat] {
        &self.breaks
    }

    pub fn combine(&self, other: &Cells, op: impl Fn(bool, bool) -> bool) -> Cells {
        let breaks = self.breaks.iter().chain(&other.breaks).cloned().collect();
        Cells::tabulate(breaks, |x| op(self.contains(x), other.contains(x)))
    }

    /// Overrides membership at the breakpoints.
    pub fn set_breakpoints(&mut self, member: impl Fn(&Rat) -> bool) {
        for (b, a) in self.breaks.iter().zip(self.at.iter_mut()) {
            *a = member(b);
        }
        self.simplify();
    }

    fn simplify(&mut self) {
        let mut i = 0;
        while i < self.breaks.len() {
            if self.gaps[i] == self.at[i] && self.at[i] == self.gaps[i + 1] {
                self.breaks.remove(i);
                self.at.remove(i);
                self.gaps.remove(i + 1);
            } else {
                i += 1;
            }
        }
    }

    /// Open intervals of the included gaps.
    pub fn open_gaps(&self) -> Vec<Interval> {
        (0..self.gaps.len())
            .filter(|&i| self.gaps[i])
            .map(|i| self.gap_interval(i, false))
            .collect()
    }

    /// Closed intervals of the included gaps.
    pub fn closed_gaps(&self) -> Vec<Interval> {
        (0..self.gaps.len())
            .filter(|&i| self.gaps[i])
            .map(|i| self.gap_interval(i, true))
            .collect()
    }

    fn gap_interval(&self, i: usize, closed: bool) -> Interval {
        let lo = if i == 0 { ExtRat::NegInf } else { self.breaks[i - 1].clone().into() };
        let hi = self.breaks.get(i).map_or(ExtRat::PosInf, |b| b.clone().into());
        Interval::new(lo, hi, closed, closed).unwrap()
    }

    /// Splits into maximal intervals (runs of included gaps, joined across every
    /// breakpoint flanked by included gaps), the excluded breakpoints inside those runs,
    /// and the included isolated breakpoints.
    pub fn to_parts(&self) -> (Vec<Interval>, Vec<Rat>, Vec<Rat>) {
        let (mut ints, mut holes, mut points) = (Vec::new(), Vec::new(), Vec::new());
        let n = self.breaks.len();
        let mut i = 0;
        while i <= n {
            if !self.gaps[i] {
                if i < n && self.at[i] && !self.gaps[i + 1] {
                    points.push(self.breaks[i].clone());
                }
                i += 1;
                continue;
            }
            let start = i;
            while i < n && self.gaps[i + 1] {
                if !self.at[i] {
                    holes.push(self.breaks[i].clone());
                }
                i += 1;
            }
            let lo = if start == 0 { ExtRat::NegInf } else { self.breaks[start - 1].clone().into() };
            let lo_closed = start > 0 && self.at[start - 1];
            let hi = self.breaks.get(i).map_or(ExtRat::PosInf, |b| b.clone().into());
            let hi_closed = i < n && self.at[i];
            ints.push(Interval::new(lo, hi, lo_closed, hi_closed).unwrap());
            i += 1;
        }
        (ints, holes, points)
    }
}

pub fn fmt_intervals(ints: &[Interval]) -> String {
    ints.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" u ")
}

#[allow(dead_code)]
pub(crate) fn fmt_points(pts: &[Rat]) -> String {
    pts.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame1d::rat::rat;

    #[test]
    fn touching_open_intervals_report_a_hole() {
        let ints = vec![Interval::open(int(0), int(1)).unwrap(), Interval::open(int(1), int(2)).unwrap()];
        let (i, h, p) = Cells::from_intervals(&ints).to_parts();
        assert_eq!(i, vec![Interval::open(int(0), int(2)).unwrap()]);
        assert_eq!(h, vec![int(1)]);
        assert!(p.is_empty());
    }

    #[test]
    fn intersection_of_closed_intervals_can_be_a_point() {
        let a = Cells::from_intervals(&[Interval::closed(int(0), int(1)).unwrap()]);
        let b = Cells::from_intervals(&[Interval::closed(int(1), int(2)).unwrap()]);
        let (i, _, p) = a.combine(&b, |x, y| x && y).to_parts();
        assert!(i.is_empty());
        assert_eq!(p, vec![int(1)]);
    }

    #[test]
    fn contains_respects_closedness() {
        let i = Interval::new(int(0).into(), rat(1, 2).into(), false, true).unwrap();
        assert!(!i.contains(&int(0)));
        assert!(i.contains(&rat(1, 2)));
        assert!(Interval::new(int(1).into(), int(1).into(), true, true).is_none());
    }
}
