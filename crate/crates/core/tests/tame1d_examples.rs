use std::collections::BTreeSet;

use tametop::tame1d::{int, nested_chain, parse_set, rat, stratify_line, verify_stratification, Dim, ExtRat, Rat};
use tametop::{Ordinal, Tame1DSet, TameError};

fn p(src: &str) -> Tame1DSet {
    parse_set(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn same(a: &Tame1DSet, b: &Tame1DSet) -> bool {
    a.set_eq(b).unwrap()
}

const DYADIC: &str = "chain(0,1,1/2)";
const DYADIC_CLOSED: &str = "chain(0,1,1/2,point,closed)";

#[test]
fn boolean_operations() {
    let x = p(DYADIC);
    assert!(same(&Tame1DSet::empty().union(&x).unwrap(), &x));
    assert!(same(&x.intersect(&x).unwrap(), &x));
    let u = p("union(interval(0,1,oo), chain(0,1,1/2))");
    assert!(same(&u, &p("interval(0,1,oc)")));
    let two = p("union(chain(0,1,1/2), chain(0,3,1/2))");
    assert!(two.contains(&int(3)) && two.contains(&rat(3, 8)) && !two.contains(&int(0)));
    assert!(same(&x.intersect(&p("interval(1/4,1,cc)")).unwrap(), &p("union(point(1), point(1/2), point(1/4))")));
    assert!(same(&x.intersect(&p("chain(0,1,1/3)")).unwrap(), &p("point(1)")));
}

#[test]
fn topology() {
    assert!(same(&p("union(interval(0,1,oo), chain(0,1,1/2))").closure().unwrap(), &p("interval(0,1,cc)")));
    assert!(same(&p(DYADIC).frontier().unwrap(), &p("point(0)")));
    assert!(same(&p("interval(0,1,oo)").boundary().unwrap(), &p("union(point(0), point(1))")));
    assert!(p(DYADIC).interior().unwrap().is_empty());
}

#[test]
fn cantor_bendixson() {
    assert!(p("union(point(1), point(2), point(3))").cb_derivative().unwrap().is_empty());
    assert!(same(&p(DYADIC_CLOSED).cb_derivative().unwrap(), &p("point(0)")));
    assert!(same(&nested_chain(2).cb_derivative().unwrap(), &nested_chain(1)));
    assert_eq!(Tame1DSet::empty().cb_rank().unwrap(), Ordinal::zero());
    assert_eq!(p(DYADIC_CLOSED).cb_rank().unwrap(), Ordinal::from(2));
    assert!(matches!(p("interval(0,1,oo)").cb_rank(), Err(TameError::HasInterior)));
    assert!(same(&p("union(point(0), interval(1,2,oo))").isolated_points().unwrap(), &p("point(0)")));
    assert!(same(&p(DYADIC_CLOSED).isolated_points().unwrap(), &p(DYADIC)));
}

/// Nearest-neighbour distance of every point of a finite set.
fn nearest(points: &BTreeSet<Rat>) -> Vec<(Rat, Rat)> {
    let v: Vec<&Rat> = points.iter().collect();
    (0..v.len())
        .map(|i| {
            let left = (i > 0).then(|| v[i] - v[i - 1]);
            let right = v.get(i + 1).map(|r| *r - v[i]);
            let d = match (left, right) {
                (Some(l), Some(r)) => l.min(r),
                (Some(d), None) | (None, Some(d)) => d,
                (None, None) => panic!("single point"),
            };
            (v[i].clone(), d)
        })
        .collect()
}

/// Truncation oracle: a point of the coarse truncation accumulates iff its
/// nearest-neighbour distance collapses when the truncation is refined.
fn accumulates_by_truncation(a: &Tame1DSet, depth: usize) -> Vec<(Rat, bool)> {
    let coarse = a.truncate(depth, 4).points;
    if coarse.len() == 1 {
        return coarse.into_iter().map(|x| (x, false)).collect();
    }
    let fine: BTreeSet<Rat> = a.truncate(depth, 16).points;
    let fine_d: Vec<(Rat, Rat)> = nearest(&fine);
    nearest(&coarse)
        .into_iter()
        .map(|(x, d0)| {
            let d1 = &fine_d.iter().find(|(y, _)| *y == x).expect("coarse points survive refinement").1;
            let collapsed = d1 * int(64) < d0;
            (x, collapsed)
        })
        .collect()
}

#[test]
fn derivative_matches_truncation_oracle() {
    for n in 1..=3 {
        let a = nested_chain(n);
        let d = a.cb_derivative().unwrap();
        let iso = a.isolated_points().unwrap();
        let verdicts = accumulates_by_truncation(&a, n);
        assert!(verdicts.iter().any(|(_, acc)| *acc) && verdicts.iter().any(|(_, acc)| !*acc));
        for (x, acc) in verdicts {
            assert_eq!(d.contains(&x), acc, "nested_chain({n}) at {x}");
            assert_eq!(iso.contains(&x), !acc, "nested_chain({n}) at {x}");
        }
    }
}

#[test]
fn nested_rank_matches_repeated_oracle() {
    // peel isolated points with the truncation oracle until nothing is left
    for n in 1..=3usize {
        let mut a = nested_chain(n);
        let mut rounds = 0;
        while !a.is_empty() {
            let keep = accumulates_by_truncation(&a, n);
            a = a.cb_derivative().unwrap();
            for (x, acc) in keep {
                assert_eq!(a.contains(&x), acc);
            }
            rounds += 1;
        }
        assert_eq!(Ordinal::from(rounds), nested_chain(n).cb_rank().unwrap());
    }
}

fn middle_layer_removed() -> Tame1DSet {
    nested_chain(2).difference(&p(DYADIC)).unwrap()
}

#[test]
fn local_closedness() {
    assert!(p("interval(0,1,cc)").nlc_part().unwrap().is_empty());
    assert!(nested_chain(3).nlc_part().unwrap().is_empty());
    let a = middle_layer_removed();
    assert!(same(&a.nlc_part().unwrap(), &p("point(0)")));
    assert!(same(&a.nlc_via_frontier().unwrap(), &p("point(0)")));
    let lc = p("union(interval(0,1,oc), point(2))");
    assert!(same(&lc.lc_part().unwrap(), &lc));
}

#[test]
fn constructible_depth_and_pieces() {
    assert_eq!(p("interval(0,1,cc)").constructible_depth().unwrap(), 1);
    assert_eq!(Tame1DSet::empty().constructible_depth().unwrap(), 0);
    assert!(Tame1DSet::empty().decompose_locally_closed().unwrap().is_empty());
    let a = middle_layer_removed();
    assert_eq!(a.constructible_depth().unwrap(), 2);
    let pieces = a.decompose_locally_closed().unwrap();
    assert_eq!(pieces.len(), 2);
    assert!(same(&pieces[1], &p("point(0)")));
    for piece in &pieces {
        assert!(piece.nlc_part().unwrap().is_empty());
    }
    let closed = p(DYADIC_CLOSED);
    assert_eq!(closed.decompose_locally_closed().unwrap().len(), 1);
}

#[test]
fn discrete_layers() {
    let layers = p(DYADIC_CLOSED).decompose_discrete(2).unwrap();
    assert!(same(&layers[0], &p(DYADIC)) && same(&layers[1], &p("point(0)")));
    let d = p("union(point(0), point(5))");
    assert_eq!(d.decompose_discrete(1).unwrap().len(), 1);
    assert!(matches!(nested_chain(2).decompose_discrete(2), Err(TameError::RankExceeded { .. })));
}

#[test]
fn gaps_and_dimension() {
    assert_eq!(p("union(point(0), point(1), point(3))").gap_delta().unwrap(), ExtRat::Fin(int(1)));
    assert_eq!(p(DYADIC_CLOSED).gap_delta().unwrap(), ExtRat::Fin(int(0)));
    assert_eq!(p("chain(0,1,1/2,divergent)").gap_delta().unwrap(), ExtRat::Fin(int(1)));
    assert_eq!(Tame1DSet::empty().dim(), Dim::Empty);
    assert_eq!(p(DYADIC).dim(), Dim::Zero);
    assert_eq!(p("union(interval(0,1,oo), point(5))").dim(), Dim::One);
}

#[test]
fn stratifications() {
    let fam = [p(DYADIC_CLOSED)];
    let st = stratify_line(&fam).unwrap();
    verify_stratification(&st, &fam).unwrap();
    assert_eq!(st.strata.len(), 3);
    let fam = [nested_chain(2)];
    let st = stratify_line(&fam).unwrap();
    verify_stratification(&st, &fam).unwrap();
    // each derivative layer is a stratum whose frontier is the union of the later layers
    let layers = nested_chain(2).decompose_discrete(3).unwrap();
    for (i, l) in layers.iter().enumerate() {
        let k = st.strata.iter().position(|s| same(&s.set, l)).expect("each layer is a stratum");
        let mut below = Tame1DSet::empty();
        for m in &layers[i + 1..] {
            below = below.union(m).unwrap();
        }
        assert!(same(&st.strata[k].set.frontier().unwrap(), &below));
    }
}

#[test]
fn truncations() {
    let t = p(DYADIC_CLOSED).truncate(1, 3).points;
    let want: BTreeSet<Rat> = [int(1), rat(1, 2), rat(1, 4), int(0)].into_iter().collect();
    assert_eq!(t, want);
    assert_eq!(nested_chain(2).truncate(2, 2).points.len(), 2 * 3 + 1);
    assert!(Tame1DSet::empty().truncate(3, 3).points.is_empty());
}

#[test]
fn expressions_round_trip() {
    for src in ["empty", DYADIC, DYADIC_CLOSED, "union(interval(-inf,0,oc), point(3/2))", "chain(1,-1,1/4,chain(0,1,1/2,point,closed))"] {
        let a = p(src);
        assert!(same(&p(&a.as_expr()), &a), "{src} -> {}", a.as_expr());
    }
}
