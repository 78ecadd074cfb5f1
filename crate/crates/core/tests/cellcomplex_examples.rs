use tametop::cellcomplex::{chain_complex, check_rank_inequalities_seeded, unit_interval_complex, Violation};
use tametop::{ComplexError, Ordinal, StratComplex, StrataSet};

fn rank(k: &StratComplex, x: StrataSet) -> i64 {
    k.pillay_rank_value(x)
}

#[test]
fn validation_witnesses() {
    assert!(StratComplex::from_json(r#"{"cells":[]}"#).unwrap().validate().is_empty());
    let k = StratComplex::from_json(r#"{"cells":[{"id":"c","dim":0}],"frontier":[["c","c"]]}"#).unwrap();
    assert!(matches!(k.validated(), Err(ComplexError::InvalidComplex(Violation::Irreflexivity(c))) if c == "c"));
    let k = StratComplex::from_json(
        r#"{"cells":[{"id":"a","dim":0},{"id":"b","dim":1},{"id":"c","dim":2}],"frontier":[["a","b"],["b","c"]]}"#,
    )
    .unwrap();
    assert_eq!(k.validate(), vec![Violation::Transitivity("a".into(), "b".into(), "c".into())]);
    assert!(matches!(
        StratComplex::from_json(r#"{"cells":[{"id":"a","dim":0}],"frontier":[["a","z"]]}"#),
        Err(ComplexError::UnknownCell(_))
    ));
}

#[test]
fn unit_interval_topology() {
    let k = unit_interval_complex();
    let ends = k.set_of(&["c0", "c1"]).unwrap();
    let open = k.set_of(&["c2"]).unwrap();
    assert_eq!(k.closure_of(open), k.all());
    assert_eq!(k.interior_in(k.all(), k.all()).unwrap(), k.all());
    assert!(k.interior_in(k.set_of(&["c0"]).unwrap(), k.all()).unwrap().is_empty());
    assert!(k.is_nowhere_dense_in(StrataSet::EMPTY, k.all()).unwrap());
    assert!(!k.is_nowhere_dense_in(k.all(), k.all()).unwrap());
    assert!(k.is_nowhere_dense_in(ends, k.all()).unwrap());
    assert!(k.is_open_in(open, k.all()) && k.is_closed_in(ends, k.all()));
}

#[test]
fn ranks_match_the_oracle() {
    let single = StratComplex::from_relation(&[2], &[]);
    assert_eq!(single.pillay_rank(single.all()), Some(Ordinal::zero()));
    for n in 0..=6 {
        let k = chain_complex(n);
        assert_eq!(k.pillay_rank(k.all()), Some(Ordinal::from(n as u64)));
        assert_eq!(k.pillay_rank_oracle(k.all()).unwrap(), Some(Ordinal::from(n as u64)));
    }
    let k = unit_interval_complex();
    assert_eq!(k.pillay_rank(k.all()), Some(Ordinal::one()));
    assert_eq!(k.max_dim(k.all()), Some(1));
}

#[test]
fn union_bound_on_chain() {
    // A = top stratum (open in X), B = the rest: rk(X) <= rk(A) + rk(B) + 1
    let k = chain_complex(2);
    let a = k.set_of(&["c2"]).unwrap();
    let b = k.all().minus(a);
    assert_eq!(rank(&k, k.all()), 2);
    assert_eq!((rank(&k, a), rank(&k, b)), (0, 1));
    assert!(rank(&k, k.all()) <= rank(&k, a) + rank(&k, b) + 1);
}

#[test]
fn inequalities_hold_and_are_deterministic() {
    let k = chain_complex(4);
    let first: Vec<String> = check_rank_inequalities_seeded(&k, 7, 32).iter().map(ToString::to_string).collect();
    let again: Vec<String> = check_rank_inequalities_seeded(&k, 7, 32).iter().map(ToString::to_string).collect();
    assert_eq!(first, again);
    assert!(first.iter().all(|l| l.contains(" PASS ")), "{first:?}");
}

#[test]
fn lomin_counterexample_outside_graded_complexes() {
    // a point in the frontier of a 2-cell: rank 1, dimension 2
    let k = StratComplex::from_relation(&[0, 2], &[(0, 1)]);
    assert!(!k.is_dimension_graded());
    assert_eq!(rank(&k, k.all()), 1);
    assert_eq!(k.max_dim(k.all()), Some(2));
    let lomin = check_rank_inequalities_seeded(&k, 1, 8).into_iter().find(|c| c.name == "rkp_lomin").unwrap();
    assert!(lomin.pass && lomin.witness.contains("vacuous"), "{lomin}");
}

#[test]
fn json_round_trip() {
    let k = chain_complex(3);
    let src = serde_json::to_string(&k.to_spec()).unwrap();
    let back = StratComplex::from_json(&src).unwrap();
    assert_eq!(back.len(), 4);
    assert_eq!(back.pillay_rank(back.all()), Some(Ordinal::from(3)));
}
