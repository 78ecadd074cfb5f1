use tametop::whitney::{check_condition, gallery, Condition, PairSpec, VerdictKind, WhitneyError, GALLERY};
use tametop::PairSpec32;

#[test]
fn documented_verdicts() {
    for name in GALLERY {
        let spec = gallery::<f64>(name).unwrap();
        assert!(!spec.expect.is_empty(), "{name} documents no verdict");
        for &(c, want) in &spec.expect {
            let (v, sweep) = check_condition(c, &spec).unwrap();
            assert_eq!(v.kind, want, "{name} {c}: {:?}", sweep.rows);
            assert_eq!(sweep.rows.len(), spec.scales);
            assert!(sweep.rows.iter().all(|r| r.samples > 0));
        }
    }
}

#[test]
fn spiral_tangent_angle_is_constant() {
    // the tangent of a spiral sheet makes a 45 degree angle with the axis everywhere
    let spec = gallery::<f64>("spiral").unwrap();
    let (v, sweep) = check_condition(Condition::A, &spec).unwrap();
    for r in &sweep.rows {
        assert!((r.quantity_max - 2f64.sqrt() / 2.0).abs() < 1e-9, "{}", r.quantity_max);
    }
    assert!((v.margin - 2f64.sqrt() / 2.0 / 0.1).abs() < 1e-6);
}

#[test]
fn exp_curves_ratio_grows_geometrically() {
    let spec = gallery::<f64>("exp-curves").unwrap();
    let (v, sweep) = check_condition(Condition::W, &spec).unwrap();
    assert_eq!(v.kind, VerdictKind::Fails);
    assert!(v.growth >= 16.0, "growth {}", v.growth);
    let m: Vec<f64> = sweep.rows.iter().map(|r| r.quantity_max).collect();
    assert!(m.windows(2).all(|w| w[1] >= w[0]), "{m:?}");
}

#[test]
fn half_plane_holds_exactly() {
    let spec = gallery::<f64>("half-plane").unwrap();
    for c in [Condition::A, Condition::B, Condition::W] {
        let (v, sweep) = check_condition(c, &spec).unwrap();
        assert_eq!(v.kind, VerdictKind::Holds);
        assert!(sweep.rows.iter().all(|r| r.quantity_max < 1e-12));
    }
}

#[test]
fn single_precision_agrees() {
    for name in GALLERY {
        let spec: PairSpec32 = gallery(name).unwrap();
        for &(c, want) in &spec.expect {
            assert_eq!(check_condition(c, &spec).unwrap().0.kind, want, "{name} {c} in f32");
        }
    }
}

#[test]
fn csv_has_one_row_per_scale() {
    let spec = gallery::<f64>("stacked-lines").unwrap();
    let (_, sweep) = check_condition(Condition::B, &spec).unwrap();
    let csv = sweep.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "scale,quantity_max,samples");
    assert_eq!(lines.len(), spec.scales + 1);
}

#[test]
fn rejects_bad_specs() {
    assert!(matches!(gallery::<f64>("torus"), Err(WhitneyError::UnknownGallery(_))));
    let far = r#"{"name":"far","x":{"ambient":2,"charts":[{"params":["u"],"box":[[0,1]],"coords":["u","5"]}]},
        "y":{"ambient":2,"charts":[{"params":["u"],"box":[[-1,1]],"coords":["u","0"]}]},"base_point":[0,0]}"#;
    assert!(matches!(PairSpec::<f64>::from_json(far), Err(WhitneyError::NotInFrontier { .. })));
    let off = far.replace("\"5\"", "\"u\"").replace("[0,0]", "[0,1]");
    assert!(PairSpec::<f64>::from_json(&off).is_err());
    let typo = far.replace("\"box\"", "\"bx\"");
    assert!(matches!(PairSpec::<f64>::from_json(&typo), Err(WhitneyError::Spec(_))));
    let bad_expr = far.replace("\"5\"", "\"u*\"");
    assert!(matches!(PairSpec::<f64>::from_json(&bad_expr), Err(WhitneyError::Parse { .. })));
}
