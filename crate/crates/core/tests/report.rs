use ncderham::calculus::{parse_selection, Calculus};
use ncderham::exterior::TowerOptions;
use ncderham::group::FiniteGroup;
use ncderham::report::{self, RunOptions, Status};

fn calc(group: &FiniteGroup, sel: &str) -> Calculus {
    Calculus::new(group.clone(), &parse_selection(group, sel).unwrap()).unwrap()
}

#[test]
fn transposition_calculus_passes_every_check() {
    let s3 = FiniteGroup::builtin("S3").unwrap();
    let r = report::analyze("S3", &calc(&s3, "a"), &RunOptions::default()).unwrap();
    assert!(r.passed(), "{:?}", r.failures());
    assert_eq!(r.dims, [1, 3, 4, 3, 1]);
    assert_eq!(r.betti, [1, 1, 0, 1, 1]);
    assert_eq!(r.kn.as_ref().unwrap().trefoil_right, 9);
    assert_eq!(r.checks["lemma1"].status, Status::Pass);
    assert_eq!(r.checks["conjecture2_double_dual"].status, Status::Reported);
    assert!(r.timing_ms.is_none());
}

#[test]
fn reversed_volume_is_reported_not_failed() {
    let s3 = FiniteGroup::builtin("S3").unwrap();
    let r = report::analyze("S3", &calc(&s3, "ab"), &RunOptions::default()).unwrap();
    assert!(r.passed());
    let check = &r.checks["volume_biinvariant"];
    assert_eq!(check.status, Status::Reported);
    assert!(check.detail.contains("a,b,c"), "{}", check.detail);
    assert_eq!(r.calculus.graph_components, 2);
}

#[test]
fn capped_tower_skips_what_needs_the_top_degree() {
    let q = FiniteGroup::builtin("Q").unwrap();
    let opts = RunOptions { tower: TowerOptions::with_cap(3), timing: false };
    let r = report::analyze("Q", &calc(&q, "i,j"), &opts).unwrap();
    assert!(!r.calculus.complete);
    assert_eq!(r.checks["hodge_dual"].status, Status::Skipped);
    assert_eq!(r.checks["d_squared_zero"].status, Status::Pass);
    assert!(r.passed());
}

#[test]
fn json_and_table_are_deterministic() {
    let z6 = FiniteGroup::builtin("Z6").unwrap();
    let c = calc(&z6, "u").star_completion();
    let a = report::analyze("Z6", &c, &RunOptions::default()).unwrap();
    let b = report::analyze("Z6", &c, &RunOptions::default()).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_table(), b.to_table());
    let v: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["checks"]["yang_baxter"]["status"], "pass");
}
