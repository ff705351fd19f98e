use serde_json::json;
use torelli::report::{cmd_cells, cmd_lantern, cmd_smodule, Expectations, Report, RunConfig};

fn quick() -> RunConfig {
    RunConfig { samples: 8, max_splittings: Some(400), ..Default::default() }
}

#[test]
fn altered_expectation_is_reported() {
    let mut r = cmd_cells(&quick()).unwrap();
    assert!(r.passed());
    let mut e = Expectations::bundled();
    e.verdicts.insert("cells.cd.N_1^3".into(), json!(3));
    r.judge(&e);
    assert_eq!(r.mismatches.len(), 1);
    assert_eq!(r.mismatches[0].actual, json!(2));
    assert!(!r.passed());
}

#[test]
fn report_round_trips_through_json() {
    let r = cmd_lantern(&quick(), "default").unwrap();
    let back: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
    assert!(r.judged_count(&Expectations::bundled()) >= 5);
}

#[test]
fn smodule_verdicts_do_not_depend_on_seed() {
    let a = cmd_smodule(&RunConfig { seed: 1, ..quick() }).unwrap();
    let b = cmd_smodule(&RunConfig { seed: 99, ..quick() }).unwrap();
    assert!(a.passed(), "{:?}", a.mismatches);
    assert_eq!(a.verdicts, b.verdicts);
}
