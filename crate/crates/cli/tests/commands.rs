use std::process::Command;

use twistforge_cli::commands::{parse_eval, record_field};
use twistforge_cli::expr::parse_radical_poly;
use twistforge_cli::report::to_json;
use twistforge_cli::selftest::{genus6_spec, nf_cocycles, trivial_spec, GENUS6_FIXTURE};
use twistforge_cli::{cmd_pairs, cmd_twist, cmd_verify, parse_curve_spec, prepare, Budgets, Mode, TwistDocument, TwistOptions};
use twistforge_core::twistcore::{compute_twist, DifferentialRep};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twistforge"))
}

#[test]
fn verify_reports_order_and_preservation() {
    let spec = genus6_spec().unwrap();
    let (report, gamma) = cmd_verify(&spec, &Budgets::default()).unwrap();
    assert!(report.all_passed());
    assert_eq!(report.aut_order, Some(21));
    assert_eq!(gamma.unwrap().order(), 252);

    let (report, _) = cmd_verify(&trivial_spec().unwrap(), &Budgets::default()).unwrap();
    assert!(report.all_passed());
    assert_eq!(report.aut_order, Some(1));
}

#[test]
fn verify_names_a_bad_generator_and_equation() {
    // ζ₃ on ω₄ instead of ζ₃²: diagonal, invertible, but w1*w6 - w2*w4 is not preserved
    let text = GENUS6_FIXTURE.replace("r = diag(z^7, z^7, z^7, z^14, z^7, z^14)", "r = diag(z^7, z^7, z^7, z^7, z^7, z^14)");
    let spec = parse_curve_spec(&text).unwrap();
    let (report, gamma) = cmd_verify(&spec, &Budgets::default()).unwrap();
    assert!(gamma.is_none());
    let ideal = report.checks.iter().find(|c| c.name == "ideal").unwrap();
    assert!(!ideal.passed);
    assert!(ideal.detail.contains("automorphism r ") && ideal.detail.contains("f1"), "{}", ideal.detail);
    assert!(prepare(&spec, &Budgets::default()).is_err());
}

#[test]
fn trivial_spec_has_one_pair_and_one_twist() {
    let spec = trivial_spec().unwrap();
    let gamma = prepare(&spec, &Budgets::default()).unwrap();
    let (pairs, _) = cmd_pairs(&spec, &gamma, &Budgets::default()).unwrap();
    assert_eq!(pairs.pairs.len(), 1);
    assert_eq!((pairs.pairs[0].order_g, pairs.pairs[0].order_h, pairs.pairs[0].solutions), (12, 1, 1));
    let doc = cmd_twist(&spec, &gamma, &TwistOptions::default()).unwrap();
    assert_eq!(doc.twist_count, 1);
    let original: Vec<String> = spec.ideal_generators.iter().map(|(_, p)| p.to_string()).collect();
    assert_eq!(doc.twists[0].generators, original);
}

#[test]
fn pairs_are_sorted_by_order() {
    let spec = genus6_spec().unwrap();
    let gamma = prepare(&spec, &Budgets::default()).unwrap();
    let (report, _) = cmd_pairs(&spec, &gamma, &Budgets::default()).unwrap();
    let orders: Vec<usize> = report.pairs.iter().map(|p| p.order_g).collect();
    assert_eq!(orders, vec![12, 36, 84, 252]);
    let labels: Vec<&str> = report.pairs.iter().filter_map(|p| p.g_label.as_deref()).collect();
    assert_eq!(labels, vec!["<12,5>", "<36,12>", "<84,7>", "<252,26>"]);
}

#[test]
fn number_field_output_is_deterministic_and_round_trips() {
    let spec = genus6_spec().unwrap();
    let gamma = prepare(&spec, &Budgets::default()).unwrap();
    let opts = TwistOptions { cross_check: false, eval: Some(parse_eval("m=2,n=-3").unwrap()), ..TwistOptions::default() };
    let a = cmd_twist(&spec, &gamma, &opts).unwrap();
    let b = cmd_twist(&spec, &gamma, &opts).unwrap();
    let json = to_json(&a);
    assert_eq!(json, to_json(&b));
    let back: TwistDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
    assert!(a.all_passed);

    // re-parsing each emitted generator gives the computed polynomial
    let rep = DifferentialRep::from_aut(gamma.aut()).unwrap();
    let ideal = spec.ideal();
    for (c, rec) in nf_cocycles(&spec, &gamma).unwrap().iter().zip(&a.twists) {
        let out = compute_twist(c, &rep, &ideal, false).unwrap();
        let field = record_field(rec).unwrap();
        assert_eq!(field, out.basis.spec);
        for (text, p) in rec.generators.iter().zip(&out.generators) {
            assert_eq!(&parse_radical_poly(text, &field, 6).unwrap(), p, "{}", rec.id);
        }
        assert_eq!(rec.evaluated.len(), 8);
    }
}

#[test]
fn finite_field_mode_checks_the_frobenius() {
    let spec = genus6_spec().unwrap();
    let gamma = prepare(&spec, &Budgets::default()).unwrap();
    let bad = TwistOptions { mode: Mode::FiniteField { frobenius: 7 }, ..TwistOptions::default() };
    assert_eq!(cmd_twist(&spec, &gamma, &bad).unwrap_err().exit_code(), 2);
    let ok = TwistOptions { mode: Mode::FiniteField { frobenius: 2 }, ..TwistOptions::default() };
    let doc = cmd_twist(&spec, &gamma, &ok).unwrap();
    assert_eq!(doc.frobenius, Some(2));
    assert!(doc.all_passed);
    assert!(doc.twists.iter().all(|t| !t.generators.is_empty() || !t.note.is_empty()));
}

#[test]
fn eval_flag_parsing() {
    let m = parse_eval("m=2, n=-5").unwrap();
    assert_eq!(m.get("n"), Some(&-5));
    assert!(parse_eval("m").is_err());
    assert!(parse_eval("m=x").is_err());
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("twistforge-exit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let broken = write("broken.spec", &GENUS6_FIXTURE.replace("f2 = w2^2", "f2 = w2^^2"));
    let bad = write(
        "bad.spec",
        &GENUS6_FIXTURE.replace("r = diag(z^7, z^7, z^7, z^14, z^7, z^14)", "r = diag(z^7, z^7, z^7, z^7, z^7, z^14)"),
    );

    let st = bin().args(["verify", "genus6.spec"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&st.stdout).contains("order 21"));
    assert_eq!(bin().arg("verify").arg(&broken).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().arg("verify").arg(&bad).output().unwrap().status.code(), Some(1));
    assert_eq!(bin().arg("pairs").arg(&bad).output().unwrap().status.code(), Some(1));
    assert_eq!(bin().args(["pairs", "genus6.spec", "--budget-subgroups", "500"]).output().unwrap().status.code(), Some(3));
    assert_eq!(bin().args(["verify", "genus6.spec", "--budget-closure", "5"]).output().unwrap().status.code(), Some(3));
    assert_eq!(bin().args(["twist", "genus6.spec", "--mode", "ff"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["verify", "no-such.spec"]).output().unwrap().status.code(), Some(2));

    // the fixture directory can be redirected
    write("genus6.spec", &GENUS6_FIXTURE.replace("f2 = w2^2", "f2 = w2^^2"));
    let st = bin().args(["verify", "genus6.spec"]).env("TWISTFORGE_FIXTURES", &dir).output().unwrap().status;
    assert_eq!(st.code(), Some(2));

    let json = dir.join("pairs.json");
    let st = bin().args(["pairs", "genus6.spec", "--json"]).arg(&json).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["pairs"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(&dir).ok();
}
