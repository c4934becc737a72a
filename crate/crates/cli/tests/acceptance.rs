//! Acceptance run: prints one `criterion N: pass|fail` line per criterion
//! and exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use twistforge_cli::commands::record_field;
use twistforge_cli::expr::parse_radical_poly;
use twistforge_cli::selftest::{genus6_spec, nf_cocycles, trivial_spec};
use twistforge_cli::{cmd_pairs, cmd_twist, prepare, Budgets, CurveSpec, Mode, TwistDocument, TwistOptions};
use twistforge_core::embedkit::Cocycle;
use twistforge_core::exactfield::{CycNum, GaloisUnit};
use twistforge_core::grouplab::GammaGroup;
use twistforge_core::linalg::{self, Matrix};
use twistforge_core::twistcore::{
    build_twisted_action, compute_twist, evaluate_generators, fixed_subspace_kernel, fixed_subspace_reynolds,
    DifferentialRep,
};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Fixture {
    spec: CurveSpec,
    gamma: GammaGroup,
    doc: TwistDocument,
}

fn criterion_1(f: &Fixture) -> Outcome {
    let (report, _) = cmd_pairs(&f.spec, &f.gamma, &Budgets::default()).map_err(|e| e.to_string())?;
    let rows: Vec<(usize, usize, usize)> = report.pairs.iter().map(|p| (p.order_g, p.order_h, p.solutions)).collect();
    check(rows == [(12, 1, 1), (36, 3, 2), (84, 7, 6), (252, 21, 12)], || format!("rows {rows:?}"))?;
    let expected: [&[&str]; 4] = [&[], &["r"], &["s"], &["r", "s"]];
    for (p, want) in report.pairs.iter().zip(expected) {
        let got: BTreeSet<&str> = p.h_generators.iter().map(String::as_str).collect();
        check(got == want.iter().copied().collect(), || format!("row {}: H generated by {:?}", p.index, p.h_generators))?;
    }
    Ok(format!("{rows:?}"))
}

fn criterion_2(f: &Fixture) -> Outcome {
    let per_pair: Vec<usize> = (1..=4).map(|i| f.doc.twists.iter().filter(|t| t.pair == Some(i)).count()).collect();
    check(f.doc.twist_count == 21 && per_pair == [1, 2, 6, 12], || format!("{} records, {per_pair:?}", f.doc.twist_count))?;
    Ok("21 records (1 + 2 + 6 + 12)".into())
}

fn base(f: &Fixture, case: usize) -> Result<&twistforge_cli::TwistRecord, String> {
    f.doc.twists.iter().find(|t| t.pair == Some(case)).ok_or(format!("no record for case {case}"))
}

fn criterion_3(f: &Fixture) -> Outcome {
    let expected: [[&str; 6]; 3] = [
        ["m^(2/3)*w1", "m^(2/3)*w2", "m^(2/3)*w3", "m^(1/3)*w4", "m^(2/3)*w5", "m^(1/3)*w6"],
        ["n^(6/7)*w1", "n^(5/7)*w2", "n^(4/7)*w3", "n^(6/7)*w4", "n^(3/7)*w5", "n^(5/7)*w6"],
        [
            "m^(2/3)*n^(6/7)*w1",
            "m^(2/3)*n^(5/7)*w2",
            "m^(2/3)*n^(4/7)*w3",
            "m^(1/3)*n^(6/7)*w4",
            "m^(2/3)*n^(3/7)*w5",
            "m^(1/3)*n^(5/7)*w6",
        ],
    ];
    for (case, want) in (2..=4).zip(expected) {
        let rec = base(f, case)?;
        check(rec.basis == want, || format!("case {case}: {:?}", rec.basis))?;
    }
    Ok("cases 2, 3, 4".into())
}

fn criterion_4(f: &Fixture) -> Outcome {
    let quadrics = [
        "w1*w6 - w2*w4",
        "w2^2 - w1*w3",
        "w2*w3 - w1*w5",
        "w2*w5 - w3^2",
        "w2*w6 - w3*w4",
        "w3*w6 - w4*w5",
    ];
    let cubics = [
        ("m*w4^3 - w3^2*w5 + w1^3", "w5^3 - m*w4*w6^2 - w1*w2^2"),
        ("w4^3 - n*w3^2*w5 + w1^3", "n*w5^3 - w4*w6^2 - w1*w2^2"),
        ("m*w4^3 - n*w3^2*w5 + w1^3", "n*w5^3 - m*w4*w6^2 - w1*w2^2"),
    ];
    for (case, (c1, c2)) in (2..=4).zip(cubics) {
        let rec = base(f, case)?;
        let field = record_field(rec).map_err(|e| e.to_string())?;
        let want: Vec<&str> = quadrics.iter().copied().chain([c1, c2]).collect();
        check(rec.generators.len() == 8, || format!("case {case}: {} generators", rec.generators.len()))?;
        for (got, want) in rec.generators.iter().zip(want) {
            let a = parse_radical_poly(got, &field, 6).map_err(|e| e.to_string())?;
            let b = parse_radical_poly(want, &field, 6).map_err(|e| e.to_string())?;
            check(a == b, || format!("case {case}: got `{got}`, expected `{want}`"))?;
        }
    }
    Ok("case 4 matches the closing list; cases 2 and 3 match".into())
}

/// ξ_{στ} = ξ_σ · ^σξ_τ on every pair of the domain, straight from Γ's table.
fn cocycle_law(c: &Cocycle, g: &GammaGroup) -> Result<(), String> {
    let d = c.domain();
    for x in 0..d.len() {
        for y in 0..d.len() {
            let lhs = c.value(d.mul(x, y));
            let twisted = g.act(c.restriction(x), c.value(y));
            let rhs = g.aut().table().mul(c.value(x), twisted);
            check(lhs == rhs, || format!("law fails at ({}, {})", c.label(x), c.label(y)))?;
        }
    }
    Ok(())
}

fn criterion_5(f: &Fixture) -> Outcome {
    let rep = DifferentialRep::from_aut(f.gamma.aut()).map_err(|e| e.to_string())?;
    let ideal = f.spec.ideal();
    let cocycles = nf_cocycles(&f.spec, &f.gamma).map_err(|e| e.to_string())?;
    check(cocycles.len() == 21, || format!("{} cocycles", cocycles.len()))?;
    let mut rng = StdRng::seed_from_u64(20_250_421);
    let mut nontrivial = 0;
    for (i, c) in cocycles.iter().enumerate() {
        cocycle_law(c, &f.gamma).map_err(|e| format!("record {i}: {e}"))?;

        let m = build_twisted_action(c, &rep).map_err(|e| format!("record {i}: {e}"))?;
        let gens = m.ext().generators().len();
        let mut words: Vec<(Vec<usize>, Vec<usize>)> =
            (0..gens).flat_map(|a| (0..gens).map(move |b| (vec![a], vec![b]))).collect();
        for _ in 0..50 {
            let mut w = || (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(0..gens)).collect::<Vec<_>>();
            words.push((w(), w()));
        }
        m.check_words(&words).map_err(|e| format!("record {i}: {e}"))?;

        let kernel = fixed_subspace_kernel(&m).map_err(|e| format!("record {i}: {e}"))?;
        check(kernel == fixed_subspace_reynolds(&m), || format!("record {i}: kernel and Reynolds spans differ"))?;
        if !c.is_trivial() {
            nontrivial += 1;
            check(kernel.dimension() == 6, || format!("record {i}: fixed dimension {}", kernel.dimension()))?;
        }

        let out = compute_twist(c, &rep, &ideal, false).map_err(|e| format!("record {i}: {e}"))?;
        out.basis.check_cocycle_identity(&out.actions).map_err(|e| format!("record {i}: {e}"))?;
        let ones = vec![1; out.basis.spec.slots().len()];
        let collapsed = evaluate_generators(&out.generators, &ones).map_err(|e| e.to_string())?;
        check(collapsed == ideal.generators(), || format!("record {i}: parameters = 1 does not give F"))?;
    }
    check(nontrivial == 20, || format!("{nontrivial} nontrivial cocycles"))?;
    Ok("21 cocycles: law, ρ on generators + 50 words, dim 6 ×20, kernel = Reynolds, η identity, collapse".into())
}

/// (φ,1)(A,b)(φ,1)⁻¹ = (φ·A·^bφ⁻¹, b), counted with the matrices themselves.
fn matrix_orbits(mats: &[Matrix<CycNum>], b: &GaloisUnit) -> usize {
    let conj_b = |m: &Matrix<CycNum>| -> Matrix<CycNum> {
        m.iter().map(|r| r.iter().map(|c| c.galois(b).unwrap()).collect()).collect()
    };
    let mut seen: Vec<Matrix<CycNum>> = Vec::new();
    let mut orbits = 0;
    for a in mats {
        if seen.contains(a) {
            continue;
        }
        orbits += 1;
        for phi in mats {
            let inv = linalg::inverse(phi).unwrap();
            let y = linalg::mat_mul(&linalg::mat_mul(phi, a).unwrap(), &conj_b(&inv)).unwrap();
            if !seen.contains(&y) {
                seen.push(y);
            }
        }
    }
    orbits
}

fn criterion_6(f: &Fixture) -> Outcome {
    let mats: Vec<Matrix<CycNum>> = f.gamma.aut().elements().to_vec();
    check(mats.len() * f.gamma.gal().order() == 252, || "Γ does not have 252 elements".into())?;
    let mut seen = Vec::new();
    for u in f.gamma.gal().elements() {
        let opts = TwistOptions {
            mode: Mode::FiniteField { frobenius: u.exponent() as i64 },
            equations: false,
            ..TwistOptions::default()
        };
        let doc = cmd_twist(&f.spec, &f.gamma, &opts).map_err(|e| e.to_string())?;
        let oracle = matrix_orbits(&mats, u);
        check(doc.twist_count == oracle, || format!("b = {}: {} twists, oracle {oracle}", u.exponent(), doc.twist_count))?;
        seen.push(format!("{}:{}", u.exponent(), oracle));
    }
    check(seen.len() == 12, || format!("{} units", seen.len()))?;
    Ok(seen.join(" "))
}

fn criterion_7() -> Outcome {
    let spec = trivial_spec().map_err(|e| e.to_string())?;
    let gamma = prepare(&spec, &Budgets::default()).map_err(|e| e.to_string())?;
    let doc = cmd_twist(&spec, &gamma, &TwistOptions::default()).map_err(|e| e.to_string())?;
    check(doc.twist_count == 1, || format!("{} twists", doc.twist_count))?;
    let rec = &doc.twists[0];
    let field = record_field(rec).map_err(|e| e.to_string())?;
    for ((_, f), got) in spec.ideal_generators.iter().zip(&rec.generators) {
        let p = parse_radical_poly(got, &field, 6).map_err(|e| e.to_string())?;
        check(p == twistforge_core::polyring::embed(f, &field), || format!("`{got}` differs from `{f}`"))?;
    }
    Ok("exactly one twist with F' = F".into())
}

fn criterion_8() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_twistforge"))
        .arg("selftest")
        .env_remove("TWISTFORGE_FIXTURES")
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let passes = text.lines().filter(|l| l.contains(": pass - ")).count();
    check(out.status.success() && passes == 7, || format!("exit {:?}, {passes} of 7 criteria passed:\n{text}", out.status.code()))?;
    Ok("selftest exits 0 with criteria 1–7 passing".into())
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut report = |n: usize, limit: Option<Duration>, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let mut r = run();
        let took = start.elapsed();
        if let (Ok(d), Some(l)) = (&r, limit) {
            if took > l {
                r = Err(format!("{d}; took {:.1}s, limit {}s", took.as_secs_f64(), l.as_secs()));
            }
        }
        match r {
            Ok(d) => println!("criterion {n}: pass ({d}) [{:.1}s]", took.as_secs_f64()),
            Err(d) => {
                failures += 1;
                println!("criterion {n}: fail ({d}) [{:.1}s]", took.as_secs_f64());
            }
        }
    };

    let setup = (|| -> Result<Fixture, String> {
        let spec = genus6_spec().map_err(|e| e.to_string())?;
        let gamma = prepare(&spec, &Budgets::default()).map_err(|e| e.to_string())?;
        let doc = cmd_twist(&spec, &gamma, &TwistOptions::default()).map_err(|e| e.to_string())?;
        Ok(Fixture { spec, gamma, doc })
    })();
    match &setup {
        Ok(f) => {
            report(1, Some(Duration::from_secs(300)), &mut || criterion_1(f));
            report(2, None, &mut || criterion_2(f));
            report(3, None, &mut || criterion_3(f));
            report(4, None, &mut || criterion_4(f));
            report(5, None, &mut || criterion_5(f));
            report(6, Some(Duration::from_secs(10)), &mut || criterion_6(f));
        }
        Err(e) => {
            for n in 1..=6 {
                report(n, None, &mut || Err(format!("fixture setup failed: {e}")));
            }
        }
    }
    report(7, None, &mut criterion_7);
    report(8, Some(Duration::from_secs(600)), &mut criterion_8);

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
