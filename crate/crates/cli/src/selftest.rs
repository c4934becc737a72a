//! End-to-end checks on the shipped genus-6 fixture: the pair table, the
//! number of twists, fixed bases and equations of the base twists, the
//! structural properties of every record, the finite-field count against a
//! brute-force orbit count, and the trivial-automorphism sanity case.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use twistforge_core::embedkit::{pose_problem, solution_to_cocycle, solve_kummer, Cocycle};
use twistforge_core::grouplab::GammaGroup;
use twistforge_core::twistcore::{build_twisted_action, DifferentialRep};

use crate::commands::{cmd_pairs, cmd_twist, fixtures_dir, parse_named, prepare, record_field, Budgets, CliError, Mode, TwistOptions};
use crate::curvespec::CurveSpec;
use crate::expr::parse_radical_poly;
use crate::report::{TwistDocument, TwistRecord};

pub const GENUS6_FIXTURE: &str = include_str!("../fixtures/genus6.spec");
pub const TRIVIAL_FIXTURE: &str = include_str!("../fixtures/trivial.spec");

/// Expected pair table: (|G|, |H|, n, H-generator words).
pub const EXPECTED_PAIRS: [(usize, usize, usize, &[&str]); 4] =
    [(12, 1, 1, &[]), (36, 3, 2, &["r"]), (84, 7, 6, &["s"]), (252, 21, 12, &["r", "s"])];

/// Exponents of ∛m and ⁷√n on ω₁..ω₆ in the base fixed bases.
pub const CUBE_EXPONENTS: [u32; 6] = [2, 2, 2, 1, 2, 1];
pub const SEVENTH_EXPONENTS: [u32; 6] = [6, 5, 4, 6, 3, 5];

pub const WORD_PAIRS: usize = 50;
const WORD_SEED: u64 = 0x7715_7f06;

/// The fixed basis the base twist of `case` (2, 3 or 4) must produce.
pub fn expected_basis(case: usize) -> Vec<String> {
    (0..6)
        .map(|j| {
            let mut parts = Vec::new();
            if case == 2 || case == 4 {
                parts.push(format!("m^({}/3)", CUBE_EXPONENTS[j]));
            }
            if case == 3 || case == 4 {
                parts.push(format!("n^({}/7)", SEVENTH_EXPONENTS[j]));
            }
            parts.push(format!("w{}", j + 1));
            parts.join("*")
        })
        .collect()
}

/// The two cubics of the base twist of `case`; the quadrics never change.
pub fn expected_cubics(case: usize) -> [&'static str; 2] {
    match case {
        2 => ["m*w4^3 - w3^2*w5 + w1^3", "w5^3 - m*w4*w6^2 - w1*w2^2"],
        3 => ["w4^3 - n*w3^2*w5 + w1^3", "n*w5^3 - w4*w6^2 - w1*w2^2"],
        4 => ["m*w4^3 - n*w3^2*w5 + w1^3", "n*w5^3 - m*w4*w6^2 - w1*w2^2"],
        _ => ["w1^3 - w3^2*w5 + w4^3", "-w1*w2^2 - w4*w6^2 + w5^3"],
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub number: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestOutcome {
    pub results: Vec<CriterionResult>,
}

impl SelftestOutcome {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

fn fixture(name: &str, embedded: &str) -> Result<CurveSpec, CliError> {
    match std::env::var_os("TWISTFORGE_FIXTURES") {
        Some(_) => {
            let path = fixtures_dir().join(name);
            let text = std::fs::read_to_string(&path)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            parse_named(&text, &path.display().to_string())
        }
        None => parse_named(embedded, name),
    }
}

pub fn genus6_spec() -> Result<CurveSpec, CliError> {
    fixture("genus6.spec", GENUS6_FIXTURE)
}

pub fn trivial_spec() -> Result<CurveSpec, CliError> {
    fixture("trivial.spec", TRIVIAL_FIXTURE)
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn check_pairs(spec: &CurveSpec, gamma: &GammaGroup) -> Outcome {
    let (report, _) = cmd_pairs(spec, gamma, &Budgets::default()).map_err(|e| e.to_string())?;
    ensure(report.pairs.len() == EXPECTED_PAIRS.len(), || format!("{} pairs", report.pairs.len()))?;
    for (p, (g, h, n, words)) in report.pairs.iter().zip(EXPECTED_PAIRS) {
        let got: BTreeSet<&str> = p.h_generators.iter().map(String::as_str).collect();
        let want: BTreeSet<&str> = words.iter().copied().collect();
        ensure((p.order_g, p.order_h, p.solutions) == (g, h, n) && got == want, || {
            format!("row {}: ({}, {}, {}) {:?}", p.index, p.order_g, p.order_h, p.solutions, p.h_generators)
        })?;
    }
    Ok(format!("(12,1,1) (36,3,2) (84,7,6) (252,21,12); {} lookups", report.subgroup_lookups + report.automorphism_lookups))
}

pub fn check_twist_count(doc: &TwistDocument) -> Outcome {
    let per_pair: Vec<usize> = doc.families.iter().map(|f| f.solutions).collect();
    ensure(doc.twist_count == 21 && doc.twists.len() == 21 && per_pair == [1, 2, 6, 12], || {
        format!("{} records, per pair {per_pair:?}", doc.twist_count)
    })?;
    Ok("21 = 1 + 2 + 6 + 12".into())
}

/// The first record of each pair is its base solution.
pub fn base_record(doc: &TwistDocument, case: usize) -> Option<&TwistRecord> {
    doc.twists.iter().find(|t| t.pair == Some(case))
}

pub fn check_bases(doc: &TwistDocument) -> Outcome {
    for case in 2..=4 {
        let rec = base_record(doc, case).ok_or(format!("no record for case {case}"))?;
        ensure(rec.basis == expected_basis(case), || format!("case {case}: {:?}", rec.basis))?;
    }
    Ok("cases 2, 3, 4 match".into())
}

/// Compares emitted generators with expected text, as polynomials.
pub fn same_polys(rec: &TwistRecord, expected: &[String]) -> Result<(), String> {
    let field = record_field(rec).map_err(|e| e.to_string())?;
    ensure(rec.generators.len() == expected.len(), || format!("{} generators", rec.generators.len()))?;
    for (got, want) in rec.generators.iter().zip(expected) {
        let a = parse_radical_poly(got, &field, 6).map_err(|e| format!("re-parsing `{got}`: {e}"))?;
        let b = parse_radical_poly(want, &field, 6).map_err(|e| format!("parsing `{want}`: {e}"))?;
        ensure(a == b, || format!("`{got}` ≠ `{want}`"))?;
    }
    Ok(())
}

pub fn expected_generators(spec: &CurveSpec, case: usize) -> Vec<String> {
    let mut out: Vec<String> = spec.ideal_generators[..6].iter().map(|(_, p)| p.to_string()).collect();
    out.extend(expected_cubics(case).iter().map(|s| s.to_string()));
    out
}

pub fn check_equations(spec: &CurveSpec, doc: &TwistDocument) -> Outcome {
    for case in 2..=4 {
        let rec = base_record(doc, case).ok_or(format!("no record for case {case}"))?;
        same_polys(rec, &expected_generators(spec, case)).map_err(|e| format!("case {case}: {e}"))?;
    }
    Ok("cases 2, 3, 4 match".into())
}

const REQUIRED_CHECKS: [&str; 7] =
    ["solution", "cocycle-law", "cocycle-identity", "fixed-dimension", "reynolds", "collapse", "invertible"];

pub fn nf_cocycles(spec: &CurveSpec, gamma: &GammaGroup) -> Result<Vec<Cocycle>, CliError> {
    let (_, pairs) = cmd_pairs(spec, gamma, &Budgets::default())?;
    let mut out = Vec::new();
    for p in &pairs {
        let problem = pose_problem(p, gamma).map_err(|e| CliError::Failed(e.to_string()))?;
        let fam = solve_kummer(&problem.with_radical_names(spec.kummer.clone())).map_err(|e| CliError::Failed(e.to_string()))?;
        out.extend(fam.solutions.iter().map(|s| solution_to_cocycle(s, gamma)));
    }
    Ok(out)
}

/// `count` pairs of random words in `gens` generators, lengths 0..=4.
pub fn random_word_pairs(rng: &mut StdRng, gens: usize, count: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let word = |rng: &mut StdRng| {
        let len = rng.gen_range(0..=4);
        (0..len).map(|_| rng.gen_range(0..gens)).collect::<Vec<_>>()
    };
    (0..count).map(|_| (word(rng), word(rng))).collect()
}

pub fn check_properties(spec: &CurveSpec, gamma: &GammaGroup, doc: &TwistDocument) -> Outcome {
    for rec in &doc.twists {
        for name in REQUIRED_CHECKS {
            let c = rec.checks.iter().find(|c| c.name == name).ok_or(format!("{}: no {name} check", rec.id))?;
            ensure(c.passed, || format!("{}: {name}: {}", rec.id, c.detail))?;
        }
        if rec.pair != Some(1) {
            ensure(rec.fixed_dimension == Some(6), || format!("{}: fixed dimension {:?}", rec.id, rec.fixed_dimension))?;
        }
    }
    let nontrivial = doc.twists.iter().filter(|t| t.pair != Some(1)).count();
    ensure(nontrivial == 20, || format!("{nontrivial} nontrivial records"))?;

    let rep = DifferentialRep::from_aut(gamma.aut()).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(WORD_SEED);
    let cocycles = nf_cocycles(spec, gamma).map_err(|e| e.to_string())?;
    for (c, rec) in cocycles.iter().zip(&doc.twists) {
        // build_twisted_action already checks generator products and orders
        let m = build_twisted_action(c, &rep).map_err(|e| format!("{}: {e}", rec.id))?;
        let words = random_word_pairs(&mut rng, m.ext().generators().len(), WORD_PAIRS);
        m.check_words(&words).map_err(|e| format!("{}: {e}", rec.id))?;
    }
    Ok(format!("{} records; {WORD_PAIRS} random word pairs each", doc.twists.len()))
}

/// Orbits of {γ : π₂(γ) = b} under conjugation by Aut × 1, by union-find on
/// the multiplication table.
pub fn brute_force_orbits(gamma: &GammaGroup, s: usize) -> usize {
    let t = gamma.table();
    let members: Vec<usize> = (0..gamma.order()).filter(|&x| gamma.pi2(x) == s).collect();
    let pos = |x: usize| members.iter().position(|&y| y == x).expect("conjugation preserves π₂");
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (i, &x) in members.iter().enumerate() {
        for a in 0..gamma.aut().order() {
            let phi = gamma.from_aut(a);
            let y = t.mul(t.mul(phi, x), t.inv(phi));
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, pos(y)));
            parent[ri] = rj;
        }
    }
    (0..members.len()).filter(|&i| root(&mut parent, i) == i).count()
}

pub fn check_finite_field(spec: &CurveSpec, gamma: &GammaGroup) -> Outcome {
    let mut counts = Vec::new();
    for (s, unit) in gamma.gal().elements().iter().enumerate() {
        let b = unit.exponent() as i64;
        let opts = TwistOptions { mode: Mode::FiniteField { frobenius: b }, equations: false, ..TwistOptions::default() };
        let doc = cmd_twist(spec, gamma, &opts).map_err(|e| format!("b = {b}: {e}"))?;
        let oracle = brute_force_orbits(gamma, s);
        ensure(doc.twist_count == oracle && doc.all_passed, || format!("b = {b}: {} twists, oracle {oracle}", doc.twist_count))?;
        counts.push(format!("{b}:{oracle}"));
    }
    ensure(counts.len() == 12, || format!("{} units", counts.len()))?;
    Ok(counts.join(" "))
}

pub fn check_trivial(spec: &CurveSpec) -> Outcome {
    let gamma = prepare(spec, &Budgets::default()).map_err(|e| e.to_string())?;
    let doc = cmd_twist(spec, &gamma, &TwistOptions::default()).map_err(|e| e.to_string())?;
    ensure(doc.twist_count == 1 && doc.all_passed, || format!("{} twists", doc.twist_count))?;
    let expected: Vec<String> = spec.ideal_generators.iter().map(|(_, p)| p.to_string()).collect();
    same_polys(&doc.twists[0], &expected)?;
    Ok("one twist, F' = F".into())
}

fn time<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

/// Runs criteria 1–7, writing one line per criterion to `out`.
pub fn run_selftest(out: &mut impl Write) -> Result<SelftestOutcome, CliError> {
    let mut outcome = SelftestOutcome::default();
    let mut record = |number, name, (r, elapsed): (Outcome, Duration), limit: Option<Duration>| {
        let (mut passed, mut detail) = match r {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if let Some(l) = limit.filter(|l| elapsed > *l) {
            passed = false;
            detail = format!("{detail}; took longer than {}s", l.as_secs());
        }
        let _ = writeln!(
            out,
            "criterion {number}: {} - {name}: {detail} [{:.1}s]",
            if passed { "pass" } else { "fail" },
            elapsed.as_secs_f64()
        );
        let _ = out.flush();
        outcome.results.push(CriterionResult { number, name, passed, detail, elapsed });
    };

    let spec = genus6_spec()?;
    let gamma = prepare(&spec, &Budgets::default())?;
    record(1, "pair table", time(|| check_pairs(&spec, &gamma)), Some(Duration::from_secs(300)));

    let (doc, nf_time) = time(|| cmd_twist(&spec, &gamma, &TwistOptions::default()));
    let doc = doc?;
    record(2, "twist count", (check_twist_count(&doc), nf_time), None);
    record(3, "fixed bases", time(|| check_bases(&doc)), None);
    record(4, "twisted ideals", time(|| check_equations(&spec, &doc)), None);
    record(5, "property suite", time(|| check_properties(&spec, &gamma, &doc)), None);
    record(6, "finite-field oracle", time(|| check_finite_field(&spec, &gamma)), Some(Duration::from_secs(10)));
    let trivial = trivial_spec()?;
    record(7, "trivial twist", time(|| check_trivial(&trivial)), None);
    Ok(outcome)
}

