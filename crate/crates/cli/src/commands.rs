use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;
use twistforge_core::embedkit::{pose_problem, solution_to_cocycle, solve_finite_field, solve_kummer, Cocycle};
use twistforge_core::exactfield::{GaloisUnit, RadFieldSpec};
use twistforge_core::grouplab::{
    build_gamma, enumerate_pairs_with, Budget, GammaGroup, PairGH, DEFAULT_CLOSURE_BOUND, DEFAULT_NODE_BUDGET,
};
use twistforge_core::polyring::{embed, CanonicalIdeal};
use twistforge_core::twistcore::{compute_twist, evaluate_generators, verify_twist, DifferentialRep, TwistOutput};
use twistforge_core::{CycNum, Error};

use crate::curvespec::{parse_curve_spec, CurveSpec, ParseError};
use crate::report::{
    CheckRecord, CocycleValue, FamilyRecord, PairRecord, PairsReport, Radical, TwistDocument, TwistRecord, VerifyReport,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn core(e: Error, context: &str) -> Self {
        match e {
            Error::BudgetExhausted(_) | Error::ClosureBound(_) => CliError::Budget(format!("{context}: {e}")),
            e => CliError::Failed(format!("{context}: {e}")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub closure: usize,
    pub subgroup_nodes: u64,
    pub automorphism_nodes: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            closure: DEFAULT_CLOSURE_BOUND,
            subgroup_nodes: DEFAULT_NODE_BUDGET,
            automorphism_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

/// `$TWISTFORGE_FIXTURES`, else the fixtures shipped with the crate.
pub fn fixtures_dir() -> PathBuf {
    std::env::var_os("TWISTFORGE_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

pub fn parse_named(text: &str, path: &str) -> Result<CurveSpec, CliError> {
    parse_curve_spec(text).map_err(|source| CliError::Parse { path: path.to_string(), source })
}

pub fn load_spec(path: &Path) -> Result<CurveSpec, CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: name.clone(), source })?;
    parse_named(&text, &name)
}

/// Closure, ideal preservation and Galois checks. Returns Γ when every check
/// passes.
pub fn cmd_verify(spec: &CurveSpec, budgets: &Budgets) -> Result<(VerifyReport, Option<GammaGroup>), CliError> {
    let mut report = VerifyReport {
        genus: spec.genus,
        conductor: spec.conductor,
        aut_order: None,
        aut_fingerprint: None,
        galois_order: None,
        checks: Vec::new(),
    };
    let aut = match spec.aut_group(budgets.closure) {
        Ok(a) => a,
        Err(e @ Error::ClosureBound(_)) => return Err(CliError::core(e, "automorphism group closure")),
        Err(e) => {
            report.checks.push(CheckRecord::new("closure", Err(e.to_string())));
            return Ok((report, None));
        }
    };
    let all: Vec<usize> = (0..aut.order()).collect();
    report.aut_order = Some(aut.order());
    report.aut_fingerprint = Some(twistforge_core::grouplab::fingerprint(aut.table(), &all).to_string());
    report.checks.push(CheckRecord::new("closure", Ok(format!("order {}", aut.order()))));

    let ideal = spec.ideal();
    let preserved = aut.check_ideal(&ideal).map_err(|v| {
        let name = spec.ideal_generators.get(v.generator).map_or("?", |(n, _)| n.as_str());
        format!("automorphism {} does not preserve the ideal: {name} maps outside it", v.element)
    });
    let preserved = preserved.map(|()| match aut.order() {
        1 => "trivial group, nothing to check".to_string(),
        n => format!("all {n} automorphisms preserve {} generators", ideal.generators().len()),
    });
    report.checks.push(CheckRecord::new("ideal", preserved));

    let gal = match spec.galois_group() {
        Ok(g) => g,
        Err(e) => {
            report.checks.push(CheckRecord::new("galois", Err(e.to_string())));
            return Ok((report, None));
        }
    };
    report.galois_order = Some(gal.order());
    report.checks.push(CheckRecord::new("galois", Ok(format!("order {}", gal.order()))));
    let gamma = match build_gamma(aut, gal) {
        Ok(g) => {
            report.checks.push(CheckRecord::new("galois-action", Ok(format!("|Γ| = {}", g.order()))));
            Some(g)
        }
        Err(e) => {
            report.checks.push(CheckRecord::new("galois-action", Err(e.to_string())));
            None
        }
    };
    let ok = report.all_passed();
    Ok((report, gamma.filter(|_| ok)))
}

/// Runs [`cmd_verify`] and turns a failed check into an error.
pub fn prepare(spec: &CurveSpec, budgets: &Budgets) -> Result<GammaGroup, CliError> {
    let (report, gamma) = cmd_verify(spec, budgets)?;
    gamma.ok_or_else(|| {
        let failed: Vec<String> =
            report.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
        CliError::Failed(format!("verification failed: {}", failed.join("; ")))
    })
}

fn pair_record(index: usize, p: &PairGH, gamma: &GammaGroup, spec: &CurveSpec) -> PairRecord {
    let gf = p.g_fingerprint.to_string();
    let hf = p.h_fingerprint.to_string();
    PairRecord {
        index,
        order_g: p.order_g(),
        order_h: p.order_h(),
        h_generators: p.h_generator_words(gamma),
        solutions: p.solution_count,
        g_label: spec.label(&gf).map(str::to_string),
        h_label: spec.label(&hf).map(str::to_string),
        g_fingerprint: gf,
        h_fingerprint: hf,
    }
}

pub fn cmd_pairs(spec: &CurveSpec, gamma: &GammaGroup, budgets: &Budgets) -> Result<(PairsReport, Vec<PairGH>), CliError> {
    let mut sb = Budget::new(budgets.subgroup_nodes);
    let mut ab = Budget::new(budgets.automorphism_nodes);
    let pairs = enumerate_pairs_with(gamma, &mut sb, &mut ab).map_err(|e| CliError::core(e, "pair enumeration"))?;
    let records = pairs.iter().enumerate().map(|(i, p)| pair_record(i + 1, p, gamma, spec)).collect();
    Ok((PairsReport { pairs: records, subgroup_lookups: sb.used(), automorphism_lookups: ab.used() }, pairs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    NumberField,
    FiniteField { frobenius: i64 },
}

#[derive(Clone, Debug)]
pub struct TwistOptions {
    pub mode: Mode,
    /// Integer values for the Kummer parameters, by name.
    pub eval: Option<BTreeMap<String, i64>>,
    /// Also compute the fixed space by averaging and compare.
    pub cross_check: bool,
    /// Compute fixed bases and equations, not only cocycles.
    pub equations: bool,
    pub budgets: Budgets,
}

impl Default for TwistOptions {
    fn default() -> Self {
        TwistOptions { mode: Mode::NumberField, eval: None, cross_check: true, equations: true, budgets: Budgets::default() }
    }
}

/// Parses `m=2,n=-3`.
pub fn parse_eval(s: &str) -> Result<BTreeMap<String, i64>, CliError> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| CliError::Usage(format!("--eval: expected NAME=INT, got `{part}`")))?;
        let v: i64 = v.trim().parse().map_err(|_| CliError::Usage(format!("--eval: `{}` is not an integer", v.trim())))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn cocycle_values(c: &Cocycle, gamma: &GammaGroup) -> Vec<CocycleValue> {
    c.generator_values(gamma).into_iter().map(|(sigma, xi)| CocycleValue { sigma, xi }).collect()
}

fn radicals(spec: &RadFieldSpec) -> Vec<Radical> {
    spec.slots().iter().map(|s| Radical { name: s.name.clone(), q: s.q }).collect()
}

/// Fills in basis, equations and checks of `rec` from a computed twist.
fn attach_output(
    rec: &mut TwistRecord,
    out: &TwistOutput,
    ideal: &CanonicalIdeal<CycNum>,
    eval: Option<&BTreeMap<String, i64>>,
) -> Result<(), CliError> {
    let spec = out.basis.spec.clone();
    rec.radicals = radicals(&spec);
    rec.fixed_dimension = Some(out.fixed_dimension);
    rec.expected_dimension = Some(out.expected_dimension);
    rec.basis = out.basis.basis_strings();
    rec.generators = out.generators.iter().map(|p| p.to_string()).collect();
    for c in verify_twist(out, ideal).checks {
        rec.checks.push(CheckRecord { name: c.name.to_string(), passed: c.passed, detail: c.detail });
    }
    let ones = vec![1i64; spec.slots().len()];
    let collapse = match evaluate_generators(&out.generators, &ones) {
        Ok(g) if g == ideal.generators() => Ok(String::new()),
        Ok(_) => Err("parameters = 1 does not give back the original ideal".to_string()),
        Err(e) => Err(e.to_string()),
    };
    rec.checks.push(CheckRecord::new("collapse", collapse));
    if let Some(values) = eval {
        let vals = spec
            .slots()
            .iter()
            .map(|s| values.get(&s.name).copied().ok_or_else(|| CliError::Usage(format!("--eval is missing a value for {}", s.name))))
            .collect::<Result<Vec<_>, _>>()?;
        let ev = evaluate_generators(&out.generators, &vals).map_err(|e| CliError::core(e, &format!("twist {}", rec.id)))?;
        rec.evaluated = ev.iter().map(|p| p.to_string()).collect();
    }
    Ok(())
}

fn finish(mode: &str, frobenius: Option<u64>, pairs: Vec<PairRecord>, families: Vec<FamilyRecord>, twists: Vec<TwistRecord>) -> TwistDocument {
    let all_passed = twists.iter().all(TwistRecord::all_passed);
    TwistDocument { mode: mode.to_string(), frobenius, pairs, families, twist_count: twists.len(), twists, all_passed }
}

pub fn cmd_twist(spec: &CurveSpec, gamma: &GammaGroup, opts: &TwistOptions) -> Result<TwistDocument, CliError> {
    let rep = DifferentialRep::from_aut(gamma.aut()).map_err(|e| CliError::core(e, "differential representation"))?;
    let ideal = spec.ideal();
    match opts.mode {
        Mode::NumberField => number_field(spec, gamma, &rep, &ideal, opts),
        Mode::FiniteField { frobenius } => finite_field(gamma, &rep, &ideal, frobenius, opts),
    }
}

fn number_field(
    spec: &CurveSpec,
    gamma: &GammaGroup,
    rep: &DifferentialRep,
    ideal: &CanonicalIdeal<CycNum>,
    opts: &TwistOptions,
) -> Result<TwistDocument, CliError> {
    let (pairs_report, pairs) = cmd_pairs(spec, gamma, &opts.budgets)?;
    let mut families = Vec::new();
    let mut twists = Vec::new();
    for (i, pair) in pairs.iter().enumerate() {
        let index = i + 1;
        let problem = pose_problem(pair, gamma).map(|p| p.with_radical_names(spec.kummer.clone()));
        let family = match problem.and_then(|p| solve_kummer(&p)) {
            Ok(f) => f,
            Err(e @ (Error::OutsideKummerFamily(_) | Error::NotExact(_))) => {
                families.push(FamilyRecord {
                    pair: index,
                    solved: false,
                    splitting_field: None,
                    kernel_generators: vec![],
                    solutions: 0,
                    note: e.to_string(),
                });
                continue;
            }
            Err(e) => return Err(CliError::core(e, &format!("pair {index}"))),
        };
        families.push(FamilyRecord {
            pair: index,
            solved: true,
            splitting_field: Some(family.splitting_field()),
            kernel_generators: family.kernel_generators.iter().map(|&a| gamma.aut().word_string(a)).collect(),
            solutions: family.solutions.len(),
            note: String::new(),
        });
        for sol in &family.solutions {
            let id = format!("{index}:{}", sol.tag());
            let cocycle = solution_to_cocycle(sol, gamma);
            let mut rec = TwistRecord {
                id: id.clone(),
                pair: Some(index),
                tag: sol.tag().to_string(),
                splitting_field: sol.splitting_field(),
                conductor: spec.conductor,
                radicals: radicals(sol.spec()),
                cocycle: cocycle_values(&cocycle, gamma),
                orbit_size: None,
                fixed_dimension: None,
                expected_dimension: None,
                basis: vec![],
                generators: vec![],
                evaluated: vec![],
                checks: vec![
                    CheckRecord::new("solution", sol.verify(gamma, &pair.g).map(|()| String::new()).map_err(|e| e.to_string())),
                    CheckRecord::new("cocycle-law", cocycle.verify(gamma).map(|()| String::new()).map_err(|e| e.to_string())),
                ],
                note: String::new(),
            };
            if opts.equations {
                let out = compute_twist(&cocycle, rep, ideal, opts.cross_check)
                    .map_err(|e| CliError::core(e, &format!("twist {id}")))?;
                attach_output(&mut rec, &out, ideal, opts.eval.as_ref())?;
            }
            twists.push(rec);
        }
    }
    Ok(finish("number-field", None, pairs_report.pairs, families, twists))
}

fn finite_field(
    gamma: &GammaGroup,
    rep: &DifferentialRep,
    ideal: &CanonicalIdeal<CycNum>,
    b: i64,
    opts: &TwistOptions,
) -> Result<TwistDocument, CliError> {
    let n = gamma.gal().conductor();
    let unit = GaloisUnit::new(n, b).map_err(|e| CliError::Usage(format!("--frobenius {b}: {e}")))?;
    let found = solve_finite_field(gamma, unit.clone()).map_err(|e| match e {
        Error::InvalidFrobenius(_) => CliError::Usage(format!("--frobenius {b}: {e}")),
        e => CliError::core(e, "finite-field twists"),
    })?;
    let mut twists = Vec::new();
    for (i, t) in found.iter().enumerate() {
        let id = format!("F:{}", i + 1);
        let mut rec = TwistRecord {
            id: id.clone(),
            pair: None,
            tag: gamma.describe(t.frobenius_image),
            splitting_field: t.cocycle.splitting_field().to_string(),
            conductor: n,
            radicals: vec![],
            cocycle: cocycle_values(&t.cocycle, gamma),
            orbit_size: Some(t.orbit_size),
            fixed_dimension: None,
            expected_dimension: None,
            basis: vec![],
            generators: vec![],
            evaluated: vec![],
            checks: vec![CheckRecord::new(
                "cocycle-law",
                t.cocycle.verify(gamma).map(|()| String::new()).map_err(|e| e.to_string()),
            )],
            note: String::new(),
        };
        if t.cocycle.ext().is_none() {
            rec.note = format!(
                "Frobenius image has order {}, the twist splits only over the degree-{} extension; equations not computed",
                t.splitting_degree, t.splitting_degree
            );
        } else if opts.equations {
            let out = compute_twist(&t.cocycle, rep, ideal, opts.cross_check)
                .map_err(|e| CliError::core(e, &format!("twist {id}")))?;
            attach_output(&mut rec, &out, ideal, None)?;
        }
        twists.push(rec);
    }
    Ok(finish("finite-field", Some(unit.exponent()), vec![], vec![], twists))
}

/// The ideal generators with coefficients in the record's radical field,
/// for comparing against re-parsed output.
pub fn record_field(rec: &TwistRecord) -> Result<Arc<RadFieldSpec>, CliError> {
    let slots = rec
        .radicals
        .iter()
        .map(|r| twistforge_core::RadicalSlot { name: r.name.clone(), q: r.q })
        .collect();
    RadFieldSpec::new(rec.conductor, slots).map(Arc::new).map_err(|e| CliError::Failed(e.to_string()))
}

/// F embedded in the record's field, F_h ↦ F_h as radical polynomials.
pub fn embedded_ideal(spec: &CurveSpec, field: &Arc<RadFieldSpec>) -> Vec<twistforge_core::polyring::HomPoly<twistforge_core::RadNum>> {
    spec.ideal_generators.iter().map(|(_, f)| embed(f, field)).collect()
}
