use std::fmt;

use super::{build_twisted_action, derive_eta, fixed_subspace_kernel, fixed_subspace_reynolds, DifferentialRep, TwistBasis};
use crate::embedkit::Cocycle;
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, ExtGaloisElement, RadNum};
use crate::linalg::{self, Field, Matrix};
use crate::polyring::{embed, normalize_generator, CanonicalIdeal, HomPoly, LinearSub};

/// Everything computed for one twist.
#[derive(Clone, Debug)]
pub struct TwistOutput {
    pub splitting_field: String,
    pub basis: TwistBasis,
    /// F′_h, in the order of the input generators.
    pub generators: Vec<HomPoly<RadNum>>,
    pub fixed_dimension: usize,
    pub expected_dimension: usize,
    pub module_dimension: usize,
    /// Whether the kernel and averaging methods gave the same span, if run.
    pub reynolds_agrees: Option<bool>,
    /// (σ, ξ*_σ) on the generators of Gal(L/k).
    pub actions: Vec<(ExtGaloisElement, Matrix<CycNum>)>,
}

/// F′_h = normalize(F_h∘η), signed so that setting every parameter to 1
/// gives back F_h on their first shared monomial.
pub fn twist_equations(ideal: &CanonicalIdeal<CycNum>, tb: &TwistBasis) -> Result<Vec<HomPoly<RadNum>>> {
    let eta = LinearSub::new(tb.eta.clone())?;
    let ones = vec![1i64; tb.spec.slots().len()];
    ideal
        .generators()
        .iter()
        .map(|f| {
            let mut out = normalize_generator(&embed(f, &tb.spec).substitute(&eta)?)?;
            let shared = out.terms().find_map(|(e, c)| f.coeff(e).map(|d| (c.clone(), d.clone())));
            if let Some((c, d)) = shared {
                if c.eval(&ones)? == d.neg() {
                    out = out.neg();
                }
            }
            Ok(out)
        })
        .collect()
}

/// Runs the whole descent for one cocycle.
pub fn compute_twist(
    cocycle: &Cocycle,
    rep: &DifferentialRep,
    ideal: &CanonicalIdeal<CycNum>,
    cross_check: bool,
) -> Result<TwistOutput> {
    let module = build_twisted_action(cocycle, rep)?;
    let fixed = fixed_subspace_kernel(&module)?;
    let reynolds_agrees = cross_check.then(|| fixed_subspace_reynolds(&module) == fixed);
    let basis = derive_eta(&fixed, &module)?;
    let actions = module.generator_pullbacks();
    basis.check_cocycle_identity(&actions)?;
    let generators = twist_equations(ideal, &basis)?;
    Ok(TwistOutput {
        splitting_field: cocycle.splitting_field().to_string(),
        basis,
        generators,
        fixed_dimension: fixed.dimension(),
        expected_dimension: module.expected_fixed_dimension(),
        module_dimension: module.dimension(),
        reynolds_agrees,
        actions,
    })
}

/// Substitute integers for the Kummer parameters.
pub fn evaluate_generators(gens: &[HomPoly<RadNum>], values: &[i64]) -> Result<Vec<HomPoly<CycNum>>> {
    gens.iter().map(|p| p.try_map_into(|c| c.eval(values))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistReport {
    pub checks: Vec<Check>,
}

impl TwistReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, r: std::result::Result<(), String>) {
        let (passed, detail) = match r {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e),
        };
        self.checks.push(Check { name, passed, detail });
    }
}

impl fmt::Display for TwistReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, if c.passed { "ok" } else { "FAILED" })?;
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn radical_multiple(s: &HomPoly<RadNum>, f: &HomPoly<RadNum>) -> std::result::Result<(), String> {
    let (e, c) = f.terms().next().ok_or("twisted generator is zero")?;
    let d = s.coeff(e).ok_or_else(|| format!("F∘η lacks the monomial of {f}"))?;
    let ratio = d.mul(&c.inv().map_err(|e| e.to_string())?);
    if ratio.single_term().is_none() {
        return Err(format!("ratio {ratio} is not a radical monomial"));
    }
    if &f.scale(&ratio) != s {
        return Err(format!("F∘η is not a multiple of {f}"));
    }
    Ok(())
}

/// Independent re-check of a twist:
/// (a) F_h∘η is a radical-monomial multiple of F′_h;
/// (b) η is invertible with inverse μ;
/// (c) η·^ση⁻¹ = (ξ*_σ)⁻¹ on generators;
/// (d) the fixed space has the expected dimension;
/// (e) kernel and averaging spans agree, when computed.
pub fn verify_twist(out: &TwistOutput, ideal: &CanonicalIdeal<CycNum>) -> TwistReport {
    let mut report = TwistReport::default();
    let spec = &out.basis.spec;
    let a = (|| {
        if out.generators.len() != ideal.generators().len() {
            return Err("generator count differs".to_string());
        }
        let eta = LinearSub::new(out.basis.eta.clone()).map_err(|e| e.to_string())?;
        for (h, (f, fp)) in ideal.generators().iter().zip(&out.generators).enumerate() {
            let s = embed(f, spec).substitute(&eta).map_err(|e| e.to_string())?;
            radical_multiple(&s, fp).map_err(|e| format!("f{}: {e}", h + 1))?;
        }
        Ok(())
    })();
    report.push("substitution", a);
    let b = (|| {
        let g = out.basis.genus();
        let prod = linalg::mat_mul(&out.basis.eta, &out.basis.mu).map_err(|e| e.to_string())?;
        let one = RadNum::from_cyc(spec.clone(), CycNum::one());
        let ok = prod
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { *x == one } else { x.is_zero() }));
        if prod.len() != g || !ok {
            return Err("η·μ is not the identity".to_string());
        }
        Ok(())
    })();
    report.push("invertible", b);
    report.push("cocycle-identity", out.basis.check_cocycle_identity(&out.actions).map_err(|e| e.to_string()));
    let d = if out.fixed_dimension == out.expected_dimension && out.basis.genus() == ideal.num_vars() {
        Ok(())
    } else {
        Err(Error::FixedDimension { found: out.fixed_dimension, expected: out.expected_dimension }.to_string())
    };
    report.push("fixed-dimension", d);
    if let Some(agree) = out.reynolds_agrees {
        report.push("reynolds", if agree { Ok(()) } else { Err("spans differ".to_string()) });
    }
    report
}
