//! Report documents. Each serializes to JSON and renders as plain text;
//! field order and record order are fixed so output is byte-stable.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, result: Result<String, String>) -> Self {
        match result {
            Ok(detail) => CheckRecord { name: name.into(), passed: true, detail },
            Err(detail) => CheckRecord { name: name.into(), passed: false, detail },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub genus: usize,
    pub conductor: u64,
    pub aut_order: Option<usize>,
    pub aut_fingerprint: Option<String>,
    pub galois_order: Option<usize>,
    pub checks: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    /// 1-based, in order of increasing |G|.
    pub index: usize,
    pub order_g: usize,
    pub order_h: usize,
    pub h_generators: Vec<String>,
    pub solutions: usize,
    pub g_fingerprint: String,
    pub h_fingerprint: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsReport {
    pub pairs: Vec<PairRecord>,
    pub subgroup_lookups: u64,
    pub automorphism_lookups: u64,
}

/// What the embedding-problem solver made of one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub pair: usize,
    pub solved: bool,
    pub splitting_field: Option<String>,
    pub kernel_generators: Vec<String>,
    pub solutions: usize,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Radical {
    pub name: String,
    pub q: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleValue {
    pub sigma: String,
    pub xi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRecord {
    /// `pair:tag` in number-field mode, `F:index` in finite-field mode.
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<usize>,
    pub tag: String,
    pub splitting_field: String,
    pub conductor: u64,
    pub radicals: Vec<Radical>,
    pub cocycle: Vec<CocycleValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_dimension: Option<usize>,
    /// μ_j, the fixed differentials.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    /// Generators with the parameters specialised by `--eval`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evaluated: Vec<String>,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl TwistRecord {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistDocument {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyRecord>,
    pub twist_count: usize,
    pub twists: Vec<TwistRecord>,
    pub all_passed: bool,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("report types serialize")
}

fn write_checks(out: &mut String, checks: &[CheckRecord], indent: &str) {
    for c in checks {
        let _ = write!(out, "{indent}{}: {}", c.name, if c.passed { "ok" } else { "FAILED" });
        if !c.detail.is_empty() {
            let _ = write!(out, " ({})", c.detail);
        }
        out.push('\n');
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus {}, conductor {}", self.genus, self.conductor)?;
        if let (Some(o), Some(fp)) = (self.aut_order, &self.aut_fingerprint) {
            writeln!(f, "automorphism group: order {o} [{fp}]")?;
        }
        if let Some(o) = self.galois_order {
            writeln!(f, "Gal(K/k): order {o}")?;
        }
        let mut s = String::new();
        write_checks(&mut s, &self.checks, "");
        f.write_str(&s)
    }
}

fn pair_table(pairs: &[PairRecord]) -> String {
    let name = |label: &Option<String>, fp: &str| label.clone().unwrap_or_else(|| fp.to_string());
    let mut out = String::from("case |G| |H| H-generators n G H\n");
    for p in pairs {
        let gens = if p.h_generators.is_empty() { "-".to_string() } else { p.h_generators.join(",") };
        let _ = writeln!(
            out,
            "{} {} {} {} {} {} {}",
            p.index,
            p.order_g,
            p.order_h,
            gens,
            p.solutions,
            name(&p.g_label, &p.g_fingerprint),
            name(&p.h_label, &p.h_fingerprint)
        );
    }
    out
}

impl fmt::Display for PairsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pair_table(&self.pairs))?;
        writeln!(f, "total twists: {}", self.pairs.iter().map(|p| p.solutions).sum::<usize>())
    }
}

impl fmt::Display for TwistDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self.frobenius {
            Some(b) => {
                let _ = writeln!(out, "mode: {} (frobenius {b})", self.mode);
            }
            None => {
                let _ = writeln!(out, "mode: {}", self.mode);
            }
        }
        if !self.pairs.is_empty() {
            out.push_str(&pair_table(&self.pairs));
        }
        for fam in &self.families {
            if fam.solved {
                let _ = writeln!(
                    out,
                    "case {}: {} solutions over {}",
                    fam.pair,
                    fam.solutions,
                    fam.splitting_field.as_deref().unwrap_or("?")
                );
            } else {
                let _ = writeln!(out, "case {}: outside solvable family ({})", fam.pair, fam.note);
            }
        }
        for t in &self.twists {
            let _ = writeln!(out, "\n== twist {} over {}", t.id, t.splitting_field);
            let xi: Vec<String> = t.cocycle.iter().map(|c| format!("{} -> {}", c.sigma, c.xi)).collect();
            let _ = writeln!(out, "cocycle: {}", if xi.is_empty() { "trivial".into() } else { xi.join(", ") });
            if let Some(n) = t.orbit_size {
                let _ = writeln!(out, "orbit size: {n}");
            }
            if let (Some(d), Some(e)) = (t.fixed_dimension, t.expected_dimension) {
                let _ = writeln!(out, "fixed dimension: {d} (expected {e})");
            }
            if !t.basis.is_empty() {
                let _ = writeln!(out, "basis: {}", t.basis.join(", "));
            }
            for (i, g) in t.generators.iter().enumerate() {
                let _ = writeln!(out, "  F'{} = {g}", i + 1);
            }
            for (i, g) in t.evaluated.iter().enumerate() {
                let _ = writeln!(out, "  F'{}| = {g}", i + 1);
            }
            if !t.note.is_empty() {
                let _ = writeln!(out, "note: {}", t.note);
            }
            write_checks(&mut out, &t.checks, "  ");
        }
        let _ = writeln!(out, "\ntwists: {}", self.twist_count);
        let _ = writeln!(out, "all checks passed: {}", self.all_passed);
        f.write_str(&out)
    }
}
