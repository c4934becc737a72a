//! The line-oriented curve-spec format.
//!
//! ```text
//! [CURVE]
//! genus = 6
//! conductor = 21
//! [GALOIS]
//! index = 12
//! generators = 8, 10
//! [AUTGENS]
//! r = diag(z^7, z^7, z^7, z^14, z^7, z^14)
//! [IDEAL]
//! f1 = w1*w6 - w2*w4
//! [KUMMER]
//! 3 = m
//! [LABELS]
//! order=12;orders=...;derived=1 = C2 x C6
//! ```
//!
//! `#` starts a comment. Matrices are `diag(...)` or `[[a, b], [c, d]]`,
//! with entries polynomials in `z` = ζ_N.

use std::collections::BTreeMap;
use std::fmt;

use twistforge_core::exactfield::{CycNum, GaloisUnit};
use twistforge_core::grouplab::{close_matrix_group, AutGroup, GalGroup};
use twistforge_core::linalg::Matrix;
use twistforge_core::polyring::{CanonicalIdeal, HomPoly, LinearSub};

use crate::expr::{parse_poly, parse_scalar, ExprContext, ExprError};

/// A diagnostic with 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub genus: usize,
    pub conductor: u64,
    pub galois_index: usize,
    pub galois_generators: Vec<i64>,
    pub aut_generators: Vec<(String, Matrix<CycNum>)>,
    pub ideal_generators: Vec<(String, HomPoly<CycNum>)>,
    /// Fingerprint string → display name.
    pub labels: BTreeMap<String, String>,
    /// Prime power q → Kummer parameter name.
    pub kummer: BTreeMap<u64, String>,
}

impl CurveSpec {
    pub fn ideal(&self) -> CanonicalIdeal<CycNum> {
        let gens = self.ideal_generators.iter().map(|(_, p)| p.clone()).collect();
        CanonicalIdeal::new(self.genus, gens).expect("validated at parse time")
    }

    pub fn aut_group(&self, bound: usize) -> twistforge_core::Result<AutGroup> {
        if self.aut_generators.is_empty() {
            return Ok(AutGroup::trivial(self.genus));
        }
        let (names, mats): (Vec<String>, Vec<Matrix<CycNum>>) = self.aut_generators.iter().cloned().unzip();
        close_matrix_group(self.genus, &mats, &names, bound)
    }

    pub fn galois_group(&self) -> twistforge_core::Result<GalGroup> {
        let gens = self
            .galois_generators
            .iter()
            .map(|&b| GaloisUnit::new(self.conductor, b))
            .collect::<twistforge_core::Result<Vec<_>>>()?;
        GalGroup::with_index(self.conductor, &gens, self.galois_index)
    }

    pub fn label(&self, fingerprint: &str) -> Option<&str> {
        self.labels.get(fingerprint).map(String::as_str)
    }
}

struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
    /// 1-based column where `value` starts.
    value_col: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

fn at(e: &Entry<'_>, x: ExprError) -> ParseError {
    err(e.line, e.value_col + x.offset, x.message)
}

const SECTIONS: [&str; 6] = ["CURVE", "GALOIS", "AUTGENS", "IDEAL", "KUMMER", "LABELS"];

fn split_sections(text: &str) -> Result<BTreeMap<&'static str, Vec<Entry<'_>>>, ParseError> {
    let mut out: BTreeMap<&'static str, Vec<Entry<'_>>> = BTreeMap::new();
    let mut current: Option<&'static str> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        if let Some(name) = trimmed.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| err(line, indent + 1, "unterminated section header"))?
                .trim();
            let sec = SECTIONS
                .iter()
                .find(|s| **s == name)
                .ok_or_else(|| err(line, indent + 2, format!("unknown section [{name}]")))?;
            if out.contains_key(sec) {
                return Err(err(line, indent + 1, format!("duplicate section [{name}]")));
            }
            out.insert(sec, Vec::new());
            current = Some(sec);
            continue;
        }
        let sec = current.ok_or_else(|| err(line, indent + 1, "entry outside of any section"))?;
        // label keys contain '=' themselves
        let eq = if sec == "LABELS" { body.rfind('=') } else { body.find('=') }
            .ok_or_else(|| err(line, indent + 1, "expected `key = value`"))?;
        let key = body[..eq].trim();
        if key.is_empty() {
            return Err(err(line, indent + 1, "missing key"));
        }
        let after = &body[eq + 1..];
        let value = after.trim();
        let value_col = eq + 2 + (after.len() - after.trim_start().len());
        if value.is_empty() {
            return Err(err(line, eq + 2, format!("missing value for `{key}`")));
        }
        out.get_mut(sec).expect("section opened").push(Entry { line, key, value, value_col });
    }
    Ok(out)
}

fn parse_uint(e: &Entry<'_>) -> Result<u64, ParseError> {
    e.value.parse().map_err(|_| err(e.line, e.value_col, format!("`{}` expects a non-negative integer", e.key)))
}

/// Splits `s` at top-level commas, returning (char offset, piece).
fn split_top(s: &str) -> Result<Vec<(usize, &str)>, usize> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(i);
                }
            }
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(s.len());
    }
    out.push((start, &s[start..]));
    Ok(out)
}

fn parse_matrix(e: &Entry<'_>, g: usize, n: u64) -> Result<Matrix<CycNum>, ParseError> {
    let v = e.value;
    let bad = |off: usize, m: &str| err(e.line, e.value_col + off, m.to_string());
    let scalar = |off: usize, s: &str| {
        let lead = s.len() - s.trim_start().len();
        parse_scalar(s.trim(), n).map_err(|x| err(e.line, e.value_col + off + lead + x.offset, x.message))
    };
    let m: Matrix<CycNum> = if let Some(inner) = v.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
        let parts = split_top(inner).map_err(|o| bad(5 + o, "unbalanced brackets"))?;
        if parts.len() != g {
            return Err(bad(0, &format!("diag needs {g} entries, found {}", parts.len())));
        }
        let d = parts.iter().map(|(o, s)| scalar(5 + o, s)).collect::<Result<Vec<_>, _>>()?;
        (0..g).map(|i| (0..g).map(|j| if i == j { d[i].clone() } else { CycNum::zero() }).collect()).collect()
    } else if let Some(inner) = v.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let rows = split_top(inner).map_err(|o| bad(1 + o, "unbalanced brackets"))?;
        if rows.len() != g {
            return Err(bad(0, &format!("matrix needs {g} rows, found {}", rows.len())));
        }
        let mut m = Vec::with_capacity(g);
        for (ro, row) in rows {
            let lead = row.len() - row.trim_start().len();
            let off = 1 + ro + lead;
            let body = row.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| bad(off, "expected a row `[...]`"))?;
            let cells = split_top(body).map_err(|o| bad(off + 1 + o, "unbalanced brackets"))?;
            if cells.len() != g {
                return Err(bad(off, &format!("row needs {g} entries, found {}", cells.len())));
            }
            m.push(cells.iter().map(|(o, s)| scalar(off + 1 + o, s)).collect::<Result<Vec<_>, _>>()?);
        }
        m
    } else {
        return Err(bad(0, "expected `diag(...)` or `[[...], ...]`"));
    };
    LinearSub::new(m.clone()).map_err(|_| bad(0, "generator matrix not invertible"))?;
    Ok(m)
}

fn parse_ideal_generator(e: &Entry<'_>, ctx: &ExprContext) -> Result<HomPoly<CycNum>, ParseError> {
    let p = parse_poly(e.value, ctx).map_err(|x| at(e, x))?;
    let terms = p
        .cyclotomic_terms()
        .ok_or_else(|| err(e.line, e.value_col, "ideal generators may not contain parameters"))?;
    if terms.is_empty() {
        return Err(err(e.line, e.value_col, format!("generator {} is zero", e.key)));
    }
    // report the first term whose degree disagrees with the leading one
    let ordered: Vec<&(Vec<u32>, CycNum)> = terms.iter().rev().collect();
    let d0: u32 = ordered[0].0.iter().sum();
    for (ex, c) in &ordered {
        let d: u32 = ex.iter().sum();
        if d != d0 {
            let mono = HomPoly::monomial(c.clone(), ex.clone());
            return Err(err(
                e.line,
                e.value_col,
                format!("generator {} is not homogeneous: term `{}` has degree {}, expected {}", e.key, mono, d, d0),
            ));
        }
    }
    if d0 == 0 {
        return Err(err(e.line, e.value_col, format!("generator {} is constant", e.key)));
    }
    HomPoly::from_terms(ctx.num_vars, terms).map_err(|x| err(e.line, e.value_col, x.to_string()))
}

fn require<'a, 'b>(
    secs: &'b BTreeMap<&'static str, Vec<Entry<'a>>>,
    sec: &str,
    key: &str,
) -> Result<&'b Entry<'a>, ParseError> {
    let entries = secs.get(sec).ok_or_else(|| err(1, 1, format!("missing section [{sec}]")))?;
    let mut found = entries.iter().filter(|e| e.key == key);
    let e = found.next().ok_or_else(|| err(1, 1, format!("missing `{key}` in [{sec}]")))?;
    if let Some(dup) = found.next() {
        return Err(err(dup.line, 1, format!("duplicate `{key}`")));
    }
    Ok(e)
}

fn check_keys(secs: &BTreeMap<&'static str, Vec<Entry<'_>>>, sec: &str, allowed: &[&str]) -> Result<(), ParseError> {
    for e in secs.get(sec).into_iter().flatten() {
        if !allowed.contains(&e.key) {
            return Err(err(e.line, 1, format!("unknown key `{}` in [{sec}]", e.key)));
        }
    }
    Ok(())
}

pub fn parse_curve_spec(text: &str) -> Result<CurveSpec, ParseError> {
    let secs = split_sections(text)?;
    check_keys(&secs, "CURVE", &["genus", "conductor"])?;
    check_keys(&secs, "GALOIS", &["index", "generators"])?;

    let ge = require(&secs, "CURVE", "genus")?;
    let genus = parse_uint(ge)? as usize;
    if genus == 0 {
        return Err(err(ge.line, ge.value_col, "genus must be positive"));
    }
    let ce = require(&secs, "CURVE", "conductor")?;
    let conductor = parse_uint(ce)?;
    if conductor == 0 {
        return Err(err(ce.line, ce.value_col, "conductor must be positive"));
    }

    let ie = require(&secs, "GALOIS", "index")?;
    let galois_index = parse_uint(ie)? as usize;
    let gens_e = require(&secs, "GALOIS", "generators")?;
    let mut galois_generators = Vec::new();
    let mut off = 0;
    for piece in gens_e.value.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let col = gens_e.value_col + off + lead;
        let b: i64 = piece.trim().parse().map_err(|_| err(gens_e.line, col, "expected an integer unit"))?;
        GaloisUnit::new(conductor, b).map_err(|x| err(gens_e.line, col, x.to_string()))?;
        galois_generators.push(b);
        off += piece.len() + 1;
    }

    let mut aut_generators = Vec::new();
    for e in secs.get("AUTGENS").into_iter().flatten() {
        if aut_generators.iter().any(|(n, _)| n == e.key) {
            return Err(err(e.line, 1, format!("duplicate generator `{}`", e.key)));
        }
        aut_generators.push((e.key.to_string(), parse_matrix(e, genus, conductor)?));
    }

    let ctx = ExprContext { conductor, num_vars: genus, params: vec![] };
    let mut ideal_generators = Vec::new();
    for e in secs.get("IDEAL").ok_or_else(|| err(1, 1, "missing section [IDEAL]"))? {
        ideal_generators.push((e.key.to_string(), parse_ideal_generator(e, &ctx)?));
    }
    if ideal_generators.is_empty() {
        return Err(err(1, 1, "[IDEAL] has no generators"));
    }

    let mut kummer = BTreeMap::new();
    for e in secs.get("KUMMER").into_iter().flatten() {
        let q: u64 = e.key.parse().map_err(|_| err(e.line, 1, "Kummer keys are prime powers"))?;
        let valid = !e.value.is_empty()
            && e.value.chars().all(|c| c.is_alphanumeric() || c == '_')
            && e.value.starts_with(|c: char| c.is_alphabetic())
            && e.value != "z"
            && !(e.value.starts_with('w') && e.value[1..].chars().all(|c| c.is_ascii_digit()));
        if !valid {
            return Err(err(e.line, e.value_col, format!("`{}` cannot be used as a parameter name", e.value)));
        }
        kummer.insert(q, e.value.to_string());
    }
    let labels = secs
        .get("LABELS")
        .into_iter()
        .flatten()
        .map(|e| (e.key.to_string(), e.value.to_string()))
        .collect();

    Ok(CurveSpec { genus, conductor, galois_index, galois_generators, aut_generators, ideal_generators, labels, kummer })
}

/// Writes a spec back in the same format (used for round-trip tests).
pub fn format_curve_spec(spec: &CurveSpec) -> String {
    let mut s = format!(
        "[CURVE]\ngenus = {}\nconductor = {}\n\n[GALOIS]\nindex = {}\ngenerators = {}\n\n[AUTGENS]\n",
        spec.genus,
        spec.conductor,
        spec.galois_index,
        spec.galois_generators.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
    );
    for (name, m) in &spec.aut_generators {
        let rows: Vec<String> = m
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|c| format!("({c})")).collect::<Vec<_>>().join(", ")))
            .collect();
        s.push_str(&format!("{name} = [{}]\n", rows.join(", ")));
    }
    s.push_str("\n[IDEAL]\n");
    for (name, p) in &spec.ideal_generators {
        s.push_str(&format!("{name} = {p}\n"));
    }
    if !spec.kummer.is_empty() {
        s.push_str("\n[KUMMER]\n");
        for (q, n) in &spec.kummer {
            s.push_str(&format!("{q} = {n}\n"));
        }
    }
    if !spec.labels.is_empty() {
        s.push_str("\n[LABELS]\n");
        for (k, v) in &spec.labels {
            s.push_str(&format!("{k} = {v}\n"));
        }
    }
    s
}

