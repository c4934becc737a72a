//! Homogeneous polynomials in the differential variables ω₁..ω_g, linear
//! substitutions, generator normalization and graded ideal membership.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{CycNum, RadFieldSpec, RadNum, RatFunc, SymPoly};
use crate::linalg::{self, Field, Matrix};

/// Coefficients that know how to print themselves inside a polynomial.
pub trait Coeff: Field {
    /// (negative?, magnitude text, magnitude is exactly one)
    fn coeff_parts(&self) -> (bool, String, bool);
}

fn parts_from(text: String) -> (bool, String, bool) {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => (true, rest.to_string()),
        _ => (false, text),
    };
    let body = if body.contains(" + ") || body.contains(" - ") { format!("({body})") } else { body };
    let one = body == "1";
    (neg, body, one)
}

impl Coeff for CycNum {
    fn coeff_parts(&self) -> (bool, String, bool) {
        parts_from(self.to_string())
    }
}

impl Coeff for RadNum {
    fn coeff_parts(&self) -> (bool, String, bool) {
        parts_from(self.to_string())
    }
}

/// Homogeneous polynomial of fixed degree in `num_vars` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoly<C> {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, C>,
}

pub fn var_name(i: usize) -> String {
    format!("w{}", i + 1)
}

fn fmt_monomial(e: &[u32]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, k)| **k > 0)
        .map(|(i, k)| if *k == 1 { var_name(i) } else { format!("{}^{}", var_name(i), k) })
        .collect::<Vec<_>>()
        .join("*")
}

/// All exponent vectors of total degree `d` in `g` variables, grlex-descending.
pub fn monomials(g: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(g: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == g {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(g, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if g > 0 {
        rec(g, d, &mut Vec::new(), &mut out);
    }
    out
}

impl<C: Coeff> HomPoly<C> {
    pub fn zero(num_vars: usize, degree: u32) -> Self {
        HomPoly { num_vars, degree, terms: BTreeMap::new() }
    }

    /// Build from terms; rejects inhomogeneous input naming the offending term.
    pub fn from_terms(num_vars: usize, terms: Vec<(Vec<u32>, C)>) -> Result<Self> {
        let mut degree = None;
        let mut p = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "term {} has {} variables, expected {}",
                    fmt_monomial(&e),
                    e.len(),
                    num_vars
                )));
            }
            let d: u32 = e.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::DimensionMismatch(format!(
                        "inhomogeneous term {} of degree {} in a polynomial of degree {}",
                        fmt_monomial(&e),
                        d,
                        d0
                    )))
                }
                _ => {}
            }
            add_into(&mut p, e, c);
        }
        Ok(HomPoly { num_vars, degree: degree.unwrap_or(0), terms: p })
    }

    pub fn monomial(c: C, exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        let num_vars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        HomPoly { num_vars, degree, terms }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&C> {
        self.terms.get(exps)
    }

    /// Terms in graded-lex order, largest first.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter().rev()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            add_into(&mut terms, e.clone(), c.clone());
        }
        Ok(HomPoly { terms, ..self.clone_shape() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return self.clone_shape();
        }
        self.map_coeffs(|c| c.mul(k))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.num_vars != o.num_vars {
            return Err(Error::DimensionMismatch("variable count".into()));
        }
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                add_into(&mut terms, e, c1.mul(c2));
            }
        }
        Ok(HomPoly { num_vars: self.num_vars, degree: self.degree + o.degree, terms })
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let v = f(c);
                (!v.is_zero()).then(|| (e.clone(), v))
            })
            .collect();
        HomPoly { terms, ..self.clone_shape() }
    }

    pub fn try_map_into<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<HomPoly<D>> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.insert(e.clone(), v);
            }
        }
        Ok(HomPoly { num_vars: self.num_vars, degree: self.degree, terms })
    }

    fn clone_shape(&self) -> Self {
        HomPoly { num_vars: self.num_vars, degree: self.degree, terms: BTreeMap::new() }
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.num_vars != o.num_vars {
            return Err(Error::DimensionMismatch("variable count".into()));
        }
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return Err(Error::DimensionMismatch(format!("degrees {} and {}", self.degree, o.degree)));
        }
        Ok(())
    }

    /// ω_i ↦ Σ_j s[i][j] ω_j.
    pub fn substitute(&self, s: &LinearSub<C>) -> Result<Self> {
        let g = self.num_vars;
        if s.matrix.len() != g {
            return Err(Error::DimensionMismatch(format!(
                "substitution of size {} on {} variables",
                s.matrix.len(),
                g
            )));
        }
        let like = match self.terms.values().next() {
            Some(c) => c.clone(),
            None => return Ok(self.clone()),
        };
        let forms: Vec<HomPoly<C>> = s
            .matrix
            .iter()
            .map(|row| {
                let terms = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| {
                        let mut e = vec![0; g];
                        e[j] = 1;
                        (e, c.clone())
                    })
                    .collect();
                HomPoly::from_terms(g, terms).map(|mut p| {
                    p.degree = 1;
                    p
                })
            })
            .collect::<Result<_>>()?;
        let mut powers: BTreeMap<(usize, u32), HomPoly<C>> = BTreeMap::new();
        let mut out = HomPoly::zero(g, self.degree);
        for (e, c) in &self.terms {
            let mut acc = HomPoly::monomial(c.clone(), vec![0; g]);
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, *k))
                    .or_insert_with(|| {
                        let mut p = HomPoly::monomial(like.one_like(), vec![0; g]);
                        for _ in 0..*k {
                            p = p.mul(&forms[i]).expect("same variable count");
                        }
                        p
                    })
                    .clone();
                acc = acc.mul(&pw)?;
            }
            out = out.add(&acc)?;
        }
        out.degree = self.degree;
        Ok(out)
    }
}

fn add_into<C: Field>(terms: &mut BTreeMap<Vec<u32>, C>, e: Vec<u32>, c: C) {
    if c.is_zero() {
        return;
    }
    let v = match terms.remove(&e) {
        Some(x) => x.add(&c),
        None => c,
    };
    if !v.is_zero() {
        terms.insert(e, v);
    }
}

impl<C: Coeff> fmt::Display for HomPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let (neg, body, one) = c.coeff_parts();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(e);
            match (mono.is_empty(), one) {
                (true, _) => out.push_str(&body),
                (false, true) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&body);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        f.write_str(&out)
    }
}

/// An invertible g×g change of variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSub<C> {
    matrix: Matrix<C>,
}

impl<C: Coeff> LinearSub<C> {
    pub fn new(matrix: Matrix<C>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("substitution matrix must be square".into()));
        }
        if linalg::rank(&matrix) < n {
            return Err(Error::Singular);
        }
        Ok(LinearSub { matrix })
    }

    pub fn identity(n: usize, like: &C) -> Self {
        LinearSub { matrix: linalg::identity(n, like) }
    }

    pub fn matrix(&self) -> &Matrix<C> {
        &self.matrix
    }

    pub fn compose(&self, o: &Self) -> Result<Self> {
        Ok(LinearSub { matrix: linalg::mat_mul(&self.matrix, &o.matrix)? })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(LinearSub { matrix: linalg::inverse(&self.matrix)? })
    }
}

/// The canonical ideal: a nonempty list of homogeneous generators.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalIdeal<C> {
    num_vars: usize,
    generators: Vec<HomPoly<C>>,
}

impl<C: Coeff> CanonicalIdeal<C> {
    pub fn new(num_vars: usize, generators: Vec<HomPoly<C>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::DimensionMismatch("canonical ideal needs at least one generator".into()));
        }
        if let Some(p) = generators.iter().find(|p| p.num_vars != num_vars || p.is_zero()) {
            return Err(Error::DimensionMismatch(format!("bad generator {p}")));
        }
        Ok(CanonicalIdeal { num_vars, generators })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[HomPoly<C>] {
        &self.generators
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(HomPoly::degree).collect()
    }
}

/// The degree-d graded piece of an ideal, kept as an rref row basis over
/// the monomials of degree d.
pub struct GradedPiece<C> {
    degree: u32,
    monomials: Vec<Vec<u32>>,
    basis: Matrix<C>,
    pivots: Vec<usize>,
}

impl<C: Coeff> GradedPiece<C> {
    pub fn new(ideal: &CanonicalIdeal<C>, degree: u32) -> Self {
        let g = ideal.num_vars;
        let monos = monomials(g, degree);
        let index: BTreeMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let like = ideal.generators[0].terms.values().next().unwrap().clone();
        let mut rows = Vec::new();
        for f in &ideal.generators {
            if f.degree > degree {
                continue;
            }
            for mu in monomials(g, degree - f.degree) {
                let mut row = vec![like.zero_like(); monos.len()];
                for (e, c) in &f.terms {
                    let prod: Vec<u32> = e.iter().zip(&mu).map(|(a, b)| a + b).collect();
                    row[index[&prod]] = c.clone();
                }
                rows.push(row);
            }
        }
        let pivots = if rows.is_empty() { Vec::new() } else { linalg::rref(&mut rows) };
        rows.truncate(pivots.len());
        GradedPiece { degree, monomials: monos, basis: rows, pivots }
    }

    pub fn dimension(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, p: &HomPoly<C>) -> bool {
        if p.is_zero() {
            return true;
        }
        if p.degree != self.degree {
            return false;
        }
        let Some(like) = p.terms.values().next() else { return true };
        let v: Vec<C> = self
            .monomials
            .iter()
            .map(|m| p.terms.get(m).cloned().unwrap_or_else(|| like.zero_like()))
            .collect();
        linalg::in_row_span(&self.basis, &self.pivots, &v)
    }
}

/// Whether `p` lies in the graded piece of `ideal` of its own degree.
pub fn graded_membership<C: Coeff>(p: &HomPoly<C>, ideal: &CanonicalIdeal<C>) -> bool {
    if p.num_vars != ideal.num_vars {
        return false;
    }
    GradedPiece::new(ideal, p.degree).contains(p)
}

/// Clear the radical and rational-function content of a generator and fix
/// its scale: the first symbol-free term (graded-lex order) gets coefficient 1.
pub fn normalize_generator(p: &HomPoly<RadNum>) -> Result<HomPoly<RadNum>> {
    let (_, lead) = p
        .terms()
        .next()
        .ok_or_else(|| Error::Normalization("cannot normalize the zero polynomial".into()))?;
    let spec: Arc<RadFieldSpec> = lead.spec().clone();
    let lead_inv = lead.inv()?;
    // 1. divide by the leading coefficient; every coefficient must become radical-free
    let mut coeffs: Vec<(Vec<u32>, RatFunc)> = Vec::new();
    for (e, c) in p.terms() {
        let q = c.mul(&lead_inv);
        let mut rf = None;
        for (rexp, f) in q.terms() {
            if rexp.iter().any(|a| *a != 0) {
                return Err(Error::Normalization(format!(
                    "term {} keeps fractional parameter exponent {}",
                    fmt_monomial(e),
                    q.fmt_radical_monomial(rexp)
                )));
            }
            rf = Some(f.clone());
        }
        coeffs.push((e.clone(), rf.expect("nonzero coefficient")));
    }
    // 2. clear denominators
    let mut dens: Vec<SymPoly> = Vec::new();
    for (_, f) in &coeffs {
        if !f.den().is_constant() && !dens.contains(f.den()) {
            dens.push(f.den().clone());
        }
    }
    let clear = dens.iter().fold(SymPoly::constant(CycNum::one()), |a, d| a.mul(d));
    let mut polys: Vec<(Vec<u32>, SymPoly)> = coeffs
        .into_iter()
        .map(|(e, f)| {
            let num = f.num().mul(&clear);
            let poly = match f.den().constant_value() {
                Some(d) => num.scale(&d.inv()?),
                None => num
                    .div_exact(f.den())
                    .ok_or_else(|| Error::Normalization("denominator clearing".into()))?,
            };
            Ok((e, poly))
        })
        .collect::<Result<_>>()?;
    // 3. remove the common monomial in the parameters
    let mut content: Option<Vec<u32>> = None;
    for (_, q) in &polys {
        let c = q.monomial_content();
        content = Some(match content {
            None => c,
            Some(g) => (0..g.len().min(c.len())).map(|i| g[i].min(c[i])).collect(),
        });
    }
    let content = content.unwrap_or_default();
    for (_, q) in polys.iter_mut() {
        *q = q.div_monomial(&content);
    }
    // 4. scale
    let pivot = polys
        .iter()
        .find_map(|(_, q)| q.constant_value().filter(|c| !c.is_zero()))
        .unwrap_or_else(|| polys[0].1.terms().last().map(|(_, c)| c.clone()).unwrap());
    let k = pivot.inv()?;
    let terms = polys
        .into_iter()
        .map(|(e, q)| (e, RadNum::from_ratfunc(spec.clone(), RatFunc::from_poly(q.scale(&k)))))
        .collect();
    HomPoly::from_terms(p.num_vars, terms)
}

/// Embed a cyclotomic polynomial into a radical field.
pub fn embed(p: &HomPoly<CycNum>, spec: &Arc<RadFieldSpec>) -> HomPoly<RadNum> {
    p.try_map_into(|c| Ok(RadNum::from_cyc(spec.clone(), c.clone()))).expect("embedding is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{RadicalSlot, Rational};

    pub(crate) fn w(exps: &[u32]) -> Vec<u32> {
        exps.to_vec()
    }

    fn mono(c: i64, e: [u32; 6]) -> (Vec<u32>, CycNum) {
        (e.to_vec(), CycNum::from_int(c))
    }

    pub(crate) fn fixture_ideal() -> CanonicalIdeal<CycNum> {
        let gens = vec![
            vec![mono(1, [1, 0, 0, 0, 0, 1]), mono(-1, [0, 1, 0, 1, 0, 0])],
            vec![mono(1, [0, 2, 0, 0, 0, 0]), mono(-1, [1, 0, 1, 0, 0, 0])],
            vec![mono(1, [0, 1, 1, 0, 0, 0]), mono(-1, [1, 0, 0, 0, 1, 0])],
            vec![mono(1, [0, 1, 0, 0, 1, 0]), mono(-1, [0, 0, 2, 0, 0, 0])],
            vec![mono(1, [0, 1, 0, 0, 0, 1]), mono(-1, [0, 0, 1, 1, 0, 0])],
            vec![mono(1, [0, 0, 1, 0, 0, 1]), mono(-1, [0, 0, 0, 1, 1, 0])],
            vec![mono(1, [0, 0, 0, 3, 0, 0]), mono(-1, [0, 0, 2, 0, 1, 0]), mono(1, [3, 0, 0, 0, 0, 0])],
            vec![mono(1, [0, 0, 0, 0, 3, 0]), mono(-1, [0, 0, 0, 1, 0, 2]), mono(-1, [1, 2, 0, 0, 0, 0])],
        ];
        CanonicalIdeal::new(6, gens.into_iter().map(|t| HomPoly::from_terms(6, t).unwrap()).collect()).unwrap()
    }

    fn diag(entries: Vec<CycNum>) -> LinearSub<CycNum> {
        let n = entries.len();
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { CycNum::zero() }).collect())
            .collect();
        LinearSub::new(m).unwrap()
    }

    fn z(k: i64) -> CycNum {
        CycNum::root_of_unity(21, k)
    }

    #[test]
    fn homogeneity_is_enforced() {
        let err = HomPoly::from_terms(2, vec![(w(&[2, 0]), CycNum::one()), (w(&[1, 0]), CycNum::one())]).unwrap_err();
        assert!(err.to_string().contains("w1"), "{err}");
    }

    #[test]
    fn display_grlex() {
        let ideal = fixture_ideal();
        assert_eq!(ideal.generators()[6].to_string(), "w1^3 - w3^2*w5 + w4^3");
        assert_eq!(ideal.generators()[0].to_string(), "w1*w6 - w2*w4");
    }

    #[test]
    fn identity_substitution() {
        let ideal = fixture_ideal();
        let id = LinearSub::identity(6, &CycNum::one());
        for f in ideal.generators() {
            assert_eq!(&f.substitute(&id).unwrap(), f);
        }
    }

    #[test]
    fn radical_diagonal_substitution() {
        let spec = Arc::new(RadFieldSpec::new(21, vec![RadicalSlot { name: "m".into(), q: 3 }]).unwrap());
        let x = RadNum::radical(spec.clone(), 0);
        let one = x.one_like();
        let mut m = linalg::identity(6, &one);
        m[3][3] = x.clone();
        let s = LinearSub::new(m).unwrap();
        let p = HomPoly::monomial(one.clone(), vec![0, 0, 0, 3, 0, 0]);
        let q = p.substitute(&s).unwrap();
        assert_eq!(q, HomPoly::monomial(RadNum::parameter(spec, 0), vec![0, 0, 0, 3, 0, 0]));
    }

    #[test]
    fn automorphism_images_in_ideal() {
        let ideal = fixture_ideal();
        let r = diag(vec![z(7), z(7), z(7), z(14), z(7), z(14)]);
        let deg2 = GradedPiece::new(&ideal, 2);
        assert_eq!(deg2.dimension(), 6);
        assert!(graded_membership(&ideal.generators()[1], &ideal));
        for f in ideal.generators() {
            assert!(graded_membership(&f.substitute(&r).unwrap(), &ideal), "{f}");
        }
        let w1sq = HomPoly::monomial(CycNum::one(), vec![2, 0, 0, 0, 0, 0]);
        assert!(!graded_membership(&w1sq, &ideal));
        let bad = diag(vec![z(1), z(0), z(0), z(0), z(0), z(0)]);
        assert!(!graded_membership(&ideal.generators()[1].substitute(&bad).unwrap(), &ideal));
    }

    #[test]
    fn composition_and_inverse() {
        let ideal = fixture_ideal();
        let a = LinearSub::new(vec![
            vec![CycNum::one(), z(1), CycNum::zero(), CycNum::zero(), CycNum::zero(), CycNum::zero()],
            vec![CycNum::zero(), CycNum::one(), CycNum::zero(), CycNum::zero(), CycNum::zero(), CycNum::zero()],
            vec![CycNum::zero(), CycNum::zero(), z(2), CycNum::zero(), CycNum::zero(), CycNum::one()],
            vec![CycNum::zero(), CycNum::zero(), CycNum::zero(), CycNum::one(), CycNum::zero(), CycNum::zero()],
            vec![CycNum::from_int(2), CycNum::zero(), CycNum::zero(), CycNum::zero(), CycNum::one(), CycNum::zero()],
            vec![CycNum::zero(), CycNum::zero(), CycNum::zero(), CycNum::zero(), CycNum::zero(), CycNum::one()],
        ])
        .unwrap();
        let b = diag(vec![z(3), z(7), CycNum::one(), z(1), CycNum::from_int(-1), z(5)]);
        let f = &ideal.generators()[7];
        let lhs = f.substitute(&a.compose(&b).unwrap()).unwrap();
        let rhs = f.substitute(&a).unwrap().substitute(&b).unwrap();
        assert_eq!(lhs, rhs);
        let back = f.substitute(&a).unwrap().substitute(&a.inverse().unwrap()).unwrap();
        assert_eq!(&back, f);
    }

    #[test]
    fn singular_substitution_rejected() {
        let m = vec![vec![CycNum::one(), CycNum::one()], vec![CycNum::one(), CycNum::one()]];
        assert_eq!(LinearSub::new(m).unwrap_err(), Error::Singular);
    }

    #[test]
    fn normalization() {
        let spec = Arc::new(
            RadFieldSpec::new(21, vec![RadicalSlot { name: "m".into(), q: 3 }, RadicalSlot { name: "n".into(), q: 7 }])
                .unwrap(),
        );
        let m = RadNum::parameter(spec.clone(), 0);
        let n = RadNum::parameter(spec.clone(), 1);
        let x = RadNum::radical(spec.clone(), 0);
        let one = m.one_like();
        let f7 = HomPoly::from_terms(
            6,
            vec![
                (w(&[0, 0, 0, 3, 0, 0]), m.clone()),
                (w(&[0, 0, 2, 0, 1, 0]), n.neg()),
                (w(&[3, 0, 0, 0, 0, 0]), one.clone()),
            ],
        )
        .unwrap();
        let junk = x.mul(&x).mul(&m).scale_cyc(&CycNum::from_rational(Rational::new(7.into(), 3.into())));
        let messy = f7.scale(&junk);
        let norm = normalize_generator(&messy).unwrap();
        assert_eq!(norm, f7);
        assert_eq!(normalize_generator(&norm).unwrap(), norm);
        assert_eq!(norm.to_string(), "w1^3 - n*w3^2*w5 + m*w4^3");
        let pure = HomPoly::monomial(x.clone(), vec![2, 0, 0, 0, 0, 0]);
        assert_eq!(normalize_generator(&pure).unwrap(), HomPoly::monomial(one.clone(), vec![2, 0, 0, 0, 0, 0]));
        let mixed = HomPoly::from_terms(
            6,
            vec![(w(&[2, 0, 0, 0, 0, 0]), one.clone()), (w(&[0, 2, 0, 0, 0, 0]), x.clone())],
        )
        .unwrap();
        assert!(matches!(normalize_generator(&mixed), Err(Error::Normalization(_))));
    }
}
