//! Multi-radical extensions K(m₁,…,m_s)[x₁,…,x_s]/(x_t^{q_t} − m_t) with
//! K = Q(ζ_N) and formal parameters m_t, plus their Galois automorphisms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::cyclotomic::{CycNum, GaloisUnit};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::linalg::{self, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalSlot {
    pub name: String,
    pub q: u32,
}

/// Shape of a Kummer tower over Q(ζ_N): one slot per adjoined q_t-th root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadFieldSpec {
    conductor: u64,
    slots: Vec<RadicalSlot>,
}

impl RadFieldSpec {
    pub fn new(conductor: u64, slots: Vec<RadicalSlot>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidConductor(0));
        }
        for s in &slots {
            if s.q < 2 {
                return Err(Error::InvalidRadicalField(format!("slot {} has exponent {} < 2", s.name, s.q)));
            }
            if conductor % s.q as u64 != 0 {
                return Err(Error::InvalidRadicalField(format!(
                    "ζ_{} is not in Q(ζ_{}) (slot {})",
                    s.q, conductor, s.name
                )));
            }
        }
        Ok(RadFieldSpec { conductor, slots })
    }

    /// Q(ζ_N) itself, no radicals.
    pub fn cyclotomic(conductor: u64) -> Self {
        RadFieldSpec { conductor, slots: Vec::new() }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn slots(&self) -> &[RadicalSlot] {
        &self.slots
    }

    pub fn names(&self) -> Vec<String> {
        self.slots.iter().map(|s| s.name.clone()).collect()
    }

    /// Degree of the tower over K, ∏ q_t.
    pub fn radical_degree(&self) -> usize {
        self.slots.iter().map(|s| s.q as usize).product()
    }

    /// All reduced radical exponent vectors in lexicographic order.
    pub fn exponent_vectors(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for s in &self.slots {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..s.q).map(move |a| {
                        let mut w = v.clone();
                        w.push(a);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn describe(&self) -> String {
        let mut parts = vec![format!("Q(zeta_{})", self.conductor)];
        for s in &self.slots {
            parts.push(format!("{}^(1/{})", s.name, s.q));
        }
        if parts.len() == 1 {
            parts.remove(0)
        } else {
            format!("{}({})", parts[0], parts[1..].join(", "))
        }
    }
}

/// An automorphism of the tower: ζ_N ↦ ζ_N^b and x_t ↦ ζ_{q_t}^{e_t} x_t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtGaloisElement {
    pub unit: GaloisUnit,
    pub mults: Vec<u32>,
}

impl ExtGaloisElement {
    pub fn new(spec: &RadFieldSpec, unit: GaloisUnit, mults: Vec<u32>) -> Result<Self> {
        if unit.conductor() != spec.conductor {
            return Err(Error::SpecMismatch(format!(
                "unit modulo {} acting on conductor {}",
                unit.conductor(),
                spec.conductor
            )));
        }
        if mults.len() != spec.slots.len() {
            return Err(Error::SpecMismatch("multiplier count differs from slot count".into()));
        }
        for (e, s) in mults.iter().zip(&spec.slots) {
            if *e >= s.q {
                return Err(Error::InvalidRadicalField(format!(
                    "multiplier exponent {} is not reduced modulo {}",
                    e, s.q
                )));
            }
        }
        Ok(ExtGaloisElement { unit, mults })
    }

    pub fn identity(spec: &RadFieldSpec) -> Self {
        ExtGaloisElement { unit: GaloisUnit::identity(spec.conductor), mults: vec![0; spec.slots.len()] }
    }

    /// (self ∘ other): apply `other` first.
    pub fn compose(&self, other: &Self, spec: &RadFieldSpec) -> Self {
        let mults = self
            .mults
            .iter()
            .zip(&other.mults)
            .zip(&spec.slots)
            .map(|((e1, e2), s)| {
                let b = self.unit.exponent_mod(s.q as u64) as u32;
                (e1 + b * e2) % s.q
            })
            .collect();
        ExtGaloisElement { unit: self.unit.compose(&other.unit), mults }
    }

    /// Exponent k such that the element multiplies x^a by ζ_N^k.
    pub fn radical_phase(&self, exps: &[u32], spec: &RadFieldSpec) -> i64 {
        self.mults
            .iter()
            .zip(exps)
            .zip(&spec.slots)
            .map(|((e, a), s)| (*e as i64) * (*a as i64) * (spec.conductor / s.q as u64) as i64)
            .sum()
    }
}

impl fmt::Display for ExtGaloisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(b={}", self.unit.exponent())?;
        if !self.mults.is_empty() {
            let m: Vec<String> = self.mults.iter().map(u32::to_string).collect();
            write!(f, "; e={}", m.join(","))?;
        }
        write!(f, ")")
    }
}

/// Element of the radical field: Σ c_a · x^a with rational-function
/// coefficients c_a over Q(ζ_N) in the symbols m_t.
#[derive(Clone, Debug)]
pub struct RadNum {
    spec: Arc<RadFieldSpec>,
    terms: BTreeMap<Vec<u32>, RatFunc>,
}

impl RadNum {
    pub fn zero(spec: Arc<RadFieldSpec>) -> Self {
        RadNum { spec, terms: BTreeMap::new() }
    }

    pub fn from_ratfunc(spec: Arc<RadFieldSpec>, c: RatFunc) -> Self {
        let s = spec.slots.len();
        Self::term(spec, vec![0; s], c)
    }

    pub fn from_cyc(spec: Arc<RadFieldSpec>, c: CycNum) -> Self {
        Self::from_ratfunc(spec, RatFunc::constant(c))
    }

    /// c · x^a with a reduced or not; carries are absorbed into the symbols.
    pub fn term(spec: Arc<RadFieldSpec>, exps: Vec<u32>, c: RatFunc) -> Self {
        let mut r = RadNum::zero(spec);
        r.add_term(exps, c);
        r
    }

    /// The radical x_t.
    pub fn radical(spec: Arc<RadFieldSpec>, t: usize) -> Self {
        let mut e = vec![0; spec.slots.len()];
        e[t] = 1;
        Self::term(spec, e, RatFunc::constant(CycNum::one()))
    }

    /// The formal parameter m_t as a field element.
    pub fn parameter(spec: Arc<RadFieldSpec>, t: usize) -> Self {
        Self::from_ratfunc(spec, RatFunc::symbol(t))
    }

    pub fn spec(&self) -> &Arc<RadFieldSpec> {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn single_term(&self) -> Option<(&Vec<u32>, &RatFunc)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, mut exps: Vec<u32>, mut c: RatFunc) {
        if c.is_zero() {
            return;
        }
        for (t, s) in self.spec.slots.iter().enumerate() {
            while exps[t] >= s.q {
                exps[t] -= s.q;
                c = c.mul(&RatFunc::symbol(t));
            }
        }
        let v = match self.terms.remove(&exps) {
            Some(x) => x.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(exps, v);
        }
    }

    fn check_spec(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.spec, &o.spec) || self.spec == o.spec,
            "radical field mismatch: {} vs {}",
            self.spec.describe(),
            o.spec.describe()
        );
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.spec != o.spec {
            return Err(Error::SpecMismatch(format!("{} vs {}", self.spec.describe(), o.spec.describe())));
        }
        Ok(Field::add(self, o))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.spec != o.spec {
            return Err(Error::SpecMismatch(format!("{} vs {}", self.spec.describe(), o.spec.describe())));
        }
        Ok(Field::mul(self, o))
    }

    pub fn scale_cyc(&self, c: &CycNum) -> Self {
        let f = RatFunc::constant(c.clone());
        let mut r = RadNum::zero(self.spec.clone());
        for (e, x) in &self.terms {
            r.add_term(e.clone(), x.mul(&f));
        }
        r
    }

    /// Apply an automorphism of the tower; the symbols m_t are fixed.
    pub fn galois(&self, g: &ExtGaloisElement) -> Result<Self> {
        let mut r = RadNum::zero(self.spec.clone());
        for (e, c) in &self.terms {
            let phase = CycNum::root_of_unity(self.spec.conductor, g.radical_phase(e, &self.spec));
            let c = c.galois(&g.unit)?.mul(&RatFunc::constant(phase));
            r.add_term(e.clone(), c);
        }
        Ok(r)
    }

    /// Substitute integers for the parameters; only defined when no radical survives.
    pub fn eval(&self, values: &[i64]) -> Result<CycNum> {
        let mut acc = CycNum::zero();
        for (e, c) in &self.terms {
            if e.iter().any(|a| *a != 0) {
                return Err(Error::Normalization(format!(
                    "cannot evaluate radical term with exponents {e:?} numerically"
                )));
            }
            acc = acc.add(&c.eval(values)?);
        }
        Ok(acc)
    }

    /// Multiplication-by-self matrix on the basis of radical monomials.
    fn mul_matrix(&self) -> Vec<Vec<RatFunc>> {
        let basis = self.spec.exponent_vectors();
        let zero = RatFunc::constant(CycNum::zero());
        let mut m = vec![vec![zero; basis.len()]; basis.len()];
        for (j, b) in basis.iter().enumerate() {
            let prod = Field::mul(self, &RadNum::term(self.spec.clone(), b.clone(), RatFunc::constant(CycNum::one())));
            for (e, c) in prod.terms {
                let i = basis.iter().position(|x| *x == e).unwrap();
                m[i][j] = c;
            }
        }
        m
    }

    pub fn fmt_radical_monomial(&self, exps: &[u32]) -> String {
        exps.iter()
            .zip(&self.spec.slots)
            .filter(|(a, _)| **a > 0)
            .map(|(a, s)| format!("{}^({}/{})", s.name, a, s.q))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl PartialEq for RadNum {
    fn eq(&self, o: &Self) -> bool {
        self.spec == o.spec && self.terms == o.terms
    }
}

impl Field for RadNum {
    fn zero_like(&self) -> Self {
        RadNum::zero(self.spec.clone())
    }
    fn one_like(&self) -> Self {
        RadNum::from_cyc(self.spec.clone(), CycNum::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self.check_spec(o);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
    fn sub(&self, o: &Self) -> Self {
        Field::add(self, &Field::neg(o))
    }
    fn mul(&self, o: &Self) -> Self {
        self.check_spec(o);
        let mut r = RadNum::zero(self.spec.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }
    fn neg(&self) -> Self {
        RadNum { spec: self.spec.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }
    fn inv(&self) -> Result<Self> {
        if self.terms.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if let Some((e, c)) = self.single_term() {
            // (c x^a)^{-1} = c^{-1} x^{q-a} / m  per nonzero slot
            let mut coef = c.inv()?;
            let mut exps = vec![0; e.len()];
            for (t, a) in e.iter().enumerate() {
                if *a > 0 {
                    exps[t] = self.spec.slots[t].q - a;
                    coef = coef.mul(&RatFunc::symbol(t).inv()?);
                }
            }
            return Ok(RadNum::term(self.spec.clone(), exps, coef));
        }
        let m = self.mul_matrix();
        let zero = RatFunc::constant(CycNum::zero());
        let mut rhs = vec![zero; m.len()];
        rhs[0] = RatFunc::constant(CycNum::one());
        let sol = linalg::solve(&m, &rhs)?;
        let mut r = RadNum::zero(self.spec.clone());
        for (b, c) in self.spec.exponent_vectors().into_iter().zip(sol) {
            r.add_term(b, c);
        }
        Ok(r)
    }
}

impl fmt::Display for RadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.spec.names();
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let rad = self.fmt_radical_monomial(e);
            let coef = c.fmt_with(&names);
            let (neg, coef) = match coef.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, coef),
            };
            let coef = if coef.contains(' ') { format!("({coef})") } else { coef };
            let body = match (coef.as_str(), rad.is_empty()) {
                (_, true) => coef,
                ("1", false) => rad,
                _ => format!("{coef}*{rad}"),
            };
            parts.push((neg, body));
        }
        f.write_str(&super::ratfunc::join_signed(&parts))
    }
}
