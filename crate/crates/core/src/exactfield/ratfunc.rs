//! Polynomials and rational functions in the formal Kummer parameters
//! m₁,…,m_s with cyclotomic coefficients.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so the number of
//! symbols never has to be known up front.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::cyclotomic::{CycNum, GaloisUnit};
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::linalg::Field;

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_at(e: &[u32], i: usize) -> u32 {
    e.get(i).copied().unwrap_or(0)
}

fn exp_add(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| exp_at(a, i) + exp_at(b, i)).collect())
}

fn exp_divides(a: &[u32], b: &[u32]) -> bool {
    (0..a.len()).all(|i| exp_at(a, i) <= exp_at(b, i))
}

fn exp_sub(b: &[u32], a: &[u32]) -> Vec<u32> {
    trim((0..b.len()).map(|i| exp_at(b, i) - exp_at(a, i)).collect())
}

/// Multivariate polynomial in the symbols, lex order on exponent vectors.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Vec<u32>, CycNum>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn constant(c: CycNum) -> Self {
        Self::monomial(c, vec![])
    }

    pub fn monomial(c: CycNum, exps: Vec<u32>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exps), c);
        }
        SymPoly { terms }
    }

    /// The symbol m_t.
    pub fn symbol(t: usize) -> Self {
        let mut e = vec![0; t + 1];
        e[t] = 1;
        Self::monomial(CycNum::one(), e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNum)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Vec::is_empty)
    }

    pub fn constant_value(&self) -> Option<CycNum> {
        if self.is_zero() {
            Some(CycNum::zero())
        } else if self.is_constant() {
            self.terms.get(&Vec::new()).cloned()
        } else {
            None
        }
    }

    fn lead(&self) -> Option<(&Vec<u32>, &CycNum)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let v = match terms.remove(e) {
                Some(x) => x.add(c),
                None => c.clone(),
            };
            if !v.is_zero() {
                terms.insert(e.clone(), v);
            }
        }
        SymPoly { terms }
    }

    pub fn neg(&self) -> Self {
        SymPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<Vec<u32>, CycNum> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = exp_add(e1, e2);
                let p = c1.mul(c2);
                let v = match terms.remove(&e) {
                    Some(x) => x.add(&p),
                    None => p,
                };
                if !v.is_zero() {
                    terms.insert(e, v);
                }
            }
        }
        SymPoly { terms }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly { terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect() }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.lead()?;
        let dinv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quo = SymPoly::zero();
        while let Some((re, rc)) = rem.lead() {
            if !exp_divides(de, re) {
                return None;
            }
            let t = SymPoly::monomial(rc.mul(&dinv), exp_sub(re, de));
            rem = rem.sub(&t.mul(d));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Vec<u32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return vec![] };
        let mut g = first.clone();
        for e in it {
            for (i, gi) in g.iter_mut().enumerate() {
                *gi = (*gi).min(exp_at(e, i));
            }
        }
        trim(g)
    }

    pub fn div_monomial(&self, m: &[u32]) -> Self {
        SymPoly { terms: self.terms.iter().map(|(e, c)| (exp_sub(e, m), c.clone())).collect() }
    }

    pub fn galois(&self, u: &GaloisUnit) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), c.galois(u)?);
        }
        Ok(SymPoly { terms })
    }

    /// Substitute integers for the symbols.
    pub fn eval(&self, values: &[i64]) -> Result<CycNum> {
        let mut acc = CycNum::zero();
        for (e, c) in &self.terms {
            let mut v = Rational::one();
            for (i, k) in e.iter().enumerate() {
                let x = values.get(i).ok_or_else(|| {
                    Error::DimensionMismatch(format!("no value supplied for symbol {i}"))
                })?;
                v *= Rational::from_integer(BigInt::from(*x)).pow(*k as i32);
            }
            acc = acc.add(&c.scale(&v));
        }
        Ok(acc)
    }

    pub fn max_symbol(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| {
                    let n = names.get(i).cloned().unwrap_or_else(|| format!("m{}", i + 1));
                    if *k == 1 { n } else { format!("{n}^{k}") }
                })
                .collect();
            let (neg, coef) = split_sign(c);
            let body = match (coef.as_str(), mono.is_empty()) {
                (_, true) => coef,
                ("1", false) => mono.join("*"),
                _ => format!("{}*{}", coef, mono.join("*")),
            };
            parts.push((neg, body));
        }
        join_signed(&parts)
    }
}

/// Split a cyclotomic coefficient into a sign and a printable magnitude.
pub(crate) fn split_sign(c: &CycNum) -> (bool, String) {
    if let Some(r) = c.as_rational() {
        let neg = super::rational::is_negative(r);
        let a = if neg { -r } else { r.clone() };
        (neg, super::rational::fmt_rational(&a))
    } else {
        let nonzero: Vec<&Rational> = c.coords().iter().filter(|x| !num_traits::Zero::is_zero(*x)).collect();
        if nonzero.len() == 1 && super::rational::is_negative(nonzero[0]) {
            (true, wrap(&c.neg().to_string()))
        } else {
            (false, wrap(&c.to_string()))
        }
    }
}

fn wrap(s: &str) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

pub(crate) fn join_signed(parts: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(body);
    }
    out
}

/// A quotient of symbol polynomials, kept with a monic denominator and no
/// common monomial factor. Equality is decided by cross multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: SymPoly,
    den: SymPoly,
}

impl RatFunc {
    pub fn new(num: SymPoly, den: SymPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: SymPoly) -> Self {
        RatFunc { num: p, den: SymPoly::constant(CycNum::one()) }
    }

    pub fn constant(c: CycNum) -> Self {
        Self::from_poly(SymPoly::constant(c))
    }

    pub fn symbol(t: usize) -> Self {
        Self::from_poly(SymPoly::symbol(t))
    }

    pub fn num(&self) -> &SymPoly {
        &self.num
    }

    pub fn den(&self) -> &SymPoly {
        &self.den
    }

    fn normalized(num: SymPoly, den: SymPoly) -> Self {
        if num.is_zero() {
            return Self::from_poly(SymPoly::zero());
        }
        let g = {
            let a = num.monomial_content();
            let b = den.monomial_content();
            trim((0..a.len().min(b.len())).map(|i| a[i].min(b[i])).collect())
        };
        let (mut num, mut den) = (num.div_monomial(&g), den.div_monomial(&g));
        let lc = den.lead().unwrap().1.inv().unwrap();
        num = num.scale(&lc);
        den = den.scale(&lc);
        if !den.is_constant() {
            if let Some(q) = num.div_exact(&den) {
                return Self::from_poly(q);
            }
            if let Some(q) = den.div_exact(&num) {
                let lc = q.lead().unwrap().1.inv().unwrap();
                return RatFunc { num: SymPoly::constant(lc.clone()), den: q.scale(&lc) };
            }
        }
        RatFunc { num, den }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<CycNum> {
        if self.is_constant() {
            let n = self.num.constant_value()?;
            let d = self.den.constant_value()?;
            Some(n.mul(&d.inv().ok()?))
        } else {
            None
        }
    }

    pub fn galois(&self, u: &GaloisUnit) -> Result<Self> {
        Ok(Self::normalized(self.num.galois(u)?, self.den.galois(u)?))
    }

    pub fn eval(&self, values: &[i64]) -> Result<CycNum> {
        Ok(self.num.eval(values)?.mul(&self.den.eval(values)?.inv()?))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.den.is_constant() {
            return self.num.fmt_with(names);
        }
        format!("({})/({})", self.num.fmt_with(names), self.den.fmt_with(names))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Field for RatFunc {
    fn zero_like(&self) -> Self {
        Self::from_poly(SymPoly::zero())
    }
    fn one_like(&self) -> Self {
        Self::constant(CycNum::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return self.zero_like();
        }
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}
