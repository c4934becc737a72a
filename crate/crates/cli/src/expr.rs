//! Recursive-descent parser for the polynomial grammar shared by spec files
//! and emitted reports: `3/2*z^5*w1^2*w3 - (m + 2*n)*w4^3`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use twistforge_core::exactfield::{CycNum, RadFieldSpec, RadNum, RatFunc, Rational};
use twistforge_core::linalg::Field;
use twistforge_core::polyring::HomPoly;

/// A parse failure at a 0-based character offset into the parsed text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at offset {})", self.message, self.offset)
    }
}

impl std::error::Error for ExprError {}

/// Symbol table: ζ_N is `z`, differentials are `w1..wg`, and any names in
/// `params` are Kummer parameters (symbol index = position).
#[derive(Clone, Debug)]
pub struct ExprContext {
    pub conductor: u64,
    pub num_vars: usize,
    pub params: Vec<String>,
}

/// Sum of monomials in the wᵢ with rational-function coefficients.
#[derive(Clone, Debug)]
pub struct Poly {
    pub terms: BTreeMap<Vec<u32>, RatFunc>,
    num_vars: usize,
}

impl Poly {
    fn constant(num_vars: usize, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; num_vars], c);
        }
        Poly { terms, num_vars }
    }

    fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Poly { terms: [(e, RatFunc::constant(CycNum::one()))].into_iter().collect(), num_vars }
    }

    fn add(mut self, o: Poly) -> Self {
        for (e, c) in o.terms {
            let v = match self.terms.remove(&e) {
                Some(x) => x.add(&c),
                None => c,
            };
            if !v.is_zero() {
                self.terms.insert(e, v);
            }
        }
        self
    }

    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = c.neg();
        }
        self
    }

    fn mul(&self, o: &Poly) -> Self {
        let mut out = Poly { terms: BTreeMap::new(), num_vars: self.num_vars };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out = out.add(Poly { terms: [(e, c1.mul(c2))].into_iter().collect(), num_vars: self.num_vars });
            }
        }
        out
    }

    /// The value if free of the wᵢ.
    fn scalar(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::constant(CycNum::zero())),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_w_free(&self) -> bool {
        self.scalar().is_some()
    }

    /// Terms as (exponents, coefficient); all coefficients must be constants.
    pub fn cyclotomic_terms(&self) -> Option<Vec<(Vec<u32>, CycNum)>> {
        self.terms.iter().map(|(e, c)| c.constant_value().map(|v| (e.clone(), v))).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError { offset: i, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

const MAX_EXPONENT: u32 = 10_000;

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: &'a ExprContext,
}

impl Parser<'_> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { offset: self.offset(), message: message.into() })
    }

    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Sym(c))) => Some(*c),
            _ => None,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_sym() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ExprError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.add(self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ExprError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek_sym() == Some('/') {
                let at = self.offset();
                self.pos += 1;
                let d = self.factor()?;
                let d = d.scalar().ok_or(ExprError { offset: at, message: "division by a polynomial in w".into() })?;
                let inv = d.inv().map_err(|_| ExprError { offset: at, message: "division by zero".into() })?;
                acc = acc.mul(&Poly::constant(self.ctx.num_vars, inv));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ExprError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let k = match self.toks.get(self.pos) {
            Some((_, Tok::Num(n))) => u32::try_from(n).ok().filter(|&k| k <= MAX_EXPONENT),
            _ => return self.err("expected a non-negative integer exponent"),
        };
        let Some(k) = k else { return self.err(format!("exponent exceeds {MAX_EXPONENT}")) };
        self.pos += 1;
        let mut out = Poly::constant(self.ctx.num_vars, RatFunc::constant(CycNum::one()));
        for _ in 0..k {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Poly, ExprError> {
        let g = self.ctx.num_vars;
        let Some((at, tok)) = self.toks.get(self.pos).cloned() else {
            return self.err("unexpected end of expression");
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Poly::constant(g, RatFunc::constant(CycNum::from_rational(Rational::from_integer(n))))),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Tok::Sym(c) => Err(ExprError { offset: at, message: format!("unexpected '{c}'") }),
            Tok::Ident(name) => {
                if name == "z" {
                    return Ok(Poly::constant(g, RatFunc::constant(CycNum::root_of_unity(self.ctx.conductor, 1))));
                }
                if let Some(t) = self.ctx.params.iter().position(|p| *p == name) {
                    return Ok(Poly::constant(g, RatFunc::symbol(t)));
                }
                if let Some(i) = name.strip_prefix('w').and_then(|d| d.parse::<usize>().ok()) {
                    if (1..=g).contains(&i) {
                        return Ok(Poly::var(g, i - 1));
                    }
                    return Err(ExprError { offset: at, message: format!("variable {name} out of range w1..w{g}") });
                }
                Err(ExprError { offset: at, message: format!("unknown symbol '{name}'") })
            }
        }
    }
}

pub fn parse_poly(text: &str, ctx: &ExprContext) -> Result<Poly, ExprError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ExprError { offset: 0, message: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.chars().count(), ctx };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// A cyclotomic scalar such as `z^7` or `(1 - z)/2`.
pub fn parse_scalar(text: &str, conductor: u64) -> Result<CycNum, ExprError> {
    let ctx = ExprContext { conductor, num_vars: 0, params: vec![] };
    let p = parse_poly(text, &ctx)?;
    p.scalar()
        .and_then(|c| c.constant_value())
        .ok_or(ExprError { offset: 0, message: "expected a cyclotomic scalar".into() })
}

/// Re-reads an emitted twisted generator; parameters are the spec's slot names.
pub fn parse_radical_poly(text: &str, spec: &Arc<RadFieldSpec>, num_vars: usize) -> Result<HomPoly<RadNum>, ExprError> {
    let ctx = ExprContext { conductor: spec.conductor(), num_vars, params: spec.names() };
    let p = parse_poly(text, &ctx)?;
    let terms = p.terms.into_iter().map(|(e, c)| (e, RadNum::from_ratfunc(spec.clone(), c))).collect();
    HomPoly::from_terms(num_vars, terms).map_err(|e| ExprError { offset: 0, message: e.to_string() })
}
