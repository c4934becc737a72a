use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use super::CayleyTable;
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, Rational};
use crate::linalg::{self, Matrix};
use crate::polyring::{CanonicalIdeal, GradedPiece, LinearSub};

/// Aut(C) as a finite group of g×g matrices acting by substitution
/// ω_i ↦ Σ_j A_ij ω_j.
#[derive(Clone, Debug)]
pub struct AutGroup {
    dim: usize,
    conductor: u64,
    elements: Vec<Matrix<CycNum>>,
    table: CayleyTable,
    generators: Vec<usize>,
    gen_names: Vec<String>,
    words: Vec<Vec<usize>>,
}

/// An automorphism that fails to preserve the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealViolation {
    pub element: String,
    pub generator: usize,
}

impl fmt::Display for IdealViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} does not preserve the ideal: f{} maps outside it", self.element, self.generator + 1)
    }
}

fn key(m: &Matrix<CycNum>, n: u64) -> Vec<Rational> {
    let mut k = Vec::new();
    for row in m {
        for c in row {
            let l = c.lift(n).expect("conductor divides the group conductor");
            k.extend(l.coords().iter().cloned());
            k.push(Rational::from_integer((-1).into()));
        }
    }
    k
}

/// Closes `gens` under multiplication. Elements are numbered in breadth-first
/// order from the identity, so each carries a shortest word in the generators.
pub fn close_matrix_group(
    dim: usize,
    gens: &[Matrix<CycNum>],
    names: &[String],
    bound: usize,
) -> Result<AutGroup> {
    if names.len() != gens.len() {
        return Err(Error::DimensionMismatch("one name per generator".into()));
    }
    let mut conductor = 1u64;
    for (i, m) in gens.iter().enumerate() {
        if m.len() != dim || m.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!("generator {} is not {dim}×{dim}", names[i])));
        }
        if linalg::rank(m) < dim {
            return Err(Error::Singular);
        }
        for c in m.iter().flatten() {
            conductor = conductor.lcm(&c.conductor());
        }
    }
    let gens: Vec<Matrix<CycNum>> = gens
        .iter()
        .map(|m| m.iter().map(|r| r.iter().map(|c| c.lift(conductor)).collect::<Result<Vec<_>>>()).collect())
        .collect::<Result<_>>()?;
    let one = CycNum::one().lift(conductor)?;
    let mut elements = vec![linalg::identity(dim, &one)];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    index.insert(key(&elements[0], conductor), 0);
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            let p = linalg::mat_mul(&elements[i], g)?;
            let kk = key(&p, conductor);
            let j = match index.get(&kk) {
                Some(&j) => j,
                None => {
                    if elements.len() >= bound {
                        return Err(Error::ClosureBound(bound));
                    }
                    let mut w = words[i].clone();
                    w.push(k);
                    words.push(w);
                    elements.push(p);
                    index.insert(kk, elements.len() - 1);
                    elements.len() - 1
                }
            };
            row.push(j);
        }
        right.push(row);
        i += 1;
    }
    // a·b = a·g_{w1}·g_{w2}… along the word of b
    let table = CayleyTable::from_fn(elements.len(), |a, b| words[b].iter().fold(a, |x, &k| right[x][k]))?;
    let generators = (0..gens.len()).map(|k| right[0][k]).collect();
    Ok(AutGroup { dim, conductor, elements, table, generators, gen_names: names.to_vec(), words })
}

impl AutGroup {
    pub fn trivial(dim: usize) -> Self {
        close_matrix_group(dim, &[], &[], 1).expect("trivial group")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix<CycNum>] {
        &self.elements
    }

    pub fn matrix(&self, i: usize) -> &Matrix<CycNum> {
        &self.elements[i]
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Shortest word for element `i`, as generator positions.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// Word written with generator names, e.g. `r*s^2`; identity is `1`.
    pub fn word_string(&self, i: usize) -> String {
        let w = &self.words[i];
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut j = 0;
        while j < w.len() {
            let mut k = j;
            while k < w.len() && w[k] == w[j] {
                k += 1;
            }
            let name = &self.gen_names[w[j]];
            parts.push(if k - j == 1 { name.clone() } else { format!("{}^{}", name, k - j) });
            j = k;
        }
        parts.join("*")
    }

    pub fn index_of(&self, m: &Matrix<CycNum>) -> Option<usize> {
        let n = m.iter().flatten().fold(self.conductor, |acc, c| acc.lcm(&c.conductor()));
        let target = key(m, n);
        self.elements.iter().position(|e| key(e, n) == target)
    }

    /// Checks F_h∘A ∈ I for every element A and every generator F_h.
    pub fn check_ideal(&self, ideal: &CanonicalIdeal<CycNum>) -> std::result::Result<(), IdealViolation> {
        let mut pieces: HashMap<u32, GradedPiece<CycNum>> = HashMap::new();
        for d in ideal.degrees() {
            pieces.entry(d).or_insert_with(|| GradedPiece::new(ideal, d));
        }
        // generators first so that failures name an input matrix
        let order: Vec<usize> =
            self.generators.iter().copied().chain((0..self.order()).filter(|i| !self.generators.contains(i))).collect();
        for i in order {
            let sub = LinearSub::new(self.elements[i].clone()).expect("group elements are invertible");
            for (h, f) in ideal.generators().iter().enumerate() {
                let img = f.substitute(&sub).expect("dimensions checked");
                if !pieces[&f.degree()].contains(&img) {
                    return Err(IdealViolation { element: self.word_string(i), generator: h });
                }
            }
        }
        Ok(())
    }
}
