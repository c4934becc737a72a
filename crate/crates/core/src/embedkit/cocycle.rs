use std::sync::Arc;

use super::{ExtGalGroup, Solution};
use crate::error::{Error, Result};
use crate::grouplab::{CayleyTable, GammaGroup};

/// ξ : Gal(L/k) → Aut(C) on a finite quotient, with ξ_{στ} = ξ_σ·^σξ_τ.
#[derive(Clone, Debug)]
pub struct Cocycle {
    domain: CayleyTable,
    labels: Vec<String>,
    /// Index in Γ's Galois group of each element's restriction to K.
    restriction: Vec<usize>,
    values: Vec<usize>,
    generators: Vec<usize>,
    ext: Option<Arc<ExtGalGroup>>,
    splitting: String,
}

impl Cocycle {
    pub fn new(
        domain: CayleyTable,
        labels: Vec<String>,
        restriction: Vec<usize>,
        values: Vec<usize>,
        generators: Vec<usize>,
        ext: Option<Arc<ExtGalGroup>>,
        splitting: String,
    ) -> Result<Self> {
        let n = domain.len();
        if labels.len() != n || restriction.len() != n || values.len() != n {
            return Err(Error::DimensionMismatch("cocycle data does not cover the domain".into()));
        }
        Ok(Cocycle { domain, labels, restriction, values, generators, ext, splitting })
    }

    /// Exhaustive check of the cocycle law.
    pub fn verify(&self, gamma: &GammaGroup) -> Result<()> {
        let at = gamma.aut().table();
        let n = self.domain.len();
        for x in 0..n {
            for y in 0..n {
                let lhs = self.values[self.domain.mul(x, y)];
                let rhs = at.mul(self.values[x], gamma.act(self.restriction[x], self.values[y]));
                if lhs != rhs {
                    return Err(Error::CocycleLaw(format!(
                        "at σ={}, τ={}: {} ≠ {}",
                        self.labels[x],
                        self.labels[y],
                        gamma.aut().word_string(lhs),
                        gamma.aut().word_string(rhs)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &CayleyTable {
        &self.domain
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn restriction(&self, i: usize) -> usize {
        self.restriction[i]
    }

    pub fn value(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The Kummer tower realizing the splitting field, when there is one.
    pub fn ext(&self) -> Option<&Arc<ExtGalGroup>> {
        self.ext.as_ref()
    }

    pub fn splitting_field(&self) -> &str {
        &self.splitting
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// (generator label, value as a word) for each generator.
    pub fn generator_values(&self, gamma: &GammaGroup) -> Vec<(String, String)> {
        self.generators.iter().map(|&g| (self.labels[g].clone(), gamma.aut().word_string(self.values[g]))).collect()
    }
}

/// ξ = π₁∘Ψ.
pub fn solution_to_cocycle(sol: &Solution, gamma: &GammaGroup) -> Cocycle {
    let ext = sol.ext().clone();
    let n = ext.order();
    Cocycle {
        domain: ext.table().clone(),
        labels: ext.elements().iter().map(|e| e.to_string()).collect(),
        restriction: (0..n).map(|i| ext.restrict(i)).collect(),
        values: sol.values().iter().map(|&x| gamma.pi1(x)).collect(),
        generators: ext.generators().to_vec(),
        splitting: sol.splitting_field(),
        ext: Some(ext),
    }
}

/// σ ↦ (ξ_σ, σ̄) as indices into Γ.
pub fn reassemble(c: &Cocycle, gamma: &GammaGroup) -> Vec<usize> {
    (0..c.values.len()).map(|i| gamma.from_aut(c.values[i]) + gamma.from_gal(c.restriction[i])).collect()
}
