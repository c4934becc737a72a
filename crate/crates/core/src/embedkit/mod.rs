//! Galois embedding problems attached to pairs (G, H): Kummer-family
//! solutions over number fields, Frobenius classes over finite fields, and
//! the passage from solutions to cocycles.

mod cocycle;
mod extgal;
mod finite;
mod kummer;

pub use cocycle::{reassemble, solution_to_cocycle, Cocycle};
pub use extgal::ExtGalGroup;
pub use finite::{solve_finite_field, FiniteFieldTwist};
pub use kummer::{solve_kummer, KummerSolutionFamily, Solution};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::grouplab::{GammaGroup, PairGH};

/// 1 → H → G → Gal(K/k) → 1 for a pair produced by `enumerate_pairs`.
#[derive(Clone, Debug)]
pub struct EmbeddingProblem<'a> {
    pub gamma: &'a GammaGroup,
    pub pair: PairGH,
    /// Names for the Kummer parameters, keyed by radical degree.
    pub radical_names: BTreeMap<u64, String>,
}

const DEFAULT_NAMES: [&str; 6] = ["m", "n", "p", "u", "v", "t"];

pub fn pose_problem<'a>(pair: &PairGH, gamma: &'a GammaGroup) -> Result<EmbeddingProblem<'a>> {
    let t = gamma.table();
    let image: std::collections::BTreeSet<usize> = pair.g.iter().map(|&x| gamma.pi2(x)).collect();
    if image.len() != gamma.gal().order() {
        return Err(Error::NotExact("projection to Gal(K/k) is not surjective".into()));
    }
    let kernel: Vec<usize> = pair.g.iter().copied().filter(|&x| gamma.pi2(x) == 0).collect();
    if kernel != pair.h {
        return Err(Error::NotExact("kernel of the projection differs from H".into()));
    }
    for &x in &pair.g {
        for &y in &pair.g {
            if !pair.contains(t.mul(x, y)) {
                return Err(Error::NotExact("G is not closed".into()));
            }
        }
        for &h in &pair.h {
            if !pair.h.contains(&t.conj(x, h)) {
                return Err(Error::NotExact("H is not normal in G".into()));
            }
        }
    }
    Ok(EmbeddingProblem { gamma, pair: pair.clone(), radical_names: BTreeMap::new() })
}

impl<'a> EmbeddingProblem<'a> {
    pub fn with_radical_names(mut self, names: BTreeMap<u64, String>) -> Self {
        self.radical_names = names;
        self
    }

    pub(crate) fn name_for(&self, q: u64, slot: usize) -> String {
        self.radical_names
            .get(&q)
            .cloned()
            .unwrap_or_else(|| DEFAULT_NAMES.get(slot).map(|s| s.to_string()).unwrap_or_else(|| format!("m{slot}")))
    }
}
