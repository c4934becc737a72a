use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::exactfield::{ExtGaloisElement, RadFieldSpec};
use crate::grouplab::{CayleyTable, GalGroup};

/// Gal(L/k) for L = K(m₁^{1/q₁}, …): pairs (b, e) with b ∈ Gal(K/k).
/// Element (s, e) sits at index s·R + (position of e), R = ∏ q_t.
#[derive(Clone, Debug)]
pub struct ExtGalGroup {
    spec: Arc<RadFieldSpec>,
    units: GalGroup,
    elements: Vec<ExtGaloisElement>,
    table: CayleyTable,
    generators: Vec<usize>,
    radical_count: usize,
}

impl ExtGalGroup {
    pub fn new(spec: Arc<RadFieldSpec>, units: GalGroup) -> Result<Self> {
        let exps = spec.exponent_vectors();
        let mut elements = Vec::with_capacity(units.order() * exps.len());
        for u in units.elements() {
            for e in &exps {
                elements.push(ExtGaloisElement::new(&spec, *u, e.clone())?);
            }
        }
        let index: HashMap<&ExtGaloisElement, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let table = CayleyTable::from_fn(elements.len(), |a, b| index[&elements[a].compose(&elements[b], &spec)])?;
        let r = exps.len();
        let mut generators: Vec<usize> = units.generators().iter().map(|&s| s * r).collect();
        for t in 0..spec.slots().len() {
            let mut e = vec![0; spec.slots().len()];
            e[t] = 1;
            generators.push(exps.iter().position(|x| *x == e).unwrap());
        }
        Ok(ExtGalGroup { spec, units, elements, table, generators, radical_count: r })
    }

    pub fn spec(&self) -> &Arc<RadFieldSpec> {
        &self.spec
    }

    pub fn units(&self) -> &GalGroup {
        &self.units
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ExtGaloisElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ExtGaloisElement {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &ExtGaloisElement) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    /// Lifted generators of Gal(K/k) followed by the Kummer generators x_t ↦ ζ x_t.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Index in the unit group of the restriction to K.
    pub fn restrict(&self, i: usize) -> usize {
        i / self.radical_count
    }
}
