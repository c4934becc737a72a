use super::CayleyTable;
use crate::error::{Error, Result};
use crate::exactfield::GaloisUnit;

/// Gal(K/k) as a subgroup of (Z/N)^*.
#[derive(Clone, Debug)]
pub struct GalGroup {
    conductor: u64,
    elements: Vec<GaloisUnit>,
    table: CayleyTable,
    generators: Vec<usize>,
}

impl GalGroup {
    pub fn generate(conductor: u64, gens: &[GaloisUnit]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.conductor() != conductor) {
            return Err(Error::InvalidGroup(format!("unit {g} does not live modulo {conductor}")));
        }
        let mut elements = vec![GaloisUnit::identity(conductor)];
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let y = elements[i].compose(g);
                if !elements.contains(&y) {
                    elements.push(y);
                }
            }
            i += 1;
        }
        let table = CayleyTable::from_fn(elements.len(), |a, b| {
            let p = elements[a].compose(&elements[b]);
            elements.iter().position(|e| *e == p).unwrap()
        })?;
        let generators = gens.iter().map(|g| elements.iter().position(|e| e == g).unwrap()).collect();
        Ok(GalGroup { conductor, elements, table, generators })
    }

    /// Generate and insist on the declared order [K:k].
    pub fn with_index(conductor: u64, gens: &[GaloisUnit], index: usize) -> Result<Self> {
        let g = Self::generate(conductor, gens)?;
        if g.order() != index {
            return Err(Error::InvalidGroup(format!(
                "galois generators span a group of order {}, declared index {}",
                g.order(),
                index
            )));
        }
        Ok(g)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GaloisUnit] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> GaloisUnit {
        self.elements[i]
    }

    pub fn index_of(&self, u: &GaloisUnit) -> Option<usize> {
        self.elements.iter().position(|e| e == u)
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order()).any(|i| self.table.order(i) == self.order())
    }
}
