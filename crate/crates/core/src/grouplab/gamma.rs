use super::{AutGroup, CayleyTable, GalGroup};
use crate::error::{Error, Result};
use crate::exactfield::CycNum;
use crate::linalg::Matrix;

/// (α, σ) ∈ Aut ⋊ Gal, as indices into the two factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaElement {
    pub a: usize,
    pub s: usize,
}

/// Γ = Aut ⋊ Gal with (α,σ)(β,τ) = (α·^σβ, στ), where ^σβ applies σ to the
/// matrix entries. Element (a, s) has index a·|Gal| + s.
#[derive(Clone, Debug)]
pub struct GammaGroup {
    aut: AutGroup,
    gal: GalGroup,
    act: Vec<Vec<usize>>,
    table: CayleyTable,
}

/// Entrywise σ on a matrix.
pub(crate) fn galois_matrix(m: &Matrix<CycNum>, gal: &GalGroup, s: usize) -> Result<Matrix<CycNum>> {
    let u = gal.element(s);
    m.iter().map(|r| r.iter().map(|c| c.galois(&u)).collect()).collect()
}

pub fn build_gamma(aut: AutGroup, gal: GalGroup) -> Result<GammaGroup> {
    if gal.conductor() % aut.conductor() != 0 {
        return Err(Error::UnstableAction(format!(
            "matrix entries need conductor {}, galois group acts modulo {}",
            aut.conductor(),
            gal.conductor()
        )));
    }
    let mut act = Vec::with_capacity(gal.order());
    for s in 0..gal.order() {
        let mut row = Vec::with_capacity(aut.order());
        for a in 0..aut.order() {
            let img = galois_matrix(aut.matrix(a), &gal, s)?;
            let j = aut.index_of(&img).ok_or_else(|| {
                Error::UnstableAction(format!("{} sends {} outside the group", gal.element(s), aut.word_string(a)))
            })?;
            row.push(j);
        }
        act.push(row);
    }
    let ng = gal.order();
    let (at, gt) = (aut.table().clone(), gal.table().clone());
    let table = CayleyTable::from_fn(aut.order() * ng, |x, y| {
        let (a1, s1, a2, s2) = (x / ng, x % ng, y / ng, y % ng);
        at.mul(a1, act[s1][a2]) * ng + gt.mul(s1, s2)
    })?;
    Ok(GammaGroup { aut, gal, act, table })
}

impl GammaGroup {
    pub fn aut(&self) -> &AutGroup {
        &self.aut
    }

    pub fn gal(&self) -> &GalGroup {
        &self.gal
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn index(&self, e: GammaElement) -> usize {
        e.a * self.gal.order() + e.s
    }

    pub fn element(&self, i: usize) -> GammaElement {
        GammaElement { a: i / self.gal.order(), s: i % self.gal.order() }
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.mul(x, y)
    }

    /// Index of ^σ_s α_a in the automorphism group.
    pub fn act(&self, s: usize, a: usize) -> usize {
        self.act[s][a]
    }

    pub fn pi1(&self, i: usize) -> usize {
        i / self.gal.order()
    }

    pub fn pi2(&self, i: usize) -> usize {
        i % self.gal.order()
    }

    /// (α, 1)
    pub fn from_aut(&self, a: usize) -> usize {
        a * self.gal.order()
    }

    /// (1, σ)
    pub fn from_gal(&self, s: usize) -> usize {
        s
    }

    pub fn describe(&self, i: usize) -> String {
        let e = self.element(i);
        format!("({}, {})", self.aut.word_string(e.a), self.gal.element(e.s))
    }
}
