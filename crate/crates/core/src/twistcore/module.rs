use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::DifferentialRep;
use crate::embedkit::{Cocycle, ExtGalGroup};
use crate::error::{Error, Result};
use crate::exactfield::{euler_phi, CycNum, ExtGaloisElement, RadNum, RatFunc, Rational};
use crate::linalg::{self, Matrix};

/// Ω¹_L(C) as a Q-vector space with the twisted action of Gal(L/k).
///
/// The basis is x^a·ζ_N^k·ω_i with a a radical exponent vector and k < φ(N).
/// Galois elements only multiply x^a by roots of unity, so the action is
/// block-diagonal in a; inside a block coordinate (i, k) sits at i·φ(N) + k.
#[derive(Clone, Debug)]
pub struct TwistedModule {
    ext: Arc<ExtGalGroup>,
    cocycle: Cocycle,
    genus: usize,
    phi: usize,
    exps: Vec<Vec<u32>>,
    /// ζ_N^n·A_ij as power-basis coordinates, per cocycle value.
    scaled: BTreeMap<usize, Vec<Vec<Option<Vec<Vec<Rational>>>>>>,
    pullbacks: BTreeMap<usize, Matrix<CycNum>>,
}

fn coords(c: &CycNum, n: u64, phi: usize) -> Vec<Rational> {
    let mut v = c.lift(n).expect("entries live in Q(ζ_N)").coords().to_vec();
    v.resize(phi, Rational::zero());
    v
}

pub fn build_twisted_action(cocycle: &Cocycle, rep: &DifferentialRep) -> Result<TwistedModule> {
    let ext = cocycle
        .ext()
        .cloned()
        .ok_or_else(|| Error::OutsideKummerFamily(format!("splitting field {} is not a Kummer tower", cocycle.splitting_field())))?;
    let n = ext.spec().conductor();
    let phi = euler_phi(n) as usize;
    let g = rep.genus();
    let mut scaled = BTreeMap::new();
    let mut pullbacks = BTreeMap::new();
    for &v in cocycle.values() {
        if scaled.contains_key(&v) {
            continue;
        }
        let a = rep.substitution(v);
        let table: Vec<Vec<Option<Vec<Vec<Rational>>>>> = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| {
                        (!linalg::Field::is_zero(&a[i][j])).then(|| {
                            (0..n as i64)
                                .map(|k| coords(&linalg::Field::mul(&a[i][j], &CycNum::root_of_unity(n, k)), n, phi))
                                .collect()
                        })
                    })
                    .collect()
            })
            .collect();
        scaled.insert(v, table);
        pullbacks.insert(v, rep.pullback(v).clone());
    }
    let module = TwistedModule {
        exps: ext.spec().exponent_vectors(),
        ext,
        cocycle: cocycle.clone(),
        genus: g,
        phi,
        scaled,
        pullbacks,
    };
    module.check_relations()?;
    Ok(module)
}

/// Sparse-aware product of rational matrices.
pub(crate) fn qmul(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let cols = b.first().map_or(0, Vec::len);
    let nz: Vec<Vec<(usize, &Rational)>> =
        b.iter().map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()).collect();
    a.iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in &nz[k] {
                    out[*j] += x * *y;
                }
            }
            out
        })
        .collect()
}

fn qidentity(n: usize) -> Matrix<Rational> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

fn qadd(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

impl TwistedModule {
    pub fn ext(&self) -> &Arc<ExtGalGroup> {
        &self.ext
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn block_count(&self) -> usize {
        self.exps.len()
    }

    pub fn block_exponents(&self, block: usize) -> &[u32] {
        &self.exps[block]
    }

    pub fn block_dim(&self) -> usize {
        self.genus * self.phi
    }

    /// g·[L:Q(ζ_N)]·φ(N).
    pub fn dimension(&self) -> usize {
        self.block_dim() * self.block_count()
    }

    /// dim of the fixed space over Q: g·φ(N)/|Gal(K/k)|.
    pub fn expected_fixed_dimension(&self) -> usize {
        self.genus * self.phi / self.ext.units().order()
    }

    pub fn pullback_of(&self, sigma: usize) -> &Matrix<CycNum> {
        &self.pullbacks[&self.cocycle.value(sigma)]
    }

    /// (σ, ξ*_σ) for the generators of Gal(L/k).
    pub fn generator_pullbacks(&self) -> Vec<(ExtGaloisElement, Matrix<CycNum>)> {
        self.ext.generators().iter().map(|&g| (self.ext.element(g).clone(), self.pullback_of(g).clone())).collect()
    }

    /// ρ_ξ(σ) restricted to block `block`.
    pub fn action(&self, block: usize, sigma: usize) -> Matrix<Rational> {
        let n = self.ext.spec().conductor() as usize;
        let el = self.ext.element(sigma);
        let b = el.unit.exponent() as usize;
        let ph = el.radical_phase(&self.exps[block], self.ext.spec()).rem_euclid(n as i64) as usize;
        let table = &self.scaled[&self.cocycle.value(sigma)];
        let d = self.block_dim();
        let mut m = vec![vec![Rational::zero(); d]; d];
        for j in 0..self.genus {
            for k in 0..self.phi {
                let col = j * self.phi + k;
                let shift = (b * k + ph) % n;
                for i in 0..self.genus {
                    if let Some(t) = &table[i][j] {
                        for (kk, c) in t[shift].iter().enumerate() {
                            if !c.is_zero() {
                                m[i * self.phi + kk][col] = c.clone();
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// ρ on generators: products on generator pairs and orders, every block.
    fn check_relations(&self) -> Result<()> {
        let t = self.ext.table();
        let gens = self.ext.generators();
        for block in 0..self.block_count() {
            let mats: Vec<Matrix<Rational>> = gens.iter().map(|&g| self.action(block, g)).collect();
            for (x, &gx) in gens.iter().enumerate() {
                for (y, &gy) in gens.iter().enumerate() {
                    if qmul(&mats[x], &mats[y]) != self.action(block, t.mul(gx, gy)) {
                        return Err(Error::RepresentationLaw(format!(
                            "ρ({})ρ({}) ≠ ρ({}·{}) on block {:?}",
                            self.ext.element(gx),
                            self.ext.element(gy),
                            self.ext.element(gx),
                            self.ext.element(gy),
                            self.exps[block]
                        )));
                    }
                }
                let mut p = qidentity(self.block_dim());
                for _ in 0..t.order(gx) {
                    p = qmul(&p, &mats[x]);
                }
                if p != qidentity(self.block_dim()) {
                    return Err(Error::RepresentationLaw(format!(
                        "ρ({}) does not have order dividing {}",
                        self.ext.element(gx),
                        t.order(gx)
                    )));
                }
            }
        }
        Ok(())
    }

    /// ρ(w₁)ρ(w₂) = ρ(w₁w₂) for words in the generators, on every block.
    pub fn check_words(&self, pairs: &[(Vec<usize>, Vec<usize>)]) -> Result<()> {
        let t = self.ext.table();
        let gens = self.ext.generators();
        let elem = |w: &[usize]| w.iter().fold(0, |acc, &k| t.mul(acc, gens[k]));
        for block in 0..self.block_count() {
            let mats: Vec<Matrix<Rational>> = gens.iter().map(|&g| self.action(block, g)).collect();
            let word = |w: &[usize]| w.iter().fold(qidentity(self.block_dim()), |acc, &k| qmul(&acc, &mats[k]));
            for (w1, w2) in pairs {
                let lhs = qmul(&word(w1), &word(w2));
                let both: Vec<usize> = w1.iter().chain(w2).copied().collect();
                if lhs != self.action(block, elem(&both)) {
                    return Err(Error::RepresentationLaw(format!("word pair {w1:?}, {w2:?} on block {block}")));
                }
            }
        }
        Ok(())
    }

    /// Reynolds projector on a block: |G|⁻¹·Σ_{b}ρ(b,0)·∏_t Σ_k ρ(δ_t)^k.
    pub fn projector(&self, block: usize) -> Matrix<Rational> {
        let d = self.block_dim();
        let r = self.block_count();
        let units = self.ext.units().order();
        let mut p = vec![vec![Rational::zero(); d]; d];
        for s in 0..units {
            p = qadd(&p, &self.action(block, s * r));
        }
        let kummer = &self.ext.generators()[self.ext.units().generators().len()..];
        for &k in kummer {
            let m = self.action(block, k);
            let mut acc = qidentity(d);
            let mut pw = qidentity(d);
            for _ in 1..self.ext.table().order(k) {
                pw = qmul(&pw, &m);
                acc = qadd(&acc, &pw);
            }
            p = qmul(&p, &acc);
        }
        let scale = Rational::from_integer((self.ext.order() as i64).into());
        p.iter().map(|row| row.iter().map(|x| x / &scale).collect()).collect()
    }

    /// Coefficient row (over ω₁..ω_g) of a block vector, in the radical field.
    pub fn to_radical(&self, block: usize, v: &[Rational]) -> Vec<RadNum> {
        let spec = self.ext.spec();
        let n = spec.conductor() as i64;
        (0..self.genus)
            .map(|i| {
                let c = CycNum::new(n, v[i * self.phi..(i + 1) * self.phi].to_vec()).expect("valid conductor");
                RadNum::term(spec.clone(), self.exps[block].clone(), RatFunc::constant(c))
            })
            .collect()
    }
}

/// A subspace of the module given block by block in canonical rref form.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedSpace {
    pub blocks: Vec<Matrix<Rational>>,
}

impl FixedSpace {
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

/// ∩_{generators σ} ker(ρ(σ) − 1), block by block.
pub fn fixed_subspace_kernel(m: &TwistedModule) -> Result<FixedSpace> {
    let d = m.block_dim();
    let one = Rational::one();
    let mut blocks = Vec::with_capacity(m.block_count());
    for block in 0..m.block_count() {
        let mut stacked: Matrix<Rational> = Vec::new();
        for &g in m.ext.generators() {
            let mut a = m.action(block, g);
            for (i, row) in a.iter_mut().enumerate() {
                row[i] -= &one;
            }
            stacked.extend(a);
        }
        let kernel = if stacked.is_empty() { qidentity(d) } else { linalg::nullspace(&stacked, d, &one) };
        blocks.push(if kernel.is_empty() { kernel } else { linalg::row_space_canonical(&kernel) });
    }
    let space = FixedSpace { blocks };
    if space.dimension() != m.expected_fixed_dimension() {
        return Err(Error::FixedDimension { found: space.dimension(), expected: m.expected_fixed_dimension() });
    }
    Ok(space)
}

/// Image of the averaging projector, block by block.
pub fn fixed_subspace_reynolds(m: &TwistedModule) -> FixedSpace {
    let blocks = (0..m.block_count())
        .map(|block| {
            let image = linalg::transpose(&m.projector(block));
            let rows = linalg::row_space_canonical(&image);
            rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
        })
        .collect();
    FixedSpace { blocks }
}
