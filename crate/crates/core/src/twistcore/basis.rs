use std::sync::Arc;

use super::{FixedSpace, TwistedModule};
use crate::error::{Error, Result};
use crate::exactfield::{CycNum, ExtGaloisElement, RadFieldSpec, RadNum};
use crate::linalg::{self, Field, Matrix};

/// Fixed vectors μ_j (rows of μ) and η = μ⁻¹.
#[derive(Clone, Debug)]
pub struct TwistBasis {
    pub spec: Arc<RadFieldSpec>,
    pub mu: Matrix<RadNum>,
    pub eta: Matrix<RadNum>,
}

/// Picks g vectors of the fixed space that are independent over L, ordered
/// by their first nonzero slot, and scales each so that coefficient has
/// rational part 1 when that part is rational.
pub fn derive_eta(fixed: &FixedSpace, m: &TwistedModule) -> Result<TwistBasis> {
    let g = m.genus();
    let mut candidates: Vec<(usize, usize, usize, Vec<RadNum>)> = Vec::new();
    for (block, rows) in fixed.blocks.iter().enumerate() {
        for (k, v) in rows.iter().enumerate() {
            let row = m.to_radical(block, v);
            if let Some(slot) = row.iter().position(|c| !c.is_zero()) {
                candidates.push((slot, block, k, row));
            }
        }
    }
    candidates.sort_by_key(|(slot, block, k, _)| (*slot, *block, *k));
    let mut mu: Matrix<RadNum> = Vec::new();
    for (_, _, _, row) in candidates {
        if mu.len() == g {
            break;
        }
        mu.push(row);
        if linalg::rank(&mu) < mu.len() {
            mu.pop();
        }
    }
    if mu.len() < g {
        return Err(Error::FixedDimension { found: mu.len(), expected: g });
    }
    for row in mu.iter_mut() {
        let lead = row.iter().find(|c| !c.is_zero()).expect("nonzero row");
        let scale = lead.single_term().and_then(|(_, f)| f.constant_value()).filter(|c| c.is_rational());
        if let Some(c) = scale {
            let inv = c.inv()?;
            *row = row.iter().map(|x| x.scale_cyc(&inv)).collect();
        }
    }
    let eta = linalg::inverse(&mu)?;
    Ok(TwistBasis { spec: m.ext().spec().clone(), mu, eta })
}

impl TwistBasis {
    pub fn genus(&self) -> usize {
        self.mu.len()
    }

    /// η·^ση⁻¹ = (ξ*_σ)⁻¹ for each (σ, ξ*_σ).
    pub fn check_cocycle_identity(&self, actions: &[(ExtGaloisElement, Matrix<CycNum>)]) -> Result<()> {
        for (el, pullback) in actions {
            let conj: Matrix<RadNum> =
                self.mu.iter().map(|r| r.iter().map(|x| x.galois(el)).collect::<Result<_>>()).collect::<Result<_>>()?;
            let lhs = linalg::mat_mul(&self.eta, &conj)?;
            let rhs = linalg::inverse(pullback)?;
            let ok = lhs
                .iter()
                .flatten()
                .zip(rhs.iter().flatten())
                .all(|(a, b)| *a == RadNum::from_cyc(self.spec.clone(), b.clone()));
            if !ok {
                return Err(Error::CocycleLaw(format!("η·^ση⁻¹ ≠ (ξ*_σ)⁻¹ for σ = {el}")));
            }
        }
        Ok(())
    }

    /// μ_j written out, e.g. `m^(2/3)*w1`.
    pub fn basis_strings(&self) -> Vec<String> {
        self.mu
            .iter()
            .map(|row| {
                let terms: Vec<String> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| {
                        let s = c.to_string();
                        let w = crate::polyring::var_name(i);
                        if s == "1" {
                            w
                        } else if s.contains(" + ") || s.contains(" - ") {
                            format!("({s})*{w}")
                        } else {
                            format!("{s}*{w}")
                        }
                    })
                    .collect();
                terms.join(" + ")
            })
            .collect()
    }
}
