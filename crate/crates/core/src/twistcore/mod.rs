//! Descent: the twisted Galois action on Ω¹_L(C), its fixed subspace, the
//! change of variables η, and the twisted canonical ideal.
//!
//! Conventions. An automorphism α is given by the matrix A(α) of the
//! substitution ω_i ↦ Σ_j A_ij ω_j; its pullback on the differential basis
//! is ξ* = Aᵀ, so ξ*_{αβ} = ξ*_β·ξ*_α. A vector Σ λ_i ω_i is stored as its
//! coefficient column λ, on which σ acts by λ ↦ A(ξ_σ)·^σλ. The fixed
//! vectors μ_j form the rows of μ, η = μ⁻¹, and ω_i = Σ_j η_ij ω′_j; then
//! η·^ση⁻¹ = (ξ*_σ)⁻¹ for every σ.

mod basis;
mod equations;
mod module;

pub use basis::{derive_eta, TwistBasis};
pub use equations::{compute_twist, evaluate_generators, twist_equations, verify_twist, Check, TwistOutput, TwistReport};
pub use module::{build_twisted_action, fixed_subspace_kernel, fixed_subspace_reynolds, FixedSpace, TwistedModule};

use crate::error::{Error, Result};
use crate::exactfield::CycNum;
use crate::grouplab::AutGroup;
use crate::linalg::{self, Matrix};

/// Pullbacks ξ* = Aᵀ of every automorphism, checked against the group law.
#[derive(Clone, Debug)]
pub struct DifferentialRep {
    genus: usize,
    substitutions: Vec<Matrix<CycNum>>,
    pullbacks: Vec<Matrix<CycNum>>,
}

impl DifferentialRep {
    pub fn from_aut(aut: &AutGroup) -> Result<Self> {
        let substitutions: Vec<Matrix<CycNum>> = aut.elements().to_vec();
        let pullbacks: Vec<Matrix<CycNum>> = substitutions.iter().map(linalg::transpose).collect();
        let t = aut.table();
        for a in 0..aut.order() {
            for b in 0..aut.order() {
                let lhs = &pullbacks[t.mul(a, b)];
                let rhs = linalg::mat_mul(&pullbacks[b], &pullbacks[a])?;
                if lhs != &rhs {
                    return Err(Error::RepresentationLaw(format!(
                        "pullback of {}·{} is not the reversed product",
                        aut.word_string(a),
                        aut.word_string(b)
                    )));
                }
            }
        }
        Ok(DifferentialRep { genus: aut.dim(), substitutions, pullbacks })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// ξ*_α
    pub fn pullback(&self, a: usize) -> &Matrix<CycNum> {
        &self.pullbacks[a]
    }

    /// A(α)
    pub fn substitution(&self, a: usize) -> &Matrix<CycNum> {
        &self.substitutions[a]
    }
}
