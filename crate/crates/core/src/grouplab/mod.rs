//! Finite groups attached to a curve: the automorphism group as a matrix
//! group, the Galois group as units mod N, their semidirect product Γ, and
//! the pair enumeration / solution counting on Γ.

mod fingerprint;
mod galois;
mod gamma;
mod matrix_group;
mod subgroups;

pub use fingerprint::{fingerprint, GroupFingerprint};
pub use galois::GalGroup;
pub use gamma::{build_gamma, GammaElement, GammaGroup};
pub use matrix_group::{close_matrix_group, AutGroup, IdealViolation};
pub use subgroups::{count_solutions, enumerate_pairs, enumerate_pairs_with, ElemSet, PairGH};

use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_BOUND: usize = 1000;
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Counts multiplication-table lookups so searches fail loudly instead of
/// running unbounded.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn spend(&mut self, n: u64) -> Result<()> {
        self.used += n;
        if self.used > self.limit {
            Err(Error::BudgetExhausted(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODE_BUDGET)
    }
}

/// Multiplication table of a finite group; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    order: Vec<u32>,
}

impl CayleyTable {
    /// `mul(i, j)` must describe a group on 0..n with identity 0.
    pub fn from_fn(n: usize, mut mul: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let k = mul(i, j);
                if k >= n {
                    return Err(Error::InvalidGroup(format!("product {i}*{j} out of range")));
                }
                table[i * n + j] = k as u32;
            }
        }
        let mut t = CayleyTable { n, table, inv: vec![0; n], order: vec![0; n] };
        for i in 0..n {
            if t.mul(0, i) != i || t.mul(i, 0) != i {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
            let inv = (0..n)
                .find(|&j| t.mul(i, j) == 0)
                .ok_or_else(|| Error::InvalidGroup(format!("element {i} has no inverse")))?;
            t.inv[i] = inv as u32;
            let mut k = 1;
            let mut x = i;
            while x != 0 {
                x = t.mul(x, i);
                k += 1;
                if k as usize > n {
                    return Err(Error::InvalidGroup(format!("element {i} has no finite order")));
                }
            }
            t.order[i] = k;
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j] as usize
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    #[inline]
    pub fn order(&self, i: usize) -> usize {
        self.order[i] as usize
    }

    pub fn pow(&self, i: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, i))
    }

    /// x y x⁻¹
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inv(x))
    }

    /// Subgroup generated by `gens`, in discovery order starting at the identity.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Checks associativity on every triple (small groups only).
    pub fn is_associative(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| (0..self.n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }
}
