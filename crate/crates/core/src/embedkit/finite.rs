use std::sync::Arc;

use super::{Cocycle, ExtGalGroup};
use crate::error::{Error, Result};
use crate::exactfield::{GaloisUnit, RadFieldSpec};
use crate::grouplab::{CayleyTable, GalGroup, GammaGroup};

/// One twist over a finite field: the class of the Frobenius image γ.
#[derive(Clone, Debug)]
pub struct FiniteFieldTwist {
    /// Smallest representative γ (index into Γ) of the orbit.
    pub frobenius_image: usize,
    pub orbit_size: usize,
    /// ord(γ) = [L:k].
    pub splitting_degree: usize,
    pub cocycle: Cocycle,
}

/// Twists over a finite field whose Frobenius acts on ζ_N as `b`: one per
/// (φ,1)-conjugacy orbit of γ ∈ Γ with π₂(γ) = b.
pub fn solve_finite_field(gamma: &GammaGroup, b: GaloisUnit) -> Result<Vec<FiniteFieldTwist>> {
    let gal = gamma.gal();
    let s = gal.index_of(&b).ok_or_else(|| {
        Error::InvalidFrobenius(format!("{b} is not in the declared Galois group"))
    })?;
    let t = gamma.table();
    let units = GalGroup::generate(gal.conductor(), &[b])?;
    let base_degree = units.order();
    let mut seen = vec![false; gamma.aut().order()];
    let mut out = Vec::new();
    for a in 0..gamma.aut().order() {
        if seen[a] {
            continue;
        }
        let x = gamma.from_aut(a) + gamma.from_gal(s);
        let mut orbit_size = 0;
        for phi in 0..gamma.aut().order() {
            let y = gamma.pi1(t.conj(gamma.from_aut(phi), x));
            if !seen[y] {
                seen[y] = true;
                orbit_size += 1;
            }
        }
        let d = t.order(x);
        let domain = CayleyTable::from_fn(d, |i, j| (i + j) % d)?;
        let powers: Vec<usize> = (0..d).map(|i| t.pow(x, i)).collect();
        let (ext, splitting) = if d == base_degree {
            let spec = Arc::new(RadFieldSpec::cyclotomic(gal.conductor()));
            (Some(Arc::new(ExtGalGroup::new(spec, units.clone())?)), "K".to_string())
        } else {
            (None, format!("degree {d} extension of k"))
        };
        let cocycle = Cocycle::new(
            domain,
            (0..d).map(|i| if i == 0 { "1".to_string() } else { format!("F^{i}") }).collect(),
            powers.iter().map(|&p| gamma.pi2(p)).collect(),
            powers.iter().map(|&p| gamma.pi1(p)).collect(),
            if d > 1 { vec![1] } else { vec![] },
            ext,
            splitting,
        )?;
        out.push(FiniteFieldTwist { frobenius_image: x, orbit_size, splitting_degree: d, cocycle });
    }
    Ok(out)
}
