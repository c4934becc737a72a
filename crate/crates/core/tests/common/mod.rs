#![allow(dead_code)]

use twistforge_core::exactfield::{CycNum, GaloisUnit};
use twistforge_core::grouplab::{build_gamma, close_matrix_group, AutGroup, GalGroup, GammaGroup};
use twistforge_core::linalg::Matrix;
use twistforge_core::polyring::{CanonicalIdeal, HomPoly};

pub const N: u64 = 21;

pub fn z(k: i64) -> CycNum {
    CycNum::root_of_unity(N, k)
}

pub fn diag(entries: &[CycNum]) -> Matrix<CycNum> {
    let n = entries.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { CycNum::zero() }).collect()).collect()
}

/// r: ζ₃ on ω₁,ω₂,ω₃,ω₅ and ζ₃² on ω₄,ω₆.
pub fn r() -> Matrix<CycNum> {
    diag(&[z(7), z(7), z(7), z(14), z(7), z(14)])
}

/// s: powers of ζ₇.
pub fn s() -> Matrix<CycNum> {
    diag(&[z(3), z(6), z(9), z(3), z(12), z(6)])
}

fn poly(terms: &[(i64, [u32; 6])]) -> HomPoly<CycNum> {
    HomPoly::from_terms(6, terms.iter().map(|(c, e)| (e.to_vec(), CycNum::from_int(*c))).collect()).unwrap()
}

/// Canonical ideal of x⁷ − y³z⁴ − z⁷ (genus 6).
pub fn ideal() -> CanonicalIdeal<CycNum> {
    let gens = vec![
        poly(&[(1, [1, 0, 0, 0, 0, 1]), (-1, [0, 1, 0, 1, 0, 0])]),
        poly(&[(1, [0, 2, 0, 0, 0, 0]), (-1, [1, 0, 1, 0, 0, 0])]),
        poly(&[(1, [0, 1, 1, 0, 0, 0]), (-1, [1, 0, 0, 0, 1, 0])]),
        poly(&[(1, [0, 1, 0, 0, 1, 0]), (-1, [0, 0, 2, 0, 0, 0])]),
        poly(&[(1, [0, 1, 0, 0, 0, 1]), (-1, [0, 0, 1, 1, 0, 0])]),
        poly(&[(1, [0, 0, 1, 0, 0, 1]), (-1, [0, 0, 0, 1, 1, 0])]),
        poly(&[(1, [0, 0, 0, 3, 0, 0]), (-1, [0, 0, 2, 0, 1, 0]), (1, [3, 0, 0, 0, 0, 0])]),
        poly(&[(1, [0, 0, 0, 0, 3, 0]), (-1, [0, 0, 0, 1, 0, 2]), (-1, [1, 2, 0, 0, 0, 0])]),
    ];
    CanonicalIdeal::new(6, gens).unwrap()
}

pub fn aut() -> AutGroup {
    close_matrix_group(6, &[r(), s()], &["r".into(), "s".into()], 1000).unwrap()
}

pub fn gal() -> GalGroup {
    let gens = [GaloisUnit::new(N, 8).unwrap(), GaloisUnit::new(N, 10).unwrap()];
    GalGroup::with_index(N, &gens, 12).unwrap()
}

pub fn gamma() -> GammaGroup {
    build_gamma(aut(), gal()).unwrap()
}

pub fn trivial_gamma() -> GammaGroup {
    build_gamma(AutGroup::trivial(6), gal()).unwrap()
}

pub fn kummer_names() -> std::collections::BTreeMap<u64, String> {
    [(3, "m".to_string()), (7, "n".to_string())].into_iter().collect()
}
