use std::collections::HashSet;
use std::sync::Arc;

use super::{EmbeddingProblem, ExtGalGroup};
use crate::error::{Error, Result};
use crate::exactfield::{euler_phi, ExtGaloisElement, RadFieldSpec, RadicalSlot};
use crate::grouplab::{Budget, GammaGroup};

/// An epi₂-morphism Ψ : Gal(L/k) → Γ with image G, stored elementwise.
#[derive(Clone, Debug)]
pub struct Solution {
    tag: String,
    twist: Vec<u32>,
    ext: Arc<ExtGalGroup>,
    values: Vec<usize>,
}

impl Solution {
    /// Exponent-twist signature, e.g. `m^2,n^3`; `trivial` when L = K.
    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// The units u_t with Ψ_u(b, e) = Ψ(b, u·e).
    pub fn twist(&self) -> &[u32] {
        &self.twist
    }

    pub fn ext(&self) -> &Arc<ExtGalGroup> {
        &self.ext
    }

    pub fn spec(&self) -> &Arc<RadFieldSpec> {
        self.ext.spec()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn image(&self, e: &ExtGaloisElement) -> Option<usize> {
        self.ext.index_of(e).map(|i| self.values[i])
    }

    pub fn generator_images(&self) -> Vec<(ExtGaloisElement, usize)> {
        self.ext.generators().iter().map(|&g| (self.ext.element(g).clone(), self.values[g])).collect()
    }

    pub fn splitting_field(&self) -> String {
        splitting_description(self.ext.spec())
    }

    /// Homomorphism law on the whole table, image equal to `g`.
    pub fn verify(&self, gamma: &GammaGroup, g: &[usize]) -> Result<()> {
        let et = self.ext.table();
        for x in 0..et.len() {
            for y in 0..et.len() {
                if self.values[et.mul(x, y)] != gamma.mul(self.values[x], self.values[y]) {
                    return Err(Error::InvalidGroup(format!(
                        "solution {} is not a homomorphism at {}, {}",
                        self.tag,
                        self.ext.element(x),
                        self.ext.element(y)
                    )));
                }
            }
        }
        let mut image: Vec<usize> = self.values.iter().copied().collect::<HashSet<_>>().into_iter().collect();
        image.sort_unstable();
        if image != g {
            return Err(Error::InvalidGroup(format!("solution {} does not surject onto G", self.tag)));
        }
        Ok(())
    }
}

pub(crate) fn splitting_description(spec: &RadFieldSpec) -> String {
    if spec.slots().is_empty() {
        return "K".into();
    }
    let parts: Vec<String> = spec.slots().iter().map(|s| format!("{}^(1/{})", s.name, s.q)).collect();
    format!("K({})", parts.join(", "))
}

/// All solutions of a Kummer-shaped problem, up to (β,1)-conjugacy.
#[derive(Clone, Debug)]
pub struct KummerSolutionFamily {
    pub spec: Arc<RadFieldSpec>,
    pub ext: Arc<ExtGalGroup>,
    /// h_t ∈ Aut generating the cyclic factor of H of order q_t.
    pub kernel_generators: Vec<usize>,
    pub solutions: Vec<Solution>,
}

impl KummerSolutionFamily {
    pub fn splitting_field(&self) -> String {
        splitting_description(&self.spec)
    }
}

fn prime_power_parts(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    out
}

pub fn solve_kummer(problem: &EmbeddingProblem<'_>) -> Result<KummerSolutionFamily> {
    let gamma = problem.gamma;
    let pair = &problem.pair;
    let t = gamma.table();
    let at = gamma.aut().table();
    let hs: Vec<usize> = pair.h.iter().map(|&x| gamma.pi1(x)).collect();
    if hs.iter().any(|&x| hs.iter().any(|&y| at.mul(x, y) != at.mul(y, x))) {
        return Err(Error::OutsideKummerFamily("H is not abelian".into()));
    }
    let n = gamma.gal().conductor();

    // cyclic Sylow factors; automorphism indices run in shortest-word order
    let mut slots = Vec::new();
    let mut kernel_generators = Vec::new();
    for (slot, (p, q)) in prime_power_parts(hs.len()).into_iter().enumerate() {
        let h = hs.iter().copied().filter(|&x| at.order(x) == q).min().ok_or_else(|| {
            Error::OutsideKummerFamily(format!("Sylow {p}-subgroup of H is not cyclic"))
        })?;
        if n % q as u64 != 0 {
            return Err(Error::OutsideKummerFamily(format!("ζ_{q} is not in K (conductor {n})")));
        }
        let image: HashSet<u64> = gamma.gal().elements().iter().map(|u| u.exponent_mod(q as u64)).collect();
        if image.len() as u64 != euler_phi(q as u64) {
            return Err(Error::OutsideKummerFamily(format!(
                "[k(ζ_{q}):k] = {} is smaller than φ({q}) = {}",
                image.len(),
                euler_phi(q as u64)
            )));
        }
        slots.push(RadicalSlot { name: problem.name_for(q as u64, slot), q: q as u32 });
        kernel_generators.push(h);
    }
    let spec = Arc::new(RadFieldSpec::new(n, slots)?);
    let ext = Arc::new(ExtGalGroup::new(spec.clone(), gamma.gal().clone())?);

    let section = find_section(gamma, pair.g.as_slice(), &spec, &kernel_generators)?;

    let exps = spec.exponent_vectors();
    let r = exps.len();
    let kernel_power = |e: &[u32]| {
        e.iter().zip(&kernel_generators).fold(0usize, |acc, (&k, &h)| at.mul(acc, at.pow(h, k as usize)))
    };
    let base: Vec<usize> = (0..ext.order())
        .map(|i| t.mul(gamma.from_aut(kernel_power(&exps[i % r])), section[ext.restrict(i)]))
        .collect();

    // exponent twists u ∈ ∏ (Z/q_t)^*, in lexicographic order
    let mut twists: Vec<Vec<u32>> = vec![vec![]];
    for s in spec.slots() {
        let units: Vec<u32> = (1..s.q).filter(|u| num_integer::gcd(*u, s.q) == 1).collect();
        twists = twists
            .into_iter()
            .flat_map(|v| {
                units.iter().map(move |&u| {
                    let mut w = v.clone();
                    w.push(u);
                    w
                })
            })
            .collect();
    }
    let gens = ext.generators();
    let mut solutions: Vec<Solution> = Vec::new();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for u in twists {
        let values: Vec<usize> = (0..ext.order())
            .map(|i| {
                let e: Vec<u32> =
                    exps[i % r].iter().zip(&u).zip(spec.slots()).map(|((a, b), s)| a * b % s.q).collect();
                let j = (i / r) * r + exps.iter().position(|x| *x == e).unwrap();
                base[j]
            })
            .collect();
        let on_gens: Vec<usize> = gens.iter().map(|&g| values[g]).collect();
        let equivalent = (0..gamma.aut().order()).any(|b| {
            let beta = gamma.from_aut(b);
            let conj: Vec<usize> = on_gens.iter().map(|&x| t.conj(beta, x)).collect();
            seen.contains(&conj)
        });
        if equivalent {
            continue;
        }
        seen.push(on_gens);
        let tag = if u.is_empty() {
            "trivial".to_string()
        } else {
            spec.slots()
                .iter()
                .zip(&u)
                .map(|(s, &k)| if k == 1 { s.name.clone() } else { format!("{}^{}", s.name, k) })
                .collect::<Vec<_>>()
                .join(",")
        };
        let sol = Solution { tag, twist: u, ext: ext.clone(), values };
        sol.verify(gamma, &pair.g)?;
        solutions.push(sol);
    }
    if solutions.len() != pair.solution_count {
        return Err(Error::InvalidGroup(format!(
            "found {} inequivalent Kummer solutions, the count formula gives {}",
            solutions.len(),
            pair.solution_count
        )));
    }
    Ok(KummerSolutionFamily { spec, ext, kernel_generators, solutions })
}

/// A homomorphic section b ↦ (c_b, b) of G → Gal(K/k) whose conjugation
/// action on each h_t is h_t ↦ h_t^{b mod q_t}; first in index order.
fn find_section(
    gamma: &GammaGroup,
    g: &[usize],
    spec: &RadFieldSpec,
    kernel_generators: &[usize],
) -> Result<Vec<usize>> {
    let gal = gamma.gal();
    let gt = gal.table();
    let gens = gal.generators();
    let cands: Vec<Vec<usize>> =
        gens.iter().map(|&s| g.iter().copied().filter(|&x| gamma.pi2(x) == s).collect()).collect();
    let mut budget = Budget::default();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let imgs: Vec<usize> = choice.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
        if let Some(section) = extend_section(gamma, gt, gens, &imgs, &mut budget)? {
            let ok = (0..gal.order()).all(|s| {
                kernel_generators.iter().zip(spec.slots()).all(|(&h, slot)| {
                    let b = gal.element(s).exponent_mod(slot.q as u64) as usize;
                    let lhs = gamma.table().conj(section[s], gamma.from_aut(h));
                    lhs == gamma.from_aut(gamma.aut().table().pow(h, b))
                })
            });
            if ok {
                return Ok(section);
            }
        }
        // advance the mixed-radix counter
        let mut k = gens.len();
        loop {
            if k == 0 {
                return Err(Error::OutsideKummerFamily(
                    "no section of G → Gal(K/k) acts on H by the Kummer rule".into(),
                ));
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < cands[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

fn extend_section(
    gamma: &GammaGroup,
    gt: &crate::grouplab::CayleyTable,
    gens: &[usize],
    imgs: &[usize],
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    let mut map = vec![usize::MAX; gt.len()];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        budget.spend(2 * gens.len() as u64)?;
        for (&g, &h) in gens.iter().zip(imgs) {
            let y = gt.mul(x, g);
            let fy = gamma.mul(map[x], h);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return Ok(None);
            }
        }
        i += 1;
    }
    Ok(Some(map))
}
