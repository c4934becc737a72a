use std::collections::{HashMap, HashSet};

use super::{fingerprint, Budget, CayleyTable, GammaGroup, GroupFingerprint};
use crate::error::Result;

/// A subset of a group's elements as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(n: usize) -> Self {
        ElemSet { words: vec![0; n.div_ceil(64)] }
    }

    pub fn from_elems(n: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut s = ElemSet::new(n);
        for x in elems {
            s.insert(x);
        }
        s
    }

    pub fn insert(&mut self, x: usize) {
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn contains(&self, x: usize) -> bool {
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(i, w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b))
    }
}

/// A pair H ⊴ G ≤ Γ with π₂(G) = Gal and H = G ∩ (Aut × 1).
#[derive(Clone, Debug)]
pub struct PairGH {
    /// Elements of G (indices into Γ), ascending.
    pub g: Vec<usize>,
    /// Elements of H as indices into Γ, ascending.
    pub h: Vec<usize>,
    pub g_generators: Vec<usize>,
    /// Generators of H as automorphism indices (shortest words first).
    pub h_generators: Vec<usize>,
    pub solution_count: usize,
    pub g_fingerprint: GroupFingerprint,
    pub h_fingerprint: GroupFingerprint,
}

impl PairGH {
    pub fn order_g(&self) -> usize {
        self.g.len()
    }

    pub fn order_h(&self) -> usize {
        self.h.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.g.binary_search(&x).is_ok()
    }

    pub fn h_generator_words(&self, gamma: &GammaGroup) -> Vec<String> {
        self.h_generators.iter().map(|&a| gamma.aut().word_string(a)).collect()
    }
}

/// Extend the subgroup `s` (element list) by `x`, by adjoining right cosets S·t.
fn extend(t: &CayleyTable, s: &[usize], gens: &[usize], x: usize, budget: &mut Budget) -> Result<Vec<usize>> {
    let mut member = vec![false; t.len()];
    for &e in s {
        member[e] = true;
    }
    let mut elems = s.to_vec();
    let mut reps = vec![0usize];
    let all: Vec<usize> = gens.iter().copied().chain(std::iter::once(x)).collect();
    let mut i = 0;
    while i < reps.len() {
        let r = reps[i];
        budget.spend(all.len() as u64)?;
        for &g in &all {
            let y = t.mul(r, g);
            if !member[y] {
                budget.spend(s.len() as u64)?;
                for &e in s {
                    let z = t.mul(e, y);
                    member[z] = true;
                    elems.push(z);
                }
                reps.push(y);
            }
        }
        i += 1;
    }
    elems.sort_unstable();
    Ok(elems)
}

fn conj_perms(gamma: &GammaGroup, budget: &mut Budget) -> Result<Vec<Vec<usize>>> {
    let t = gamma.table();
    let n = t.len();
    budget.spend((2 * gamma.aut().order() * n) as u64)?;
    Ok((0..gamma.aut().order())
        .map(|a| {
            let phi = gamma.from_aut(a);
            (0..n).map(|x| t.conj(phi, x)).collect()
        })
        .collect())
}

/// The (φ,1)-conjugate whose sorted element list is lexicographically
/// smallest, with a conjugator reaching it. Preferring small indices keeps
/// the elements (1, σ) in the representative whenever some conjugate has them.
fn canonical(perms: &[Vec<usize>], elems: &[usize]) -> (Vec<usize>, usize) {
    perms
        .iter()
        .enumerate()
        .map(|(a, p)| {
            let mut v: Vec<usize> = elems.iter().map(|&x| p[x]).collect();
            v.sort_unstable();
            (v, a)
        })
        .min()
        .expect("automorphism group contains the identity")
}

/// All subgroups G ≤ Γ with π₂(G) = Gal, one per (φ,1)-conjugacy class,
/// sorted by |G|, each with H = G ∩ (Aut×1) and its solution count.
pub fn enumerate_pairs(gamma: &GammaGroup, budget: &mut Budget) -> Result<Vec<PairGH>> {
    enumerate_inner(gamma, budget, None)
}

/// As [`enumerate_pairs`], charging the subgroup search and the
/// automorphism counts to separate budgets.
pub fn enumerate_pairs_with(gamma: &GammaGroup, budget: &mut Budget, aut_budget: &mut Budget) -> Result<Vec<PairGH>> {
    enumerate_inner(gamma, budget, Some(aut_budget))
}

fn enumerate_inner(gamma: &GammaGroup, budget: &mut Budget, mut aut_budget: Option<&mut Budget>) -> Result<Vec<PairGH>> {
    let t = gamma.table();
    let n = t.len();
    let perms = conj_perms(gamma, budget)?;

    struct Sub {
        elems: Vec<usize>,
        gens: Vec<usize>,
    }
    let mut reps = vec![Sub { elems: vec![0], gens: vec![] }];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(vec![0]);
    let mut i = 0;
    while i < reps.len() {
        let mut tried = ElemSet::from_elems(n, reps[i].elems.iter().copied());
        let mut local: HashSet<Vec<usize>> = HashSet::new();
        for x in 0..n {
            if tried.contains(x) {
                continue;
            }
            // every element of the coset S·x generates the same extension
            for &e in &reps[i].elems {
                tried.insert(t.mul(e, x));
            }
            let ext = extend(t, &reps[i].elems, &reps[i].gens, x, budget)?;
            if !local.insert(ext.clone()) {
                continue;
            }
            let (key, a) = canonical(&perms, &ext);
            if seen.insert(key.clone()) {
                let gens = reps[i].gens.iter().chain(std::iter::once(&x)).map(|&g| perms[a][g]).collect();
                reps.push(Sub { elems: key, gens });
            }
        }
        i += 1;
    }

    let ng = gamma.gal().order();
    let mut pairs = Vec::new();
    for sub in reps {
        let image: HashSet<usize> = sub.elems.iter().map(|&x| gamma.pi2(x)).collect();
        if image.len() != ng {
            continue;
        }
        let h: Vec<usize> = sub.elems.iter().copied().filter(|&x| gamma.pi2(x) == 0).collect();
        let mut h_generators = Vec::new();
        let mut span = vec![0usize];
        // automorphism indices run in shortest-word order
        for &x in &h {
            if !span.contains(&x) {
                h_generators.push(gamma.pi1(x));
                let gens: Vec<usize> = h_generators.iter().map(|&a| gamma.from_aut(a)).collect();
                span = t.closure(&gens);
            }
        }
        let mut pair = PairGH {
            g_fingerprint: fingerprint(t, &sub.elems),
            h_fingerprint: fingerprint(t, &h),
            g: sub.elems,
            h,
            g_generators: sub.gens,
            h_generators,
            solution_count: 0,
        };
        let b = match aut_budget.as_deref_mut() {
            Some(b) => b,
            None => &mut *budget,
        };
        pair.solution_count = count_solutions(&pair, gamma, b)?;
        pairs.push(pair);
    }
    pairs.sort_by(|a, b| a.g.len().cmp(&b.g.len()).then_with(|| a.g.cmp(&b.g)));
    Ok(pairs)
}

/// Small generating set of G, preferring elements of large order.
pub(crate) fn small_generating_set(t: &CayleyTable, elems: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = elems.to_vec();
    order.sort_by_key(|&x| (std::cmp::Reverse(t.order(x)), x));
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for x in order {
        if span.len() == elems.len() {
            break;
        }
        if !span.contains(&x) {
            gens.push(x);
            span = t.closure(&gens);
        }
    }
    gens
}

/// Extends gens ↦ imgs along the Cayley graph of ⟨gens⟩; `None` if the
/// assignment is not a well-defined homomorphism.
pub(crate) fn extend_hom(
    t: &CayleyTable,
    gens: &[usize],
    imgs: &[usize],
    budget: &mut Budget,
) -> Result<Option<HashMap<usize, usize>>> {
    let mut map = HashMap::new();
    map.insert(0usize, 0usize);
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = map[&x];
        budget.spend(2 * gens.len() as u64)?;
        for (&g, &h) in gens.iter().zip(imgs) {
            let y = t.mul(x, g);
            let fy = t.mul(fx, h);
            match map.get(&y) {
                Some(&v) if v != fy => return Ok(None),
                Some(_) => {}
                None => {
                    map.insert(y, fy);
                    queue.push(y);
                }
            }
        }
        i += 1;
    }
    Ok(Some(map))
}

/// n(G,H) = |Aut₂(G)| / |{conjugation by (φ,1) normalizing G}|, where Aut₂(G)
/// are the automorphisms of G commuting with π₂.
pub fn count_solutions(pair: &PairGH, gamma: &GammaGroup, budget: &mut Budget) -> Result<usize> {
    let t = gamma.table();
    let gens = small_generating_set(t, &pair.g);
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            pair.g.iter().copied().filter(|&y| t.order(y) == t.order(x) && gamma.pi2(y) == gamma.pi2(x)).collect()
        })
        .collect();

    let mut autos: HashSet<Vec<usize>> = HashSet::new();
    let mut stack: Vec<usize> = Vec::new();
    search(t, &gens, &cands, pair.g.len(), &mut stack, &mut autos, budget)?;

    let mut inner: HashSet<Vec<usize>> = HashSet::new();
    for a in 0..gamma.aut().order() {
        let phi = gamma.from_aut(a);
        budget.spend(2 * pair.g.len() as u64)?;
        if pair.g.iter().all(|&x| pair.contains(t.conj(phi, x))) {
            inner.insert(gens.iter().map(|&x| t.conj(phi, x)).collect());
        }
    }
    debug_assert!(inner.iter().all(|i| autos.contains(i)));
    Ok(autos.len() / inner.len())
}

fn search(
    t: &CayleyTable,
    gens: &[usize],
    cands: &[Vec<usize>],
    target: usize,
    stack: &mut Vec<usize>,
    out: &mut HashSet<Vec<usize>>,
    budget: &mut Budget,
) -> Result<()> {
    let k = stack.len();
    if k > 0 {
        let Some(map) = extend_hom(t, &gens[..k], stack, budget)? else { return Ok(()) };
        let image: HashSet<usize> = map.values().copied().collect();
        if image.len() != map.len() {
            return Ok(());
        }
        if k == gens.len() {
            if map.len() == target {
                out.insert(stack.clone());
            }
            return Ok(());
        }
    }
    for &c in &cands[k] {
        stack.push(c);
        search(t, gens, cands, target, stack, out, budget)?;
        stack.pop();
    }
    Ok(())
}
