use std::collections::BTreeMap;
use std::fmt;

use super::CayleyTable;

/// Isomorphism invariants of a finite group; equal for isomorphic groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupFingerprint {
    pub order: usize,
    pub order_histogram: BTreeMap<usize, usize>,
    /// Elementary divisors of G/[G,G], ascending.
    pub abelian_invariants: Vec<usize>,
    pub center_order: usize,
    pub derived_order: usize,
}

impl GroupFingerprint {
    pub fn is_abelian(&self) -> bool {
        self.center_order == self.order
    }
}

impl fmt::Display for GroupFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.order_histogram.iter().map(|(o, c)| format!("{o}^{c}")).collect();
        let ab: Vec<String> = self.abelian_invariants.iter().map(usize::to_string).collect();
        write!(
            f,
            "order={};orders={};ab={};center={};derived={}",
            self.order,
            orders.join(","),
            if ab.is_empty() { "1".to_string() } else { ab.join(",") },
            self.center_order,
            self.derived_order
        )
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Fingerprint of the subgroup with element list `elems` of the group `t`.
pub fn fingerprint(t: &CayleyTable, elems: &[usize]) -> GroupFingerprint {
    let order = elems.len();
    let mut order_histogram = BTreeMap::new();
    for &x in elems {
        *order_histogram.entry(t.order(x)).or_insert(0) += 1;
    }
    let center_order = elems.iter().filter(|&&x| elems.iter().all(|&y| t.mul(x, y) == t.mul(y, x))).count();

    let mut commutators = Vec::new();
    let mut seen = vec![false; t.len()];
    for &x in elems {
        for &y in elems {
            let c = t.mul(t.mul(x, y), t.mul(t.inv(x), t.inv(y)));
            if !seen[c] {
                seen[c] = true;
                commutators.push(c);
            }
        }
    }
    let derived = t.closure(&commutators);
    let mut in_derived = vec![false; t.len()];
    for &d in &derived {
        in_derived[d] = true;
    }

    let quotient = order / derived.len();
    let mut abelian_invariants = Vec::new();
    for p in prime_factors(quotient) {
        let mut pp = 1;
        let mut q = quotient;
        while q % p == 0 {
            q /= p;
            pp *= p;
        }
        // n_k = log_p #{x ∈ G/D : x^{p^k} = 1}
        let mut ranks = vec![0usize];
        let mut pk = 1;
        loop {
            pk *= p;
            let count = elems.iter().filter(|&&x| in_derived[t.pow(x, pk)]).count() / derived.len();
            let mut r = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                r += 1;
            }
            ranks.push(r);
            if count == pp {
                break;
            }
        }
        ranks.push(*ranks.last().unwrap());
        for k in 1..ranks.len() - 1 {
            let exact = (ranks[k] - ranks[k - 1]) - (ranks[k + 1] - ranks[k]);
            for _ in 0..exact {
                abelian_invariants.push(p.pow(k as u32));
            }
        }
    }
    abelian_invariants.sort_unstable();
    GroupFingerprint { order, order_histogram, abelian_invariants, center_order, derived_order: derived.len() }
}
