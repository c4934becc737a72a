//! Elements of Q(ζ_N) in the power basis modulo the N-th cyclotomic
//! polynomial, and the Galois automorphisms ζ ↦ ζ^b.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};
use crate::linalg::Field;

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // both monic integer polynomials, low degree first
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
        }
        q[i] = c;
    }
    q
}

fn compute_cyclotomic(n: u64) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for all proper divisors d
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

/// Coefficients (low degree first) of the N-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(n));
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Reduce a dense polynomial in ζ (any length) modulo Φ_N.
fn reduce(n: u64, mut coeffs: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    for i in (deg..coeffs.len()).rev() {
        let c = std::mem::take(&mut coeffs[i]);
        if Zero::is_zero(&c) {
            continue;
        }
        // ζ^i = ζ^{i-deg} * (ζ^deg) = -ζ^{i-deg} * Σ_{j<deg} φ_j ζ^j
        for (j, pj) in phi[..deg].iter().enumerate() {
            if !pj.is_zero() {
                coeffs[i - deg + j] -= &c * Rational::from_integer(pj.clone());
            }
        }
    }
    coeffs.truncate(deg);
    coeffs.resize(deg, Rational::zero());
    coeffs
}

/// An element of Q(ζ_N).
#[derive(Clone, Debug)]
pub struct CycNum {
    conductor: u64,
    coords: Vec<Rational>,
}

impl CycNum {
    /// Build from a power-basis coefficient list of any length; reduces mod Φ_N.
    pub fn new(conductor: i64, coeffs: Vec<Rational>) -> Result<Self> {
        if conductor < 1 {
            return Err(Error::InvalidConductor(conductor));
        }
        let n = conductor as u64;
        Ok(CycNum { conductor: n, coords: reduce(n, coeffs) })
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNum { conductor: 1, coords: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// ζ_N^k.
    pub fn root_of_unity(conductor: u64, k: i64) -> Self {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u64), CycNum>>> = OnceLock::new();
        let e = k.rem_euclid(conductor as i64) as u64;
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(c) = cache.lock().unwrap().get(&(conductor, e)) {
            return c.clone();
        }
        let mut v = vec![Rational::zero(); e as usize + 1];
        v[e as usize] = Rational::one();
        let c = CycNum { conductor, coords: reduce(conductor, v) };
        cache.lock().unwrap().insert((conductor, e), c.clone());
        c
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coords[0])
    }

    /// Re-express in Q(ζ_M) for a multiple M of the conductor.
    pub fn lift(&self, target: u64) -> Result<Self> {
        if target == 0 || target % self.conductor != 0 {
            return Err(Error::DimensionMismatch(format!(
                "cannot lift conductor {} to {}",
                self.conductor, target
            )));
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let mut v = vec![Rational::zero(); (self.coords.len() - 1) * step + 1];
        for (i, c) in self.coords.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Ok(CycNum { conductor: target, coords: reduce(target, v) })
    }

    /// Smallest conductor dividing ours in which the element already lives.
    pub fn minimal_conductor(&self) -> u64 {
        let mut best = self.conductor;
        for d in 1..self.conductor {
            if self.conductor % d == 0 && d < best {
                if let Ok(p) = self.project(d) {
                    if p.lift(self.conductor).map(|l| l.coords == self.coords).unwrap_or(false) {
                        best = d;
                    }
                }
            }
        }
        best
    }

    /// Inverse of `lift`: recover the coordinates in Q(ζ_d) if the element lies there.
    pub fn project(&self, d: u64) -> Result<Self> {
        if d == 0 || self.conductor % d != 0 {
            return Err(Error::DimensionMismatch(format!("{} does not divide {}", d, self.conductor)));
        }
        // Solve in the subfield basis by linear algebra over Q.
        let sub_dim = euler_phi(d) as usize;
        let basis: Vec<CycNum> = (0..sub_dim)
            .map(|i| CycNum::root_of_unity(d, i as i64).lift(self.conductor))
            .collect::<Result<_>>()?;
        let dim = self.coords.len();
        let mut aug: Vec<Vec<Rational>> = (0..dim)
            .map(|r| {
                let mut row: Vec<Rational> = basis.iter().map(|b| b.coords[r].clone()).collect();
                row.push(self.coords[r].clone());
                row
            })
            .collect();
        let piv = crate::linalg::rref(&mut aug);
        if piv.contains(&sub_dim) {
            return Err(Error::DimensionMismatch(format!("element does not lie in Q(ζ_{d})")));
        }
        let mut coords = vec![Rational::zero(); sub_dim];
        for (row, &p) in piv.iter().enumerate() {
            coords[p] = aug[row][sub_dim].clone();
        }
        Ok(CycNum { conductor: d, coords })
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (self.lift(l).unwrap(), other.lift(l).unwrap())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNum { conductor: self.conductor, coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// Apply σ_b : ζ_N ↦ ζ_N^b.
    pub fn galois(&self, unit: &GaloisUnit) -> Result<Self> {
        let n = unit.conductor;
        let x = if self.conductor == n { self.clone() } else { self.lift(n)? };
        let mut v = vec![Rational::zero(); n as usize];
        for (i, c) in x.coords.iter().enumerate() {
            if !Zero::is_zero(c) {
                v[(i as u64 * unit.exponent % n) as usize] += c;
            }
        }
        Ok(CycNum { conductor: n, coords: reduce(n, v) })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycNum::one();
        for _ in 0..e {
            acc = Field::mul(&acc, self);
        }
        acc
    }

    fn mul_matrix(&self) -> Vec<Vec<Rational>> {
        // column j = coords of self * ζ^j
        let d = self.coords.len();
        let cols: Vec<CycNum> = (0..d)
            .map(|j| Field::mul(self, &CycNum::root_of_unity(self.conductor, j as i64)))
            .collect();
        (0..d).map(|i| cols.iter().map(|c| c.coords[i].clone()).collect()).collect()
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coords == other.coords;
        }
        let (a, b) = self.aligned(other);
        a.coords == b.coords
    }
}

impl Field for CycNum {
    fn zero_like(&self) -> Self {
        CycNum::zero()
    }
    fn one_like(&self) -> Self {
        CycNum::one()
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
    fn add(&self, o: &Self) -> Self {
        let (mut a, b) = self.aligned(o);
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            *x += y;
        }
        a
    }
    fn sub(&self, o: &Self) -> Self {
        let (mut a, b) = self.aligned(o);
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            *x -= y;
        }
        a
    }
    fn mul(&self, o: &Self) -> Self {
        if self.conductor == 1 {
            return o.scale(&self.coords[0]);
        }
        if o.conductor == 1 {
            return self.scale(&o.coords[0]);
        }
        let (a, b) = self.aligned(o);
        let mut prod = vec![Rational::zero(); a.coords.len() * 2 - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !Zero::is_zero(y) {
                    prod[i + j] += x * y;
                }
            }
        }
        CycNum { conductor: a.conductor, coords: reduce(a.conductor, prod) }
    }
    fn neg(&self) -> Self {
        CycNum { conductor: self.conductor, coords: self.coords.iter().map(|c| -c).collect() }
    }
    fn inv(&self) -> Result<Self> {
        if Field::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(CycNum::from_rational(self.coords[0].recip()));
        }
        let m = self.mul_matrix();
        let mut e = vec![Rational::zero(); self.coords.len()];
        e[0] = Rational::one();
        let coords = crate::linalg::solve(&m, &e)?;
        Ok(CycNum { conductor: self.conductor, coords })
    }
}

impl fmt::Display for CycNum {
    /// Polynomial in `z` (= ζ_N), highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coords.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if One::is_one(&a) {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&a), mono));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// σ_b ∈ Gal(Q(ζ_N)/Q), ζ ↦ ζ^b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisUnit {
    conductor: u64,
    exponent: u64,
}

impl GaloisUnit {
    pub fn new(conductor: u64, exponent: i64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidConductor(0));
        }
        if conductor <= 2 {
            return Ok(GaloisUnit { conductor, exponent: 1 });
        }
        let b = exponent.rem_euclid(conductor as i64) as u64;
        if b.gcd(&conductor) != 1 {
            return Err(Error::NotAUnit { exponent: b, conductor });
        }
        Ok(GaloisUnit { conductor, exponent: b })
    }

    pub fn identity(conductor: u64) -> Self {
        GaloisUnit { conductor, exponent: 1 }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// (b₁∘b₂)(x) = b₁(b₂(x)).
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        if self.conductor <= 2 {
            return *self;
        }
        GaloisUnit { conductor: self.conductor, exponent: self.exponent * other.exponent % self.conductor }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(GaloisUnit::identity(self.conductor), |acc, _| acc.compose(self))
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = *self;
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    pub fn inverse(&self) -> Self {
        self.pow(self.order() - 1)
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 1
    }

    /// Exponent by which this automorphism acts on ζ_q for q | N.
    pub fn exponent_mod(&self, q: u64) -> u64 {
        self.exponent % q
    }
}

impl fmt::Display for GaloisUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.exponent, self.conductor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rational::{int, rat};

    fn z(n: i64, k: i64) -> CycNum {
        CycNum::root_of_unity(n as u64, k)
    }

    #[test]
    fn cyclotomic_polys() {
        let p21: Vec<i64> = cyclotomic_poly(21).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(p21, vec![1, -1, 0, 1, -1, 0, 1, 0, -1, 1, 0, -1, 1]);
        assert_eq!(cyclotomic_poly(3).len(), 3);
        assert_eq!(euler_phi(21), 12);
    }

    #[test]
    fn zeta3_relation() {
        let zeta = CycNum::new(3, vec![int(0), int(1)]).unwrap();
        let s = zeta.mul(&zeta).add(&zeta).add(&CycNum::one());
        assert!(s.is_zero());
    }

    #[test]
    fn exponent_arithmetic_and_lift() {
        assert_eq!(z(7, 3).mul(&z(7, 5)), z(7, 1));
        // ζ21^7 is the primitive cube root ζ3
        let c = z(21, 7);
        assert_eq!(c, z(3, 1));
        assert_eq!(c.minimal_conductor(), 3);
        // evaluate minimal polynomial x^2 + x + 1
        assert!(c.mul(&c).add(&c).add(&CycNum::one()).is_zero());
    }

    #[test]
    fn inverses_and_norms() {
        assert_eq!(z(7, 1).inv().unwrap(), z(7, 6));
        let a = CycNum::one().add(&z(3, 1));
        let b = CycNum::one().add(&z(3, 2));
        assert_eq!(a.mul(&b), CycNum::one());
        let mut s = CycNum::one();
        for k in 1..7 {
            s = s.add(&z(7, k));
        }
        assert!(s.is_zero());
        assert_eq!(CycNum::zero().inv(), Err(Error::DivisionByZero));
        let x = CycNum::new(21, vec![rat(3, 2), int(-1), int(0), int(4)]).unwrap();
        assert_eq!(x.mul(&x.inv().unwrap()), CycNum::one());
    }

    #[test]
    fn galois_action() {
        let t1 = GaloisUnit::new(3, 2).unwrap();
        assert_eq!(z(3, 1).galois(&t1).unwrap(), CycNum::from_int(-1).sub(&z(3, 1)));
        let t2 = GaloisUnit::new(7, 3).unwrap();
        assert_eq!(z(7, 1).galois(&t2).unwrap(), z(7, 3));
        let id = GaloisUnit::identity(21);
        let x = CycNum::new(21, vec![int(1), int(2), int(3)]).unwrap();
        assert_eq!(x.galois(&id).unwrap(), x);
        assert!(GaloisUnit::new(21, 7).is_err());
        let u = GaloisUnit::new(21, 10).unwrap();
        assert_eq!(u.order(), 6);
        assert_eq!(u.compose(&u.inverse()), GaloisUnit::identity(21));
    }

    #[test]
    fn invalid_conductor() {
        assert_eq!(CycNum::new(0, vec![]).unwrap_err(), Error::InvalidConductor(0));
    }

    #[test]
    fn display() {
        let x = CycNum::new(21, vec![int(1), int(0), rat(-3, 2)]).unwrap();
        assert_eq!(x.to_string(), "-3/2*z^2 + 1");
    }
}
