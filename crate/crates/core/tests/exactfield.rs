use std::sync::Arc;

use proptest::prelude::*;
use twistforge_core::exactfield::{
    CycNum, ExtGaloisElement, GaloisUnit, RadFieldSpec, RadNum, RadicalSlot, RatFunc, Rational, SymPoly,
};
use twistforge_core::linalg::Field;

const N: u64 = 21;
const UNITS: [i64; 12] = [1, 2, 4, 5, 8, 10, 11, 13, 16, 17, 19, 20];

fn cyc() -> impl Strategy<Value = CycNum> {
    (proptest::collection::vec(-4i64..=4, 12), 1i64..=3).prop_map(|(c, d)| {
        CycNum::new(N as i64, c.into_iter().map(|x| Rational::new(x.into(), d.into())).collect()).unwrap()
    })
}

fn unit() -> impl Strategy<Value = GaloisUnit> {
    proptest::sample::select(UNITS.to_vec()).prop_map(|b| GaloisUnit::new(N, b).unwrap())
}

fn spec() -> Arc<RadFieldSpec> {
    Arc::new(
        RadFieldSpec::new(N, vec![RadicalSlot { name: "m".into(), q: 3 }, RadicalSlot { name: "n".into(), q: 7 }])
            .unwrap(),
    )
}

fn rad() -> impl Strategy<Value = RadNum> {
    proptest::collection::vec(((0u32..3, 0u32..7), cyc(), 0u32..2), 1..3).prop_map(|terms| {
        let s = spec();
        terms.into_iter().fold(RadNum::zero(s.clone()), |acc, ((a, b), c, k)| {
            let coeff = RatFunc::from_poly(SymPoly::monomial(c, vec![k, 0]));
            acc.add(&RadNum::term(s.clone(), vec![a, b], coeff))
        })
    })
}

/// Radical-free elements: polynomials in the parameters over Q(ζ).
fn param_poly() -> impl Strategy<Value = RadNum> {
    proptest::collection::vec((cyc(), 0u32..3, 0u32..3), 1..3).prop_map(|terms| {
        let s = spec();
        terms.into_iter().fold(RadNum::zero(s.clone()), |acc, (c, i, j)| {
            let coeff = RatFunc::from_poly(SymPoly::monomial(c, vec![i, j]));
            acc.add(&RadNum::term(s.clone(), vec![0, 0], coeff))
        })
    })
}

fn ext_element() -> impl Strategy<Value = ExtGaloisElement> {
    (unit(), 0u32..3, 0u32..7).prop_map(|(u, a, b)| ExtGaloisElement::new(&spec(), u, vec![a, b]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cyclotomic_field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_is_a_field_automorphism(a in cyc(), b in cyc(), u in unit(), v in unit()) {
        let s = |x: &CycNum, g: &GaloisUnit| x.galois(g).unwrap();
        prop_assert_eq!(s(&a.mul(&b), &u), s(&a, &u).mul(&s(&b, &u)));
        prop_assert_eq!(s(&a.add(&b), &u), s(&a, &u).add(&s(&b, &u)));
        prop_assert_eq!(s(&s(&a, &v), &u), s(&a, &u.compose(&v)));
    }

    #[test]
    fn lifting_preserves_arithmetic(a in cyc(), b in cyc()) {
        let l = |x: &CycNum| x.lift(42).unwrap();
        prop_assert_eq!(l(&a.mul(&b)), l(&a).mul(&l(&b)));
        prop_assert_eq!(l(&a).project(21).unwrap(), a);
    }

    #[test]
    fn radical_arithmetic_and_action(x in rad(), y in rad(), g in ext_element(), h in ext_element()) {
        let s = spec();
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        let act = |z: &RadNum, e: &ExtGaloisElement| z.galois(e).unwrap();
        prop_assert_eq!(act(&x.mul(&y), &g), act(&x, &g).mul(&act(&y, &g)));
        prop_assert_eq!(act(&x.add(&y), &g), act(&x, &g).add(&act(&y, &g)));
        // compose applies its argument first
        prop_assert_eq!(act(&act(&x, &h), &g), act(&x, &g.compose(&h, &s)));
    }

    #[test]
    fn radical_monomials_invert(a in 0u32..3, b in 0u32..7, c in cyc()) {
        prop_assume!(!c.is_zero());
        let s = spec();
        let x = RadNum::term(s.clone(), vec![a, b], RatFunc::from_poly(SymPoly::monomial(c, vec![0, 0])));
        prop_assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in param_poly(), y in param_poly(), m in 1i64..5, n in 1i64..5) {
        let v = [m, n];
        prop_assert_eq!(x.mul(&y).eval(&v).unwrap(), x.eval(&v).unwrap().mul(&y.eval(&v).unwrap()));
    }
}

#[test]
fn radical_powers_reduce_to_parameters() {
    let s = spec();
    let cube = RadNum::radical(s.clone(), 0);
    let m = cube.mul(&cube).mul(&cube);
    assert_eq!(m, RadNum::parameter(s.clone(), 0));
    let seventh = RadNum::radical(s.clone(), 1);
    let n = (0..7).fold(RadNum::from_cyc(s.clone(), CycNum::one()), |acc, _| acc.mul(&seventh));
    assert_eq!(n, RadNum::parameter(s, 1));
}
