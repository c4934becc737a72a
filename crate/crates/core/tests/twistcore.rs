mod common;

use std::sync::Arc;

use proptest::prelude::*;
use twistforge_core::embedkit::{pose_problem, solution_to_cocycle, solve_kummer, Cocycle};
use twistforge_core::exactfield::{CycNum, RadFieldSpec, RadNum, RatFunc};
use twistforge_core::grouplab::{enumerate_pairs, Budget, GammaGroup};
use twistforge_core::linalg::Field;
use twistforge_core::polyring::{embed, HomPoly};
use twistforge_core::twistcore::{
    build_twisted_action, compute_twist, derive_eta, evaluate_generators, fixed_subspace_kernel,
    fixed_subspace_reynolds, twist_equations, verify_twist, DifferentialRep,
};

use common::*;

fn cocycles(g: &GammaGroup) -> Vec<Vec<Cocycle>> {
    enumerate_pairs(g, &mut Budget::default())
        .unwrap()
        .iter()
        .map(|p| {
            let fam = solve_kummer(&pose_problem(p, g).unwrap().with_radical_names(kummer_names())).unwrap();
            fam.solutions.iter().map(|s| solution_to_cocycle(s, g)).collect()
        })
        .collect()
}

fn rad(spec: &Arc<RadFieldSpec>, exps: &[u32]) -> RadNum {
    RadNum::term(spec.clone(), exps.to_vec(), RatFunc::constant(CycNum::one()))
}

/// Expected diagonal of μ for the base solutions.
fn expected_mu(case: usize) -> Vec<Vec<u32>> {
    let m = [2, 2, 2, 1, 2, 1];
    let n = [6, 5, 4, 6, 3, 5];
    match case {
        1 => m.iter().map(|&a| vec![a]).collect(),
        2 => n.iter().map(|&a| vec![a]).collect(),
        3 => m.iter().zip(&n).map(|(&a, &b)| vec![a, b]).collect(),
        _ => vec![vec![]; 6],
    }
}

#[test]
fn base_fixed_bases_and_equations() {
    let g = gamma();
    let rep = DifferentialRep::from_aut(g.aut()).unwrap();
    let ideal = ideal();
    let all = cocycles(&g);
    for case in 0..4 {
        let c = &all[case][0];
        let out = compute_twist(c, &rep, &ideal, true).unwrap();
        let spec = out.basis.spec.clone();
        for (j, row) in out.basis.mu.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(*x, rad(&spec, &expected_mu(case)[j]), "case {} slot {}", case + 1, j + 1);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
        let report = verify_twist(&out, &ideal);
        assert!(report.all_passed(), "case {}:\n{report}", case + 1);
        let text: Vec<String> = out.generators.iter().map(|p| p.to_string()).collect();
        let quadrics: Vec<String> = ideal.generators()[..6].iter().map(|p| p.to_string()).collect();
        assert_eq!(&text[..6], &quadrics[..]);
        let cubics = match case {
            0 => ["w1^3 - w3^2*w5 + w4^3", "-w1*w2^2 - w4*w6^2 + w5^3"],
            1 => ["w1^3 - w3^2*w5 + m*w4^3", "-w1*w2^2 - m*w4*w6^2 + w5^3"],
            2 => ["w1^3 - n*w3^2*w5 + w4^3", "-w1*w2^2 - w4*w6^2 + n*w5^3"],
            _ => ["w1^3 - n*w3^2*w5 + m*w4^3", "-w1*w2^2 - m*w4*w6^2 + n*w5^3"],
        };
        assert_eq!(&text[6..], &cubics[..], "case {}", case + 1);
    }
}

#[test]
fn all_records_satisfy_properties() {
    let g = gamma();
    let rep = DifferentialRep::from_aut(g.aut()).unwrap();
    let ideal = ideal();
    let mut count = 0;
    for family in cocycles(&g) {
        for c in family {
            let out = compute_twist(&c, &rep, &ideal, true).unwrap();
            assert_eq!(out.fixed_dimension, 6);
            assert!(verify_twist(&out, &ideal).all_passed());
            let slots = out.basis.spec.slots().len();
            let ones = vec![1; slots];
            let collapsed = evaluate_generators(&out.generators, &ones).unwrap();
            assert_eq!(collapsed, ideal.generators().to_vec());
            count += 1;
        }
    }
    assert_eq!(count, 21);
}

#[test]
fn twisted_action_examples() {
    let g = gamma();
    let rep = DifferentialRep::from_aut(g.aut()).unwrap();
    let all = cocycles(&g);
    // case 2, (r,1) on x^a·ζ₃^b·ω₄ ↦ x^a·ζ₃^{a+b+2}·ω₄
    let m = build_twisted_action(&all[1][0], &rep).unwrap();
    let kummer = *m.ext().generators().last().unwrap();
    let phi = 12;
    for block in 0..3 {
        let a = m.block_exponents(block)[0] as i64;
        let act = m.action(block, kummer);
        for b in 0..3i64 {
            // ζ₃^b = ζ₂₁^{7b}
            let v: Vec<RadNum> = {
                let mut col = vec![twistforge_core::Rational::from_integer(0.into()); 72];
                let z7b = z(7 * b);
                for (k, c) in z7b.coords().iter().enumerate() {
                    col[3 * phi + k] = c.clone();
                }
                let image: Vec<_> = act.iter().map(|row| row.iter().zip(&col).map(|(x, y)| x * y).sum()).collect();
                m.to_radical(block, &image)
            };
            let expected = CycNum::root_of_unity(21, 7 * (a + b + 2));
            assert_eq!(v[3], RadNum::term(v[3].spec().clone(), vec![a as u32], RatFunc::constant(expected)));
        }
    }
    // trivial cocycle: identity acts as the identity matrix
    let triv = build_twisted_action(&all[0][0], &rep).unwrap();
    let id = triv.action(0, 0);
    assert!(id.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| (i == j) == !x.is_zero())));
    let p = triv.projector(0);
    let p2: Vec<Vec<twistforge_core::Rational>> =
        p.iter().map(|r| (0..p.len()).map(|j| r.iter().zip(&p).map(|(x, row)| x * &row[j]).sum()).collect()).collect();
    assert_eq!(p, p2);
}

#[test]
fn corrupted_eta_fails_identity() {
    let g = gamma();
    let rep = DifferentialRep::from_aut(g.aut()).unwrap();
    let ideal = ideal();
    let c = &cocycles(&g)[3][0];
    let mut out = compute_twist(c, &rep, &ideal, false).unwrap();
    let spec = out.basis.spec.clone();
    out.basis.eta[0][0] = out.basis.eta[0][0].mul(&RadNum::from_cyc(spec, CycNum::from_int(2)));
    let report = verify_twist(&out, &ideal);
    assert!(!report.check("cocycle-identity").unwrap().passed);
}

#[test]
fn trivial_twist_is_identity() {
    let g = trivial_gamma();
    let rep = DifferentialRep::from_aut(g.aut()).unwrap();
    let ideal = ideal();
    let c = &cocycles(&g)[0][0];
    let m = build_twisted_action(c, &rep).unwrap();
    let fixed = fixed_subspace_kernel(&m).unwrap();
    assert_eq!(fixed, fixed_subspace_reynolds(&m));
    let tb = derive_eta(&fixed, &m).unwrap();
    let one = RadNum::from_cyc(tb.spec.clone(), CycNum::one());
    for (i, row) in tb.eta.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert_eq!(*x == one, i == j);
        }
    }
    let gens = twist_equations(&ideal, &tb).unwrap();
    let expected: Vec<HomPoly<RadNum>> = ideal.generators().iter().map(|f| embed(f, &tb.spec)).collect();
    assert_eq!(gens, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn rho_is_a_homomorphism_on_words(
        words in proptest::collection::vec(
            (proptest::collection::vec(0usize..4, 0..5), proptest::collection::vec(0usize..4, 0..5)), 12)
    ) {
        let g = gamma();
        let rep = DifferentialRep::from_aut(g.aut()).unwrap();
        let c = &cocycles(&g)[3][3];
        let m = build_twisted_action(c, &rep).unwrap();
        prop_assert!(m.check_words(&words).is_ok());
    }
}

#[test]
fn finite_field_descent_when_splitting_field_is_k() {
    use twistforge_core::embedkit::solve_finite_field;
    let g = gamma();
    let rep = DifferentialRep::from_aut(g.aut()).unwrap();
    let ideal = ideal();
    for b in [2i64, 8, 13] {
        let unit = twistforge_core::GaloisUnit::new(N, b).unwrap();
        let twists = solve_finite_field(&g, unit).unwrap();
        let mut computed = 0;
        for t in twists.iter().filter(|t| t.cocycle.ext().is_some()) {
            let out = compute_twist(&t.cocycle, &rep, &ideal, true).unwrap();
            assert!(verify_twist(&out, &ideal).all_passed(), "b = {b}");
            if t.cocycle.is_trivial() {
                let expected: Vec<HomPoly<RadNum>> =
                    ideal.generators().iter().map(|f| embed(f, &out.basis.spec)).collect();
                assert_eq!(out.generators, expected);
            }
            computed += 1;
        }
        assert!(computed >= 1);
    }
}
