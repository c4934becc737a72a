use proptest::prelude::*;
use twistforge_cli::curvespec::format_curve_spec;
use twistforge_cli::expr::{parse_poly, ExprContext};
use twistforge_cli::selftest::{GENUS6_FIXTURE, TRIVIAL_FIXTURE};
use twistforge_cli::parse_curve_spec;
use twistforge_core::exactfield::{CycNum, Rational};
use twistforge_core::polyring::HomPoly;

fn replace_line(prefix: &str, with: &str) -> String {
    GENUS6_FIXTURE
        .lines()
        .map(|l| if l.starts_with(prefix) { with.to_string() } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n")
}

fn line_of(prefix: &str) -> usize {
    GENUS6_FIXTURE.lines().position(|l| l.starts_with(prefix)).unwrap() + 1
}

#[test]
fn shipped_fixture_parses() {
    let spec = parse_curve_spec(GENUS6_FIXTURE).unwrap();
    assert_eq!((spec.genus, spec.conductor, spec.galois_index), (6, 21, 12));
    assert_eq!(spec.galois_group().unwrap().order(), 12);
    assert_eq!(spec.aut_generators.len(), 2);
    assert_eq!(spec.ideal_generators.len(), 8);
    assert_eq!(spec.kummer.get(&3).map(String::as_str), Some("m"));
    assert_eq!(spec.labels.len(), 8);
    assert_eq!(spec.ideal().degrees(), vec![2, 2, 2, 2, 2, 2, 3, 3]);

    let trivial = parse_curve_spec(TRIVIAL_FIXTURE).unwrap();
    assert!(trivial.aut_generators.is_empty());
    assert_eq!(trivial.aut_group(1000).unwrap().order(), 1);
}

#[test]
fn singular_matrix_is_rejected() {
    let text = replace_line("r = ", "r = diag(z^7, z^7, z^7, z^14, z^7, 0)");
    let e = parse_curve_spec(&text).unwrap_err();
    assert_eq!(e.message, "generator matrix not invertible");
    assert_eq!(e.line, line_of("r = "));

    let text = replace_line("s = ", "s = [[1,1,0,0,0,0],[1,1,0,0,0,0],[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]]");
    assert_eq!(parse_curve_spec(&text).unwrap_err().message, "generator matrix not invertible");
}

#[test]
fn inhomogeneous_generator_names_the_term() {
    let text = replace_line("f7 = ", "f7 = w1^3 - w3^2*w5 + 2*z*w4^2");
    let e = parse_curve_spec(&text).unwrap_err();
    assert!(e.message.contains("f7"), "{}", e.message);
    assert!(e.message.contains("`2*z*w4^2`"), "{}", e.message);
    assert!(e.message.contains("degree 2, expected 3"), "{}", e.message);
}

#[test]
fn diagnostics_carry_positions() {
    let e = parse_curve_spec(&replace_line("f2 = ", "f2 = w2^2 - w1*w9")).unwrap_err();
    assert_eq!((e.line, e.column), (line_of("f2 = "), 16));
    assert!(e.message.contains("w9"));

    let e = parse_curve_spec(&replace_line("f2 = ", "f2 = w2^2 ? w1")).unwrap_err();
    assert_eq!((e.line, e.column), (line_of("f2 = "), 11));

    let e = parse_curve_spec(&replace_line("r = ", "r = diag(z^7, z^7, z^7, z^14, z^7, q)")).unwrap_err();
    assert_eq!((e.line, e.column), (line_of("r = "), 36));
    assert!(e.message.contains("unknown symbol 'q'"));

    let e = parse_curve_spec(&replace_line("generators = ", "generators = 8, 7")).unwrap_err();
    assert_eq!((e.line, e.column), (line_of("generators = "), 17));

    let e = parse_curve_spec(&replace_line("[IDEAL]", "[IDEALS]")).unwrap_err();
    assert!(e.message.contains("unknown section"));

    let e = parse_curve_spec("genus = 6\n").unwrap_err();
    assert_eq!(e.message, "entry outside of any section");

    let e = parse_curve_spec(&replace_line("conductor", "")).unwrap_err();
    assert!(e.message.contains("missing `conductor`"));
}

#[test]
fn explicit_matrices_match_diagonal_shorthand() {
    let spec = parse_curve_spec(GENUS6_FIXTURE).unwrap();
    let again = parse_curve_spec(&format_curve_spec(&spec)).unwrap();
    assert_eq!(spec.aut_generators, again.aut_generators);
    assert_eq!(spec.ideal_generators, again.ideal_generators);
    assert_eq!(spec.labels, again.labels);
    assert_eq!(spec.kummer, again.kummer);
}

fn ctx() -> ExprContext {
    ExprContext { conductor: 21, num_vars: 4, params: vec![] }
}

fn arb_poly() -> impl Strategy<Value = HomPoly<CycNum>> {
    let coeff = (proptest::collection::vec(-5i64..=5, 12), 1i64..4).prop_map(|(c, d)| {
        CycNum::new(21, c.into_iter().map(|x| Rational::new(x.into(), d.into())).collect()).unwrap()
    });
    let mono = proptest::collection::vec(0u32..=3, 3)
        .prop_filter("degree at most 3", |e| e.iter().sum::<u32>() <= 3)
        .prop_map(|mut e| {
            let s: u32 = e.iter().sum();
            e.push(3 - s);
            e
        });
    proptest::collection::vec((mono, coeff), 1..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(HomPoly::zero(4, 3), |acc, (e, c)| acc.add(&HomPoly::monomial(c, e)).unwrap())
    })
}

proptest! {
    #[test]
    fn printed_polynomials_parse_back(p in arb_poly()) {
        let text = p.to_string();
        let parsed = parse_poly(&text, &ctx()).unwrap();
        let terms = parsed.cyclotomic_terms().unwrap();
        let q = if terms.is_empty() { HomPoly::zero(4, 3) } else { HomPoly::from_terms(4, terms).unwrap() };
        prop_assert_eq!(q, p);
    }
}
