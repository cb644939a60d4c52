use super::*;
use crate::poly::parse_polynomial;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn ideal(names: &[&str], gens: &[&str]) -> IdealPresentation {
    let l = labels(names);
    let g = gens.iter().map(|s| parse_polynomial(s, &l).unwrap()).collect();
    IdealPresentation::new(l, g).unwrap()
}

const Y7: [&str; 7] = ["y1", "y2", "y3", "y4", "y5", "y6", "y7"];

fn i7() -> IdealPresentation {
    ideal(
        &Y7,
        &[
            "y1*y2", "y2*y3", "y3*y4", "y4*y5", "y5*y6", "y6*y7", "y1*y7",
            "y2^2 - y1*y4", "y3^2 - y2*y5", "y4^2 - y3*y6", "y5^2 - y4*y7",
            "y1^2 - y3*y7", "y6^2 - y1*y5", "y7^2 - y2*y6",
        ],
    )
}

#[test]
fn zero_ideal_has_empty_basis() {
    let i = IdealPresentation::zero(labels(&["a", "b"]));
    let gb = reduced_gb(&i, &TermOrder::grevlex(2)).unwrap();
    assert!(gb.is_empty());
    assert!(gb.initial_ideal().is_quadratic());
    let one = Polynomial::one(2);
    assert_eq!(gb.normal_form(&one).unwrap(), one);
}

#[test]
fn initial_ideal_of_i7() {
    let gb = reduced_gb(&i7(), &TermOrder::grevlex(7)).unwrap();
    let got: std::collections::BTreeSet<String> = gb.initial_ideal().to_text(&gb.labels).into_iter().collect();
    let expect: std::collections::BTreeSet<String> = [
        "y1*y2", "y2*y3", "y3*y4", "y4*y5", "y5*y6", "y6*y7", "y1*y7", "y1^3", "y2^2", "y3^2",
        "y4^2", "y5^2", "y6^2", "y7^2", "y3*y7", "y1^2*y4", "y1^2*y6", "y2*y5*y7",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    assert_eq!(got, expect);
    assert!(!gb.initial_ideal().is_quadratic());
    assert!(gb.verify_spairs(None));
    assert!(gb.is_autoreduced());
    let m = parse_polynomial("y1*y3*y5", &gb.labels).unwrap();
    assert_eq!(gb.normal_form(&m).unwrap(), m);
    let counts: Vec<usize> = (0..=5).map(|d| gb.standard_monomials(d).len()).collect();
    assert_eq!(counts, vec![1, 7, 14, 7, 1, 0]);
    for g in &i7().generators {
        assert!(gb.contains(g).unwrap());
    }
}

#[test]
fn hand_reduced_lex_example() {
    let i = ideal(&["y1", "y2", "y3"], &["y1 - y2", "y2 - y3"]);
    let order = TermOrder::lex_ranked(vec![2, 1, 0]).unwrap();
    let gb = reduced_gb(&i, &order).unwrap();
    let text: Vec<String> = gb.elements.iter().map(|e| e.to_text(&gb.labels)).collect();
    let expect = ideal(&["y1", "y2", "y3"], &["y2 - y3", "y1 - y3"]);
    assert_eq!(gb.elements, expect.generators, "{text:?}");
}

#[test]
fn elimination_examples() {
    let i = ideal(&["x", "y"], &["x - y^2"]);
    let e = eliminate(&i, &[0], &TermOrder::grevlex(1), &GbConfig::default()).unwrap();
    assert!(e.generators.is_empty());
    assert_eq!(e.labels, labels(&["y"]));

    let i = ideal(&["y1", "y2", "t"], &["y1 - t", "y2 - t^2"]);
    let e = eliminate(&i, &[2], &TermOrder::grevlex(2), &GbConfig::default()).unwrap();
    assert_eq!(e.generators.len(), 1);
    let expect = parse_polynomial("y1^2 - y2", &e.labels).unwrap();
    assert!(e.generators[0] == expect || e.generators[0] == -&expect);
}

#[test]
fn reduced_basis_is_idempotent() {
    let gb = reduced_gb(&i7(), &TermOrder::grevlex(7)).unwrap();
    let again = reduced_gb(&gb.presentation(), &TermOrder::grevlex(7)).unwrap();
    assert_eq!(gb, again);
}

#[test]
fn hilbert_function_is_order_independent() {
    let a = reduced_gb(&i7(), &TermOrder::grevlex(7)).unwrap();
    let b = reduced_gb(&i7(), &TermOrder::lex(7)).unwrap();
    for d in 0..=4 {
        assert_eq!(a.standard_monomials(d).len(), b.standard_monomials(d).len());
    }
    assert!(b.verify_spairs(None));
}

#[test]
fn normal_form_is_multiplicative_modulo_ideal() {
    use rand::{Rng, SeedableRng};
    let gb = reduced_gb(&i7(), &TermOrder::grevlex(7)).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let random_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut f = Polynomial::zero(7);
        for _ in 0..4 {
            let exps: Vec<u32> = (0..7).map(|_| rng.gen_range(0..2)).collect();
            f.add_term(Monomial::from_exps(exps), crate::poly::rat(rng.gen_range(-3..4)));
        }
        f
    };
    for _ in 0..20 {
        let f = random_poly(&mut rng);
        let g = random_poly(&mut rng);
        let lhs = gb.normal_form(&(&f * &g)).unwrap();
        let nf = gb.normal_form(&f).unwrap();
        let ng = gb.normal_form(&g).unwrap();
        let rhs = gb.normal_form(&(&nf * &ng)).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn spair_cap_is_a_hard_error() {
    let cfg = GbConfig {
        spair_cap: 2,
        truncate: None,
    };
    let err = reduced_gb_with(&i7(), &TermOrder::grevlex(7), &cfg).unwrap_err();
    assert!(err.is_resource_cap());
}

#[test]
fn truncation_stops_at_degree() {
    let cfg = GbConfig {
        spair_cap: DEFAULT_SPAIR_CAP,
        truncate: Some(2),
    };
    let gb = reduced_gb_with(&i7(), &TermOrder::grevlex(7), &cfg).unwrap();
    assert!(gb.max_degree <= 2);
    assert_eq!(gb.truncated_at, Some(2));
    assert!(gb.verify_spairs(None));
}

#[test]
fn minimal_generators_drop_redundant_elements() {
    let i = ideal(&["a", "b", "c"], &["a*b - c^2", "a^2*b - a*c^2", "b*c", "a*b*c"]);
    let m = minimal_generators(i.labels.clone(), &i.generators).unwrap();
    assert_eq!(m.generators.len(), 2);
    assert!(m.is_quadratic());
}

#[test]
fn width_mismatch() {
    let gb = reduced_gb(&i7(), &TermOrder::grevlex(7)).unwrap();
    assert!(gb.normal_form(&Polynomial::one(3)).is_err());
    assert!(reduced_gb(&i7(), &TermOrder::grevlex(6)).is_err());
}
