use super::*;
use crate::groebner::{GbConfig, IdealPresentation};
use crate::linalg::{PrimeField, Rationals};
use crate::poly::{parse_polynomial, TermOrder};

fn ideal(names: &[&str], gens: &[&str]) -> IdealPresentation {
    let l: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let g = gens.iter().map(|s| parse_polynomial(s, &l).unwrap()).collect();
    IdealPresentation::new(l, g).unwrap()
}

fn i7() -> IdealPresentation {
    ideal(
        &["y1", "y2", "y3", "y4", "y5", "y6", "y7"],
        &[
            "y1*y2", "y2*y3", "y3*y4", "y4*y5", "y5*y6", "y6*y7", "y1*y7",
            "y2^2 - y1*y4", "y3^2 - y2*y5", "y4^2 - y3*y6", "y5^2 - y4*y7",
            "y1^2 - y3*y7", "y6^2 - y1*y5", "y7^2 - y2*y6",
        ],
    )
}

fn table(i: &IdealPresentation, i_max: usize, j_max: usize) -> BettiTable {
    let alg = graded_basis(Rationals, i, &TermOrder::grevlex(i.width()), j_max as u32, &GbConfig::default()).unwrap();
    betti_table(&alg, i_max, j_max).unwrap()
}

#[test]
fn graded_basis_dims() {
    let z = IdealPresentation::zero(vec!["a".into(), "b".into()]);
    let alg = graded_basis(Rationals, &z, &TermOrder::grevlex(2), 2, &GbConfig::default()).unwrap();
    assert_eq!(alg.dims(), vec![1, 2, 3]);
    let alg = graded_basis(Rationals, &i7(), &TermOrder::grevlex(7), 5, &GbConfig::default()).unwrap();
    assert_eq!(alg.dims(), vec![1, 7, 14, 7, 1, 0]);
}

#[test]
fn polynomial_ring_gives_koszul_complex() {
    let z = IdealPresentation::zero(vec!["a".into(), "b".into(), "c".into()]);
    let t = table(&z, 4, 4);
    for i in 0..=4 {
        for j in i..=4 {
            let expect = if i == j { [1, 3, 3, 1, 0][i] } else { 0 };
            assert_eq!(t.get(i, j), Some(expect), "({i},{j})");
        }
    }
    assert_eq!(t.first_off_diagonal(), None);
    assert_eq!(t.get(3, 2), None);
}

#[test]
fn dual_numbers_have_linear_resolution() {
    let t = table(&ideal(&["y"], &["y^2"]), 5, 5);
    for i in 0..=5 {
        assert_eq!(t.get(i, i), Some(1));
    }
    assert_eq!(t.first_off_diagonal(), None);
}

#[test]
fn cubic_relation_is_off_diagonal() {
    let t = table(&ideal(&["y"], &["y^3"]), 3, 4);
    assert_eq!(t.get(2, 3), Some(1));
    assert_eq!(t.first_off_diagonal(), Some((2, 3, 1)));
}

#[test]
fn cycle_ideal_beta_34() {
    let t = table(&i7(), 3, 4);
    assert_eq!(t.get(1, 1), Some(7));
    // Koszul syzygies plus one per quadric
    assert_eq!(t.get(2, 2), Some(21 + 14));
    assert_eq!(t.get(3, 4), Some(1));
    for (&(i, j), &v) in &t.entries {
        if i <= 2 && i != j {
            assert_eq!(v, 0, "({i},{j})");
        }
    }
    assert_eq!(t.first_off_diagonal(), Some((3, 4, 1)));
}

#[test]
fn characteristic_and_order_independence() {
    let i = i7();
    let rat = table(&i, 3, 4);
    let fp = PrimeField::new(32003).unwrap();
    let alg = graded_basis(fp, &i, &TermOrder::grevlex(7), 4, &GbConfig::default()).unwrap();
    let modp = betti_table(&alg, 3, 4).unwrap();
    assert_eq!(modp.entries, rat.entries);
    assert_eq!(modp.characteristic, 32003);
    let alg = graded_basis(Rationals, &i, &TermOrder::lex(7), 4, &GbConfig::default()).unwrap();
    assert_eq!(betti_table(&alg, 3, 4).unwrap(), rat);
}

#[test]
fn transfer_identities() {
    let poly1 = table(&IdealPresentation::zero(vec!["x".into()]), 3, 3);
    let field = table(&IdealPresentation::zero(vec![]), 3, 3);
    assert!(transfer_check(&poly1, &field, 1).unwrap());
    assert!(!transfer_check(&poly1, &field, 0).unwrap());
    let ci = table(&ideal(&["x", "y"], &["x^2", "y^2"]), 3, 3);
    assert!(transfer_check(&ci, &ci, 0).unwrap());
    assert_eq!(lift_table(&field, 1), poly1);
}

#[test]
fn bounds_are_checked() {
    let alg = graded_basis(Rationals, &i7(), &TermOrder::grevlex(7), 3, &GbConfig::default()).unwrap();
    assert!(betti_table(&alg, 3, 4).is_err());
}


mod verdicts {
    use super::super::*;
    use crate::graph::Graph;
    use crate::poly::TermOrder;
    use crate::toric::{monomial_map, toric_ideal};

    fn ring(g: Graph) -> crate::toric::ToricIdeal {
        toric_ideal(&monomial_map(&g)).unwrap()
    }

    #[test]
    fn cbar7_is_not_koszul() {
        let v = koszul_verdict(&ring(Graph::cbar(3).unwrap()), &KoszulConfig::default()).unwrap();
        assert_eq!(v.status, KoszulStatus::NonKoszul { i: 3, j: 4, value: 1 });
        assert_eq!(v.mode, Some(BettiMode::Reduced));
        assert_eq!(v.linear_system.len(), 8);
        let t = v.table.unwrap();
        assert_eq!(t.get(1, 1), Some(15));
        for i in 0..=2 {
            for j in i + 1..=5 {
                assert_eq!(t.get(i, j), Some(0), "({i},{j})");
            }
        }
    }

    #[test]
    fn shortcut_decides_five_cycle_and_complete_graph() {
        for g in [Graph::cycle(5).unwrap(), Graph::complete(4).unwrap()] {
            let v = koszul_verdict(&ring(g), &KoszulConfig::default()).unwrap();
            assert_eq!(v.status, KoszulStatus::KoszulViaQuadraticGb);
            assert!(v.quadratic_gb.is_some() && v.table.is_none());
        }
    }

    #[test]
    fn direct_and_reduced_modes_are_consistent() {
        for g in [Graph::cycle(5).unwrap(), Graph::path(4).unwrap()] {
            let t = ring(g);
            let base = KoszulConfig {
                i_max: 3,
                j_max: 3,
                shortcut: false,
                ..KoszulConfig::default()
            };
            let red = koszul_verdict(&t, &base).unwrap();
            let dir = koszul_verdict(
                &t,
                &KoszulConfig {
                    mode: BettiMode::Direct,
                    ..base.clone()
                },
            )
            .unwrap();
            let a = red.reduced_table.unwrap();
            let r = dir.table.unwrap();
            assert!(transfer_check(&r, &a, red.linear_system.len()).unwrap());
            assert_eq!(red.table.unwrap(), r);
            assert_eq!(red.status, dir.status);
            assert!(matches!(dir.status, KoszulStatus::KoszulUpToBound { .. }));
        }
    }

    #[test]
    fn width_of_custom_order_is_checked() {
        let cfg = KoszulConfig {
            order: Some(TermOrder::grevlex(3)),
            shortcut: false,
            ..KoszulConfig::default()
        };
        assert!(koszul_verdict(&ring(Graph::cycle(5).unwrap()), &cfg).is_err());
    }
}
