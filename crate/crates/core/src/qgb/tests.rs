use super::*;
use crate::graph::Graph;
use crate::groebner::reduced_gb;
use crate::toric::{monomial_map, toric_ideal};

fn toric(g: &Graph) -> ToricIdeal {
    toric_ideal(&monomial_map(g)).unwrap()
}

fn var(labels: &[String], set: &str) -> usize {
    let l = format!("y_{{{set}}}");
    labels.iter().position(|x| *x == l).unwrap()
}

/// `a + b - c - d` over the given labels.
fn diff(labels: &[String], [a, b, c, d]: [&str; 4]) -> Vec<i64> {
    let mut v = vec![0; labels.len()];
    v[var(labels, a)] += 1;
    v[var(labels, b)] += 1;
    v[var(labels, c)] -= 1;
    v[var(labels, d)] -= 1;
    v
}

#[test]
fn forced_cbar7_marking_is_contradictory() {
    let t = toric(&Graph::cbar(3).unwrap());
    let l = t.labels();
    let chain = [
        ["3", "1,2", "1", "2,3"],
        ["5", "3,4", "3", "4,5"],
        ["7", "5,6", "5", "6,7"],
        ["2", "1,7", "7", "1,2"],
        ["4", "2,3", "2", "3,4"],
        ["6", "4,5", "4", "5,6"],
        ["1", "6,7", "6", "1,7"],
    ];
    let diffs: Vec<Vec<i64>> = chain.iter().map(|c| diff(l, *c)).collect();
    // each difference lies in the toric ideal's kernel lattice
    for d in &diffs {
        let (p, n): (Vec<u32>, Vec<u32>) = (
            d.iter().map(|&x| x.max(0) as u32).collect(),
            d.iter().map(|&x| (-x).max(0) as u32).collect(),
        );
        assert_eq!(
            t.map.image(&crate::poly::Monomial::from_exps(p)),
            t.map.image(&crate::poly::Monomial::from_exps(n))
        );
    }
    let r = weight_feasible(&diffs).unwrap();
    assert!(!r.feasible);
    assert_eq!(r.infeasible_subset, (0..7).collect::<Vec<_>>());
    // any six of them are realizable
    assert!(weight_feasible(&diffs[1..]).unwrap().feasible);
}

#[test]
fn cbar7_has_no_quadratic_gb() {
    let t = toric(&Graph::cbar(3).unwrap());
    let d = decide_quadratic_gb(&t, &QgbConfig::default()).unwrap();
    assert!(!d.exists);
    assert!(d.exhaustive);
    assert_eq!(d.classes, 14);
    assert_eq!(d.total_markings, 16384);
    assert_eq!(d.feasible_markings + d.infeasible_markings, 16384);
    assert_eq!(d.hilbert_tests, d.feasible_markings);
    assert!(d.feasible_markings > 0);
    assert!(d.witness.is_none());
}

#[test]
fn five_cycle_has_quadratic_gb() {
    let t = toric(&Graph::cycle(5).unwrap());
    let d = decide_quadratic_gb(&t, &QgbConfig::default()).unwrap();
    assert!(d.exists);
    let w = d.witness.unwrap();
    assert!(w.gb.is_quadratic());
    assert!(w.gb.verify_spairs(None));
    assert_eq!(w.gb, reduced_gb(&t.presentation, &w.order).unwrap());
    // the reported witness is the first success: it agrees with the cross check
    let classes = fiber_classes(&t.map, 2);
    let idx = w.marking_index as u128;
    let marking = feasible_markings(&classes, usize::MAX, 1)
        .unwrap()
        .into_iter()
        .find(|m| m.index(&classes) == idx)
        .unwrap();
    let c = cross_check_marking(&t.presentation, &classes, &marking, &w.weights, None).unwrap();
    assert!(c.quadratic && c.series_match);
}

#[test]
fn fixture_two_has_quadratic_gb() {
    let t = toric(&Graph::fixture(2).unwrap());
    let d = decide_quadratic_gb(&t, &QgbConfig::default()).unwrap();
    assert!(d.exists);
    assert!(d.witness.unwrap().gb.is_quadratic());
}

#[test]
fn zero_ideal_is_trivially_quadratic() {
    let t = toric(&Graph::complete(3).unwrap());
    assert!(t.presentation.generators.is_empty());
    let d = decide_quadratic_gb(&t, &QgbConfig::default()).unwrap();
    assert!(d.exists);
    assert_eq!((d.total_markings, d.feasible_markings), (1, 1));
    let classes = fiber_classes(&t.map, 2);
    let m = Marking { choices: Vec::new() };
    let c = cross_check_marking(&t.presentation, &classes, &m, &vec![1; t.width()], None).unwrap();
    assert!(c.quadratic && c.agrees());
}

#[test]
fn marking_cap_is_an_explicit_failure() {
    let t = toric(&Graph::cbar(3).unwrap());
    let cfg = QgbConfig {
        marking_cap: 1000,
        ..QgbConfig::default()
    };
    assert!(matches!(
        decide_quadratic_gb(&t, &cfg),
        Err(Error::ResourceCap { limit: 1000, .. })
    ));
}

#[test]
fn cbar7_cross_check_on_sampled_markings() {
    let t = toric(&Graph::cbar(3).unwrap());
    let classes = fiber_classes(&t.map, 2);
    let sample = feasible_markings(&classes, 5, 37).unwrap();
    assert_eq!(sample.len(), 5);
    for m in &sample {
        let (w, _) = realizing_order(&classes, m, t.width()).unwrap().unwrap();
        let c = cross_check_marking(&t.presentation, &classes, m, &w, Some(3)).unwrap();
        assert!(!c.series_match);
        assert!(c.agrees(), "marking {:?}", m.choices);
    }
}

#[test]
fn cross_check_rejects_non_realizing_weights() {
    let t = toric(&Graph::cycle(5).unwrap());
    let classes = fiber_classes(&t.map, 2);
    let m = feasible_markings(&classes, 1, 1).unwrap().remove(0);
    let zero = vec![0; t.width()];
    assert!(cross_check_marking(&t.presentation, &classes, &m, &zero, None).is_err());
}
