//! The monomial map of a stable set polytope, its toric ideal, closed-form
//! generator lists for the two graph families, and degree-d fiber classes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{stable_sets, Graph, StableSetFamily};
use crate::groebner::{eliminate, minimal_generators, GbConfig, IdealPresentation};
use crate::poly::{monomials_of_degree, Monomial, Polynomial, TermOrder};

/// `y_W ↦ t · ∏_{i ∈ W} x_i`. Target coordinates are `x_1..x_n`, then `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialMap {
    pub stable_sets: StableSetFamily,
    pub labels: Vec<String>,
    pub targets: Vec<Vec<u32>>,
}

/// Label of the variable attached to a stable set, e.g. `y_{}`, `y_{3}`, `y_{1,2}`.
pub fn stable_set_label(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("y_{{{}}}", inner.join(","))
}

pub fn monomial_map(g: &Graph) -> MonomialMap {
    let fam = stable_sets(g);
    let labels = fam.sets.iter().map(|s| stable_set_label(s)).collect();
    let targets = (0..fam.len())
        .map(|i| {
            let mut v = fam.indicator(i);
            v.push(1);
            v
        })
        .collect();
    MonomialMap {
        stable_sets: fam,
        labels,
        targets,
    }
}

impl MonomialMap {
    pub fn source_width(&self) -> usize {
        self.targets.len()
    }

    pub fn target_width(&self) -> usize {
        self.stable_sets.graph.n() + 1
    }

    /// Variable index of a stable set (sorted 1-based vertices).
    pub fn var(&self, set: &[usize]) -> Result<usize> {
        self.stable_sets
            .index_of(set)
            .ok_or_else(|| Error::InvalidArgument(format!("{set:?} is not a stable set")))
    }

    /// Exponent vector of the image of a monomial.
    pub fn image(&self, m: &Monomial) -> Vec<u32> {
        let mut out = vec![0; self.target_width()];
        for v in m.support() {
            let e = m.exp(v);
            for (o, t) in out.iter_mut().zip(&self.targets[v]) {
                *o += e * t;
            }
        }
        out
    }

    /// Does `f` map to zero? (Coefficients of terms with equal image cancel.)
    pub fn annihilates(&self, f: &Polynomial) -> bool {
        let mut acc: BTreeMap<Vec<u32>, crate::poly::Coeff> = BTreeMap::new();
        for (m, c) in f.terms() {
            *acc.entry(self.image(m)).or_default() += c;
        }
        acc.values().all(|c| c == &crate::poly::Coeff::default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Elimination,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricIdeal {
    pub map: MonomialMap,
    pub presentation: IdealPresentation,
    pub provenance: Provenance,
}

impl ToricIdeal {
    pub fn width(&self) -> usize {
        self.presentation.width()
    }

    pub fn labels(&self) -> &[String] {
        &self.presentation.labels
    }

    /// Every generator is a `±1` binomial that maps to zero.
    pub fn is_valid(&self) -> bool {
        use num_traits::Signed;
        self.presentation.generators.iter().all(|g| {
            g.len() == 2
                && g.is_homogeneous()
                && g.terms().all(|(_, c)| c.abs() == crate::poly::rat(1))
                && g.terms().map(|(_, c)| c.clone()).sum::<crate::poly::Coeff>() == crate::poly::rat(0)
                && self.map.annihilates(g)
        })
    }
}

/// Toric ideal of the stable set polytope of `g` by elimination.
pub fn toric_ideal(map: &MonomialMap) -> Result<ToricIdeal> {
    toric_ideal_with(map, &GbConfig::default())
}

pub fn toric_ideal_with(map: &MonomialMap, config: &GbConfig) -> Result<ToricIdeal> {
    let s = map.source_width();
    let n = map.stable_sets.graph.n();
    let width = s + n + 1;
    let mut labels = map.labels.clone();
    labels.extend((1..=n).map(|i| format!("x_{i}")));
    labels.push("t".into());
    let gens: Vec<Polynomial> = (0..s)
        .map(|w| {
            let mut img = vec![0u32; width];
            for (i, &e) in map.targets[w].iter().enumerate() {
                img[s + i] = e;
            }
            Polynomial::binomial(Monomial::var(width, w), Monomial::from_exps(img))
        })
        .collect();
    let graph_ideal = IdealPresentation::new(labels, gens)?;
    let drop: Vec<usize> = (s..width).collect();
    let elim = eliminate(&graph_ideal, &drop, &TermOrder::grevlex(s), config)?;
    let min = minimal_generators(elim.labels, &elim.generators)?;
    let gens = min.generators.iter().map(|g| g.normalize_sign()).collect();
    let presentation = IdealPresentation::new(min.labels, gens)?;
    Ok(ToricIdeal {
        map: map.clone(),
        presentation,
        provenance: Provenance::Elimination,
    })
}

/// The two graph families with known generators and regular sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "k", rename_all = "snake_case")]
pub enum Family {
    /// Complement of the odd cycle `C_{2k+1}`, `k >= 3`.
    Cbar(usize),
    /// Complement of `C_7 ∪ k·K_2`, `k >= 1`.
    Family(usize),
}

impl Family {
    pub fn graph(&self) -> Result<Graph> {
        match *self {
            Family::Cbar(k) => Graph::cbar(k),
            Family::Family(k) => Graph::family(k),
        }
    }

    fn cycle_len(&self) -> usize {
        match *self {
            Family::Cbar(k) => 2 * k + 1,
            Family::Family(_) => 7,
        }
    }
}

struct Builder<'a> {
    map: &'a MonomialMap,
    width: usize,
}

impl Builder<'_> {
    fn y(&self, set: &[usize]) -> Result<Monomial> {
        let mut s = set.to_vec();
        s.sort_unstable();
        Ok(Monomial::var(self.width, self.map.var(&s)?))
    }

    fn binomial(&self, a: (&[usize], &[usize]), b: (&[usize], &[usize])) -> Result<Polynomial> {
        let ma = self.y(a.0)?.mul(&self.y(a.1)?);
        let mb = self.y(b.0)?.mul(&self.y(b.1)?);
        Ok(Polynomial::binomial(ma, mb))
    }

    fn var(&self, set: &[usize]) -> Result<Polynomial> {
        Ok(Polynomial::monomial(self.y(set)?))
    }
}

/// The closed-form binomial generators of a family's toric ideal.
pub fn closed_form_generators(family: Family) -> Result<ToricIdeal> {
    let g = family.graph()?;
    let map = monomial_map(&g);
    let b = Builder {
        map: &map,
        width: map.source_width(),
    };
    let n = family.cycle_len();
    let k = (n - 1) / 2;
    let e: &[usize] = &[];
    let mut gens = Vec::new();
    for i in 1..=2 * k {
        gens.push(b.binomial((&[i], &[i + 1]), (e, &[i, i + 1]))?);
    }
    gens.push(b.binomial((&[1], &[n]), (e, &[1, n]))?);
    for i in 1..2 * k {
        gens.push(b.binomial((&[i], &[i + 1, i + 2]), (&[i + 2], &[i, i + 1]))?);
    }
    gens.push(b.binomial((&[2 * k], &[1, n]), (&[1], &[2 * k, n]))?);
    gens.push(b.binomial((&[n], &[1, 2]), (&[2], &[1, n]))?);
    if let Family::Family(kk) = family {
        for i in 4..=kk + 3 {
            gens.push(b.binomial((&[2 * i], &[2 * i + 1]), (e, &[2 * i, 2 * i + 1]))?);
        }
    }
    let presentation = IdealPresentation::new(map.labels.clone(), gens)?;
    Ok(ToricIdeal {
        map,
        presentation,
        provenance: Provenance::ClosedForm,
    })
}

/// A linear system of parameters known to be a regular sequence on the
/// family's toric ring: `y_{}`, then `y_i − y_{i+1,i+2}` around the odd cycle,
/// then for each extra pair `{a, a+1}` the form `y_a − y_{a+1}`, then `y_{a,a+1}`.
pub fn known_regular_sequence(family: Family) -> Result<Vec<Polynomial>> {
    let g = family.graph()?;
    let map = monomial_map(&g);
    let b = Builder {
        map: &map,
        width: map.source_width(),
    };
    let n = family.cycle_len();
    let mut out = vec![b.var(&[])?];
    for i in 1..=n {
        let p = [i % n + 1, (i + 1) % n + 1];
        out.push(&b.var(&[i])? - &b.var(&p)?);
    }
    if let Family::Family(k) = family {
        let pairs: Vec<usize> = (0..k).map(|j| 8 + 2 * j).collect();
        for &a in &pairs {
            out.push(&b.var(&[a])? - &b.var(&[a + 1])?);
        }
        for &a in &pairs {
            out.push(b.var(&[a, a + 1])?);
        }
    }
    Ok(out)
}

/// Degree-`d` monomials grouped by image; only classes with two or more members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberClasses {
    pub degree: u32,
    pub classes: Vec<Vec<Monomial>>,
}

impl FiberClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of markings: the product of class sizes (saturating).
    pub fn marking_count(&self) -> u128 {
        self.classes
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }
}

pub fn fiber_classes(map: &MonomialMap, d: u32) -> FiberClasses {
    let mut by_image: BTreeMap<Vec<u32>, Vec<Monomial>> = BTreeMap::new();
    for m in monomials_of_degree(map.source_width(), d) {
        by_image.entry(map.image(&m)).or_default().push(m);
    }
    let mut classes: Vec<Vec<Monomial>> = by_image
        .into_values()
        .filter(|c| c.len() >= 2)
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();
    classes.sort();
    FiberClasses { degree: d, classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{reduced_gb, same_ideal};

    #[test]
    fn map_of_complete_graph() {
        let m = monomial_map(&Graph::complete(3).unwrap());
        assert_eq!(m.source_width(), 4);
        assert_eq!(m.targets, vec![vec![0, 0, 0, 1], vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]);
        assert_eq!(m.labels, vec!["y_{}", "y_{1}", "y_{2}", "y_{3}"]);
        let t = toric_ideal(&m).unwrap();
        assert!(t.presentation.generators.is_empty());
        assert!(fiber_classes(&m, 2).is_empty());
    }

    #[test]
    fn source_counts() {
        assert_eq!(monomial_map(&Graph::cbar(3).unwrap()).source_width(), 15);
        for k in 1..=3 {
            assert_eq!(monomial_map(&Graph::family(k).unwrap()).source_width(), 3 * k + 15);
        }
    }

    #[test]
    fn closed_form_counts_and_validity() {
        for (f, count) in [(Family::Cbar(3), 14), (Family::Cbar(4), 18), (Family::Family(1), 15), (Family::Family(2), 16)] {
            let t = closed_form_generators(f).unwrap();
            assert_eq!(t.presentation.generators.len(), count);
            assert!(t.is_valid());
        }
        assert!(closed_form_generators(Family::Cbar(2)).is_err());
        assert!(closed_form_generators(Family::Family(0)).is_err());
    }

    #[test]
    fn cbar7_elimination_matches_closed_form() {
        let m = monomial_map(&Graph::cbar(3).unwrap());
        let t = toric_ideal(&m).unwrap();
        assert!(t.is_valid());
        assert_eq!(t.presentation.generators.len(), 14);
        assert!(t.presentation.is_quadratic());
        let c = closed_form_generators(Family::Cbar(3)).unwrap();
        assert!(same_ideal(&t.presentation, &c.presentation, &GbConfig::default()).unwrap());
    }

    #[test]
    fn c4_quadrics() {
        let m = monomial_map(&Graph::cycle(4).unwrap());
        let t = toric_ideal(&m).unwrap();
        let w = m.source_width();
        assert_eq!(w, 7);
        let gb = reduced_gb(&t.presentation, &TermOrder::grevlex(m.source_width())).unwrap();
        for (a, b, c) in [(1, 3, [1, 3]), (2, 4, [2, 4])] {
            let f = Polynomial::binomial(
                Monomial::var(w, m.var(&[a]).unwrap()).mul(&Monomial::var(w, m.var(&[b]).unwrap())),
                Monomial::var(w, 0).mul(&Monomial::var(w, m.var(&c).unwrap())),
            );
            assert!(gb.contains(&f).unwrap());
        }
        let fc = fiber_classes(&m, 2);
        let y = |s: &[usize]| Monomial::var(w, m.var(s).unwrap());
        assert!(fc.classes.contains(&{
            let mut c = vec![y(&[1]).mul(&y(&[3])), y(&[]).mul(&y(&[1, 3]))];
            c.sort();
            c
        }));
    }

    /// Oracle: pairs of degree-2 monomials with equal image, by direct comparison.
    #[test]
    fn fiber_classes_match_pairwise_oracle() {
        let m = monomial_map(&Graph::cbar(3).unwrap());
        let fc = fiber_classes(&m, 2);
        assert_eq!(fc.len(), 14);
        assert!(fc.classes.iter().all(|c| c.len() == 2));
        assert_eq!(fc.marking_count(), 16384);
        let mons = monomials_of_degree(15, 2);
        assert_eq!(mons.len(), 120);
        let mut pairs = 0;
        for i in 0..mons.len() {
            for j in i + 1..mons.len() {
                if m.image(&mons[i]) == m.image(&mons[j]) {
                    pairs += 1;
                }
            }
        }
        assert_eq!(pairs, 14);
    }

    #[test]
    fn regular_sequence_lengths() {
        assert_eq!(known_regular_sequence(Family::Cbar(3)).unwrap().len(), 8);
        assert_eq!(known_regular_sequence(Family::Cbar(5)).unwrap().len(), 12);
        assert_eq!(known_regular_sequence(Family::Family(2)).unwrap().len(), 12);
    }
}
