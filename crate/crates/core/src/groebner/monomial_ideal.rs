use serde::{Deserialize, Serialize};

use crate::poly::Monomial;

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    width: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Keeps only the divisibility-minimal monomials; generators are sorted
    /// by degree, then by exponent vector.
    pub fn new(width: usize, gens: Vec<Monomial>) -> Self {
        let mut gens = gens;
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut min: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !min.iter().any(|m| m.divides(&g)) {
                min.push(g);
            }
        }
        MonomialIdeal {
            width,
            generators: min,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        let mask = m.divmask();
        self.generators
            .iter()
            .any(|g| g.divmask() & !mask == 0 && g.divides(m))
    }

    /// Every minimal generator has degree at most 2 (vacuous when empty).
    pub fn is_quadratic(&self) -> bool {
        self.generators.iter().all(|g| g.degree() <= 2)
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(|g| g.is_squarefree())
    }

    pub fn max_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn to_text(&self, labels: &[String]) -> Vec<String> {
        self.generators.iter().map(|g| g.to_text(labels)).collect()
    }
}

/// Degree-`d` monomials outside `ideal`, in increasing exponent-vector order.
pub fn standard_monomials(ideal: &MonomialIdeal, d: u32) -> Vec<Monomial> {
    let width = ideal.width();
    // grow degree by degree: divisors of standard monomials are standard
    let mut layer = vec![Monomial::one(width)];
    if ideal.contains(&layer[0]) {
        return Vec::new();
    }
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &layer {
            let last = m.support().last().unwrap_or(0);
            for v in last..width {
                let n = m.mul_var(v);
                if !ideal.contains(&n) {
                    next.push(n);
                }
            }
        }
        layer = next;
    }
    layer.sort();
    layer
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn minimalization() {
        let i = MonomialIdeal::new(2, vec![m(&[2, 1]), m(&[1, 0]), m(&[0, 3]), m(&[1, 0])]);
        assert_eq!(i.generators(), &[m(&[1, 0]), m(&[0, 3])]);
        assert!(i.contains(&m(&[1, 5])));
        assert!(!i.contains(&m(&[0, 2])));
        assert!(!i.is_quadratic());
        assert!(i.is_squarefree() == false);
    }

    #[test]
    fn standard_monomials_count() {
        let all = MonomialIdeal::new(3, vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]);
        assert!(standard_monomials(&all, 1).is_empty());
        assert_eq!(standard_monomials(&all, 0).len(), 1);
        let zero = MonomialIdeal::new(3, vec![]);
        assert_eq!(standard_monomials(&zero, 3).len(), 10);
        let sq = MonomialIdeal::new(2, vec![m(&[2, 0])]);
        assert_eq!(standard_monomials(&sq, 4), vec![m(&[0, 4]), m(&[1, 3])]);
    }
}
