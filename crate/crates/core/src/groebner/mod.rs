//! Reduced Gröbner bases, normal forms, initial ideals, standard monomials
//! and elimination.

mod buchberger;
mod monomial_ideal;

pub use monomial_ideal::{standard_monomials, MonomialIdeal};

pub(crate) use buchberger::{reduce, SortedPoly, Term};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Rationals, SparseVec};
use crate::poly::{monomials_of_degree, Coeff, Monomial, Polynomial, TermOrder};

/// Default budget of processed S-pairs.
pub const DEFAULT_SPAIR_CAP: u64 = 1_000_000;

/// An ideal of `K[labels]` given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealPresentation {
    pub labels: Vec<String>,
    pub generators: Vec<Polynomial>,
}

#[derive(Deserialize)]
struct PresentationJson {
    labels: Vec<String>,
    generators: Vec<Vec<crate::poly::JsonTerm>>,
}

impl IdealPresentation {
    /// Drops zero generators; all generators must live in `labels.len()` variables.
    pub fn new(labels: Vec<String>, generators: Vec<Polynomial>) -> Result<Self> {
        crate::poly::variables(&labels)?;
        let width = labels.len();
        for g in &generators {
            if g.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: g.width(),
                });
            }
        }
        Ok(IdealPresentation {
            labels,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(labels: Vec<String>) -> Self {
        IdealPresentation {
            labels,
            generators: Vec::new(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PresentationJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("ideal JSON: {e}")))?;
        let width = j.labels.len();
        let gens = j
            .generators
            .iter()
            .map(|t| Polynomial::from_json_terms(width, t))
            .collect::<Result<Vec<_>>>()?;
        IdealPresentation::new(j.labels, gens)
    }

    pub fn width(&self) -> usize {
        self.labels.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Largest generator degree (0 for the zero ideal).
    pub fn max_degree(&self) -> u32 {
        self.generators.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    /// All generators homogeneous of degree exactly 2 (vacuous for the zero ideal).
    pub fn is_quadratic(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.is_homogeneous() && g.degree() == Some(2))
    }

    pub fn to_text(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_text(&self.labels)).collect()
    }
}

/// Limits for a Buchberger run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbConfig {
    pub spair_cap: u64,
    /// Only for homogeneous input: skip pairs above this degree.
    pub truncate: Option<u32>,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            spair_cap: DEFAULT_SPAIR_CAP,
            truncate: None,
        }
    }
}

/// A reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug, Serialize)]
pub struct GroebnerBasis {
    pub order: TermOrder,
    pub labels: Vec<String>,
    pub elements: Vec<Polynomial>,
    pub leading: Vec<Monomial>,
    pub max_degree: u32,
    pub spairs_processed: u64,
    /// `Some(d)` when the basis is only valid up to degree `d`.
    pub truncated_at: Option<u32>,
    #[serde(skip)]
    sorted: Vec<SortedPoly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.elements == other.elements
    }
}

pub fn reduced_gb(ideal: &IdealPresentation, order: &TermOrder) -> Result<GroebnerBasis> {
    reduced_gb_with(ideal, order, &GbConfig::default())
}

pub fn reduced_gb_with(ideal: &IdealPresentation, order: &TermOrder, config: &GbConfig) -> Result<GroebnerBasis> {
    if order.width() != ideal.width() {
        return Err(Error::WidthMismatch {
            expected: ideal.width(),
            found: order.width(),
        });
    }
    if config.truncate.is_some() && !ideal.is_homogeneous() {
        return Err(Error::InvalidArgument(
            "degree truncation needs a homogeneous ideal".into(),
        ));
    }
    let out = buchberger::buchberger(order, &ideal.generators, config.spair_cap, config.truncate)?;
    Ok(GroebnerBasis::from_sorted(
        order.clone(),
        ideal.labels.clone(),
        out.basis,
        out.spairs,
        if out.truncated { config.truncate } else { None },
    ))
}

impl GroebnerBasis {
    fn from_sorted(order: TermOrder, labels: Vec<String>, sorted: Vec<SortedPoly>, spairs: u64, truncated_at: Option<u32>) -> Self {
        let width = order.width();
        let elements: Vec<Polynomial> = sorted.iter().map(|p| p.to_poly(width)).collect();
        let leading: Vec<Monomial> = sorted.iter().map(|p| p.lm().clone()).collect();
        let max_degree = elements.iter().filter_map(|e| e.degree()).max().unwrap_or(0);
        GroebnerBasis {
            order,
            labels,
            elements,
            leading,
            max_degree,
            spairs_processed: spairs,
            truncated_at,
            sorted,
        }
    }

    pub fn width(&self) -> usize {
        self.order.width()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_quadratic(&self) -> bool {
        self.max_degree <= 2
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(|m| m.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.width() != self.width() {
            return Err(Error::WidthMismatch {
                expected: self.width(),
                found: f.width(),
            });
        }
        let terms = self.normal_form_terms(f.sorted_terms(&self.order));
        Ok(Polynomial::from_terms(self.width(), terms))
    }

    /// Normal form of a sorted term list; the result is sorted descending.
    pub(crate) fn normal_form_terms(&self, terms: Vec<Term>) -> Vec<Term> {
        let all: Vec<usize> = (0..self.sorted.len()).collect();
        reduce(&self.order, terms, &self.sorted, &all, true)
    }

    pub fn normal_form_monomial(&self, m: &Monomial) -> Vec<Term> {
        self.normal_form_terms(vec![(m.clone(), Coeff::from_integer(1.into()))])
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.width(), self.leading.clone())
    }

    /// Standard monomials of degree `d`, increasing under the basis order.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        let mut v = standard_monomials(&self.initial_ideal(), d);
        v.sort_by(|a, b| self.order.cmp(a, b));
        v
    }

    pub fn presentation(&self) -> IdealPresentation {
        IdealPresentation {
            labels: self.labels.clone(),
            generators: self.elements.clone(),
        }
    }

    /// Check that every S-polynomial reduces to zero. With `sample`, only
    /// that many pairs (spread evenly over all pairs) are checked.
    pub fn verify_spairs(&self, sample: Option<usize>) -> bool {
        let n = self.sorted.len();
        let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let chosen: Vec<(usize, usize)> = match sample {
            Some(s) if s < all.len() && s > 0 => {
                let step = all.len() / s;
                all.iter().step_by(step.max(1)).copied().collect()
            }
            _ => all,
        };
        chosen.into_iter().all(|(i, j)| {
            let (f, g) = (&self.sorted[i], &self.sorted[j]);
            if f.lm().is_coprime(g.lm()) {
                return true;
            }
            if let Some(d) = self.truncated_at {
                if f.lm().lcm(g.lm()).degree() > d {
                    return true;
                }
            }
            let s = buchberger::spoly(&self.order, f, g, &f.lm().lcm(g.lm()));
            self.normal_form_terms(s).is_empty()
        })
    }

    /// Auto-reduction: no term of any element is divisible by another leading monomial.
    pub fn is_autoreduced(&self) -> bool {
        self.sorted.iter().enumerate().all(|(i, p)| {
            p.terms.iter().all(|(m, _)| {
                self.leading
                    .iter()
                    .enumerate()
                    .all(|(j, l)| j == i || !l.divides(m))
            }) && p.terms[0].1 == Coeff::from_integer(1.into())
        })
    }
}

/// Equality of ideals by mutual membership of generators.
pub fn same_ideal(a: &IdealPresentation, b: &IdealPresentation, config: &GbConfig) -> Result<bool> {
    if a.labels != b.labels {
        return Ok(false);
    }
    let order = TermOrder::grevlex(a.width());
    let ga = reduced_gb_with(a, &order, config)?;
    let gb = reduced_gb_with(b, &order, config)?;
    for g in &a.generators {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    for g in &b.generators {
        if !ga.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

pub fn initial_ideal(gb: &GroebnerBasis) -> MonomialIdeal {
    gb.initial_ideal()
}

/// Generators of `I ∩ K[kept variables]`, with the kept variables renumbered
/// in increasing index order. `keep_order` is a term order on the kept ring.
pub fn eliminate(ideal: &IdealPresentation, drop: &[usize], keep_order: &TermOrder, config: &GbConfig) -> Result<IdealPresentation> {
    let width = ideal.width();
    let mut dropped = vec![false; width];
    for &v in drop {
        if v >= width {
            return Err(Error::InvalidArgument(format!("variable {v} out of range")));
        }
        dropped[v] = true;
    }
    let keep: Vec<usize> = (0..width).filter(|&v| !dropped[v]).collect();
    if keep_order.width() != keep.len() {
        return Err(Error::WidthMismatch {
            expected: keep.len(),
            found: keep_order.width(),
        });
    }
    // lift the kept order to the full ring
    let lifted = lift_order(keep_order, &keep, width)?;
    let block = TermOrder::block(drop, &lifted)?;
    let gb = reduced_gb_with(ideal, &block, config)?;
    let gens: Vec<Polynomial> = gb.elements.iter().filter_map(|g| g.restrict(&keep)).collect();
    let labels = keep.iter().map(|&v| ideal.labels[v].clone()).collect();
    IdealPresentation::new(labels, gens)
}

/// Extend an order on the kept variables to the full ring; dropped variables
/// are ranked above the kept ones (their internal order is irrelevant once
/// `TermOrder::block` places them in the high block).
fn lift_order(keep_order: &TermOrder, keep: &[usize], width: usize) -> Result<TermOrder> {
    use crate::poly::OrderKind;
    let map = |r: Vec<usize>| -> Vec<usize> {
        let mut out: Vec<usize> = r.into_iter().map(|v| keep[v]).collect();
        out.extend((0..width).filter(|v| !keep.contains(v)));
        out
    };
    match keep_order.kind() {
        OrderKind::Lex { ranking } => TermOrder::lex_ranked(map(ranking.clone())),
        OrderKind::Grevlex { ranking } => TermOrder::grevlex_ranked(map(ranking.clone())),
        OrderKind::RevlexNongraded { ranking } => TermOrder::revlex_nongraded_ranked(map(ranking.clone())),
        OrderKind::Weight { weights, ranking } => {
            let mut w = vec![0; width];
            for (i, &v) in keep.iter().enumerate() {
                w[v] = weights[i];
            }
            TermOrder::weighted(w, map(ranking.clone()))
        }
        OrderKind::Block { .. } => Err(Error::InvalidArgument(
            "nested block orders are not supported for elimination".into(),
        )),
    }
}

/// A minimal homogeneous generating set chosen from `candidates` (taken in
/// order of increasing degree, then as given). Candidates must be homogeneous.
pub fn minimal_generators(labels: Vec<String>, candidates: &[Polynomial]) -> Result<IdealPresentation> {
    let width = labels.len();
    let mut cands: Vec<&Polynomial> = candidates.iter().filter(|g| !g.is_zero()).collect();
    if cands.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::InvalidArgument(
            "minimal generators need homogeneous input".into(),
        ));
    }
    cands.sort_by_key(|g| g.degree());
    let mut chosen: Vec<Polynomial> = Vec::new();
    let mut i = 0;
    while i < cands.len() {
        let d = cands[i].degree().expect("nonzero");
        let mut index: HashMap<Monomial, usize> = HashMap::new();
        let mut vec_of = |f: &Polynomial| -> SparseVec<Coeff> {
            let mut v: SparseVec<Coeff> = f
                .terms()
                .map(|(m, c)| {
                    let n = index.len();
                    (*index.entry(m.clone()).or_insert(n), c.clone())
                })
                .collect();
            v.sort_by_key(|t| t.0);
            v
        };
        let mut ech = Echelon::new(Rationals);
        for g in &chosen {
            let gd = g.degree().expect("nonzero");
            for m in monomials_of_degree(width, d - gd) {
                ech.insert(vec_of(&g.mul_monomial(&m)));
            }
        }
        while i < cands.len() && cands[i].degree() == Some(d) {
            if ech.insert(vec_of(cands[i])) {
                chosen.push(cands[i].clone());
            }
            i += 1;
        }
    }
    IdealPresentation::new(labels, chosen)
}

#[cfg(test)]
mod tests;
