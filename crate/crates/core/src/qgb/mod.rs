//! Existence of a quadratic Gröbner basis under any term order, decided by
//! enumerating markings of the degree-2 fiber classes.

mod lp;

pub use lp::{integer_weights, weight_feasible, weight_feasible_with, FeasibilityResult};

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{reduced_gb_with, GbConfig, GroebnerBasis, IdealPresentation, MonomialIdeal};
use crate::hilbert::{hilbert_of_monomial_ideal, hilbert_series};
use crate::poly::{Monomial, TermOrder};
use crate::toric::{fiber_classes, FiberClasses, ToricIdeal};

pub const DEFAULT_MARKING_CAP: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct QgbConfig {
    /// Refuse to enumerate more markings than this.
    pub marking_cap: u64,
    pub gb: GbConfig,
}

impl Default for QgbConfig {
    fn default() -> Self {
        QgbConfig {
            marking_cap: DEFAULT_MARKING_CAP,
            gb: GbConfig::default(),
        }
    }
}

/// One designated (order-minimal) member per fiber class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Marking {
    pub choices: Vec<usize>,
}

impl Marking {
    /// Differences `u - s` for every non-minimal member `u` and minimum `s`.
    pub fn differences(&self, classes: &FiberClasses) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for (class, &c) in classes.classes.iter().zip(&self.choices) {
            push_differences(class, c, &mut out);
        }
        out
    }

    pub fn minimal<'a>(&self, classes: &'a FiberClasses) -> Vec<&'a Monomial> {
        classes.classes.iter().zip(&self.choices).map(|(cl, &c)| &cl[c]).collect()
    }

    /// The monomial ideal of all non-minimal members.
    pub fn monomial_ideal(&self, classes: &FiberClasses, width: usize) -> MonomialIdeal {
        let mut gens = Vec::new();
        for (class, &c) in classes.classes.iter().zip(&self.choices) {
            gens.extend(class.iter().enumerate().filter(|(i, _)| *i != c).map(|(_, m)| m.clone()));
        }
        MonomialIdeal::new(width, gens)
    }

    /// Mixed-radix position in lexicographic order of choice vectors.
    pub fn index(&self, classes: &FiberClasses) -> u128 {
        classes
            .classes
            .iter()
            .zip(&self.choices)
            .fold(0u128, |acc, (cl, &c)| acc * cl.len() as u128 + c as u128)
    }
}

fn push_differences(class: &[Monomial], choice: usize, out: &mut Vec<Vec<i64>>) {
    let s = &class[choice];
    for (i, u) in class.iter().enumerate() {
        if i != choice {
            out.push(u.difference(s));
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QgbWitness {
    pub marking_index: u64,
    /// The designated minimal monomial of each class.
    pub standard: Vec<String>,
    pub weights: Vec<i64>,
    pub order: TermOrder,
    pub basis: Vec<String>,
    #[serde(skip)]
    pub gb: GroebnerBasis,
}

#[derive(Clone, Debug, Serialize)]
pub struct QgbDecision {
    pub exists: bool,
    pub classes: usize,
    pub class_sizes: Vec<usize>,
    /// Product of the class sizes.
    pub total_markings: u64,
    /// False when the search stopped at the first success.
    pub exhaustive: bool,
    pub feasible_markings: u64,
    pub infeasible_markings: u64,
    pub hilbert_tests: u64,
    pub lp_solves: u64,
    pub witness: Option<QgbWitness>,
}

#[derive(Clone, Debug, Default)]
struct Stats {
    feasible: u64,
    infeasible: u64,
    hilbert_tests: u64,
    lp_solves: u64,
}

impl Stats {
    fn add(&mut self, o: &Stats) {
        self.feasible += o.feasible;
        self.infeasible += o.infeasible;
        self.hilbert_tests += o.hilbert_tests;
        self.lp_solves += o.lp_solves;
    }
}

struct Ctx<'a> {
    classes: &'a FiberClasses,
    width: usize,
    target: &'a [i64],
    /// suffix[k]: number of markings of classes k..
    suffix: Vec<u64>,
}

impl Ctx<'_> {
    /// Depth-first search below a prefix; returns the first success in
    /// lexicographic order, if any.
    fn explore(&self, choices: &mut Vec<usize>, diffs: &mut Vec<Vec<i64>>, stats: &mut Stats) -> Result<Option<Vec<usize>>> {
        let k = choices.len();
        if k == self.classes.len() {
            stats.feasible += 1;
            stats.hilbert_tests += 1;
            let m = Marking { choices: choices.clone() };
            let hd = hilbert_of_monomial_ideal(&m.monomial_ideal(self.classes, self.width))?;
            return Ok((hd.numerator == self.target).then(|| choices.clone()));
        }
        let class = &self.classes.classes[k];
        for c in 0..class.len() {
            let before = diffs.len();
            push_differences(class, c, diffs);
            stats.lp_solves += 1;
            if lp::is_feasible(diffs)? {
                choices.push(c);
                let found = self.explore(choices, diffs, stats)?;
                choices.pop();
                if found.is_some() {
                    diffs.truncate(before);
                    return Ok(found);
                }
            } else {
                stats.infeasible += self.suffix[k + 1];
            }
            diffs.truncate(before);
        }
        Ok(None)
    }

    /// Feasible prefixes of the given depth, in lexicographic order.
    fn prefixes(&self, depth: usize, stats: &mut Stats) -> Result<Vec<Vec<usize>>> {
        let mut out = vec![Vec::new()];
        for k in 0..depth {
            let mut next = Vec::new();
            for p in out {
                for c in 0..self.classes.classes[k].len() {
                    let mut q = p.clone();
                    q.push(c);
                    let m = Marking { choices: q.clone() };
                    let partial = FiberClasses {
                        degree: 2,
                        classes: self.classes.classes[..=k].to_vec(),
                    };
                    stats.lp_solves += 1;
                    if lp::is_feasible(&m.differences(&partial))? {
                        next.push(q);
                    } else {
                        stats.infeasible += self.suffix[k + 1];
                    }
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Decide whether the toric ideal has a quadratic Gröbner basis for some term
/// order. Every marking of the degree-2 fiber classes is either shown to be
/// unrealizable by weights, or its monomial ideal is compared with the ideal
/// through their Hilbert series. The reported witness is the lowest-index
/// successful marking.
pub fn decide_quadratic_gb(t: &ToricIdeal, config: &QgbConfig) -> Result<QgbDecision> {
    let classes = fiber_classes(&t.map, 2);
    decide_with_classes(&t.presentation, &classes, config)
}

pub fn decide_with_classes(ideal: &IdealPresentation, classes: &FiberClasses, config: &QgbConfig) -> Result<QgbDecision> {
    let total = classes.marking_count();
    if total > config.marking_cap as u128 {
        return Err(Error::ResourceCap {
            what: format!("{total} markings to enumerate"),
            limit: config.marking_cap,
        });
    }
    let width = ideal.width();
    let target = hilbert_series(ideal, &TermOrder::grevlex(width))?.numerator;
    let n = classes.len();
    let mut suffix = vec![1u64; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] * classes.classes[k].len() as u64;
    }
    // split into independent subtrees for parallel evaluation
    let mut depth = 0;
    while depth < n && suffix[0] / suffix[depth] < 64 {
        depth += 1;
    }
    let ctx = Ctx {
        classes,
        width,
        target: &target,
        suffix,
    };
    let mut stats = Stats::default();
    let prefixes = ctx.prefixes(depth, &mut stats)?;
    let batch = rayon::current_num_threads().max(1) * 4;
    let mut found: Option<Vec<usize>> = None;
    for chunk in prefixes.chunks(batch) {
        let results: Vec<Result<(Stats, Option<Vec<usize>>)>> = chunk
            .par_iter()
            .map(|p| {
                let mut s = Stats::default();
                let mut choices = p.clone();
                let mut diffs = Marking { choices: p.clone() }.differences(&FiberClasses {
                    degree: 2,
                    classes: classes.classes[..p.len()].to_vec(),
                });
                let r = ctx.explore(&mut choices, &mut diffs, &mut s)?;
                Ok((s, r))
            })
            .collect();
        for r in results {
            let (s, hit) = r?;
            stats.add(&s);
            if hit.is_some() {
                found = hit;
                break;
            }
        }
        if found.is_some() {
            break;
        }
    }
    let exhaustive = found.is_none();
    if exhaustive && stats.feasible + stats.infeasible != total as u64 {
        return Err(Error::InvalidArgument(format!(
            "marking accounting mismatch: {} feasible + {} infeasible != {total}",
            stats.feasible, stats.infeasible
        )));
    }
    let witness = match found {
        None => None,
        Some(choices) => Some(build_witness(ideal, classes, Marking { choices }, &config.gb)?),
    };
    Ok(QgbDecision {
        exists: witness.is_some(),
        classes: n,
        class_sizes: classes.classes.iter().map(|c| c.len()).collect(),
        total_markings: total as u64,
        exhaustive,
        feasible_markings: stats.feasible,
        infeasible_markings: stats.infeasible,
        hilbert_tests: stats.hilbert_tests,
        lp_solves: stats.lp_solves,
        witness,
    })
}

/// Weight order (grevlex tiebreak) realizing a feasible marking.
pub fn realizing_order(classes: &FiberClasses, marking: &Marking, width: usize) -> Result<Option<(Vec<i64>, TermOrder)>> {
    let fr = weight_feasible_with(&marking.differences(classes), false)?;
    let Some(w) = fr.witness else { return Ok(None) };
    let w = if w.is_empty() { vec![BigRational::from_integer(1.into()); width] } else { w };
    let ints: Vec<i64> = integer_weights(&w)
        .iter()
        .map(|x| x.to_i64())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidArgument("weight vector does not fit in 64-bit integers".into()))?;
    let order = TermOrder::weighted(ints.clone(), (0..width).collect())?;
    Ok(Some((ints, order)))
}

fn build_witness(ideal: &IdealPresentation, classes: &FiberClasses, marking: Marking, gb_config: &GbConfig) -> Result<QgbWitness> {
    let width = ideal.width();
    let (weights, order) = realizing_order(classes, &marking, width)?
        .ok_or_else(|| Error::InvalidArgument("successful marking is not realizable".into()))?;
    let gb = reduced_gb_with(ideal, &order, gb_config)?;
    if !gb.is_quadratic() || gb.initial_ideal() != marking.monomial_ideal(classes, width) {
        return Err(Error::InvalidArgument(
            "Hilbert series matched but the Gröbner basis under the realizing order is not quadratic".into(),
        ));
    }
    Ok(QgbWitness {
        marking_index: marking.index(classes) as u64,
        standard: marking.minimal(classes).iter().map(|m| m.to_text(&ideal.labels)).collect(),
        weights,
        basis: gb.elements.iter().map(|e| e.to_text(&ideal.labels)).collect(),
        order,
        gb,
    })
}

/// Weight-realizable markings in lexicographic order, at most `limit` of them
/// (spread with the given stride over the feasible ones).
pub fn feasible_markings(classes: &FiberClasses, limit: usize, stride: usize) -> Result<Vec<Marking>> {
    let mut out = Vec::new();
    let mut seen = 0usize;
    let mut choices = Vec::new();
    let mut diffs = Vec::new();
    fn rec(
        classes: &FiberClasses,
        choices: &mut Vec<usize>,
        diffs: &mut Vec<Vec<i64>>,
        out: &mut Vec<Marking>,
        seen: &mut usize,
        limit: usize,
        stride: usize,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        let k = choices.len();
        if k == classes.len() {
            if *seen % stride.max(1) == 0 {
                out.push(Marking { choices: choices.clone() });
            }
            *seen += 1;
            return Ok(());
        }
        for c in 0..classes.classes[k].len() {
            let before = diffs.len();
            push_differences(&classes.classes[k], c, diffs);
            if lp::is_feasible(diffs)? {
                choices.push(c);
                rec(classes, choices, diffs, out, seen, limit, stride)?;
                choices.pop();
            }
            diffs.truncate(before);
        }
        Ok(())
    }
    rec(classes, &mut choices, &mut diffs, &mut out, &mut seen, limit, stride)?;
    Ok(out)
}

/// Outcome of running Buchberger under a marking's realizing order.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    /// No basis element of degree above 2 (up to the truncation degree).
    pub quadratic: bool,
    /// Whether the marking's monomial ideal has the ideal's Hilbert series.
    pub series_match: bool,
    pub truncated_at: Option<u32>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.quadratic == self.series_match
    }
}

/// Independent check of one marking: Buchberger under `w` + grevlex, against
/// the Hilbert series comparison.
pub fn cross_check_marking(
    ideal: &IdealPresentation,
    classes: &FiberClasses,
    marking: &Marking,
    weights: &[i64],
    truncate: Option<u32>,
) -> Result<CrossCheck> {
    let width = ideal.width();
    let diffs = marking.differences(classes);
    let realizes = diffs
        .iter()
        .all(|d| d.iter().zip(weights).map(|(a, b)| a * b).sum::<i64>() > 0);
    if !realizes || weights.len() != width {
        return Err(Error::InvalidArgument("weights do not realize the marking".into()));
    }
    let order = TermOrder::weighted(weights.to_vec(), (0..width).collect())?;
    let cfg = GbConfig {
        truncate,
        ..GbConfig::default()
    };
    let gb = reduced_gb_with(ideal, &order, &cfg)?;
    let target = hilbert_series(ideal, &TermOrder::grevlex(width))?.numerator;
    let m = hilbert_of_monomial_ideal(&marking.monomial_ideal(classes, width))?;
    Ok(CrossCheck {
        quadratic: gb.is_quadratic(),
        series_match: m.numerator == target,
        truncated_at: truncate,
    })
}

#[cfg(test)]
mod tests;
