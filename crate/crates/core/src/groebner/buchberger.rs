//! Buchberger's algorithm with the Gebauer–Möller criteria and the normal
//! selection strategy.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, Polynomial, TermOrder};

pub(crate) type Term = (Monomial, Coeff);

/// Terms sorted from the leading term down.
#[derive(Clone, Debug)]
pub(crate) struct SortedPoly {
    pub terms: Vec<Term>,
    pub mask: u64,
}

impl SortedPoly {
    pub fn from_poly(f: &Polynomial, order: &TermOrder) -> Self {
        SortedPoly::from_terms(f.sorted_terms(order))
    }

    pub fn from_terms(terms: Vec<Term>) -> Self {
        let mask = terms.first().map(|t| t.0.divmask()).unwrap_or(0);
        SortedPoly { terms, mask }
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn to_poly(&self, width: usize) -> Polynomial {
        Polynomial::from_terms(width, self.terms.iter().cloned())
    }

    pub fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
    }
}

/// `a - c * m * b` where `a` and `b` are sorted descending.
pub(crate) fn sub_mul(order: &TermOrder, a: &[Term], c: &Coeff, m: &Monomial, b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut bi = b.iter().map(|(t, x)| (t.mul(m), x * c)).peekable();
    let mut ai = a.iter().peekable();
    loop {
        match (ai.peek(), bi.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(ai.next().unwrap().clone()),
            (None, Some(_)) => {
                let (t, x) = bi.next().unwrap();
                out.push((t, -x));
            }
            (Some((ta, _)), Some((tb, _))) => match order.cmp(ta, tb) {
                Ordering::Greater => out.push(ai.next().unwrap().clone()),
                Ordering::Less => {
                    let (t, x) = bi.next().unwrap();
                    out.push((t, -x));
                }
                Ordering::Equal => {
                    let (ta, xa) = ai.next().unwrap();
                    let (_, xb) = bi.next().unwrap();
                    let v = xa - xb;
                    if !v.is_zero() {
                        out.push((ta.clone(), v));
                    }
                }
            },
        }
    }
    out
}

/// Reduce `p` by the polynomials `basis[i]` for `i` in `active`. With
/// `full`, tail terms are reduced too; otherwise only the leading term.
pub(crate) fn reduce(order: &TermOrder, mut p: Vec<Term>, basis: &[SortedPoly], active: &[usize], full: bool) -> Vec<Term> {
    let mut start = 0;
    while start < p.len() {
        let m = &p[start].0;
        let mask = m.divmask();
        let div = active
            .iter()
            .find(|&&i| basis[i].mask & !mask == 0 && basis[i].lm().divides(m));
        match div {
            Some(&i) => {
                let g = &basis[i];
                let q = g.lm().quotient_of(m).expect("divisor");
                let c = p[start].1.clone();
                let tail = sub_mul(order, &p[start + 1..], &c, &q, &g.terms[1..]);
                p.truncate(start);
                p.extend(tail);
            }
            None if full => start += 1,
            None => break,
        }
    }
    p
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub basis: Vec<SortedPoly>,
    pub spairs: u64,
    pub truncated: bool,
}

/// Reduced Gröbner basis of the given (nonzero) polynomials. With
/// `truncate = Some(d)`, pairs whose lcm has degree above `d` are skipped; the
/// result is then a basis only up to degree `d` (homogeneous input).
pub(crate) fn buchberger(order: &TermOrder, input: &[Polynomial], spair_cap: u64, truncate: Option<u32>) -> Result<Outcome> {
    let mut polys: Vec<SortedPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut truncated = false;

    let mut inputs: Vec<SortedPoly> = input
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| SortedPoly::from_poly(f, order))
        .collect();
    // lowest leading monomials first keeps early reductions cheap
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for f in inputs {
        let r = reduce(order, f.terms, &polys, &active, true);
        if r.is_empty() {
            continue;
        }
        let mut h = SortedPoly::from_terms(r);
        h.make_monic();
        update(&mut polys, &mut active, &mut pairs, h);
    }

    let mut spairs = 0u64;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        if let Some(d) = truncate {
            if pair.lcm.degree() > d {
                truncated = true;
                continue;
            }
        }
        spairs += 1;
        if spairs > spair_cap {
            return Err(Error::ResourceCap {
                what: "S-pairs processed".into(),
                limit: spair_cap,
            });
        }
        let s = spoly(order, &polys[pair.i], &polys[pair.j], &pair.lcm);
        let r = reduce(order, s, &polys, &active, true);
        if r.is_empty() {
            continue;
        }
        let mut h = SortedPoly::from_terms(r);
        h.make_monic();
        update(&mut polys, &mut active, &mut pairs, h);
    }

    Ok(Outcome {
        basis: interreduce(order, &polys, &active),
        spairs,
        truncated,
    })
}

pub(crate) fn spoly(order: &TermOrder, f: &SortedPoly, g: &SortedPoly, lcm: &Monomial) -> Vec<Term> {
    let mf = f.lm().quotient_of(lcm).expect("lcm");
    let mg = g.lm().quotient_of(lcm).expect("lcm");
    let ftail: Vec<Term> = f.terms[1..]
        .iter()
        .map(|(t, c)| (t.mul(&mf), c / &f.terms[0].1))
        .collect();
    let cg = g.terms[0].1.recip();
    sub_mul(order, &ftail, &cg, &mg, &g.terms[1..])
}

/// Gebauer–Möller update (Becker–Weispfenning formulation).
fn update(polys: &mut Vec<SortedPoly>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: SortedPoly) {
    let hi = polys.len();
    let hlm = h.lm().clone();
    polys.push(h);

    let cands: Vec<(usize, Monomial, bool)> = active
        .iter()
        .map(|&g| {
            let lm = polys[g].lm();
            (g, hlm.lcm(lm), hlm.is_coprime(lm))
        })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    for (k, c) in cands.iter().enumerate() {
        if c.2 {
            kept.push(c.clone());
            continue;
        }
        let dominated = cands
            .iter()
            .enumerate()
            .skip(k + 1)
            .any(|(_, d)| d.1.divides(&c.1))
            || kept.iter().any(|d| d.1.divides(&c.1));
        if !dominated {
            kept.push(c.clone());
        }
    }
    // product criterion
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|c| !c.2)
        .map(|(g, lcm, _)| Pair { i: g, j: hi, lcm })
        .collect();

    pairs.retain(|p| {
        if !hlm.divides(&p.lcm) {
            return true;
        }
        let a = polys[p.i].lm().lcm(&hlm);
        let b = polys[p.j].lm().lcm(&hlm);
        a == p.lcm || b == p.lcm
    });
    pairs.extend(new_pairs);

    active.retain(|&g| !hlm.divides(polys[g].lm()));
    active.push(hi);
}

fn interreduce(order: &TermOrder, polys: &[SortedPoly], active: &[usize]) -> Vec<SortedPoly> {
    let mut idx: Vec<usize> = active
        .iter()
        .copied()
        .filter(|&i| {
            !active
                .iter()
                .any(|&j| j != i && polys[j].lm().divides(polys[i].lm()) && (polys[j].lm() != polys[i].lm() || j < i))
        })
        .collect();
    idx.sort_by(|&a, &b| order.cmp(polys[a].lm(), polys[b].lm()));
    let mut out: Vec<SortedPoly> = Vec::with_capacity(idx.len());
    let all: Vec<usize> = idx.clone();
    for &i in &idx {
        let others: Vec<usize> = all.iter().copied().filter(|&j| j != i).collect();
        let head = polys[i].terms[0].clone();
        let tail = reduce(order, polys[i].terms[1..].to_vec(), polys, &others, true);
        let mut terms = vec![head];
        terms.extend(tail);
        let mut p = SortedPoly::from_terms(terms);
        p.make_monic();
        out.push(p);
    }
    out
}
