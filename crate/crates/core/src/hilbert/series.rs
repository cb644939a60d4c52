use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{reduced_gb_with, GbConfig, GroebnerBasis, IdealPresentation, MonomialIdeal};
use crate::poly::{Monomial, TermOrder};

/// Hilbert series `numerator(t) / (1 - t)^denominator_exponent`, reduced to
/// `h(t) / (1 - t)^krull_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub numerator: Vec<i64>,
    pub denominator_exponent: usize,
    pub krull_dim: usize,
    pub h_vector: Vec<i64>,
    pub socle_degree: usize,
}

impl HilbertData {
    /// Value of the Hilbert function in degree `d`.
    pub fn hilbert_function(&self, d: usize) -> i128 {
        // coefficient of t^d in h(t) / (1-t)^dim
        let mut total: i128 = 0;
        for (i, &h) in self.h_vector.iter().enumerate() {
            if i > d {
                break;
            }
            total += h as i128 * multichoose(self.krull_dim, d - i);
        }
        total
    }

    /// `h_1`, which equals embedding dimension minus Krull dimension.
    pub fn codimension(&self) -> i64 {
        self.h_vector.get(1).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        let h = &self.h_vector;
        (0..h.len()).all(|i| h[i] == h[h.len() - 1 - i])
    }

    /// E.g. `(1 + 7t + 14t^2) / (1 - t)^8`.
    pub fn series_text(&self) -> String {
        format!("({}) / (1 - t)^{}", poly_text(&self.h_vector), self.krull_dim)
    }
}

fn multichoose(n: usize, k: usize) -> i128 {
    // C(n + k - 1, k); the number of degree-k monomials in n variables
    if n == 0 {
        return if k == 0 { 1 } else { 0 };
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n + i) as i128 / (i + 1) as i128;
    }
    acc
}

pub fn poly_text(c: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &a) in c.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let mag = a.unsigned_abs();
        let body = match (i, mag) {
            (0, _) => mag.to_string(),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{mag}t"),
            (_, 1) => format!("t^{i}"),
            _ => format!("{mag}t^{i}"),
        };
        if parts.is_empty() {
            parts.push(if a < 0 { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if a < 0 { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn padd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn pmul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `1 - t^d`.
fn one_minus_t_pow(d: u32) -> IntPoly {
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = BigInt::one();
    p[d as usize] -= BigInt::one();
    trim(p)
}

fn shift(a: &IntPoly, by: u32) -> IntPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); by as usize];
    out.extend(a.iter().cloned());
    out
}

/// Exact division by `1 - t`, if possible.
fn div_one_minus_t(p: &IntPoly) -> Option<IntPoly> {
    if p.is_empty() {
        return None;
    }
    let mut q = Vec::with_capacity(p.len());
    let mut acc = BigInt::zero();
    for c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc.clone());
    }
    acc += &p[p.len() - 1];
    acc.is_zero().then(|| trim(q))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

/// Numerator of the Hilbert series of `K[x]/M` over `(1-t)^width`; it does
/// not depend on the width.
struct Numerator {
    memo: HashMap<Vec<Monomial>, IntPoly>,
}

impl Numerator {
    fn compute(&mut self, gens: Vec<Monomial>) -> IntPoly {
        if gens.is_empty() {
            return vec![BigInt::one()];
        }
        if gens.iter().any(|g| g.is_one()) {
            return Vec::new();
        }
        if let Some(v) = self.memo.get(&gens) {
            return v.clone();
        }
        let result = self.compute_uncached(&gens);
        self.memo.insert(gens, result.clone());
        result
    }

    fn compute_uncached(&mut self, gens: &[Monomial]) -> IntPoly {
        let pairwise_coprime = gens
            .iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
        if pairwise_coprime {
            return gens
                .iter()
                .fold(vec![BigInt::one()], |acc, g| pmul(&acc, &one_minus_t_pow(g.degree())));
        }
        let comps = components(gens);
        if comps.len() > 1 {
            return comps.into_iter().fold(vec![BigInt::one()], |acc, c| {
                let n = self.compute(minimalize(c));
                pmul(&acc, &n)
            });
        }
        // pivot on the variable occurring in the most generators
        let width = gens[0].width();
        let mut counts = vec![0usize; width];
        for g in gens {
            for v in g.support() {
                counts[v] += 1;
            }
        }
        let x = (0..width).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("width > 0");
        let xm = Monomial::var(width, x);
        // M + (x) = (x) plus the generators free of x
        let without: Vec<Monomial> = gens.iter().filter(|g| g.exp(x) == 0).cloned().collect();
        let n1 = pmul(&one_minus_t_pow(1), &self.compute(minimalize(without)));
        // M : x
        let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&xm)).collect();
        let n2 = self.compute(minimalize(colon));
        padd(&n1, &shift(&n2, 1))
    }
}

/// Split generators into groups with pairwise disjoint variable supports.
fn components(gens: &[Monomial]) -> Vec<Vec<Monomial>> {
    let n = gens.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let nx = p[j];
            p[j] = r;
            j = nx;
        }
        r
    }
    let width = gens[0].width();
    let mut owner: Vec<Option<usize>> = vec![None; width];
    for (i, g) in gens.iter().enumerate() {
        for v in g.support() {
            match owner[v] {
                None => owner[v] = Some(i),
                Some(j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Monomial>> = HashMap::new();
    let mut order = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let r = find(&mut parent, i);
        if !groups.contains_key(&r) {
            order.push(r);
        }
        groups.entry(r).or_default().push(g.clone());
    }
    order.into_iter().map(|r| groups.remove(&r).unwrap()).collect()
}

/// Smallest set of variables meeting every generator's support, by branch and bound.
fn min_hitting_set(supports: &[u64]) -> usize {
    fn rec(supports: &[u64], chosen: u64, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        let unhit: Vec<u64> = supports.iter().copied().filter(|s| s & chosen == 0).collect();
        let Some(&pick) = unhit.iter().min_by_key(|s| s.count_ones()) else {
            *best = size;
            return;
        };
        // lower bound: greedily packed pairwise disjoint unhit sets
        let mut used = 0u64;
        let mut lb = 0;
        for s in &unhit {
            if s & used == 0 {
                used |= s;
                lb += 1;
            }
        }
        if size + lb >= *best {
            return;
        }
        let mut bits = pick;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            rec(supports, chosen | 1 << v, size + 1, best);
        }
    }
    let mut best = usize::MAX;
    rec(supports, 0, 0, &mut best);
    best
}

/// Krull dimension of `K[x]/M`: the largest variable set containing the
/// support of no generator.
pub fn krull_dimension(ideal: &MonomialIdeal) -> Result<usize> {
    let width = ideal.width();
    if ideal.generators().iter().any(|g| g.is_one()) {
        return Ok(0);
    }
    if width > 64 {
        return Err(Error::SizeLimit {
            what: "ring width for dimension search".into(),
            value: width,
            limit: 64,
        });
    }
    let mut supports: Vec<u64> = ideal
        .generators()
        .iter()
        .map(|g| g.support().fold(0u64, |a, v| a | 1 << v))
        .collect();
    supports.sort_unstable();
    supports.dedup();
    let minimal: Vec<u64> = supports
        .iter()
        .copied()
        .filter(|&s| !supports.iter().any(|&t| t != s && t & s == t))
        .collect();
    if minimal.is_empty() {
        return Ok(width);
    }
    Ok(width - min_hitting_set(&minimal))
}

/// Hilbert data of `K[x]/M`.
pub fn hilbert_of_monomial_ideal(ideal: &MonomialIdeal) -> Result<HilbertData> {
    let width = ideal.width();
    let mut num = Numerator { memo: HashMap::new() };
    let numerator = num.compute(minimalize(ideal.generators().to_vec()));
    if numerator.is_empty() {
        return Err(Error::InvalidArgument("the quotient ring is zero".into()));
    }
    let dim = krull_dimension(ideal)?;
    let mut h = numerator.clone();
    for _ in 0..width - dim {
        h = div_one_minus_t(&h).ok_or(Error::Divisibility(width - dim))?;
    }
    // the pole order at t = 1 must be exactly dim
    let h1: BigInt = h.iter().sum();
    if h1.is_zero() || h1.is_negative() {
        return Err(Error::Divisibility(width - dim + 1));
    }
    let to_i64 = |p: &IntPoly| -> Result<Vec<i64>> {
        p.iter()
            .map(|c| {
                c.to_i64().ok_or_else(|| Error::SizeLimit {
                    what: "Hilbert numerator coefficient".into(),
                    value: usize::MAX,
                    limit: i64::MAX as usize,
                })
            })
            .collect()
    };
    let h_vector = to_i64(&h)?;
    Ok(HilbertData {
        numerator: to_i64(&numerator)?,
        denominator_exponent: width,
        krull_dim: dim,
        socle_degree: h_vector.len().saturating_sub(1),
        h_vector,
    })
}

/// Hilbert series of a homogeneous ideal, via its initial ideal under `order`.
pub fn hilbert_series(ideal: &IdealPresentation, order: &TermOrder) -> Result<HilbertData> {
    let gb = hilbert_gb(ideal, order, &GbConfig::default())?;
    hilbert_of_monomial_ideal(&gb.initial_ideal())
}

pub(crate) fn hilbert_gb(ideal: &IdealPresentation, order: &TermOrder, config: &GbConfig) -> Result<GroebnerBasis> {
    if !ideal.is_homogeneous() {
        return Err(Error::InvalidArgument(
            "Hilbert series needs a homogeneous ideal".into(),
        ));
    }
    reduced_gb_with(ideal, order, config)
}

pub fn h_vector(hd: &HilbertData) -> &[i64] {
    &hd.h_vector
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn polynomial_ring() {
        let hd = hilbert_of_monomial_ideal(&MonomialIdeal::new(3, vec![])).unwrap();
        assert_eq!(hd.numerator, vec![1]);
        assert_eq!(hd.krull_dim, 3);
        assert_eq!(hd.h_vector, vec![1]);
        assert_eq!(hd.hilbert_function(2), 6);
    }

    #[test]
    fn principal_and_artinian() {
        let hd = hilbert_of_monomial_ideal(&MonomialIdeal::new(1, vec![m(&[3])])).unwrap();
        assert_eq!(hd.h_vector, vec![1, 1, 1]);
        assert_eq!(hd.krull_dim, 0);
        let hd = hilbert_of_monomial_ideal(&MonomialIdeal::new(2, vec![m(&[1, 1])])).unwrap();
        assert_eq!((hd.krull_dim, hd.h_vector.clone()), (1, vec![1, 1]));
    }

    /// Oracle: count standard monomials degree by degree.
    #[test]
    fn agrees_with_standard_monomial_counts() {
        use crate::groebner::standard_monomials;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let w = rng.gen_range(2..6);
            let gens: Vec<Monomial> = (0..rng.gen_range(1..6))
                .map(|_| Monomial::from_exps((0..w).map(|_| rng.gen_range(0..3)).collect()))
                .filter(|g| !g.is_one())
                .collect();
            let ideal = MonomialIdeal::new(w, gens);
            let hd = hilbert_of_monomial_ideal(&ideal).unwrap();
            for d in 0..8 {
                assert_eq!(
                    hd.hilbert_function(d),
                    standard_monomials(&ideal, d as u32).len() as i128,
                    "{ideal:?} degree {d}"
                );
            }
        }
    }

    #[test]
    fn text_rendering() {
        assert_eq!(poly_text(&[1, 7, 14, 7, 1]), "1 + 7t + 14t^2 + 7t^3 + t^4");
        assert_eq!(poly_text(&[1, -1]), "1 - t");
        assert_eq!(poly_text(&[]), "0");
    }
}
