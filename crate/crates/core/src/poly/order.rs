use std::cmp::Ordering;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

/// The comparison rule of a term order, acting on the variables listed in
/// `ranking` (least variable first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderKind {
    Lex {
        ranking: Vec<usize>,
    },
    /// Graded reverse lexicographic.
    Grevlex {
        ranking: Vec<usize>,
    },
    /// Non-graded reverse lexicographic. Not a well-order; it agrees with
    /// grevlex on homogeneous input and exists only for experiments.
    RevlexNongraded {
        ranking: Vec<usize>,
    },
    /// Non-negative integer weights, ties broken by grevlex over `ranking`.
    Weight {
        weights: Vec<i64>,
        ranking: Vec<usize>,
    },
    /// Compare on the `high` variables first, then on the `low` ones.
    Block {
        high: Box<OrderKind>,
        low: Box<OrderKind>,
    },
}

/// A term order on monomials of a fixed width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOrder {
    width: usize,
    kind: OrderKind,
}

fn natural(width: usize) -> Vec<usize> {
    (0..width).collect()
}

fn check_ranking(width: usize, ranking: &[usize]) -> Result<()> {
    let mut seen = vec![false; width];
    for &v in ranking {
        if v >= width || seen[v] {
            return Err(Error::InvalidArgument(format!(
                "variable ranking is not a permutation of 0..{width}"
            )));
        }
        seen[v] = true;
    }
    if ranking.len() != width {
        return Err(Error::InvalidArgument(format!(
            "variable ranking has {} entries, ring has {width} variables",
            ranking.len()
        )));
    }
    Ok(())
}

impl OrderKind {
    fn ranking(&self) -> Vec<usize> {
        match self {
            OrderKind::Lex { ranking }
            | OrderKind::Grevlex { ranking }
            | OrderKind::RevlexNongraded { ranking }
            | OrderKind::Weight { ranking, .. } => ranking.clone(),
            OrderKind::Block { high, low } => {
                let mut r = low.ranking();
                r.extend(high.ranking());
                r
            }
        }
    }

    fn name(&self) -> &'static str {
        match self {
            OrderKind::Lex { .. } => "lex",
            OrderKind::Grevlex { .. } => "grevlex",
            OrderKind::RevlexNongraded { .. } => "revlex-nongraded",
            OrderKind::Weight { .. } => "weight",
            OrderKind::Block { .. } => "block",
        }
    }

    fn cmp(&self, a: &Monomial, b: &Monomial, full: bool) -> Ordering {
        match self {
            OrderKind::Lex { ranking } => {
                for &v in ranking.iter().rev() {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex { ranking } => {
                let (da, db) = if full {
                    (a.degree(), b.degree())
                } else {
                    (
                        ranking.iter().map(|&v| a.exp(v)).sum(),
                        ranking.iter().map(|&v| b.exp(v)).sum(),
                    )
                };
                da.cmp(&db).then_with(|| revlex(ranking, a, b))
            }
            OrderKind::RevlexNongraded { ranking } => revlex(ranking, a, b),
            OrderKind::Weight { weights, ranking } => {
                let wa: i64 = ranking.iter().map(|&v| weights[v] * a.exp(v) as i64).sum();
                let wb: i64 = ranking.iter().map(|&v| weights[v] * b.exp(v) as i64).sum();
                wa.cmp(&wb).then_with(|| {
                    OrderKind::Grevlex {
                        ranking: ranking.clone(),
                    }
                    .cmp(a, b, full)
                })
            }
            OrderKind::Block { high, low } => high.cmp(a, b, false).then_with(|| low.cmp(a, b, false)),
        }
    }
}

/// Larger exponent on the least variable means the smaller monomial.
fn revlex(ranking: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    for &v in ranking {
        match a.exp(v).cmp(&b.exp(v)) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn grevlex(width: usize) -> Self {
        TermOrder {
            width,
            kind: OrderKind::Grevlex {
                ranking: natural(width),
            },
        }
    }

    pub fn lex(width: usize) -> Self {
        TermOrder {
            width,
            kind: OrderKind::Lex {
                ranking: natural(width),
            },
        }
    }

    pub fn revlex_nongraded(width: usize) -> Self {
        TermOrder {
            width,
            kind: OrderKind::RevlexNongraded {
                ranking: natural(width),
            },
        }
    }

    /// `ranking[0]` is the least variable.
    pub fn grevlex_ranked(ranking: Vec<usize>) -> Result<Self> {
        let width = ranking.len();
        check_ranking(width, &ranking)?;
        Ok(TermOrder {
            width,
            kind: OrderKind::Grevlex { ranking },
        })
    }

    pub fn lex_ranked(ranking: Vec<usize>) -> Result<Self> {
        let width = ranking.len();
        check_ranking(width, &ranking)?;
        Ok(TermOrder {
            width,
            kind: OrderKind::Lex { ranking },
        })
    }

    pub fn revlex_nongraded_ranked(ranking: Vec<usize>) -> Result<Self> {
        let width = ranking.len();
        check_ranking(width, &ranking)?;
        Ok(TermOrder {
            width,
            kind: OrderKind::RevlexNongraded { ranking },
        })
    }

    /// Weight order with grevlex tiebreak. Weights must be non-negative so
    /// that the result is a well-order.
    pub fn weighted(weights: Vec<i64>, ranking: Vec<usize>) -> Result<Self> {
        let width = ranking.len();
        check_ranking(width, &ranking)?;
        if weights.len() != width {
            return Err(Error::WidthMismatch {
                expected: width,
                found: weights.len(),
            });
        }
        if weights.iter().any(|&w| w < 0) {
            return Err(Error::InvalidArgument(
                "weight vector must be non-negative".into(),
            ));
        }
        Ok(TermOrder {
            width,
            kind: OrderKind::Weight { weights, ranking },
        })
    }

    /// Weight order from a rational vector. Denominators are cleared and the
    /// vector is shifted by a multiple of (1,...,1) to make it non-negative;
    /// the shift does not change comparisons between monomials of equal degree.
    pub fn from_rational_weights(weights: &[BigRational], ranking: Vec<usize>) -> Result<Self> {
        let lcm = weights
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, w| acc.lcm(w.denom()));
        let ints: Vec<num_bigint::BigInt> = weights
            .iter()
            .map(|w| (w * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let min = ints.iter().min().cloned().unwrap_or_default();
        let shift = if min.is_negative() { -min } else { Zero::zero() };
        let mut out = Vec::with_capacity(ints.len());
        for w in ints {
            let v = (w + &shift).to_i64().ok_or_else(|| {
                Error::InvalidArgument("weight vector does not fit in 64-bit integers".into())
            })?;
            out.push(v);
        }
        TermOrder::weighted(out, ranking)
    }

    /// Elimination order: the `drop` variables are compared first with
    /// grevlex, then the remaining variables with `keep`.
    pub fn block(drop: &[usize], keep: &TermOrder) -> Result<Self> {
        let width = keep.width;
        let mut seen = vec![false; width];
        for &v in drop {
            if v >= width || seen[v] {
                return Err(Error::InvalidArgument("invalid elimination block".into()));
            }
            seen[v] = true;
        }
        let kept: Vec<usize> = keep
            .kind
            .ranking()
            .into_iter()
            .filter(|v| !seen[*v])
            .collect();
        let low = restrict(&keep.kind, &kept);
        let mut high: Vec<usize> = drop.to_vec();
        high.sort_unstable();
        Ok(TermOrder {
            width,
            kind: OrderKind::Block {
                high: Box::new(OrderKind::Grevlex { ranking: high }),
                low: Box::new(low),
            },
        })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// Variables from least to greatest (for block orders, the low block first).
    pub fn ranking(&self) -> Vec<usize> {
        self.kind.ranking()
    }

    pub fn is_graded(&self) -> bool {
        matches!(self.kind, OrderKind::Grevlex { .. })
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.width(), self.width);
        debug_assert_eq!(b.width(), self.width);
        self.kind.cmp(a, b, true)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        for m in [a, b] {
            if m.width() != self.width {
                return Err(Error::WidthMismatch {
                    expected: self.width,
                    found: m.width(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    /// The same order after deleting variable `var` (indices above shift down).
    pub fn drop_var(&self, var: usize) -> TermOrder {
        fn shrink(kind: &OrderKind, var: usize) -> OrderKind {
            let fix = |r: &Vec<usize>| -> Vec<usize> {
                r.iter()
                    .filter(|&&v| v != var)
                    .map(|&v| if v > var { v - 1 } else { v })
                    .collect()
            };
            match kind {
                OrderKind::Lex { ranking } => OrderKind::Lex { ranking: fix(ranking) },
                OrderKind::Grevlex { ranking } => OrderKind::Grevlex { ranking: fix(ranking) },
                OrderKind::RevlexNongraded { ranking } => OrderKind::RevlexNongraded {
                    ranking: fix(ranking),
                },
                OrderKind::Weight { weights, ranking } => {
                    let mut w = weights.clone();
                    w.remove(var);
                    OrderKind::Weight {
                        weights: w,
                        ranking: fix(ranking),
                    }
                }
                OrderKind::Block { high, low } => OrderKind::Block {
                    high: Box::new(shrink(high, var)),
                    low: Box::new(shrink(low, var)),
                },
            }
        }
        TermOrder {
            width: self.width - 1,
            kind: shrink(&self.kind, var),
        }
    }

    /// Restrict to the variables `keep` (in the given positions), relabelled 0..keep.len().
    pub fn restrict_to(&self, keep: &[usize]) -> TermOrder {
        let mut pos = vec![usize::MAX; self.width];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        fn rec(kind: &OrderKind, pos: &[usize], n: usize) -> OrderKind {
            let fix = |r: &Vec<usize>| -> Vec<usize> {
                r.iter()
                    .filter(|&&v| pos[v] != usize::MAX)
                    .map(|&v| pos[v])
                    .collect()
            };
            match kind {
                OrderKind::Lex { ranking } => OrderKind::Lex { ranking: fix(ranking) },
                OrderKind::Grevlex { ranking } => OrderKind::Grevlex { ranking: fix(ranking) },
                OrderKind::RevlexNongraded { ranking } => OrderKind::RevlexNongraded {
                    ranking: fix(ranking),
                },
                OrderKind::Weight { weights, ranking } => {
                    let mut w = vec![0; n];
                    for (v, &p) in pos.iter().enumerate() {
                        if p != usize::MAX {
                            w[p] = weights[v];
                        }
                    }
                    OrderKind::Weight {
                        weights: w,
                        ranking: fix(ranking),
                    }
                }
                OrderKind::Block { high, low } => {
                    let h = rec(high, pos, n);
                    let l = rec(low, pos, n);
                    if h.ranking().is_empty() {
                        l
                    } else if l.ranking().is_empty() {
                        h
                    } else {
                        OrderKind::Block {
                            high: Box::new(h),
                            low: Box::new(l),
                        }
                    }
                }
            }
        }
        TermOrder {
            width: keep.len(),
            kind: rec(&self.kind, &pos, keep.len()),
        }
    }

    /// Human-readable descriptor, e.g. `grevlex(y_{1} < y_{2} < y_{3})`.
    pub fn describe(&self, labels: &[String]) -> String {
        fn rec(kind: &OrderKind, labels: &[String]) -> String {
            let chain = |r: &Vec<usize>| {
                r.iter()
                    .map(|&v| labels.get(v).cloned().unwrap_or_else(|| format!("v{v}")))
                    .collect::<Vec<_>>()
                    .join(" < ")
            };
            match kind {
                OrderKind::Lex { ranking } => format!("lex({})", chain(ranking)),
                OrderKind::Grevlex { ranking } => format!("grevlex({})", chain(ranking)),
                OrderKind::RevlexNongraded { ranking } => {
                    format!("revlex-nongraded({})", chain(ranking))
                }
                OrderKind::Weight { weights, ranking } => {
                    let w: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                    format!("weight[{}]+grevlex({})", w.join(","), chain(ranking))
                }
                OrderKind::Block { high, low } => {
                    format!("block[{} ; {}]", rec(high, labels), rec(low, labels))
                }
            }
        }
        rec(&self.kind, labels)
    }
}

fn restrict(kind: &OrderKind, kept: &[usize]) -> OrderKind {
    let keep: std::collections::HashSet<usize> = kept.iter().copied().collect();
    let fix = |r: &Vec<usize>| -> Vec<usize> { r.iter().copied().filter(|v| keep.contains(v)).collect() };
    match kind {
        OrderKind::Lex { ranking } => OrderKind::Lex { ranking: fix(ranking) },
        OrderKind::Grevlex { ranking } => OrderKind::Grevlex { ranking: fix(ranking) },
        OrderKind::RevlexNongraded { ranking } => OrderKind::RevlexNongraded { ranking: fix(ranking) },
        OrderKind::Weight { weights, ranking } => OrderKind::Weight {
            weights: weights.clone(),
            ranking: fix(ranking),
        },
        OrderKind::Block { high, low } => OrderKind::Block {
            high: Box::new(restrict(high, kept)),
            low: Box::new(restrict(low, kept)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    fn y(i: usize) -> Monomial {
        // y_1..y_7 as variables 0..6
        Monomial::var(7, i - 1)
    }

    #[test]
    fn grevlex_matches_initial_ideal_conventions() {
        let o = TermOrder::grevlex(7);
        // y1^2 < y3 y7
        assert_eq!(o.cmp(&y(1).mul(&y(1)), &y(3).mul(&y(7))), Ordering::Less);
        // y2^2 > y1 y4
        assert_eq!(o.cmp(&y(2).mul(&y(2)), &y(1).mul(&y(4))), Ordering::Greater);
        let a = y(5).mul(&y(2));
        assert_eq!(o.cmp(&a, &a), Ordering::Equal);
    }

    #[test]
    fn lex_and_ranking() {
        let o = TermOrder::lex(3);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        let r = TermOrder::lex_ranked(vec![2, 1, 0]).unwrap();
        assert_eq!(r.cmp(&m(&[0, 0, 1]), &m(&[1, 0, 0])), Ordering::Less);
        assert!(TermOrder::lex_ranked(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn width_mismatch_is_reported() {
        let o = TermOrder::grevlex(3);
        assert!(matches!(
            o.compare(&m(&[1, 0]), &m(&[0, 0, 1])),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn block_order_eliminates() {
        // drop variable 2; any monomial containing it beats one that does not
        let o = TermOrder::block(&[2], &TermOrder::grevlex(3)).unwrap();
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[4, 4, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Less);
    }

    #[test]
    fn rational_weights_are_shifted_and_scaled() {
        let w = vec![
            BigRational::new((-1).into(), 2.into()),
            BigRational::from_integer(1.into()),
        ];
        let o = TermOrder::from_rational_weights(&w, vec![0, 1]).unwrap();
        match o.kind() {
            OrderKind::Weight { weights, .. } => assert_eq!(weights, &vec![0, 3]),
            _ => unreachable!(),
        }
    }

    fn orders(width: usize, perm_seed: u64) -> Vec<TermOrder> {
        let mut ranking: Vec<usize> = (0..width).collect();
        // cheap deterministic shuffle
        let mut s = perm_seed;
        for i in (1..width).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ranking.swap(i, (s >> 33) as usize % (i + 1));
        }
        let weights: Vec<i64> = (0..width).map(|i| ((perm_seed as usize + 3 * i) % 5) as i64).collect();
        vec![
            TermOrder::grevlex_ranked(ranking.clone()).unwrap(),
            TermOrder::lex_ranked(ranking.clone()).unwrap(),
            TermOrder::weighted(weights, ranking.clone()).unwrap(),
            TermOrder::block(&[ranking[0], ranking[width - 1]], &TermOrder::grevlex(width)).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(
            a in proptest::collection::vec(0u32..4, 5),
            b in proptest::collection::vec(0u32..4, 5),
            c in proptest::collection::vec(0u32..4, 5),
            seed in 0u64..1000,
        ) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            let one = Monomial::one(5);
            for o in orders(5, seed) {
                // totality + antisymmetry
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                // multiplicativity
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
                // 1 is minimal
                prop_assert!(o.cmp(&one, &a) != Ordering::Greater);
                // transitivity
                if o.cmp(&a, &b) == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                    prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
                }
            }
        }
    }
}
