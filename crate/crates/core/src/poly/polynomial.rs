use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Monomial, TermOrder};
use crate::error::{Error, Result};

pub type Coeff = BigRational;

pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// A polynomial over the rationals in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Polynomial {
    width: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Subtract,
    Multiply,
}

/// Exact arithmetic with an explicit width check.
pub fn arith(op: ArithOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.width != g.width {
        return Err(Error::WidthMismatch {
            expected: f.width,
            found: g.width,
        });
    }
    Ok(match op {
        ArithOp::Add => f + g,
        ArithOp::Subtract => f - g,
        ArithOp::Multiply => f * g,
    })
}

impl Polynomial {
    pub fn zero(width: usize) -> Self {
        Polynomial {
            width,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(width: usize, c: Coeff) -> Self {
        Self::term(Monomial::one(width), c)
    }

    pub fn one(width: usize) -> Self {
        Self::constant(width, Coeff::one())
    }

    pub fn var(width: usize, index: usize) -> Self {
        Self::term(Monomial::var(width, index), Coeff::one())
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        let width = m.width();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { width, terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Coeff::one())
    }

    /// `a - b` for monomials, the shape of every toric generator.
    pub fn binomial(a: Monomial, b: Monomial) -> Self {
        let mut p = Self::monomial(a);
        p.add_term(b, -Coeff::one());
        p
    }

    pub fn from_terms(width: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Polynomial::zero(width);
        for (m, c) in terms {
            assert_eq!(m.width(), width, "monomial width does not match polynomial");
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(Monomial, Coeff)> {
        let mut v: Vec<(Monomial, Coeff)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &TermOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.width);
        }
        Polynomial {
            width: self.width,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            width: self.width,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    /// Divide by the leading coefficient under `order`.
    pub fn monic(&self, order: &TermOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Normalize sign so that the lexicographically largest stored term is positive.
    pub fn normalize_sign(&self) -> Self {
        match self.terms.iter().next_back() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.width);
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Replace variable `var` by the polynomial `value` (same width).
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Self {
        let mut out = Polynomial::zero(self.width);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(self.width)];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.exps().to_vec();
            rest[var] = 0;
            let part = powers[e].mul_monomial(&Monomial::from_exps(rest)).scale(c);
            out = &out + &part;
        }
        out
    }

    /// Delete a variable that does not occur in the polynomial.
    pub fn drop_var(&self, var: usize) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exp(var) != 0 {
                return Err(Error::InvalidArgument(format!(
                    "variable {var} still occurs in polynomial"
                )));
            }
            terms.insert(m.drop_var(var), c.clone());
        }
        Ok(Polynomial {
            width: self.width - 1,
            terms,
        })
    }

    /// Move into a ring of width `width`, sending variable `i` to `map[i]`.
    pub fn embed(&self, width: usize, map: &[usize]) -> Self {
        Polynomial::from_terms(
            width,
            self.terms.iter().map(|(m, c)| (m.embed(width, map), c.clone())),
        )
    }

    /// Keep only the variables in `keep` (which must cover the support).
    pub fn restrict(&self, keep: &[usize]) -> Option<Self> {
        let mut pos = vec![usize::MAX; self.width];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0; keep.len()];
            for v in m.support() {
                if pos[v] == usize::MAX {
                    return None;
                }
                exps[pos[v]] = m.exp(v);
            }
            terms.insert(Monomial::from_exps(exps), c.clone());
        }
        Some(Polynomial {
            width: keep.len(),
            terms,
        })
    }

    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.width];
        for m in self.terms.keys() {
            for v in m.support() {
                seen[v] = true;
            }
        }
        (0..self.width).filter(|&v| seen[v]).collect()
    }

    pub fn to_text(&self, labels: &[String]) -> String {
        self.to_text_ordered(labels, None)
    }

    /// Render with terms in decreasing order under `order` (or storage order).
    pub fn to_text_ordered(&self, labels: &[String], order: Option<&TermOrder>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<(Monomial, Coeff)> = match order {
            Some(o) => self.sorted_terms(o),
            None => self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        };
        let mut out = String::new();
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.to_text(labels);
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                exps: m.exps().to_vec(),
            })
            .collect()
    }

    pub fn from_json_terms(width: usize, terms: &[JsonTerm]) -> Result<Self> {
        let mut p = Polynomial::zero(width);
        for t in terms {
            if t.exps.len() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: t.exps.len(),
                });
            }
            let c: Coeff = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            p.add_term(Monomial::from_exps(t.exps.clone()), c);
        }
        Ok(p)
    }
}

/// JSON form of one term: `{"coeff": "p/q", "exps": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub exps: Vec<u32>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'a> Add for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.width, rhs.width, "polynomial width mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.width, rhs.width, "polynomial width mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.width, rhs.width, "polynomial width mismatch");
        let mut out = Polynomial::zero(self.width);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            width: self.width,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    #[test]
    fn basic_arithmetic() {
        let s = &(&y(0) - &y(1)) + &(&y(1) - &y(2));
        assert_eq!(s, &y(0) - &y(2));
        let p = &(&y(0) - &y(1)) * &(&y(0) + &y(1));
        assert_eq!(p, &(&y(0) * &y(0)) - &(&y(1) * &y(1)));
        let f = &p + &y(2);
        assert!((&f - &f).is_zero());
        assert!(arith(ArithOp::Add, &y(0), &Polynomial::var(4, 0)).is_err());
    }

    #[test]
    fn substitution_and_drop() {
        // y0*y2 - y1^2 with y2 := y0 - y1
        let f = &(&y(0) * &y(2)) - &(&y(1) * &y(1));
        let g = f.substitute(2, &(&y(0) - &y(1)));
        let expect = &(&(&y(0) * &y(0)) - &(&y(0) * &y(1))) - &(&y(1) * &y(1));
        assert_eq!(g, expect);
        let dropped = g.drop_var(2).unwrap();
        assert_eq!(dropped.width(), 2);
        assert!(f.drop_var(2).is_err());
    }

    #[test]
    fn text_and_json() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let f = &(&y(0) * &y(0)).scale(&BigRational::new(2.into(), 3.into())) - &y(2);
        let o = TermOrder::grevlex(3);
        assert_eq!(f.to_text_ordered(&labels, Some(&o)), "2/3*a^2 - c");
        let back = Polynomial::from_json_terms(3, &f.to_json_terms()).unwrap();
        assert_eq!(back, f);
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -3i64..4), 0..5).prop_map(|ts| {
            Polynomial::from_terms(3, ts.into_iter().map(|(e, c)| (Monomial::from_exps(e), rat(c))))
        })
    }

    proptest! {
        #[test]
        fn multiplication_commutes_with_evaluation(
            f in small_poly(),
            g in small_poly(),
            pt in proptest::collection::vec((-5i64..6, 1i64..4), 3),
        ) {
            let point: Vec<Coeff> = pt.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
            let fg = &f * &g;
            prop_assert_eq!(fg.eval(&point), f.eval(&point) * g.eval(&point));
            let s = &f + &g;
            prop_assert_eq!(s.eval(&point), f.eval(&point) + g.eval(&point));
        }
    }
}
