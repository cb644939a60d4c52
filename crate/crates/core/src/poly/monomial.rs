use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A monomial stored as a dense exponent vector over the ambient ring.
///
/// The derived `Ord` is plain lexicographic comparison of exponent vectors.
/// It is only used as a canonical storage order; term orders live in
/// [`TermOrder`](super::TermOrder).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial {
            exps: vec![0; width],
            degree: 0,
        }
    }

    pub fn var(width: usize, index: usize) -> Self {
        let mut exps = vec![0; width];
        exps[index] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.width(), other.width());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn mul_var(&self, var: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[var] += 1;
        m.degree += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    /// Colon by a monomial: the exponentwise saturating difference `self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.saturating_sub(*b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Bitmask over `var % 64`; a necessary condition for divisibility.
    pub fn divmask(&self) -> u64 {
        self.support().fold(0u64, |acc, v| acc | (1u64 << (v % 64)))
    }

    /// Exponent vector difference `self - other` as signed integers.
    pub fn difference(&self, other: &Monomial) -> Vec<i64> {
        self.exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    /// Remove variable `var`, shrinking the width by one.
    pub fn drop_var(&self, var: usize) -> Monomial {
        let mut exps = self.exps.clone();
        let e = exps.remove(var);
        Monomial {
            exps,
            degree: self.degree - e,
        }
    }

    /// Re-embed into a wider ring: exponent `i` moves to position `map[i]`.
    pub fn embed(&self, width: usize, map: &[usize]) -> Monomial {
        let mut exps = vec![0; width];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    pub fn to_text(&self, labels: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&labels[i]);
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        out
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Monomial::from_exps(Vec::<u32>::deserialize(d)?))
    }
}

/// All monomials of total degree `d` in `width` variables, in lexicographic order.
pub fn monomials_of_degree(width: usize, d: u32) -> Vec<Monomial> {
    fn rec(width: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == width {
            cur[pos] = left;
            out.push(Monomial::from_exps(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(width, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if width == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(width, 0, d, &mut vec![0; width], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_quotients() {
        let a = Monomial::from_exps(vec![1, 0, 2]);
        let b = Monomial::from_exps(vec![2, 1, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Some(Monomial::from_exps(vec![1, 1, 0])));
        assert_eq!(a.lcm(&Monomial::var(3, 1)).exps(), &[1, 1, 2]);
        assert!(a.is_coprime(&Monomial::var(3, 1)));
        assert!(!a.is_squarefree());
    }

    #[test]
    fn degree_enumeration_counts() {
        // C(w + d - 1, d)
        assert_eq!(monomials_of_degree(15, 2).len(), 120);
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
    }

    #[test]
    fn text_rendering() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(Monomial::from_exps(vec![2, 0, 1]).to_text(&labels), "a^2*c");
        assert_eq!(Monomial::one(3).to_text(&labels), "1");
    }
}
