//! Sparse exact linear algebra over ℚ or a prime field.

use std::collections::HashMap;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Field: Clone + Send + Sync + Debug {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, a: i64) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_i64(&self, a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be a prime below 2^32.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !crate::poly::is_prime(p) {
            return Err(Error::InvalidArgument(format!(
                "characteristic must be a prime below 2^32, got {p}"
            )));
        }
        Ok(PrimeField { p })
    }

    fn reduce_int(&self, n: &num_bigint::BigInt) -> u64 {
        let p = num_bigint::BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        r.to_u64().expect("residue fits")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (*a, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
    fn from_i64(&self, a: i64) -> u64 {
        (a.rem_euclid(self.p as i64)) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let d = self.reduce_int(q.denom());
        if d == 0 {
            return Err(Error::NotInvertible(format!("{} mod {}", q.denom(), self.p)));
        }
        Ok(self.mul(&self.reduce_int(q.numer()), &self.inv(&d)))
    }
}

/// Sparse vector: `(index, nonzero value)` pairs, strictly increasing index.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a + c * b` for sparse vectors.
pub fn axpy<F: Field>(field: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

/// Row echelon form built incrementally. Each stored row has its smallest
/// index as pivot, normalized to 1. An optional tracker records each row as
/// a combination of the inserted input vectors.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<SparseVec<F::Elem>>,
    combos: Vec<SparseVec<F::Elem>>,
    pivot_row: HashMap<usize, usize>,
    tracking: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            combos: Vec::new(),
            pivot_row: HashMap::new(),
            tracking: false,
        }
    }

    pub fn with_tracking(field: F) -> Self {
        Echelon {
            tracking: true,
            ..Echelon::new(field)
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    fn reduce_pair(
        &self,
        mut v: SparseVec<F::Elem>,
        mut combo: SparseVec<F::Elem>,
    ) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let mut i = 0;
        while i < v.len() {
            match self.pivot_row.get(&v[i].0) {
                Some(&r) => {
                    let c = self.field.neg(&v[i].1);
                    v = axpy(&self.field, &v, &c, &self.rows[r]);
                    if self.tracking {
                        combo = axpy(&self.field, &combo, &c, &self.combos[r]);
                    }
                }
                None => i += 1,
            }
        }
        (v, combo)
    }

    /// Remainder of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_pair(v, Vec::new()).0
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    /// Insert `v`; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        self.insert_tracked(v, Vec::new()).is_none()
    }

    /// Insert `v`, tagged with `combo` (its expression in some source basis).
    /// If `v` is dependent, returns the combination that reduces to zero.
    pub fn insert_tracked(
        &mut self,
        v: SparseVec<F::Elem>,
        combo: SparseVec<F::Elem>,
    ) -> Option<SparseVec<F::Elem>> {
        let (v, combo) = self.reduce_pair(v, combo);
        if v.is_empty() {
            return Some(combo);
        }
        let inv = self.field.inv(&v[0].1);
        let pivot = v[0].0;
        self.rows.push(scale(&self.field, &inv, &v));
        if self.tracking {
            self.combos.push(scale(&self.field, &inv, &combo));
        }
        self.pivot_row.insert(pivot, self.rows.len() - 1);
        None
    }
}

/// Kernel of the linear map sending source basis vector `j` to `columns[j]`,
/// as sparse vectors in source coordinates. Computed from the reduced row
/// echelon form of the matrix: one basis vector per free column `f`, equal to
/// `e_f` minus the pivot entries of that column, so `f` occurs in no other
/// basis vector.
pub fn kernel<F: Field>(field: &F, columns: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut rows: HashMap<usize, SparseVec<F::Elem>> = HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (i, x) in col {
            rows.entry(*i).or_default().push((j, x.clone()));
        }
    }
    let mut rows: Vec<SparseVec<F::Elem>> = rows.into_values().collect();
    rows.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a[0].0.cmp(&b[0].0)));
    let rref = reduced_basis(field, rows);
    let mut pivot_of = vec![usize::MAX; columns.len()];
    for (r, row) in rref.iter().enumerate() {
        pivot_of[row[0].0] = r;
    }
    // entries of each free column, gathered row by row
    let mut free_entries: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
    for row in &rref {
        for (j, x) in &row[1..] {
            free_entries.entry(*j).or_default().push((row[0].0, field.neg(x)));
        }
    }
    (0..columns.len())
        .filter(|&f| pivot_of[f] == usize::MAX)
        .map(|f| {
            let mut v = free_entries.remove(&f).unwrap_or_default();
            v.push((f, field.one()));
            v.sort_by_key(|e| e.0);
            v
        })
        .collect()
}

/// Reduced echelon basis of the span of `vecs`.
pub fn reduced_basis<F: Field>(field: &F, vecs: Vec<SparseVec<F::Elem>>) -> Vec<SparseVec<F::Elem>> {
    let mut ech = Echelon::new(field.clone());
    for v in vecs {
        ech.insert(v);
    }
    let mut rows = ech.rows;
    rows.sort_by_key(|r| std::cmp::Reverse(r[0].0));
    // back-substitute: rows sorted by decreasing pivot
    let mut done: Vec<SparseVec<F::Elem>> = Vec::with_capacity(rows.len());
    let mut pivots: HashMap<usize, usize> = HashMap::new();
    for r in rows {
        let mut v = r;
        let mut i = 1;
        while i < v.len() {
            if let Some(&k) = pivots.get(&v[i].0) {
                let c = field.neg(&v[i].1);
                v = axpy(field, &v, &c, &done[k]);
            } else {
                i += 1;
            }
        }
        pivots.insert(v[0].0, done.len());
        done.push(v);
    }
    done.sort_by_key(|r| r[0].0);
    done
}

pub fn rank<F: Field>(field: &F, vecs: &[SparseVec<F::Elem>]) -> usize {
    let mut ech = Echelon::new(field.clone());
    for v in vecs {
        ech.insert(v.clone());
    }
    ech.rank()
}

/// Clear denominators and make the content 1 with a positive leading entry.
pub fn primitive(v: &[(usize, BigRational)]) -> SparseVec<BigRational> {
    use num_integer::Integer;
    if v.is_empty() {
        return Vec::new();
    }
    let mut l = num_bigint::BigInt::one();
    for (_, x) in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|(_, x)| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = num_bigint::BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if ints[0].is_negative() {
        g = -g;
    }
    v.iter()
        .zip(ints)
        .map(|((i, _), x)| (*i, BigRational::from_integer(x / &g)))
        .collect()
}
