//! Exact feasibility of `{w : d · w >= 1 for every d}` by phase-one simplex
//! with integer (fraction-free) pivoting and Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Integer arithmetic for the tableau; `None` signals overflow.
trait LpInt: Clone + Ord + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    /// Exact division; the divisor always divides in fraction-free pivoting.
    fn div_exact(&self, o: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl LpInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn zero() -> Self {
        0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl LpInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!((self % o).is_zero());
        self / o
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// `w` with `d · w >= 1` for every constraint, when feasible.
    #[serde(serialize_with = "rationals_as_text")]
    pub witness: Option<Vec<BigRational>>,
    /// Indices of an inclusion-minimal infeasible subset, when infeasible and requested.
    pub infeasible_subset: Vec<usize>,
}

/// Phase one on `D w⁺ - D w⁻ - s + a = 1`, all variables non-negative.
/// Returns `Ok(None)` on overflow, otherwise the witness if feasible.
fn solve<T: LpInt>(diffs: &[Vec<i64>], n: usize) -> Option<Option<Vec<BigRational>>> {
    let m = diffs.len();
    // columns: w⁺ (n), w⁻ (n), s (m), a (m), rhs
    let cols = 2 * n + 2 * m;
    let rhs = cols;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for (i, d) in diffs.iter().enumerate() {
        let mut row = vec![T::zero(); cols + 1];
        for (k, &x) in d.iter().enumerate() {
            row[k] = T::from_i64(x);
            row[n + k] = T::from_i64(-x);
        }
        row[2 * n + i] = T::from_i64(-1);
        row[2 * n + m + i] = T::from_i64(1);
        row[rhs] = T::from_i64(1);
        t.push(row);
    }
    // objective row: reduced costs of minimizing Σ a, with the artificials basic
    let mut obj = vec![T::zero(); cols + 1];
    for row in &t {
        for j in 0..2 * n + m {
            obj[j] = obj[j].sub(&row[j])?;
        }
        obj[rhs] = obj[rhs].sub(&row[rhs])?;
    }
    t.push(obj);
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * n + m + i).collect();
    let mut det = T::from_i64(1);
    let zero = T::zero();
    loop {
        // Bland: lowest-index column with negative reduced cost
        let Some(c) = (0..cols).find(|&j| t[m][j] < zero) else { break };
        let mut best: Option<usize> = None;
        for i in 0..m {
            if t[i][c] <= zero {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    // compare t[i][rhs] / t[i][c] with t[b][rhs] / t[b][c]
                    let lhs = t[i][rhs].mul(&t[b][c])?;
                    let rhs_v = t[b][rhs].mul(&t[i][c])?;
                    if lhs < rhs_v || (lhs == rhs_v && basis[i] < basis[b]) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let r = best.expect("phase one is bounded below by zero");
        let p = t[r][c].clone();
        for i in 0..=m {
            if i == r {
                continue;
            }
            let f = t[i][c].clone();
            for j in 0..=cols {
                let v = p.mul(&t[i][j])?.sub(&f.mul(&t[r][j])?)?;
                t[i][j] = v.div_exact(&det);
            }
        }
        det = p;
        basis[r] = c;
    }
    if t[m][rhs] != zero {
        return Some(None);
    }
    let mut w = vec![BigRational::zero(); n];
    let d = det.to_big();
    for (i, &b) in basis.iter().enumerate() {
        let val = BigRational::new(t[i][rhs].to_big(), d.clone());
        if b < n {
            w[b] += val;
        } else if b < 2 * n {
            w[b - n] -= val;
        }
    }
    Some(Some(w))
}

fn verify(diffs: &[Vec<i64>], w: &[BigRational]) -> bool {
    diffs.iter().all(|d| {
        let dot: BigRational = d
            .iter()
            .zip(w)
            .map(|(&x, wi)| wi * BigRational::from_integer(x.into()))
            .sum();
        dot >= BigRational::one()
    })
}

fn feasible_witness(diffs: &[Vec<i64>], n: usize) -> Result<Option<Vec<BigRational>>> {
    let out = match solve::<i128>(diffs, n) {
        Some(r) => r,
        None => solve::<BigInt>(diffs, n).expect("big integers do not overflow"),
    };
    if let Some(w) = &out {
        if !verify(diffs, w) {
            return Err(Error::InvalidArgument(
                "linear program returned a witness that fails exact verification".into(),
            ));
        }
    }
    Ok(out)
}

fn check_width(diffs: &[Vec<i64>]) -> Result<usize> {
    let n = diffs.first().map_or(0, |d| d.len());
    if let Some(d) = diffs.iter().find(|d| d.len() != n) {
        return Err(Error::WidthMismatch {
            expected: n,
            found: d.len(),
        });
    }
    Ok(n)
}

/// Decide whether some rational `w` has `d · w > 0` for every `d`.
pub fn weight_feasible(diffs: &[Vec<i64>]) -> Result<FeasibilityResult> {
    weight_feasible_with(diffs, true)
}

/// As [`weight_feasible`]; `explain` controls the drop-one search for a
/// minimal infeasible subset.
pub fn weight_feasible_with(diffs: &[Vec<i64>], explain: bool) -> Result<FeasibilityResult> {
    let n = check_width(diffs)?;
    if diffs.is_empty() {
        return Ok(FeasibilityResult {
            feasible: true,
            witness: Some(Vec::new()),
            infeasible_subset: Vec::new(),
        });
    }
    match feasible_witness(diffs, n)? {
        Some(w) => Ok(FeasibilityResult {
            feasible: true,
            witness: Some(w),
            infeasible_subset: Vec::new(),
        }),
        None => {
            let mut keep: Vec<usize> = (0..diffs.len()).collect();
            if explain {
                let mut k = 0;
                while k < keep.len() {
                    let trial: Vec<usize> = keep.iter().copied().filter(|&x| x != keep[k]).collect();
                    let sub: Vec<Vec<i64>> = trial.iter().map(|&i| diffs[i].clone()).collect();
                    if feasible_witness(&sub, n)?.is_none() {
                        keep = trial;
                    } else {
                        k += 1;
                    }
                }
            }
            Ok(FeasibilityResult {
                feasible: false,
                witness: None,
                infeasible_subset: keep,
            })
        }
    }
}

/// Feasibility only, without witness verification overhead beyond the solve.
pub(crate) fn is_feasible(diffs: &[Vec<i64>]) -> Result<bool> {
    if diffs.is_empty() {
        return Ok(true);
    }
    Ok(feasible_witness(diffs, check_width(diffs)?)?.is_some())
}

fn rationals_as_text<S: serde::Serializer>(w: &Option<Vec<BigRational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    w.as_ref()
        .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .serialize(s)
}

/// Integer weights, shifted to be non-negative; equal-degree comparisons are unchanged.
pub fn integer_weights(w: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = w.iter().fold(BigInt::one(), |acc, x| Integer::lcm(&acc, x.denom()));
    let ints: Vec<BigInt> = w.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let min = ints.iter().min().cloned().unwrap_or_default();
    let shift = if min.is_negative() { -min } else { <BigInt as Zero>::zero() };
    ints.into_iter().map(|x| x + &shift).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_difference() {
        let r = weight_feasible(&[vec![1, -1, 0]]).unwrap();
        assert!(r.feasible);
        assert!(verify(&[vec![1, -1, 0]], r.witness.as_ref().unwrap()));
    }

    #[test]
    fn antisymmetric_pair() {
        let r = weight_feasible(&[vec![1, -1, 0], vec![-1, 1, 0]]).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.infeasible_subset, vec![0, 1]);
    }

    #[test]
    fn empty_and_width() {
        assert!(weight_feasible(&[]).unwrap().feasible);
        assert!(weight_feasible(&[vec![1, 0], vec![1]]).is_err());
        assert!(!weight_feasible(&[vec![0, 0]]).unwrap().feasible);
    }

    #[test]
    fn cyclic_chain_is_infeasible() {
        // a > b > c > a, plus an unrelated satisfiable constraint
        let d = vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![-1, 0, 1, 0], vec![0, 0, 0, 1]];
        let r = weight_feasible(&d).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.infeasible_subset, vec![0, 1, 2]);
    }

    /// Fourier–Motzkin on the strict system `d · w > 0`: eliminating every
    /// variable leaves only zero rows, and any remaining row reads `0 > 0`.
    fn fourier_motzkin(d: &[Vec<i64>], n: usize) -> bool {
        let mut rows: Vec<Vec<i64>> = d.to_vec();
        for k in 0..n {
            let (pos, rest): (Vec<_>, Vec<_>) = rows.into_iter().partition(|r| r[k] > 0);
            let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|r| r[k] < 0);
            rows = zero;
            for p in &pos {
                for q in &neg {
                    rows.push(p.iter().zip(q).map(|(a, b)| a * -q[k] + b * p[k]).collect());
                }
            }
        }
        rows.is_empty()
    }

    #[test]
    fn random_systems_agree_with_fourier_motzkin() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut infeasible = 0;
        for _ in 0..300 {
            let n = rng.gen_range(1..5);
            let m = rng.gen_range(1..7);
            let d: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-2..3)).collect()).collect();
            let r = weight_feasible(&d).unwrap();
            assert_eq!(r.feasible, fourier_motzkin(&d, n), "{d:?}");
            if r.feasible {
                assert!(verify(&d, r.witness.as_ref().unwrap()));
            } else {
                infeasible += 1;
                let sub: Vec<Vec<i64>> = r.infeasible_subset.iter().map(|&i| d[i].clone()).collect();
                assert!(!fourier_motzkin(&sub, n));
            }
        }
        assert!(infeasible > 20);
    }

    #[test]
    fn big_integer_path_matches() {
        let d = vec![vec![3, -1, 0, 2], vec![0, 2, -3, 1], vec![-1, 0, 1, 1]];
        let small = solve::<i128>(&d, 4).unwrap();
        let big = solve::<BigInt>(&d, 4).unwrap();
        assert_eq!(small, big);
        let w = integer_weights(small.as_ref().unwrap());
        assert!(w.iter().all(|x| !x.is_negative()));
    }
}
