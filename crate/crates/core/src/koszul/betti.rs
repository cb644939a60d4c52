use std::collections::{BTreeMap, HashMap};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::{reduced_gb_with, GbConfig, IdealPresentation};
use crate::linalg::{kernel, Echelon, Field, SparseVec};
use crate::poly::{Monomial, TermOrder};

/// Coordinates for `R = S/I` up to a degree cap: standard monomials per
/// degree and multiplication-by-variable tables.
#[derive(Clone, Debug)]
pub struct GradedAlgebraBasis<F: Field> {
    pub labels: Vec<String>,
    pub order: TermOrder,
    pub cap: u32,
    pub bases: Vec<Vec<Monomial>>,
    /// `mult[d][v][b]`: `y_v` times basis element `b` of degree `d`, in degree `d+1` coordinates.
    mult: Vec<Vec<Vec<SparseVec<F::Elem>>>>,
    /// For `d >= 1`: a variable `v` dividing basis element `b`, and the index of `b / y_v`.
    factor: Vec<Vec<(usize, usize)>>,
    field: F,
}

pub fn graded_basis<F: Field>(field: F, ideal: &IdealPresentation, order: &TermOrder, cap: u32, config: &GbConfig) -> Result<GradedAlgebraBasis<F>> {
    if !ideal.is_homogeneous() {
        return Err(Error::InvalidArgument("graded basis needs a homogeneous ideal".into()));
    }
    if cap == 0 {
        return Err(Error::Bounds("degree cap must be at least 1".into()));
    }
    let gb = reduced_gb_with(ideal, order, config)?;
    let width = ideal.width();
    let bases: Vec<Vec<Monomial>> = (0..=cap).map(|d| gb.standard_monomials(d)).collect();
    let index: Vec<HashMap<&Monomial, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    let mut mult = Vec::with_capacity(cap as usize);
    for d in 0..cap as usize {
        let mut per_var = Vec::with_capacity(width);
        for v in 0..width {
            let mut col = Vec::with_capacity(bases[d].len());
            for b in &bases[d] {
                let mut entries: SparseVec<F::Elem> = Vec::new();
                for (m, c) in gb.normal_form_monomial(&b.mul_var(v)) {
                    entries.push((index[d + 1][&m], field.from_rational(&c)?));
                }
                entries.sort_by_key(|e| e.0);
                col.push(entries);
            }
            per_var.push(col);
        }
        mult.push(per_var);
    }
    let factor = bases
        .iter()
        .enumerate()
        .map(|(d, basis)| {
            if d == 0 {
                return Vec::new();
            }
            basis
                .iter()
                .map(|b| {
                    let v = b.support().next().expect("positive degree");
                    let mut e = b.exps().to_vec();
                    e[v] -= 1;
                    (v, index[d - 1][&Monomial::from_exps(e)])
                })
                .collect()
        })
        .collect();
    Ok(GradedAlgebraBasis {
        labels: ideal.labels.clone(),
        order: order.clone(),
        cap,
        bases,
        mult,
        factor,
        field,
    })
}

impl<F: Field> GradedAlgebraBasis<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    pub fn width(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Coordinates of `y_v * basis[d][b]` in degree `d + 1`.
    pub fn multiply(&self, d: usize, v: usize, b: usize) -> &SparseVec<F::Elem> {
        &self.mult[d][v][b]
    }
}

/// Graded Betti numbers `β_{i,j}` of the residue field, for `i <= i_max`,
/// `j <= j_max`. Pairs outside these bounds are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub i_max: usize,
    pub j_max: usize,
    pub characteristic: u64,
    pub entries: BTreeMap<(usize, usize), u64>,
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<[u64; 3]> = self
            .entries
            .iter()
            .map(|(&(i, j), &v)| [i as u64, j as u64, v])
            .collect();
        let mut st = s.serialize_struct("BettiTable", 4)?;
        st.serialize_field("i_max", &self.i_max)?;
        st.serialize_field("j_max", &self.j_max)?;
        st.serialize_field("characteristic", &self.characteristic)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> Option<u64> {
        self.entries.get(&(i, j)).copied()
    }

    /// First nonzero entry with `i != j`, scanning by homological degree.
    pub fn first_off_diagonal(&self) -> Option<(usize, usize, u64)> {
        self.entries
            .iter()
            .find(|(&(i, j), &v)| i != j && v > 0)
            .map(|(&(i, j), &v)| (i, j, v))
    }

    /// Rows `i = 0..=i_max`, columns `j = 0..=j_max`; `-` marks absent entries.
    pub fn to_text(&self) -> String {
        let mut out = String::from("i\\j");
        for j in 0..=self.j_max {
            out.push_str(&format!("{j:>8}"));
        }
        out.push('\n');
        for i in 0..=self.i_max {
            out.push_str(&format!("{i:<3}"));
            for j in 0..=self.j_max {
                match self.get(i, j) {
                    Some(v) => out.push_str(&format!("{v:>8}")),
                    None => out.push_str(&format!("{:>8}", "-")),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// A free module `⊕ A(-deg g)` over the graded basis, with coordinates in
/// each degree laid out generator by generator.
struct FreeModule {
    gen_deg: Vec<usize>,
    /// offsets[j][g]: start of generator `g`'s block in degree `j`; last entry is the total.
    offsets: Vec<Vec<usize>>,
}

impl FreeModule {
    fn new(gen_deg: Vec<usize>, dims: &[usize], j_max: usize) -> Self {
        let offsets = (0..=j_max)
            .map(|j| {
                let mut acc = 0;
                let mut o = Vec::with_capacity(gen_deg.len() + 1);
                for &d in &gen_deg {
                    o.push(acc);
                    if d <= j {
                        acc += dims[j - d];
                    }
                }
                o.push(acc);
                o
            })
            .collect();
        FreeModule { gen_deg, offsets }
    }

    fn dim(&self, j: usize) -> usize {
        *self.offsets[j].last().unwrap()
    }

    fn decode(&self, j: usize, p: usize) -> (usize, usize) {
        let o = &self.offsets[j];
        let g = o.partition_point(|&x| x <= p) - 1;
        (g, p - o[g])
    }

    fn position(&self, j: usize, g: usize, b: usize) -> usize {
        self.offsets[j][g] + b
    }
}

fn mul_var<F: Field>(alg: &GradedAlgebraBasis<F>, m: &FreeModule, j: usize, vec: &[(usize, F::Elem)], v: usize) -> SparseVec<F::Elem> {
    let f = &alg.field;
    let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
    for (p, c) in vec {
        let (g, b) = m.decode(j, *p);
        let e = j - m.gen_deg[g];
        for (b2, c2) in alg.multiply(e, v, b) {
            let pos = m.position(j + 1, g, *b2);
            let x = f.mul(c, c2);
            match acc.get_mut(&pos) {
                Some(y) => *y = f.add(y, &x),
                None => {
                    acc.insert(pos, x);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect()
}

/// Images under the differential of every basis element of `F_i` in degrees
/// `0..=j_max`, given the images of the generators.
fn images<F: Field>(
    alg: &GradedAlgebraBasis<F>,
    src: &FreeModule,
    dst: &FreeModule,
    gen_images: &[SparseVec<F::Elem>],
    j_max: usize,
) -> Vec<Vec<SparseVec<F::Elem>>> {
    let mut out: Vec<Vec<SparseVec<F::Elem>>> = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let mut layer = Vec::with_capacity(src.dim(j));
        for p in 0..src.dim(j) {
            let (g, b) = src.decode(j, p);
            let e = j - src.gen_deg[g];
            if e == 0 {
                layer.push(gen_images[g].clone());
            } else {
                let (v, bp) = alg.factor[e][b];
                let prev = &out[j - 1][src.position(j - 1, g, bp)];
                layer.push(mul_var(alg, dst, j - 1, prev, v));
            }
        }
        out.push(layer);
    }
    out
}

/// Minimal graded free resolution of `K` over `A`, truncated at homological
/// degree `i_max` and internal degree `j_max`.
pub fn betti_table<F: Field>(alg: &GradedAlgebraBasis<F>, i_max: usize, j_max: usize) -> Result<BettiTable> {
    if j_max > alg.cap as usize {
        return Err(Error::Bounds(format!(
            "j_max = {j_max} exceeds the degree cap {} of the algebra basis",
            alg.cap
        )));
    }
    let field = &alg.field;
    let dims = alg.dims();
    let mut entries = BTreeMap::new();
    entries.insert((0, 0), 1);
    for j in 1..=j_max {
        entries.insert((0, j), 0);
    }
    if i_max == 0 {
        return Ok(BettiTable {
            i_max,
            j_max,
            characteristic: field.characteristic(),
            entries,
        });
    }
    // F_1 -> F_0 = A sends one generator per variable onto A_1
    let n1 = dims.get(1).copied().unwrap_or(0);
    entries.insert((1, 1), n1 as u64);
    for j in 2..=j_max {
        entries.insert((1, j), 0);
    }
    let mut prev = FreeModule::new(vec![0], &dims, j_max);
    let mut cur = FreeModule::new(vec![1; n1], &dims, j_max);
    let mut gen_images: Vec<SparseVec<F::Elem>> = (0..n1).map(|b| vec![(b, field.one())]).collect();
    for i in 1..i_max {
        let imgs = images(alg, &cur, &prev, &gen_images, j_max);
        let mut next_deg = Vec::new();
        let mut next_images = Vec::new();
        let mut z_prev: Vec<SparseVec<F::Elem>> = Vec::new();
        for j in 0..=j_max {
            if j <= i {
                // the degree-i generators of F_i map injectively
                continue;
            }
            let z = kernel(field, &imgs[j]);
            let mut ech = Echelon::new(field.clone());
            'fill: for zz in &z_prev {
                for v in 0..alg.width() {
                    ech.insert(mul_var(alg, &cur, j - 1, zz, v));
                    if ech.rank() == z.len() {
                        break 'fill;
                    }
                }
            }
            let mut count = 0u64;
            for zz in &z {
                if ech.rank() == z.len() {
                    break;
                }
                if ech.insert(zz.clone()) {
                    count += 1;
                    next_deg.push(j);
                    next_images.push(zz.clone());
                }
            }
            entries.insert((i + 1, j), count);
            z_prev = z;
        }
        if i + 1 < i_max {
            prev = cur;
            cur = FreeModule::new(next_deg, &dims, j_max);
            gen_images = next_images;
        }
    }
    Ok(BettiTable {
        i_max,
        j_max,
        characteristic: field.characteristic(),
        entries,
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Table of `R` from the table of `A = R/(ℓ_1..ℓ_c)` for a regular sequence of
/// linear forms: `β^R_{ij} = Σ_l C(c, l) β^A_{i-l, j-l}`.
pub fn lift_table(a: &BettiTable, c: usize) -> BettiTable {
    let mut entries = BTreeMap::new();
    for (&(i, j), _) in &a.entries {
        let mut total = 0;
        for l in 0..=i.min(j) {
            match a.get(i - l, j - l) {
                Some(v) => total += binomial(c as u64, l as u64) * v,
                None => unreachable!("tables are closed under decreasing both indices"),
            }
        }
        entries.insert((i, j), total);
    }
    BettiTable {
        entries,
        ..a.clone()
    }
}

/// Consistency of a table for `R` with one for `A = R/(ℓ_1..ℓ_c)`:
/// `β^R_{ij} = Σ_l C(c, l) β^A_{i-l, j-l}` wherever both sides are available.
pub fn transfer_check(r: &BettiTable, a: &BettiTable, c: usize) -> Result<bool> {
    let mut compared = 0;
    for (&(i, j), &rv) in &r.entries {
        let mut total = 0;
        let mut complete = true;
        for l in 0..=i.min(j) {
            match a.get(i - l, j - l) {
                Some(v) => total += binomial(c as u64, l as u64) * v,
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            compared += 1;
            if total != rv {
                return Ok(false);
            }
        }
    }
    if compared == 0 {
        return Err(Error::Bounds("the two tables share no comparable entries".into()));
    }
    Ok(true)
}
