use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{hilbert_data, quotient_by_linear_form, socle, HilbertData, Socle};
use crate::error::{Error, Result};
use crate::groebner::{GbConfig, IdealPresentation};
use crate::poly::{rat, Monomial, Polynomial};

#[derive(Clone, Debug)]
pub struct GorensteinConfig {
    /// Maximum number of regularity tests in the parameter search.
    pub budget: usize,
    pub seed: u64,
    /// Random forms tried per slot once the structured candidates run out.
    pub random_attempts: usize,
    pub gb: GbConfig,
}

impl Default for GorensteinConfig {
    fn default() -> Self {
        GorensteinConfig {
            budget: 400,
            seed: 0x6b6f737a,
            random_attempts: 20,
            gb: GbConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityStep {
    /// The form, over the labels of the ring it acts on.
    pub form: String,
    pub eliminated: String,
    pub numerator_before: Vec<i64>,
    pub numerator_after: Vec<i64>,
    pub regular: bool,
}

/// A regular sequence of linear forms of length `dim R` and the resulting
/// artinian quotient.
#[derive(Clone, Debug, Serialize)]
pub struct ArtinianReduction {
    /// The forms in the variables of the original ring.
    pub forms: Vec<Polynomial>,
    pub steps: Vec<RegularityStep>,
    pub artinian: IdealPresentation,
    pub hilbert: HilbertData,
    pub regularity_tests: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateBasis {
    HVectorAsymmetry,
    Socle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GorensteinVerdict {
    Gorenstein,
    NotGorenstein,
    /// No linear system of parameters was found within the search budget.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct GorensteinCertificate {
    pub verdict: GorensteinVerdict,
    /// `None` when inconclusive.
    pub basis: Option<CertificateBasis>,
    pub h_vector: Vec<i64>,
    pub krull_dim: usize,
    /// Empty when the h-vector alone decides.
    pub linear_system: Vec<String>,
    pub steps: Vec<RegularityStep>,
    pub artinian: Option<IdealPresentation>,
    pub socle: Option<Socle>,
    pub regularity_tests: usize,
}

/// Stable set of a label of the form `y_{1,2}`.
fn label_set(label: &str) -> Option<Vec<usize>> {
    let inner = label.strip_prefix("y_{")?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}

struct Search<'a> {
    config: &'a GorensteinConfig,
    rng: ChaCha8Rng,
    tests: usize,
    /// Largest vertex named by any label; the modulus of cyclic distances.
    n: usize,
}

struct Node {
    ideal: IdealPresentation,
    hilbert: HilbertData,
    used: BTreeSet<usize>,
}

struct Found {
    forms: Vec<(Polynomial, Vec<String>)>,
    steps: Vec<RegularityStep>,
    artinian: IdealPresentation,
    hilbert: HilbertData,
}

impl Search<'_> {
    fn structured(&self, node: &Node) -> Vec<(Polynomial, Option<usize>)> {
        let labels = &node.ideal.labels;
        let w = labels.len();
        let sets: Vec<Option<Vec<usize>>> = labels.iter().map(|l| label_set(l)).collect();
        let var = |i: usize| Polynomial::var(w, i);
        let mut out = Vec::new();
        if let Some(i) = sets.iter().position(|s| s.as_deref() == Some(&[])) {
            out.push((var(i), None));
        }
        let singles: Vec<(usize, usize)> = sets
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s.as_deref() {
                Some([v]) => Some((i, *v)),
                _ => None,
            })
            .collect();
        let mut t1 = Vec::new();
        for &(i, v) in &singles {
            for (j, s) in sets.iter().enumerate() {
                let Some(e) = s else { continue };
                if e.len() < 2 || e.contains(&v) {
                    continue;
                }
                let dist: usize = e.iter().map(|&a| (a + self.n - v) % self.n.max(1)).sum();
                t1.push(((node.used.contains(&v), dist, v, e.clone()), i, j));
            }
        }
        t1.sort();
        for ((_, _, v, _), i, j) in t1 {
            out.push((&var(i) - &var(j), Some(v)));
        }
        for (a, &(i, _)) in singles.iter().enumerate() {
            for &(j, _) in &singles[a + 1..] {
                out.push((&var(i) - &var(j), None));
            }
        }
        for i in 0..w {
            out.push((var(i), None));
        }
        out
    }

    fn random_form(&mut self, w: usize) -> Polynomial {
        loop {
            let mut f = Polynomial::zero(w);
            for i in 0..w {
                f.add_term(Monomial::var(w, i), rat(self.rng.gen_range(-3..=3)));
            }
            if !f.is_zero() {
                return f;
            }
        }
    }

    fn dfs(&mut self, node: &Node) -> Result<Option<Found>> {
        if node.hilbert.krull_dim == 0 {
            return Ok(Some(Found {
                forms: Vec::new(),
                steps: Vec::new(),
                artinian: node.ideal.clone(),
                hilbert: node.hilbert.clone(),
            }));
        }
        let w = node.ideal.width();
        let mut candidates = self.structured(node);
        for _ in 0..self.config.random_attempts {
            candidates.push((self.random_form(w), None));
        }
        for (form, vertex) in candidates {
            if self.tests >= self.config.budget {
                return Err(Error::ResourceCap {
                    what: "regularity tests in the parameter search".into(),
                    limit: self.config.budget as u64,
                });
            }
            self.tests += 1;
            let q = quotient_by_linear_form(&node.ideal, &form, Some(&node.hilbert), &self.config.gb)?;
            if !q.regular {
                continue;
            }
            let mut used = node.used.clone();
            used.extend(vertex);
            let step = RegularityStep {
                form: form.to_text(&node.ideal.labels),
                eliminated: q.eliminated.clone(),
                numerator_before: q.before.numerator.clone(),
                numerator_after: q.after.numerator.clone(),
                regular: true,
            };
            let child = Node {
                ideal: q.ideal,
                hilbert: q.after,
                used,
            };
            if let Some(mut found) = self.dfs(&child)? {
                found.forms.insert(0, (form, node.ideal.labels.clone()));
                found.steps.insert(0, step);
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// Search for a regular sequence of linear forms cutting `R = K[y]/I` down to
/// an artinian ring. Structured candidates come first (`y_{}`, then
/// `y_v - y_W` for stable sets `W ∌ v`, then `y_u - y_v`, then single
/// variables), then seeded random forms.
pub fn find_linear_system(ideal: &IdealPresentation, config: &GorensteinConfig) -> Result<ArtinianReduction> {
    let hilbert = hilbert_data(ideal, &config.gb)?;
    let n = ideal
        .labels
        .iter()
        .filter_map(|l| label_set(l))
        .flatten()
        .max()
        .unwrap_or(0);
    let mut search = Search {
        config,
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        tests: 0,
        n,
    };
    let root = Node {
        ideal: ideal.clone(),
        hilbert,
        used: BTreeSet::new(),
    };
    let found = search.dfs(&root)?.ok_or_else(|| {
        Error::InvalidArgument("no regular sequence of linear forms found; the ring may not be Cohen-Macaulay".into())
    })?;
    let width = ideal.width();
    let forms = found
        .forms
        .into_iter()
        .map(|(f, labels)| {
            let map: Vec<usize> = labels
                .iter()
                .map(|l| ideal.labels.iter().position(|m| m == l).expect("labels shrink"))
                .collect();
            f.embed(width, &map)
        })
        .collect();
    Ok(ArtinianReduction {
        forms,
        steps: found.steps,
        artinian: found.artinian,
        hilbert: found.hilbert,
        regularity_tests: search.tests,
    })
}

/// Quotient by given linear forms (over the original variables) one at a
/// time, recording whether each is a nonzerodivisor on what is left.
/// Stops at the first zero divisor.
pub fn reduce_by_linear_forms(
    ideal: &IdealPresentation,
    forms: &[Polynomial],
    config: &GbConfig,
) -> Result<(Vec<RegularityStep>, IdealPresentation, HilbertData)> {
    let mut current = ideal.clone();
    let mut hd = hilbert_data(ideal, config)?;
    let mut steps = Vec::new();
    // substitutions made so far, each over the labels of its own step
    let mut subs: Vec<(usize, Polynomial)> = Vec::new();
    for f in forms {
        if f.width() != ideal.width() {
            return Err(Error::WidthMismatch {
                expected: ideal.width(),
                found: f.width(),
            });
        }
        let mut g = f.clone();
        for (v, value) in &subs {
            g = g.substitute(*v, value).drop_var(*v)?;
        }
        if g.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "{} vanishes modulo the earlier forms",
                f.to_text(&ideal.labels)
            )));
        }
        let q = quotient_by_linear_form(&current, &g, Some(&hd), config)?;
        let v = *g.support_vars().last().expect("nonzero form");
        let c = g.coeff(&Monomial::var(g.width(), v));
        let tail = &g - &Polynomial::term(Monomial::var(g.width(), v), c.clone());
        subs.push((v, tail.scale(&(-c.recip()))));
        steps.push(RegularityStep {
            form: g.to_text(&current.labels),
            eliminated: q.eliminated.clone(),
            numerator_before: q.before.numerator.clone(),
            numerator_after: q.after.numerator.clone(),
            regular: q.regular,
        });
        current = q.ideal;
        hd = q.after;
        if !q.regular {
            break;
        }
    }
    Ok((steps, current, hd))
}

/// Independent check of a linear system: `R / (ℓ_1, …, ℓ_d)` is artinian of
/// length `h(1)` exactly when the forms are a regular sequence.
pub fn verify_linear_system(ideal: &IdealPresentation, forms: &[Polynomial], config: &GbConfig) -> Result<bool> {
    let hd = hilbert_data(ideal, config)?;
    if forms.len() != hd.krull_dim {
        return Ok(false);
    }
    let mut gens = ideal.generators.clone();
    gens.extend(forms.iter().cloned());
    let q = hilbert_data(&IdealPresentation::new(ideal.labels.clone(), gens)?, config)?;
    Ok(q.krull_dim == 0 && q.h_vector.iter().sum::<i64>() == hd.h_vector.iter().sum::<i64>())
}

/// Decide whether `K[y]/I` is Gorenstein. A non-palindromic h-vector decides
/// at once; otherwise the socle of an artinian reduction is computed.
pub fn gorenstein_certificate(ideal: &IdealPresentation, config: &GorensteinConfig) -> Result<GorensteinCertificate> {
    let hd = hilbert_data(ideal, &config.gb)?;
    if !hd.is_symmetric() {
        return Ok(GorensteinCertificate {
            verdict: GorensteinVerdict::NotGorenstein,
            basis: Some(CertificateBasis::HVectorAsymmetry),
            h_vector: hd.h_vector,
            krull_dim: hd.krull_dim,
            linear_system: Vec::new(),
            steps: Vec::new(),
            artinian: None,
            socle: None,
            regularity_tests: 0,
        });
    }
    let red = match find_linear_system(ideal, config) {
        Ok(r) => r,
        Err(Error::ResourceCap { .. }) | Err(Error::InvalidArgument(_)) => {
            return Ok(GorensteinCertificate {
                verdict: GorensteinVerdict::Inconclusive,
                basis: None,
                h_vector: hd.h_vector,
                krull_dim: hd.krull_dim,
                linear_system: Vec::new(),
                steps: Vec::new(),
                artinian: None,
                socle: None,
                regularity_tests: config.budget,
            })
        }
        Err(e) => return Err(e),
    };
    let soc = socle(&red.artinian, &config.gb)?;
    let verdict = if soc.dimension == 1 {
        GorensteinVerdict::Gorenstein
    } else {
        GorensteinVerdict::NotGorenstein
    };
    Ok(GorensteinCertificate {
        verdict,
        basis: Some(CertificateBasis::Socle),
        h_vector: hd.h_vector,
        krull_dim: hd.krull_dim,
        linear_system: red.forms.iter().map(|f| f.to_text(&ideal.labels)).collect(),
        steps: red.steps,
        artinian: Some(red.artinian),
        socle: Some(soc),
        regularity_tests: red.regularity_tests,
    })
}
