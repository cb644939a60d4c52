//! Hilbert series, quotients by linear forms, socles and Gorenstein certificates.

mod gorenstein;
mod series;

pub use gorenstein::{
    find_linear_system, gorenstein_certificate, reduce_by_linear_forms, verify_linear_system, ArtinianReduction, CertificateBasis,
    GorensteinCertificate, GorensteinConfig, GorensteinVerdict, RegularityStep,
};
pub use series::{h_vector, hilbert_of_monomial_ideal, hilbert_series, krull_dimension, poly_text, HilbertData};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{GbConfig, GroebnerBasis, IdealPresentation};
use crate::linalg::{kernel, primitive, Rationals, SparseVec};
use crate::poly::{Coeff, Monomial, Polynomial, TermOrder};

/// `R / (ℓ)` presented in one variable fewer, with both Hilbert series.
#[derive(Clone, Debug, Serialize)]
pub struct LinearQuotient {
    pub ideal: IdealPresentation,
    /// Label of the variable solved for and removed.
    pub eliminated: String,
    pub before: HilbertData,
    pub after: HilbertData,
    /// `ℓ` is a nonzerodivisor: `H_{R/ℓ}(t) = (1 - t) H_R(t)`.
    pub regular: bool,
}

/// Hilbert data of a presentation under graded reverse lexicographic order.
pub fn hilbert_data(ideal: &IdealPresentation, config: &GbConfig) -> Result<HilbertData> {
    let gb = series::hilbert_gb(ideal, &TermOrder::grevlex(ideal.width()), config)?;
    hilbert_of_monomial_ideal(&gb.initial_ideal())
}

/// Quotient by a linear form: the highest-indexed variable of `ℓ` is solved
/// for and substituted away. `before` may carry the already known Hilbert
/// data of `ideal`.
pub fn quotient_by_linear_form(
    ideal: &IdealPresentation,
    form: &Polynomial,
    before: Option<&HilbertData>,
    config: &GbConfig,
) -> Result<LinearQuotient> {
    if form.width() != ideal.width() {
        return Err(Error::WidthMismatch {
            expected: ideal.width(),
            found: form.width(),
        });
    }
    if form.is_zero() || form.degree() != Some(1) || !form.is_homogeneous() {
        return Err(Error::InvalidArgument("expected a nonzero linear form".into()));
    }
    let before = match before {
        Some(b) => b.clone(),
        None => hilbert_data(ideal, config)?,
    };
    let v = *form.support_vars().last().expect("nonzero form");
    let width = ideal.width();
    let c = form.coeff(&Monomial::var(width, v));
    // y_v = -(ℓ - c y_v) / c
    let tail = form - &Polynomial::term(Monomial::var(width, v), c.clone());
    let value = tail.scale(&(-c.recip()));
    let mut gens = Vec::new();
    for g in &ideal.generators {
        let s = g.substitute(v, &value).drop_var(v)?;
        if !s.is_zero() {
            gens.push(s.normalize_sign());
        }
    }
    gens.sort();
    gens.dedup();
    let mut labels = ideal.labels.clone();
    let eliminated = labels.remove(v);
    let ideal = IdealPresentation::new(labels, gens)?;
    let after = hilbert_data(&ideal, config)?;
    let regular = after.numerator == before.numerator;
    Ok(LinearQuotient {
        ideal,
        eliminated,
        before,
        after,
        regular,
    })
}

/// The socle `(0 : m)` of an artinian graded quotient, degree by degree.
#[derive(Clone, Debug, Serialize)]
pub struct Socle {
    pub dimension: usize,
    pub by_degree: Vec<usize>,
    /// Basis elements in normal form, with primitive integer coefficients.
    pub elements: Vec<Polynomial>,
    pub labels: Vec<String>,
}

impl Socle {
    pub fn element_texts(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.to_text(&self.labels)).collect()
    }
}

pub fn socle(ideal: &IdealPresentation, config: &GbConfig) -> Result<Socle> {
    let width = ideal.width();
    let gb = series::hilbert_gb(ideal, &TermOrder::grevlex(width), config)?;
    let hd = hilbert_of_monomial_ideal(&gb.initial_ideal())?;
    if hd.krull_dim != 0 {
        return Err(Error::NotArtinian(hd.krull_dim));
    }
    let top = hd.socle_degree as u32;
    let bases: Vec<Vec<Monomial>> = (0..=top + 1).map(|d| gb.standard_monomials(d)).collect();
    let field = Rationals;
    let mut by_degree = Vec::new();
    let mut elements = Vec::new();
    for d in 0..=top as usize {
        let next = &bases[d + 1];
        let index: std::collections::HashMap<&Monomial, usize> = next.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let columns: Vec<SparseVec<Coeff>> = bases[d]
            .iter()
            .map(|b| {
                let mut col = Vec::new();
                for v in 0..width {
                    for (m, c) in gb.normal_form_monomial(&b.mul_var(v)) {
                        col.push((v * next.len() + index[&m], c));
                    }
                }
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        let ker = kernel(&field, &columns);
        by_degree.push(ker.len());
        for k in ker {
            let k = primitive(&k);
            elements.push(Polynomial::from_terms(
                width,
                k.into_iter().map(|(j, c)| (bases[d][j].clone(), c)),
            ));
        }
    }
    Ok(Socle {
        dimension: elements.len(),
        by_degree,
        elements,
        labels: ideal.labels.clone(),
    })
}

/// `f` is a nonzero socle element: `f ∉ I` and `y_v f ∈ I` for every variable.
pub fn is_socle_element(gb: &GroebnerBasis, f: &Polynomial) -> Result<bool> {
    if gb.contains(f)? {
        return Ok(false);
    }
    for v in 0..gb.width() {
        if !gb.contains(&f.mul_monomial(&Monomial::var(gb.width(), v)))? {
            return Ok(false);
        }
    }
    Ok(true)
}
