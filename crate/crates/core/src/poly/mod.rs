//! Exact multivariate polynomials over the rationals with pluggable term orders.

mod monomial;
mod order;
mod parse;
mod polynomial;

pub use monomial::{monomials_of_degree, Monomial};
pub use order::{OrderKind, TermOrder};
pub use parse::{parse_coeff, parse_polynomial};
pub use polynomial::{arith, rat, ArithOp, Coeff, JsonTerm, Polynomial};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default prime for the modular filter.
pub const DEFAULT_PRIME: u64 = 32003;

/// A labelled variable of an ambient ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub index: usize,
    pub label: String,
}

/// Characteristic of the coefficient field: 0 for the rationals, or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoefficientField {
    characteristic: u64,
}

impl CoefficientField {
    pub const RATIONALS: CoefficientField = CoefficientField { characteristic: 0 };

    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::InvalidArgument(format!(
                "characteristic {characteristic} is not prime"
            )));
        }
        if characteristic > u32::MAX as u64 {
            return Err(Error::InvalidArgument(
                "prime characteristic must fit in 32 bits".into(),
            ));
        }
        Ok(CoefficientField { characteristic })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Check that labels are unique and build the variable list.
pub fn variables(labels: &[String]) -> Result<Vec<Variable>> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::InvalidArgument(format!("duplicate variable label {l}")));
        }
    }
    Ok(labels
        .iter()
        .enumerate()
        .map(|(index, label)| Variable {
            index,
            label: label.clone(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_characteristics() {
        assert!(CoefficientField::new(32003).is_ok());
        assert!(CoefficientField::new(32004).is_err());
        assert_eq!(CoefficientField::RATIONALS.characteristic(), 0);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let l: Vec<String> = vec!["a".into(), "a".into()];
        assert!(variables(&l).is_err());
    }
}
