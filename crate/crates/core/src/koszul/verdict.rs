use serde::{Deserialize, Serialize};

use super::{betti_table, graded_basis, lift_table, BettiTable};
use crate::error::{Error, Result};
use crate::groebner::{GbConfig, IdealPresentation};
use crate::hilbert::{find_linear_system, GorensteinConfig};
use crate::linalg::{PrimeField, Rationals};
use crate::poly::TermOrder;
use crate::qgb::{decide_quadratic_gb, QgbConfig};
use crate::toric::ToricIdeal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BettiMode {
    /// Resolve over an artinian reduction and lift the table back.
    Reduced,
    /// Resolve over the ring itself.
    Direct,
}

#[derive(Clone, Debug)]
pub struct KoszulConfig {
    pub i_max: usize,
    pub j_max: usize,
    /// 0 for the rationals, otherwise a prime.
    pub characteristic: u64,
    pub mode: BettiMode,
    /// Try the quadratic Gröbner basis search first.
    pub shortcut: bool,
    /// Order for the normal-form coordinates; grevlex when absent.
    pub order: Option<TermOrder>,
    pub gorenstein: GorensteinConfig,
    pub qgb: QgbConfig,
    pub gb: GbConfig,
}

impl Default for KoszulConfig {
    fn default() -> Self {
        KoszulConfig {
            i_max: 4,
            j_max: 5,
            characteristic: 0,
            mode: BettiMode::Reduced,
            shortcut: true,
            order: None,
            gorenstein: GorensteinConfig::default(),
            qgb: QgbConfig::default(),
            gb: GbConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum KoszulStatus {
    NonKoszul { i: usize, j: usize, value: u64 },
    KoszulViaQuadraticGb,
    /// No off-diagonal entry within the bounds; not a proof of Koszulness.
    KoszulUpToBound { i_max: usize, j_max: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulVerdict {
    #[serde(flatten)]
    pub status: KoszulStatus,
    pub i_max: usize,
    pub j_max: usize,
    pub characteristic: u64,
    /// `None` when the shortcut decided.
    pub mode: Option<BettiMode>,
    /// Table of the ring (lifted from the reduction in reduced mode).
    pub table: Option<BettiTable>,
    /// Table of the artinian reduction, in reduced mode.
    pub reduced_table: Option<BettiTable>,
    pub linear_system: Vec<String>,
    /// Reduced quadratic Gröbner basis backing the shortcut.
    pub quadratic_gb: Option<Vec<String>>,
    pub quadratic_gb_order: Option<String>,
    pub notes: Vec<String>,
}

/// Betti table of `K[y]/I` over the configured field and order.
pub fn ring_table(ideal: &IdealPresentation, order: &TermOrder, config: &KoszulConfig) -> Result<BettiTable> {
    let cap = config.j_max.max(1) as u32;
    if config.characteristic == 0 {
        let alg = graded_basis(Rationals, ideal, order, cap, &config.gb)?;
        betti_table(&alg, config.i_max, config.j_max)
    } else {
        let alg = graded_basis(PrimeField::new(config.characteristic)?, ideal, order, cap, &config.gb)?;
        betti_table(&alg, config.i_max, config.j_max)
    }
}

fn status_of(table: &BettiTable) -> KoszulStatus {
    match table.first_off_diagonal() {
        Some((i, j, value)) => KoszulStatus::NonKoszul { i, j, value },
        None => KoszulStatus::KoszulUpToBound {
            i_max: table.i_max,
            j_max: table.j_max,
        },
    }
}

/// Decide Koszulness of a toric ring as far as the bounds allow: a quadratic
/// Gröbner basis proves it, an off-diagonal Betti number refutes it.
pub fn koszul_verdict(t: &ToricIdeal, config: &KoszulConfig) -> Result<KoszulVerdict> {
    let ideal = &t.presentation;
    let width = ideal.width();
    let order = match &config.order {
        Some(o) if o.width() != width => {
            return Err(Error::WidthMismatch {
                expected: width,
                found: o.width(),
            })
        }
        Some(o) => o.clone(),
        None => TermOrder::grevlex(width),
    };
    let mut verdict = KoszulVerdict {
        status: KoszulStatus::KoszulUpToBound {
            i_max: config.i_max,
            j_max: config.j_max,
        },
        i_max: config.i_max,
        j_max: config.j_max,
        characteristic: config.characteristic,
        mode: None,
        table: None,
        reduced_table: None,
        linear_system: Vec::new(),
        quadratic_gb: None,
        quadratic_gb_order: None,
        notes: Vec::new(),
    };
    if config.shortcut {
        match decide_quadratic_gb(t, &config.qgb) {
            Ok(d) => {
                if let Some(w) = d.witness {
                    verdict.status = KoszulStatus::KoszulViaQuadraticGb;
                    verdict.quadratic_gb = Some(w.basis);
                    verdict.quadratic_gb_order = Some(w.order.describe(&ideal.labels));
                    return Ok(verdict);
                }
                verdict
                    .notes
                    .push(format!("no quadratic Gröbner basis ({} markings checked)", d.total_markings));
            }
            Err(Error::ResourceCap { what, limit }) => {
                verdict
                    .notes
                    .push(format!("quadratic Gröbner basis search skipped: {what} exceeds cap {limit}"));
            }
            Err(e) => return Err(e),
        }
    }
    let mut mode = config.mode;
    if mode == BettiMode::Reduced {
        match find_linear_system(ideal, &config.gorenstein) {
            Ok(red) => {
                let kept: Vec<usize> = red
                    .artinian
                    .labels
                    .iter()
                    .map(|l| ideal.labels.iter().position(|m| m == l).expect("labels shrink"))
                    .collect();
                let a = ring_table(&red.artinian, &order.restrict_to(&kept), config)?;
                let c = red.forms.len();
                verdict.linear_system = red.forms.iter().map(|f| f.to_text(&ideal.labels)).collect();
                let lifted = lift_table(&a, c);
                verdict.status = status_of(&lifted);
                verdict.table = Some(lifted);
                verdict.reduced_table = Some(a);
            }
            Err(Error::ResourceCap { .. }) | Err(Error::InvalidArgument(_)) => {
                verdict
                    .notes
                    .push("no linear system of parameters found; resolving over the ring directly".into());
                mode = BettiMode::Direct;
            }
            Err(e) => return Err(e),
        }
    }
    if mode == BettiMode::Direct {
        let r = ring_table(ideal, &order, config)?;
        verdict.status = status_of(&r);
        verdict.table = Some(r);
    }
    verdict.mode = Some(mode);
    Ok(verdict)
}
