//! The full pipeline for one graph, summarized in a single report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{stable_sets, Graph};
use crate::hilbert::{gorenstein_certificate, hilbert_data, CertificateBasis, GorensteinVerdict};
use crate::koszul::{koszul_verdict, BettiMode, BettiTable, KoszulConfig, KoszulStatus};
use crate::qgb::decide_quadratic_gb;
use crate::toric::{monomial_map, toric_ideal_with};

pub const SCHEMA: &str = "koszul-forge/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDescriptor {
    pub description: String,
    pub graph: Graph,
    /// Hash of the graph's canonical JSON.
    pub hash: String,
}

impl InputDescriptor {
    pub fn new(description: &str, graph: &Graph) -> Self {
        let json = serde_json::to_string(graph).expect("graph serializes");
        InputDescriptor {
            description: description.to_string(),
            graph: graph.clone(),
            hash: sha256_hex(json.as_bytes()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GorensteinSummary {
    pub verdict: GorensteinVerdict,
    pub basis: Option<CertificateBasis>,
    pub socle_dimension: Option<usize>,
    pub linear_system: Vec<String>,
    pub regularity_tests: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct QgbSummary {
    /// `None` when the search was not run to a decision (marking cap).
    pub exists: Option<bool>,
    pub total_markings: Option<u64>,
    pub feasible_markings: Option<u64>,
    pub order: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulSummary {
    #[serde(flatten)]
    pub status: KoszulStatus,
    pub mode: Option<BettiMode>,
    pub table: Option<BettiTable>,
    pub notes: Vec<String>,
}

/// Every flag and bound that influenced the report.
#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub i_max: usize,
    pub j_max: usize,
    pub characteristic: u64,
    pub mode: BettiMode,
    pub marking_cap: u64,
    pub spair_cap: u64,
    pub lsop_budget: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub millis: BTreeMap<String, u128>,
}

impl Timings {
    pub fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.millis.insert(name.to_string(), start.elapsed().as_millis());
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub input: InputDescriptor,
    pub stable_sets: usize,
    pub embdim: usize,
    pub dim: usize,
    pub h_vector: Vec<i64>,
    pub hilbert_series: String,
    pub generators: usize,
    /// All minimal generators have degree 2.
    pub quadratic: bool,
    pub gorenstein: GorensteinSummary,
    pub quadratic_gb: QgbSummary,
    pub koszul: KoszulSummary,
    pub characteristic: u64,
    pub summary: String,
    pub bounds: Bounds,
    /// Violated report invariants; empty on a healthy run.
    pub inconsistencies: Vec<String>,
    pub timings: Timings,
}

impl AnalysisReport {
    /// JSON without the timing block, for byte comparisons between runs.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("timings");
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("input        {} ({})\n", self.input.description, &self.input.hash[..12]));
        out.push_str(&format!("stable sets  {}\n", self.stable_sets));
        out.push_str(&format!("embdim, dim  {}, {}\n", self.embdim, self.dim));
        out.push_str(&format!("h-vector     {:?}\n", self.h_vector));
        out.push_str(&format!("series       {}\n", self.hilbert_series));
        out.push_str(&format!("generators   {} (quadratic: {})\n", self.generators, self.quadratic));
        let soc = self
            .gorenstein
            .socle_dimension
            .map(|d| format!(", socle dimension {d}"))
            .unwrap_or_default();
        out.push_str(&format!("gorenstein   {:?}{soc}\n", self.gorenstein.verdict));
        let q = match self.quadratic_gb.exists {
            Some(e) => format!("{e}"),
            None => "undecided".into(),
        };
        out.push_str(&format!("quadratic GB {q}\n"));
        out.push_str(&format!("koszul       {}\n", status_text(&self.koszul.status)));
        if let Some(t) = &self.koszul.table {
            out.push_str(&t.to_text());
        }
        out.push_str(&format!("summary      {}\n", self.summary));
        for i in &self.inconsistencies {
            out.push_str(&format!("inconsistent {i}\n"));
        }
        out
    }
}

pub fn status_text(s: &KoszulStatus) -> String {
    match s {
        KoszulStatus::NonKoszul { i, j, value } => format!("non-Koszul: beta_{{{i},{j}}} = {value}"),
        KoszulStatus::KoszulViaQuadraticGb => "Koszul (quadratic Gröbner basis)".into(),
        KoszulStatus::KoszulUpToBound { i_max, j_max } => {
            format!("no obstruction up to i <= {i_max}, j <= {j_max}")
        }
    }
}

/// One-line classification, e.g. "non-Koszul quadratic Gorenstein".
pub fn summary_phrase(status: &KoszulStatus, quadratic: bool, gorenstein: GorensteinVerdict) -> String {
    let k = match status {
        KoszulStatus::NonKoszul { .. } => "non-Koszul",
        KoszulStatus::KoszulViaQuadraticGb => "Koszul",
        KoszulStatus::KoszulUpToBound { .. } => "Koszul-up-to-bound",
    };
    let q = if quadratic { "quadratic" } else { "non-quadratic" };
    let g = match gorenstein {
        GorensteinVerdict::Gorenstein => "Gorenstein",
        GorensteinVerdict::NotGorenstein => "non-Gorenstein",
        GorensteinVerdict::Inconclusive => "Gorenstein-undecided",
    };
    format!("{k} {q} {g}")
}

/// Run every stage on the stable set ring of `g`.
pub fn analyze(description: &str, g: &Graph, config: &KoszulConfig) -> Result<AnalysisReport> {
    let mut timings = Timings::default();
    let family = stable_sets(g);
    let map = monomial_map(g);
    let t = timings.time("toric_ideal", || toric_ideal_with(&map, &config.gb))?;
    let ideal = &t.presentation;
    let hd = timings.time("hilbert", || hilbert_data(ideal, &config.gb))?;
    let cert = timings.time("gorenstein", || gorenstein_certificate(ideal, &config.gorenstein))?;
    let qgb = timings.time("quadratic_gb", || decide_quadratic_gb(&t, &config.qgb));
    let (qgb_summary, found) = match qgb {
        Ok(d) => (
            QgbSummary {
                exists: Some(d.exists),
                total_markings: Some(d.total_markings),
                feasible_markings: d.exhaustive.then_some(d.feasible_markings),
                order: d.witness.as_ref().map(|w| w.order.describe(&ideal.labels)),
                note: None,
            },
            d.witness,
        ),
        Err(Error::ResourceCap { what, limit }) => (
            QgbSummary {
                exists: None,
                total_markings: None,
                feasible_markings: None,
                order: None,
                note: Some(format!("{what} exceeds the cap {limit}")),
            },
            None,
        ),
        Err(e) => return Err(e),
    };
    let koszul = match found {
        Some(w) => KoszulSummary {
            status: KoszulStatus::KoszulViaQuadraticGb,
            mode: None,
            table: None,
            notes: vec![format!("quadratic Gröbner basis with {} elements", w.basis.len())],
        },
        None => {
            let cfg = KoszulConfig {
                shortcut: false,
                ..config.clone()
            };
            let v = timings.time("koszul", || koszul_verdict(&t, &cfg))?;
            KoszulSummary {
                status: v.status,
                mode: v.mode,
                table: v.table,
                notes: v.notes,
            }
        }
    };
    let quadratic = ideal.is_quadratic();
    let embdim = ideal.width();
    let mut inconsistencies = Vec::new();
    if hd.h_vector.get(1).copied().unwrap_or(0) != embdim as i64 - hd.krull_dim as i64 {
        inconsistencies.push(format!("h_1 != embdim - dim ({:?}, {embdim}, {})", hd.h_vector, hd.krull_dim));
    }
    if let Some(table) = &koszul.table {
        let beta2_clean = (3..=table.j_max).all(|j| table.get(2, j).unwrap_or(0) == 0);
        if table.i_max >= 2 && table.j_max >= 3 && beta2_clean != quadratic {
            inconsistencies.push("quadratic flag disagrees with beta_{2,j}, j > 2".into());
        }
    }
    let summary = summary_phrase(&koszul.status, quadratic, cert.verdict);
    Ok(AnalysisReport {
        schema: SCHEMA,
        tool_version: TOOL_VERSION,
        input: InputDescriptor::new(description, g),
        stable_sets: family.len(),
        embdim,
        dim: hd.krull_dim,
        h_vector: hd.h_vector.clone(),
        hilbert_series: hd.series_text(),
        generators: ideal.generators.len(),
        quadratic,
        gorenstein: GorensteinSummary {
            verdict: cert.verdict,
            basis: cert.basis,
            socle_dimension: cert.socle.as_ref().map(|s| s.dimension),
            linear_system: cert.linear_system,
            regularity_tests: cert.regularity_tests,
        },
        quadratic_gb: qgb_summary,
        koszul,
        characteristic: config.characteristic,
        summary,
        bounds: Bounds {
            i_max: config.i_max,
            j_max: config.j_max,
            characteristic: config.characteristic,
            mode: config.mode,
            marking_cap: config.qgb.marking_cap,
            spair_cap: config.gb.spair_cap,
            lsop_budget: config.gorenstein.budget,
            seed: config.gorenstein.seed,
        },
        inconsistencies,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cbar7_report() {
        let g = Graph::cbar(3).unwrap();
        let r = analyze("complement(cycle(7))", &g, &KoszulConfig::default()).unwrap();
        assert_eq!(r.summary, "non-Koszul quadratic Gorenstein");
        assert_eq!((r.stable_sets, r.embdim, r.dim), (15, 15, 8));
        assert_eq!(r.h_vector, vec![1, 7, 14, 7, 1]);
        assert_eq!(r.quadratic_gb.exists, Some(false));
        assert_eq!(r.koszul.status, KoszulStatus::NonKoszul { i: 3, j: 4, value: 1 });
        assert!(r.inconsistencies.is_empty());
        let v = r.deterministic_json();
        assert_eq!(v["schema"], "koszul-forge/1");
        assert!(v.get("timings").is_none());
    }

    #[test]
    fn five_cycle_report() {
        let r = analyze("cycle(5)", &Graph::cycle(5).unwrap(), &KoszulConfig::default()).unwrap();
        assert_eq!(r.koszul.status, KoszulStatus::KoszulViaQuadraticGb);
        assert!(r.summary.starts_with("Koszul quadratic"));
        assert_eq!(r.input.hash.len(), 64);
    }

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
