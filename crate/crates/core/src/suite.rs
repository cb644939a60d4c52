//! Reference cases: each recomputes a known fact about the C̄_{2k+1} rings
//! or the small fixtures and reports pass or fail.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{classify, enumerate_graphs, is_isomorphic, stable_sets, Graph};
use crate::groebner::{reduced_gb, same_ideal, IdealPresentation};
use crate::hilbert::{
    gorenstein_certificate, hilbert_data, hilbert_series, is_socle_element, reduce_by_linear_forms, socle,
    GorensteinVerdict,
};
use crate::koszul::{koszul_verdict, ring_table, transfer_check, BettiMode, KoszulConfig, KoszulStatus};
use crate::poly::{parse_polynomial, Monomial, TermOrder};
use crate::qgb::{cross_check_marking, decide_quadratic_gb, feasible_markings, realizing_order};
use crate::report::{analyze, Timings, SCHEMA, TOOL_VERSION};
use crate::toric::{closed_form_generators, fiber_classes, known_regular_sequence, monomial_map, toric_ideal_with, Family, ToricIdeal};

#[derive(Clone, Debug, Serialize)]
pub struct CaseOutcome {
    pub name: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
    pub details: BTreeMap<String, serde_json::Value>,
}

struct Case {
    out: CaseOutcome,
}

impl Case {
    fn new(name: &'static str, claim: &'static str) -> Self {
        Case {
            out: CaseOutcome {
                name,
                claim,
                passed: true,
                failures: Vec::new(),
                details: BTreeMap::new(),
            },
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.out.passed = false;
            self.out.failures.push(what.into());
        }
    }

    fn detail(&mut self, key: &str, value: impl Serialize) {
        self.out
            .details
            .insert(key.to_string(), serde_json::to_value(value).expect("detail serializes"));
    }

    fn done(self) -> Result<CaseOutcome> {
        Ok(self.out)
    }
}

type CaseFn = fn(&KoszulConfig) -> Result<CaseOutcome>;

/// Every case, in reporting order.
pub const CASES: &[(&str, CaseFn)] = &[
    ("stable_sets", stable_set_counts),
    ("toric_generators", toric_generators),
    ("artinian_reduction", artinian_reduction),
    ("hilbert_gorenstein", hilbert_and_gorenstein),
    ("non_gorenstein", non_gorenstein),
    ("no_quadratic_gb", no_quadratic_gb),
    ("non_koszul", non_koszul),
    ("infinite_family", infinite_family),
    ("six_vertex_fixtures", six_vertex_fixtures),
    ("small_graph_classes", small_graph_classes),
    ("properties", properties),
];

pub fn case_by_name(name: &str) -> Option<CaseFn> {
    CASES.iter().find(|(n, _)| *n == name).map(|(_, f)| *f)
}

fn ring(g: &Graph, config: &KoszulConfig) -> Result<ToricIdeal> {
    toric_ideal_with(&monomial_map(g), &config.gb)
}

fn label(set: &[usize]) -> String {
    format!(
        "y_{{{}}}",
        set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    )
}

/// The 2k+1 vertex cycle ideal left after the standard reduction of C̄_{2k+1}.
fn cycle_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| label(&[i])).collect()
}

pub fn stable_set_counts(_: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "stable_sets",
        "C̄_7 has 15 stable sets: the empty set, 7 vertices, 7 cyclically adjacent pairs; C̄_{2k+1} has 4k+3",
    );
    let fam = stable_sets(&Graph::cbar(3)?);
    let mut expect: Vec<Vec<usize>> = vec![vec![]];
    expect.extend((1..=7).map(|i| vec![i]));
    let mut pairs: Vec<Vec<usize>> = (1..=7).map(|i| {
        let mut p = vec![i, i % 7 + 1];
        p.sort();
        p
    }).collect();
    pairs.sort();
    expect.extend(pairs);
    c.check(fam.sets == expect, format!("C̄_7 stable sets {:?}", fam.sets));
    c.detail("cbar7", fam.sets.iter().map(|s| label(s)).collect::<Vec<_>>());
    let mut counts = BTreeMap::new();
    for k in 3..=8 {
        let n = stable_sets(&Graph::cbar(k)?).len();
        c.check(n == 4 * k + 3, format!("C̄_{} has {n} stable sets", 2 * k + 1));
        counts.insert(k, n);
    }
    c.detail("counts", counts);
    c.done()
}

pub fn toric_generators(config: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "toric_generators",
        "the eliminated toric ideal equals the closed-form binomials (14 for k=3, 18 for k=4, 15 for family(1))",
    );
    for (fam, count) in [(Family::Cbar(3), 14), (Family::Cbar(4), 18), (Family::Family(1), 15)] {
        let closed = closed_form_generators(fam)?;
        let t = ring(&fam.graph()?, config)?;
        let n = closed.presentation.generators.len();
        c.check(n == count, format!("{fam:?}: {n} closed-form binomials"));
        let same = same_ideal(&t.presentation, &closed.presentation, &config.gb)?;
        c.check(same, format!("{fam:?}: ideals differ"));
        c.check(
            t.presentation.generators.len() == count,
            format!("{fam:?}: {} minimal generators by elimination", t.presentation.generators.len()),
        );
        c.detail(&format!("{fam:?}"), (n, t.presentation.generators.len(), same));
    }
    c.done()
}

/// The 18 generators of the grevlex initial ideal of the 7-cycle ideal.
pub const CYCLE7_INITIAL_IDEAL: [&str; 18] = [
    "y_{1}*y_{2}", "y_{2}*y_{3}", "y_{3}*y_{4}", "y_{4}*y_{5}", "y_{5}*y_{6}", "y_{6}*y_{7}",
    "y_{1}*y_{7}", "y_{1}^3", "y_{2}^2", "y_{3}^2", "y_{4}^2", "y_{5}^2", "y_{6}^2", "y_{7}^2",
    "y_{3}*y_{7}", "y_{1}^2*y_{4}", "y_{1}^2*y_{6}", "y_{2}*y_{5}*y_{7}",
];

/// Quotient of the C̄_{2k+1} ring by its standard regular sequence.
fn standard_reduction(k: usize, config: &KoszulConfig) -> Result<(Vec<crate::hilbert::RegularityStep>, IdealPresentation)> {
    reduce_standard(k, &ring(&Graph::cbar(k)?, config)?, config)
}

fn reduce_standard(k: usize, t: &ToricIdeal, config: &KoszulConfig) -> Result<(Vec<crate::hilbert::RegularityStep>, IdealPresentation)> {
    let forms = known_regular_sequence(Family::Cbar(k))?;
    let (steps, art, _) = reduce_by_linear_forms(&t.presentation, &forms, &config.gb)?;
    Ok((steps, art))
}

pub fn artinian_reduction(config: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "artinian_reduction",
        "8 linear forms are regular on K[Q_C̄_7] and leave the 7-cycle ideal, whose grevlex initial ideal has 18 listed generators",
    );
    let (steps, art) = standard_reduction(3, config)?;
    c.check(steps.len() == 8, format!("{} steps", steps.len()));
    c.check(steps.iter().all(|s| s.regular), "a form is a zero divisor");
    c.check(art.labels == cycle_labels(7), format!("remaining variables {:?}", art.labels));
    c.detail("forms", steps.iter().map(|s| s.form.clone()).collect::<Vec<_>>());
    if art.labels == cycle_labels(7) {
        let gb = reduced_gb(&art, &TermOrder::grevlex(7))?;
        let got: BTreeSet<String> = gb.initial_ideal().to_text(&art.labels).into_iter().collect();
        let expect: BTreeSet<String> = CYCLE7_INITIAL_IDEAL.iter().map(|s| s.to_string()).collect();
        c.check(got == expect, format!("initial ideal {got:?}"));
        c.detail("initial_ideal", &got);
        let mut gens = Vec::new();
        for i in 1..=7usize {
            let y = |j: usize| label(&[(j + 6) % 7 + 1]);
            gens.push(parse_polynomial(&format!("{}*{}", y(i), y(i + 1)), &art.labels)?);
            gens.push(parse_polynomial(&format!("{}^2 - {}*{}", y(i), y(i + 6), y(i + 2)), &art.labels)?);
        }
        let i7 = IdealPresentation::new(art.labels.clone(), gens)?;
        c.check(same_ideal(&art, &i7, &config.gb)?, "quotient differs from the 7-cycle ideal");
    }
    c.done()
}

pub fn hilbert_and_gorenstein(config: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "hilbert_gorenstein",
        "K[Q_C̄_7] has h-vector (1,7,14,7,1), dimension 8 and a one-dimensional socle after reduction: Gorenstein",
    );
    let (_, art) = standard_reduction(3, config)?;
    let a = hilbert_data(&art, &config.gb)?;
    c.check(a.h_vector == [1, 7, 14, 7, 1] && a.krull_dim == 0, format!("reduction h-vector {:?}", a.h_vector));
    let t = ring(&Graph::cbar(3)?, config)?;
    let hd = hilbert_data(&t.presentation, &config.gb)?;
    c.check(hd.h_vector == [1, 7, 14, 7, 1], format!("h-vector {:?}", hd.h_vector));
    c.check(hd.krull_dim == 8, format!("dimension {}", hd.krull_dim));
    c.detail("series", hd.series_text());
    let s = socle(&art, &config.gb)?;
    c.check(s.dimension == 1, format!("socle dimension {}", s.dimension));
    let cert = gorenstein_certificate(&t.presentation, &config.gorenstein)?;
    c.check(cert.verdict == GorensteinVerdict::Gorenstein, format!("verdict {:?}", cert.verdict));
    c.detail("socle", s.element_texts());
    c.detail("linear_system", &cert.linear_system);
    c.done()
}

pub fn non_gorenstein(config: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "non_gorenstein",
        "for k = 4, 5 the reduced ring has socle dimension at least 2, with explicit witnesses",
    );
    for k in [4usize, 5] {
        let n = 2 * k + 1;
        let t = ring(&Graph::cbar(k)?, config)?;
        let (steps, art) = reduce_standard(k, &t, config)?;
        c.check(steps.iter().all(|s| s.regular), format!("k={k}: a form is a zero divisor"));
        let s = socle(&art, &config.gb)?;
        c.check(s.dimension >= 2, format!("k={k}: socle dimension {}", s.dimension));
        let y = |i: usize| label(&[i]);
        let even: Vec<String> = (1..k).map(|i| y(2 * i)).collect();
        let first = format!("{}^2*{}", y(n), even.join("*"));
        let second = if k == 4 {
            format!("{}*{}*{}", y(3), y(6), y(9))
        } else {
            format!("{}*{}*{}*{}", y(11), y(3), y(6), y(9))
        };
        let gb = reduced_gb(&art, &TermOrder::grevlex(art.width()))?;
        for w in [&first, &second] {
            let f = parse_polynomial(w, &art.labels)?;
            c.check(is_socle_element(&gb, &f)?, format!("k={k}: {w} is not a socle element"));
        }
        let cert = gorenstein_certificate(&t.presentation, &config.gorenstein)?;
        c.check(
            cert.verdict == GorensteinVerdict::NotGorenstein,
            format!("k={k}: verdict {:?}", cert.verdict),
        );
        c.detail(&format!("k{k}"), (s.dimension, &s.by_degree, [first, second], cert.basis));
    }
    c.done()
}

pub fn no_quadratic_gb(config: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "no_quadratic_gb",
        "no term order gives K[Q_C̄_7] a quadratic Gröbner basis: all 16384 markings fail",
    );
    let t = ring(&Graph::cbar(3)?, config)?;
    let d = decide_quadratic_gb(&t, &config.qgb)?;
    c.check(!d.exists, "a quadratic Gröbner basis was found");
    c.check(d.total_markings == 16384, format!("{} markings", d.total_markings));
    c.check(
        d.exhaustive && d.feasible_markings + d.infeasible_markings == d.total_markings,
        "markings not fully accounted for",
    );
    c.check(d.hilbert_tests == d.feasible_markings, "a feasible marking skipped the series test");
    c.detail("decision", (d.classes, d.total_markings, d.feasible_markings, d.lp_solves));
    // every feasible marking against a truncated Buchberger run
    let classes = fiber_classes(&t.map, 2);
    let all = feasible_markings(&classes, usize::MAX, 1)?;
    c.check(all.len() as u64 == d.feasible_markings, "feasible marking counts disagree");
    let mut agree = 0;
    for m in &all {
        let Some((w, _)) = realizing_order(&classes, m, t.width())? else {
            c.check(false, format!("marking {:?} has no realizing weights", m.choices));
            continue;
        };
        let x = cross_check_marking(&t.presentation, &classes, m, &w, Some(3))?;
        if x.agrees() && !x.quadratic {
            agree += 1;
        } else {
            c.check(false, format!("marking {:?}: {x:?}", m.choices));
        }
    }
    c.check(agree >= 100, format!("only {agree} cross-checked markings"));
    c.detail("cross_checked", agree);
    c.done()
}

pub fn non_koszul(config: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "non_koszul",
        "β_{3,4} = 1 for K[Q_C̄_7] with no off-diagonal entry for i <= 2: a non-Koszul quadratic Gorenstein ring",
    );
    let g = Graph::cbar(3)?;
    let t = ring(&g, config)?;
    let cfg = KoszulConfig {
        shortcut: false,
        ..config.clone()
    };
    let v = koszul_verdict(&t, &cfg)?;
    c.check(
        v.status == KoszulStatus::NonKoszul { i: 3, j: 4, value: 1 },
        format!("status {:?}", v.status),
    );
    if let Some(table) = &v.table {
        let clean = table
            .entries
            .iter()
            .all(|(&(i, j), &b)| i > 2 || i == j || b == 0);
        c.check(clean, "off-diagonal entry with i <= 2");
        c.detail("table", table);
    }
    let r = analyze("paper:cbar(3)", &g, config)?;
    c.check(
        r.summary == "non-Koszul quadratic Gorenstein",
        format!("summary {:?}", r.summary),
    );
    c.check(r.inconsistencies.is_empty(), format!("{:?}", r.inconsistencies));
    c.detail("summary", &r.summary);
    c.done()
}

pub fn infinite_family(config: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "infinite_family",
        "family(k) has Hilbert series (1+7t+14t²+7t³+t⁴)(1+t)^k/(1-t)^(2k+8); family(1) has an off-diagonal Betti number",
    );
    for k in [1usize, 2] {
        let t = ring(&Graph::family(k)?, config)?;
        let hd = hilbert_data(&t.presentation, &config.gb)?;
        let mut expect = vec![1i64, 7, 14, 7, 1];
        for _ in 0..k {
            let mut next = vec![0; expect.len() + 1];
            for (i, a) in expect.iter().enumerate() {
                next[i] += a;
                next[i + 1] += a;
            }
            expect = next;
        }
        c.check(hd.h_vector == expect, format!("k={k}: h-vector {:?}", hd.h_vector));
        c.check(hd.krull_dim == 2 * k + 8, format!("k={k}: dimension {}", hd.krull_dim));
        c.detail(&format!("k{k}"), hd.series_text());
    }
    let t = ring(&Graph::family(1)?, config)?;
    let cfg = KoszulConfig {
        shortcut: false,
        mode: BettiMode::Reduced,
        ..config.clone()
    };
    let v = koszul_verdict(&t, &cfg)?;
    let b34 = v.table.as_ref().and_then(|t| t.get(3, 4)).unwrap_or(0);
    c.check(b34 != 0, "β_{3,4} vanishes for family(1)");
    c.check(matches!(v.status, KoszulStatus::NonKoszul { .. }), format!("status {:?}", v.status));
    c.detail("family1_beta34", b34);
    c.done()
}

pub fn six_vertex_fixtures(config: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "six_vertex_fixtures",
        "h(G1) = (1,7,10,3), h(G4) = (1,6,8,2); G2 and C5 (hence G5) have quadratic Gröbner bases; the complement of G3 is bipartite",
    );
    for (i, h) in [(1usize, vec![1i64, 7, 10, 3]), (4, vec![1, 6, 8, 2])] {
        let t = ring(&Graph::fixture(i)?, config)?;
        let hd = hilbert_data(&t.presentation, &config.gb)?;
        c.check(hd.h_vector == h, format!("G{i}: h-vector {:?}", hd.h_vector));
        c.detail(&format!("G{i}"), &hd.h_vector);
    }
    for (name, g) in [("G2", Graph::fixture(2)?), ("C5", Graph::cycle(5)?), ("G5", Graph::fixture(5)?)] {
        let t = ring(&g, config)?;
        let d = decide_quadratic_gb(&t, &config.qgb)?;
        match &d.witness {
            Some(w) => {
                c.check(w.gb.is_quadratic() && w.gb.verify_spairs(None), format!("{name}: witness basis"));
                c.detail(name, w.order.describe(&t.presentation.labels));
            }
            None => c.check(false, format!("{name}: no quadratic Gröbner basis")),
        }
    }
    // G5 is a cone over C5: the same ideal with one more free variable
    let g5 = ring(&Graph::fixture(5)?, config)?;
    let c5 = ring(&Graph::cycle(5)?, config)?;
    let apex = g5.map.var(&[4])?;
    let free = g5.presentation.generators.iter().all(|f| !f.support_vars().contains(&apex));
    c.check(free, "y_{4} appears in the G5 ideal");
    c.check(
        g5.presentation.generators.len() == c5.presentation.generators.len(),
        "G5 and C5 ideals have different sizes",
    );
    let flags = classify(&Graph::fixture(3)?)?;
    c.check(flags.complement_bipartite, "complement of G3 is not bipartite");
    c.done()
}

pub fn small_graph_classes(_: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "small_graph_classes",
        "among the 1+2+4+11+34 graphs on at most 5 vertices only C5 is not a comparability graph, and C5 is almost bipartite",
    );
    let c5 = Graph::cycle(5)?;
    let mut counts = Vec::new();
    for n in 1..=5 {
        let graphs = enumerate_graphs(n)?;
        counts.push(graphs.len());
        for g in &graphs {
            let f = classify(g)?;
            if is_isomorphic(g, &c5) {
                c.check(!f.comparability && f.almost_bipartite, "C5 flags");
            } else {
                c.check(f.comparability, format!("{:?} is not comparability", g.edges()));
            }
        }
    }
    c.check(counts == [1, 2, 4, 11, 34], format!("class counts {counts:?}"));
    c.detail("counts", counts);
    c.done()
}

fn random_monomial(rng: &mut ChaCha8Rng, width: usize) -> Monomial {
    Monomial::from_exps((0..width).map(|_| rng.gen_range(0..4)).collect())
}

pub fn properties(config: &KoszulConfig) -> Result<CaseOutcome> {
    let mut c = Case::new(
        "properties",
        "term order axioms, S-pair closure, order independence of Hilbert series, Betti transfer and characteristic agreement",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(config.gorenstein.seed);
    let width = 5;
    let mut orders = vec![TermOrder::grevlex(width), TermOrder::lex(width)];
    for _ in 0..3 {
        let w: Vec<i64> = (0..width).map(|_| rng.gen_range(0..5)).collect();
        orders.push(TermOrder::weighted(w, (0..width).collect())?);
    }
    orders.push(TermOrder::block(&[0, 1], &TermOrder::grevlex(width))?);
    let one = Monomial::one(width);
    let mut violations = 0;
    for o in &orders {
        for _ in 0..200 {
            let (a, b, m) = (random_monomial(&mut rng, width), random_monomial(&mut rng, width), random_monomial(&mut rng, width));
            let ab = o.cmp(&a, &b);
            let ok = ab == o.cmp(&b, &a).reverse()
                && (ab == std::cmp::Ordering::Equal) == (a == b)
                && o.cmp(&a.mul(&m), &b.mul(&m)) == ab
                && o.cmp(&one, &a) != std::cmp::Ordering::Greater;
            if !ok {
                violations += 1;
            }
        }
    }
    c.check(violations == 0, format!("{violations} term order axiom violations"));

    let mut corpus: Vec<(String, IdealPresentation)> = Vec::new();
    for (name, g) in [
        ("C5", Graph::cycle(5)?),
        ("G1", Graph::fixture(1)?),
        ("G4", Graph::fixture(4)?),
        ("cbar(3)", Graph::cbar(3)?),
    ] {
        corpus.push((name.to_string(), ring(&g, config)?.presentation));
    }
    let (_, i7) = standard_reduction(3, config)?;
    corpus.push(("cycle ideal".into(), i7));
    for (name, ideal) in &corpus {
        let w = ideal.width();
        let grevlex = reduced_gb(ideal, &TermOrder::grevlex(w))?;
        c.check(grevlex.verify_spairs(None), format!("{name}: S-pairs do not reduce to zero"));
        let base = hilbert_series(ideal, &TermOrder::grevlex(w))?;
        let weights: Vec<i64> = (0..w).map(|_| rng.gen_range(0..4)).collect();
        let mut others = vec![TermOrder::weighted(weights, (0..w).rev().collect())?];
        if w <= 11 {
            others.push(TermOrder::lex(w));
        }
        for o in others {
            let gb = reduced_gb(ideal, &o)?;
            c.check(gb.verify_spairs(None), format!("{name}: S-pairs under {}", o.name()));
            let h = hilbert_series(ideal, &o)?;
            c.check(h == base, format!("{name}: Hilbert series depends on the order"));
        }
    }

    for g in [Graph::cycle(5)?, Graph::path(4)?] {
        let t = ring(&g, config)?;
        let base = KoszulConfig {
            i_max: 3,
            j_max: 3,
            shortcut: false,
            ..config.clone()
        };
        let red = koszul_verdict(&t, &base)?;
        let dir = koszul_verdict(&t, &KoszulConfig { mode: BettiMode::Direct, ..base.clone() })?;
        match (&red.reduced_table, &dir.table) {
            (Some(a), Some(r)) => c.check(
                transfer_check(r, a, red.linear_system.len())?,
                format!("transfer fails on {:?}", g.edges()),
            ),
            _ => c.check(false, "missing tables for the transfer check"),
        }
    }

    for (name, ideal) in &corpus {
        if name == "cbar(3)" {
            continue;
        }
        let (i_max, j_max) = if name == "cycle ideal" { (3, 4) } else { (3, 3) };
        let cfg = KoszulConfig {
            i_max,
            j_max,
            ..config.clone()
        };
        let order = TermOrder::grevlex(ideal.width());
        let q = ring_table(ideal, &order, &KoszulConfig { characteristic: 0, ..cfg.clone() })?;
        let p = ring_table(ideal, &order, &KoszulConfig { characteristic: 32003, ..cfg })?;
        c.check(q.entries == p.entries, format!("{name}: characteristic 0 and 32003 tables differ"));
    }
    // a stored basis from the quadratic Gröbner basis search
    let t = ring(&Graph::cycle(5)?, config)?;
    if let Some(w) = decide_quadratic_gb(&t, &config.qgb)?.witness {
        c.check(w.gb.verify_spairs(None), "quadratic witness basis fails S-pair check");
    }
    c.done()
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseOutcome>,
    pub timings: Timings,
}

impl SuiteReport {
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("suite serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("timings");
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for case in &self.cases {
            let tag = if case.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {:<22} {}\n", case.name, case.claim));
            for f in &case.failures {
                out.push_str(&format!("     - {f}\n"));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

/// Run the named cases (all when `only` is empty). A case that errors is
/// reported as failed with the error text.
pub fn run_suite(config: &KoszulConfig, only: &[String]) -> SuiteReport {
    let mut timings = Timings::default();
    let mut cases = Vec::new();
    for (name, f) in CASES {
        if !only.is_empty() && !only.iter().any(|o| o == name) {
            continue;
        }
        let start = Instant::now();
        let out = match f(config) {
            Ok(o) => o,
            Err(e) => CaseOutcome {
                name,
                claim: "",
                passed: false,
                failures: vec![format!("error: {e}")],
                details: BTreeMap::new(),
            },
        };
        timings.millis.insert(name.to_string(), start.elapsed().as_millis());
        cases.push(out);
    }
    let passed = cases.iter().filter(|c| c.passed).count();
    SuiteReport {
        schema: SCHEMA,
        tool_version: TOOL_VERSION,
        passed,
        failed: cases.len() - passed,
        cases,
        timings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_names_are_unique() {
        let names: BTreeSet<&str> = CASES.iter().map(|(n, _)| *n).collect();
        assert_eq!(names.len(), CASES.len());
        assert!(case_by_name("non_koszul").is_some());
        assert!(case_by_name("nope").is_none());
    }

    #[test]
    fn quick_cases_pass() {
        let cfg = KoszulConfig::default();
        for name in ["stable_sets", "artinian_reduction", "small_graph_classes"] {
            let out = case_by_name(name).unwrap()(&cfg).unwrap();
            assert!(out.passed, "{name}: {:?}", out.failures);
        }
    }

    #[test]
    fn single_case_run() {
        let r = run_suite(&KoszulConfig::default(), &["stable_sets".to_string()]);
        assert_eq!((r.passed, r.failed), (1, 0));
        assert!(r.deterministic_json().get("timings").is_none());
    }
}
