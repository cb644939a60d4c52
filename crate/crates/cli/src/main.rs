use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use koszul_forge::error::Error;
use koszul_forge::graph::{classify_with_cap, enumerate_graphs, parse_graph, stable_sets, Graph, DEFAULT_CLASSIFY_CAP};
use koszul_forge::groebner::{reduced_gb_with, GbConfig, IdealPresentation, DEFAULT_SPAIR_CAP};
use koszul_forge::hilbert::{gorenstein_certificate, hilbert_data, hilbert_of_monomial_ideal, GorensteinConfig};
use koszul_forge::koszul::{koszul_verdict, BettiMode, KoszulConfig};
use koszul_forge::poly::TermOrder;
use koszul_forge::qgb::{decide_quadratic_gb, QgbConfig, DEFAULT_MARKING_CAP};
use koszul_forge::report::{analyze, status_text, SCHEMA};
use koszul_forge::suite::{run_suite, CASES};
use koszul_forge::toric::{monomial_map, toric_ideal_with, ToricIdeal};

mod cache;

use cache::{cache_key, Cache, CACHE_ENV};

#[derive(Parser, Debug)]
#[command(name = "koszul-forge", version, about = "Exact algebra of toric rings of stable set polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the stable sets of a graph in canonical order.
    StableSets { graph: String },
    /// Minimal binomial generators of the toric ideal.
    ToricIdeal { graph: String },
    /// Reduced Gröbner basis of the toric ideal (or of --ideal).
    Groebner(Target),
    /// Hilbert series, h-vector and Krull dimension.
    Hilbert(Target),
    /// Gorenstein verdict with its certificate.
    Gorenstein(Target),
    /// Decide whether some term order gives a quadratic Gröbner basis.
    Qgb { graph: String },
    /// Koszulness verdict from Betti numbers of the residue field.
    Koszul {
        graph: String,
        /// Resolve over the ring itself instead of an artinian reduction.
        #[arg(long)]
        direct: bool,
        /// Skip the quadratic Gröbner basis shortcut.
        #[arg(long)]
        no_shortcut: bool,
    },
    /// Graph class flags (bipartite, comparability, perfect, ...).
    Classify { graph: String },
    /// All graphs on n vertices up to isomorphism.
    Enumerate {
        n: usize,
        #[arg(long)]
        classify: bool,
    },
    /// Full pipeline report for one graph.
    Analyze { graph: String },
    /// Run the reference cases.
    PaperSuite {
        /// Run only these cases (repeatable).
        #[arg(long = "case")]
        cases: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct Target {
    /// Graph description; omit when --ideal is given.
    graph: Option<String>,
    /// JSON ideal presentation `{"labels": [...], "generators": [...]}`.
    #[arg(long)]
    ideal: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum OrderArg {
    Grevlex,
    Lex,
    RevlexNongraded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Serialize)]
struct Flags {
    #[arg(long, global = true, value_enum, default_value = "grevlex")]
    order: OrderArg,
    /// Variables from least to greatest, comma separated.
    #[arg(long, global = true)]
    var_order: Option<String>,
    /// Coefficient field characteristic: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,
    #[arg(long, global = true, default_value_t = 4)]
    imax: usize,
    #[arg(long, global = true, default_value_t = 5)]
    jmax: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MARKING_CAP)]
    marking_cap: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_SPAIR_CAP)]
    spair_cap: u64,
    /// Regularity tests allowed in the parameter search.
    #[arg(long, global = true, default_value_t = 400)]
    lsop_budget: usize,
    #[arg(long, global = true, default_value_t = 0x6b6f737a)]
    seed: u64,
    #[serde(skip)]
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[serde(skip)]
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[serde(skip)]
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[serde(skip)]
    #[arg(long, global = true)]
    no_cache: bool,
    #[serde(skip)]
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Flags {
    fn gb(&self) -> GbConfig {
        GbConfig {
            spair_cap: self.spair_cap,
            truncate: None,
        }
    }

    fn koszul(&self) -> KoszulConfig {
        KoszulConfig {
            i_max: self.imax,
            j_max: self.jmax,
            characteristic: self.characteristic,
            gorenstein: GorensteinConfig {
                budget: self.lsop_budget,
                seed: self.seed,
                gb: self.gb(),
                ..GorensteinConfig::default()
            },
            qgb: QgbConfig {
                marking_cap: self.marking_cap,
                gb: self.gb(),
            },
            gb: self.gb(),
            ..KoszulConfig::default()
        }
    }

    fn term_order(&self, labels: &[String]) -> Result<TermOrder, Error> {
        let ranking = match &self.var_order {
            None => (0..labels.len()).collect(),
            Some(list) => split_labels(list)
                .into_iter()
                .map(|name| {
                    let name = name.trim();
                    labels
                        .iter()
                        .position(|l| l == name)
                        .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {name:?} in --var-order")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        match self.order {
            OrderArg::Grevlex => TermOrder::grevlex_ranked(ranking),
            OrderArg::Lex => TermOrder::lex_ranked(ranking),
            OrderArg::RevlexNongraded => TermOrder::revlex_nongraded_ranked(ranking),
        }
    }
}

/// Splits a comma separated label list, ignoring commas inside braces.
fn split_labels(list: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in list.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&list[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&list[start..]);
    out
}

/// A computed result: JSON plus its human-readable rendering.
#[derive(Serialize, Deserialize)]
struct Output {
    json: Value,
    text: String,
}

fn read_graph(spec: &str) -> Result<Graph, Error> {
    let p = std::path::Path::new(spec);
    if p.is_file() {
        let s = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        return parse_graph(&s);
    }
    parse_graph(spec)
}

fn toric(g: &Graph, flags: &Flags) -> Result<ToricIdeal, Error> {
    toric_ideal_with(&monomial_map(g), &flags.gb())
}

fn target_ideal(t: &Target, flags: &Flags) -> Result<(Value, IdealPresentation), Error> {
    match (&t.graph, &t.ideal) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument("give either a graph or --ideal, not both".into())),
        (None, None) => Err(Error::InvalidArgument("missing input: a graph or --ideal FILE".into())),
        (Some(spec), None) => {
            let g = read_graph(spec)?;
            Ok((json!({"graph": g}), toric(&g, flags)?.presentation))
        }
        (None, Some(path)) => {
            let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let ideal = IdealPresentation::from_json(&s)?;
            Ok((json!({"ideal": ideal}), ideal))
        }
    }
}

fn text_lines(lines: &[String]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}

/// The canonical input (for the cache key and the echo) and the runner.
type Job = (Value, Box<dyn FnOnce() -> Result<Output, Error>>);

fn plan(cmd: Command, flags: &'static Flags) -> Result<Job, Error> {
    Ok(match cmd {
        Command::StableSets { graph } => {
            let g = read_graph(&graph)?;
            (json!({"graph": g}), Box::new(move || {
                let f = stable_sets(&g);
                let labels: Vec<String> = f.sets.iter().map(|s| koszul_forge::toric::stable_set_label(s)).collect();
                Ok(Output {
                    json: json!({"count": f.len(), "alpha": f.alpha, "sets": f.sets, "labels": labels}),
                    text: text_lines(&labels),
                })
            }))
        }
        Command::ToricIdeal { graph } => {
            let g = read_graph(&graph)?;
            (json!({"graph": g}), Box::new(move || {
                let t = toric(&g, flags)?;
                let gens = t.presentation.to_text();
                Ok(Output {
                    json: json!({
                        "labels": t.presentation.labels,
                        "ideal": t.presentation,
                        "count": gens.len(),
                        "quadratic": t.presentation.is_quadratic(),
                        "generators": gens,
                        "provenance": t.provenance,
                    }),
                    text: text_lines(&gens),
                })
            }))
        }
        Command::Groebner(target) => {
            let (input, ideal) = target_ideal(&target, flags)?;
            (input, Box::new(move || {
                let order = flags.term_order(&ideal.labels)?;
                let gb = reduced_gb_with(&ideal, &order, &flags.gb())?;
                let basis: Vec<String> = gb.elements.iter().map(|e| e.to_text_ordered(&gb.labels, Some(&order))).collect();
                let leading = gb.initial_ideal().to_text(&gb.labels);
                Ok(Output {
                    json: json!({
                        "order": order.describe(&gb.labels),
                        "basis": basis,
                        "initial_ideal": leading,
                        "max_degree": gb.max_degree,
                        "quadratic": gb.is_quadratic(),
                        "spairs_processed": gb.spairs_processed,
                    }),
                    text: text_lines(&basis),
                })
            }))
        }
        Command::Hilbert(target) => {
            let (input, ideal) = target_ideal(&target, flags)?;
            (input, Box::new(move || {
                let hd = if flags.order == OrderArg::Grevlex && flags.var_order.is_none() {
                    hilbert_data(&ideal, &flags.gb())?
                } else {
                    let order = flags.term_order(&ideal.labels)?;
                    let gb = reduced_gb_with(&ideal, &order, &flags.gb())?;
                    hilbert_of_monomial_ideal(&gb.initial_ideal())?
                };
                let text = format!(
                    "series   {}\nh-vector {:?}\ndim      {}\n",
                    hd.series_text(),
                    hd.h_vector,
                    hd.krull_dim
                );
                Ok(Output {
                    json: json!({
                        "series": hd.series_text(),
                        "h_vector": hd.h_vector,
                        "krull_dim": hd.krull_dim,
                        "numerator": hd.numerator,
                        "denominator_exponent": hd.denominator_exponent,
                        "socle_degree": hd.socle_degree,
                    }),
                    text,
                })
            }))
        }
        Command::Gorenstein(target) => {
            let (input, ideal) = target_ideal(&target, flags)?;
            (input, Box::new(move || {
                let cert = gorenstein_certificate(&ideal, &flags.koszul().gorenstein)?;
                let mut json = serde_json::to_value(&cert).expect("certificate serializes");
                if let Some(s) = &cert.socle {
                    json["socle_elements"] = json!(s.element_texts());
                }
                let mut text = format!("verdict  {:?}\nh-vector {:?}\n", cert.verdict, cert.h_vector);
                for f in &cert.linear_system {
                    text.push_str(&format!("form     {f}\n"));
                }
                if let Some(s) = &cert.socle {
                    text.push_str(&format!("socle    dimension {} by degree {:?}\n", s.dimension, s.by_degree));
                }
                Ok(Output { json, text })
            }))
        }
        Command::Qgb { graph } => {
            let g = read_graph(&graph)?;
            (json!({"graph": g}), Box::new(move || {
                let t = toric(&g, flags)?;
                let d = decide_quadratic_gb(&t, &flags.koszul().qgb)?;
                let mut text = format!(
                    "exists   {}\nmarkings {} total, {} feasible, {} infeasible\n",
                    d.exists, d.total_markings, d.feasible_markings, d.infeasible_markings
                );
                if let Some(w) = &d.witness {
                    text.push_str(&format!("order    {}\n", w.order.describe(&t.presentation.labels)));
                    text.push_str(&text_lines(&w.basis));
                }
                Ok(Output {
                    json: serde_json::to_value(&d).expect("decision serializes"),
                    text,
                })
            }))
        }
        Command::Koszul {
            graph,
            direct,
            no_shortcut,
        } => {
            let g = read_graph(&graph)?;
            (json!({"graph": g, "direct": direct, "no_shortcut": no_shortcut}), Box::new(move || {
                let t = toric(&g, flags)?;
                let cfg = KoszulConfig {
                    mode: if direct { BettiMode::Direct } else { BettiMode::Reduced },
                    shortcut: !no_shortcut,
                    order: Some(flags.term_order(&t.presentation.labels)?),
                    ..flags.koszul()
                };
                let v = koszul_verdict(&t, &cfg)?;
                let mut text = format!("{}\n", status_text(&v.status));
                if let Some(table) = &v.table {
                    text.push_str(&table.to_text());
                }
                Ok(Output {
                    json: serde_json::to_value(&v).expect("verdict serializes"),
                    text,
                })
            }))
        }
        Command::Classify { graph } => {
            let g = read_graph(&graph)?;
            (json!({"graph": g}), Box::new(move || {
                let f = classify_with_cap(&g, DEFAULT_CLASSIFY_CAP)?;
                let json = serde_json::to_value(f).expect("flags serialize");
                let text = json
                    .as_object()
                    .expect("object")
                    .iter()
                    .map(|(k, v)| format!("{k:<26}{v}\n"))
                    .collect();
                Ok(Output { json, text })
            }))
        }
        Command::Enumerate { n, classify } => (json!({"n": n, "classify": classify}), Box::new(move || {
            let graphs = enumerate_graphs(n)?;
            let mut items = Vec::new();
            let mut text = String::new();
            for g in &graphs {
                let mut item = json!({"edges": g.edges()});
                text.push_str(&format!("{:?}", g.edges()));
                if classify {
                    let f = classify_with_cap(g, DEFAULT_CLASSIFY_CAP)?;
                    text.push_str(&format!(" comparability={} almost_bipartite={}", f.comparability, f.almost_bipartite));
                    item["flags"] = serde_json::to_value(f).expect("flags serialize");
                }
                text.push('\n');
                items.push(item);
            }
            Ok(Output {
                json: json!({"count": graphs.len(), "graphs": items}),
                text,
            })
        })),
        Command::Analyze { graph } => {
            let g = read_graph(&graph)?;
            (json!({"graph": g, "description": graph}), Box::new(move || {
                let cfg = KoszulConfig {
                    order: Some(flags.term_order(&monomial_map(&g).labels)?),
                    ..flags.koszul()
                };
                let r = analyze(&graph, &g, &cfg)?;
                Ok(Output {
                    json: serde_json::to_value(&r).expect("report serializes"),
                    text: r.to_text(),
                })
            }))
        }
        Command::PaperSuite { cases } => {
            for c in &cases {
                if !CASES.iter().any(|(n, _)| n == c) {
                    let known: Vec<&str> = CASES.iter().map(|(n, _)| *n).collect();
                    return Err(Error::InvalidArgument(format!("unknown case {c:?}; known: {}", known.join(", "))));
                }
            }
            (json!({"cases": cases}), Box::new(move || {
                let r = run_suite(&flags.koszul(), &cases);
                Ok(Output {
                    json: serde_json::to_value(&r).expect("suite serializes"),
                    text: r.to_text(),
                })
            }))
        }
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::StableSets { .. } => "stable-sets",
        Command::ToricIdeal { .. } => "toric-ideal",
        Command::Groebner(_) => "groebner",
        Command::Hilbert(_) => "hilbert",
        Command::Gorenstein(_) => "gorenstein",
        Command::Qgb { .. } => "qgb",
        Command::Koszul { .. } => "koszul",
        Command::Classify { .. } => "classify",
        Command::Enumerate { .. } => "enumerate",
        Command::Analyze { .. } => "analyze",
        Command::PaperSuite { .. } => "paper-suite",
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceCap { .. } | Error::SizeLimit { .. } => 2,
        _ => 1,
    }
}

fn emit(bytes: &[u8], out: &Option<PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().write_all(bytes),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let flags: &'static Flags = Box::leak(Box::new(cli.flags));
    if let Some(j) = flags.jobs {
        if j == 0 {
            return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    if flags.characteristic != 0 {
        koszul_forge::linalg::PrimeField::new(flags.characteristic)?;
    }
    let name = command_name(&cli.command);
    let is_suite = matches!(cli.command, Command::PaperSuite { .. });
    let cheap = matches!(
        cli.command,
        Command::StableSets { .. } | Command::Classify { .. } | Command::Enumerate { .. }
    );
    let (input, job) = plan(cli.command, flags)?;
    let echo = serde_json::to_value(flags).expect("flags serialize");
    let cache = if flags.no_cache || cheap {
        None
    } else {
        flags
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .and_then(|d| Cache::open(&d))
    };
    let key = cache_key(&[SCHEMA, name, &input.to_string(), &echo.to_string()]);
    let cached: Option<Output> = cache
        .as_ref()
        .and_then(|c| c.get(&key))
        .and_then(|b| serde_json::from_slice(&b).ok());
    let output = match cached {
        Some(o) => o,
        None => {
            let o = job()?;
            if let Some(c) = &cache {
                let bytes = serde_json::to_vec(&o).expect("output serializes");
                if let Err(e) = c.put(&key, &bytes) {
                    eprintln!("warning: cache write failed ({e})");
                }
            }
            o
        }
    };
    let mut code = 0;
    if is_suite && output.json["failed"].as_u64().unwrap_or(0) > 0 {
        code = 1;
    }
    let bytes = match flags.format {
        Format::Json => {
            let env = json!({
                "schema": SCHEMA,
                "command": name,
                "input": input,
                "flags": echo,
                "result": output.json,
            });
            let mut s = serde_json::to_string_pretty(&env).expect("envelope serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => output.text.into_bytes(),
    };
    emit(&bytes, &flags.out).map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
