//! `qmforge`: batch verification sweeps over balls of free groups.
//!
//! Exit status 0 on success, 1 when a verified property fails, 2 on usage or
//! input errors.

mod spec;

use std::collections::BTreeMap;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qmforge_core::overlap_graphs::DEFAULT_EXACT_LIMIT;
use qmforge_core::{
    build_overlap_graphs, continuity_profile, delta_triangle, enumerate_ball,
    estimate_decomposition_defect, estimate_defect, generate_fundamental_set, graph_metrics, iota,
    kappa_alpha, kappa_of_set, parse_word_set, pullback_eval, transitive_tournament_line_graph,
    ulam_violation_witness, BlockStructure, CoefficientMap, Digraph, Error, GraphMetrics,
    LetterOrder, PairMode, ValueTable,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::spec::{implied_rank, parse_decomposition, parse_spec, parse_word, read_file};

/// Version of the JSON report envelope; see docs/report-schema.json.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "qmforge", version, about = "Quasimorphisms on free groups, checked by exhaustive enumeration")]
struct Cli {
    /// Worker threads for scans.
    #[arg(long, global = true, env = "QMFORGE_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    All,
    Reduced,
}

impl From<Mode> for PairMode {
    fn from(m: Mode) -> PairMode {
        match m {
            Mode::All => PairMode::All,
            Mode::Reduced => PairMode::Reduced,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    GeneratorsFirst,
    Interleaved,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphName {
    Og,
    Sg,
    Osg,
    OgBar,
    SgBar,
    OsgBar,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a spec on words.
    Eval {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        spec: String,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Certified lower bound on the defect over a ball.
    Defect {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
    },
    /// Grigorchuk coefficients of a spec's values on a ball.
    Expand {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// κ report of a coefficient file.
    Kappa {
        /// Lines `word value`, optional `rank=N` header.
        file: String,
    },
    /// The Δ-triangle of a pair.
    Triangle {
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        decomp: String,
        g: String,
        h: String,
    },
    /// Certified defect of a decomposition over a ball.
    DecompDefect {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// Exact continuity profile of a spec against a decomposition.
    Profile {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        decomp: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// Overlap graphs of a word set, or the line graph of a transitive tournament.
    Graph {
        /// Word-set file (`rank=N` header, one word per line).
        #[arg(long, conflicts_with = "tournament", required_unless_present = "tournament")]
        words: Option<String>,
        #[arg(long)]
        tournament: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
        /// Print one graph as an edge list instead of the report (text format).
        #[arg(long, value_enum, conflicts_with = "tournament")]
        edge_list: Option<GraphName>,
    },
    /// Fundamental set of words up to a length.
    Fundset {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Order::GeneratorsFirst)]
        order: Order,
    },
    /// Pull a spec on F * F back along ι, or search an Ulam witness.
    Iota {
        #[arg(long, default_value = "a,b|c,d")]
        blocks: String,
        /// Spec on F * F, in its letters.
        #[arg(long, required_unless_present = "ulam_ball", conflicts_with = "ulam_ball")]
        spec: Option<String>,
        /// Search `g` with ι(g²) outside E ι(g) E ι(g) E for E = ball(R) of F * F.
        #[arg(long)]
        ulam_ball: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        words: Vec<String>,
    },
}

/// A verified property that failed; exit status 1.
#[derive(Debug)]
struct Violation(String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Violation {}

struct Report {
    command: &'static str,
    result: Value,
    text: Option<String>,
    violation: Option<String>,
}

impl Report {
    fn new(command: &'static str, result: impl Serialize) -> Result<Report> {
        Ok(Report {
            command,
            result: serde_json::to_value(result)?,
            text: None,
            violation: None,
        })
    }

    fn text(mut self, text: String) -> Report {
        self.text = Some(text);
        self
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set up {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Json => {
                    let envelope = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": report.command,
                        "result": report.result,
                    });
                    println!("{}", serde_json::to_string_pretty(&envelope).expect("json values serialize"));
                }
                Format::Text => match &report.text {
                    Some(t) => print!("{t}"),
                    None => println!(
                        "{}",
                        serde_json::to_string_pretty(&report.result).expect("json values serialize")
                    ),
                },
            }
            match report.violation {
                Some(v) => {
                    eprintln!("violation: {v}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            let violation = e.downcast_ref::<Violation>().is_some()
                || matches!(
                    e.downcast_ref::<Error>(),
                    Some(Error::BoundViolation { .. } | Error::AxiomViolation(_))
                );
            if violation {
                eprintln!("violation: {e:#}");
                ExitCode::from(1)
            } else {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        }
    }
}

fn lines<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| format!("{x}\n")).collect()
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::Eval { rank, spec, words } => {
            let s = parse_spec(&spec, rank)?;
            let mut values = Vec::new();
            let mut text = String::new();
            for word in &words {
                let g = parse_word(word, rank)?;
                let v = s.evaluate(&g)?;
                text.push_str(&format!("{v}\n"));
                values.push(json!({ "word": g, "value": v }));
            }
            Ok(Report::new("eval", json!({ "spec": s.to_string(), "values": values }))?.text(text))
        }
        Command::Defect {
            rank,
            spec,
            radius,
            mode,
        } => {
            let s = parse_spec(&spec, rank)?;
            Report::new("defect", estimate_defect(&s, rank, radius, mode.into())?)
        }
        Command::Expand { rank, spec, radius } => {
            let s = parse_spec(&spec, rank)?;
            let table = ValueTable::build(&s, rank, radius)?;
            let map = qmforge_core::grigorchuk_expand(&table)?;
            let text = map.to_text();
            Ok(Report::new(
                "expand",
                json!({ "spec": s.to_string(), "radius": radius, "coefficients": map }),
            )?
            .text(text))
        }
        Command::Kappa { file } => {
            let map = CoefficientMap::parse(&read_file(&file)?)
                .with_context(|| format!("bad coefficient file {file}"))?;
            Report::new("kappa", kappa_alpha(&map)?)
        }
        Command::Triangle { rank, decomp, g, h } => {
            let rank = resolve_rank(rank, &decomp)?;
            let d = parse_decomposition(&decomp, rank)?;
            let (g, h) = (parse_word(&g, rank)?, parse_word(&h, rank)?);
            Report::new("triangle", delta_triangle(&d, &g, &h)?)
        }
        Command::DecompDefect { kind, rank, radius } => {
            let rank = resolve_rank(rank, &kind)?;
            let d = parse_decomposition(&kind, rank)?;
            Report::new("decomp-defect", estimate_decomposition_defect(&d, rank, radius)?)
        }
        Command::Profile {
            spec,
            decomp,
            rank,
            radius,
        } => {
            let rank = resolve_rank(rank, &decomp)?;
            let s = parse_spec(&spec, rank)?;
            let d = parse_decomposition(&decomp, rank)?;
            let profile = continuity_profile(&s, &d, rank, radius)?;
            let mut report = Report::new("profile", &profile)?;
            if profile.within_theoretical == Some(false) {
                report.violation = Some(format!(
                    "profile of {} against {} exceeds its theoretical bound",
                    profile.spec, profile.decomposition
                ));
            }
            Ok(report)
        }
        Command::Graph {
            words,
            tournament,
            exact_limit,
            edge_list,
        } => match (words, tournament) {
            (_, Some(n)) => {
                let g = transitive_tournament_line_graph(n)?;
                let metrics = graph_metrics(&g, exact_limit);
                Report::new("graph", json!({ "graph": g, "metrics": metrics }))
            }
            (Some(file), None) => graph_report(&file, exact_limit, edge_list),
            (None, None) => bail!("graph needs --words or --tournament"),
        },
        Command::Fundset {
            rank,
            max_len,
            order,
        } => {
            let (order, name) = match order {
                Order::GeneratorsFirst => (LetterOrder::generators_first(rank), "generators-first"),
                Order::Interleaved => (LetterOrder::interleaved(rank), "interleaved"),
            };
            let set = generate_fundamental_set(max_len, &order)?;
            let text = lines(&set);
            Ok(Report::new(
                "fundset",
                json!({ "rank": rank, "max_len": max_len, "order": name, "words": set }),
            )?
            .text(text))
        }
        Command::Iota {
            blocks,
            spec,
            ulam_ball,
            max_len,
            words,
        } => {
            let bs = BlockStructure::parse(&blocks)?;
            let sizes = bs.sizes();
            if sizes.len() != 2 || sizes[0] != sizes[1] {
                bail!("ι needs two blocks of equal rank, got {bs}");
            }
            let n = sizes[0];
            if let Some(r) = ulam_ball {
                if !words.is_empty() {
                    bail!("--ulam-ball takes no words");
                }
                let e = enumerate_ball(bs.rank(), r);
                return match ulam_violation_witness(&bs, &e, max_len) {
                    Ok(w) => Report::new("iota", json!({ "ulam": w })),
                    Err(Error::BudgetExceeded(msg)) => Err(Violation(msg).into()),
                    Err(e) => Err(e.into()),
                };
            }
            let s = parse_spec(spec.as_deref().expect("clap requires --spec"), bs.rank())?;
            if words.is_empty() {
                bail!("iota --spec needs at least one word");
            }
            let mut values = Vec::new();
            let mut text = String::new();
            for word in &words {
                let g = parse_word(word, n)?;
                let v = pullback_eval(&s, &bs, &g)?;
                text.push_str(&format!("{v}\n"));
                values.push(json!({ "word": g, "image": iota(&bs, &g)?, "value": v }));
            }
            Ok(Report::new("iota", json!({ "spec": s.to_string(), "values": values }))?.text(text))
        }
    }
}

fn resolve_rank(rank: Option<usize>, decomp: &str) -> Result<usize> {
    Ok(match (rank, implied_rank(decomp)) {
        (Some(r), Some(i)) if r != i => bail!("--rank {r} conflicts with {decomp}"),
        (Some(r), _) => r,
        (None, Some(i)) => i,
        (None, None) => 2,
    })
}

fn graph_report(file: &str, exact_limit: usize, edge_list: Option<GraphName>) -> Result<Report> {
    let set = parse_word_set(&read_file(file)?).with_context(|| format!("bad word set {file}"))?;
    let b = build_overlap_graphs(&set.words)?;
    let graphs: [(&str, &Digraph); 6] = [
        ("og", &b.og),
        ("sg", &b.sg),
        ("osg", &b.osg),
        ("og_bar", &b.og_bar),
        ("sg_bar", &b.sg_bar),
        ("osg_bar", &b.osg_bar),
    ];
    let metrics: BTreeMap<&str, GraphMetrics> = graphs
        .iter()
        .map(|(name, g)| (*name, graph_metrics(g, exact_limit)))
        .collect();
    let kappa = kappa_of_set(&set.words)?;

    // Inequalities that hold on every symmetric non-self-overlapping set,
    // checked where the metrics involved are exact.
    let m = |name: &str| &metrics[name];
    let le = |a: Option<usize>, b: Option<usize>| match (a, b) {
        (Some(a), Some(b)) => Some(a <= b),
        _ => None,
    };
    let mut chain: BTreeMap<&str, Option<bool>> = BTreeMap::new();
    chain.insert("kappa <= omega(osg)", le(Some(kappa), m("osg").omega.exact()));
    chain.insert("omega(og) <= omega(og_bar)", le(m("og").omega.exact(), m("og_bar").omega.exact()));
    chain.insert("chi(og) <= chi(og_bar)", le(m("og").chi.exact(), m("og_bar").chi.exact()));
    chain.insert(
        "chi(sg_bar) <= lp(sg) + 1",
        le(m("sg_bar").chi.exact(), m("sg").lp.map(|l| l + 1)),
    );
    let omega_chi = metrics
        .values()
        .filter_map(|g| le(g.omega.exact(), g.chi.exact()))
        .all(|ok| ok);
    chain.insert("omega <= chi", Some(omega_chi));
    let failed: Vec<&str> = chain
        .iter()
        .filter(|(_, v)| **v == Some(false))
        .map(|(k, _)| *k)
        .collect();

    let mut report = Report::new(
        "graph",
        json!({ "bundle": b, "metrics": metrics, "kappa": kappa, "chain": chain }),
    )?;
    if let Some(which) = edge_list {
        let g = match which {
            GraphName::Og => &b.og,
            GraphName::Sg => &b.sg,
            GraphName::Osg => &b.osg,
            GraphName::OgBar => &b.og_bar,
            GraphName::SgBar => &b.sg_bar,
            GraphName::OsgBar => &b.osg_bar,
        };
        report = report.text(g.to_edge_list());
    }
    if !failed.is_empty() {
        report.violation = Some(format!("graph inequalities failed: {}", failed.join(", ")));
    }
    Ok(report)
}
