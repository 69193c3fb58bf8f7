//! Command line front end: graph generation, sequence classification, chain
//! search and verification, grid constructions, and labeling decisions.
//!
//! Exit codes: 0 for a conclusive answer, 2 for an inconclusive one (budget
//! or cap ran out), 1 for usage and input errors.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use magicchains::io as wire;
use magicchains::{
    certify_ndm_with, construct_t2, find_t1, nsg, solve, verify_t1, verify_t2, CertifyMethod,
    CertifyOutcome, ChainT1, Graph, MagicResult, DEFAULT_CHAIN_BUDGET, DEFAULT_ORACLE_CAP,
};

#[derive(Parser)]
#[command(name = "magicchains", version, about = "Neighbourhood chains and distance magic labelings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Read input from a file instead of stdin.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Force single-threaded search for byte-reproducible runs.
    #[arg(long, global = true)]
    deterministic: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named graph.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Classify a set family in the walk/trail/chain/cycle hierarchy.
    Classify {
        /// Drop a trailing repeated term (closed-walk notation) first.
        #[arg(long)]
        normalize: bool,
    },
    /// Neighbourhood-sequence graph of the given centers.
    Nsg {
        #[arg(long, value_delimiter = ',', required = true)]
        centers: Vec<usize>,
    },
    /// Search for type-1 chains of a given length.
    FindT1 {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = DEFAULT_CHAIN_BUDGET)]
        budget: u64,
        /// Stop after this many chains.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check the type-1 chain conditions for explicit centers.
    VerifyT1 {
        #[arg(long, value_delimiter = ',', required = true)]
        centers: Vec<usize>,
    },
    /// Search for an interlocking pair of type-1 chains.
    FindT2 {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = DEFAULT_CHAIN_BUDGET)]
        budget: u64,
        /// Cap on type-1 chains collected before pairing.
        #[arg(long, default_value_t = 64)]
        limit: usize,
    },
    /// Check the type-2 conditions for two explicit center lists.
    VerifyT2 {
        #[arg(long, value_delimiter = ',', required = true)]
        first: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        second: Vec<usize>,
    },
    /// Build the k x n cylindrical grid with its diagonal type-2 pair.
    GridT2 { k: usize, n: usize },
    /// Decide whether the input graph has a distance magic labeling.
    Solve,
    /// Certify that no distance magic labeling exists.
    Certify {
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        #[arg(long, default_value_t = DEFAULT_CHAIN_BUDGET)]
        budget: u64,
        /// Methods to try, in order.
        #[arg(long, value_delimiter = ',', value_enum)]
        method: Option<Vec<MethodArg>>,
    },
    /// Re-emit the input graph in another format.
    Export {
        /// Centers whose closed neighbourhoods stay solid in dot output.
        #[arg(long, value_delimiter = ',')]
        centers: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Path { n: usize },
    Cycle { n: usize },
    /// Cylindrical grid with k path rows and n cycle columns.
    Grid { k: usize, n: usize },
    Complete { n: usize },
    Empty { n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    ForbiddenPair,
    EvenChain,
    Exhaustive,
}

impl From<MethodArg> for CertifyMethod {
    fn from(m: MethodArg) -> CertifyMethod {
        match m {
            MethodArg::ForbiddenPair => CertifyMethod::ForbiddenPair,
            MethodArg::EvenChain => CertifyMethod::EvenChain,
            MethodArg::Exhaustive => CertifyMethod::Exhaustive,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

struct Output {
    path: Option<PathBuf>,
    format: Format,
}

impl Output {
    fn emit(&self, mut text: String) -> Result<()> {
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.path {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .context("writing stdout"),
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading stdin")?;
            Ok(buf)
        }
    }
}

/// Graphs arrive as JSON documents or plain edge lists; detect by shape.
fn read_graph(path: &Option<PathBuf>) -> Result<Graph> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('{') {
        Ok(wire::read_graph_json(&text)?)
    } else {
        Ok(wire::read_edge_list(&text)?)
    }
}

fn emit_graph(out: &Output, g: &Graph, centers: &[usize]) -> Result<()> {
    match out.format {
        Format::Json => out.emit(wire::write_graph_json(g)),
        Format::Text => out.emit(wire::write_edge_list(g)),
        Format::Dot => out.emit(wire::write_dot(g, centers)),
    }
}

fn ids(list: &[usize]) -> String {
    list.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn run(cli: Cli) -> Result<u8> {
    if cli.deterministic {
        std::env::set_var("MAGICCHAINS_THREADS", "1");
    }
    let out = Output {
        path: cli.out.clone(),
        format: cli.format,
    };
    match cli.command {
        Command::Gen { kind } => {
            let g = match kind {
                GenKind::Path { n } => Graph::path(n)?,
                GenKind::Cycle { n } => Graph::cycle(n)?,
                GenKind::Grid { k, n } => Graph::cylindrical_grid(k, n)?,
                GenKind::Complete { n } => {
                    let mut edges = Vec::new();
                    for u in 0..n {
                        for v in u + 1..n {
                            edges.push((u, v));
                        }
                    }
                    Graph::from_edge_list(n, &edges)?
                }
                GenKind::Empty { n } => Graph::empty(n),
            };
            emit_graph(&out, &g, &[])?;
            Ok(0)
        }
        Command::Classify { normalize } => {
            let text = read_input(&cli.input)?;
            let mut family = wire::read_family_json(&text)?;
            if normalize {
                if family.len() < 3 {
                    bail!("--normalize needs at least 3 terms");
                }
                family = family.normalize_closed();
            }
            let class = family.classify();
            match out.format {
                Format::Json => out.emit(wire::to_json(&class)),
                Format::Text => out.emit(class.name().to_string()),
                Format::Dot => bail!("classify has no dot form"),
            }?;
            Ok(0)
        }
        Command::Nsg { centers } => {
            let g = read_graph(&cli.input)?;
            let graph = nsg(&g, &centers)?;
            match out.format {
                Format::Json => out.emit(wire::to_json(&json!({
                    "graph": serde_json::to_value(wire::GraphDoc::from_graph(&graph.graph))?,
                    "original_ids": graph.original_ids,
                    "connected": graph.is_connected(),
                }))),
                Format::Text => out.emit(format!(
                    "order={} size={} connected={}",
                    graph.graph.order(),
                    graph.graph.size(),
                    graph.is_connected()
                )),
                Format::Dot => {
                    // centers under their ids inside the extracted graph
                    let local: Vec<usize> = graph
                        .original_ids
                        .iter()
                        .enumerate()
                        .filter(|(_, old)| centers.contains(old))
                        .map(|(new, _)| new)
                        .collect();
                    out.emit(wire::write_dot(&graph.graph, &local))
                }
            }?;
            Ok(0)
        }
        Command::FindT1 {
            length,
            budget,
            limit,
        } => {
            let g = read_graph(&cli.input)?;
            let found = find_t1(&g, length, budget, limit);
            match out.format {
                Format::Json => out.emit(wire::to_json(&json!({
                    "chains": found
                        .chains
                        .iter()
                        .map(|c| serde_json::to_value(wire::ChainWitnessDoc::from_chain(c)))
                        .collect::<Result<Vec<_>, _>>()?,
                    "complete": found.complete,
                    "expansions": found.expansions,
                }))),
                Format::Text => {
                    let mut lines: Vec<String> =
                        found.chains.iter().map(|c| ids(&c.centers)).collect();
                    lines.push(format!(
                        "complete={} expansions={}",
                        found.complete, found.expansions
                    ));
                    out.emit(lines.join("\n"))
                }
                Format::Dot => bail!("find-t1 has no dot form"),
            }?;
            Ok(if found.complete || !found.chains.is_empty() {
                0
            } else {
                2
            })
        }
        Command::VerifyT1 { centers } => {
            let g = read_graph(&cli.input)?;
            match verify_t1(&g, &centers) {
                Ok(chain) => {
                    match out.format {
                        Format::Json => out.emit(wire::to_json(&json!({
                            "valid": true,
                            "witness": serde_json::to_value(wire::ChainWitnessDoc::from_chain(&chain))?,
                        }))),
                        Format::Text => out.emit(format!(
                            "valid centers={} v_first={} v_last={}",
                            ids(&chain.centers),
                            chain.v_first,
                            chain.v_last
                        )),
                        Format::Dot => emit_graph(&out, &g, &chain.centers),
                    }?;
                }
                Err(rejection) => {
                    match out.format {
                        Format::Json => out.emit(wire::to_json(&json!({
                            "valid": false,
                            "rejection": serde_json::to_value(&rejection)?,
                        }))),
                        Format::Text => out.emit(format!("invalid: {rejection:?}")),
                        Format::Dot => bail!("no witness to draw"),
                    }?;
                }
            }
            Ok(0)
        }
        Command::FindT2 {
            length,
            budget,
            limit,
        } => {
            let g = read_graph(&cli.input)?;
            let found = find_t1(&g, length, budget, Some(limit));
            let pair = pair_up(&g, &found.chains);
            match out.format {
                Format::Json => out.emit(wire::to_json(&json!({
                    "found": pair.is_some(),
                    "pair": pair
                        .as_ref()
                        .map(|p| serde_json::to_value(wire::T2WitnessDoc::from_pair(p)))
                        .transpose()?,
                    "complete": found.complete,
                    "expansions": found.expansions,
                }))),
                Format::Text => out.emit(match &pair {
                    Some(p) => format!(
                        "found first={} second={}",
                        ids(&p.first.centers),
                        ids(&p.second.centers)
                    ),
                    None => format!("none complete={}", found.complete),
                }),
                Format::Dot => bail!("find-t2 has no dot form"),
            }?;
            Ok(if pair.is_some() || found.complete { 0 } else { 2 })
        }
        Command::VerifyT2 { first, second } => {
            let g = read_graph(&cli.input)?;
            match verify_t2(&g, &first, &second) {
                Ok(pair) => {
                    match out.format {
                        Format::Json => out.emit(wire::to_json(&json!({
                            "valid": true,
                            "witness": serde_json::to_value(wire::T2WitnessDoc::from_pair(&pair))?,
                        }))),
                        Format::Text => out.emit(format!(
                            "valid first={} second={}",
                            ids(&pair.first.centers),
                            ids(&pair.second.centers)
                        )),
                        Format::Dot => {
                            let mut centers = pair.first.centers.clone();
                            centers.extend(&pair.second.centers);
                            emit_graph(&out, &g, &centers)
                        }
                    }?;
                }
                Err(rejection) => {
                    match out.format {
                        Format::Json => out.emit(wire::to_json(&json!({
                            "valid": false,
                            "rejection": serde_json::to_value(&rejection)?,
                        }))),
                        Format::Text => out.emit(format!("invalid: {rejection:?}")),
                        Format::Dot => bail!("no witness to draw"),
                    }?;
                }
            }
            Ok(0)
        }
        Command::GridT2 { k, n } => {
            let (g, pair) = construct_t2(k, n)?;
            match out.format {
                Format::Json => out.emit(wire::to_json(&json!({
                    "graph": serde_json::to_value(wire::GraphDoc::from_graph(&g))?,
                    "pair": serde_json::to_value(wire::T2WitnessDoc::from_pair(&pair))?,
                }))),
                Format::Text => out.emit(format!(
                    "k={k} n={n} first={} second={}",
                    ids(&pair.first.centers),
                    ids(&pair.second.centers)
                )),
                Format::Dot => {
                    let mut centers = pair.first.centers.clone();
                    centers.extend(&pair.second.centers);
                    emit_graph(&out, &g, &centers)
                }
            }?;
            Ok(0)
        }
        Command::Solve => {
            let g = read_graph(&cli.input)?;
            let (result, stats) = solve(&g);
            let doc = wire::ResultDoc::from_solve(&result, stats);
            match out.format {
                Format::Json => out.emit(wire::to_json(&doc)),
                Format::Text => out.emit(match &result {
                    MagicResult::Magic { constant, labeling } => {
                        format!("magic S={constant} labeling={}", ids(labeling.as_slice()))
                    }
                    MagicResult::NotMagic => "not_magic".to_string(),
                }),
                Format::Dot => bail!("solve has no dot form"),
            }?;
            Ok(0)
        }
        Command::Certify {
            oracle_cap,
            budget,
            method,
        } => {
            let g = read_graph(&cli.input)?;
            let methods: Vec<CertifyMethod> = match method {
                Some(ms) => ms.into_iter().map(CertifyMethod::from).collect(),
                None => CertifyMethod::ALL.to_vec(),
            };
            let outcome = certify_ndm_with(&g, &methods, budget, oracle_cap);
            let doc = wire::ResultDoc::from_certify(&outcome);
            match out.format {
                Format::Json => out.emit(wire::to_json(&doc)),
                Format::Text => out.emit(match &outcome {
                    CertifyOutcome::NotMagic { certificate } => {
                        format!("not_magic {certificate:?}")
                    }
                    CertifyOutcome::Magic { constant, .. } => format!("magic S={constant}"),
                    CertifyOutcome::Inconclusive => "inconclusive".to_string(),
                }),
                Format::Dot => bail!("certify has no dot form"),
            }?;
            Ok(match outcome {
                CertifyOutcome::Inconclusive => 2,
                _ => 0,
            })
        }
        Command::Export { centers } => {
            let g = read_graph(&cli.input)?;
            emit_graph(&out, &g, centers.as_deref().unwrap_or(&[]))?;
            Ok(0)
        }
    }
}

/// First orientation-aware type-2 pairing among the collected chains.
fn pair_up(g: &Graph, chains: &[ChainT1]) -> Option<magicchains::T2Pair> {
    let orientations: Vec<Vec<Vec<usize>>> = chains
        .iter()
        .map(|c| {
            let rev: Vec<usize> = c.centers.iter().rev().copied().collect();
            vec![c.centers.clone(), rev]
        })
        .collect();
    for i in 0..chains.len() {
        for j in 0..chains.len() {
            if i == j {
                continue;
            }
            for a in &orientations[i] {
                for b in &orientations[j] {
                    if let Ok(pair) = verify_t2(g, a, b) {
                        return Some(pair);
                    }
                }
            }
        }
    }
    None
}
