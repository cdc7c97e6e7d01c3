//! Command-line surface for the bounds laboratory.
//!
//! Exit codes: 0 success (and every checked graph Holds), 1 usage error,
//! 2 an edge-bound violation was found, 3 inconclusive verdicts present
//! under --strict.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mu_lab::certificates::{
    format_certificate, read_certificate, search_certificate, verify_certificate, write_certificate,
};
use mu_lab::corpus::{enumerate_graphs, read_graph6};
use mu_lab::engine::{explain, mu_bounds, EngineConfig, Rule, MAX_DELETION_DEPTH};
use mu_lab::graph::Graph;
use mu_lab::graph6;
use mu_lab::harness::{
    build_clique_sum_chain, graph_by_name, parse_graph_arg, run_campaign, CampaignConfig,
    CampaignError,
};

#[derive(Parser)]
#[command(
    name = "mu-lab",
    about = "Exact bounds laboratory for the Colin de Verdiere graph parameter",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct EngineOpts {
    /// Comma-separated rule subset, e.g. R1,R2,R4 (default: all rules)
    #[arg(long, value_delimiter = ',')]
    rules: Vec<String>,
    /// Node-expansion budget for minor searches
    #[arg(long)]
    minor_budget: Option<u64>,
    /// Recursion depth for the deletion upper bound (0..=3)
    #[arg(long)]
    deletion_depth: Option<u32>,
    /// Value convention for edgeless graphs: paper | matrix
    #[arg(long, default_value = "paper")]
    edgeless_convention: String,
}

impl EngineOpts {
    fn to_config(&self) -> Result<EngineConfig, String> {
        let mut cfg = EngineConfig::default();
        if !self.rules.is_empty() {
            cfg.enabled = self
                .rules
                .iter()
                .map(|s| s.parse::<Rule>())
                .collect::<Result<_, _>>()?;
        }
        if let Some(b) = self.minor_budget {
            cfg.minor_budget = b;
        }
        if let Some(d) = self.deletion_depth {
            if d > MAX_DELETION_DEPTH {
                return Err(format!("deletion depth is capped at {MAX_DELETION_DEPTH}"));
            }
            cfg.deletion_depth = d;
        }
        cfg.edgeless_convention = self.edgeless_convention.parse()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Bound the parameter of one graph (graph6 string, named graph, or a
    /// file of graph6 lines)
    Mu {
        /// graph6 string, graph name (petersen, k6, c7, k2,2,3, ...), or path
        input: String,
        /// Print the full rule trace
        #[arg(long)]
        explain: bool,
        #[command(flatten)]
        engine: EngineOpts,
    },
    /// Check the edge bound over an enumerated or file-backed corpus
    Verify {
        /// Exhaustively enumerate all graphs on this many vertices (1..=8)
        #[arg(long, conflicts_with = "input")]
        enumerate: Option<usize>,
        /// Read graphs from a graph6 file, one per line
        #[arg(long)]
        input: Option<PathBuf>,
        /// Write one JSON record per graph to this path
        #[arg(long)]
        jsonl: Option<PathBuf>,
        /// Enable the minimal-counterexample accelerator (sound only when
        /// every smaller order has already been verified)
        #[arg(long)]
        use_lemma6_filter: bool,
        /// Exit 3 when any verdict is Inconclusive
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        engine: EngineOpts,
    },
    /// Build named graphs and extremal families
    Construct {
        #[command(subcommand)]
        what: ConstructCommand,
    },
    /// Verify or search certificate matrices
    Cert {
        #[command(subcommand)]
        what: CertCommand,
    },
    /// Enumerate all isomorphism classes on n vertices as graph6 lines
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// join(edge-maximal planar base, complete graph on t-3 vertices)
    JoinTight {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        base_size: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chain copies of an extremal multipartite block by pure clique sums
    CliqueSum {
        /// k22222 (5-sums of K_{2,2,2,2,2}) or k122222 (6-sums of K_{1,2,2,2,2,2})
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 2)]
        copies: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A named graph: petersen, p32, k6, c7, p5, e4, k2,2,3, kmd5, stacked9x2
    Named {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CertCommand {
    /// Verify a certificate file exactly
    Verify { file: PathBuf },
    /// Search for a certificate of the requested corank (best effort; a
    /// miss proves nothing)
    Search {
        /// graph6 string or graph name
        graph: String,
        #[arg(long)]
        corank: usize,
        #[arg(long, default_value_t = 2000)]
        budget: u64,
        /// Write the found certificate here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Mu {
            input,
            explain: want_trace,
            engine,
        } => {
            let cfg = engine.to_config()?;
            let graphs: Vec<Graph> = if Path::new(&input).exists() {
                read_graph6(Path::new(&input))
                    .map_err(|e| e.to_string())?
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?
            } else {
                vec![parse_graph_arg(&input)?]
            };
            for g in &graphs {
                if want_trace {
                    print!("{}", explain(g, &cfg).map_err(|e| e.to_string())?);
                } else {
                    let b = mu_bounds(g, &cfg).map_err(|e| e.to_string())?;
                    if let Some(v) = b.value() {
                        println!("mu = {} [{},{}]", v, b.lo, b.hi);
                    } else {
                        println!("mu in [{},{}]", b.lo, b.hi);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            enumerate,
            input,
            jsonl,
            use_lemma6_filter,
            strict,
            engine,
        } => {
            let stream = match (enumerate, input) {
                (Some(n), None) => enumerate_graphs(n).map_err(|e| e.to_string())?,
                (None, Some(path)) => read_graph6(&path).map_err(|e| e.to_string())?,
                _ => return Err("pass exactly one of --enumerate or --input".into()),
            };
            let cfg = CampaignConfig {
                engine: engine.to_config()?,
                jsonl_path: jsonl,
                use_lemma6_filter,
            };
            match run_campaign(stream, &cfg) {
                Ok(report) => {
                    println!("{}", report.summary());
                    if strict && report.inconclusive > 0 {
                        return Ok(ExitCode::from(3));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ CampaignError::Violation { .. }) => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(2))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Construct { what } => {
            let (g, out) = match what {
                ConstructCommand::JoinTight {
                    t,
                    base_size,
                    seed,
                    out,
                } => {
                    if t < 3 {
                        return Err("join-tight needs t >= 3".into());
                    }
                    let base =
                        Graph::stacked_triangulation(base_size, seed).map_err(|e| e.to_string())?;
                    let apex = Graph::complete(t - 3).map_err(|e| e.to_string())?;
                    (base.join(&apex).map_err(|e| e.to_string())?, out)
                }
                ConstructCommand::CliqueSum {
                    family,
                    copies,
                    out,
                } => {
                    let parts: &[usize] = match family.as_str() {
                        "k22222" => &[2, 2, 2, 2, 2],
                        "k122222" => &[1, 2, 2, 2, 2, 2],
                        other => {
                            return Err(format!(
                                "unknown family {other:?} (expected k22222 or k122222)"
                            ))
                        }
                    };
                    (build_clique_sum_chain(parts, copies)?, out)
                }
                ConstructCommand::Named { name, out } => (graph_by_name(&name)?, out),
            };
            let line = graph6::encode(&g);
            match out {
                Some(path) => {
                    std::fs::write(&path, format!("{line}\n"))
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    println!(
                        "wrote {} (n={}, m={})",
                        path.display(),
                        g.n(),
                        g.edge_count()
                    );
                }
                None => {
                    println!("{line}");
                    eprintln!("n = {}, m = {}", g.n(), g.edge_count());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cert { what } => match what {
            CertCommand::Verify { file } => {
                let cert = read_certificate(&file).map_err(|e| e.to_string())?;
                let verdict = verify_certificate(&cert);
                if verdict.valid {
                    let claim_note = if cert.claimed_corank == verdict.corank {
                        String::new()
                    } else {
                        format!(" (claimed {})", cert.claimed_corank)
                    };
                    println!(
                        "valid, corank {}{}: certifies mu >= {} for {}",
                        verdict.corank,
                        claim_note,
                        verdict.corank,
                        graph6::encode(&cert.graph)
                    );
                    Ok(ExitCode::SUCCESS)
                } else {
                    let failure = verdict.failure.expect("invalid verdicts carry a failure");
                    println!("invalid: {} — {}", failure.code(), failure.describe());
                    Ok(ExitCode::from(2))
                }
            }
            CertCommand::Search {
                graph,
                corank,
                budget,
                out,
            } => {
                let g = parse_graph_arg(&graph)?;
                match search_certificate(&g, corank, budget).map_err(|e| e.to_string())? {
                    Some(cert) => {
                        println!(
                            "found certificate of corank {} for {}",
                            cert.claimed_corank,
                            graph6::encode(&cert.graph)
                        );
                        match out {
                            Some(path) => {
                                write_certificate(&cert, &path).map_err(|e| e.to_string())?;
                                println!("wrote {}", path.display());
                            }
                            None => print!("{}", format_certificate(&cert)),
                        }
                        Ok(ExitCode::SUCCESS)
                    }
                    None => {
                        println!("no certificate found within budget (proves nothing about mu)");
                        Ok(ExitCode::SUCCESS)
                    }
                }
            }
        },
        Command::Enumerate { n, out } => {
            let stream = enumerate_graphs(n).map_err(|e| e.to_string())?;
            let mut sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(
                    std::fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?,
                ),
                None => Box::new(std::io::stdout().lock()),
            };
            let mut count = 0usize;
            for g in stream {
                let g = g.map_err(|e| e.to_string())?;
                writeln!(sink, "{}", graph6::encode(&g)).map_err(|e| e.to_string())?;
                count += 1;
            }
            drop(sink);
            eprintln!("{count} graphs on {n} vertices");
            Ok(ExitCode::SUCCESS)
        }
    }
}
