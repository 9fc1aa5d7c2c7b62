use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use tensor_cut::harness::{parse_checks, run_campaign, CampaignConfig, Format, Oracle};
use tensor_cut::mincut::{edge_connectivity, edge_connectivity_exhaustive, enumerate_min_cuts, is_super_edge_connected_bruteforce, DEFAULT_BUDGET};
use tensor_cut::theorems::{
    classify_min_cut, is_super_edge_connected_kn, kappa_formula, remark_cut, exceptional_member,
};
use tensor_cut::{direct_product, emit_graph6, parse_graph6, Error, Graph, ProductLayout};

/// Edge connectivity and minimum cuts of direct products of graphs.
///
/// Graph arguments are graph6 strings, `@path` for the first graph in a
/// graph6 file, or `-` for standard input.
#[derive(Parser)]
#[command(name = "tensor-cut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit G × H as graph6.
    Product { g: String, h: String },
    /// κ' of a graph, or formula and oracle for G × H when H is given.
    Kappa {
        g: String,
        h: Option<String>,
        #[arg(long, default_value = "maxflow")]
        oracle: String,
    },
    /// List every minimum edge cut of a graph, one per line.
    Cuts {
        g: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Classify a minimum cut of G × H read as `x,u y,v` lines.
    Classify {
        g: String,
        h: String,
        /// Cut file, or `-` for standard input.
        #[arg(long)]
        cut: String,
    },
    /// Super edge connectivity of G × K_n: criterion and enumeration.
    Super {
        g: String,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Emit the exceptional graph K̄_{2l−1} ∨ lK_2 as graph6.
    Family {
        l: usize,
        /// Also print K_2 × H_l and its matching-lifted cut.
        #[arg(long)]
        cut: bool,
    },
    /// Run a verification campaign from a key = value config file.
    Verify {
        config: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        checks: Option<String>,
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        oracle: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        /// Omit per-instance timings for byte-stable output.
        #[arg(long)]
        no_timings: bool,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_graph(arg: &str) -> Result<Graph, Error> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?
    } else {
        arg.to_string()
    };
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::Graph6("no graph in input".into()))?;
    parse_graph6(line)
}

fn read_text(arg: &str) -> Result<String, Error> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Product { g, h } => {
            let p = direct_product(&read_graph(&g)?, &read_graph(&h)?)?;
            println!("{}", emit_graph6(&p));
        }
        Command::Kappa { g, h, oracle } => {
            let g = read_graph(&g)?;
            let oracle: Oracle = oracle.parse()?;
            let Some(h) = h else {
                let r = edge_connectivity(&g)?;
                let value = match oracle {
                    Oracle::MaxFlow => r.value,
                    Oracle::Subset => edge_connectivity_exhaustive(&g)?,
                };
                println!(
                    "{}",
                    json!({"kappa": value, "witness": r.witness.to_line(), "partition": r.partition})
                );
                return Ok(ExitCode::SUCCESS);
            };
            let h = read_graph(&h)?;
            let product = direct_product(&g, &h)?;
            let value = match oracle {
                Oracle::MaxFlow => edge_connectivity(&product)?.value,
                Oracle::Subset => edge_connectivity_exhaustive(&product)?,
            };
            match kappa_formula(&g, &h) {
                Ok(f) => {
                    println!("{}", json!({"formula": f, "oracle": value, "match": f.value == value}));
                    if f.value != value {
                        return Ok(ExitCode::from(1));
                    }
                }
                Err(e @ Error::PreconditionViolated { .. }) => {
                    println!("{}", json!({"formula": null, "reason": e.to_string(), "oracle": value}));
                }
                Err(e) => return Err(e),
            }
        }
        Command::Cuts { g, budget } => {
            let g = read_graph(&g)?;
            let cuts = enumerate_min_cuts(&g, budget)?;
            for c in &cuts.cuts {
                println!("{}", c.to_line());
            }
            if !cuts.exhaustive {
                eprintln!("non-exhaustive: C(|E|, {}) = {} exceeds budget {budget}", cuts.value, cuts.subsets);
                return Ok(ExitCode::from(2));
            }
        }
        Command::Classify { g, h, cut } => {
            let g = read_graph(&g)?;
            let h = read_graph(&h)?;
            let cut = ProductLayout::of(&g, &h).parse_cut(&read_text(&cut)?)?;
            match classify_min_cut(&g, &h, &cut) {
                Ok(class) => println!("{}", serde_json::to_string(&class).expect("serializable")),
                Err(e @ Error::UnclassifiableCut(_)) => {
                    println!("{}", json!({"verdict": "counterexample", "detail": e.to_string()}));
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e),
            }
        }
        Command::Super { g, n, budget } => {
            let g = read_graph(&g)?;
            let product = direct_product(&g, &Graph::complete(n))?;
            let brute = match is_super_edge_connected_bruteforce(&product, budget) {
                Ok(b) => json!(b),
                Err(Error::BudgetExceeded { .. }) => json!("inconclusive"),
                Err(e) => return Err(e),
            };
            match is_super_edge_connected_kn(&g, n) {
                Ok(p) => println!("{}", json!({"criterion": p, "brute_force": brute})),
                Err(Error::ExcludedPair { .. }) => {
                    println!("{}", json!({"criterion": "excluded", "brute_force": brute}))
                }
                Err(e) => return Err(e),
            }
        }
        Command::Family { l, cut } => {
            if cut {
                let r = remark_cut(l)?;
                println!("{}", emit_graph6(&r.member.graph));
                println!("{}", emit_graph6(&r.product));
                print!("{}", ProductLayout::of(&Graph::complete(2), &r.member.graph).format_cut(&r.cut));
            } else {
                println!("{}", emit_graph6(&exceptional_member(l)?.graph));
            }
        }
        Command::Verify { config, budget, seed, checks, format, oracle, workers, no_timings, out } => {
            let mut cfg = match config {
                Some(path) => CampaignConfig::parse(&read_text(&path.to_string_lossy())?)?,
                None => CampaignConfig::default(),
            };
            if let Some(b) = budget {
                cfg.enumeration_budget = b;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(c) = checks {
                cfg.checks = parse_checks(&c)?;
            }
            if let Some(f) = format {
                cfg.format = f.parse::<Format>()?;
            }
            if let Some(o) = oracle {
                cfg.oracle = o.parse()?;
            }
            if let Some(w) = workers {
                cfg.workers = w;
            }
            if no_timings {
                cfg.timings = false;
            }
            cfg.validate()?;
            let report = run_campaign(&cfg)?;
            let text = report.render(cfg.format)?;
            match out {
                Some(path) => std::fs::write(&path, text)?,
                None => print!("{text}"),
            }
            let s = &report.summary;
            eprintln!(
                "{} instances, {} passed, {} mismatches, {} inconclusive, {} skipped, {} exceptional cuts",
                s.instances, s.passed, s.mismatches, s.inconclusive, s.skipped, s.exceptional_sightings
            );
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
