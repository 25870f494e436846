use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use simplex_census::census::{census, count_brute_force, CountReport, Method};
use simplex_census::export::{from_json, to_json, write_file};
use simplex_census::formulas::{
    asymptotic_leading, eval_corollary13, eval_f_k, eval_t2r_closed, eval_unit_triangle_formula,
    maximize_f_k, maximize_f_k_adaptive, FormulaResult,
};
use simplex_census::hypergraph::{
    blowup, contains_copy, make_pattern_h, simplex_hypergraph_of_config, simplex_hypergraph_of_points, Hypergraph,
};
use simplex_census::lenz::{build_even_config, build_odd_config, theorem12_partition, CircleConfig, PartitionVector};
use simplex_census::verify::{parse_range, run_verify, VerifyOptions};
use simplex_census::{PointSet, Quad3, Rational};

/// Construct Lenz-type point configurations and count the regular simplices
/// they span.
#[derive(Parser, Debug)]
#[command(name = "simplex-census", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tabular CSV output instead of JSON.
    #[arg(long, global = true)]
    csv: bool,

    /// Worker threads for parallel counting (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a configuration and print it as JSON.
    Generate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        /// Simplex size; for k >= 4 the partition is the f_k maximizer.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Odd-dimension skeleton (r - 1 circles and one 2-sphere).
        #[arg(long)]
        odd: bool,
        /// Explicit class sizes, e.g. "6,6,8".
        #[arg(long)]
        partition: Option<PartitionVector>,
    },
    /// Count regular simplices of a configuration or point set.
    Count {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Count only simplices with this squared side length.
        #[arg(long)]
        side_sq: Option<String>,
    },
    /// Evaluate a closed-form count.
    Formula {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        partition: Option<PartitionVector>,
    },
    /// Maximize f_k over class sizes near n/r.
    Maximize {
        /// A value or an inclusive range a..b.
        #[arg(long)]
        n: String,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        window: u64,
        /// Keep the window fixed even if a maximizer touches its edge.
        #[arg(long)]
        no_widen: bool,
    },
    /// Cross-check every census method and formula over a range of n.
    Verify {
        /// A value or an inclusive range a..b.
        #[arg(long)]
        n: String,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        odd: bool,
        /// Plain-text table instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Hypergraph tools.
    Hypergraph(HypergraphArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "action")]
struct HypergraphActions {
    /// Build the padded clique pattern for --r and --k.
    #[arg(long)]
    make_pattern: bool,
    /// Blow up the hypergraph in --in by factor --t.
    #[arg(long)]
    blowup: bool,
    /// Decide whether --g contains a copy of --h.
    #[arg(long)]
    contains: bool,
    /// Simplex hypergraph of the configuration or point set in --in.
    #[arg(long)]
    from_config: bool,
}

#[derive(Args, Debug)]
struct HypergraphArgs {
    #[command(flatten)]
    action: HypergraphActions,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    g: Option<PathBuf>,
    #[arg(long)]
    h: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Coords,
    Ticks,
    Closed,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Coords => Method::Coords,
            MethodArg::Ticks => Method::Ticks,
            MethodArg::Closed => Method::Closed,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Fk,
    T2r,
    Cor13,
    Unit,
    Leading,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.with_context(|| format!("missing required flag --{flag}"))
}

/// Either input format accepted by `count` and `hypergraph --from-config`.
enum Input {
    Config(CircleConfig),
    Points(PointSet),
}

fn read_input(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if value.get("points").is_some() {
        Ok(Input::Points(from_json(&text).with_context(|| format!("parsing {}", path.display()))?))
    } else {
        Ok(Input::Config(from_json(&text).with_context(|| format!("parsing {}", path.display()))?))
    }
}

fn formula_csv(rows: &[(u64, u64, usize, FormulaResult)]) -> String {
    let mut out = String::from("n,r,k,value,argmax,transversal,good_pairs,triangles\n");
    for (n, r, k, res) in rows {
        let argmax = res
            .argmax
            .as_ref()
            .map(|a| a.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        let terms = res
            .terms
            .as_ref()
            .map(|t| format!("{},{},{}", t.transversal, t.good_pairs, t.triangles))
            .unwrap_or_else(|| ",,".into());
        out.push_str(&format!("{n},{r},{k},{},\"{argmax}\",{terms}\n", res.value));
    }
    out
}

fn run(cli: Cli) -> Result<(String, bool)> {
    let csv = cli.csv;
    let mut ok = true;
    let text = match cli.command {
        Command::Generate { n, r, k, odd, partition } => {
            let config = if odd {
                if partition.is_some() {
                    bail!("--partition cannot be combined with --odd");
                }
                build_odd_config(n, r)?
            } else {
                let partition = match partition {
                    Some(p) => p,
                    None if k == 3 => theorem12_partition(n, r)?,
                    None => maximize_f_k_adaptive(n, r, k, 6)?
                        .argmax
                        .and_then(|a| a.into_iter().next())
                        .context("no maximizer")?,
                };
                build_even_config(n, r, &partition)?
            };
            to_json(&config)?
        }
        Command::Count { input, method, k, side_sq } => {
            let report = match read_input(&input)? {
                // A bare point set has no circles, so only the total is known.
                Input::Points(points) => {
                    let side = side_sq.as_deref().map(str::parse::<Quad3>).transpose()?;
                    let total = count_brute_force(&points, k, side.as_ref())?;
                    return Ok((
                        if csv { format!("total\n{total}\n") } else { to_json(&json!({ "total": total }))? },
                        true,
                    ));
                }
                Input::Config(config) => {
                    let side = side_sq.as_deref().map(str::parse::<Rational>).transpose()?;
                    let mut method = Method::from(method);
                    if method != Method::Coords && !config.has_common_radius() {
                        eprintln!("note: components have different radii; counting by coordinates");
                        method = Method::Coords;
                    }
                    census(&config, k, method, side.as_ref())?
                }
            };
            if csv {
                format!("{}\n{}\n", CountReport::CSV_HEADER, report.csv_row())
            } else {
                to_json(&report)?
            }
        }
        Command::Formula { which, n, r, k, partition } => {
            let (n, r) = match &partition {
                Some(p) => (Some(n.unwrap_or(p.total())), Some(r.unwrap_or(p.parts() as u64))),
                None => (n, r),
            };
            let res = match which {
                Which::Fk => eval_f_k(&need(partition, "partition")?, k)?,
                Which::Unit => eval_unit_triangle_formula(&need(partition, "partition")?)?,
                Which::T2r => eval_t2r_closed(need(n, "n")?, need(r, "r")?)?,
                Which::Cor13 => eval_corollary13(need(n, "n")?, need(r, "r")?)?,
                Which::Leading => {
                    let v = asymptotic_leading(need(n, "n")?, need(r, "r")?, k as u64)?;
                    return Ok((
                        if csv { format!("value\n{v}\n") } else { to_json(&json!({ "value": v.to_string() }))? },
                        true,
                    ));
                }
            };
            if csv {
                formula_csv(&[(n.unwrap_or(0), r.unwrap_or(0), k, res)])
            } else {
                to_json(&res)?
            }
        }
        Command::Maximize { n, r, k, window, no_widen } => {
            let mut rows = Vec::new();
            for n in parse_range(&n)? {
                let res = if no_widen {
                    maximize_f_k(n, r, k, window)?
                } else {
                    maximize_f_k_adaptive(n, r, k, window)?
                };
                rows.push((n, r, k, res));
            }
            if csv {
                formula_csv(&rows)
            } else {
                let items: Vec<_> = rows
                    .iter()
                    .map(|(n, r, k, res)| json!({ "n": n, "r": r, "k": k, "result": res }))
                    .collect();
                to_json(&items)?
            }
        }
        Command::Verify { n, r, k, odd, table } => {
            let report = run_verify(&VerifyOptions { ns: parse_range(&n)?, r, k, odd, workers: cli.workers })?;
            ok = report.ok;
            if let Some(m) = &report.first_mismatch {
                eprintln!("mismatch: {m}");
            }
            if table {
                report.to_table()
            } else if csv {
                report.to_csv()
            } else {
                to_json(&report)?
            }
        }
        Command::Hypergraph(args) => hypergraph(args)?,
    };
    Ok((text, ok))
}

fn hypergraph(args: HypergraphArgs) -> Result<String> {
    let a = &args.action;
    if a.make_pattern {
        return Ok(to_json(&make_pattern_h(need(args.r, "r")?, args.k)?)?);
    }
    if a.blowup {
        let h: Hypergraph = from_json(&read(&need(args.input, "in")?)?)?;
        return Ok(to_json(&blowup(&h, need(args.t, "t")?)?)?);
    }
    if a.contains {
        let g: Hypergraph = from_json(&read(&need(args.g, "g")?)?)?;
        let h: Hypergraph = from_json(&read(&need(args.h, "h")?)?)?;
        return Ok(to_json(&json!({ "contains": contains_copy(&g, &h)? }))?);
    }
    let g = match read_input(&need(args.input, "in")?)? {
        Input::Config(c) => simplex_hypergraph_of_config(&c, args.k)?,
        Input::Points(p) => simplex_hypergraph_of_points(&p, args.k)?,
    };
    Ok(to_json(&g)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        // Ignore failure: the global pool may already exist in tests.
        let _ = rayon_pool(w);
    }
    match run(cli) {
        Ok((text, ok)) => {
            let written = match &out {
                Some(path) => write_file(path, &text).with_context(|| format!("writing {}", path.display())),
                None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::FAILURE;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn rayon_pool(workers: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build_global()?;
    Ok(())
}
