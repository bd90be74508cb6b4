use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use uds_core::netgen::{generate_duplex, DuplexModel, GenSpec};
use uds_core::workbench::{
    ingest_multiplex, layer_stats, run_experiment, run_instance, verify_network, write_canonical_file, Algorithm,
    BenchConfig, InstanceConfig, Source, VerifyOptions,
};
use uds_core::{DuplexNetwork, Layer, OracleLimits};

#[derive(Parser)]
#[command(name = "uds", version, about = "Minimum union driver sets for duplex directed networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic duplex and write it in canonical form.
    Generate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Output file.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run algorithms on one duplex and print a JSON report.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Include driver-set members in the report.
        #[arg(long)]
        members: bool,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a parameter sweep from a TOML config.
    Bench {
        config: PathBuf,
        /// Directory for sweep.csv, summary.csv and config.json.
        #[arg(short, long, default_value = "bench-out")]
        out: PathBuf,
        /// Override the config's worker thread count.
        #[arg(long)]
        threads: Option<usize>,
        /// Exit 0 even if some cells failed.
        #[arg(long)]
        keep_going: bool,
    },
    /// Check CLAP-S stability against the exact oracle.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = OracleLimits::default().max_matchings_per_layer)]
        oracle_cap: u64,
        /// Stop CLAP-S after this many CLAPs (debugging aid).
        #[arg(long)]
        max_iterations: Option<usize>,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// ER-ER, BA-BA or ER-BA.
    #[arg(long, default_value = "ER-ER")]
    model: String,
    #[arg(short, long)]
    n: usize,
    #[arg(short = 'k', long)]
    avg_degree: f64,
    /// Target Jaccard overlap of the two edge sets.
    #[arg(long)]
    overlap: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SpecArgs {
    fn to_spec(&self) -> Result<GenSpec> {
        Ok(GenSpec {
            model: DuplexModel::parse(&self.model)?,
            n: self.n,
            avg_degree: self.avg_degree,
            overlap: self.overlap,
            seed: self.seed,
        })
    }
}

/// A duplex file with a layer pair, or generator parameters.
#[derive(Args)]
struct InputArgs {
    /// Edge-list file (`layer source target [weight]` per line).
    file: Option<PathBuf>,
    /// Layer pair to select from the file.
    #[arg(long, default_value = "1,2")]
    layers: String,
    /// Generate instead of reading a file.
    #[arg(long, conflicts_with = "file")]
    model: Option<String>,
    #[arg(short, long, requires = "model")]
    n: Option<usize>,
    #[arg(short = 'k', long, requires = "model")]
    avg_degree: Option<f64>,
    #[arg(long, requires = "model")]
    overlap: Option<f64>,
    /// Generator seed; RSU sampling is seeded from it too.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl InputArgs {
    fn load(&self) -> Result<(DuplexNetwork, Source)> {
        if let Some(path) = &self.file {
            let (a, b) = self
                .layers
                .split_once(',')
                .with_context(|| format!("--layers expects `A,B`, got `{}`", self.layers))?;
            let sel = ingest_multiplex(path, a.trim(), b.trim())?;
            let source = Source::File {
                path: path.clone(),
                layers: sel.layer_ids.clone(),
            };
            return Ok((sel.net, source));
        }
        let Some(model) = &self.model else { bail!("give a duplex file or --model with -n and -k") };
        let (Some(n), Some(avg_degree)) = (self.n, self.avg_degree) else { bail!("--model needs -n and -k") };
        let spec = GenSpec {
            model: DuplexModel::parse(model)?,
            n,
            avg_degree,
            overlap: self.overlap,
            seed: self.seed,
        };
        Ok((generate_duplex(&spec)?.net, Source::Generated(spec)))
    }
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated: clap-s, clap-g, rsu, exact.
    #[arg(long, default_value = "clap-s,clap-g,rsu")]
    algorithms: String,
    /// Maximum matchings sampled per layer by RSU.
    #[arg(long, default_value_t = 20)]
    rsu_k: usize,
    /// Enumeration cap for the exact oracle.
    #[arg(long, default_value_t = OracleLimits::default().max_matchings_per_layer)]
    oracle_cap: u64,
    /// Wall-clock cap per algorithm in seconds.
    #[arg(long, default_value_t = 500.0)]
    time_limit: f64,
}

fn limits(cap: u64) -> OracleLimits {
    OracleLimits {
        max_matchings_per_layer: cap,
        max_pairs: cap,
    }
}

fn analyze(input: &InputArgs, run: &RunArgs, members: bool) -> Result<serde_json::Value> {
    if !run.time_limit.is_finite() || run.time_limit <= 0.0 {
        bail!("--time-limit must be positive");
    }
    let (net, source) = input.load()?;
    let cfg = InstanceConfig {
        algorithms: Algorithm::parse_list(&run.algorithms)?,
        rsu_k: run.rsu_k,
        oracle: limits(run.oracle_cap),
        time_limit: Some(Duration::from_secs_f64(run.time_limit)),
        seed: input.seed,
        max_iterations: None,
    };
    let outcome = run_instance(&net, &cfg)?;
    let drivers: Vec<_> = outcome
        .drivers
        .iter()
        .map(|(a, d1, d2)| {
            let mut entry = json!({ "algorithm": a, "d1": d1.len(), "d2": d2.len(), "union": d1.union_len(d2) });
            if members {
                entry["d1_members"] = json!(d1.members());
                entry["d2_members"] = json!(d2.members());
            }
            entry
        })
        .collect();
    Ok(json!({
        "source": source,
        "n": net.node_count(),
        "layers": [layer_stats(&net, Layer::One), layer_stats(&net, Layer::Two)],
        "settings": {
            "algorithms": cfg.algorithms,
            "seed": cfg.seed,
            "rsu_k": cfg.rsu_k,
            "oracle_cap": run.oracle_cap,
            "time_limit_secs": run.time_limit,
        },
        "metrics": outcome.report,
        "runs": outcome.runs,
        "drivers": drivers,
        "clap_s": outcome.clap_s_log,
        "errors": outcome.errors.iter().map(|(a, e)| json!({ "algorithm": a, "error": e })).collect::<Vec<_>>(),
    }))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { spec, out } => {
            let spec = spec.to_spec()?;
            let g = generate_duplex(&spec)?;
            write_canonical_file(&g.net, None, &out)?;
            if !g.overlap_within_tolerance() {
                eprintln!(
                    "warning: achieved overlap {:.4} misses the target {:?}",
                    g.jaccard,
                    spec.overlap.unwrap_or_default()
                );
            }
            println!(
                "{}",
                json!({
                    "out": out,
                    "spec": spec,
                    "edges": [g.net.layer(Layer::One).edge_count(), g.net.layer(Layer::Two).edge_count()],
                    "jaccard": g.jaccard,
                })
            );
        }
        Command::Analyze { input, run, members, out } => {
            let report = serde_json::to_string_pretty(&analyze(&input, &run, members)?)?;
            match out {
                Some(path) => fs::write(&path, report).with_context(|| format!("writing {}", path.display()))?,
                None => println!("{report}"),
            }
        }
        Command::Bench {
            config,
            out,
            threads,
            keep_going,
        } => {
            let mut cfg = BenchConfig::read(&config).with_context(|| format!("reading {}", config.display()))?;
            if let Some(t) = threads {
                cfg.threads = t;
            }
            let result = run_experiment(&cfg, &out)?;
            eprintln!(
                "{} rows, {} aggregates, {} not ok; wrote {}",
                result.rows.len(),
                result.summary.len(),
                result.failed,
                out.display()
            );
            if result.failed > 0 && !keep_going {
                for r in result.rows.iter().filter(|r| !r.is_ok()) {
                    eprintln!("cell {} rep {}: {} ({})", r.cell, r.rep, r.status, r.error);
                }
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Verify {
            input,
            oracle_cap,
            max_iterations,
            json,
        } => {
            let (net, _) = input.load()?;
            let opts = VerifyOptions {
                oracle: limits(oracle_cap),
                max_iterations,
                seed: None,
            };
            let report = verify_network(&net, opts)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
