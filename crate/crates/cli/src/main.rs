use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use causaldiff::bench;
use causaldiff::dataset::run_dataset;
use causaldiff::load::{align, load_graph, FileFormat};
use causaldiff::metrics::{evaluate, parse_list, DEFAULT_METRICS};
use causaldiff::report::{Format, MetricReport};
use causaldiff_core::io::{write_adjacency_csv, write_edge_list};
use causaldiff_core::{dag_to_cpdag, random_dag};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "causaldiff", version, about = "Compare causal graphs against a ground truth")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score one predicted graph against the truth.
    Eval {
        #[arg(long)]
        truth: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        /// Comma-separated metric names.
        #[arg(long, default_value = DEFAULT_METRICS)]
        metrics: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Score every prediction listed in a dataset's manifest.json.
    EvalDir {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value = DEFAULT_METRICS)]
        metrics: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random DAG.
    Gen {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 0.1)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Csv)]
        format: GraphFormat,
    },
    /// Time CED on pairs of random DAGs.
    BenchCed {
        #[arg(long, value_delimiter = ',', default_values_t = [25, 50, 100])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.1)]
        density: f64,
        /// Number of seeds per size.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between file formats, or to the CPDAG of a DAG.
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        to: ConvertTarget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Csv,
    Edgelist,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConvertTarget {
    Csv,
    Edgelist,
    Cpdag,
}

/// How a successful run ended.
enum Outcome {
    Clean,
    /// Some metric was not applicable or some row failed.
    Degraded,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    match cli.command {
        Command::Eval {
            truth,
            pred,
            metrics,
            format,
        } => {
            let metrics = parse_list(&metrics)?;
            let t = load_graph(&truth)?;
            let p = align(&t, &load_graph(&pred)?)?;
            let (values, times) = evaluate(&metrics, &t.graph, &p);
            let report = MetricReport {
                truth: truth.display().to_string(),
                pred: pred.display().to_string(),
                n: p.n(),
                metrics: values,
                elapsed_ms: times,
                version: causaldiff::VERSION.to_string(),
            };
            emit(None, &report.render(format))?;
            Ok(if report.has_na() { Outcome::Degraded } else { Outcome::Clean })
        }
        Command::EvalDir {
            dataset,
            metrics,
            format,
            out,
        } => {
            let metrics = parse_list(&metrics)?;
            let report = run_dataset(&dataset, &metrics)?;
            emit(out.as_deref(), &report.render(format))?;
            Ok(if report.degraded() { Outcome::Degraded } else { Outcome::Clean })
        }
        Command::Gen {
            nodes,
            density,
            seed,
            out,
            format,
        } => {
            let g = random_dag(nodes, density, seed)?;
            let text = match format {
                GraphFormat::Csv => write_adjacency_csv(&g, true),
                GraphFormat::Edgelist => write_edge_list(&g),
            };
            emit(out.as_deref(), &text)?;
            eprintln!("{} edges", g.entry_count());
            Ok(Outcome::Clean)
        }
        Command::BenchCed {
            sizes,
            density,
            seeds,
            seed,
            out,
        } => {
            if sizes.iter().any(|&n| n == 0) {
                bail!("sizes must be positive");
            }
            let rows = bench::run(&sizes, density, seeds, seed)?;
            emit(out.as_deref(), &bench::to_csv(&rows))?;
            let med = bench::medians(&rows);
            for (n, t) in &med {
                eprintln!("n={n} median {t:.3} ms");
            }
            match bench::loglog_slope(&med) {
                Some(s) => eprintln!("log-log slope {s:.3}"),
                None => eprintln!("log-log slope n/a"),
            }
            Ok(Outcome::Clean)
        }
        Command::Convert { input, to, out } => {
            let loaded = load_graph(&input)?;
            let in_format = FileFormat::of(&input);
            let g = match to {
                ConvertTarget::Cpdag => dag_to_cpdag(&loaded.graph)?,
                _ => loaded.graph,
            };
            let as_csv = match to {
                ConvertTarget::Csv => true,
                ConvertTarget::Edgelist => false,
                ConvertTarget::Cpdag => in_format == FileFormat::Csv,
            };
            let text = if as_csv {
                write_adjacency_csv(&g, loaded.labelled)
            } else {
                write_edge_list(&g)
            };
            emit(out.as_deref(), &text)?;
            Ok(Outcome::Clean)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Degraded) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
