use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use kerphi_cli::commands::ensure_threads;
use kerphi_cli::{cmd_fill, cmd_tables, cmd_triangle, cmd_validate, InstanceConfig, LoopSource, Outcome, TriangleArgs};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "kerphi", version, about = "Kernel-of-Φ tables, triangles and loop fillings")]
struct Cli {
    /// Instance configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    out: Format,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Overrides the configured breadth-first search budget.
    #[arg(long, global = true)]
    bfs_budget: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load a configuration and check every constructor invariant.
    Validate,
    /// Verify patterns, determinacy and edge-in-face containments.
    Tables,
    /// Actualize the triangle on three kernel elements (random when omitted).
    Triangle {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
        /// Size limit for random elements.
        #[arg(long, default_value_t = 20)]
        size: usize,
    },
    /// Fill a loop read from a file or generated at random.
    Fill {
        #[arg(long = "loop", conflicts_with = "random")]
        loop_file: Option<PathBuf>,
        /// Target length of a random loop.
        #[arg(long)]
        random: Option<usize>,
    },
}

fn run(cli: &Cli) -> Result<Outcome> {
    ensure_threads(cli.threads)?;
    let cfg = match &cli.config {
        Some(p) => InstanceConfig::load(p)?,
        None => anyhow::bail!("--config is required"),
    };
    let seed = cli.seed.unwrap_or(cfg.seed);
    match &cli.cmd {
        Cmd::Validate => cmd_validate(&cfg, cli.bfs_budget),
        Cmd::Tables => cmd_tables(&cfg, cli.bfs_budget),
        Cmd::Triangle { a, b, c, size } => cmd_triangle(
            &cfg,
            cli.bfs_budget,
            &TriangleArgs {
                a: a.as_deref(),
                b: b.as_deref(),
                c: c.as_deref(),
                max_size: *size,
                seed,
            },
        ),
        Cmd::Fill { loop_file, random } => {
            let src = match (loop_file, random) {
                (Some(p), _) => LoopSource::File(p),
                (None, Some(len)) => LoopSource::Random { length: *len },
                (None, None) => anyhow::bail!("fill needs --loop FILE or --random LENGTH"),
            };
            cmd_fill(&cfg, cli.bfs_budget, src, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            let body = match cli.out {
                Format::Text => o.text.clone(),
                Format::Json => {
                    let doc = serde_json::json!({ "pass": o.pass, "report": o.json });
                    serde_json::to_string_pretty(&doc).expect("serializable report") + "\n"
                }
            };
            // a closed pipe is not a failed verdict
            let _ = std::io::stdout().write_all(body.as_bytes());
            if o.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
