use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nucleus::cli::{self, GroupSpec, Options};
use nucleus::group::DEFAULT_MAX_ORDER;
use nucleus::strata::DEFAULT_HEIGHT_BOUND;

#[derive(Parser)]
#[command(name = "nucleus", version, about = "Nucleus, invariant ring and singular locus of T^n ⋊ W")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Strata of the nucleus and its classification.
    Nucleus {
        #[command(flatten)]
        common: Common,
    },
    /// Generators, relations and Molien series of the invariant ring.
    Presentation {
        #[command(flatten)]
        common: Common,
    },
    /// Stabilizers, both singularity verdicts and the local model at a point.
    CheckPoint {
        #[command(flatten)]
        common: Common,
        /// Integer coordinates, comma separated.
        #[arg(long, required = true, allow_hyphen_values = true)]
        point: String,
    },
    /// Full cross-validation over a sweep of characteristics.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Verify every shipped preset.
        #[arg(long, conflicts_with_all = ["preset", "input"])]
        all_presets: bool,
    },
}

fn parse_point(s: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse().with_context(|| format!("bad coordinate `{t}`")))
        .collect()
}

#[derive(Args)]
struct Common {
    /// Shipped group: segre, t3c2, a1, b2, so3, a2.
    #[arg(long)]
    preset: Option<String>,
    /// Group description file (text, JSON or TOML).
    #[arg(long, conflicts_with = "preset")]
    input: Option<PathBuf>,
    /// Coefficient characteristic (0 or a prime not dividing |W|).
    #[arg(long = "char")]
    characteristic: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Largest weight searched for relations (default: twice the top generator weight).
    #[arg(long)]
    relation_bound: Option<u32>,
    /// Largest coefficient height used when searching stratum representatives.
    #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND)]
    height_bound: u32,
    /// Structured JSON output.
    #[arg(long)]
    json: bool,
    /// Containment chains, audit tables and timings (timings go to stderr).
    #[arg(long)]
    verbose: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            max_order: self.max_order,
            relation_bound: self.relation_bound,
            height_bound: self.height_bound,
        }
    }

    fn spec(&self) -> anyhow::Result<GroupSpec> {
        let spec = match (&self.preset, &self.input) {
            (Some(name), None) => cli::preset(name).with_context(|| {
                format!("unknown preset `{name}` (known: {})", cli::PRESET_NAMES.join(", "))
            })?,
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                GroupSpec::parse(&text)?
            }
            _ => bail!("give exactly one of --preset or --input"),
        };
        Ok(match self.characteristic {
            Some(p) => spec.with_characteristic(p),
            None => spec,
        })
    }

    fn emit<R: Serialize>(&self, report: &R, text: impl FnOnce(bool) -> String) -> anyhow::Result<()> {
        let mut body = if self.json {
            serde_json::to_string_pretty(report)?
        } else {
            text(self.verbose)
        };
        if !body.ends_with('\n') {
            body.push('\n');
        }
        match &self.out {
            Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{body}"),
        }
        Ok(())
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let start = Instant::now();
    let (common, ok) = match &cli.command {
        Command::Nucleus { common } => {
            let r = cli::cmd_nucleus(&common.spec()?, &common.options())?;
            common.emit(&r, |v| r.to_text(v))?;
            (common, true)
        }
        Command::Presentation { common } => {
            let r = cli::cmd_presentation(&common.spec()?, &common.options())?;
            common.emit(&r, |v| r.to_text(v))?;
            (common, true)
        }
        Command::CheckPoint { common, point } => {
            let r = cli::cmd_check_point(&common.spec()?, &parse_point(point)?, &common.options())?;
            common.emit(&r, |v| r.to_text(v))?;
            (common, true)
        }
        Command::Verify { common, all_presets } => {
            if *all_presets {
                if common.characteristic.is_some() {
                    bail!("--char cannot be combined with --all-presets");
                }
                let suite = cli::verify_all_presets(&common.options())?;
                common.emit(&suite, |v| {
                    let mut s: String = suite.reports.iter().map(|r| r.to_text(v)).collect();
                    s.push_str(if suite.passed { "all presets: PASS\n" } else { "all presets: FAIL\n" });
                    s
                })?;
                (common, suite.passed)
            } else {
                let r = cli::cmd_verify(&common.spec()?, &common.options())?;
                common.emit(&r, |v| r.to_text(v))?;
                (common, r.passed)
            }
        }
    };
    if common.verbose {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
