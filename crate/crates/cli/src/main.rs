//! `loxodrome`: command-line experiments with group actions on hyperbolic graphs.

mod config;
mod report;
mod tasks;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use loxodrome::gallery::{self, Basis, Content};

use crate::config::ExperimentConfig;
use crate::report::{Format, Report};
use crate::tasks::Task;

#[derive(Parser, Debug)]
#[command(name = "loxodrome", version, about = "Isometries of hyperbolic graphs and their products")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Worker threads; all cores when omitted.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Exit with status 3 when a result is not certified.
    #[arg(long, global = true)]
    require_certified: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Browse the example gallery.
    Gallery {
        #[command(subcommand)]
        action: GalleryCommand,
    },
    /// Run every task of an experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    #[command(flatten)]
    Task(Task),
}

#[derive(Subcommand, Debug)]
enum GalleryCommand {
    List,
    Describe { name: String },
}

fn gallery_list() -> Report {
    let mut r = Report::new("gallery", &["name", "parameters", "description"]);
    for (name, desc, params) in gallery::ENTRIES {
        r.row(vec![name.to_string(), params.to_string(), desc.to_string()]);
    }
    r
}

fn gallery_describe(name: &str) -> Result<Report> {
    let e = gallery::build(name)?;
    let mut r = Report::new("gallery", &["claim", "basis"]);
    for a in &e.annotations {
        let basis = match &a.basis {
            Basis::Published => "published".to_string(),
            Basis::Elementary => "elementary".to_string(),
            Basis::Oracle(o) => format!("recomputed: {o}"),
        };
        r.row(vec![a.claim.clone(), basis]);
    }
    r.note(format!("{}: {}", e.address(), e.summary));
    match &e.content {
        Content::Action(a) => {
            let gens: Vec<&str> = (0..a.gens.rank()).map(|i| a.gens.label(a.gens.generator(i))).collect();
            r.note(format!("generators {} on {}", gens.join(", "), a.space.name()));
        }
        Content::Semidirect { n_max } => r.note(format!("linear recurrence, n_max {n_max}")),
        Content::Extension(x) => r.note(format!("index {} extension; H generated by {:?}", x.n, (0..x.h_gens.rank()).map(|i| x.h_gens.label(x.h_gens.generator(i))).collect::<Vec<_>>())),
        Content::Euclidean(w) => r.note(format!("angle {}", w.theta)),
    }
    if !e.picks.is_empty() {
        r.note(format!("picks {:?}", e.picks));
    }
    if let Some(c) = &e.central {
        r.note(format!("central element {} on factor {}", c.0, c.1));
    }
    Ok(r)
}

fn real_main() -> Result<i32> {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the worker pool")?;
    }
    let report = match &cli.command {
        Command::Gallery { action: GalleryCommand::List } => gallery_list(),
        Command::Gallery { action: GalleryCommand::Describe { name } } => gallery_describe(name)?,
        Command::Run { config } => {
            let cfg = ExperimentConfig::load(config)?;
            return cfg.run(cli.out.as_deref());
        }
        Command::Task(t) => tasks::execute(t, None, cli.seed).with_context(|| format!("{} failed", t.name()))?,
    };
    report.emit(cli.format, cli.out.as_deref())?;
    Ok(report.exit_code(cli.require_certified))
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
