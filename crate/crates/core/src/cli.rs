//! Command-line surface. [`run`] is the whole program minus process exit,
//! so tests drive it in-process.
//!
//! Exit codes: 0 on success (and, for `check` and `design`, an admissible
//! sleeve), 2 for an inadmissible sleeve, 1 for any error. Diagnostics go to
//! the error stream only.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cascade::{derive_bounds, run_cascade, CascadeInput};
use crate::error::{Error, Result};
use crate::io::{
    emit_report, load_candidates, load_config, load_core, load_design, load_events, load_proposal, render_bounds,
    OutputFormat, RunConfig,
};
use crate::model::{Asset, Holding, Portfolio, RebalanceProposal, SatelliteDesign};
use crate::rebalance::{filter_rebalance, RebalanceOutcome};
use crate::replay::{replay, ReplayStats};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INADMISSIBLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "satfeas",
    version,
    about = "Feasibility checks for thematic satellite sleeves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the closed-form bounds implied by the config.
    Bounds(Common),
    /// Run the cascade on a supplied design.
    Check {
        #[command(flatten)]
        common: Common,
        /// Design JSON to validate.
        #[arg(long)]
        design: PathBuf,
    },
    /// Run the cascade and synthesize a design.
    Design(Common),
    /// Filter a proposal CSV (id,delta_w) through the rebalance gate.
    FilterRebalance {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        proposal: PathBuf,
        /// Current sleeve; synthesized from the candidates when omitted.
        #[arg(long)]
        design: Option<PathBuf>,
        #[arg(long)]
        schedule_due: bool,
        #[arg(long)]
        structural_break: bool,
    },
    /// Replay a dated event CSV and print aggregate statistics.
    Replay {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        events: PathBuf,
        /// Initial sleeve; synthesized from the candidates when omitted.
        #[arg(long)]
        design: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Candidate CSV; overrides the config's `candidates` path.
    #[arg(long)]
    candidates: Option<PathBuf>,
    /// Core composition CSV (id,weight); overrides the config's `core_weights`.
    #[arg(long)]
    core: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        }
    }
}

/// Everything a subcommand needs, loaded once.
struct Context {
    config: RunConfig,
    candidates: Option<Vec<Asset>>,
    core: Vec<Holding>,
    format: OutputFormat,
}

impl Context {
    fn load(common: &Common) -> Result<Self> {
        let config = load_config(&common.config)?;
        let candidates_path = common.candidates.clone().or_else(|| config.candidates_path());
        let candidates = candidates_path.as_deref().map(load_candidates).transpose()?;
        let core_path = common.core.clone().or_else(|| config.core_weights_path());
        let core = match core_path {
            Some(p) => normalized(load_core(&p)?, &p)?,
            None => Vec::new(),
        };
        Ok(Context {
            config,
            candidates,
            core,
            format: common.format.into(),
        })
    }

    fn candidates(&self) -> Result<&[Asset]> {
        self.candidates.as_deref().ok_or_else(|| {
            Error::invalid(
                "candidates",
                "no candidate file: pass --candidates or set `candidates` in the config",
            )
        })
    }

    fn cascade_input(&self) -> Result<CascadeInput> {
        let c = &self.config;
        let mut input = CascadeInput::synthesize(
            c.theme.clone(),
            self.candidates()?.to_vec(),
            c.params(),
            c.tilts.kappa_a,
            c.tilts.kappa_c,
        );
        if !self.core.is_empty() {
            input = input.with_core(self.core.iter().map(|h| h.weight).collect());
        }
        Ok(input)
    }

    /// Sleeve from `path`, or the synthesized one (possibly empty).
    fn current_design(&self, path: Option<&Path>) -> Result<SatelliteDesign> {
        if let Some(p) = path {
            return load_design(p);
        }
        let outcome = run_cascade(&self.cascade_input()?)?;
        match outcome.design {
            Some(d) => Ok(d),
            None => {
                let t = &self.config.tilts;
                SatelliteDesign::new(self.config.theme.clone(), 0.0, Vec::new(), t.kappa_a, t.kappa_c)
            }
        }
    }

    fn portfolio(&self, design: SatelliteDesign) -> Result<Portfolio> {
        Portfolio::from_core_composition(&self.core, design)
    }
}

fn normalized(core: Vec<Holding>, path: &Path) -> Result<Vec<Holding>> {
    let total: f64 = core.iter().map(|h| h.weight).sum();
    if core.is_empty() || total <= 0.0 {
        return Err(Error::Schema {
            path: path.to_path_buf(),
            message: "core weights must contain a positive total".into(),
        });
    }
    Ok(core.into_iter().map(|h| Holding::new(h.id, h.weight / total)).collect())
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_ERROR
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli.command) {
        Ok((bytes, code)) => match out.write_all(&bytes) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error[io]: {e}");
                EXIT_ERROR
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            EXIT_ERROR
        }
    }
}

fn verdict_code(admissible: bool) -> i32 {
    if admissible {
        EXIT_OK
    } else {
        EXIT_INADMISSIBLE
    }
}

fn execute(command: Command) -> Result<(Vec<u8>, i32)> {
    match command {
        Command::Bounds(common) => {
            let ctx = Context::load(&common)?;
            let assets = ctx.candidates.as_deref().unwrap_or(&[]);
            let bounds = derive_bounds(&ctx.config.params(), assets);
            Ok((render_bounds(&bounds, ctx.format), EXIT_OK))
        }
        Command::Check { common, design } => {
            let ctx = Context::load(&common)?;
            let input = ctx.cascade_input()?.with_design(load_design(&design)?);
            let outcome = run_cascade(&input)?;
            let bytes = emit_report(&outcome.report, outcome.design.as_ref(), ctx.format);
            Ok((bytes, verdict_code(outcome.report.admissible)))
        }
        Command::Design(common) => {
            let ctx = Context::load(&common)?;
            let outcome = run_cascade(&ctx.cascade_input()?)?;
            let bytes = emit_report(&outcome.report, outcome.design.as_ref(), ctx.format);
            Ok((bytes, verdict_code(outcome.report.admissible)))
        }
        Command::FilterRebalance {
            common,
            proposal,
            design,
            schedule_due,
            structural_break,
        } => {
            let ctx = Context::load(&common)?;
            let current = ctx.portfolio(ctx.current_design(design.as_deref())?)?;
            let proposal = RebalanceProposal::new(load_proposal(&proposal)?, schedule_due, structural_break)?;
            let outcome = filter_rebalance(&proposal, &ctx.config.params(), &current, ctx.candidates()?)?;
            Ok((render_outcome(&outcome, ctx.format), EXIT_OK))
        }
        Command::Replay { common, events, design } => {
            let ctx = Context::load(&common)?;
            let initial = ctx.portfolio(ctx.current_design(design.as_deref())?)?;
            let events = load_events(&events)?;
            let stats = replay(&events, &ctx.config.params(), &initial, ctx.candidates()?)?;
            Ok((render_stats(&stats, ctx.format), EXIT_OK))
        }
    }
}

fn render_outcome(outcome: &RebalanceOutcome, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => crate::io::to_sorted_json(outcome),
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{:<10} {:<16} {:>10}  reason", "action", "id", "delta_w");
            for t in &outcome.executed {
                let _ = writeln!(s, "{:<10} {:<16} {:>10.6}", "execute", t.id, t.delta_w);
            }
            for t in &outcome.suppressed {
                let _ = writeln!(
                    s,
                    "{:<10} {:<16} {:>10.6}  {}",
                    "suppress", t.trade.id, t.trade.delta_w, t.reason
                );
            }
            s.into_bytes()
        }
    }
}

fn render_stats(stats: &ReplayStats, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => crate::io::to_sorted_json(stats),
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{:<28} {}", "events_total", stats.events_total);
            let _ = writeln!(s, "{:<28} {}", "trades_proposed", stats.trades_proposed);
            let _ = writeln!(s, "{:<28} {}", "trades_executed", stats.trades_executed);
            for (reason, n) in &stats.trades_suppressed_by_reason {
                let _ = writeln!(s, "{:<28} {}", format!("suppressed.{reason}"), n);
            }
            let _ = writeln!(
                s,
                "{:<28} {:.6}",
                "gross_turnover_executed", stats.gross_turnover_executed
            );
            let _ = writeln!(
                s,
                "{:<28} {:.6}",
                "max_participation_observed", stats.max_participation_observed
            );
            s.into_bytes()
        }
    }
}
