//! `fcsph`: run the verifiers, export atlases and inspect single subjects.

mod cache;
mod inspect;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fcspherical::chevalley::{ChevalleyAlgebra, SignConvention};
use fcspherical::report::Report;
use fcspherical::spherical::{self, Context};
use fcspherical::weyl::{DEFAULT_BUDGET, DEFAULT_WORD_CAP};
use fcspherical::{ideals, CartanType, Error, RootSystem};

#[derive(Parser, Debug)]
#[command(name = "fcsph", version, about = "Full commutativity and spherical nilpotent orbits in root systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Cartan type such as B3, F4 or G2.
    #[arg(long = "type", global = true, default_value = "A2")]
    pub cartan_type: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Random samples per subject for sampled heights and fingerprints.
    #[arg(long, global = true, default_value_t = spherical::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for exhaustive commands (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Directory for cached verifier reports.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Maximum number of reduced words explored per element.
    #[arg(long = "cap-words", global = true, default_value_t = DEFAULT_WORD_CAP)]
    pub cap_words: usize,
    /// Largest Weyl group that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an exhaustive verifier.
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
    /// Export the ideal atlas or the table of fully commutative elements.
    Atlas {
        #[arg(value_enum)]
        table: Table,
    },
    /// Report on one element or ideal.
    Inspect(inspect::Target),
    /// The root system: Gram matrix, positive roots, highest roots.
    System,
    /// Chevalley structure constants.
    Constants {
        #[arg(long, value_enum, default_value_t = Convention::Standard)]
        convention: Convention,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Theorem1,
    Theorem2,
    Subspaces,
    Lemmas,
    G2,
    Fingerprints,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Theorem1 => "theorem1",
            Check::Theorem2 => "theorem2",
            Check::Subspaces => "subspaces",
            Check::Lemmas => "lemmas",
            Check::G2 => "g2",
            Check::Fingerprints => "fingerprints",
        }
    }

    fn needs_weyl_group(self) -> bool {
        !matches!(self, Check::Theorem2)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Table {
    Ideals,
    Fc,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Convention {
    Standard,
    Alternate,
}

/// Failure modes with their exit codes.
#[derive(Debug)]
pub enum Failure {
    Mismatch,
    Usage(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::WordCapExceeded(_) => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn root_system(config: &RunConfig) -> Result<RootSystem, Failure> {
    let t: CartanType = config.cartan_type.parse()?;
    Ok(RootSystem::new(t)?)
}

fn emit(config: &RunConfig, text: &str) -> Result<(), Failure> {
    match &config.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn run_check(config: &RunConfig, rs: &RootSystem, check: Check) -> Result<Report, Failure> {
    let t = rs.cartan_type();
    if check == Check::G2 && !t.is_g2() {
        return Err(Failure::Usage(format!("verify g2 needs --type G2, got {t}")));
    }
    if check.needs_weyl_group() && t.weyl_order() > config.budget {
        return Err(Error::BudgetExceeded {
            cartan_type: t,
            order: t.weyl_order(),
            budget: config.budget,
        }
        .into());
    }
    let ctx = Context::new(rs);
    Ok(match check {
        Check::Theorem1 => spherical::verify_theorem1(&ctx, config.budget)?,
        Check::Theorem2 => ideals::verify_theorem2(&ctx),
        Check::Subspaces => spherical::verify_subspace_theorem(&ctx, config.budget, Some((config.trials, config.seed)))?,
        Check::Lemmas => spherical::verify_lemmas(&ctx, config.budget)?,
        Check::G2 => spherical::verify_g2(&ctx)?,
        Check::Fingerprints => spherical::verify_fingerprints(&ctx, config.budget, config.trials, config.seed)?,
    })
}

fn cmd_verify(config: &RunConfig, check: Check) -> Result<(), Failure> {
    let rs = root_system(config)?;
    let key = cache::Key::new(config, check);
    let report = match config.cache.as_deref().and_then(|dir| cache::load(dir, &key)) {
        Some(r) => r,
        None => {
            let r = run_check(config, &rs, check)?;
            if let Some(dir) = &config.cache {
                cache::store(dir, &key, &r).map_err(|e| Failure::Usage(format!("cache: {e}")))?;
            }
            r
        }
    };
    emit(config, &render::report(&report, config.format))?;
    if report.is_success() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_atlas(config: &RunConfig, table: Table) -> Result<(), Failure> {
    let rs = root_system(config)?;
    let text = match table {
        Table::Ideals => {
            let ctx = Context::new(&rs);
            render::ideal_atlas(&fcspherical::atlas::ideal_atlas(&ctx), config.format)
        }
        Table::Fc => {
            let t = rs.cartan_type();
            if t.weyl_order() > config.budget {
                return Err(Error::BudgetExceeded {
                    cartan_type: t,
                    order: t.weyl_order(),
                    budget: config.budget,
                }
                .into());
            }
            let ctx = Context::new(&rs);
            render::fc_atlas(&fcspherical::atlas::fc_atlas(&ctx, config.budget)?, config.format)
        }
    };
    emit(config, &text)
}

fn cmd_constants(config: &RunConfig, convention: Convention) -> Result<(), Failure> {
    let rs = root_system(config)?;
    let conv = match convention {
        Convention::Standard => SignConvention::Standard,
        Convention::Alternate => SignConvention::Alternate,
    };
    let alg = ChevalleyAlgebra::with_convention(&rs, conv);
    emit(config, &render::constants(&alg.structure_constants(), config.format))
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let config = &cli.config;
    if config.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let single = matches!(cli.command, Command::Inspect(_));
    let threads = if single { Some(1) } else { config.workers };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Failure::Usage(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::Verify { check } => cmd_verify(config, *check),
        Command::Atlas { table } => cmd_atlas(config, *table),
        Command::Inspect(target) => {
            let rs = root_system(config)?;
            let doc = inspect::inspect(config, &rs, target)?;
            emit(config, &render::inspection(&doc, config.format))
        }
        Command::System => {
            let rs = root_system(config)?;
            emit(config, &render::system(&rs.document(), config.format))
        }
        Command::Constants { convention } => cmd_constants(config, *convention),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Mismatch => eprintln!("error: mismatches found"),
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Budget(m) => eprintln!("error: budget exceeded: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
