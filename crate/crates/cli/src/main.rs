//! `sep3q`: full-separability checks for three-qubit states.
//!
//! Exit codes: 0 for a negative or inconclusive result, 1 for a positive
//! detection (entangled), 2 for any error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sep3q::mixed::{
    SearchConfig, ZMode, DEFAULT_REFINE_ITERS, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_VERDICT_TOL,
};
use sep3q::pure::{OperatorVariant, DEFAULT_TOL_SEP};
use sep3q::states::DEFAULT_RANK_TOL;

pub const THREADS_ENV: &str = "SEP3Q_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "sep3q",
    version,
    about = "Full-separability criteria for three-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide full separability of a pure state exactly.
    PureCheck {
        file: PathBuf,
        /// Threshold on |C(psi)| below which the state is separable.
        #[arg(long, default_value_t = DEFAULT_TOL_SEP)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for an entanglement certificate of a mixed state.
    MixedCheck {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run the certificate on one of the built-in bound entangled examples.
    Demo {
        #[arg(value_enum)]
        which: DemoState,
        #[command(flatten)]
        dct: DctArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Write a library state to a JSON state file.
    Gen {
        #[arg(value_enum)]
        name: GenState,
        #[command(flatten)]
        dct: DctArgs,
        /// Seed for the random-* states.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of product terms for random-separable.
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// Product factors as `re,im,re,im` (or `re,re` for real amplitudes).
        #[arg(long, default_value = "1,0")]
        u: String,
        #[arg(long, default_value = "1,0")]
        v: String,
        #[arg(long, default_value = "1,0")]
        t: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the Dür–Cirac–Tarrach family over a grid in `a` and write CSV.
    ScanDct {
        /// Grid for `a`: `start:end:count` or a comma-separated list.
        #[arg(long, default_value = "0:1:11")]
        a: String,
        /// Value for `b`, or `auto` to share the remaining trace.
        #[arg(long, default_value = "0")]
        b: String,
        #[arg(long, default_value = "auto")]
        c: String,
        #[arg(long, default_value = "auto")]
        d: String,
        #[arg(long, default_value = "0")]
        e: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_REFINE_ITERS)]
        refine: usize,
        #[arg(long, value_enum, default_value_t = ZModeArg::Complex)]
        z_mode: ZModeArg,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ZModeArg::Complex)]
    z_mode: ZModeArg,
    /// Local-ascent iterations after sampling; 0 gives pure sampling.
    #[arg(long, default_value_t = DEFAULT_REFINE_ITERS)]
    refine: usize,
    #[arg(long, value_enum, default_value_t = OperatorsArg::Full)]
    operators: OperatorsArg,
    /// Certificates above this value count as detected entanglement.
    #[arg(long, default_value_t = DEFAULT_VERDICT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    rank_tol: f64,
    /// Also report partial-transpose eigenvalues for each cut.
    #[arg(long)]
    ppt: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            samples: self.samples,
            seed: self.seed,
            z_mode: self.z_mode.into(),
            refine_iters: self.refine,
            operator_variant: self.operators.into(),
            rank_tol: self.rank_tol,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct DctArgs {
    #[arg(long, default_value_t = 1.0 / 3.0)]
    a: f64,
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    #[arg(long, default_value_t = 1.0 / 6.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0 / 6.0)]
    d: f64,
    #[arg(long, default_value_t = 0.0)]
    e: f64,
}

impl DctArgs {
    fn params(&self) -> sep3q::library::DctParams {
        sep3q::library::DctParams {
            a: self.a,
            b: self.b,
            c: self.c,
            d: self.d,
            e: self.e,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ZModeArg {
    Complex,
    Real,
}

impl From<ZModeArg> for ZMode {
    fn from(z: ZModeArg) -> Self {
        match z {
            ZModeArg::Complex => ZMode::Complex,
            ZModeArg::Real => ZMode::RealNonnegative,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OperatorsArg {
    Full,
    Reduced,
}

impl From<OperatorsArg> for OperatorVariant {
    fn from(o: OperatorsArg) -> Self {
        match o {
            OperatorsArg::Full => OperatorVariant::Full9,
            OperatorsArg::Reduced => OperatorVariant::Reduced,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemoState {
    Shifts,
    Dct,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenState {
    Ghz,
    W,
    Product,
    ShiftsComplement,
    Dct,
    RandomPure,
    RandomProduct,
    RandomSeparable,
    RandomDensity,
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| anyhow::anyhow!("{THREADS_ENV}={raw:?} is not a positive integer"))?;
    if n == 0 {
        anyhow::bail!("{THREADS_ENV} must be at least 1");
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    configure_threads()?;
    match cli.command {
        Command::PureCheck { file, tol, format } => commands::pure_check(&file, tol, format),
        Command::MixedCheck { file, search } => commands::mixed_check(
            &file,
            &search.config(),
            search.tol,
            search.ppt,
            search.format,
        ),
        Command::Demo { which, dct, search } => commands::demo(
            which,
            &dct.params(),
            &search.config(),
            search.tol,
            search.ppt,
            search.format,
        ),
        Command::Gen {
            name,
            dct,
            seed,
            k,
            u,
            v,
            t,
            out,
        } => commands::gen(name, &dct.params(), seed, k, [&u, &v, &t], out.as_deref()),
        Command::ScanDct {
            a,
            b,
            c,
            d,
            e,
            samples,
            seed,
            refine,
            z_mode,
            out,
        } => {
            let cfg = SearchConfig {
                samples,
                seed,
                z_mode: z_mode.into(),
                refine_iters: refine,
                ..SearchConfig::default()
            };
            commands::scan_dct(&a, [&b, &c, &d, &e], &cfg, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
