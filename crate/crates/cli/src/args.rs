use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "qcorr", version, about = "Correlation witnesses, concurrences and typicality estimates")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Output path; `-` writes to standard output.
    #[arg(long, default_value = "-", global = true)]
    pub out: String,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Detection threshold: a witness value above it counts as detection.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Young diagram hook product, fill product and irrep dimension.
    Dims(DimsArgs),
    #[command(subcommand)]
    Class(ClassCommand),
    #[command(subcommand)]
    Witness(WitnessCommand),
    #[command(subcommand)]
    Cone(ConeCommand),
    #[command(subcommand)]
    Conc(ConcCommand),
    #[command(subcommand)]
    Gauss(GaussCommand),
    #[command(subcommand)]
    Typicality(TypicalityCommand),
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    /// Row lengths, e.g. "2,2".
    #[arg(long)]
    pub young: String,
    /// Dimension of the defining representation.
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassTag {
    Dist,
    Bos,
    Ferm,
    Gauss,
    Schmidt,
    Gme,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SectorArg {
    Plus,
    Minus,
    Both,
}

/// Flags selecting a class of non-correlated pure states.
#[derive(Debug, Clone, Args)]
pub struct ClassArgs {
    #[arg(long, value_enum)]
    pub class: ClassTag,
    /// Local dimensions of distinguishable sites, e.g. "2,2".
    #[arg(long, value_delimiter = ',')]
    pub dims: Vec<usize>,
    /// Number of modes (bos, ferm, gauss) or local dimension (gme).
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of particles.
    #[arg(long = "L")]
    pub l: Option<usize>,
    #[arg(long, value_enum, default_value_t = SectorArg::Plus)]
    pub sector: SectorArg,
    /// Schmidt rank bound.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub da: Option<usize>,
    #[arg(long)]
    pub db: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum ClassCommand {
    /// Exact trace, normalized trace and coherent rank of the class operator.
    Info {
        #[command(flatten)]
        class: ClassArgs,
        /// Number of copies (defaults to the natural one).
        #[arg(long)]
        k: Option<usize>,
        /// Also compute the rank numerically.
        #[arg(long)]
        rank: bool,
    },
    /// Pure-state invariant of a carrier vector.
    Invariant {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        state: String,
    },
    /// Sample a class member.
    Member {
        #[command(flatten)]
        class: ClassArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// Constant and Haar parameters of the class witness.
    Build {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Evaluate the witness on a state pair.
    Detect {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        rho: String,
        /// Auxiliary state; defaults to `rho`.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Largest value over sampled class mixtures (should not exceed zero).
    Certify {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConeCommand {
    /// Inequality matrix rows.
    Inequalities {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Extreme rays of the cone of invariant witnesses.
    Rays {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Best detection value over all invariant bilinear witnesses.
    Detect {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        state: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Depolarized four-mode a8 state, detected by C_+.
    A8Depol,
    /// Two-qubit Werner family, detected by the Wootters concurrence.
    Werner,
    /// Depolarized two-fermion state, detected by the bilinear witness.
    FermDepol,
}

#[derive(Debug, Subcommand)]
pub enum ConcCommand {
    /// Wootters concurrence of a two-qubit state.
    TwoQubit {
        #[arg(long)]
        state: String,
    },
    /// Sector concurrences, convex-Gaussian verdict and Gaussian fidelity on four modes.
    Gauss4 {
        #[arg(long)]
        state: String,
    },
    /// Generalized Schmidt decomposition of an even four-mode vector.
    Schmidt {
        #[arg(long)]
        state: String,
    },
    /// Critical noise level of a one-parameter family.
    Threshold {
        #[arg(long, value_enum)]
        family: Family,
        /// Number of modes for `ferm-depol`.
        #[arg(long, default_value_t = 5)]
        d: usize,
        /// Pair coefficients for `ferm-depol`, e.g. "0.8,0.6".
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GaussCommand {
    /// Closed-form two-copy Gaussian projector against the null space of Lambda.
    Projector {
        #[arg(long)]
        d: usize,
    },
    /// Exact witness constant and its numeric maximization.
    Constant {
        #[arg(long)]
        d: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    FixedModes,
    Proportional,
}

#[derive(Debug, Subcommand)]
pub enum TypicalityCommand {
    /// Exact witness parameters and critical largest eigenvalue.
    Params {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Monte Carlo fraction of detected states on one isospectral manifold.
    Run {
        #[command(flatten)]
        class: ClassArgs,
        /// Spectrum such as "0.9,0.02x5".
        #[arg(long, conflicts_with = "pmax")]
        spectrum: Option<String>,
        /// Largest eigenvalue, remaining weight spread evenly.
        #[arg(long)]
        pmax: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
    },
    /// Sweep the largest eigenvalue.
    Scan {
        #[command(flatten)]
        class: ClassArgs,
        /// `pmax:start:stop:step`.
        #[arg(long)]
        sweep: String,
        #[arg(long, default_value_t = 2_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Write the table as CSV to this path.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Leading-order N and N p_max,cr beside exact values.
    Asymptotics {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum)]
        regime: RegimeArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum DemoCommand {
    /// Critical depolarization of the a8 state.
    A8Threshold,
    /// Run every acceptance check and print a pass/fail table.
    Suite {
        /// Skip the slow six-copy check.
        #[arg(long)]
        skip_slow: bool,
        /// Run only these criteria, e.g. "1,7".
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}
