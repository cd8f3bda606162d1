//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::parse::{parse_complex, parse_pair, parse_segment};

#[derive(Debug, Parser)]
#[command(name = "balayage", version, about = "Balayage onto ray systems, harmonic measure and growth diagnostics")]
pub struct Cli {
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance of the invoked check; each command has its own default.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// JSON output (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// CSV output.
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Harmonic measure of an interval, a sector boundary piece or a set on a ray system.
    Hm(HmArgs),
    /// Balayage of a charge onto a ray system, with distribution samples.
    Balayage(BalayageArgs),
    /// Named estimate or identity; exits 1 when it fails.
    #[command(subcommand)]
    Check(Check),
    /// Order, type and convergence class of a counting function.
    Growth(GrowthArgs),
    /// Canonical potential of a charge at given points.
    Potential(PotentialCmd),
    /// Completely regular growth diagnostics on the rays of a system.
    Crg(CrgArgs),
}

#[derive(Debug, Args)]
pub struct HmArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Interval `t1,t2` of the real axis.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, conflicts_with_all = ["system", "sector"])]
    pub interval: Option<(f64, f64)>,
    /// Ray system JSON file.
    #[arg(long, conflicts_with = "sector")]
    pub system: Option<PathBuf>,
    /// Sector `alpha,beta`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub sector: Option<(f64, f64)>,
    /// Closed disk radius (repeatable on a system).
    #[arg(long)]
    pub disk: Vec<f64>,
    /// Exterior of the disk of this radius (sector only).
    #[arg(long, conflicts_with = "system")]
    pub exterior: Option<f64>,
    /// Ray segment `j,a,b` (repeatable).
    #[arg(long, value_parser = parse_segment, requires = "system")]
    pub segment: Vec<(usize, f64, f64)>,
    /// Boundary set JSON file.
    #[arg(long, requires = "system")]
    pub boundary: Option<PathBuf>,
    /// Free parameter of the modulus-comparison bounds.
    #[arg(long, default_value_t = 0.5)]
    pub a: f64,
}

#[derive(Debug, Args)]
pub struct BalayageArgs {
    #[arg(long)]
    pub charge: PathBuf,
    /// Ray system JSON file; the real axis when absent.
    #[arg(long, conflicts_with = "upper_only")]
    pub system: Option<PathBuf>,
    /// Sweep only the upper half-plane part onto the real axis.
    #[arg(long)]
    pub upper_only: bool,
    /// Largest sampled radius.
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    /// Samples per ray.
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// CSV sample file; next to `--out` with extension `.csv` when absent.
    #[arg(long)]
    pub samples: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChargeArg {
    /// Atomic charge JSON file.
    #[arg(long)]
    pub charge: PathBuf,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub charge: ChargeArg,
    /// Fixed genus of the kernels.
    #[arg(long, conflicts_with = "schedule", allow_hyphen_values = true)]
    pub genus: Option<i32>,
    /// Genus schedule JSON file.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    /// Harmonic polynomial JSON file.
    #[arg(long)]
    pub harmonic: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PotentialCmd {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Evaluation point (repeatable).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Vec<Complex64>,
    /// Radius of a circle mean (repeatable).
    #[arg(long)]
    pub circle: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    /// Step function JSON file.
    #[arg(long, conflicts_with = "charge", required_unless_present = "charge")]
    pub step: Option<PathBuf>,
    /// Charge whose radial counting function is examined.
    #[arg(long)]
    pub charge: Option<PathBuf>,
    /// Count the variation of the charge.
    #[arg(long, requires = "charge")]
    pub variation: bool,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub lo: f64,
    #[arg(long)]
    pub hi: f64,
    /// Also examine the function near 0 up to this radius.
    #[arg(long)]
    pub zero_r0: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CrgArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// JSON array of step functions, one per ray.
    #[arg(long, conflicts_with = "charge", required_unless_present = "charge")]
    pub counting: Option<PathBuf>,
    /// Charge whose balayage onto the system supplies the counting functions.
    #[arg(long)]
    pub charge: Option<PathBuf>,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 128.0)]
    pub r_lo: f64,
    #[arg(long, default_value_t = 1024.0)]
    pub r_hi: f64,
    #[arg(long, default_value_t = 8)]
    pub per_octave: usize,
    /// Largest fraction of radii dropped as exceptional.
    #[arg(long, default_value_t = 0.05)]
    pub drop: f64,
    /// Sampling limit for swept charges; `64 r_hi` when absent.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Samples per octave for swept charges.
    #[arg(long, default_value_t = 64)]
    pub sample_per_octave: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Target {
    HalfPlane,
    RealAxis,
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Blaschke sums in the upper half-plane or outside a ray system.
    Blaschke {
        #[command(flatten)]
        charge: ChargeArg,
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        r0: f64,
    },
    /// Boundedness of the Lindelöf sums of order q.
    Lindelof {
        #[command(flatten)]
        charge: ChargeArg,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r0: f64,
    },
    /// Increment of the swept distribution function on `[t1, t2]`.
    Thcup {
        #[command(flatten)]
        charge: ChargeArg,
        #[arg(long, allow_hyphen_values = true)]
        t1: f64,
        #[arg(long, allow_hyphen_values = true)]
        t2: f64,
        #[arg(long)]
        a: f64,
    },
    /// Radial growth of the balayage against the gauge `g`.
    Ges {
        #[command(flatten)]
        charge: ChargeArg,
        #[arg(long, value_enum, default_value_t = Target::HalfPlane)]
        target: Target,
        #[arg(long)]
        g: f64,
        #[arg(long)]
        r: f64,
    },
    /// Radial growth of the balayage onto a system against the gauge `g`.
    SystemGrowth {
        #[command(flatten)]
        charge: ChargeArg,
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        g: f64,
        #[arg(long)]
        r: f64,
    },
    /// Lipschitz modulus of the distribution function on `[x1, x2]`.
    Lipschitz {
        #[command(flatten)]
        charge: ChargeArg,
        #[arg(long, allow_hyphen_values = true)]
        x1: f64,
        #[arg(long, allow_hyphen_values = true)]
        x2: f64,
    },
    /// Fit of the Lipschitz estimate of order p over `r0 ≤ |x| ≤ r_max`.
    LipschitzFit {
        #[command(flatten)]
        charge: ChargeArg,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        r0: f64,
        #[arg(long)]
        r_max: f64,
    },
    /// Integral of a test function against the balayage both ways.
    Fubini {
        #[command(flatten)]
        charge: ChargeArg,
        #[arg(long)]
        system: PathBuf,
        /// Test function JSON file.
        #[arg(long)]
        test_function: PathBuf,
    },
    /// Lindelöf sums of the charge against those of its balayage.
    LindelofPreservation {
        #[command(flatten)]
        charge: ChargeArg,
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r0: f64,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        radii: Vec<f64>,
    },
    /// Carleman identity in the upper half-plane.
    Carleman {
        #[command(flatten)]
        charge: ChargeArg,
        #[arg(long)]
        harmonic: Option<PathBuf>,
        #[arg(long)]
        r0: f64,
        #[arg(long)]
        r: f64,
    },
    /// Functionals A, B, J of a potential in an angle and their identities.
    ClassA {
        #[command(flatten)]
        potential: PotentialArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        r0: f64,
        #[arg(long)]
        r: f64,
    },
    /// Circle-mean inequality for a potential.
    Mean {
        #[command(flatten)]
        potential: PotentialArgs,
        #[arg(long)]
        r0: f64,
        #[arg(long)]
        r: f64,
    },
    /// Completely regular growth; fails when some ray has no stable limit.
    Crg(CrgArgs),
    /// Functionals of counting functions on the four bisectors.
    Exgr2 {
        /// JSON array of four step functions.
        #[arg(long)]
        counting: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        ts: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        radii: Vec<f64>,
    },
    /// Seeded dominance sweep of the interval bounds.
    HmBounds {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}
