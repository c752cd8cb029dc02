use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "scalapprox", version, about = "Scalarization approximation qualities on finite multiobjective instances")]
pub struct Cli {
    /// Print machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write a run report (command, inputs, outputs) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub report: Option<PathBuf>,
    /// Record wall-clock seconds in the run report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse an instance and check its invariants.
    Validate { instance: PathBuf },
    /// Print the ids of the nondominated points.
    Pareto { instance: PathBuf },
    /// Exact approximation quality of a subset of points.
    Quality {
        instance: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<String>,
    },
    /// Points optimal for some weight vector of a simplex grid.
    Supported {
        instance: PathBuf,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Keep only the first optimum of each weight vector.
        #[arg(long)]
        one_per_function: bool,
        #[arg(long, default_value_t = scalapprox::DEFAULT_TIE_TOL)]
        tie_tol: f64,
    },
    /// Closed-form quality bound of a weighted norm scalarization.
    Bound {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short = 'p', long = "objectives")]
        p: usize,
    },
    /// Supremum of the level-set ratio at a reference point.
    Levelsup {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        ybar: Vec<f64>,
        /// Estimate by sampling rays instead of the closed form.
        #[arg(long, requires = "seed")]
        sampled: bool,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long, default_value_t = 1e6)]
        cap: f64,
        #[arg(long)]
        seed: Option<u64>,
        /// Decomposition: `min`, `max` or a comma list of senses.
        #[arg(long, default_value = "min")]
        decomp: String,
    },
    /// Quality guaranteed by every optimal set of a weighted scalarization.
    Beta {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value = "min")]
        decomp: String,
        #[arg(short = 'p', long = "objectives")]
        p: Option<usize>,
        /// Rays per reference point and number of reference points.
        #[arg(long, value_delimiter = ',', num_args = 1, default_values_t = [10_000usize, 100])]
        budgets: Vec<usize>,
        #[arg(long, default_value_t = 1e6)]
        cap: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Build and verify a counterexample instance.
    #[command(subcommand)]
    Adversary(AdversaryCommand),
    /// Re-run the checks stored in an adversarial certificate.
    Verify { certificate: PathBuf },
    /// Flip the objectives in GAMMA and write the transformed instance.
    Transform {
        instance: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<usize>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Random-instance sweep writing one CSV row per trial.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 2)]
        pmin: usize,
        #[arg(long, default_value_t = 4)]
        pmax: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// `min` or `max`; max instances use the flipped family.
        #[arg(long, default_value = "min")]
        decomp: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Convert sweep results into whitespace-separated columns.
    Plotdata {
        results: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum AdversaryCommand {
    /// Instance defeating a finite set of scalarizing functions.
    Finite {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated weights of one function; repeat the flag.
        #[arg(long = "function", required = true)]
        functions: Vec<String>,
        #[arg(long, default_value = "min")]
        decomp: String,
        #[arg(long)]
        alpha: f64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Instance showing a weighted norm bound cannot be improved.
    Normmin {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short = 'p', long = "objectives")]
        p: usize,
        #[arg(long)]
        eps: f64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Instance with maximized objectives that no weighted norm difference approximates.
    Mixedmax {
        #[arg(long, default_value = "one")]
        inner_min: String,
        #[arg(long, default_value = "one")]
        inner_max: String,
        #[arg(short = 'k', long)]
        k: usize,
        #[arg(short = 'p', long = "objectives")]
        p: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

/// Scalarizer family selection shared by several commands.
#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, default_value = "weighted_sum")]
    pub family: String,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    /// Epsilon of the composite min-max family.
    #[arg(long = "composite-eps")]
    pub composite_eps: Option<f64>,
    /// Inner norm on minimized objectives: one, max, q:<q> or augtcheb:<rho>.
    #[arg(long = "norm-min")]
    pub norm_min: Option<String>,
    #[arg(long = "norm-max")]
    pub norm_max: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    /// 1-based objectives flipped before evaluation.
    #[arg(long = "flip", value_delimiter = ',')]
    pub flip: Option<Vec<usize>>,
    #[arg(long, default_value = "identity")]
    pub post: String,
    /// Read the scalarizer from a spec JSON file instead.
    #[arg(long, conflicts_with_all = ["family", "q", "rho", "weights", "flip", "post"])]
    pub spec: Option<PathBuf>,
}
