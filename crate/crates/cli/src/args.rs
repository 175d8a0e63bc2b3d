use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "trivertex", version, about = "Appell F4 and the one-loop massless triangle")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate F4(a, b; c1, c2; x, y).
    #[command(allow_negative_numbers = true)]
    EvalF4(EvalF4Args),
    /// Evaluate the triangle in one of its closed forms.
    #[command(allow_negative_numbers = true)]
    Triangle(TriangleArgs),
    /// D = 4 triangle by Feynman-parameter quadrature.
    Oracle(OracleArgs),
    /// Convert a star network to a triangle or back.
    Ydelta(YdeltaArgs),
    /// Run acceptance checks.
    Check(CheckArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SeriesArgs {
    /// Relative tolerance of the series.
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    /// Bound on the summation index.
    #[arg(long, default_value_t = 4000)]
    pub max_terms: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum F4Mode {
    /// Double series at (x, y).
    Series,
    /// Two-term continuation through (x/y, 1/y).
    Continued,
    /// Row sum of Gauss functions.
    Rows,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchArg {
    Upper,
    Lower,
}

#[derive(Args, Debug)]
pub struct EvalF4Args {
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    #[arg(long)]
    pub c1: f64,
    #[arg(long)]
    pub c2: f64,
    #[arg(long)]
    pub x: f64,
    #[arg(long)]
    pub y: f64,
    #[arg(long, value_enum, default_value_t = F4Mode::Series)]
    pub mode: F4Mode,
    /// Side of the cut for continued values with y > 0; without it the
    /// continued mode stays real and refuses the cut.
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    #[command(flatten)]
    pub series: SeriesArgs,
}

/// Kinematics as (p², q², r²) or (p², x, y), or a file of JSON lines.
#[derive(Args, Debug, Clone)]
pub struct KinArgs {
    #[arg(long)]
    pub p2: Option<f64>,
    #[arg(long)]
    pub q2: Option<f64>,
    #[arg(long)]
    pub r2: Option<f64>,
    /// r²/p², used with --p2 and --y instead of --q2/--r2.
    #[arg(long, conflicts_with_all = ["q2", "r2"])]
    pub x: Option<f64>,
    /// q²/p², used with --p2 and --x.
    #[arg(long, conflicts_with_all = ["q2", "r2"])]
    pub y: Option<f64>,
    /// One JSON object per line with p2, q2, r2 or p2, x, y.
    #[arg(long, conflicts_with_all = ["p2", "q2", "r2", "x", "y"])]
    pub kin_file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// A, B, C, D terms.
    Four,
    /// A, C and the combined B/D term.
    Reduced,
    /// The printed three-term form, third F4 continued past its boundary.
    Paper3,
}

#[derive(Args, Debug)]
pub struct TriangleArgs {
    #[command(flatten)]
    pub kin: KinArgs,
    #[arg(long)]
    pub omega: f64,
    #[arg(long, value_enum, default_value_t = Form::Four)]
    pub form: Form,
    /// Side of the cut for the continued term of --form paper3.
    #[arg(long, value_enum, default_value_t = BranchArg::Upper)]
    pub branch: BranchArg,
    #[command(flatten)]
    pub series: SeriesArgs,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub kin: KinArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub quad_tol: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Star (R1 R2 R3) to triangle (Ra Rb Rc).
    Delta,
    /// Triangle (Ra Rb Rc) to star (R1 R2 R3).
    Y,
}

#[derive(Args, Debug)]
pub struct YdeltaArgs {
    #[arg(long, value_enum)]
    pub to: Direction,
    #[arg(num_args = 3, required = true)]
    pub resistances: Vec<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteArg {
    All,
    Special,
    Vertex,
    Oracle,
    Chain,
    Network,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    /// Seed for the sampled points.
    #[arg(long)]
    pub seed: Option<u64>,
}
