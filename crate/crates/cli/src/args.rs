use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hlvertex::hl_process::HLProcessSpec;
use hlvertex::six_vertex::{JaggedDomain, SixVertexParams};
use hlvertex::{Partition, SignString};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "hlvertex", version, about = "Stochastic six vertex model and Hall-Littlewood processes")]
pub struct Cli {
    /// JSON file whose keys override the flags of the chosen subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Print diagnostics (row caps, mass deficits, timings) to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition utilities.
    #[command(subcommand)]
    Partition(PartitionCmd),
    /// Hall-Littlewood process: exact laws and samples.
    #[command(subcommand)]
    Hl(HlCmd),
    /// Stochastic six vertex model.
    #[command(subcommand)]
    Sixv(SixvCmd),
    /// t-boson vertex weights.
    #[command(subcommand)]
    Tboson(TbosonCmd),
    /// Contour integral t-moments.
    #[command(subcommand)]
    Moments(MomentsCmd),
    /// Hall-Littlewood RSK dynamics.
    #[command(subcommand)]
    Rsk(RskCmd),
    /// Verification checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct Output {
    /// Output file; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct Sampling {
    /// Master seed.
    #[arg(long, env = "HLVERTEX_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

/// A partition given as `6,3,3,1`, `[6,3,3,1]` or an empty string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Parts(pub Vec<u32>);

impl FromStr for Parts {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        if s.is_empty() || s == "∅" {
            return Ok(Parts(Vec::new()));
        }
        s.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<std::result::Result<_, _>>()
            .map(Parts)
    }
}

impl Parts {
    pub fn partition(&self) -> Result<Partition> {
        Ok(Partition::new(self.0.clone())?)
    }
}

/// A lattice point `x,y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point(pub usize, pub usize);

impl FromStr for Point {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
        let p = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
        Ok(Point(p(x)?, p(y)?))
    }
}

pub fn need<T: Clone>(v: &Option<T>, name: &'static str) -> Result<T> {
    v.clone().ok_or(CliError::Missing(name))
}

/// Model parameters in matched `(t, a, b)` or native `(Q, xi, u)` form,
/// plus the domain.
#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
pub struct Model {
    /// Number of columns; defaults to the length of `a`.
    #[arg(id = "M", long = "M")]
    #[serde(rename = "M")]
    pub m: Option<usize>,
    /// Number of rows; defaults to the length of `b`.
    #[arg(id = "N", long = "N")]
    #[serde(rename = "N")]
    pub n: Option<usize>,
    /// Boundary sign string over `+-`; ascending when absent.
    #[arg(id = "S", long = "S", allow_hyphen_values = true)]
    #[serde(rename = "S")]
    pub s: Option<String>,
    #[arg(long)]
    pub t: Option<f64>,
    /// Column parameters; a single value is repeated.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub a: Option<Vec<f64>>,
    /// Row parameters; a single value is repeated.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub b: Option<Vec<f64>>,
    /// Native form: Q (converted with t = Q).
    #[arg(id = "Q", long = "Q", conflicts_with = "t")]
    #[serde(rename = "Q")]
    pub q: Option<f64>,
    /// Native form: column parameters (a = sqrt(Q)/xi).
    #[arg(long, num_args = 1.., value_delimiter = ',', conflicts_with = "a")]
    pub xi: Option<Vec<f64>>,
    /// Native form: row parameters (b = 1/(Q u)).
    #[arg(long, num_args = 1.., value_delimiter = ',', conflicts_with = "b")]
    pub u: Option<Vec<f64>>,
}

fn broadcast(v: Vec<f64>, len: usize, name: &str) -> Result<Vec<f64>> {
    match v.len() {
        1 => Ok(vec![v[0]; len]),
        l if l == len => Ok(v),
        l => Err(CliError::Usage(format!("--{name} has {l} values, expected 1 or {len}"))),
    }
}

/// How the parameters were given.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputForm {
    Matched,
    Native,
}

impl Model {
    fn signs(&self) -> Result<Option<SignString>> {
        self.s.as_deref().map(|s| s.parse::<SignString>()).transpose().map_err(Into::into)
    }

    /// `(M, N)`, from the flags, then `S`, then the parameter lengths, then
    /// the given minimums.
    pub fn dims(&self, min_m: usize, min_n: usize) -> Result<(usize, usize)> {
        let s = self.signs()?;
        let longest = |x: &Option<Vec<f64>>, y: &Option<Vec<f64>>| {
            x.as_ref().or(y.as_ref()).map(|v| v.len()).filter(|&l| l > 1)
        };
        let m = self
            .m
            .or(s.as_ref().map(|s| s.plus_count()))
            .or(longest(&self.a, &self.xi))
            .unwrap_or(min_m.max(1));
        let n = self
            .n
            .or(s.as_ref().map(|s| s.minus_count()))
            .or(longest(&self.b, &self.u))
            .unwrap_or(min_n.max(1));
        Ok((m, n))
    }

    pub fn params(&self, m: usize, n: usize) -> Result<(SixVertexParams, InputForm)> {
        match (self.t, self.q) {
            (Some(_), Some(_)) => Err(CliError::Usage("give either t or Q, not both".into())),
            (Some(t), None) => {
                let a = broadcast(need(&self.a, "a")?, m, "a")?;
                let b = broadcast(need(&self.b, "b")?, n, "b")?;
                Ok((SixVertexParams::matched(t, a, b)?, InputForm::Matched))
            }
            (None, Some(q)) => {
                let xi = broadcast(need(&self.xi, "xi")?, m, "xi")?;
                let u = broadcast(need(&self.u, "u")?, n, "u")?;
                Ok((SixVertexParams::native(q, &xi, &u)?, InputForm::Native))
            }
            (None, None) => Err(CliError::Missing("t")),
        }
    }

    pub fn domain(&self, m: usize, n: usize) -> Result<JaggedDomain> {
        Ok(match self.signs()? {
            Some(s) => JaggedDomain::new(m, n, s)?,
            None => JaggedDomain::rectangle(m, n)?,
        })
    }

    pub fn hl_spec(&self) -> Result<HLProcessSpec> {
        let (m, n) = self.dims(1, 1)?;
        let (p, _) = self.params(m, n)?;
        let s = self.signs()?.unwrap_or_else(|| SignString::ascending(m, n));
        Ok(HLProcessSpec::new(p.t, p.a, p.b, s)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum PartitionCmd {
    /// Conjugate partition.
    Conjugate(ConjugateArgs),
    /// Boundary sign string of a partition in a rows x cols box.
    String(ToStringArgs),
    /// Partition framed by a sign string.
    FromString(FromStringArgs),
    /// Single-variable skew P or Q function.
    Skew(SkewArgs),
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct ConjugateArgs {
    #[arg(long)]
    pub parts: Option<Parts>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct ToStringArgs {
    #[arg(long)]
    pub parts: Option<Parts>,
    /// Box height; defaults to the number of parts.
    #[arg(long)]
    pub rows: Option<usize>,
    /// Box width; defaults to the largest part.
    #[arg(long)]
    pub cols: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct FromStringArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SkewKind {
    P,
    Q,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct SkewArgs {
    #[arg(long)]
    pub lambda: Option<Parts>,
    #[arg(long)]
    pub mu: Option<Parts>,
    /// The variable.
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long, value_enum, default_value_t = SkewKind::P)]
    pub kind: SkewKind,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum HlCmd {
    /// Exact law of an observable.
    Exact(HlExactArgs),
    /// Samples of the support.
    Sample(HlSampleArgs),
    /// Normalization constant.
    Normalization(HlNormArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HlObservable {
    /// Skew diagram of the support.
    Support,
    /// First column lengths of the whole sequence.
    FirstColumns,
    /// Marginal of one partition (needs --level).
    Level,
    /// The whole sequence; exponential cost.
    Sequence,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct HlExactArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: Model,
    #[arg(long, value_enum, default_value_t = HlObservable::Support)]
    pub observable: HlObservable,
    #[arg(long)]
    pub level: Option<usize>,
    /// Largest part allowed; chosen automatically when absent.
    #[arg(long)]
    pub row_cap: Option<u32>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct HlSampleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: Model,
    #[arg(long)]
    pub row_cap: Option<u32>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct HlNormArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: Model,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum SixvCmd {
    /// Exact law by transfer matrix.
    Exact(SixvExactArgs),
    /// Sampled states.
    Sample(SixvSampleArgs),
    /// Half-continuous model.
    Halfcont(HalfcontArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SixvObservable {
    /// Skew diagram read off the outgoing edges.
    Outgoing,
    /// `y_i - h(x_i + 1, y_i)` along the cut path.
    CutHeights,
    /// Joint heights at the --point list.
    Heights,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct SixvExactArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: Model,
    #[arg(long, value_enum, default_value_t = SixvObservable::Outgoing)]
    pub observable: SixvObservable,
    /// Height query point `x,y`; repeatable.
    #[arg(long = "point")]
    #[serde(rename = "points", default)]
    pub points: Vec<Point>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct SixvSampleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: Model,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct HalfcontArgs {
    #[arg(long)]
    pub t: Option<f64>,
    /// Row rates b_1, ..., b_N.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub rates: Option<Vec<f64>>,
    /// Time horizon; defaults to the last query time.
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Query times; defaults to the horizon.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub query: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1)]
    pub samples: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum TbosonCmd {
    /// Yang-Baxter residual over random indices and parameters.
    Yb(YbArgs),
    /// Finite-volume exchange relations.
    Exchange(ExchangeArgs),
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct YbArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct ExchangeArgs {
    /// One of CA, CB, DA, DB; all four when absent.
    #[arg(long)]
    pub which: Option<String>,
    /// Number of sites.
    #[arg(long = "L", default_value_t = 3)]
    #[serde(rename = "L")]
    pub sites: usize,
    /// Largest occupation per site.
    #[arg(long, default_value_t = 3)]
    pub cap: u32,
    #[arg(long, default_value_t = 0.4)]
    pub a: f64,
    #[arg(long, default_value_t = 0.7)]
    pub b: f64,
    #[arg(long, default_value_t = 0.3)]
    pub t: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum MomentsCmd {
    /// Hall-Littlewood side.
    Hl(MomentArgs),
    /// Six vertex side.
    Sixv(MomentArgs),
    /// Both sides of the identity.
    Match(MomentArgs),
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct MomentArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: Model,
    /// Number of factors; a single --m value is repeated k times.
    #[arg(long)]
    pub k: Option<usize>,
    /// Columns m_1, ..., m_k.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub m: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 4096)]
    pub max_nodes: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum RskCmd {
    /// Array dynamics from the zero array.
    Run(RskRunArgs),
    /// t-PushTASEP from the packed configuration.
    Pushtasep(RskRunArgs),
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct RskRunArgs {
    /// Clock rates per level; a single value is repeated --levels times.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub rates: Option<Vec<f64>>,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Snapshot times (run only).
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    #[serde(default)]
    pub snapshots: Option<Vec<f64>>,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

impl RskRunArgs {
    pub fn rates(&self) -> Result<Vec<f64>> {
        let r = need(&self.rates, "rates")?;
        match (r.len(), self.levels) {
            (1, Some(n)) => Ok(vec![r[0]; n]),
            (l, Some(n)) if l != n => Err(CliError::Usage(format!("{l} rates for {n} levels"))),
            _ => Ok(r),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Every check.
    All(VerifyAllArgs),
    /// Support laws: one domain when parameters are given, else a sweep.
    Support(VerifyLawArgs),
    /// First-column versus cut-height laws.
    Height(VerifyLawArgs),
    /// Moment formulas against each other and the exact laws.
    Moments(VerifyMomentsArgs),
    /// RSK first columns against half-continuous heights.
    Rsk(VerifyRskArgs),
    /// Array marginal against the Plancherel limit.
    Plancherel(VerifyPlancherelArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelArg {
    Quick,
    Desk,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct VerifyAllArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Desk)]
    pub level: LevelArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct VerifyLawArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: Model,
    /// Sweep: largest M and N.
    #[arg(long, default_value_t = 3)]
    pub max: usize,
    /// Sweep: parameter draws per domain.
    #[arg(long, default_value_t = 5)]
    pub draws: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct VerifyMomentsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: Model,
    /// Single instance columns; a random sweep when absent.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub m: Option<Vec<usize>>,
    #[arg(long, default_value_t = 50)]
    pub draws: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct VerifyRskArgs {
    #[arg(long, num_args = 1.., value_delimiter = ',', default_values_t = [1.0, 0.6, 1.4])]
    pub rates: Vec<f64>,
    #[arg(long, default_value_t = 0.4)]
    pub t: f64,
    #[arg(long, num_args = 1.., value_delimiter = ',', default_values_t = [0.5, 1.0, 2.0])]
    pub times: Vec<f64>,
    /// Rows of the height field.
    #[arg(long, num_args = 1.., value_delimiter = ',', default_values_t = [1, 2, 3])]
    pub ys: Vec<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct VerifyPlancherelArgs {
    /// Rates c_1, ..., c_n (also the HL a parameters).
    #[arg(long, num_args = 1.., value_delimiter = ',', default_values_t = [1.0, 0.8])]
    pub c: Vec<f64>,
    #[arg(long, default_value_t = 0.3)]
    pub t: f64,
    #[arg(long, default_value_t = 0.8)]
    pub tau: f64,
    #[arg(long, default_value_t = 2)]
    pub level: usize,
    /// Discretization K.
    #[arg(long = "K", default_value_t = 64)]
    #[serde(rename = "K")]
    pub k: usize,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}
