//! Commands shared by the command line and scenario files: definitions, literal parsing and
//! execution.
//!
//! Execution has two phases. `prepare` parses every literal (formulas, modules, point sets, tube
//! specs) and checks parameter bounds, so malformed input is a usage error before anything runs.
//! `Job::run` then does the work and always yields reports; runtime failures become `ERROR`
//! reports carrying the error text verbatim.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Subcommand, ValueEnum};
use ppz_core::algebra::Algebra;
use ppz_core::lattice::{interval_probe, ProbeLimits};
use ppz_core::module::{Module, Side};
use ppz_core::pp::PpFormula;
use ppz_core::realize::RealizedTube;
use ppz_core::tower::{FpLabel, Tower};
use ppz_core::tube::{Arrow, FormalPath, NormalPath, TranslationQuiver, Vertex};
use ppz_core::universe::{dvr_algebra, dvr_uniserial, kronecker_algebra, kronecker_chain, kronecker_preprojective, kronecker_preprojectives};
use ppz_core::ziegler::{point_closure, PointSet, ZieglerPoint, CLOSURE_ASSUMPTION};
use ppz_core::{Field, PrimeField};

use crate::report::Report;
use crate::suites::{run_suite, suite_names};
use crate::syntax::{format_formula, parse_formula};

/// Largest tower horizon `N` accepted anywhere.
pub const MAX_HORIZON: usize = 8;
/// Largest tower height `n`.
pub const MAX_HEIGHT: usize = 4;
/// Largest module dimension cap for label enumeration.
pub const MAX_DIM_CAP: usize = 16;
/// Largest tube rank `m`, ray length `n_i` and stage count `J`.
pub const MAX_TUBE_RANK: usize = 6;
pub const MAX_RAY: usize = 4;
pub const MAX_STAGES: usize = 8;
/// Largest probe budget.
pub const MAX_BUDGET: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u32),
    Rational,
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rational" | "Q" => Ok(FieldSpec::Rational),
            _ => {
                let p: u32 = s.parse().map_err(|_| format!("expected a prime or `rational`, got `{s}`"))?;
                PrimeField::new(p).map_err(|e| e.to_string())?;
                Ok(FieldSpec::Prime(p))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run a scenario file.
    Run { file: PathBuf },
    /// Build every label of R_n up to a dimension cap and classify it.
    Classify(ClassifyArgs),
    /// pp-formula calculus.
    #[command(subcommand)]
    Pp(PpCommand),
    /// Symbolic Ziegler spectra of the tower rings.
    #[command(subcommand)]
    Ziegler(ZieglerCommand),
    /// Inspect a ray tube: vertices, DOT export, hom spaces, normal forms.
    Tube(TubeArgs),
    /// Realize a ray tube in a tower and verify its defining squares.
    Realize(RealizeArgs),
    /// Bounded searches for long chains of pp-definable subgroups.
    #[command(subcommand)]
    Probe(ProbeCommand),
    /// Run a verification suite, or `all`.
    Suite {
        #[arg(value_name = "NAME")]
        name: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct TowerArgs {
    /// Horizon: the truncation k[x]/(x^N) of the valuation domain.
    #[arg(long = "N", value_name = "N")]
    pub horizon: usize,
    /// Height n of the ring R_n.
    #[arg(long = "n", value_name = "n")]
    pub height: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub tower: TowerArgs,
    #[arg(long, default_value_t = 8)]
    pub dim_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct FormulaArgs {
    /// `kronecker`, `dvr:N` or `tower:N:n`.
    #[arg(long, default_value = "kronecker")]
    pub algebra: String,
    #[arg(long, value_enum, default_value_t = SideArg::Right)]
    pub side: SideArg,
    #[arg(long)]
    pub formula: String,
    /// Number of free variables (default: the largest x index).
    #[arg(long)]
    pub arity: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum PpCommand {
    /// Elementary dual, with an equivalence certificate when the dual is a standard formula.
    Dual(FormulaArgs),
    /// Decide whether the formula implies another one.
    Implies {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long)]
        other: String,
    },
    /// Evaluate on modules given by literals such as `U3+U1`, `Pre(3)` or `F0^1 F1^0 Ind(2)`.
    Eval {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long = "module", required = true)]
        modules: Vec<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SetArgs {
    #[arg(long = "n", value_name = "n")]
    pub height: usize,
    /// Points separated by commas; the braces are optional.
    #[arg(long)]
    pub set: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum ZieglerCommand {
    /// Closure of a set of points.
    Closure(SetArgs),
    /// Whether a set of points is closed.
    IsClosed(SetArgs),
    /// Points of the spectrum with their closures.
    Points {
        #[arg(long = "n", value_name = "n")]
        height: usize,
        /// Largest length listed for finite-length points.
        #[arg(long, default_value_t = 3)]
        max_length: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct TubeArgs {
    /// `m=2 n=[1,0] horizon=6`.
    #[arg(required = true, value_name = "PARAM")]
    pub spec: Vec<String>,
    /// Emit the quiver in DOT format.
    #[arg(long, conflicts_with_all = ["hom", "normalize"])]
    pub dot: bool,
    /// Basis of normal paths and dimension of Hom between two vertices.
    #[arg(long, num_args = 2, value_names = ["SOURCE", "TARGET"], conflicts_with = "normalize")]
    pub hom: Option<Vec<String>>,
    /// Normal form of a path, given as arrows such as `mu_0^0[1] lambda_0^0[2]`.
    #[arg(long, value_name = "PATH")]
    pub normalize: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct RealizeArgs {
    #[command(flatten)]
    pub tower: TowerArgs,
    #[arg(required = true, value_name = "PARAM")]
    pub spec: Vec<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum ProbeCommand {
    /// Probe the descending Kronecker chain against preprojectives.
    Kronecker {
        #[arg(long, default_value_t = 3)]
        budget: usize,
        /// Largest preprojective dimension in the universe.
        #[arg(long, default_value_t = 9)]
        max_dim: usize,
    },
    /// Probe the realized maps mu_i^k[j] of a tube.
    Mu {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(required = true, value_name = "PARAM")]
        spec: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_stage: usize,
        #[arg(long, default_value_t = 10)]
        budget: usize,
        /// Largest dimension of the labelled modules in the universe.
        #[arg(long, default_value_t = 6)]
        dim_cap: usize,
    },
}

/// A command that cannot be prepared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExecError {
    /// A literal argument is malformed; `offset` is the 1-based column inside `literal`.
    Literal { literal: String, offset: usize, msg: String },
    Usage(String),
}

impl fmt::Display for ExecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExecError::Literal { literal, offset, msg } => write!(f, "in `{literal}`, column {offset}: {msg}"),
            ExecError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

fn usage(msg: impl Into<String>) -> ExecError {
    ExecError::Usage(msg.into())
}

fn literal(text: &str, offset: usize, msg: impl Into<String>) -> ExecError {
    ExecError::Literal { literal: text.to_string(), offset, msg: msg.into() }
}

fn bound(name: &str, value: usize, lo: usize, hi: usize) -> Result<usize, ExecError> {
    if (lo..=hi).contains(&value) {
        Ok(value)
    } else {
        Err(usage(format!("{name} = {value} is outside {lo}..={hi}")))
    }
}

fn check_tower(t: &TowerArgs) -> Result<(), ExecError> {
    bound("N", t.horizon, 1, MAX_HORIZON)?;
    bound("n", t.height, 0, MAX_HEIGHT)?;
    Ok(())
}

/// Algebra selected by `kronecker`, `dvr:N` or `tower:N:n`.
pub struct AlgebraChoice<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub kind: AlgebraKind<F>,
    pub horizon: Option<usize>,
}

pub enum AlgebraKind<F: Field> {
    Kronecker,
    Dvr,
    Tower(Box<Tower<F>>),
}

pub fn parse_algebra<F: Field>(f: F, text: &str) -> Result<AlgebraChoice<F>, ExecError> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |i: usize| -> Result<usize, ExecError> {
        let offset = parts[..i].iter().map(|p| p.len() + 1).sum::<usize>() + 1;
        parts[i].parse().map_err(|_| literal(text, offset, format!("expected a number, found `{}`", parts[i])))
    };
    let core = |e: ppz_core::Error| usage(e.to_string());
    match parts.as_slice() {
        ["kronecker"] => Ok(AlgebraChoice { algebra: kronecker_algebra(f).map_err(core)?, kind: AlgebraKind::Kronecker, horizon: None }),
        ["dvr", _] => {
            let n = bound("N", num(1)?, 1, MAX_HORIZON)?;
            Ok(AlgebraChoice { algebra: dvr_algebra(f, n).map_err(core)?, kind: AlgebraKind::Dvr, horizon: Some(n) })
        }
        ["tower", _, _] => {
            let horizon = bound("N", num(1)?, 1, MAX_HORIZON)?;
            let height = bound("n", num(2)?, 0, MAX_HEIGHT)?;
            let tower = Tower::new(horizon, height, f).map_err(core)?;
            let algebra = tower.ring(height).map_err(core)?.clone();
            Ok(AlgebraChoice { algebra, kind: AlgebraKind::Tower(Box::new(tower)), horizon: Some(horizon) })
        }
        _ => Err(literal(text, 1, "expected `kronecker`, `dvr:N` or `tower:N:n`")),
    }
}

/// A right module from a `+`-separated literal: `R` (regular), `U<j>` over `dvr:N`,
/// `Pre(d)` over the Kronecker algebra, labels such as `F0^0 F1^1 Ind(2)` over `tower:N:n`.
pub fn parse_module<F: Field>(choice: &AlgebraChoice<F>, text: &str) -> Result<Module<F>, ExecError> {
    let mut parts = Vec::new();
    let mut offset = 1;
    for piece in text.split('+') {
        let lead = piece.len() - piece.trim_start().len();
        let item = piece.trim();
        let col = offset + lead;
        offset += piece.len() + 1;
        let bad = |msg: String| literal(text, col, msg);
        let m = if item == "R" {
            Module::regular(choice.algebra.clone(), Side::Right)
        } else {
            match &choice.kind {
                AlgebraKind::Dvr => {
                    let j: usize = item.strip_prefix('U').and_then(|j| j.parse().ok()).ok_or_else(|| bad(format!("expected `U<j>` or `R`, found `{item}`")))?;
                    if j == 0 || j > choice.algebra.dim() {
                        return Err(bad(format!("U{j} needs 1 <= j <= {}", choice.algebra.dim())));
                    }
                    dvr_uniserial(&choice.algebra, j)
                }
                AlgebraKind::Kronecker => {
                    let d: usize = item
                        .strip_prefix("Pre(")
                        .and_then(|r| r.strip_suffix(')'))
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| bad(format!("expected `Pre(d)` or `R`, found `{item}`")))?;
                    if d.is_multiple_of(2) || d > 2 * MAX_DIM_CAP + 1 {
                        return Err(bad(format!("Pre(d) needs an odd d <= {}", 2 * MAX_DIM_CAP + 1)));
                    }
                    kronecker_preprojective(&choice.algebra, (d - 1) / 2).map_err(|e| bad(e.to_string()))?
                }
                AlgebraKind::Tower(tower) => {
                    let label: FpLabel = item.parse().map_err(|e: ppz_core::Error| bad(e.to_string()))?;
                    if label.level() != tower.height() {
                        return Err(bad(format!("{label} lives over R_{}, not R_{}", label.level(), tower.height())));
                    }
                    tower.build_label(&label).map_err(|e| bad(e.to_string()))?
                }
            }
        };
        parts.push(m);
    }
    let refs: Vec<&Module<F>> = parts.iter().collect();
    Module::direct_sum(&refs).map_err(|e| literal(text, 1, e.to_string()))
}

fn formula<F: Field>(choice: &AlgebraChoice<F>, side: Side, text: &str, arity: Option<usize>) -> Result<PpFormula<F>, ExecError> {
    parse_formula(&choice.algebra, side, text, arity).map_err(|e| literal(text, e.col, e.msg))
}

/// Ray tube parameters `m=<rank> n=[n_0,...] horizon=<J>`; `J=` is accepted for `horizon=`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeSpec {
    pub rank: usize,
    pub rays: Vec<usize>,
    pub horizon: usize,
}

impl TubeSpec {
    pub fn parse(params: &[String]) -> Result<TubeSpec, ExecError> {
        let (mut rank, mut rays, mut horizon) = (None, None, None);
        for p in params {
            let (key, value) = p.split_once('=').ok_or_else(|| literal(p, 1, "expected `key=value`"))?;
            let vcol = key.len() + 2;
            let num = |s: &str, col: usize| s.trim().parse::<usize>().map_err(|_| literal(p, col, format!("expected a number, found `{}`", s.trim())));
            match key {
                "m" => rank = Some(bound("m", num(value, vcol)?, 1, MAX_TUBE_RANK)?),
                "horizon" | "J" => horizon = Some(bound("horizon", num(value, vcol)?, 2, MAX_STAGES)?),
                "n" => {
                    let open = value.starts_with('[') as usize;
                    let inner = value.strip_prefix('[').unwrap_or(value);
                    let inner = if open == 1 { inner.strip_suffix(']').ok_or_else(|| literal(p, p.len(), "missing `]`"))? } else { inner };
                    let mut col = vcol + open;
                    let mut out = Vec::new();
                    for item in inner.split(',') {
                        out.push(bound("n_i", num(item, col)?, 0, MAX_RAY)?);
                        col += item.len() + 1;
                    }
                    rays = Some(out);
                }
                _ => return Err(literal(p, 1, format!("unknown parameter `{key}`; expected m, n or horizon"))),
            }
        }
        let horizon = horizon.ok_or_else(|| usage("tube parameters need horizon=<J>"))?;
        let (rank, rays) = match (rank, rays) {
            (Some(m), Some(r)) if r.len() != m => return Err(usage(format!("m={m} but n lists {} ray lengths", r.len()))),
            (Some(m), Some(r)) => (m, r),
            (None, Some(r)) => (bound("m", r.len(), 1, MAX_TUBE_RANK)?, r),
            (Some(m), None) => (m, vec![0; m]),
            (None, None) => return Err(usage("tube parameters need m=<rank> or n=[...]")),
        };
        Ok(TubeSpec { rank, rays, horizon })
    }

    pub fn quiver(&self) -> Result<TranslationQuiver, ExecError> {
        TranslationQuiver::new(self.rank, &self.rays, self.horizon).map_err(|e| usage(e.to_string()))
    }
}

impl fmt::Display for TubeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| r.to_string()).collect();
        write!(f, "m={} n=[{}] horizon={}", self.rank, rays.join(","), self.horizon)
    }
}

fn parse_triple(text: &str, open: &str) -> Option<(usize, usize, usize)> {
    let inner = text.strip_prefix(open)?.strip_suffix(')')?;
    let nums: Vec<usize> = inner.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    match nums.as_slice() {
        [i, k, j] => Some((*i, *k, *j)),
        _ => None,
    }
}

/// `S(i,k,j)`.
pub fn parse_vertex(q: &TranslationQuiver, text: &str) -> Result<Vertex, ExecError> {
    let (i, k, j) = parse_triple(text.trim(), "S(").ok_or_else(|| literal(text, 1, "expected `S(i,k,j)`"))?;
    let v = Vertex { i, k, j };
    if !q.contains(v) {
        return Err(literal(text, 1, format!("{v} is not a vertex of the tube")));
    }
    Ok(v)
}

/// `mu_i^k[j]` or `lambda_i^k[j]`.
pub fn parse_arrow(text: &str) -> Option<Arrow> {
    let (mu, rest) = if let Some(r) = text.strip_prefix("mu_") {
        (true, r)
    } else {
        (false, text.strip_prefix("lambda_")?)
    };
    let (i, rest) = rest.split_once('^')?;
    let (k, rest) = rest.split_once('[')?;
    let j = rest.strip_suffix(']')?;
    let (i, k, j) = (i.parse().ok()?, k.parse().ok()?, j.parse().ok()?);
    Some(if mu { Arrow::Mu { i, k, j } } else { Arrow::Lambda { i, k, j } })
}

/// Arrows separated by spaces, commas or `*`, composed left to right.
pub fn parse_path(q: &TranslationQuiver, text: &str) -> Result<FormalPath, ExecError> {
    let mut arrows = Vec::new();
    let mut col = 1;
    for piece in text.split([' ', ',', '*']) {
        if !piece.is_empty() {
            let a = parse_arrow(piece).ok_or_else(|| literal(text, col, format!("expected an arrow such as `mu_0^0[1]`, found `{piece}`")))?;
            if q.target(a).is_none() {
                return Err(literal(text, col, format!("{a} is not an arrow of the tube")));
            }
            arrows.push(a);
        }
        col += piece.chars().count() + 1;
    }
    if arrows.is_empty() {
        return Err(literal(text, 1, "empty path"));
    }
    FormalPath::from_arrows(q, arrows).map_err(|e| literal(text, 1, e.to_string()))
}

/// The tube as a DOT digraph, mu arrows solid and lambda arrows dashed.
pub fn tube_dot(q: &TranslationQuiver) -> String {
    let mut out = String::from("digraph tube {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for v in q.vertices() {
        out.push_str(&format!("  \"{v}\";\n"));
    }
    for a in q.arrows() {
        let Some(t) = q.target(a) else { continue };
        let style = if a.is_mu() { "solid" } else { "dashed" };
        out.push_str(&format!("  \"{}\" -> \"{t}\" [label=\"{a}\", style={style}];\n", a.source()));
    }
    out.push_str("}\n");
    out
}

fn parse_point_set(args: &SetArgs) -> Result<PointSet, ExecError> {
    bound("n", args.height, 0, MAX_HEIGHT)?;
    let trimmed = args.set.trim();
    let wrapped = if trimmed.starts_with('{') { trimmed.to_string() } else { format!("{{{trimmed}}}") };
    PointSet::parse(args.height, &wrapped).map_err(|e| literal(&args.set, 1, e.to_string()))
}

enum PpTask<F: Field> {
    Dual(PpFormula<F>),
    Implies(PpFormula<F>, PpFormula<F>),
    Eval(PpFormula<F>, Vec<(String, Module<F>)>),
}

enum TubeTask {
    List,
    Dot,
    Hom(Vertex, Vertex),
    Normalize(FormalPath),
}

enum Task<F: Field> {
    Classify { args: ClassifyArgs },
    Pp { task: PpTask<F>, horizon: Option<usize> },
    ZClosure(PointSet),
    ZIsClosed(PointSet),
    ZPoints { height: usize, max_length: usize },
    Tube { spec: TubeSpec, quiver: TranslationQuiver, task: TubeTask },
    Realize { tower: TowerArgs, spec: TubeSpec, quiver: TranslationQuiver },
    ProbeKronecker { budget: usize, max_dim: usize },
    ProbeMu { tower: TowerArgs, quiver: TranslationQuiver, max_stage: usize, budget: usize, dim_cap: usize },
    Suites(Vec<String>),
}

/// A parsed command ready to run.
pub struct Job<F: Field> {
    pub text: String,
    pub horizon: Option<usize>,
    task: Task<F>,
}

/// Parses and checks every literal of `cmd`; `text` is the command line shown in reports.
pub fn prepare<F: Field>(f: F, cmd: &Command, text: &str) -> Result<Job<F>, ExecError> {
    let task = match cmd {
        Command::Run { .. } => return Err(usage("`run` is only available on the command line")),
        Command::Classify(args) => {
            check_tower(&args.tower)?;
            bound("dim-cap", args.dim_cap, 1, MAX_DIM_CAP)?;
            Task::Classify { args: args.clone() }
        }
        Command::Pp(pp) => {
            let fa = match pp {
                PpCommand::Dual(a) | PpCommand::Implies { formula: a, .. } | PpCommand::Eval { formula: a, .. } => a,
            };
            let choice = parse_algebra(f, &fa.algebra)?;
            let side = Side::from(fa.side);
            let phi = formula(&choice, side, &fa.formula, fa.arity)?;
            let task = match pp {
                PpCommand::Dual(_) => PpTask::Dual(phi),
                PpCommand::Implies { other, .. } => {
                    let psi = formula(&choice, side, other, Some(phi.n()))?;
                    PpTask::Implies(phi, psi)
                }
                PpCommand::Eval { modules, .. } => {
                    let mods = modules.iter().map(|m| Ok((m.clone(), parse_module(&choice, m)?))).collect::<Result<_, ExecError>>()?;
                    PpTask::Eval(phi, mods)
                }
            };
            Task::Pp { task, horizon: choice.horizon }
        }
        Command::Ziegler(z) => match z {
            ZieglerCommand::Closure(a) => Task::ZClosure(parse_point_set(a)?),
            ZieglerCommand::IsClosed(a) => Task::ZIsClosed(parse_point_set(a)?),
            ZieglerCommand::Points { height, max_length } => {
                bound("n", *height, 0, MAX_HEIGHT)?;
                bound("max-length", *max_length, 1, MAX_DIM_CAP)?;
                Task::ZPoints { height: *height, max_length: *max_length }
            }
        },
        Command::Tube(args) => {
            let spec = TubeSpec::parse(&args.spec)?;
            let quiver = spec.quiver()?;
            let task = if args.dot {
                TubeTask::Dot
            } else if let Some(h) = &args.hom {
                TubeTask::Hom(parse_vertex(&quiver, &h[0])?, parse_vertex(&quiver, &h[1])?)
            } else if let Some(p) = &args.normalize {
                TubeTask::Normalize(parse_path(&quiver, p)?)
            } else {
                TubeTask::List
            };
            Task::Tube { spec, quiver, task }
        }
        Command::Realize(args) => {
            check_tower(&args.tower)?;
            let spec = TubeSpec::parse(&args.spec)?;
            let quiver = spec.quiver()?;
            Task::Realize { tower: args.tower.clone(), spec, quiver }
        }
        Command::Probe(ProbeCommand::Kronecker { budget, max_dim }) => {
            bound("budget", *budget, 1, MAX_BUDGET)?;
            bound("max-dim", *max_dim, 1, 2 * MAX_DIM_CAP + 1)?;
            Task::ProbeKronecker { budget: *budget, max_dim: *max_dim }
        }
        Command::Probe(ProbeCommand::Mu { tower, spec, max_stage, budget, dim_cap }) => {
            check_tower(tower)?;
            let quiver = TubeSpec::parse(spec)?.quiver()?;
            bound("max-stage", *max_stage, 1, quiver.horizon())?;
            bound("budget", *budget, 1, MAX_BUDGET)?;
            bound("dim-cap", *dim_cap, 1, MAX_DIM_CAP)?;
            Task::ProbeMu { tower: tower.clone(), quiver, max_stage: *max_stage, budget: *budget, dim_cap: *dim_cap }
        }
        Command::Suite { name } => {
            let names = suite_names();
            if name == "all" {
                Task::Suites(names.iter().map(|s| s.to_string()).collect())
            } else if names.contains(&name.as_str()) {
                Task::Suites(vec![name.clone()])
            } else {
                return Err(literal(name, 1, format!("unknown suite; expected `all` or one of {}", names.join(", "))));
            }
        }
    };
    let horizon = match &task {
        Task::Classify { args } => Some(args.tower.horizon),
        Task::Pp { horizon, .. } => *horizon,
        Task::Tube { quiver, .. } => Some(quiver.horizon()),
        Task::Realize { tower, .. } | Task::ProbeMu { tower, .. } => Some(tower.horizon),
        _ => None,
    };
    Ok(Job { text: text.to_string(), horizon, task })
}

impl<F: Field> Job<F> {
    /// Runs the job; errors become `ERROR` reports.
    pub fn run(&self, f: F, seed: u64) -> Vec<Report> {
        match self.execute(f, seed) {
            Ok(reports) => reports,
            Err(e) => {
                let r = Report::error(self.text.clone(), format!("{e:#}"));
                vec![match self.horizon {
                    Some(h) => r.with_horizon(h),
                    None => r,
                }]
            }
        }
    }

    fn execute(&self, f: F, seed: u64) -> anyhow::Result<Vec<Report>> {
        let text = self.text.clone();
        let report = match &self.task {
            Task::Classify { args } => classify(f, &text, args)?,
            Task::Pp { task, .. } => pp(&text, task)?,
            Task::ZClosure(set) => {
                let mut r = Report::new(text, &["set"]);
                r.row([set.closure().to_string()]);
                r
            }
            Task::ZIsClosed(set) => {
                let mut r = Report::new(text, &["set", "closed", "closure"]);
                r.row([set.to_string(), set.is_closed().to_string(), set.closure().to_string()]);
                r
            }
            Task::ZPoints { height, max_length } => ziegler_points(&text, *height, *max_length)?,
            Task::Tube { spec, quiver, task } => tube(&text, spec, quiver, task)?,
            Task::Realize { tower, spec, quiver } => realize(f, &text, tower, spec, quiver)?,
            Task::ProbeKronecker { budget, max_dim } => probe_kronecker(f, &text, *budget, *max_dim)?,
            Task::ProbeMu { tower, quiver, max_stage, budget, dim_cap } => probe_mu(f, &text, tower, quiver, *max_stage, *budget, *dim_cap)?,
            Task::Suites(names) => {
                let mut out = Vec::new();
                for name in names {
                    let mut r = match run_suite(f, name, seed) {
                        Ok(r) => r,
                        Err(e) => Report::error(format!("suite {name}"), format!("{e:#}")),
                    };
                    if names.len() == 1 {
                        r.command = text.clone();
                    }
                    out.push(r);
                }
                return Ok(out);
            }
        };
        Ok(vec![match self.horizon {
            Some(h) => report.with_horizon(h),
            None => report,
        }])
    }
}

fn classify<F: Field>(f: F, text: &str, args: &ClassifyArgs) -> anyhow::Result<Report> {
    let (horizon, n) = (args.tower.horizon, args.tower.height);
    let tower = Tower::new(horizon, n, f)?;
    let ln = tower.bimodule(n)?;
    let mut r = Report::new(text, &["label", "dim", "hom_L", "classified_as"]);
    let mut labels = tower.labels(n, args.dim_cap)?;
    labels.sort();
    for label in &labels {
        let x = tower.build_label(label)?;
        let hom = ln.hom_dim(&x)?;
        let verdict = match tower.classify(n, &x) {
            Ok(parts) => {
                r.require(parts == vec![(label.canonical(), 1)]);
                parts.iter().map(|(l, k)| if *k == 1 { l.to_string() } else { format!("{k} x {l}") }).collect::<Vec<_>>().join(" + ")
            }
            Err(e @ ppz_core::Error::Unclassified(_)) => {
                r.require(false);
                e.to_string()
            }
            Err(e) => return Err(e.into()),
        };
        r.require(hom <= 1);
        r.row([label.to_string(), x.dim().to_string(), hom.to_string(), verdict]);
    }
    r.note(format!("{} labels of R_{n} with dimension <= {}", labels.len(), args.dim_cap));
    Ok(r)
}

/// Named standard one-variable formulas on `side`: `x = x`, `x = 0`, `a | x` and `xa = 0`.
fn standard_formulas<F: Field>(alg: &Arc<Algebra<F>>, side: Side) -> Vec<(String, PpFormula<F>)> {
    let mut out = vec![
        ("x1 = x1".to_string(), PpFormula::tautology(alg.clone(), side, 1)),
        ("x1 = 0".to_string(), PpFormula::zero(alg.clone(), side, 1)),
    ];
    for i in 0..alg.dim() {
        let a = alg.basis_elem(i);
        if a != *alg.unit() {
            let label = &alg.labels()[i];
            let ann = match side {
                Side::Right => format!("x1*{label} = 0"),
                Side::Left => format!("{label}*x1 = 0"),
            };
            out.push((format!("{label} | x1"), PpFormula::divisibility(alg.clone(), side, &a)));
            out.push((ann, PpFormula::annihilator(alg.clone(), side, &a)));
        }
    }
    out
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Right => "right",
        Side::Left => "left",
    }
}

fn pp<F: Field>(text: &str, task: &PpTask<F>) -> anyhow::Result<Report> {
    let mut r = Report::new(text, &["item", "value"]);
    match task {
        PpTask::Dual(phi) => {
            let d = phi.dual();
            r.row(["formula", &format_formula(phi)]);
            r.row(["dual", &format_formula(&d)]);
            r.row(["dual side", side_name(d.side())]);
            if d.n() == 1 {
                let alg = phi.algebra();
                for (name, std) in standard_formulas(alg, d.side()) {
                    if d.implies(&std)? && std.implies(&d)? {
                        r.row(["equivalent to", &name]);
                        r.row(["certificate", "dual implies it and it implies the dual, decided on free realizations"]);
                        break;
                    }
                }
            }
            let involution = d.dual().equivalent(phi)?;
            r.require(involution);
            r.row(["D D phi equivalent to phi", if involution { "yes" } else { "no" }]);
        }
        PpTask::Implies(phi, psi) => {
            let forward = phi.implies(psi)?;
            let dual = psi.dual().implies(&phi.dual())?;
            r.row(["formula", &format_formula(phi)]);
            r.row(["other", &format_formula(psi)]);
            r.row(["implies", &forward.to_string()]);
            r.row(["converse", &psi.implies(phi)?.to_string()]);
            r.row(["D other implies D formula", &dual.to_string()]);
            r.require(forward == dual);
        }
        PpTask::Eval(phi, mods) => {
            r = Report::new(text, &["module", "dim", "value_dim"]);
            for (name, m) in mods {
                // a left formula is read on the k-dual of the given right module
                let target = match phi.side() {
                    Side::Right => m.clone(),
                    Side::Left => m.k_dual(),
                };
                let value = phi.eval(&target)?;
                r.row([name.clone(), target.dim().to_string(), value.dim().to_string()]);
            }
            r.note(format!("formula: {}", format_formula(phi)));
            if phi.side() == Side::Left {
                r.note("left formulas are evaluated on the k-duals of the listed modules");
            }
        }
    }
    Ok(r)
}

fn ziegler_points(text: &str, n: usize, max_length: usize) -> anyhow::Result<Report> {
    let mut r = Report::new(text, &["point", "kind", "closure"]);
    let mut points = Vec::new();
    for l in 0..=n {
        for j in 1..=max_length {
            points.push(ZieglerPoint::FinLen { f0: n - l, f1: l, j });
        }
        points.push(ZieglerPoint::Prufer { f0: n - l, f1: l });
    }
    for m in 1..=n {
        for l in 0..=n - m {
            points.push(ZieglerPoint::T { f0: n - m - l, f1: l, m });
        }
    }
    points.push(ZieglerPoint::Adic { n });
    points.push(ZieglerPoint::Q { n });
    for p in points {
        let kind = if p.is_finite_length() { "finite length" } else { "infinite" };
        r.row([p.to_string(), kind.to_string(), point_closure(p).to_string()]);
    }
    r.note(CLOSURE_ASSUMPTION);
    Ok(r)
}

fn tube(text: &str, spec: &TubeSpec, q: &TranslationQuiver, task: &TubeTask) -> anyhow::Result<Report> {
    let r = match task {
        TubeTask::List => {
            let mut r = Report::new(text, &["vertex", "mu", "lambda"]);
            for v in q.vertices() {
                let out = |a: Option<Arrow>| a.and_then(|a| q.target(a)).map_or("-".to_string(), |t| t.to_string());
                r.row([v.to_string(), out(q.mu_from(v)), out(q.lambda_from(v))]);
            }
            r.note(format!("{spec}: rank {}, cycle length {}, {} vertices", q.rank(), q.cycle_length(), q.vertices().len()));
            r
        }
        TubeTask::Dot => {
            let mut r = Report::new(text, &[]);
            r.body = Some(tube_dot(q));
            r
        }
        TubeTask::Hom(s, t) => {
            let mut r = Report::new(text, &["source", "target", "hom_dimension", "basis"]);
            let basis: Vec<String> = q.normal_paths(*s, *t)?.iter().map(|p| p.to_string()).collect();
            let d = q.hom_dimension(*s, *t)?;
            r.require(d == basis.len());
            r.row([s.to_string(), t.to_string(), d.to_string(), if basis.is_empty() { "-".into() } else { basis.join("; ") }]);
            r
        }
        TubeTask::Normalize(p) => {
            let mut r = Report::new(text, &["path", "normal_form", "end"]);
            let nf = q.normalize(p)?;
            let confluent = q.all_normal_forms(p)?.len() == 1;
            r.require(confluent);
            let end = match &nf {
                NormalPath::Zero => "-".to_string(),
                NormalPath::Path(_) => p.end(q).to_string(),
            };
            r.row([p.to_string(), nf.to_string(), end]);
            r.note(format!("every rewrite order gives the same normal form: {confluent}"));
            r
        }
    };
    Ok(r)
}

fn realize<F: Field>(f: F, text: &str, t: &TowerArgs, spec: &TubeSpec, q: &TranslationQuiver) -> anyhow::Result<Report> {
    let tower = Tower::new(t.horizon, t.height, f)?;
    let realized = RealizedTube::build(&tower, q)?;
    let rep = realized.verify()?;
    let mut r = Report::new(text, &["check", "id", "result"]);
    for sq in &rep.squares {
        r.require(sq.passes());
        r.row(["square".to_string(), sq.id.clone(), format!("pullback={} pushout={}", sq.pullback, sq.pushout)]);
    }
    for (id, ok) in &rep.embeddings {
        r.require(*ok);
        r.row(["injective".to_string(), id.clone(), ok.to_string()]);
    }
    for (id, ok) in &rep.cokernels {
        r.require(*ok);
        r.row(["cokernel".to_string(), id.clone(), ok.to_string()]);
    }
    let b = realized.verify_bimodule_idempotents()?;
    r.require(b.matches());
    r.row(["bimodule".to_string(), format!("stage {}", b.stage), format!("expected={:?} found={:?} unmatched={}", b.expected, b.found, b.unmatched)]);
    r.note(format!("{spec} in R_{} over k[x]/(x^{})", t.height, t.horizon));
    r.note(rep.alpha_choice);
    Ok(r)
}

fn probe_kronecker<F: Field>(f: F, text: &str, budget: usize, max_dim: usize) -> anyhow::Result<Report> {
    let kr = kronecker_algebra(f)?;
    let universe = kronecker_preprojectives(&kr, (max_dim - 1) / 2)?;
    let chain = kronecker_chain(&kr, budget + 1)?;
    let b = kr.elem("b").ok_or_else(|| anyhow::anyhow!("Kronecker algebra lacks b"))?;
    let psi = PpFormula::divisibility(kr.clone(), Side::Right, &b);
    let rep = interval_probe(&psi, &chain[0], &universe, budget, ProbeLimits::default())?;
    let mut r = Report::new(text, &["step", "separator", "upper_dim", "lower_dim"]);
    for (i, s) in rep.steps.iter().enumerate() {
        r.row([i.to_string(), universe[s.separator].0.clone(), s.upper_dim.to_string(), s.lower_dim.to_string()]);
    }
    r.note(format!("verdict: {}", rep.verdict));
    r.note(format!("budget {budget}, universe Pre(1) .. Pre({})", 2 * ((max_dim - 1) / 2) + 1));
    Ok(r)
}

fn probe_mu<F: Field>(f: F, text: &str, t: &TowerArgs, q: &TranslationQuiver, max_stage: usize, budget: usize, dim_cap: usize) -> anyhow::Result<Report> {
    let tower = Tower::new(t.horizon, t.height, f)?;
    let universe: Vec<(String, Module<F>)> =
        tower.labels(t.height, dim_cap)?.iter().map(|l| Ok((l.to_string(), tower.build_label(l)?))).collect::<anyhow::Result<_>>()?;
    let realized = RealizedTube::build(&tower, q)?;
    let mut r = Report::new(text, &["arrow", "verdict", "chain_length"]);
    for (a, rep) in realized.mu_probes(max_stage, &universe, budget, ProbeLimits::default())? {
        r.row([a.to_string(), rep.verdict.to_string(), rep.chain_length().to_string()]);
    }
    r.note(format!("budget {budget}, universe of {} labelled modules of dimension <= {dim_cap}", universe.len()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs() {
        assert_eq!("7".parse::<FieldSpec>(), Ok(FieldSpec::Prime(7)));
        assert_eq!("rational".parse::<FieldSpec>(), Ok(FieldSpec::Rational));
        assert!("4".parse::<FieldSpec>().is_err());
        assert!("x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn tube_specs() {
        let s = TubeSpec::parse(&["m=2".into(), "n=[1,0]".into(), "horizon=6".into()]).unwrap();
        assert_eq!(s, TubeSpec { rank: 2, rays: vec![1, 0], horizon: 6 });
        assert_eq!(s.to_string(), "m=2 n=[1,0] horizon=6");
        let t = TubeSpec::parse(&["n=1,0".into(), "J=3".into()]).unwrap();
        assert_eq!(t.rank, 2);
        match TubeSpec::parse(&["n=[1,x]".into(), "J=3".into()]) {
            Err(ExecError::Literal { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        assert!(TubeSpec::parse(&["m=3".into(), "n=[1,0]".into(), "J=3".into()]).is_err());
        assert!(TubeSpec::parse(&["m=1".into()]).is_err());
    }

    #[test]
    fn arrows_and_paths() {
        let q = TranslationQuiver::new(1, &[0], 3).unwrap();
        assert_eq!(parse_arrow("mu_0^0[1]"), Some(Arrow::Mu { i: 0, k: 0, j: 1 }));
        assert_eq!(parse_arrow("lambda_0^0[2]"), Some(Arrow::Lambda { i: 0, k: 0, j: 2 }));
        assert_eq!(parse_arrow("nu_0^0[2]"), None);
        let p = parse_path(&q, "mu_0^0[1] lambda_0^0[2]").unwrap();
        assert_eq!(p.len(), 2);
        match parse_path(&q, "mu_0^0[1] bogus") {
            Err(ExecError::Literal { offset, .. }) => assert_eq!(offset, 11),
            other => panic!("{:?}", other.map(|p| p.to_string())),
        }
    }

    #[test]
    fn dot_lists_every_arrow() {
        let q = TranslationQuiver::new(2, &[1, 0], 3).unwrap();
        let dot = tube_dot(&q);
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        let arrows = q.arrows().into_iter().filter(|a| q.target(*a).is_some()).count();
        assert_eq!(edges, arrows);
        assert!(dot.starts_with("digraph tube {") && dot.trim_end().ends_with('}'));
    }

    #[test]
    fn module_literals() {
        let f = PrimeField::gf2();
        let dvr = parse_algebra(f, "dvr:3").unwrap();
        assert_eq!(parse_module(&dvr, "U3+U1").unwrap().dim(), 4);
        match parse_module(&dvr, "U3 + V1") {
            Err(ExecError::Literal { offset, .. }) => assert_eq!(offset, 6),
            _ => panic!("expected a literal error"),
        }
        let kr = parse_algebra(f, "kronecker").unwrap();
        assert_eq!(parse_module(&kr, "Pre(3)+R").unwrap().dim(), 3 + 4);
        let tw = parse_algebra(f, "tower:3:1").unwrap();
        assert_eq!(parse_module(&tw, "F0^0 F1^1 Ind(2)").unwrap().dim(), 3);
        assert!(parse_module(&tw, "F0^0 F1^0 Ind(2)").is_err());
        assert!(parse_algebra(f, "dvr:x").is_err());
    }
}
