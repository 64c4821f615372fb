//! Repeated-trial experiments: draw many seeded samples, estimate, and
//! summarize the spread of the estimates as percentile bands.
//!
//! Trial `t` uses seed `base_seed + t`. Trials run in parallel but results are
//! always ordered by trial index, so a plan and its seed fully determine the
//! output.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimator::{count_unique, AuxMode, EstimateOutcome, RatioEstimate};
use crate::graph::{largest_connected_component, load_edge_list, Graph, LoadOptions};
use crate::node::{capture_recapture_from_sample, mle_unique_approx, mle_unique_exact, node_uis, node_wis, MleSolverConfig};
use crate::sample::{sample_rw_multi, sample_uis, sample_wis, Method, Sample, WeightRule};
use crate::star::{star_estimate_variant, StarVariant};
use crate::walk::{estimate_margin, estimate_thinned, BaseEstimator, MarginBase, MarginConfig, ThinningConfig};
use crate::{generate, induced};

/// Estimator selected by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorKind {
    NodeUis,
    NodeWis,
    Capture,
    MleApprox,
    MleExact,
    IndA,
    IndB,
    /// Experimental.
    Star,
}

impl EstimatorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EstimatorKind::NodeUis => "node-uis",
            EstimatorKind::NodeWis => "node-wis",
            EstimatorKind::Capture => "capture",
            EstimatorKind::MleApprox => "mle-approx",
            EstimatorKind::MleExact => "mle-exact",
            EstimatorKind::IndA => "ind-a",
            EstimatorKind::IndB => "ind-b",
            EstimatorKind::Star => "star",
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "node-uis" => EstimatorKind::NodeUis,
            "node-wis" => EstimatorKind::NodeWis,
            "capture" => EstimatorKind::Capture,
            "mle-approx" => EstimatorKind::MleApprox,
            "mle-exact" => EstimatorKind::MleExact,
            "ind-a" => EstimatorKind::IndA,
            "ind-b" => EstimatorKind::IndB,
            "star" => EstimatorKind::Star,
            other => return Err(Error::param(format!("unknown estimator {other:?}"))),
        })
    }
}

/// Dependence correction applied to walk samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Correction {
    #[default]
    None,
    Thin,
    ThinShifted,
    Margin,
    CrossWalker,
}

impl Correction {
    pub fn as_str(self) -> &'static str {
        match self {
            Correction::None => "none",
            Correction::Thin => "thin",
            Correction::ThinShifted => "thin-shifted",
            Correction::Margin => "margin",
            Correction::CrossWalker => "cross-walker",
        }
    }
}

impl fmt::Display for Correction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Correction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "none" => Correction::None,
            "thin" => Correction::Thin,
            "thin-shifted" => Correction::ThinShifted,
            "margin" => Correction::Margin,
            "cross-walker" => Correction::CrossWalker,
            other => return Err(Error::param(format!("unknown correction {other:?}"))),
        })
    }
}

/// Everything needed to turn one sample into one estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateSpec {
    pub estimator: EstimatorKind,
    pub correction: Correction,
    pub a_mode: AuxMode,
    pub theta: usize,
    pub m: usize,
    /// Star variant; follows the sample's method when unset.
    pub star_variant: Option<StarVariant>,
    /// Seed for the random split of capture-recapture.
    pub seed: u64,
    pub mle: MleSolverConfig,
}

impl EstimateSpec {
    pub fn new(estimator: EstimatorKind) -> Self {
        Self {
            estimator,
            correction: Correction::None,
            a_mode: AuxMode::Set,
            theta: 1,
            m: 0,
            star_variant: None,
            seed: 0,
            mle: MleSolverConfig::default(),
        }
    }

    pub fn with_correction(mut self, correction: Correction) -> Self {
        self.correction = correction;
        self
    }

    /// Rejects estimator, correction and sample-method combinations that
    /// have no meaning.
    pub fn check(&self, method: Method) -> Result<()> {
        let bad = |why: String| Err(Error::Incompatible(why));
        use EstimatorKind::*;
        if matches!(self.estimator, NodeUis | Capture | MleApprox | MleExact) && method != Method::Uis {
            return bad(format!("{} needs a uniform (uis) sample, got {method}", self.estimator));
        }
        if self.estimator == Star && self.star_variant == Some(StarVariant::Uis) && method != Method::Uis {
            return bad(format!("star variant uis needs a uniform sample, got {method}"));
        }
        match self.correction {
            Correction::None => Ok(()),
            c if !method.is_walk() => bad(format!("correction {c} applies to random-walk samples, got {method}")),
            Correction::Thin | Correction::ThinShifted => {
                if self.theta == 0 {
                    return Err(Error::param("theta must be at least 1"));
                }
                match self.estimator {
                    NodeWis | IndB => Ok(()),
                    e => bad(format!("thinning supports node-wis and ind-b, not {e}")),
                }
            }
            c @ (Correction::Margin | Correction::CrossWalker) => match self.estimator {
                NodeWis | IndB => Ok(()),
                e => bad(format!("{c} supports node-wis and ind-b, not {e}")),
            },
        }
    }
}

/// An estimate, with its ratio form when the estimator has one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub outcome: EstimateOutcome,
    pub ratio: Option<RatioEstimate>,
}

impl From<RatioEstimate> for Evaluation {
    fn from(r: RatioEstimate) -> Self {
        Self { outcome: r.outcome(), ratio: Some(r) }
    }
}

/// Applies `spec` to `s`.
pub fn evaluate(s: &Sample, spec: &EstimateSpec) -> Result<Evaluation> {
    spec.check(s.method())?;
    if s.is_empty() {
        return Err(Error::param("sample is empty"));
    }
    use EstimatorKind::*;
    let ratio = match (spec.correction, spec.estimator) {
        (Correction::Thin | Correction::ThinShifted, e) => {
            let base = if e == NodeWis { BaseEstimator::NodeWis } else { BaseEstimator::IndbAuto(spec.a_mode) };
            let cfg = ThinningConfig::new(spec.theta)?;
            estimate_thinned(s, cfg, base, spec.correction == Correction::ThinShifted)?
        }
        (c @ (Correction::Margin | Correction::CrossWalker), e) => {
            let base = if e == NodeWis { MarginBase::Node } else { MarginBase::Ind(spec.a_mode) };
            let cfg = if c == Correction::Margin { MarginConfig::index_distance(spec.m) } else { MarginConfig::cross_walker() };
            estimate_margin(s, cfg, base)?
        }
        (Correction::None, NodeUis) => node_uis(s),
        (Correction::None, NodeWis) if s.method() == Method::Uis => node_uis(s),
        (Correction::None, NodeWis) => node_wis(s)?,
        (Correction::None, Capture) => capture_recapture_from_sample(s, spec.seed)?.estimate,
        (Correction::None, MleApprox) => {
            let outcome = mle_unique_approx(s.len() as u64, count_unique(s) as u64, &spec.mle)?;
            return Ok(Evaluation { outcome, ratio: None });
        }
        (Correction::None, MleExact) => {
            let outcome = mle_unique_exact(s.len() as u64, count_unique(s) as u64, &spec.mle)?;
            return Ok(Evaluation { outcome, ratio: None });
        }
        (Correction::None, IndA) => induced::inda(s)?,
        (Correction::None, IndB) => induced::indb_auto(s, spec.a_mode)?,
        (Correction::None, Star) => {
            let variant = spec
                .star_variant
                .unwrap_or(if s.method() == Method::Uis { StarVariant::Uis } else { StarVariant::Wis });
            star_estimate_variant(s, variant)?
        }
    };
    Ok(ratio.into())
}

/// Graph to run on: a file or a seeded generator.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    File(PathBuf),
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    BarabasiAlbert { n: usize, m: usize, seed: u64 },
    RingOfCliques { count: usize, size: usize },
    Grid { rows: usize, cols: usize },
    Star { leaves: usize },
    Complete { n: usize },
}

impl FromStr for GraphSpec {
    type Err = Error;

    /// `file:PATH`, `er:N:P:SEED`, `ba:N:M:SEED`, `ring:COUNT:SIZE`,
    /// `grid:ROWS:COLS`, `star:LEAVES` or `complete:N`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| Error::param(format!("graph spec {s:?} lacks a kind")))?;
        if kind == "file" {
            return Ok(GraphSpec::File(PathBuf::from(rest)));
        }
        let parts: Vec<&str> = rest.split(':').collect();
        let arity = |k: usize| {
            if parts.len() == k {
                Ok(())
            } else {
                Err(Error::param(format!("graph spec {s:?} needs {k} fields after {kind:?}")))
            }
        };
        fn num<T: FromStr>(spec: &str, raw: &str) -> Result<T> {
            raw.parse().map_err(|_| Error::param(format!("bad number {raw:?} in graph spec {spec:?}")))
        }
        Ok(match kind {
            "er" => {
                arity(3)?;
                GraphSpec::ErdosRenyi { n: num(s, parts[0])?, p: num(s, parts[1])?, seed: num(s, parts[2])? }
            }
            "ba" => {
                arity(3)?;
                GraphSpec::BarabasiAlbert { n: num(s, parts[0])?, m: num(s, parts[1])?, seed: num(s, parts[2])? }
            }
            "ring" => {
                arity(2)?;
                GraphSpec::RingOfCliques { count: num(s, parts[0])?, size: num(s, parts[1])? }
            }
            "grid" => {
                arity(2)?;
                GraphSpec::Grid { rows: num(s, parts[0])?, cols: num(s, parts[1])? }
            }
            "star" => {
                arity(1)?;
                GraphSpec::Star { leaves: num(s, parts[0])? }
            }
            "complete" => {
                arity(1)?;
                GraphSpec::Complete { n: num(s, parts[0])? }
            }
            other => return Err(Error::param(format!("unknown graph kind {other:?}"))),
        })
    }
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::File(path) => {
                let (g, _) = load_edge_list(BufReader::new(File::open(path)?), &LoadOptions::default())?;
                Ok(g)
            }
            GraphSpec::ErdosRenyi { n, p, seed } => generate::erdos_renyi(*n, *p, *seed),
            GraphSpec::BarabasiAlbert { n, m, seed } => generate::barabasi_albert(*n, *m, *seed),
            GraphSpec::RingOfCliques { count, size } => generate::ring_of_cliques(*count, *size),
            GraphSpec::Grid { rows, cols } => generate::grid(*rows, *cols),
            GraphSpec::Star { leaves } => generate::star(*leaves),
            GraphSpec::Complete { n } => generate::complete(*n),
        }
    }
}

/// How samples are drawn.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerSpec {
    pub method: Method,
    /// Weight rule for weighted draws; walks always carry degrees.
    pub weight: WeightRule,
    /// Number of walkers for multi-walker samples.
    pub walkers: usize,
}

impl SamplerSpec {
    pub fn uniform() -> Self {
        Self { method: Method::Uis, weight: WeightRule::Unit, walkers: 1 }
    }

    pub fn weighted(weight: WeightRule) -> Self {
        Self { method: Method::Wis, weight, walkers: 1 }
    }

    pub fn walk() -> Self {
        Self { method: Method::Rw, weight: WeightRule::Degree, walkers: 1 }
    }

    pub fn walkers(k: usize) -> Self {
        Self { method: Method::RwMulti, weight: WeightRule::Degree, walkers: k }
    }

    /// Draws `n` records. Multi-walker samples split `n` evenly.
    pub fn draw(&self, g: &Graph, n: usize, seed: u64) -> Result<Sample> {
        match self.method {
            Method::Uis => sample_uis(g, n, seed),
            Method::Wis => sample_wis(g, &self.weight, n, seed),
            Method::Rw => crate::sample::sample_rw(g, n, seed, None),
            Method::RwMulti => {
                let k = self.walkers;
                if k == 0 || !n.is_multiple_of(k) {
                    return Err(Error::param(format!("sample size {n} does not split over {k} walkers")));
                }
                sample_rw_multi(g, k, n / k, &walker_seeds(seed, k))
            }
        }
    }
}

/// Per-walker seeds derived from one trial seed.
pub fn walker_seeds(seed: u64, walkers: usize) -> Vec<u64> {
    (0..walkers as u64).map(|k| seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k)).collect()
}

/// The parameter varied across grid points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sweep {
    SampleSize(Vec<usize>),
    Theta(Vec<usize>),
    Margin(Vec<usize>),
}

impl Sweep {
    pub fn name(&self) -> &'static str {
        match self {
            Sweep::SampleSize(_) => "n",
            Sweep::Theta(_) => "theta",
            Sweep::Margin(_) => "m",
        }
    }

    pub fn values(&self) -> &[usize] {
        match self {
            Sweep::SampleSize(v) | Sweep::Theta(v) | Sweep::Margin(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub graph: GraphSpec,
    /// Restrict the graph to its largest connected component first.
    pub lcc: bool,
    pub sampler: SamplerSpec,
    pub estimate: EstimateSpec,
    /// Sample size for theta and margin sweeps.
    pub n: usize,
    pub sweep: Sweep,
    pub trials: usize,
    pub base_seed: u64,
    /// Report `N^/N` instead of `N^`.
    pub relative: bool,
}

impl ExperimentPlan {
    pub fn new(graph: GraphSpec, sampler: SamplerSpec, estimate: EstimateSpec, sweep: Sweep) -> Self {
        Self { graph, lcc: false, sampler, estimate, n: 0, sweep, trials: 500, base_seed: 0, relative: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        if self.sweep.values().is_empty() {
            return Err(Error::param("parameter grid is empty"));
        }
        let mut spec = self.estimate;
        match self.sweep {
            Sweep::SampleSize(ref v) => {
                if v.contains(&0) {
                    return Err(Error::param("sample sizes must be positive"));
                }
            }
            Sweep::Theta(ref v) => {
                if !matches!(spec.correction, Correction::Thin | Correction::ThinShifted) {
                    return Err(Error::Incompatible("a theta sweep needs correction thin or thin-shifted".into()));
                }
                spec.theta = v.iter().copied().min().unwrap_or(1);
            }
            Sweep::Margin(_) => {
                if spec.correction != Correction::Margin {
                    return Err(Error::Incompatible("an m sweep needs correction margin".into()));
                }
            }
        }
        if !matches!(self.sweep, Sweep::SampleSize(_)) && self.n == 0 {
            return Err(Error::param("theta and m sweeps need a sample size n"));
        }
        spec.check(self.sampler.method)
    }

    /// Parses the key-value plan format: one `key = value` per line, `#`
    /// starts a comment. Keys: `graph`, `lcc`, `method`, `weight`, `walkers`,
    /// `estimator`, `correction`, `a_mode`, `star_variant`, `theta`, `m`, `n`,
    /// `sweep` (`n`, `theta` or `m`), `values`, `trials`, `base_seed`,
    /// `relative`.
    pub fn parse<R: BufRead>(source: R) -> Result<Self> {
        let mut graph = None;
        let mut sampler = SamplerSpec::uniform();
        let mut estimator = None;
        let mut spec_fields: Vec<(String, String, usize)> = Vec::new();
        let mut sweep_kind = None;
        let mut values = None;
        let mut plan_n = 0;
        let mut trials = 500;
        let mut base_seed = 0;
        let mut lcc = false;
        let mut relative = true;
        let mut weight_set = false;
        for (i, line) in source.lines().enumerate() {
            let lineno = i + 1;
            let line = line?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (k, v) = body
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Parse { line: lineno, message: format!("expected key = value, got {body:?}") })?;
            let at = |e: Error| match e {
                Error::InvalidParameter(m) => Error::InvalidParameter(format!("plan line {lineno}: {m}")),
                other => other,
            };
            fn int<T: FromStr>(k: &str, v: &str) -> Result<T> {
                v.parse().map_err(|_| Error::param(format!("{k} expects a non-negative integer, got {v:?}")))
            }
            fn flag(k: &str, v: &str) -> Result<bool> {
                v.parse().map_err(|_| Error::param(format!("{k} expects true or false, got {v:?}")))
            }
            match k {
                "graph" => graph = Some(v.parse().map_err(at)?),
                "lcc" => lcc = flag(k, v).map_err(at)?,
                "relative" => relative = flag(k, v).map_err(at)?,
                "method" => sampler.method = v.parse().map_err(at)?,
                "weight" => {
                    weight_set = true;
                    sampler.weight = match v {
                        "unit" => WeightRule::Unit,
                        "degree" => WeightRule::Degree,
                        other => return Err(at(Error::param(format!("unknown weight rule {other:?}")))),
                    }
                }
                "walkers" => sampler.walkers = int(k, v).map_err(at)?,
                "estimator" => estimator = Some(v.parse::<EstimatorKind>().map_err(at)?),
                "correction" | "a_mode" | "star_variant" | "theta" | "m" => {
                    spec_fields.push((k.to_string(), v.to_string(), lineno))
                }
                "n" => plan_n = int(k, v).map_err(at)?,
                "sweep" => sweep_kind = Some(v.to_string()),
                "values" => {
                    let parsed: Result<Vec<usize>> = v.split(',').map(|x| int(k, x.trim())).collect();
                    values = Some(parsed.map_err(at)?);
                }
                "trials" => trials = int(k, v).map_err(at)?,
                "base_seed" => base_seed = int(k, v).map_err(at)?,
                other => return Err(Error::param(format!("plan line {lineno}: unknown key {other:?}"))),
            }
        }
        if sampler.method == Method::Wis && !weight_set {
            sampler.weight = WeightRule::Degree;
        }
        if sampler.method.is_walk() {
            sampler.weight = WeightRule::Degree;
        }
        let mut spec = EstimateSpec::new(estimator.ok_or_else(|| Error::param("plan lacks estimator"))?);
        for (k, v, lineno) in spec_fields {
            let wrap = |e: Error| Error::param(format!("plan line {lineno}: {e}"));
            match k.as_str() {
                "correction" => spec.correction = v.parse().map_err(wrap)?,
                "a_mode" => spec.a_mode = v.parse().map_err(wrap)?,
                "star_variant" => spec.star_variant = Some(v.parse().map_err(wrap)?),
                "theta" => spec.theta = v.parse().map_err(|_| wrap(Error::param(format!("bad theta {v:?}"))))?,
                _ => spec.m = v.parse().map_err(|_| wrap(Error::param(format!("bad m {v:?}"))))?,
            }
        }
        let values = values.ok_or_else(|| Error::param("plan lacks values"))?;
        let sweep = match sweep_kind.as_deref().unwrap_or("n") {
            "n" => Sweep::SampleSize(values),
            "theta" => Sweep::Theta(values),
            "m" => Sweep::Margin(values),
            other => return Err(Error::param(format!("unknown sweep {other:?}"))),
        };
        let plan = ExperimentPlan {
            graph: graph.ok_or_else(|| Error::param("plan lacks graph"))?,
            lcc,
            sampler,
            estimate: spec,
            n: plan_n,
            sweep,
            trials,
            base_seed,
            relative,
        };
        plan.validate()?;
        Ok(plan)
    }
}

/// All trial outcomes for one grid point, in trial order.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub param: usize,
    pub outcomes: Vec<EstimateOutcome>,
}

/// Runs every trial of `plan` on `g` (the plan's graph spec is not used).
pub fn run_trials(plan: &ExperimentPlan, g: &Graph) -> Result<Vec<GridPoint>> {
    plan.validate()?;
    let grid = plan.sweep.values();
    let trial_seed = |t: usize| plan.base_seed.wrapping_add(t as u64);
    let per_trial: Vec<Vec<EstimateOutcome>> = (0..plan.trials)
        .into_par_iter()
        .map(|t| -> Result<Vec<EstimateOutcome>> {
            let seed = trial_seed(t);
            let mut spec = plan.estimate;
            spec.seed = seed;
            match &plan.sweep {
                Sweep::SampleSize(sizes) => sizes
                    .iter()
                    .map(|&n| Ok(evaluate(&plan.sampler.draw(g, n, seed)?, &spec)?.outcome))
                    .collect(),
                Sweep::Theta(thetas) => {
                    let s = plan.sampler.draw(g, plan.n, seed)?;
                    thetas
                        .iter()
                        .map(|&theta| Ok(evaluate(&s, &EstimateSpec { theta, ..spec })?.outcome))
                        .collect()
                }
                Sweep::Margin(margins) => {
                    let s = plan.sampler.draw(g, plan.n, seed)?;
                    margins.iter().map(|&m| Ok(evaluate(&s, &EstimateSpec { m, ..spec })?.outcome)).collect()
                }
            }
        })
        .collect::<Result<_>>()?;
    Ok(grid
        .iter()
        .enumerate()
        .map(|(i, &param)| GridPoint { param, outcomes: per_trial.iter().map(|row| row[i]).collect() })
        .collect())
}

/// Band summary of one grid point. Percentiles cover the finite estimates
/// only; they are absent when every trial had no collisions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSummary {
    pub param: usize,
    pub p10: Option<f64>,
    pub p50: Option<f64>,
    pub p90: Option<f64>,
    pub infinite_fraction: f64,
    pub trials: usize,
}

/// Nearest-rank percentile: the element at index `ceil(q * len) - 1` of the
/// sorted values, clamped to the valid range.
pub fn percentile(values: &[f64], q: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::param("percentile of an empty list"));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::param(format!("percentile level {q} outside [0, 1]")));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = (q * sorted.len() as f64).ceil() as usize;
    Ok(sorted[rank.saturating_sub(1).min(sorted.len() - 1)])
}

/// Summarizes one grid point, dividing every estimate by `scale`.
pub fn summarize(point: &GridPoint, scale: f64) -> TrialSummary {
    let finite: Vec<f64> = point.outcomes.iter().filter_map(|o| o.value()).map(|v| v / scale).collect();
    let trials = point.outcomes.len();
    let pct = |q| percentile(&finite, q).ok();
    TrialSummary {
        param: point.param,
        p10: pct(0.1),
        p50: pct(0.5),
        p90: pct(0.9),
        infinite_fraction: if trials == 0 { 0.0 } else { (trials - finite.len()) as f64 / trials as f64 },
        trials,
    }
}

/// Builds the plan's graph and runs it. Estimates are divided by the node
/// count when `plan.relative` is set.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<Vec<TrialSummary>> {
    plan.validate()?;
    let mut g = plan.graph.build()?;
    if plan.lcc {
        g = largest_connected_component(&g);
    }
    let scale = if plan.relative { g.node_count() as f64 } else { 1.0 };
    Ok(run_trials(plan, &g)?.iter().map(|p| summarize(p, scale)).collect())
}
