//! Randomized copy counting by stage-wise embedding.
//!
//! One trial walks the stages of a [`Plan`]. At each stage it counts the
//! placements `X_i` of the part consistent with the embedding so far and
//! picks one uniformly; if some `X_i` is zero the trial returns zero. The
//! product `X = X_1 X_2 ...` divided by the automorphism count of the
//! template has expectation equal to the number of copies, because every
//! embedding is reached with probability exactly `1 / X`.

mod automorphism;
mod plan;
mod report;
mod stage;

use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use automorphism::automorphism_count;
pub use plan::{Plan, PlanGroup, PlanStage, AUT_BUDGET};
pub use report::{critical_ratio_empirical, EstimateReport, ReportRow};
pub use stage::{Group, StageProblem, MAX_STAGE_STATES};

use plan::Embedding;

/// Trials run before the main phase in adaptive mode.
pub const PILOT_TRIALS: u64 = 1000;

/// Mixed into the master seed so that trial streams never coincide with the
/// stream used by [`crate::generators::random_gnp`] for the same seed.
const TRIAL_DOMAIN: u64 = 0x6f62_645f_7472_6961;

/// How many trials to run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    /// Exactly this many trials; the estimate is their mean.
    Fixed { trials: u64 },
    /// A pilot run estimates the critical ratio `r`; then
    /// `24 * ceil(ln(1 / delta))` batches of `ceil(4 r / epsilon^2)` trials
    /// are run and the estimate is the median of the batch means. Fails if
    /// more than `max_trials` trials would be needed.
    Adaptive { epsilon: f64, delta: f64, max_trials: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateConfig {
    pub mode: Mode,
    pub seed: u64,
    /// Worker threads; 0 uses the default pool size. Results do not depend
    /// on this value.
    pub workers: usize,
}

/// The random stream of trial `t` under master seed `seed`.
fn trial_rng(seed: u64, t: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(TRIAL_DOMAIN));
    rng.set_stream(t);
    rng
}

/// Runs one trial and returns `X`, the product of the stage counts (zero if
/// some stage has no placement).
pub fn trial_product<R: Rng + ?Sized>(plan: &Plan, g: &Graph, rng: &mut R) -> Result<BigUint> {
    plan.check_base(g)?;
    let mut emb = Embedding::new(plan.template().vertex_count(), g);
    let mut small: u128 = 1;
    let mut big: Option<BigUint> = None;
    for stage in plan.stages() {
        let problem = emb.problem(stage)?;
        let x = problem.count();
        if x == 0 {
            return Ok(BigUint::zero());
        }
        let placement = problem.unrank(rng.gen_range(0..x))?;
        emb.apply(&placement);
        match small.checked_mul(x) {
            Some(p) if big.is_none() => small = p,
            _ => big = Some(big.unwrap_or_else(|| BigUint::from(small)) * x),
        }
    }
    debug_assert!(emb.preserves_edges(plan.template()));
    Ok(big.unwrap_or_else(|| BigUint::from(small)))
}

/// One sample `Z = X / aut(H)`.
pub fn embeddings_once<R: Rng + ?Sized>(plan: &Plan, g: &Graph, rng: &mut R) -> Result<BigRational> {
    let x = trial_product(plan, g, rng)?;
    Ok(BigRational::new(x.into(), plan.aut().clone().into()))
}

/// `E[Z]` computed exactly by following every random choice of a trial,
/// each path weighted by the product of `1 / X_i` along it. Exponential in
/// general; meant for bases of a handful of vertices.
pub fn exact_expectation(plan: &Plan, g: &Graph) -> Result<BigRational> {
    fn walk(
        plan: &Plan,
        emb: &mut Embedding<'_>,
        i: usize,
        weight: BigRational,
        product: BigUint,
    ) -> Result<BigRational> {
        let Some(stage) = plan.stages().get(i) else {
            return Ok(weight * BigRational::from_integer(product.into()));
        };
        let problem = emb.problem(stage)?;
        let x = problem.count();
        let mut total = BigRational::zero();
        if x == 0 {
            return Ok(total);
        }
        let step = &weight / BigRational::from_integer(x.into());
        let product = product * x;
        for r in 0..x {
            let placement = problem.unrank(r)?;
            emb.apply(&placement);
            let sub = walk(plan, emb, i + 1, step.clone(), product.clone());
            emb.undo(&placement);
            total += sub?;
        }
        Ok(total)
    }
    plan.check_base(g)?;
    let mut emb = Embedding::new(plan.template().vertex_count(), g);
    let expected_x = walk(plan, &mut emb, 0, BigRational::one(), BigUint::one())?;
    Ok(expected_x / BigRational::from_integer(plan.aut().clone().into()))
}

fn run_trials(plan: &Plan, g: &Graph, seed: u64, range: std::ops::Range<u64>, workers: usize) -> Result<Vec<BigUint>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Logic(format!("cannot start worker pool: {e}")))?;
    pool.install(|| range.into_par_iter().map(|t| trial_product(plan, g, &mut trial_rng(seed, t))).collect())
}

/// Runs the estimator. Trial `t` draws from its own stream derived from
/// `(seed, t)`, and outputs are kept in trial order, so the report is a
/// function of the inputs and the seed only.
pub fn estimate(plan: &Plan, g: &Graph, config: &EstimateConfig) -> Result<EstimateReport> {
    plan.check_base(g)?;
    let started = Instant::now();
    let seed = config.seed;
    let report = match config.mode {
        Mode::Fixed { trials } => {
            if trials == 0 {
                return Err(Error::Parameter("at least one trial is required".into()));
            }
            let products = run_trials(plan, g, seed, 0..trials, config.workers)?;
            EstimateReport::new(plan.aut().clone(), products, seed, None, None)
        }
        Mode::Adaptive { epsilon, delta, max_trials } => {
            if !(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0) {
                return Err(Error::Parameter("epsilon and delta must lie in (0, 1)".into()));
            }
            let mut products = run_trials(plan, g, seed, 0..PILOT_TRIALS, config.workers)?;
            if products.iter().all(Zero::is_zero) {
                return Err(Error::PilotFailure { trials: PILOT_TRIALS });
            }
            let pilot = EstimateReport::new(plan.aut().clone(), products.clone(), seed, None, None);
            let ratio = report::to_f64(&critical_ratio_empirical(&pilot)?);
            let per_batch = (4.0 * ratio / (epsilon * epsilon)).ceil().max(1.0) as u64;
            let batches = 24 * (1.0 / delta).ln().ceil().max(1.0) as u64;
            let needed = PILOT_TRIALS.saturating_add(per_batch.saturating_mul(batches));
            if needed > max_trials {
                return Err(Error::Parameter(format!(
                    "adaptive mode needs {needed} trials (critical ratio about {ratio:.3}), above the cap of {max_trials}"
                )));
            }
            let main = run_trials(plan, g, seed, PILOT_TRIALS..needed, config.workers)?;
            let batch_sums: Vec<BigUint> = main.chunks(per_batch as usize).map(|c| c.iter().sum()).collect();
            products.extend(main);
            let denom = BigUint::from(per_batch) * plan.aut();
            let mut means: Vec<BigRational> =
                batch_sums.into_iter().map(|s| BigRational::new(s.into(), denom.clone().into())).collect();
            means.sort();
            let median = means[(means.len() - 1) / 2].clone();
            EstimateReport::new(plan.aut().clone(), products, seed, Some((epsilon, delta)), Some((means, median)))
        }
    };
    Ok(report.with_elapsed(started.elapsed()))
}

/// `n! p^e / aut`: the expected number of copies of a template with `e`
/// edges and `aut` automorphisms, padded to `n` vertices, in `G(n, p)`.
pub fn expected_count_formula(n: usize, p: &BigRational, e: usize, aut: &BigUint) -> Result<BigRational> {
    if *p < BigRational::zero() || *p > BigRational::one() {
        return Err(Error::Parameter(format!("edge probability {p} outside [0, 1]")));
    }
    if aut.is_zero() {
        return Err(Error::Parameter("automorphism count must be positive".into()));
    }
    let factorial: BigUint = (2..=n).fold(BigUint::one(), |acc, x| acc * x);
    let pe = (0..e).fold(BigRational::one(), |acc, _| acc * p);
    Ok(BigRational::from_integer(factorial.into()) * pe / BigRational::from_integer(aut.clone().into()))
}

/// Runs [`estimate`] for a template consisting of a decomposed part plus
/// `triangles` disjoint triangles appended after its vertices.
pub fn estimate_with_triangles(
    core: &Graph,
    d: &crate::decomposition::Decomposition,
    triangles: usize,
    g: &Graph,
    config: &EstimateConfig,
) -> Result<EstimateReport> {
    let offset = core.vertex_count();
    let h = core.disjoint_union(&crate::generators::disjoint_triangles(triangles));
    let list: Vec<[usize; 3]> =
        (0..triangles).map(|i| [offset + 3 * i, offset + 3 * i + 1, offset + 3 * i + 2]).collect();
    estimate(&Plan::new(&h, d, &list)?, g, config)
}
