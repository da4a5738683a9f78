//! Deterministic, parallel Monte Carlo estimation of H-visibility
//! probabilities.
//!
//! Trials are independent by construction: trial `t` of a run draws from a
//! dedicated stream keyed by `(seed, t)` (see [`rng`]). The trial space is
//! split into contiguous blocks, one per worker, and block counts are
//! reduced in block order, so the success count is identical for any
//! worker count.

pub mod rng;
pub mod wilson;

use crate::error::{Error, Result};
use crate::euler::{zeta_h_inverse, CertifiedProduct};
use crate::graph::Graph;
use crate::lattice::{slice_visible, LatticeConfig, LatticePoint, MAX_BOX_SIDE};
use rand_chacha::ChaCha8Rng;
use rng::{trial_rng, uniform_1_to_n};
use serde::Serialize;
use wilson::{wilson_interval, z_for_confidence};

/// Default confidence level for intervals.
pub const DEFAULT_CONFIDENCE: f64 = 0.95;

/// Target tail used when a sweep attaches an analytic limit.
pub const SWEEP_LIMIT_TAIL: f64 = 1e-10;

/// A Monte Carlo estimate with its Wilson interval.
#[derive(Debug, Clone, Serialize)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    /// `successes / trials`.
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl Estimate {
    fn from_counts(successes: u64, trials: u64, seed: u64, z: f64) -> Estimate {
        let (ci_low, ci_high) = wilson_interval(successes, trials, z);
        Estimate {
            successes,
            trials,
            point: successes as f64 / trials as f64,
            ci_low,
            ci_high,
            seed,
        }
    }
}

/// Conditional estimate: the conditioning rate and the conditional rate
/// among conditioned trials (whose count is the effective sample size).
#[derive(Debug, Clone, Serialize)]
pub struct ConditionalEstimate {
    /// How often the conditioning subgraph was visible, over all trials.
    pub subgraph: Estimate,
    /// Ratio estimate: full-graph successes over subgraph successes, with
    /// a Wilson interval on the conditioned counts.
    pub conditional: Estimate,
}

/// One row of a convergence sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: u64,
    pub estimate: Estimate,
    pub limit: CertifiedProduct,
    /// `|estimate.point - limit.value|`.
    pub deviation: f64,
}

fn validate_box(n: u64, s: u32, k: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::invalid("box side n must be >= 1"));
    }
    if n > MAX_BOX_SIDE {
        return Err(Error::invalid(format!(
            "box side {} exceeds the coordinate maximum {}",
            n, MAX_BOX_SIDE
        )));
    }
    if s < 2 {
        return Err(Error::invalid(
            "lattice sampling needs integer dimension s >= 2",
        ));
    }
    if k < 1 {
        return Err(Error::invalid("configuration needs k >= 1 points"));
    }
    Ok(())
}

/// Draws `k` points uniformly from `[1, n]^s` on the given trial stream.
/// Point-major, coordinate-minor draw order; repetition possible.
pub fn sample_config(n: u64, s: u32, k: usize, stream: &mut ChaCha8Rng) -> Result<LatticeConfig> {
    validate_box(n, s, k)?;
    let mut points = Vec::with_capacity(k);
    for _ in 0..k {
        let coords: Vec<i64> = (0..s)
            .map(|_| uniform_1_to_n(stream, n) as i64)
            .collect();
        points.push(LatticePoint::new(coords)?);
    }
    LatticeConfig::new(points)
}

/// Flat-buffer variant of [`sample_config`] used by the trial loops.
fn sample_into(buf: &mut [i64], n: u64, stream: &mut ChaCha8Rng) {
    for c in buf.iter_mut() {
        *c = uniform_1_to_n(stream, n) as i64;
    }
}

fn edge_indices(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
        .map(|(u, v)| (u as usize - 1, v as usize - 1))
        .collect()
}

fn config_visible(buf: &[i64], s: usize, edges: &[(usize, usize)]) -> bool {
    edges
        .iter()
        .all(|&(u, v)| slice_visible(&buf[u * s..(u + 1) * s], &buf[v * s..(v + 1) * s]))
}

/// Runs `trials` independent trials split across `workers` contiguous
/// blocks and reduces per-block counts in block order. `count_one` maps a
/// sampled configuration buffer to 0/1 outcomes for each counter.
fn run_trials<F>(
    trials: u64,
    workers: usize,
    seed: u64,
    n: u64,
    k: usize,
    s: u32,
    count_one: F,
) -> Vec<u64>
where
    F: Fn(&[i64]) -> Vec<u64> + Sync,
{
    let workers = workers.max(1).min(trials.max(1) as usize);
    let dims = k * s as usize;
    let block = trials / workers as u64;
    let rem = trials % workers as u64;
    let ranges: Vec<(u64, u64)> = (0..workers as u64)
        .map(|w| {
            let start = w * block + w.min(rem);
            let len = block + if w < rem { 1 } else { 0 };
            (start, start + len)
        })
        .collect();
    let run_block = |(start, end): (u64, u64)| -> Vec<u64> {
        let mut buf = vec![0i64; dims];
        let mut counts: Option<Vec<u64>> = None;
        for t in start..end {
            let mut stream = trial_rng(seed, t);
            sample_into(&mut buf, n, &mut stream);
            let out = count_one(&buf);
            match counts.as_mut() {
                None => counts = Some(out),
                Some(c) => {
                    for (a, b) in c.iter_mut().zip(out) {
                        *a += b;
                    }
                }
            }
        }
        counts.unwrap_or_default()
    };
    let block_counts: Vec<Vec<u64>> = if workers == 1 {
        vec![run_block(ranges[0])]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&r| scope.spawn(move || run_block(r)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };
    // ordered reduction over blocks
    let mut total: Vec<u64> = Vec::new();
    for c in block_counts {
        if total.is_empty() {
            total = c;
        } else {
            for (a, b) in total.iter_mut().zip(c) {
                *a += b;
            }
        }
    }
    total
}

/// Estimates the probability that a random configuration in `[1, n]^s` is
/// H-visible, with a Wilson interval at the default 95% confidence.
pub fn estimate_probability(
    g: &Graph,
    n: u64,
    s: u32,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<Estimate> {
    estimate_probability_with_confidence(g, n, s, trials, seed, workers, DEFAULT_CONFIDENCE)
}

pub fn estimate_probability_with_confidence(
    g: &Graph,
    n: u64,
    s: u32,
    trials: u64,
    seed: u64,
    workers: usize,
    confidence: f64,
) -> Result<Estimate> {
    validate_box(n, s, g.k())?;
    if trials < 1 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    let z = z_for_confidence(confidence)?;
    let edges = edge_indices(g);
    let s_usize = s as usize;
    let counts = run_trials(trials, workers, seed, n, g.k(), s, |buf| {
        vec![config_visible(buf, s_usize, &edges) as u64]
    });
    Ok(Estimate::from_counts(counts[0], trials, seed, z))
}

/// Estimates the conditional probability that a configuration is
/// `g`-visible given that it is `g_sub`-visible, reusing one sample for
/// numerator and denominator. `g_sub` must be a subgraph of `g` on the
/// same labeled vertices.
pub fn estimate_conditional(
    g: &Graph,
    g_sub: &Graph,
    n: u64,
    s: u32,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<ConditionalEstimate> {
    estimate_conditional_with_confidence(g, g_sub, n, s, trials, seed, workers, DEFAULT_CONFIDENCE)
}

#[allow(clippy::too_many_arguments)]
pub fn estimate_conditional_with_confidence(
    g: &Graph,
    g_sub: &Graph,
    n: u64,
    s: u32,
    trials: u64,
    seed: u64,
    workers: usize,
    confidence: f64,
) -> Result<ConditionalEstimate> {
    if !g_sub.is_subgraph_of(g)? {
        return Err(Error::NotASubgraph);
    }
    validate_box(n, s, g.k())?;
    if trials < 1 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    let z = z_for_confidence(confidence)?;
    let sub_edges = edge_indices(g_sub);
    // edges of g not already required by g_sub
    let extra_edges: Vec<(usize, usize)> = edge_indices(g)
        .into_iter()
        .filter(|e| !sub_edges.contains(e))
        .collect();
    let s_usize = s as usize;
    let counts = run_trials(trials, workers, seed, n, g.k(), s, |buf| {
        let sub_ok = config_visible(buf, s_usize, &sub_edges);
        let full_ok = sub_ok && config_visible(buf, s_usize, &extra_edges);
        vec![sub_ok as u64, full_ok as u64]
    });
    let (den, num) = (counts[0], counts[1]);
    if den == 0 {
        return Err(Error::NoConditioningSuccesses { trials });
    }
    Ok(ConditionalEstimate {
        subgraph: Estimate::from_counts(den, trials, seed, z),
        conditional: Estimate::from_counts(num, den, seed, z),
    })
}

/// Runs one estimate per box side in `n_list` (non-empty, ascending) and
/// attaches the analytic limit from the certified Euler product.
pub fn convergence_sweep(
    g: &Graph,
    s: u32,
    n_list: &[u64],
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<SweepRow>> {
    if n_list.is_empty() {
        return Err(Error::invalid("n_list must be non-empty"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("n_list must be strictly ascending"));
    }
    let limit = zeta_h_inverse(g, s as f64, SWEEP_LIMIT_TAIL)?;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let estimate = estimate_probability(g, n, s, trials, seed, workers)?;
        let deviation = (estimate.point - limit.value).abs();
        rows.push(SweepRow {
            n,
            estimate,
            limit: limit.clone(),
            deviation,
        });
    }
    Ok(rows)
}

/// CSV header matching [`SweepRow::csv_row`].
pub fn sweep_csv_header() -> &'static str {
    "n,trials,successes,point,ci_low,ci_high,limit_value,limit_lower,limit_upper,deviation"
}

impl SweepRow {
    /// One CSV row; floats carry 17 significant digits so they round-trip.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            self.n,
            self.estimate.trials,
            self.estimate.successes,
            self.estimate.point,
            self.estimate.ci_low,
            self.estimate.ci_high,
            self.limit.value,
            self.limit.lower,
            self.limit.upper,
            self.deviation
        )
    }
}
