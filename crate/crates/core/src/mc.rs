//! Monte Carlo estimates of trace statistics of complex Wishart matrices
//! `W = XX†/N`, with `X` an `N × M` matrix of standard complex Gaussians,
//! checked against the exact values from [`crate::cumulants`].
//!
//! Sampling is split into a fixed number of chunks, each with its own
//! ChaCha20 stream derived from the seed, so the report does not depend on
//! the number of worker threads.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::BigRat;
use crate::cumulants::{exact_cumulant_value, Ensemble, TraceMonomial};
use crate::sym::IntPartition;
use crate::{Error, Limits, Result};

pub const RNG_ALGORITHM: &str = "ChaCha20 (rand_chacha 0.9), one stream per chunk";
const CHUNKS: u64 = 64;
const JACKKNIFE_BLOCKS: usize = 100;
/// Samples whose Cholesky-based condition estimate exceeds this are dropped.
pub const MAX_CONDITION: f64 = 1e12;

/// A statistic to estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    /// `E tr W`.
    #[serde(rename = "trW")]
    TrW,
    /// `E tr W²`.
    #[serde(rename = "trW2")]
    TrW2,
    /// `E tr W⁻¹`.
    #[serde(rename = "trWinv")]
    TrWinv,
    /// `E tr W⁻²`.
    #[serde(rename = "trWinv2")]
    TrWinv2,
    /// `Var tr W`.
    #[serde(rename = "varTrW")]
    VarTrW,
    /// `Var tr W⁻¹`.
    #[serde(rename = "varTrWinv")]
    VarTrWinv,
}

impl Target {
    pub const ALL: [Target; 6] = [
        Target::TrW,
        Target::TrW2,
        Target::TrWinv,
        Target::TrWinv2,
        Target::VarTrW,
        Target::VarTrWinv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::TrW => "trW",
            Target::TrW2 => "trW2",
            Target::TrWinv => "trWinv",
            Target::TrWinv2 => "trWinv2",
            Target::VarTrW => "varTrW",
            Target::VarTrWinv => "varTrWinv",
        }
    }

    /// The cumulant this target estimates.
    pub fn monomial(self) -> TraceMonomial {
        let (parts, e) = match self {
            Target::TrW => (vec![1], Ensemble::Wishart),
            Target::TrW2 => (vec![2], Ensemble::Wishart),
            Target::TrWinv => (vec![1], Ensemble::Inverse),
            Target::TrWinv2 => (vec![2], Ensemble::Inverse),
            Target::VarTrW => (vec![1, 1], Ensemble::Wishart),
            Target::VarTrWinv => (vec![1, 1], Ensemble::Inverse),
        };
        TraceMonomial {
            powers: IntPartition::from_unsorted(parts),
            ensemble: e,
        }
    }

    fn observable(self) -> usize {
        match self {
            Target::TrW | Target::VarTrW => 0,
            Target::TrW2 => 1,
            Target::TrWinv | Target::VarTrWinv => 2,
            Target::TrWinv2 => 3,
        }
    }

    fn is_variance(self) -> bool {
        matches!(self, Target::VarTrW | Target::VarTrWinv)
    }

    /// The largest inverse power whose moments the target needs.
    fn inverse_power(self) -> usize {
        match self {
            Target::TrWinv => 1,
            Target::TrWinv2 | Target::VarTrWinv => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Target::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidSampler(format!("unknown target {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub samples: usize,
    pub seed: u64,
    pub targets: Vec<Target>,
}

impl SamplerConfig {
    /// Takes `c = M/N` and refuses a non-integer `M`: those parameters can
    /// only be checked through the exact routes.
    pub fn from_c(n: usize, c: &BigRat, samples: usize, seed: u64, targets: Vec<Target>) -> Result<Self> {
        let m = c * BigRat::from_integer(n.into());
        if !m.is_integer() || m < BigRat::from_integer(0.into()) {
            return Err(Error::InvalidSampler(format!(
                "M = cN = {m} is not a nonnegative integer; use the exact cumulant routes for such c"
            )));
        }
        let m = m.to_integer().to_usize().ok_or_else(|| Error::InvalidSampler("M too large".into()))?;
        let cfg = SamplerConfig {
            n,
            m,
            samples,
            seed,
            targets,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn c(&self) -> BigRat {
        BigRat::new(self.m.into(), self.n.into())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSampler("N must be positive".into()));
        }
        if self.m < self.n {
            return Err(Error::InvalidSampler(format!(
                "M = {} < N = {}: W is singular",
                self.m, self.n
            )));
        }
        if self.samples == 0 {
            return Err(Error::InvalidSampler("need at least one sample".into()));
        }
        let k = self.targets.iter().map(|t| t.inverse_power()).max().unwrap_or(0);
        if k > 0 && self.m < self.n + k {
            return Err(Error::InvalidSampler(format!(
                "inverse moments of order {k} need M >= N + {k}, got M = {}",
                self.m
            )));
        }
        Ok(())
    }
}

/// An endless stream of samples of `W` from one ChaCha20 stream.
pub struct WishartSampler {
    n: usize,
    m: usize,
    rng: ChaCha20Rng,
}

impl WishartSampler {
    pub fn new(n: usize, m: usize, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        WishartSampler { n, m, rng }
    }
}

impl Iterator for WishartSampler {
    type Item = DMatrix<Complex64>;

    fn next(&mut self) -> Option<DMatrix<Complex64>> {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        let rng = &mut self.rng;
        let x = DMatrix::from_fn(self.n, self.m, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        });
        let w = (&x * x.adjoint()) / Complex64::from(self.n as f64);
        Some(hermitian_part(w))
    }
}

fn hermitian_part(w: DMatrix<Complex64>) -> DMatrix<Complex64> {
    (&w + w.adjoint()) * Complex64::from(0.5)
}

/// `W` samples from the stream of chunk 0 of `cfg`.
pub fn sample_wishart(cfg: &SamplerConfig) -> impl Iterator<Item = DMatrix<Complex64>> {
    WishartSampler::new(cfg.n, cfg.m, cfg.seed, 0)
}

/// `[tr W, tr W², tr W⁻¹, tr W⁻²]` with `tr = Tr/N`, or `None` when `W` is
/// numerically singular. Inverse traces come from triangular solves
/// against the Cholesky factor `W = LL†`: with `B = L⁻¹`,
/// `W⁻¹ = B†B`, `Tr W⁻¹ = ‖B‖²` and `Tr W⁻² = ‖BB†‖²`.
pub fn observables(w: &DMatrix<Complex64>) -> Option<[f64; 4]> {
    let n = w.nrows();
    let nf = n as f64;
    let tr_w = w.trace().re / nf;
    let tr_w2 = w.iter().map(|z| z.norm_sqr()).sum::<f64>() / nf;
    let chol = w.clone().cholesky()?;
    let l = chol.l();
    let diag: Vec<f64> = (0..n).map(|i| l[(i, i)].re).collect();
    let hi = diag.iter().cloned().fold(f64::MIN, f64::max);
    let lo = diag.iter().cloned().fold(f64::MAX, f64::min);
    if !(lo > 0.0) || (hi / lo).powi(2) > MAX_CONDITION {
        return None;
    }
    let b = l.solve_lower_triangular(&DMatrix::identity(n, n))?;
    let tr_inv = b.iter().map(|z| z.norm_sqr()).sum::<f64>() / nf;
    let bbh = &b * b.adjoint();
    let tr_inv2 = bbh.iter().map(|z| z.norm_sqr()).sum::<f64>() / nf;
    Some([tr_w, tr_w2, tr_inv, tr_inv2])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub target: Target,
    pub value: f64,
    pub stderr: Option<f64>,
    /// The exact value as a rational and as a float.
    pub exact: Option<String>,
    pub exact_f64: Option<f64>,
    /// `|value - exact| / stderr`.
    pub sigmas: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rejections {
    pub count: usize,
    pub rate: f64,
    /// Threshold on the estimated condition number above which a draw is
    /// discarded.
    pub max_condition: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RngInfo {
    pub algorithm: String,
    pub chunks: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub config: SamplerConfig,
    pub rng: RngInfo,
    pub estimates: Vec<Estimate>,
    pub rejections: Rejections,
}

impl McReport {
    /// Whether every estimate with an exact value lies within `k` standard
    /// errors of it.
    pub fn within(&self, k: f64) -> bool {
        self.estimates.iter().all(|e| e.sigmas.is_none_or(|s| s <= k))
    }
}

/// Draws the samples and estimates every target with a jackknife standard
/// error, comparing to the exact value at `(N, c = M/N)`.
pub fn estimate_cumulants(cfg: &SamplerConfig, limits: &Limits) -> Result<McReport> {
    cfg.validate()?;
    let chunks: Vec<(u64, usize)> = (0..CHUNKS)
        .map(|k| {
            let base = cfg.samples / CHUNKS as usize;
            let extra = usize::from((k as usize) < cfg.samples % CHUNKS as usize);
            (k, base + extra)
        })
        .filter(|&(_, len)| len > 0)
        .collect();
    let per_chunk: Vec<(Vec<[f64; 4]>, usize)> = chunks
        .par_iter()
        .map(|&(k, len)| {
            let mut kept = Vec::with_capacity(len);
            let mut rejected = 0;
            for w in WishartSampler::new(cfg.n, cfg.m, cfg.seed, k).take(len) {
                match observables(&w) {
                    Some(o) => kept.push(o),
                    None => rejected += 1,
                }
            }
            (kept, rejected)
        })
        .collect();
    let rejected: usize = per_chunk.iter().map(|(_, r)| r).sum();
    let data: Vec<[f64; 4]> = per_chunk.into_iter().flat_map(|(k, _)| k).collect();

    let c = cfg.c();
    let mut estimates = Vec::new();
    for &t in &cfg.targets {
        let xs: Vec<f64> = data.iter().map(|o| o[t.observable()]).collect();
        let stat: fn(&[f64]) -> f64 = if t.is_variance() { variance } else { mean };
        let value = stat(&xs);
        let stderr = jackknife(&xs, stat);
        let exact = exact_cumulant_value(&t.monomial(), cfg.n as u64, &c, limits).ok();
        let exact_f64 = exact.as_ref().and_then(ToPrimitive::to_f64);
        let sigmas = match (exact_f64, stderr) {
            (Some(e), Some(s)) if s > 0.0 => Some((value - e).abs() / s),
            _ => None,
        };
        estimates.push(Estimate {
            target: t,
            value,
            stderr,
            exact: exact.map(|e| e.to_string()),
            exact_f64,
            sigmas,
        });
    }
    Ok(McReport {
        config: cfg.clone(),
        rng: RngInfo {
            algorithm: RNG_ALGORITHM.to_string(),
            chunks: CHUNKS,
            seed: cfg.seed,
        },
        estimates,
        rejections: Rejections {
            count: rejected,
            rate: rejected as f64 / cfg.samples as f64,
            max_condition: MAX_CONDITION,
        },
    })
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return f64::NAN;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Delete-one-block jackknife standard error of `stat`.
fn jackknife(xs: &[f64], stat: fn(&[f64]) -> f64) -> Option<f64> {
    let blocks = JACKKNIFE_BLOCKS.min(xs.len());
    if blocks < 2 {
        return None;
    }
    let bounds: Vec<usize> = (0..=blocks).map(|b| b * xs.len() / blocks).collect();
    let mut rest = Vec::with_capacity(xs.len());
    let thetas: Vec<f64> = (0..blocks)
        .map(|b| {
            rest.clear();
            rest.extend_from_slice(&xs[..bounds[b]]);
            rest.extend_from_slice(&xs[bounds[b + 1]..]);
            stat(&rest)
        })
        .collect();
    let bar = mean(&thetas);
    let k = blocks as f64;
    let ss: f64 = thetas.iter().map(|t| (t - bar) * (t - bar)).sum();
    Some(((k - 1.0) / k * ss).sqrt())
}
