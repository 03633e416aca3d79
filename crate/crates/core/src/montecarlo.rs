//! Monte Carlo estimates of the three separation probabilities.
//!
//! The estimators draw weights and biases directly and only ask the
//! [`geometry`](crate::geometry) predicates whether a draw separates. They never
//! touch [`specfun`](crate::specfun) or [`probability`](crate::probability), so
//! agreement with the closed forms is independent evidence.
//!
//! # Reproducibility
//!
//! Samples are grouped into fixed-size blocks. Block `i` owns a ChaCha8 stream
//! seeded from `seed` and `i` through SplitMix64, and `chunks` only decides how
//! blocks are spread over worker threads. Success counts are integers summed
//! per block, so an [`Estimate`] is a function of `(instance, samples, seed)`
//! alone and is bit-identical for every `chunks` value and thread schedule.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    exists_separating_bias_unchecked, norm, separates_unchecked, SeparationInstance, MIN_NORM,
};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_BA11_2718_2818;

/// Samples per RNG block.
pub const BLOCK_SIZE: u64 = 1 << 14;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// RNG for stream `index` under `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(splitmix64(seed) ^ index))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    samples: u64,
    seed: u64,
    chunks: usize,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64, chunks: usize) -> Result<Self> {
        if samples < 1 {
            return Err(Error::InvalidConfig("samples must be >= 1".into()));
        }
        if chunks < 1 {
            return Err(Error::InvalidConfig("chunks must be >= 1".into()));
        }
        if chunks as u64 > samples {
            return Err(Error::InvalidConfig(format!(
                "chunks ({chunks}) must not exceed samples ({samples})"
            )));
        }
        Ok(Self {
            samples,
            seed,
            chunks,
        })
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chunks(&self) -> usize {
        self.chunks
    }
}

/// Bernoulli point estimate with plug-in standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub successes: u64,
}

impl Estimate {
    pub fn from_counts(successes: u64, samples: u64) -> Self {
        assert!(samples > 0 && successes <= samples);
        let mean = successes as f64 / samples as f64;
        Self {
            mean,
            std_error: (mean * (1.0 - mean) / samples as f64).sqrt(),
            samples,
            successes,
        }
    }

    /// Standard error implied by a hypothesised success probability.
    pub fn null_std_error(&self, exact: f64) -> f64 {
        (exact * (1.0 - exact) / self.samples as f64)
            .max(0.0)
            .sqrt()
    }

    /// `(mean − exact) / s`, where `s` is the larger of the plug-in standard
    /// error and the one implied by `exact`. The plug-in value alone is zero
    /// whenever no success (or no failure) was observed, which happens for
    /// probabilities far below `1 / samples`.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = self.mean - exact;
        let scale = self.std_error.max(self.null_std_error(exact));
        if scale > 0.0 {
            diff / scale
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }

    pub fn within(&self, exact: f64, standard_errors: f64) -> bool {
        self.z_score(exact).abs() <= standard_errors
    }
}

/// Runs `block(rng, first, count)` over every block and sums the returned
/// counters element-wise. `first` is the global index of the block's first sample.
pub(crate) fn count_over_blocks<const N: usize, F>(cfg: &McConfig, block: F) -> [u64; N]
where
    F: Fn(&mut ChaCha8Rng, u64, u64) -> [u64; N] + Sync,
{
    fn add<const N: usize>(mut a: [u64; N], b: [u64; N]) -> [u64; N] {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    }
    let blocks = cfg.samples.div_ceil(BLOCK_SIZE);
    let chunks = (cfg.chunks as u64).min(blocks);
    let per_chunk = blocks.div_ceil(chunks);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * per_chunk;
            let end = (start + per_chunk).min(blocks);
            (start..end)
                .map(|b| {
                    let first = b * BLOCK_SIZE;
                    let count = BLOCK_SIZE.min(cfg.samples - first);
                    let mut rng = stream_rng(cfg.seed, b);
                    block(&mut rng, first, count)
                })
                .fold([0; N], add)
        })
        .reduce(|| [0; N], add)
}

/// Fills `buf` with a uniform point of the unit sphere `𝕊^{len−1}`.
pub fn sample_unit_sphere_into<R: Rng + ?Sized>(buf: &mut [f64], rng: &mut R) {
    loop {
        for v in buf.iter_mut() {
            *v = rng.sample(StandardNormal);
        }
        let len = norm(buf);
        if len > MIN_NORM {
            buf.iter_mut().for_each(|v| *v /= len);
            return;
        }
    }
}

/// Uniform point of the unit sphere in `ℝⁿ`.
pub fn sample_unit_sphere<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut v = vec![0.0; n];
    sample_unit_sphere_into(&mut v, rng);
    Ok(v)
}

/// Uniform draw from `[−k, k]`.
pub fn sample_bias<R: Rng + ?Sized>(k: f64, rng: &mut R) -> f64 {
    rng.random_range(-k..=k)
}

/// Fraction of `(w, b)` draws with `H[w; b]` separating.
pub fn estimate_p_full(inst: &SeparationInstance, cfg: &McConfig) -> Estimate {
    estimate_coupled(inst, cfg).full
}

/// Full and random-weight estimates evaluated on the same `(w, b)` draws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoupledEstimate {
    pub full: Estimate,
    pub weight: Estimate,
}

/// Evaluates both the fully random event and the random-weight event on each
/// draw. The first implies the second draw by draw.
pub fn estimate_coupled(inst: &SeparationInstance, cfg: &McConfig) -> CoupledEstimate {
    let n = inst.dimension();
    let k = inst.bias_half_range();
    let [full, weight] = count_over_blocks(cfg, |rng, _, count| {
        let mut w = vec![0.0; n];
        let mut counts = [0u64; 2];
        for _ in 0..count {
            sample_unit_sphere_into(&mut w, rng);
            let b = sample_bias(k, rng);
            let sep = separates_unchecked(&w, b, inst);
            let exists = exists_separating_bias_unchecked(&w, inst);
            debug_assert!(!sep || exists);
            counts[0] += sep as u64;
            counts[1] += exists as u64;
        }
        counts
    });
    CoupledEstimate {
        full: Estimate::from_counts(full, cfg.samples),
        weight: Estimate::from_counts(weight, cfg.samples),
    }
}

/// Fraction of random weights for which some bias separates.
pub fn estimate_p_weight(inst: &SeparationInstance, cfg: &McConfig) -> Estimate {
    let n = inst.dimension();
    let [hits] = count_over_blocks(cfg, |rng, _, count| {
        let mut w = vec![0.0; n];
        let hits = (0..count)
            .filter(|_| {
                sample_unit_sphere_into(&mut w, rng);
                exists_separating_bias_unchecked(&w, inst)
            })
            .count();
        [hits as u64]
    });
    Estimate::from_counts(hits, cfg.samples)
}

/// Which of the two unit vectors along the center axis serves as the weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AxisOrientation {
    /// `ω = (x − c)/|x − c|`.
    #[default]
    Forward,
    /// `−ω`.
    Reversed,
}

/// Fraction of uniform biases `b` for which `H[ω; b]` separates.
pub fn estimate_p_bias(inst: &SeparationInstance, cfg: &McConfig) -> Estimate {
    estimate_p_bias_oriented(inst, cfg, AxisOrientation::Forward)
}

pub fn estimate_p_bias_oriented(
    inst: &SeparationInstance,
    cfg: &McConfig,
    orientation: AxisOrientation,
) -> Estimate {
    let (t, y) = inst.gap_interval();
    debug_assert!(((y - t) - inst.gap()).abs() <= 1e-10 * inst.center_distance());
    let axis: Vec<f64> = match orientation {
        AxisOrientation::Forward => inst.axis_dir().to_vec(),
        AxisOrientation::Reversed => inst.axis_dir().iter().map(|v| -v).collect(),
    };
    let k = inst.bias_half_range();
    let [hits] = count_over_blocks(cfg, |rng, _, count| {
        let hits = (0..count)
            .filter(|_| separates_unchecked(&axis, sample_bias(k, rng), inst))
            .count();
        [hits as u64]
    });
    Estimate::from_counts(hits, cfg.samples)
}
