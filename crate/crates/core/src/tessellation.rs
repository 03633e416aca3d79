//! Several hyperplanes at once: tessellation cells, all-pairs separation and
//! width planning.

use std::fmt;

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    exists_separating_bias_unchecked, separates, separates_unchecked, Hyperplane,
    SeparationInstance,
};
use crate::montecarlo::{
    count_over_blocks, sample_bias, sample_unit_sphere_into, Estimate, McConfig,
};

/// Side of each hyperplane a point falls on: `+1`, `−1`, or `0` on the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignPattern(pub Vec<i8>);

impl SignPattern {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }
}

pub fn sign_pattern(point: &[f64], planes: &[Hyperplane]) -> Result<SignPattern> {
    planes
        .iter()
        .map(|h| {
            let s = h.evaluate(point)?;
            Ok(if s > 0.0 {
                1
            } else if s < 0.0 {
                -1
            } else {
                0
            })
        })
        .collect::<Result<Vec<i8>>>()
        .map(SignPattern)
}

/// Whether at least one of `planes` separates the pair.
pub fn pair_separated_by_any(inst: &SeparationInstance, planes: &[Hyperplane]) -> Result<bool> {
    for h in planes {
        if separates(h, inst)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// How each hyperplane of a layer is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Uniform weight and uniform bias.
    FullyRandom,
    /// Uniform weight; the bias is chosen per pair, so a plane counts when
    /// some bias separates.
    RandomWeight,
    /// Uniform bias; the weight is the pair's own center axis.
    RandomBias,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::FullyRandom, Mode::RandomWeight, Mode::RandomBias];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::FullyRandom => "fully-random",
            Mode::RandomWeight => "random-weight",
            Mode::RandomBias => "random-bias",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown mode '{s}'")))
    }
}

/// Fraction of trials in which `width` freshly drawn hyperplanes separate every
/// listed pair.
///
/// Biases are drawn from `[−k, k]` with `k` the largest half-range among the
/// instances. Each trial draws its planes from a private stream, so the planes
/// of a width-`m` trial are the first `m` planes of the width-`m + 1` trial
/// under the same seed.
pub fn estimate_all_pairs(
    instances: &[SeparationInstance],
    width: usize,
    mode: Mode,
    cfg: &McConfig,
) -> Result<Estimate> {
    let first = instances.first().ok_or(Error::EmptyInstanceList)?;
    let n = first.dimension();
    for inst in instances {
        if inst.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: inst.dimension(),
            });
        }
    }
    if width == 0 {
        return Err(Error::InvalidConfig("width must be >= 1".into()));
    }
    let k = instances
        .iter()
        .map(SeparationInstance::bias_half_range)
        .fold(0.0, f64::max);

    let [hits] = count_over_blocks(cfg, |block_rng, _, count| {
        let mut w = vec![0.0; n];
        let mut covered = vec![false; instances.len()];
        let mut hits = 0;
        for _ in 0..count {
            let mut rng = ChaCha8Rng::seed_from_u64(block_rng.next_u64());
            covered.iter_mut().for_each(|c| *c = false);
            let mut remaining = instances.len();
            for _ in 0..width {
                match mode {
                    Mode::FullyRandom => {
                        sample_unit_sphere_into(&mut w, &mut rng);
                        let b = sample_bias(k, &mut rng);
                        mark(&mut covered, &mut remaining, instances, |inst| {
                            separates_unchecked(&w, b, inst)
                        });
                    }
                    Mode::RandomWeight => {
                        sample_unit_sphere_into(&mut w, &mut rng);
                        mark(&mut covered, &mut remaining, instances, |inst| {
                            exists_separating_bias_unchecked(&w, inst)
                        });
                    }
                    Mode::RandomBias => {
                        let b = sample_bias(k, &mut rng);
                        mark(&mut covered, &mut remaining, instances, |inst| {
                            separates_unchecked(inst.axis_dir(), b, inst)
                        });
                    }
                }
                if remaining == 0 {
                    break;
                }
            }
            hits += (remaining == 0) as u64;
        }
        [hits]
    });
    Ok(Estimate::from_counts(hits, cfg.samples()))
}

fn mark<F>(covered: &mut [bool], remaining: &mut usize, instances: &[SeparationInstance], hit: F)
where
    F: Fn(&SeparationInstance) -> bool,
{
    for (done, inst) in covered.iter_mut().zip(instances) {
        if !*done && hit(inst) {
            *done = true;
            *remaining -= 1;
        }
    }
}

fn check_open_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::ArgumentOutOfRange { name, value })
    }
}

/// `(1 − p)^m`: chance that none of `m` independent planes succeeds.
pub fn miss_probability(per_pair_p: f64, width: u64) -> f64 {
    (width as f64 * (-per_pair_p).ln_1p()).exp()
}

/// Smallest `m` with `1 − (1 − p)^m ≥ target`.
pub fn width_for_confidence(per_pair_p: f64, target: f64) -> Result<u64> {
    check_open_unit("per_pair_p", per_pair_p)?;
    check_open_unit("target", target)?;
    let allowed = 1.0 - target;
    let guess = ((-target).ln_1p() / (-per_pair_p).ln_1p()).ceil();
    if !(guess < u64::MAX as f64) {
        return Err(Error::ArgumentOutOfRange {
            name: "per_pair_p",
            value: per_pair_p,
        });
    }
    let mut m = (guess as u64).max(1);
    while m > 1 && miss_probability(per_pair_p, m - 1) <= allowed {
        m -= 1;
    }
    while miss_probability(per_pair_p, m) > allowed {
        m += 1;
    }
    Ok(m)
}

/// A layer width chosen to reach a target separation confidence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WidthPlan {
    pub per_pair_probability: f64,
    pub width: u64,
    pub target_confidence: f64,
    pub mode: Mode,
}

impl WidthPlan {
    pub fn new(per_pair_probability: f64, target_confidence: f64, mode: Mode) -> Result<Self> {
        Ok(Self {
            per_pair_probability,
            width: width_for_confidence(per_pair_probability, target_confidence)?,
            target_confidence,
            mode,
        })
    }

    /// Plan for several pairs at once: each pair is planned at confidence
    /// `1 − (1 − target)/pairs` using the smallest per-pair probability, so the
    /// union bound guarantees all pairs at `target`.
    pub fn for_pairs(per_pair: &[f64], target_confidence: f64, mode: Mode) -> Result<Self> {
        if per_pair.is_empty() {
            return Err(Error::EmptyInstanceList);
        }
        check_open_unit("target", target_confidence)?;
        let worst = per_pair.iter().copied().fold(f64::INFINITY, f64::min);
        let per_pair_target = 1.0 - (1.0 - target_confidence) / per_pair.len() as f64;
        Ok(Self {
            per_pair_probability: worst,
            width: width_for_confidence(worst, per_pair_target)?,
            target_confidence,
            mode,
        })
    }

    /// `1 − (1 − p)^width`.
    pub fn single_pair_confidence(&self) -> f64 {
        1.0 - miss_probability(self.per_pair_probability, self.width)
    }
}
