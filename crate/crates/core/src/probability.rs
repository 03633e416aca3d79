//! Closed-form separation probabilities.
//!
//! Three hyperplane models are covered, all under the setting of
//! [`SeparationInstance`]: weights uniform on the unit sphere, biases uniform
//! on `[−k, k]`.
//!
//! * random bias, optimal weight: `δ / (2k)`
//! * random weight, optimal bias: `I(𝒬; (n−1)/2, ½)`
//! * fully random: `|c−x|/(2k) · (𝒬^{(n−1)/2} / ((n−1)/2 · B) − sin φ · I)`
//!
//! where `B = B((n−1)/2, ½)` and `I = I(𝒬; (n−1)/2, ½)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SeparationInstance;
use crate::specfun::{log_beta_half, log_gamma, reg_inc_beta_raw};

/// Values this close outside `[0, 1]` are treated as rounding and clamped.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

fn as_probability(value: f64, what: &str) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else if (-CLAMP_TOLERANCE..0.0).contains(&value) {
        Ok(0.0)
    } else if value > 1.0 && value <= 1.0 + CLAMP_TOLERANCE {
        Ok(1.0)
    } else {
        Err(Error::Consistency(format!(
            "{what} evaluated to {value}, outside [0, 1]"
        )))
    }
}

fn half_dim(n: usize) -> f64 {
    (n as f64 - 1.0) / 2.0
}

/// Probability that `H[ω; 𝒷]` separates for uniform `𝒷 ∈ [−k, k]` and the
/// optimal weight `ω` along the center axis.
pub fn p_random_bias(inst: &SeparationInstance) -> Result<f64> {
    as_probability(inst.gap() / (2.0 * inst.bias_half_range()), "p_random_bias")
}

/// Probability that a uniform random weight admits a separating bias.
pub fn p_random_weight(inst: &SeparationInstance) -> Result<f64> {
    let v = reg_inc_beta_raw(inst.q_value(), half_dim(inst.dimension()), 0.5)?;
    as_probability(v, "p_random_weight")
}

/// The pieces of the fully random closed form, kept apart so the ordering
/// chain between them can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FullyRandomTerms {
    /// `𝒬^{(n−1)/2} / ((n−1)/2 · B((n−1)/2, ½))`.
    pub first_term: f64,
    /// `I(𝒬; (n−1)/2, ½)`, equal to the random-weight probability.
    pub beta_term: f64,
    /// `sin φ = (p + r)/(p + r + δ)`.
    pub sin_phi: f64,
    /// `first_term − sin φ · beta_term`.
    pub bracket: f64,
    /// `|c − x| / (2k)`.
    pub prefactor: f64,
    /// `prefactor · bracket`.
    pub value: f64,
}

/// Evaluates every term of the fully random closed form.
pub fn fully_random_terms(inst: &SeparationInstance) -> Result<FullyRandomTerms> {
    let n = inst.dimension();
    let a = half_dim(n);
    let q = inst.q_value();
    let first_term = (a * q.ln() - a.ln() - log_beta_half(a)?).exp();
    let beta_term = reg_inc_beta_raw(q, a, 0.5)?;
    let sin_phi = inst.sin_phi();
    let bracket = first_term - sin_phi * beta_term;
    let prefactor = inst.center_distance() / (2.0 * inst.bias_half_range());
    Ok(FullyRandomTerms {
        first_term,
        beta_term,
        sin_phi,
        bracket,
        prefactor,
        value: prefactor * bracket,
    })
}

/// Probability that `H[𝓌; 𝒷]` separates when both weight and bias are random.
pub fn p_fully_random(inst: &SeparationInstance) -> Result<f64> {
    as_probability(fully_random_terms(inst)?.value, "p_fully_random")
}

/// The two-sided bound `I·sin α ≤ cos^{n−1}α / ((n−1)/2 · B) ≤ I`, with
/// `I = I(cos²α; (n−1)/2, ½)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaBounds {
    pub lower: f64,
    pub mid: f64,
    pub upper: f64,
}

impl LemmaBounds {
    pub fn is_ordered(&self, tol: f64) -> bool {
        self.lower <= self.mid + tol && self.mid <= self.upper + tol
    }
}

pub fn lemma_bounds(alpha: f64, n: usize) -> Result<LemmaBounds> {
    if !(alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_2) {
        return Err(Error::ArgumentOutOfRange {
            name: "alpha",
            value: alpha,
        });
    }
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let a = half_dim(n);
    let (sin, cos) = alpha.sin_cos();
    let upper = reg_inc_beta_raw(cos * cos, a, 0.5)?;
    let mid = (2.0 * a * cos.ln() - a.ln() - log_beta_half(a)?).exp();
    Ok(LemmaBounds {
        lower: upper * sin,
        mid,
        upper,
    })
}

/// `Γ(n/2) / (Γ((n+1)/2) √π)`, a strict upper bound on the first term of the
/// fully random closed form, asymptotic to `√(2/(nπ))`.
pub fn asymptotic_envelope(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let n = n as f64;
    let ln = log_gamma(n / 2.0)? - log_gamma((n + 1.0) / 2.0)? - 0.5 * std::f64::consts::PI.ln();
    Ok(ln.exp())
}

/// All three closed-form probabilities for one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub dimension: usize,
    pub gap: f64,
    pub bias_half_range: f64,
    pub q_value: f64,
    pub sin_phi: f64,
    pub p_random_bias: f64,
    pub p_random_weight: f64,
    pub p_fully_random: f64,
}

impl SeparationReport {
    pub fn evaluate(inst: &SeparationInstance) -> Result<Self> {
        Ok(Self {
            dimension: inst.dimension(),
            gap: inst.gap(),
            bias_half_range: inst.bias_half_range(),
            q_value: inst.q_value(),
            sin_phi: inst.sin_phi(),
            p_random_bias: p_random_bias(inst)?,
            p_random_weight: p_random_weight(inst)?,
            p_fully_random: p_fully_random(inst)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_instance, Ball};
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI};

    fn instance(c: &[f64], r: f64, x: &[f64], p: f64, k: f64) -> SeparationInstance {
        make_instance(
            Ball::new(c.to_vec(), r).unwrap(),
            Ball::new(x.to_vec(), p).unwrap(),
            k,
        )
        .unwrap()
    }

    fn canonical_2d() -> SeparationInstance {
        instance(&[-2.0, 0.0], 1.0, &[2.0, 0.0], 1.0, 2.0)
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn random_bias_is_gap_over_range() {
        close(p_random_bias(&canonical_2d()).unwrap(), 0.5, 1e-15);
        let wide = instance(&[-2.0, 0.0], 1.0, &[2.0, 0.0], 1.0, 4.0);
        close(p_random_bias(&wide).unwrap(), 0.25, 1e-15);
    }

    #[test]
    fn random_weight_low_dimensions() {
        close(p_random_weight(&canonical_2d()).unwrap(), 2.0 / 3.0, 1e-12);
        let inst3 = instance(&[0.0, 0.0, 0.0], 1.0, &[4.0, 0.0, 0.0], 1.0, 4.0);
        close(p_random_weight(&inst3).unwrap(), 0.5, 1e-12);
    }

    #[test]
    fn random_weight_tends_to_one_for_far_balls() {
        let far = instance(&[-1e8, 0.0, 0.0], 1.0, &[1e8, 0.0, 0.0], 1.0, 1e8);
        assert!(p_random_weight(&far).unwrap() > 1.0 - 1e-7);
    }

    #[test]
    fn fully_random_canonical_values() {
        let inst3 = instance(&[0.0, 0.0, 0.0], 1.0, &[4.0, 0.0, 0.0], 1.0, 4.0);
        close(p_fully_random(&inst3).unwrap(), 0.0625, 1e-16);
        close(
            p_fully_random(&canonical_2d()).unwrap(),
            3f64.sqrt() / PI - 1.0 / 3.0,
            1e-12,
        );
    }

    #[test]
    fn fully_random_vanishes_as_gap_closes() {
        let tiny = instance(&[-1.0 - 5e-9, 0.0], 1.0, &[1.0 + 5e-9, 0.0], 1.0, 2.0);
        let v = p_fully_random(&tiny).unwrap();
        assert!((0.0..1e-10).contains(&v), "{v}");
    }

    #[test]
    fn lemma_examples() {
        let b = lemma_bounds(FRAC_PI_6, 3).unwrap();
        close(b.lower, 0.25, 1e-12);
        close(b.mid, 0.375, 1e-12);
        close(b.upper, 0.5, 1e-12);

        let b = lemma_bounds(FRAC_PI_4, 2).unwrap();
        close(b.upper, 0.5, 1e-12);
        close(b.mid, 2f64.sqrt() / PI, 1e-12);
        close(b.lower, 0.5 * FRAC_PI_4.sin(), 1e-12);
        assert!(b.is_ordered(0.0));
    }

    #[test]
    fn lemma_rejects_bad_arguments() {
        assert!(lemma_bounds(0.0, 3).is_err());
        assert!(lemma_bounds(std::f64::consts::FRAC_PI_2, 3).is_err());
        assert!(lemma_bounds(0.3, 1).is_err());
    }

    #[test]
    fn envelope_values() {
        close(asymptotic_envelope(2).unwrap(), 2.0 / PI, 1e-14);
        close(asymptotic_envelope(3).unwrap(), 0.5, 1e-14);
        let approx = (2.0 / (200.0 * PI)).sqrt();
        assert!((asymptotic_envelope(200).unwrap() / approx - 1.0).abs() < 0.01);
        assert!(asymptotic_envelope(1).is_err());
    }

    #[test]
    fn first_term_below_envelope() {
        let inst = canonical_2d();
        let terms = fully_random_terms(&inst).unwrap();
        assert!(terms.first_term < asymptotic_envelope(2).unwrap());
    }

    #[test]
    fn clamping_policy() {
        assert_eq!(as_probability(-1e-13, "x").unwrap(), 0.0);
        assert_eq!(as_probability(1.0 + 1e-13, "x").unwrap(), 1.0);
        assert!(matches!(
            as_probability(-1e-6, "x"),
            Err(Error::Consistency(_))
        ));
        assert!(as_probability(f64::NAN, "x").is_err());
    }

    #[test]
    fn report_matches_individual_values() {
        let inst = canonical_2d();
        let rep = SeparationReport::evaluate(&inst).unwrap();
        assert_eq!(rep.dimension, 2);
        assert_eq!(rep.p_random_bias, p_random_bias(&inst).unwrap());
        assert_eq!(rep.p_random_weight, p_random_weight(&inst).unwrap());
        assert_eq!(rep.p_fully_random, p_fully_random(&inst).unwrap());
    }
}
