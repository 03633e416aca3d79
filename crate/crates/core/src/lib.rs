//! Probabilities that partly random hyperplanes separate two Euclidean balls.
//!
//! Given open balls `B[c, r]` and `B[x, p]` at distance `|c − x| = p + r + δ`
//! and a hyperplane `H[w; b] = {u : (w|u) = b}`, the crate computes the
//! probability that the hyperplane separates the balls when
//!
//! * only the bias is random (uniform on `[−k, k]`, weight chosen optimally),
//! * only the weight is random (uniform on the unit sphere, bias chosen optimally),
//! * both are random,
//!
//! and checks each closed form against a Monte Carlo estimator that samples the
//! hyperplanes directly. The [`tessellation`] module lifts the single-plane
//! results to layers of many planes and plans layer widths.
//!
//! ```
//! use ballsep::{make_instance, p_fully_random, p_random_bias, p_random_weight, Ball};
//!
//! let a = Ball::new(vec![-2.0, 0.0], 1.0)?;
//! let b = Ball::new(vec![2.0, 0.0], 1.0)?;
//! let inst = make_instance(a, b, 2.0)?;
//! assert_eq!(p_random_bias(&inst)?, 0.5);
//! assert!((p_random_weight(&inst)? - 2.0 / 3.0).abs() < 1e-12);
//! assert!(p_fully_random(&inst)? < 0.22);
//! # Ok::<(), ballsep::Error>(())
//! ```

// NaN must fail argument checks, so `!(x > 0.0)` is deliberate. Reference
// constants keep the digits they were published with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod probability;
pub mod specfun;
pub mod tessellation;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use error::{Error, Result};
pub use geometry::{
    cone_vertex, exists_separating_bias, make_instance, optimal_bias, separates, Ball, Hyperplane,
    SeparationInstance,
};
pub use montecarlo::{
    estimate_coupled, estimate_p_bias, estimate_p_full, estimate_p_weight, CoupledEstimate,
    Estimate, McConfig, DEFAULT_SEED,
};
pub use probability::{
    asymptotic_envelope, fully_random_terms, lemma_bounds, p_fully_random, p_random_bias,
    p_random_weight, FullyRandomTerms, LemmaBounds, SeparationReport,
};
pub use specfun::{beta, log_beta, log_gamma, reg_inc_beta, BetaArgs};
pub use tessellation::{
    estimate_all_pairs, pair_separated_by_any, sign_pattern, width_for_confidence, Mode,
    SignPattern, WidthPlan,
};
