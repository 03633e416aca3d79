//! Balls, hyperplanes and the separation predicate.
//!
//! A hyperplane `H[w; b]` is the zero locus of `u ↦ (w|u) − b` with `|w| = 1`.
//! It separates two open balls when each ball lies strictly inside one of the
//! two open half-spaces. Every probability in this crate is defined relative to
//! a [`SeparationInstance`]: a validated pair of strictly disjoint balls together
//! with the half-range `k` of the bias distribution.

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on `|w| − 1` after normalization.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Vectors shorter than this are rejected instead of normalized.
pub const MIN_NORM: f64 = 1e-12;

/// Relative tolerance used by invariant checks on derived quantities.
pub const RELATIVE_TOLERANCE: f64 = 1e-10;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn check_finite(v: &[f64]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Open Euclidean ball `{u : |center − u| < radius}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ball {
    center: Vec<f64>,
    radius: f64,
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.len() < 2 {
            return Err(Error::DimensionTooSmall(center.len()));
        }
        check_finite(&center)?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    /// Whether `point` lies in the open ball.
    pub fn contains(&self, point: &[f64]) -> bool {
        distance(&self.center, point) < self.radius
    }
}

/// Hyperplane `H[w; b]` with unit weight `w` and bias `b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hyperplane {
    weight: Vec<f64>,
    bias: f64,
}

impl Hyperplane {
    /// Builds the zero locus of `u ↦ (weight|u) − bias`.
    ///
    /// The weight is normalized and the bias divided by the same factor, so the
    /// resulting hyperplane is the same point set as the one described by the
    /// raw affine map.
    pub fn new(weight: Vec<f64>, bias: f64) -> Result<Self> {
        check_finite(&weight)?;
        if !bias.is_finite() {
            return Err(Error::NonFinite);
        }
        let len = norm(&weight);
        if len < MIN_NORM {
            return Err(Error::DegenerateVector(len));
        }
        let weight: Vec<f64> = weight.into_iter().map(|w| w / len).collect();
        debug_assert!((norm(&weight) - 1.0).abs() <= UNIT_TOLERANCE);
        Ok(Self {
            weight,
            bias: bias / len,
        })
    }

    pub fn weight(&self) -> &[f64] {
        &self.weight
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn dimension(&self) -> usize {
        self.weight.len()
    }

    /// `(w|u) − b`.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64> {
        check_dim(self.dimension(), point.len())?;
        Ok(dot(&self.weight, point) - self.bias)
    }

    /// `H[−w; −b]`, the same point set with the opposite orientation.
    pub fn negated(&self) -> Self {
        Self {
            weight: self.weight.iter().map(|w| -w).collect(),
            bias: -self.bias,
        }
    }
}

/// A pair of strictly disjoint open balls and the bias half-range `k`.
///
/// Derived quantities follow the double cone tangent to both balls: its vertex
/// `v` lies on the segment between the centers and its half-angle `φ` satisfies
/// `sin φ = (p + r) / (p + r + δ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationInstance {
    ball_a: Ball,
    ball_b: Ball,
    bias_half_range: f64,
    center_distance: f64,
    gap: f64,
    axis_dir: Vec<f64>,
    cone_vertex: Vec<f64>,
    sin_phi: f64,
    q_value: f64,
}

/// Validates the setting and derives `δ`, `ω`, `v`, `φ` and `𝒬`.
pub fn make_instance(ball_a: Ball, ball_b: Ball, k: f64) -> Result<SeparationInstance> {
    check_dim(ball_a.dimension(), ball_b.dimension())?;
    let (c, r) = (ball_a.center(), ball_a.radius());
    let (x, p) = (ball_b.center(), ball_b.radius());

    let center_distance = distance(c, x);
    let gap = center_distance - p - r;
    if !(gap > 0.0) {
        return Err(Error::BallsOverlapOrTouch);
    }
    let required = norm(c).max(norm(x));
    if !(k.is_finite() && k >= required) {
        return Err(Error::KInsufficient { k, required });
    }

    let axis_dir: Vec<f64> = x
        .iter()
        .zip(c)
        .map(|(xi, ci)| (xi - ci) / center_distance)
        .collect();
    let wa = p / (p + r);
    let wb = r / (p + r);
    let cone_vertex: Vec<f64> = c.iter().zip(x).map(|(ci, xi)| wa * ci + wb * xi).collect();

    let radii = p + r;
    let sin_phi = radii / center_distance;
    // 1 − sin²φ factored so it keeps relative accuracy as δ → 0.
    let q_value = gap * (radii + center_distance) / (center_distance * center_distance);

    Ok(SeparationInstance {
        ball_a,
        ball_b,
        bias_half_range: k,
        center_distance,
        gap,
        axis_dir,
        cone_vertex,
        sin_phi,
        q_value,
    })
}

impl SeparationInstance {
    pub fn ball_a(&self) -> &Ball {
        &self.ball_a
    }

    pub fn ball_b(&self) -> &Ball {
        &self.ball_b
    }

    /// `k`: biases are drawn uniformly from `[−k, k]`.
    pub fn bias_half_range(&self) -> f64 {
        self.bias_half_range
    }

    pub fn dimension(&self) -> usize {
        self.ball_a.dimension()
    }

    /// `|c − x|`.
    pub fn center_distance(&self) -> f64 {
        self.center_distance
    }

    /// `δ = |c − x| − p − r`.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// `p + r`.
    pub fn radii_sum(&self) -> f64 {
        self.ball_a.radius + self.ball_b.radius
    }

    /// Unit vector `ω` pointing from `c` toward `x`.
    pub fn axis_dir(&self) -> &[f64] {
        &self.axis_dir
    }

    pub fn cone_vertex(&self) -> &[f64] {
        &self.cone_vertex
    }

    pub fn sin_phi(&self) -> f64 {
        self.sin_phi
    }

    /// Half-angle `φ ∈ (0, π/2)` of the tangent double cone.
    pub fn cone_angle(&self) -> f64 {
        self.sin_phi.asin()
    }

    /// `𝒬 = 1 − sin²φ`.
    pub fn q_value(&self) -> f64 {
        self.q_value
    }

    /// The same instance with the two balls swapped.
    pub fn swapped(&self) -> Result<Self> {
        make_instance(
            self.ball_b.clone(),
            self.ball_a.clone(),
            self.bias_half_range,
        )
    }

    /// Interval `[t, y] = [(ω|c) + r, (ω|x) − p]` of biases `b` for which
    /// `H[ω; b]` meets the axis between the two balls. Its length is `δ`.
    pub fn gap_interval(&self) -> (f64, f64) {
        let t = dot(&self.axis_dir, self.ball_a.center()) + self.ball_a.radius;
        let y = dot(&self.axis_dir, self.ball_b.center()) - self.ball_b.radius;
        (t, y)
    }
}

/// Vertex `v = (p/(p+r))·c + (r/(p+r))·x` of the double cone tangent to both balls.
pub fn cone_vertex(inst: &SeparationInstance) -> &[f64] {
    inst.cone_vertex()
}

/// Strict separation of two open balls by `H[w; b]`.
pub fn separates(h: &Hyperplane, inst: &SeparationInstance) -> Result<bool> {
    check_dim(inst.dimension(), h.dimension())?;
    Ok(separates_unchecked(h.weight(), h.bias(), inst))
}

/// [`separates`] for a raw unit weight whose dimension the caller has checked.
#[inline]
pub(crate) fn separates_unchecked(weight: &[f64], bias: f64, inst: &SeparationInstance) -> bool {
    let sc = dot(weight, inst.ball_a.center()) - bias;
    let sx = dot(weight, inst.ball_b.center()) - bias;
    let (r, p) = (inst.ball_a.radius, inst.ball_b.radius);
    (sc > r && sx < -p) || (sc < -r && sx > p)
}

/// Whether some bias makes `H[w; b]` separate the balls, i.e. whether the
/// projections of the two balls onto `span(w)` are disjoint.
///
/// The test `|(w|c − x)| > (p + r)·|w|` is scale invariant, so `w` only has
/// to be nonzero. When it holds, the optimal bias `(w|v)` lies in `[−k, k]`.
pub fn exists_separating_bias(w: &[f64], inst: &SeparationInstance) -> Result<bool> {
    check_dim(inst.dimension(), w.len())?;
    Ok(exists_separating_bias_unchecked(w, inst))
}

#[inline]
pub(crate) fn exists_separating_bias_unchecked(w: &[f64], inst: &SeparationInstance) -> bool {
    let c = inst.ball_a.center();
    let x = inst.ball_b.center();
    let mut proj = 0.0;
    let mut len2 = 0.0;
    for i in 0..w.len() {
        proj += w[i] * (c[i] - x[i]);
        len2 += w[i] * w[i];
    }
    proj.abs() > inst.radii_sum() * len2.sqrt()
}

/// Bias `(w|v)` through the cone vertex, the best choice for a fixed weight.
pub fn optimal_bias(w: &[f64], inst: &SeparationInstance) -> Result<f64> {
    check_dim(inst.dimension(), w.len())?;
    Ok(dot(w, inst.cone_vertex()) / norm(w))
}
