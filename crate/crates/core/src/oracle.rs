//! Independent oracles used by the test suites.
//!
//! Nothing here shares code with the evaluators it checks: the incomplete beta
//! oracle integrates the defining integrand by double-exponential quadrature
//! and normalizes by a second quadrature instead of calling the beta function.

use crate::geometry::{separates, Hyperplane, SeparationInstance};

/// `∫_a^b f` by tanh-sinh quadrature with step halving until successive levels
/// agree to `rel_tol`.
///
/// `f(x, x − a, b − x)` receives both endpoint distances so singular
/// integrands can be evaluated without cancellation.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, rel_tol: f64) -> f64
where
    F: Fn(f64, f64, f64) -> f64,
{
    const T_MAX: f64 = 6.5;
    const MAX_LEVEL: u32 = 12;
    let half = 0.5 * (b - a);
    let term = |t: f64| -> f64 {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let weight = std::f64::consts::FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        // Distance from the nearer endpoint, computed without forming tanh(u).
        let near = 2.0 * half / ((2.0 * u.abs()).exp() + 1.0);
        if near == 0.0 || weight == 0.0 {
            return 0.0;
        }
        let far = 2.0 * half - near;
        let (da, db) = if t >= 0.0 { (far, near) } else { (near, far) };
        half * weight * f(a + da, da, db)
    };

    let mut h = 1.0;
    let mut sum = term(0.0);
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        let t = k as f64 * h;
        sum += term(t) + term(-t);
        k += 1;
    }
    let mut estimate = h * sum;
    for _ in 1..=MAX_LEVEL {
        h *= 0.5;
        // Only the new odd-indexed nodes are added at each level.
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            let t = k as f64 * h;
            sum += term(t) + term(-t);
            k += 2;
        }
        let next = h * sum;
        if (next - estimate).abs() <= rel_tol * next.abs() {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// `I(κ; y, z)` as a ratio of two quadratures of `s^{y−1}(1 − s)^{z−1}`.
pub fn reg_inc_beta_quadrature(kappa: f64, y: f64, z: f64) -> f64 {
    if kappa <= 0.0 {
        return 0.0;
    }
    if kappa >= 1.0 {
        return 1.0;
    }
    // One panel per endpoint singularity: s^{y−1} at 0 and (1 − s)^{z−1} at 1
    // are evaluated from exact endpoint distances.
    let panel = |lo: f64, hi: f64| {
        tanh_sinh(
            |_, da, db| (lo + da).powf(y - 1.0) * ((1.0 - hi) + db).powf(z - 1.0),
            lo,
            hi,
            1e-14,
        )
    };
    let total = panel(0.0, 0.5) + panel(0.5, 1.0);
    if kappa <= 0.5 {
        panel(0.0, kappa) / total
    } else {
        1.0 - panel(kappa, 1.0) / total
    }
}

/// Whether some bias on a uniform grid of `steps + 1` points in `[−k, k]`
/// makes `H[w; b]` separate.
pub fn brute_force_bias_scan(w: &[f64], inst: &SeparationInstance, steps: usize) -> bool {
    let k = inst.bias_half_range();
    (0..=steps).any(|i| {
        let b = -k + 2.0 * k * i as f64 / steps as f64;
        let h = Hyperplane::new(w.to_vec(), b).expect("finite weight");
        separates(&h, inst).expect("matching dimension")
    })
}

/// `I(κ; ½, ½) = (2/π) arcsin √κ`.
pub fn beta_half_half(kappa: f64) -> f64 {
    std::f64::consts::FRAC_2_PI * kappa.sqrt().asin()
}

/// `I(κ; 1, ½) = 1 − √(1 − κ)`.
pub fn beta_one_half(kappa: f64) -> f64 {
    1.0 - (1.0 - kappa).sqrt()
}

/// Fully random probability in three dimensions: `|c − x| (1 − sin φ)² / (4k)`.
pub fn fully_random_3d(center_distance: f64, sin_phi: f64, k: f64) -> f64 {
    center_distance * (1.0 - sin_phi).powi(2) / (4.0 * k)
}

/// Fully random probability in two dimensions:
/// `|c − x|/(2k) · ((2/π) cos φ − sin φ · (2/π)(π/2 − φ))`.
pub fn fully_random_2d(center_distance: f64, sin_phi: f64, k: f64) -> f64 {
    let phi = sin_phi.asin();
    let cos_phi = phi.cos();
    let two_over_pi = std::f64::consts::FRAC_2_PI;
    center_distance / (2.0 * k)
        * (two_over_pi * cos_phi - sin_phi * two_over_pi * (std::f64::consts::FRAC_PI_2 - phi))
}

/// Tail integrals of `t = |w₁|` for `w` uniform on the unit sphere in `ℝⁿ`,
/// whose density on `[0, 1]` is proportional to `(1 − t²)^{(n−3)/2}`.
///
/// Returns `(P(t > s), E[(t − s)₊])`.
pub fn axis_projection_tail(n: usize, s: f64) -> (f64, f64) {
    let e = (n as f64 - 3.0) / 2.0;
    let density = move |t: f64, db: f64| (db * (1.0 + t)).powf(e);
    let total = tanh_sinh(|t, _, db| density(t, db), 0.0, 1.0, 1e-14);
    let mass = tanh_sinh(|t, _, db| density(t, db), s, 1.0, 1e-14);
    let excess = tanh_sinh(|t, da, db| da * density(t, db), s, 1.0, 1e-14);
    (mass / total, excess / total)
}

/// Random-weight probability as the chance that `|(w | ω)|` exceeds `sin φ`.
pub fn random_weight_quadrature(n: usize, sin_phi: f64) -> f64 {
    axis_projection_tail(n, sin_phi).0
}

/// Fully random probability as the mean length of the separating bias
/// interval, `E[(D·|w₁| − (p + r))₊] / (2k)`.
pub fn fully_random_quadrature(n: usize, center_distance: f64, sin_phi: f64, k: f64) -> f64 {
    center_distance * axis_projection_tail(n, sin_phi).1 / (2.0 * k)
}
