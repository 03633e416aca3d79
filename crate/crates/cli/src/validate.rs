//! Built-in invariant grids behind `ballsep validate`.
//!
//! The evaluators are function pointers so tests can swap in a faulty closed
//! form and check that the grids notice.

use std::f64::consts::{FRAC_PI_2, PI};

use ballsep::{
    fully_random_terms, lemma_bounds, make_instance, p_random_bias, p_random_weight,
    specfun::reg_inc_beta_raw, FullyRandomTerms, LemmaBounds, SeparationInstance,
};

use crate::format::{sig, table};
use crate::instance::symmetric_pair;
use crate::CliError;

const LEMMA_TOLERANCE: f64 = 1e-12;
const CHAIN_TOLERANCE: f64 = 1e-12;
const SYMMETRY_TOLERANCE: f64 = 1e-11;
const ARCSIN_TOLERANCE: f64 = 1e-10;
const REDUCTION_TOLERANCE: f64 = 1e-12;
const CHAIN_INSTANCES: usize = 10_000;

/// The closed forms under test.
#[derive(Clone, Copy)]
pub struct Evaluators {
    pub fully_random_terms: fn(&SeparationInstance) -> ballsep::Result<FullyRandomTerms>,
    pub p_random_weight: fn(&SeparationInstance) -> ballsep::Result<f64>,
    pub p_random_bias: fn(&SeparationInstance) -> ballsep::Result<f64>,
    pub lemma_bounds: fn(f64, usize) -> ballsep::Result<LemmaBounds>,
    pub reg_inc_beta: fn(f64, f64, f64) -> ballsep::Result<f64>,
}

impl Default for Evaluators {
    fn default() -> Self {
        Self {
            fully_random_terms,
            p_random_weight,
            p_random_bias,
            lemma_bounds,
            reg_inc_beta: reg_inc_beta_raw,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub grid: String,
    pub total: usize,
    pub passed: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str, grid: String) -> Self {
        Self {
            name,
            grid,
            total: 0,
            passed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(describe());
        }
    }

    pub fn ok(&self) -> bool {
        self.total > 0 && self.passed == self.total
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.name.to_string(),
                    if c.ok() { "PASS" } else { "FAIL" }.to_string(),
                    format!("{}/{}", c.passed, c.total),
                    c.grid.clone(),
                ]
            })
            .collect();
        let mut out = table(&["check", "result", "passed", "grid"], &rows);
        for c in &self.checks {
            if let Some(f) = &c.first_failure {
                out.push_str(&format!("{}: first failing cell: {f}\n", c.name));
            }
        }
        out
    }
}

pub fn run(ev: &Evaluators) -> Result<ValidationReport, CliError> {
    Ok(ValidationReport {
        checks: vec![
            lemma_sandwich(ev),
            ordering_chain(ev)?,
            beta_symmetry(ev),
            reductions(ev)?,
        ],
    })
}

fn lemma_sandwich(ev: &Evaluators) -> CheckResult {
    const ALPHAS: usize = 100;
    const MAX_N: usize = 200;
    let mut check = CheckResult::new(
        "lemma-sandwich",
        format!("alpha {ALPHAS} points in [0.01, pi/2 - 0.01] x n 2..={MAX_N}"),
    );
    for i in 0..ALPHAS {
        let alpha = 0.01 + (FRAC_PI_2 - 0.02) * i as f64 / (ALPHAS - 1) as f64;
        for n in 2..=MAX_N {
            match (ev.lemma_bounds)(alpha, n) {
                Ok(b) => check.record(b.is_ordered(LEMMA_TOLERANCE), || {
                    format!(
                        "alpha={alpha} n={n}: lower={} mid={} upper={}",
                        b.lower, b.mid, b.upper
                    )
                }),
                Err(e) => check.record(false, || format!("alpha={alpha} n={n}: {e}")),
            }
        }
    }
    check
}

/// Fractional parts of `0.5 + i·gʲ`, the additive recurrence in five dimensions.
fn quasi_random(i: usize) -> [f64; 5] {
    // Positive root of x⁶ = x + 1.
    const G: f64 = 1.134_724_138_401_519_5;
    let mut u = [0.0; 5];
    let mut a = 1.0;
    for v in &mut u {
        a /= G;
        *v = (0.5 + i as f64 * a).fract();
    }
    u
}

fn chain_instance(i: usize) -> Result<SeparationInstance, CliError> {
    let [u1, u2, u3, u4, u5] = quasi_random(i);
    let n = 2 + (u1 * 299.0) as usize;
    let s = 0.001 + 0.998 * u2;
    let r = 0.1 + 9.9 * u3;
    let p = 0.1 + 9.9 * u4;
    let factor = 1.0 + 9.0 * u5;
    let delta = (r + p) * (1.0 / s - 1.0);
    let (a, b) = symmetric_pair(n, r, p, delta)?;
    Ok(make_instance(a, b, factor * (r + p + delta) / 2.0)?)
}

fn describe(inst: &SeparationInstance) -> String {
    format!(
        "n={} r={} p={} delta={} k={}",
        inst.dimension(),
        inst.ball_a().radius(),
        inst.ball_b().radius(),
        inst.gap(),
        inst.bias_half_range()
    )
}

fn ordering_chain(ev: &Evaluators) -> Result<CheckResult, CliError> {
    let mut check = CheckResult::new(
        "ordering-chain",
        format!("{CHAIN_INSTANCES} quasi-random instances, n 2..=300, sin(phi) 0.001..0.999, k-factor 1..10"),
    );
    for i in 0..CHAIN_INSTANCES {
        let inst = chain_instance(i)?;
        let evaluated = (|| {
            Ok::<_, ballsep::Error>((
                (ev.fully_random_terms)(&inst)?,
                (ev.p_random_weight)(&inst)?,
                (ev.p_random_bias)(&inst)?,
            ))
        })();
        match evaluated {
            Ok((t, weight, bias)) => {
                let tol = CHAIN_TOLERANCE;
                let ok = t.value >= -tol
                    && t.value <= t.bracket + tol
                    && t.bracket <= t.first_term + tol
                    && t.first_term <= weight + tol
                    && t.value <= bias + tol;
                check.record(ok, || {
                    format!(
                        "instance #{i} ({}): p_full={} bracket={} first_term={} p_weight={} p_bias={}",
                        describe(&inst),
                        t.value,
                        t.bracket,
                        t.first_term,
                        weight,
                        bias
                    )
                });
            }
            Err(e) => check.record(false, || {
                format!("instance #{i} ({}): {e}", describe(&inst))
            }),
        }
    }
    Ok(check)
}

fn beta_symmetry(ev: &Evaluators) -> CheckResult {
    const PARAMS: [f64; 9] = [0.5, 1.0, 1.5, 2.0, 2.5, 5.0, 10.0, 25.0, 50.0];
    let mut check = CheckResult::new(
        "beta-symmetry",
        format!(
            "kappa 99 points x {} (y, z) pairs",
            PARAMS.len() * PARAMS.len()
        ),
    );
    for &y in &PARAMS {
        for &z in &PARAMS {
            for i in 1..=99 {
                let kappa = i as f64 / 100.0;
                let sum = (ev.reg_inc_beta)(kappa, y, z)
                    .and_then(|a| Ok(a + (ev.reg_inc_beta)(1.0 - kappa, z, y)?));
                match sum {
                    Ok(s) => check.record((s - 1.0).abs() <= SYMMETRY_TOLERANCE, || {
                        format!("kappa={kappa} y={y} z={z}: I + I' = {s}")
                    }),
                    Err(e) => check.record(false, || format!("kappa={kappa} y={y} z={z}: {e}")),
                }
            }
        }
    }
    check
}

/// Elementary closed forms in two and three dimensions.
fn reduced_values(n: usize, s: f64, prefactor: f64) -> (f64, f64, f64) {
    let phi = s.asin();
    if n == 2 {
        let weight = 1.0 - 2.0 * phi / PI;
        let full = prefactor * (2.0 * phi.cos() / PI - s * weight);
        (weight, full, ARCSIN_TOLERANCE)
    } else {
        let weight = 1.0 - s;
        let full = prefactor * (1.0 - s) * (1.0 - s) / 2.0;
        (weight, full, REDUCTION_TOLERANCE)
    }
}

fn reductions(ev: &Evaluators) -> Result<CheckResult, CliError> {
    const FACTORS: [f64; 2] = [1.0, 2.0];
    let mut check = CheckResult::new(
        "low-dim-reductions",
        format!("n {{2, 3}} x sin(phi) 99 points x k-factor {FACTORS:?}"),
    );
    for n in [2, 3] {
        for &factor in &FACTORS {
            for i in 1..=99 {
                let s = i as f64 / 100.0;
                let delta = 2.0 * (1.0 / s - 1.0);
                let (a, b) = symmetric_pair(n, 1.0, 1.0, delta)?;
                let inst = make_instance(a, b, factor * (2.0 + delta) / 2.0)?;
                let (want_weight, want_full, tol) = reduced_values(n, inst.sin_phi(), 1.0 / factor);
                let got = (ev.p_random_weight)(&inst)
                    .and_then(|w| Ok((w, (ev.fully_random_terms)(&inst)?.value)));
                match got {
                    Ok((w, f)) => check.record(
                        (w - want_weight).abs() <= tol
                            && (f - want_full).abs() <= REDUCTION_TOLERANCE,
                        || {
                            format!(
                                "{}: p_weight={} (want {}) p_full={} (want {})",
                                describe(&inst),
                                sig(w, 17),
                                sig(want_weight, 17),
                                sig(f, 17),
                                sig(want_full, 17)
                            )
                        },
                    ),
                    Err(e) => check.record(false, || format!("{}: {e}", describe(&inst))),
                }
            }
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasi_random_points_are_in_unit_cube() {
        for i in 0..1000 {
            assert!(quasi_random(i).iter().all(|u| (0.0..1.0).contains(u)));
        }
    }

    #[test]
    fn reductions_match_canonical_values() {
        let (w, f, _) = reduced_values(3, 0.5, 1.0);
        assert_eq!(w, 0.5);
        assert_eq!(f / 2.0, 0.0625);
        let (w, f, _) = reduced_values(2, 0.5, 1.0);
        assert!((w - 2.0 / 3.0).abs() < 1e-15);
        assert!((f - (3f64.sqrt() / PI - 1.0 / 3.0)).abs() < 1e-15);
    }
}
