use ballsep::montecarlo::{estimate_p_bias, estimate_p_full, estimate_p_weight};
use ballsep::tessellation::miss_probability;
use ballsep::{
    asymptotic_envelope, estimate_all_pairs, p_fully_random, p_random_bias, p_random_weight,
    Estimate, McConfig, Mode, SeparationInstance, WidthPlan,
};
use serde::{Deserialize, Serialize};

use crate::args::{EstimateArgs, ExactArgs, McArgs, SweepArgs, TessellateArgs, Which};
use crate::format::{render, sig, TableRow};
use crate::instance::{
    build_instances, build_single, gap_from_sin_phi, parse_dims, parse_reals, symmetric_pair,
};
use crate::CliError;

const DEFAULT_ESTIMATE_SAMPLES: u64 = 1_000_000;
const DEFAULT_TESSELLATE_TRIALS: u64 = 10_000;
const MAX_DEFAULT_CHUNKS: u64 = 16;
/// Planned widths beyond this are reported without Monte Carlo verification.
const MAX_VERIFIED_WIDTH: u64 = 100_000;

/// Closed-form values for one instance. Shared by `exact` and `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactRecord {
    pub n: usize,
    pub r: f64,
    pub p: f64,
    pub delta: f64,
    pub k: f64,
    pub sin_phi: f64,
    pub q_value: f64,
    pub p_bias: f64,
    pub p_weight: f64,
    pub p_full: f64,
    pub envelope: f64,
    pub p_full_sqrt_n: f64,
}

impl ExactRecord {
    pub fn evaluate(inst: &SeparationInstance) -> Result<Self, CliError> {
        let n = inst.dimension();
        let p_full = p_fully_random(inst)?;
        Ok(Self {
            n,
            r: inst.ball_a().radius(),
            p: inst.ball_b().radius(),
            delta: inst.gap(),
            k: inst.bias_half_range(),
            sin_phi: inst.sin_phi(),
            q_value: inst.q_value(),
            p_bias: p_random_bias(inst)?,
            p_weight: p_random_weight(inst)?,
            p_full,
            envelope: asymptotic_envelope(n)?,
            p_full_sqrt_n: p_full * (n as f64).sqrt(),
        })
    }
}

impl TableRow for ExactRecord {
    fn headers() -> Vec<&'static str> {
        vec![
            "n",
            "r",
            "p",
            "delta",
            "k",
            "sin_phi",
            "q_value",
            "p_bias",
            "p_weight",
            "p_full",
            "envelope",
            "p_full_sqrt_n",
        ]
    }

    fn cells(&self) -> Vec<String> {
        let mut cells = vec![self.n.to_string()];
        cells.extend(
            [
                self.r,
                self.p,
                self.delta,
                self.k,
                self.sin_phi,
                self.q_value,
                self.p_bias,
                self.p_weight,
                self.p_full,
                self.envelope,
                self.p_full_sqrt_n,
            ]
            .iter()
            .map(|&v| sig(v, 6)),
        );
        cells
    }
}

pub fn exact(args: &ExactArgs) -> Result<String, CliError> {
    let inst = build_single(&args.instance)?;
    render(&[ExactRecord::evaluate(&inst)?], args.output.format)
}

/// Every (n, δ) cell of a sweep, sorted. All cells share one `k`, so `p_bias`
/// is linear in `δ` across the sweep.
pub fn sweep_records(args: &SweepArgs) -> Result<Vec<ExactRecord>, CliError> {
    let dims = parse_dims(&args.dim)?;
    for (flag, v) in [("--r", args.r), ("--p", args.p)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::usage(format!(
                "{flag}: radius {v} must be positive"
            )));
        }
    }
    let radii = args.r + args.p;
    let mut deltas = match (&args.delta, &args.sinphi) {
        (Some(list), None) => {
            let ds = parse_reals(list, "--delta")?;
            if let Some(d) = ds.iter().find(|&&d| d <= 0.0) {
                return Err(CliError::usage(format!(
                    "--delta: {d} is not positive; balls overlap or touch (delta <= 0)"
                )));
            }
            ds
        }
        (None, Some(list)) => parse_reals(list, "--sinphi")?
            .into_iter()
            .map(|s| gap_from_sin_phi(s, radii))
            .collect::<Result<_, _>>()?,
        _ => {
            return Err(CliError::usage(
                "sweep needs exactly one of --delta or --sinphi",
            ))
        }
    };
    deltas.sort_by(f64::total_cmp);
    deltas.dedup();
    let k = match args.k {
        Some(k) => k,
        None => {
            if !(args.k_factor.is_finite() && args.k_factor >= 1.0) {
                return Err(CliError::usage(format!(
                    "--k-factor: {} must be finite and >= 1",
                    args.k_factor
                )));
            }
            let widest = deltas.last().copied().unwrap_or(0.0);
            args.k_factor * (radii + widest) / 2.0
        }
    };
    let mut records = Vec::with_capacity(dims.len() * deltas.len());
    for &n in &dims {
        for &delta in &deltas {
            let (a, b) = symmetric_pair(n, args.r, args.p, delta)?;
            records.push(ExactRecord::evaluate(&ballsep::make_instance(a, b, k)?)?);
        }
    }
    Ok(records)
}

pub fn sweep(args: &SweepArgs) -> Result<String, CliError> {
    render(&sweep_records(args)?, args.format)
}

fn mc_config(mc: &McArgs, default_samples: u64) -> Result<McConfig, CliError> {
    let samples = mc.samples.unwrap_or(default_samples);
    let chunks = mc
        .chunks
        .unwrap_or_else(|| samples.clamp(1, MAX_DEFAULT_CHUNKS) as usize);
    Ok(McConfig::new(samples, mc.seed, chunks)?)
}

/// One Monte Carlo estimator next to its closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub estimator: String,
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub successes: u64,
    pub mean: f64,
    pub std_error: f64,
    pub exact: f64,
    pub z: f64,
}

impl TableRow for EstimateRecord {
    fn headers() -> Vec<&'static str> {
        vec![
            "estimator",
            "n",
            "samples",
            "seed",
            "successes",
            "mean",
            "std_error",
            "exact",
            "z",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.estimator.clone(),
            self.n.to_string(),
            self.samples.to_string(),
            self.seed.to_string(),
            self.successes.to_string(),
            sig(self.mean, 6),
            sig(self.std_error, 6),
            sig(self.exact, 6),
            sig(self.z, 6),
        ]
    }
}

fn estimate_record(
    name: &str,
    inst: &SeparationInstance,
    est: Estimate,
    exact: f64,
    seed: u64,
) -> EstimateRecord {
    EstimateRecord {
        estimator: name.into(),
        n: inst.dimension(),
        samples: est.samples,
        seed,
        successes: est.successes,
        mean: est.mean,
        std_error: est.std_error,
        exact,
        z: est.z_score(exact),
    }
}

pub fn estimate_records(args: &EstimateArgs) -> Result<Vec<EstimateRecord>, CliError> {
    let inst = build_single(&args.instance)?;
    let cfg = mc_config(&args.mc, DEFAULT_ESTIMATE_SAMPLES)?;
    let seed = cfg.seed();
    let mut rows = Vec::new();
    if matches!(args.which, Which::Full | Which::All) {
        let est = estimate_p_full(&inst, &cfg);
        rows.push(estimate_record(
            "full",
            &inst,
            est,
            p_fully_random(&inst)?,
            seed,
        ));
    }
    if matches!(args.which, Which::Weight | Which::All) {
        let est = estimate_p_weight(&inst, &cfg);
        rows.push(estimate_record(
            "weight",
            &inst,
            est,
            p_random_weight(&inst)?,
            seed,
        ));
    }
    if matches!(args.which, Which::Bias | Which::All) {
        let est = estimate_p_bias(&inst, &cfg);
        rows.push(estimate_record(
            "bias",
            &inst,
            est,
            p_random_bias(&inst)?,
            seed,
        ));
    }
    Ok(rows)
}

pub fn estimate(args: &EstimateArgs) -> Result<String, CliError> {
    render(&estimate_records(args)?, args.output.format)
}

/// Outcome of a tessellation run, with or without width planning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TessellateRecord {
    pub mode: String,
    pub pairs: usize,
    pub n: usize,
    pub target: Option<f64>,
    pub width: u64,
    /// Smallest closed-form per-pair probability for the mode.
    pub per_pair_probability: f64,
    /// `1 − Σ (1 − pᵢ)^width`, floored at 0. Exact for a single pair.
    pub predicted_min: f64,
    pub trials: Option<u64>,
    pub seed: u64,
    pub successes: Option<u64>,
    pub mean: Option<f64>,
    pub std_error: Option<f64>,
}

impl TableRow for TessellateRecord {
    fn headers() -> Vec<&'static str> {
        vec![
            "mode",
            "pairs",
            "n",
            "target",
            "width",
            "per_pair_probability",
            "predicted_min",
            "trials",
            "seed",
            "successes",
            "mean",
            "std_error",
        ]
    }

    fn cells(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| sig(v, 6));
        let opt_u = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        vec![
            self.mode.clone(),
            self.pairs.to_string(),
            self.n.to_string(),
            opt(self.target),
            self.width.to_string(),
            sig(self.per_pair_probability, 6),
            sig(self.predicted_min, 6),
            opt_u(self.trials),
            self.seed.to_string(),
            opt_u(self.successes),
            opt(self.mean),
            opt(self.std_error),
        ]
    }
}

fn mode_probability(mode: Mode, inst: &SeparationInstance) -> Result<f64, CliError> {
    Ok(match mode {
        Mode::FullyRandom => p_fully_random(inst)?,
        Mode::RandomWeight => p_random_weight(inst)?,
        Mode::RandomBias => p_random_bias(inst)?,
    })
}

pub fn tessellate_record(args: &TessellateArgs) -> Result<TessellateRecord, CliError> {
    let instances = build_instances(&args.instance)?;
    let n = instances[0].dimension();
    if let Some(bad) = instances.iter().find(|i| i.dimension() != n) {
        return Err(CliError::usage(format!(
            "all pairs must share one dimension: found {n} and {}",
            bad.dimension()
        )));
    }
    let mode = Mode::from(args.mode);
    let cfg = mc_config(&args.mc, DEFAULT_TESSELLATE_TRIALS)?;
    let probs: Vec<f64> = instances
        .iter()
        .map(|i| mode_probability(mode, i))
        .collect::<Result<_, _>>()?;
    let worst = probs.iter().copied().fold(f64::INFINITY, f64::min);

    let width = match (args.width, args.target) {
        (Some(_), Some(_)) => {
            return Err(CliError::usage("give exactly one of --width or --target"))
        }
        (None, None) => return Err(CliError::usage("tessellate needs --width or --target")),
        (Some(0), None) => return Err(CliError::usage("width must be >= 1")),
        (Some(w), None) if w as u64 > MAX_VERIFIED_WIDTH => {
            return Err(CliError::usage(format!(
                "width must be <= {MAX_VERIFIED_WIDTH}"
            )))
        }
        (Some(w), None) => w as u64,
        (None, Some(t)) => {
            if !(t > 0.0 && t < 1.0) {
                return Err(CliError::usage(format!("--target: {t} is not in (0, 1)")));
            }
            if worst <= 0.0 {
                return Err(CliError::usage(
                    "per-pair probability is 0 to double precision; no width reaches the target",
                ));
            }
            if worst >= 1.0 {
                1
            } else if probs.len() == 1 {
                WidthPlan::new(worst, t, mode)?.width
            } else {
                WidthPlan::for_pairs(&probs, t, mode)?.width
            }
        }
    };

    let misses: f64 = probs.iter().map(|&p| miss_probability(p, width)).sum();
    let verified = if width <= MAX_VERIFIED_WIDTH {
        Some(estimate_all_pairs(&instances, width as usize, mode, &cfg)?)
    } else {
        None
    };
    Ok(TessellateRecord {
        mode: mode.as_str().into(),
        pairs: instances.len(),
        n,
        target: args.target,
        width,
        per_pair_probability: worst,
        predicted_min: (1.0 - misses).max(0.0),
        trials: verified.map(|e| e.samples),
        seed: cfg.seed(),
        successes: verified.map(|e| e.successes),
        mean: verified.map(|e| e.mean),
        std_error: verified.map(|e| e.std_error),
    })
}

pub fn tessellate(args: &TessellateArgs) -> Result<String, CliError> {
    render(&[tessellate_record(args)?], args.output.format)
}
