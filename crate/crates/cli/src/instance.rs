//! Turning command-line flags into validated separation instances.

use ballsep::geometry::norm;
use ballsep::{make_instance, Ball, SeparationInstance};

use crate::args::InstanceArgs;
use crate::CliError;

/// Parses a comma separated list of reals such as `-2,0,1.5`.
pub fn parse_reals(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let items: Vec<&str> = s.split(',').map(str::trim).collect();
    if items.iter().any(|t| t.is_empty()) {
        return Err(CliError::usage(format!("{what}: empty entry in '{s}'")));
    }
    items
        .into_iter()
        .map(|t| {
            let v: f64 = t
                .parse()
                .map_err(|_| CliError::usage(format!("{what}: '{t}' is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::usage(format!("{what}: '{t}' is not finite")))
            }
        })
        .collect()
}

/// Parses dimensions like `2,3,10..20`. Ranges are inclusive.
pub fn parse_dims(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = |t: &str| CliError::usage(format!("--dim: '{t}' is not a dimension or range"));
    let mut dims = Vec::new();
    for item in s.split(',').map(str::trim) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: usize = lo.trim().parse().map_err(|_| bad(item))?;
            let hi: usize = hi.trim().parse().map_err(|_| bad(item))?;
            if lo > hi {
                return Err(CliError::usage(format!("--dim: empty range '{item}'")));
            }
            if hi - lo >= 1_000_000 {
                return Err(CliError::usage(format!(
                    "--dim: range '{item}' is too long"
                )));
            }
            dims.extend(lo..=hi);
        } else {
            dims.push(item.parse().map_err(|_| bad(item))?);
        }
    }
    if let Some(&n) = dims.iter().find(|&&n| n < 2) {
        return Err(CliError::usage(format!("--dim: dimension {n} is below 2")));
    }
    dims.sort_unstable();
    dims.dedup();
    Ok(dims)
}

/// `δ = (p + r)(1/s − 1)`, the gap that gives `sin φ = s`.
pub fn gap_from_sin_phi(s: f64, radii_sum: f64) -> Result<f64, CliError> {
    if !(s > 0.0 && s < 1.0) {
        return Err(CliError::usage(format!("--sinphi: {s} is not in (0, 1)")));
    }
    Ok(radii_sum * (1.0 / s - 1.0))
}

fn check_factor(f: f64) -> Result<f64, CliError> {
    if f.is_finite() && f >= 1.0 {
        Ok(f)
    } else {
        Err(CliError::usage(format!(
            "--k-factor: {f} must be finite and >= 1"
        )))
    }
}

/// Balls of radii `r`, `p` centered at `∓D/2 · e₁` in `ℝⁿ`, `D = r + p + δ`.
pub fn symmetric_pair(n: usize, r: f64, p: f64, delta: f64) -> Result<(Ball, Ball), CliError> {
    if n < 2 {
        return Err(CliError::usage(format!("--dim: dimension {n} is below 2")));
    }
    if n > 1_000_000 {
        return Err(CliError::usage(format!(
            "--dim: dimension {n} is too large"
        )));
    }
    let half = (r + p + delta) / 2.0;
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    c[0] = -half;
    x[0] = half;
    Ok((Ball::new(c, r)?, Ball::new(x, p)?))
}

fn per_pair<T: Copy>(
    values: &[T],
    pairs: usize,
    default: T,
    flag: &str,
) -> Result<Vec<T>, CliError> {
    match values.len() {
        0 => Ok(vec![default; pairs]),
        1 => Ok(vec![values[0]; pairs]),
        m if m == pairs => Ok(values.to_vec()),
        m => Err(CliError::usage(format!(
            "{flag} given {m} times for {pairs} pairs; give it once or once per pair"
        ))),
    }
}

/// Builds every pair described by the flags. All pairs share one `k`: the
/// explicit `--k`, or `k-factor` times the largest center norm over all pairs.
pub fn build_instances(a: &InstanceArgs) -> Result<Vec<SeparationInstance>, CliError> {
    let factor = check_factor(a.k_factor.unwrap_or(1.0))?;
    let balls = if let Some(n) = a.dim {
        let s = a
            .sinphi
            .ok_or_else(|| CliError::usage("--dim needs --sinphi to place the balls"))?;
        if a.r.len() > 1 || a.p.len() > 1 {
            return Err(CliError::usage("the generator takes one --r and one --p"));
        }
        let r = a.r.first().copied().unwrap_or(1.0);
        let p = a.p.first().copied().unwrap_or(1.0);
        check_radius(r, "--r")?;
        check_radius(p, "--p")?;
        vec![symmetric_pair(n, r, p, gap_from_sin_phi(s, r + p)?)?]
    } else {
        if a.c.is_empty() && a.x.is_empty() {
            return Err(CliError::usage(
                "describe the balls with --c/--x (and --r/--p) or with --dim and --sinphi",
            ));
        }
        if a.c.len() != a.x.len() {
            return Err(CliError::usage(format!(
                "--c given {} times but --x given {} times",
                a.c.len(),
                a.x.len()
            )));
        }
        let pairs = a.c.len();
        let rs = per_pair(&a.r, pairs, 1.0, "--r")?;
        let ps = per_pair(&a.p, pairs, 1.0, "--p")?;
        let mut balls = Vec::with_capacity(pairs);
        for i in 0..pairs {
            let c = parse_reals(&a.c[i], "--c")?;
            let x = parse_reals(&a.x[i], "--x")?;
            if c.len() != x.len() {
                return Err(CliError::usage(format!(
                    "--c has {} coordinates but --x has {}",
                    c.len(),
                    x.len()
                )));
            }
            check_radius(rs[i], "--r")?;
            check_radius(ps[i], "--p")?;
            balls.push((Ball::new(c, rs[i])?, Ball::new(x, ps[i])?));
        }
        balls
    };
    let k = match a.k {
        Some(k) => k,
        None => {
            factor
                * balls
                    .iter()
                    .map(|(b1, b2)| norm(b1.center()).max(norm(b2.center())))
                    .fold(0.0, f64::max)
        }
    };
    balls
        .into_iter()
        .map(|(b1, b2)| make_instance(b1, b2, k).map_err(CliError::from))
        .collect()
}

/// The single pair required by commands that take exactly one.
pub fn build_single(a: &InstanceArgs) -> Result<SeparationInstance, CliError> {
    let mut all = build_instances(a)?;
    if all.len() != 1 {
        return Err(CliError::usage(format!(
            "this command takes one pair of balls, got {}",
            all.len()
        )));
    }
    Ok(all.remove(0))
}

fn check_radius(r: f64, flag: &str) -> Result<(), CliError> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "{flag}: radius {r} must be positive"
        )))
    }
}
