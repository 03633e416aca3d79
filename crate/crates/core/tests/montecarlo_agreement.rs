//! Monte Carlo estimators against the closed forms on the worked examples.

use std::time::Instant;

use ballsep::montecarlo::{estimate_p_bias_oriented, AxisOrientation};
use ballsep::specfun::reg_inc_beta_raw;
use ballsep::{
    estimate_coupled, estimate_p_bias, estimate_p_full, estimate_p_weight, make_instance,
    p_fully_random, p_random_bias, p_random_weight, Ball, McConfig, SeparationInstance,
    DEFAULT_SEED,
};

fn instance(c: &[f64], r: f64, x: &[f64], p: f64, k: f64) -> SeparationInstance {
    make_instance(
        Ball::new(c.to_vec(), r).unwrap(),
        Ball::new(x.to_vec(), p).unwrap(),
        k,
    )
    .unwrap()
}

fn cfg(samples: u64) -> McConfig {
    McConfig::new(samples, DEFAULT_SEED, 8).unwrap()
}

#[test]
fn random_bias_examples() {
    let tight = instance(&[-2.0, 0.0], 1.0, &[2.0, 0.0], 1.0, 2.0);
    let est = estimate_p_bias(&tight, &cfg(1_000_000));
    assert!(est.within(0.5, 4.0), "{est:?}");
    let wide = instance(&[-2.0, 0.0], 1.0, &[2.0, 0.0], 1.0, 4.0);
    let est = estimate_p_bias(&wide, &cfg(1_000_000));
    assert!(est.within(0.25, 4.0), "{est:?}");
}

#[test]
fn reversed_axis_agrees_statistically() {
    let inst = instance(&[0.0, 0.0], 2.0, &[6.0, 0.0], 1.0, 6.0);
    let exact = p_random_bias(&inst).unwrap();
    let fwd = estimate_p_bias(&inst, &cfg(1_000_000));
    let rev = estimate_p_bias_oriented(&inst, &cfg(1_000_000), AxisOrientation::Reversed);
    assert!(
        fwd.within(exact, 4.0) && rev.within(exact, 4.0),
        "{fwd:?} {rev:?}"
    );
}

#[test]
fn random_weight_examples() {
    let n2 = instance(&[-2.0, 0.0], 1.0, &[2.0, 0.0], 1.0, 2.0);
    let est = estimate_p_weight(&n2, &cfg(1_000_000));
    assert!(est.within(2.0 / 3.0, 4.0), "{est:?}");

    let n3 = instance(&[0.0, 0.0, 0.0], 1.0, &[4.0, 0.0, 0.0], 1.0, 4.0);
    let est = estimate_p_weight(&n3, &cfg(1_000_000));
    assert!(est.within(0.5, 4.0), "{est:?}");

    // n = 50, sin φ = 0.9: 𝒬 = 0.19.
    let dist = 2.0 / 0.9;
    let mut c = vec![0.0; 50];
    let mut x = vec![0.0; 50];
    c[0] = -dist / 2.0;
    x[0] = dist / 2.0;
    let n50 = instance(&c, 1.0, &x, 1.0, dist / 2.0);
    let exact = reg_inc_beta_raw(0.19, 24.5, 0.5).unwrap();
    assert!((p_random_weight(&n50).unwrap() - exact).abs() < 1e-15);
    let est = estimate_p_weight(&n50, &cfg(200_000));
    assert!(est.within(exact, 4.0), "{est:?}");
}

#[test]
fn fully_random_examples() {
    let n3 = instance(&[0.0, 0.0, 0.0], 1.0, &[4.0, 0.0, 0.0], 1.0, 4.0);
    let start = Instant::now();
    let est = estimate_p_full(&n3, &cfg(2_000_000));
    eprintln!("2e6 fully random draws in n=3: {:?}", start.elapsed());
    assert!(est.within(0.0625, 4.0), "{est:?}");

    let n2 = instance(&[-2.0, 0.0], 1.0, &[2.0, 0.0], 1.0, 2.0);
    let est = estimate_p_full(&n2, &cfg(2_000_000));
    assert!(
        est.within(3f64.sqrt() / std::f64::consts::PI - 1.0 / 3.0, 4.0),
        "{est:?}"
    );
}

#[test]
fn coupled_draws_respect_domination() {
    for n in [2, 3, 8] {
        let mut c = vec![0.0; n];
        let mut x = vec![0.0; n];
        c[0] = -1.5;
        x[0] = 2.5;
        let inst = instance(&c, 1.0, &x, 0.5, 3.0);
        let est = estimate_coupled(&inst, &cfg(300_000));
        assert!(est.full.successes <= est.weight.successes);
        assert!(
            est.full.within(p_fully_random(&inst).unwrap(), 4.0),
            "{est:?}"
        );
        assert!(
            est.weight.within(p_random_weight(&inst).unwrap(), 4.0),
            "{est:?}"
        );
    }
}

#[test]
fn seed_determinism_and_chunk_invariance() {
    let inst = instance(&[0.0, 1.0, 0.0], 0.5, &[3.0, -1.0, 0.5], 1.0, 4.0);
    let base = estimate_coupled(&inst, &McConfig::new(123_457, 99, 1).unwrap());
    for chunks in [1, 2, 5, 16] {
        let cfg = McConfig::new(123_457, 99, chunks).unwrap();
        assert_eq!(estimate_coupled(&inst, &cfg), base);
    }
    let other = estimate_coupled(&inst, &McConfig::new(123_457, 100, 1).unwrap());
    assert_ne!(other, base);
}
