//! Incomplete beta against an independent tanh-sinh quadrature of its integrand.

use ballsep::oracle::{beta_half_half, beta_one_half, reg_inc_beta_quadrature};
use ballsep::specfun::{reg_inc_beta_raw, BetaArgs};
use proptest::prelude::*;

const PARAMS: [f64; 5] = [0.5, 1.0, 2.5, 10.0, 50.0];

fn kappa_grid() -> impl Iterator<Item = f64> {
    (1..=99).map(|i| i as f64 / 100.0)
}

#[test]
fn oracle_reproduces_closed_forms() {
    // Sanity check of the oracle itself before trusting it.
    for k in kappa_grid() {
        assert!((reg_inc_beta_quadrature(k, 0.5, 0.5) - beta_half_half(k)).abs() < 1e-12);
        assert!((reg_inc_beta_quadrature(k, 1.0, 0.5) - beta_one_half(k)).abs() < 1e-12);
        assert!((reg_inc_beta_quadrature(k, 1.0, 1.0) - k).abs() < 1e-12);
    }
}

#[test]
fn agrees_with_quadrature_on_grid() {
    let mut worst: f64 = 0.0;
    for &y in &PARAMS {
        for &z in &PARAMS {
            for k in kappa_grid() {
                let got = reg_inc_beta_raw(k, y, z).unwrap();
                let want = reg_inc_beta_quadrature(k, y, z);
                let err = (got - want).abs();
                assert!(err <= 1e-10, "I({k}; {y}, {z}) = {got}, quadrature {want}");
                worst = worst.max(err);
            }
        }
    }
    eprintln!("worst |I - quadrature| = {worst:e}");
}

#[test]
fn symmetry_identity_on_grid() {
    for &y in &PARAMS {
        for &z in &PARAMS {
            for k in kappa_grid() {
                let lhs =
                    reg_inc_beta_raw(k, y, z).unwrap() + reg_inc_beta_raw(1.0 - k, z, y).unwrap();
                assert!((lhs - 1.0).abs() <= 1e-11, "κ={k} y={y} z={z}: {lhs}");
            }
        }
    }
}

#[test]
fn spec_examples() {
    assert_eq!(reg_inc_beta_raw(0.0, 3.0, 0.5).unwrap(), 0.0);
    let v = reg_inc_beta_raw(0.75, 0.5, 0.5).unwrap();
    assert!((v - 2.0 / 3.0).abs() < 1e-12);
    assert!((v - reg_inc_beta_quadrature(0.75, 0.5, 0.5)).abs() < 1e-10);
    let v = reg_inc_beta_raw(0.75, 1.0, 0.5).unwrap();
    assert!((v - 0.5).abs() < 1e-12);
    assert!((v - reg_inc_beta_quadrature(0.75, 1.0, 0.5)).abs() < 1e-10);
}

proptest! {
    #[test]
    fn monotone_in_kappa(
        y in 0.1f64..60.0,
        z in 0.1f64..60.0,
        a in 0.0f64..=1.0,
        b in 0.0f64..=1.0,
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let ilo = reg_inc_beta_raw(lo, y, z).unwrap();
        let ihi = reg_inc_beta_raw(hi, y, z).unwrap();
        prop_assert!(ilo <= ihi + 1e-14, "I({lo})={ilo} > I({hi})={ihi}");
        prop_assert!((0.0..=1.0).contains(&ilo));
    }

    #[test]
    fn random_points_match_quadrature(k in 0.001f64..0.999, y in 0.5f64..20.0, z in 0.5f64..20.0) {
        let got = reg_inc_beta_raw(k, y, z).unwrap();
        let want = reg_inc_beta_quadrature(k, y, z);
        prop_assert!((got - want).abs() <= 1e-10, "I({k}; {y}, {z}) = {got} vs {want}");
    }

    #[test]
    fn endpoints_exact(y in 0.01f64..1e4, z in 0.01f64..1e4) {
        prop_assert_eq!(reg_inc_beta_raw(0.0, y, z).unwrap(), 0.0);
        prop_assert_eq!(reg_inc_beta_raw(1.0, y, z).unwrap(), 1.0);
        prop_assert_eq!(BetaArgs::new(1.0 + 5e-15, y, z).unwrap().kappa(), 1.0);
    }
}
