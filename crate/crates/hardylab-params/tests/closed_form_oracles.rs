//! Oracle tests pinning the closed-form layer against independent routes:
//! Gamma-function evaluations of the radial integrals, finite differences for
//! the profile identity, and exact algebra for the exponent pair.

use approx::assert_relative_eq;
use hardylab_params::{
    alpha_exponents, cone_hardy_constant, gamma_from_alpha, kelvin_transform,
    laplacian_identity_residual, sobolev_constant, sphere_area, ClosedFormSolution,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use statrs::function::gamma::gamma;

/// ∫_0^∞ ρ^{a-1} (1+ρ²)^{-b} dρ = Γ(a/2)Γ(b-a/2) / (2Γ(b))
fn beta_radial_integral(a: f64, b: f64) -> f64 {
    gamma(a / 2.0) * gamma(b - a / 2.0) / (2.0 * gamma(b))
}

#[test]
fn sphere_area_recursion_matches_gamma_formula() {
    for m in 0..=9 {
        let exact = 2.0 * std::f64::consts::PI.powf((m as f64 + 1.0) / 2.0)
            / gamma((m as f64 + 1.0) / 2.0);
        assert_relative_eq!(sphere_area(m), exact, max_relative = 1e-13);
    }
}

#[test]
fn sobolev_constant_matches_gamma_closed_form() {
    for n in 3..=7usize {
        let nf = n as f64;
        let area = sphere_area(n - 1);
        let grad = area * (nf - 2.0).powi(2) * beta_radial_integral(nf + 2.0, nf);
        let den = area * beta_radial_integral(nf, nf);
        let exact = grad / den.powf((nf - 2.0) / nf);
        assert_relative_eq!(sobolev_constant(n).unwrap(), exact, max_relative = 1e-9);
    }
}

#[test]
fn exponent_pair_identities_on_grid() {
    // 10 dimensions x 10 gamma values per dimension, spanning negative gamma
    // through just below n²/4.
    let mut checked = 0;
    for n in 3..=12usize {
        let limit = (n * n) as f64 / 4.0;
        for i in 0..10 {
            let gamma_val = -3.0 + (limit - 1e-6 + 3.0) * i as f64 / 9.0;
            let p = alpha_exponents(n, gamma_val).unwrap();
            assert_relative_eq!(p.sum(), n as f64, max_relative = 1e-13);
            assert_relative_eq!(p.product(), gamma_val, max_relative = 1e-12, epsilon = 1e-12);
            assert_relative_eq!(
                gamma_from_alpha(n, p.minus),
                gamma_val,
                max_relative = 1e-12,
                epsilon = 1e-12
            );
            let threshold = ((n * n) as f64 - 1.0) / 4.0;
            assert_eq!(gamma_val < threshold, p.gap() > 1.0);
            checked += 1;
        }
    }
    assert_eq!(checked, 100);
}

#[test]
fn cone_constants_are_monotone_in_opening() {
    // Quadrant cones nest downward as k grows, so the constants must increase.
    for n in 3..=6usize {
        let mut prev = -1.0;
        for k in 0..=n {
            let c = cone_hardy_constant(n, k).unwrap();
            assert!(c > prev);
            prev = c;
        }
    }
}

#[test]
fn profile_identity_residual_battery() {
    let pairs = [(3usize, 2.0), (3, 2.24), (3, -1.0), (4, 3.0), (4, 3.99), (5, 6.0)];
    let mut rng = StdRng::seed_from_u64(42);
    for &(n, g) in &pairs {
        let p = alpha_exponents(n, g).unwrap();
        for alpha in [p.minus, p.plus] {
            for _ in 0..25 {
                let x = sample_point(&mut rng, n);
                let res = laplacian_identity_residual(alpha, n, &x, 1e-4);
                assert!(
                    res < 1e-6,
                    "residual {res:.3e} at n={n}, gamma={g}, alpha={alpha}"
                );
            }
        }
    }
}

#[test]
fn kelvin_is_an_involution_and_swaps_exponents() {
    let mut rng = StdRng::seed_from_u64(7);
    for &(n, g) in &[(3usize, 2.0_f64), (4, 3.5), (5, 4.0)] {
        let p = alpha_exponents(n, g).unwrap();
        let minus = ClosedFormSolution::new(p.minus);
        let plus = ClosedFormSolution::new(p.plus);

        let swapped = kelvin_transform(move |x: &[f64]| minus.eval(x), n);
        let back = kelvin_transform(kelvin_transform(move |x: &[f64]| minus.eval(x), n), n);
        for _ in 0..40 {
            let x = sample_point(&mut rng, n);
            assert_relative_eq!(swapped(&x), plus.eval(&x), max_relative = 1e-12);
            assert_relative_eq!(back(&x), minus.eval(&x), max_relative = 1e-12);
        }
    }
}

/// Random point with radius in [0.8, 1.6] and x₁/|x| bounded away from 0,
/// where the h = 1e-4 difference quotients resolve the identity cleanly.
fn sample_point(rng: &mut StdRng, n: usize) -> Vec<f64> {
    loop {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r < 1e-3 {
            continue;
        }
        x[0] = x[0].abs();
        if x[0] / r < 0.2 {
            continue;
        }
        let target = rng.gen_range(0.8_f64..1.6).ln().exp();
        for v in x.iter_mut() {
            *v *= target / r;
        }
        return x;
    }
}
