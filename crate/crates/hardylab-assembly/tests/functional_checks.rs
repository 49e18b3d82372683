//! Nonlinear functional, substitution identity, and weighted inequality
//! margin checked against finite differences, refinement, and scaling.

use approx::assert_relative_eq;
use hardylab_assembly::{
    ckn_margin, hardy_identity_residual, hs_functional, AssemblyError, FreeMap, Quadrature,
};
use hardylab_domain::{
    generate_mesh, make_domain, CurveSegment, GeneratingCurve, Mesh, MeshOptions, Preset,
};
use hardylab_params::ClosedFormSolution;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn half_ball_mesh(target_h: f64) -> Mesh {
    let dom = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
    generate_mesh(&dom, target_h, &MeshOptions::default()).unwrap()
}

fn random_free_field(mesh: &Mesh, rng: &mut StdRng) -> Vec<f64> {
    let fm = FreeMap::from_mesh(mesh);
    let free: Vec<f64> = (0..fm.n_free()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    fm.scatter(&free)
}

/// C^1 bump supported in the disk of radius `R0` about `(z0, r0)`.
fn bump_field(mesh: &Mesh, z0: f64, r0: f64, big_r: f64) -> Vec<f64> {
    mesh.nodes
        .iter()
        .map(|p| {
            let d2 = ((p[0] - z0) / big_r).powi(2) + ((p[1] - r0) / big_r).powi(2);
            if d2 < 1.0 {
                (1.0 - d2) * (1.0 - d2)
            } else {
                0.0
            }
        })
        .collect()
}

#[test]
fn critical_functional_vanishes_on_the_zero_field() {
    let mesh = half_ball_mesh(0.2);
    let quad = Quadrature::for_dimension(3);
    let u = vec![0.0; mesh.nodes.len()];
    let (value, grad) = hs_functional(&mesh, 3, 1.0, &u, &quad).unwrap();
    assert_eq!(value, 0.0);
    assert!(grad.iter().all(|&g| g == 0.0));
}

#[test]
fn critical_functional_is_homogeneous_of_critical_degree() {
    let mesh = half_ball_mesh(0.15);
    let quad = Quadrature::for_dimension(3);
    let mut rng = StdRng::seed_from_u64(3);
    let u = random_free_field(&mesh, &mut rng);
    for s in [0.0, 0.7, 1.5] {
        let p2s = 2.0 * (3.0 - s) / (3.0 - 2.0);
        let (f1, g1) = hs_functional(&mesh, 3, s, &u, &quad).unwrap();
        let scaled: Vec<f64> = u.iter().map(|v| -2.5 * v).collect();
        let (f2, g2) = hs_functional(&mesh, 3, s, &scaled, &quad).unwrap();
        assert_relative_eq!(f2, 2.5_f64.powf(p2s) * f1, max_relative = 1e-12);
        // gradient picks up |c|^{2*-2} c
        let gscale = -2.5 * 2.5_f64.powf(p2s - 2.0);
        for (a, b) in g1.iter().zip(&g2) {
            assert_relative_eq!(*b, gscale * a, max_relative = 1e-11, epsilon = 1e-13);
        }
    }
}

#[test]
fn critical_functional_gradient_matches_central_differences() {
    let mesh = half_ball_mesh(0.15);
    let quad = Quadrature::for_dimension(3);
    let mut rng = StdRng::seed_from_u64(17);
    let h = 1e-5;
    for s in [0.0, 0.5, 1.0, 1.9] {
        let u = random_free_field(&mesh, &mut rng);
        let v = random_free_field(&mesh, &mut rng);
        let (_, grad) = hs_functional(&mesh, 3, s, &u, &quad).unwrap();
        let directional: f64 = grad.iter().zip(&v).map(|(g, w)| g * w).sum();
        let up: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a + h * b).collect();
        let dn: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a - h * b).collect();
        let (fp, _) = hs_functional(&mesh, 3, s, &up, &quad).unwrap();
        let (fm, _) = hs_functional(&mesh, 3, s, &dn, &quad).unwrap();
        let fd = (fp - fm) / (2.0 * h);
        assert_relative_eq!(fd, directional, max_relative = 1e-5);
    }
}

#[test]
fn critical_functional_satisfies_the_euler_identity() {
    // testing the gradient against u itself recovers 2*(s) F(u) exactly
    let mesh = half_ball_mesh(0.15);
    let quad = Quadrature::for_dimension(3);
    let mut rng = StdRng::seed_from_u64(29);
    let u = random_free_field(&mesh, &mut rng);
    for s in [0.0, 1.0, 1.9] {
        let p2s = 2.0 * (3.0 - s) / (3.0 - 2.0);
        let (f, grad) = hs_functional(&mesh, 3, s, &u, &quad).unwrap();
        let pairing: f64 = grad.iter().zip(&u).map(|(g, w)| g * w).sum();
        assert_relative_eq!(pairing, p2s * f, max_relative = 1e-12);
    }
}

#[test]
fn substitution_identity_residual_vanishes_for_the_zero_field() {
    let mesh = half_ball_mesh(0.2);
    let quad = Quadrature::for_dimension(3);
    let rho = ClosedFormSolution::new(1.5);
    let v = vec![0.0; mesh.nodes.len()];
    assert_eq!(hardy_identity_residual(&mesh, 3, &rho, &v, &quad).unwrap(), 0.0);
}

#[test]
fn substitution_identity_residual_shrinks_under_refinement() {
    let quad = Quadrature::for_dimension(3);
    let rho = ClosedFormSolution::new(1.5);
    let mut residuals = Vec::new();
    for target_h in [0.2, 0.1] {
        let mesh = half_ball_mesh(target_h);
        let v = bump_field(&mesh, 0.45, 0.35, 0.3);
        residuals.push(hardy_identity_residual(&mesh, 3, &rho, &v, &quad).unwrap());
    }
    assert!(
        residuals[0] < 0.05,
        "coarse-mesh identity defect {:.3e} unexpectedly large",
        residuals[0]
    );
    assert!(
        residuals[1] < residuals[0],
        "defect failed to shrink under refinement: {residuals:?}"
    );
}

#[test]
fn substitution_identity_rejects_fields_loading_the_origin() {
    let mesh = half_ball_mesh(0.2);
    let quad = Quadrature::for_dimension(3);
    let rho = ClosedFormSolution::new(1.5);
    let mut v = vec![0.0; mesh.nodes.len()];
    v[mesh.origin_node().unwrap()] = 1.0;
    assert!(matches!(
        hardy_identity_residual(&mesh, 3, &rho, &v, &quad),
        Err(AssemblyError::WeightSign { .. })
    ));
}

#[test]
fn substitution_identity_rejects_nonpositive_weights() {
    // body whose meridian section bulges into z < 0, where the model weight
    // changes sign; the lobe is a half-disk so the pocket is fat enough to
    // hold mesh nodes
    let curve = GeneratingCurve::new(vec![
        CurveSegment::line([0.0, 0.0], [0.0, 0.6]),
        CurveSegment::arc([0.0, 0.6], [0.0, 1.2], [0.0, 0.9], false),
        CurveSegment::line([0.0, 1.2], [1.0, 1.2]),
        CurveSegment::line([1.0, 1.2], [1.0, 0.0]),
    ]);
    let dom = make_domain(3, &Preset::Custom { curve }).unwrap();
    let mesh = generate_mesh(&dom, 0.2, &MeshOptions::default()).unwrap();
    let fm = FreeMap::from_mesh(&mesh);
    let worst = fm
        .node_of_free
        .iter()
        .copied()
        .min_by(|&a, &b| mesh.nodes[a][0].total_cmp(&mesh.nodes[b][0]))
        .unwrap();
    assert!(mesh.nodes[worst][0] < 0.0, "wedge mesh has no node with z < 0");
    let mut v = vec![0.0; mesh.nodes.len()];
    v[worst] = 1.0;
    let quad = Quadrature::for_dimension(3);
    let rho = ClosedFormSolution::new(1.5);
    match hardy_identity_residual(&mesh, 3, &rho, &v, &quad) {
        Err(AssemblyError::WeightSign { z, .. }) => assert!(z <= 0.0),
        other => panic!("expected a weight-sign error, got {other:?}"),
    }
}

#[test]
fn weighted_margin_stays_positive_over_a_random_battery() {
    let mesh = half_ball_mesh(0.15);
    let quad = Quadrature::for_dimension(3);
    let mut rng = StdRng::seed_from_u64(41);
    // 1.25 and 2.25 are exact in binary, so b - a sits exactly on the
    // admissible endpoint 1
    let exponents = [(-0.5, -0.5), (-0.5, 0.5), (0.4, 0.9), (1.25, 2.25), (1.4, 1.4)];
    let mut checked = 0;
    for (a, b) in exponents {
        for _ in 0..10 {
            let u = random_free_field(&mesh, &mut rng);
            let margin = ckn_margin(&mesh, 3, a, b, &u, &quad).unwrap();
            assert!(
                margin.is_finite() && margin > 0.0,
                "margin {margin:.3e} for a = {a}, b = {b}"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 50);
}

#[test]
fn weighted_margin_reports_infinity_for_the_zero_field() {
    let mesh = half_ball_mesh(0.2);
    let quad = Quadrature::for_dimension(3);
    let u = vec![0.0; mesh.nodes.len()];
    assert_eq!(ckn_margin(&mesh, 3, 0.5, 1.0, &u, &quad).unwrap(), f64::INFINITY);
}

#[test]
fn weighted_margin_is_scale_invariant() {
    let mesh = half_ball_mesh(0.15);
    let quad = Quadrature::for_dimension(3);
    let mut rng = StdRng::seed_from_u64(43);
    let u = random_free_field(&mesh, &mut rng);
    let scaled: Vec<f64> = u.iter().map(|v| 37.5 * v).collect();
    let m1 = ckn_margin(&mesh, 3, 0.3, 1.0, &u, &quad).unwrap();
    let m2 = ckn_margin(&mesh, 3, 0.3, 1.0, &scaled, &quad).unwrap();
    assert_relative_eq!(m1, m2, max_relative = 1e-12);
}

#[test]
fn weighted_margin_rejects_inadmissible_exponents() {
    let mesh = half_ball_mesh(0.2);
    let quad = Quadrature::for_dimension(3);
    let u = vec![0.0; mesh.nodes.len()];
    for (a, b) in [(1.5, 2.0), (0.3, 1.5), (0.3, 0.1), (f64::NAN, 0.5)] {
        assert!(matches!(
            ckn_margin(&mesh, 3, a, b, &u, &quad),
            Err(AssemblyError::BadExponent(_))
        ));
    }
}

#[test]
fn exponent_preconditions_are_enforced_uniformly() {
    let mesh = half_ball_mesh(0.2);
    let quad = Quadrature::for_dimension(3);
    let u = vec![0.0; mesh.nodes.len()];
    assert!(matches!(
        hs_functional(&mesh, 3, 2.0, &u, &quad),
        Err(AssemblyError::BadExponent(_))
    ));
    assert!(matches!(
        hs_functional(&mesh, 3, -0.1, &u, &quad),
        Err(AssemblyError::BadExponent(_))
    ));
    assert!(matches!(
        hs_functional(&mesh, 2, 1.0, &u, &quad),
        Err(AssemblyError::Dimension(2))
    ));
}
