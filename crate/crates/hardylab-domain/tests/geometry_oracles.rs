//! Independent oracles for the geometric queries: curvature recovered from
//! finite differences of the boundary graph (itself found by bisecting the
//! membership test), distance checked against dense curve sampling, and the
//! closed forms swept over parameter grids.

use hardylab_domain::{make_domain, AxisymmetricDomain, CurveSegment, GeneratingCurve, Preset};

/// Boundary height `psi(r)`: the z where the vertical line at radius r crosses
/// from outside to inside, bisected from the bracket [-r, r]. Valid near the
/// origin where the boundary is a graph over the radius.
fn boundary_height(dom: &AxisymmetricDomain, r: f64) -> f64 {
    let (mut lo, mut hi) = (-r, r);
    assert!(!dom.contains([lo, r]), "bracket low end must be outside");
    assert!(dom.contains([hi, r]), "bracket high end must be inside");
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        if dom.contains([mid, r]) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Estimate of `psi''(0)` with one Richardson step; the expansion of
/// 2 psi(r) / r^2 contains only even powers, so the step removes the r^2 term.
fn psi_second_derivative(dom: &AxisymmetricDomain, r: f64) -> f64 {
    let a = 2.0 * boundary_height(dom, r) / (r * r);
    let half = 2.0 * boundary_height(dom, r / 2.0) / (r * r / 4.0);
    (4.0 * half - a) / 3.0
}

#[test]
fn curvature_formula_is_exact_on_radius_grids() {
    for n in [3usize, 4, 5, 7] {
        let n1 = (n - 1) as f64;
        for k in 0..20 {
            let radius = 0.1 + 0.35 * k as f64;
            let dom = make_domain(n, &Preset::TangentBall { radius }).unwrap();
            let h = dom.mean_curvature_at_origin().unwrap();
            assert!((h - n1 / radius).abs() < 1e-10, "n={n} R={radius}: {h}");
        }
        for k in 1..12 {
            let delta = 0.05 * k as f64;
            let dom = make_domain(n, &Preset::ChoppedBall { radius: 1.0, delta }).unwrap();
            let h = dom.mean_curvature_at_origin().unwrap();
            let want = -4.0 * n1 / delta;
            assert!((h - want).abs() < 1e-10 * want.abs(), "n={n} delta={delta}: {h}");
        }
        for k in 0..8 {
            let amplitude = -0.35 + 0.1 * k as f64;
            let dom = make_domain(
                n,
                &Preset::BumpedHalfBall { radius: 1.0, amplitude, bump_radius: 0.5 },
            )
            .unwrap();
            let h = dom.mean_curvature_at_origin().unwrap();
            assert!((h + 2.0 * amplitude * n1).abs() < 1e-10, "n={n} t={amplitude}: {h}");
        }
        let half = make_domain(n, &Preset::HalfBall { radius: 1.7 }).unwrap();
        assert_eq!(half.mean_curvature_at_origin().unwrap(), 0.0);
    }
}

#[test]
fn curvature_matches_finite_differences_of_the_boundary_graph() {
    let n = 3;
    let cases: Vec<(Preset, f64, f64)> = vec![
        (Preset::TangentBall { radius: 1.0 }, 1e-3, 1e-7),
        (Preset::TangentBall { radius: 2.5 }, 1e-3, 1e-7),
        (Preset::HalfBall { radius: 1.0 }, 1e-3, 1e-9),
        (Preset::ChoppedBall { radius: 1.0, delta: 0.4 }, 8e-3, 1e-5),
        (Preset::ChoppedBall { radius: 1.0, delta: 0.1 }, 2e-3, 1e-4),
        (Preset::BumpedHalfBall { radius: 1.0, amplitude: 0.3, bump_radius: 0.5 }, 1e-3, 1e-7),
        (Preset::BumpedHalfBall { radius: 1.0, amplitude: -0.2, bump_radius: 0.4 }, 1e-3, 1e-7),
    ];
    for (preset, probe_r, tol) in cases {
        let dom = make_domain(n, &preset).unwrap();
        let h = dom.mean_curvature_at_origin().unwrap();
        let fd = (n as f64 - 1.0) * psi_second_derivative(&dom, probe_r);
        assert!(
            (h - fd).abs() <= tol * (1.0 + h.abs()),
            "{:?}: formula {h} vs finite differences {fd}",
            preset
        );
    }
}

#[test]
fn mismatched_curvatures_at_the_origin_are_rejected() {
    // Small ball excised from a larger one, internally tangent at the origin:
    // the two boundary sheets through the origin are graphs with different
    // second derivatives, so no single curvature exists there.
    let curve = GeneratingCurve::new(vec![
        CurveSegment::arc([0.0, 0.0], [2.0, 0.0], [1.0, 0.0], false),
        CurveSegment::arc([0.0, 0.0], [0.6, 0.0], [0.3, 0.0], false),
    ]);
    let dom = make_domain(3, &Preset::Custom { curve }).unwrap();
    assert!(dom.mean_curvature_at_origin().is_err());
}

#[test]
fn a_curve_pinched_through_the_origin_is_rejected_outright() {
    // Two half-disks joined only at the origin: the origin sits in the middle
    // of a chain instead of at an axis endpoint, which no admissible meridian
    // section allows.
    let curve = GeneratingCurve::new(vec![
        CurveSegment::arc([-1.0, 0.0], [0.0, 0.0], [-0.5, 0.0], false),
        CurveSegment::arc([0.0, 0.0], [2.0, 0.0], [1.0, 0.0], false),
    ]);
    assert!(make_domain(3, &Preset::Custom { curve }).is_err());
}

#[test]
fn distance_matches_dense_sampling() {
    let presets = [
        Preset::TangentBall { radius: 1.0 },
        Preset::HalfBall { radius: 1.0 },
        Preset::ChoppedBall { radius: 1.0, delta: 0.4 },
        Preset::BumpedHalfBall { radius: 1.0, amplitude: 0.25, bump_radius: 0.5 },
    ];
    for preset in &presets {
        let dom = make_domain(3, preset).unwrap();
        let dense = |p: [f64; 2]| -> f64 {
            let mut best = f64::INFINITY;
            for seg in &dom.curve.segments {
                let steps = 20_000;
                for k in 0..=steps {
                    let q = seg.point(k as f64 / steps as f64);
                    let d = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
                    best = best.min(d);
                }
            }
            best
        };
        let mut tested = 0;
        for i in 0..12 {
            for j in 0..12 {
                let p = [-0.55 + 0.18 * i as f64, 0.04 + 0.09 * j as f64];
                if !dom.contains(p) {
                    continue;
                }
                let fast = dom.distance_to_boundary(p).unwrap();
                if fast < 1e-3 {
                    continue;
                }
                let slow = dense(p);
                assert!(
                    (fast - slow).abs() < 1e-6,
                    "{:?} at {:?}: fast {fast} dense {slow}",
                    preset,
                    p
                );
                tested += 1;
            }
        }
        assert!(tested > 20, "{:?}: only {tested} interior grid points", preset);
    }
}

#[test]
fn distance_is_one_lipschitz_on_random_interior_pairs() {
    use rand::{Rng, SeedableRng};
    let dom = make_domain(3, &Preset::ChoppedBall { radius: 1.0, delta: 0.5 }).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(31);
    let mut checked = 0;
    while checked < 300 {
        let p = [rng.gen_range(-1.0..1.0), rng.gen_range(0.0..1.0)];
        let q = [rng.gen_range(-1.0..1.0), rng.gen_range(0.0..1.0)];
        if !dom.contains(p) || !dom.contains(q) {
            continue;
        }
        let dp = dom.distance_to_boundary(p).unwrap();
        let dq = dom.distance_to_boundary(q).unwrap();
        let step = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
        assert!((dp - dq).abs() <= step * (1.0 + 1e-12) + 1e-14, "pair {:?} {:?}", p, q);
        checked += 1;
    }
}

#[test]
fn distance_examples_from_the_interface_contract() {
    let tb = make_domain(3, &Preset::TangentBall { radius: 1.0 }).unwrap();
    assert!((tb.distance_to_boundary([1.0, 0.0]).unwrap() - 1.0).abs() < 1e-12);
    // Near the origin along the axis the distance equals the offset exactly.
    for &t in &[1e-1, 1e-2, 1e-3] {
        let d = tb.distance_to_boundary([t, 0.0]).unwrap();
        assert!((d - t).abs() < 1e-12, "axis point {t}: {d}");
    }
    let hb = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
    assert!((hb.distance_to_boundary([0.1, 0.0]).unwrap() - 0.1).abs() < 1e-12);
    assert!(hb.distance_to_boundary([1.5, 0.0]).is_err());
}

#[test]
fn boundary_nodes_have_exactly_zero_distance() {
    use hardylab_domain::{generate_mesh, MeshOptions, NodeMarker};
    let dom = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
    let mesh = generate_mesh(&dom, 0.15, &MeshOptions { layers: 4, ..Default::default() }).unwrap();
    for (p, m) in mesh.nodes.iter().zip(&mesh.markers) {
        if matches!(m, NodeMarker::Curve | NodeMarker::Origin) {
            let d = dom.distance_to_boundary(*p).unwrap();
            assert!(d < 1e-12, "marked node {:?} at distance {d:.2e}", p);
        }
    }
}
