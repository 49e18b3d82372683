//! Mesh generation audits: quality floors, grading, refinement scaling,
//! marker correctness, area oracles, and determinism.
//!
//! The area oracle uses exact meridian areas: the half ball meridian is a
//! quarter disk, the tangent ball meridian a half disk, the chopped ball a
//! half disk minus a smaller half disk, and the bumped half ball is an
//! area-preserving shear of the half ball meridian.

use hardylab_domain::{generate_mesh, make_domain, MeshOptions, NodeMarker, Preset};

fn opts(layers: u32, ratio: f64) -> MeshOptions {
    MeshOptions { layers, ratio, ..MeshOptions::default() }
}

fn meridian_area(p: &Preset) -> f64 {
    use std::f64::consts::PI;
    match p {
        Preset::TangentBall { radius } => 0.5 * PI * radius * radius,
        Preset::HalfBall { radius } => 0.25 * PI * radius * radius,
        Preset::ChoppedBall { radius, delta } => {
            0.5 * PI * (radius * radius - delta * delta / 16.0)
        }
        Preset::BumpedHalfBall { radius, .. } => 0.25 * PI * radius * radius,
        Preset::Custom { .. } => unreachable!(),
    }
}

#[test]
fn half_ball_mesh_meets_documented_quality_contract() {
    let dom = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
    let mesh = generate_mesh(&dom, 0.1, &opts(6, 0.5)).unwrap();
    mesh.validate().unwrap();
    let stats = mesh.stats();
    assert!(stats.min_angle_deg > 20.0, "min angle {:.2}", stats.min_angle_deg);
    let floor = 0.1 * 0.5f64.powi(6);
    assert!(
        stats.min_diameter > 0.3 * floor && stats.min_diameter < 3.0 * floor,
        "min diameter {:.3e} vs floor {:.3e}",
        stats.min_diameter,
        floor
    );
    assert!(stats.max_diameter < 1.5 * 0.1, "max diameter {:.3e}", stats.max_diameter);
}

#[test]
fn origin_node_exists_exactly_once_and_sits_at_zero() {
    for preset in [
        Preset::TangentBall { radius: 1.0 },
        Preset::HalfBall { radius: 1.0 },
        Preset::ChoppedBall { radius: 1.0, delta: 0.4 },
        Preset::BumpedHalfBall { radius: 1.0, amplitude: 0.25, bump_radius: 0.5 },
    ] {
        let dom = make_domain(3, &preset).unwrap();
        let mesh = generate_mesh(&dom, 0.15, &opts(5, 0.5)).unwrap();
        let origins: Vec<usize> = (0..mesh.nodes.len())
            .filter(|&i| mesh.markers[i] == NodeMarker::Origin)
            .collect();
        assert_eq!(origins.len(), 1, "{:?}", preset);
        let p = mesh.nodes[origins[0]];
        assert_eq!(p, [0.0, 0.0], "{:?}", preset);
    }
}

#[test]
fn axis_nodes_have_exactly_zero_radius() {
    let dom = make_domain(3, &Preset::ChoppedBall { radius: 1.0, delta: 0.4 }).unwrap();
    let mesh = generate_mesh(&dom, 0.12, &opts(5, 0.5)).unwrap();
    let mut n_axis = 0;
    for (p, m) in mesh.nodes.iter().zip(&mesh.markers) {
        if matches!(m, NodeMarker::Axis | NodeMarker::Origin) {
            assert_eq!(p[1], 0.0);
            n_axis += 1;
        }
    }
    assert!(n_axis > 10, "only {n_axis} axis nodes");
}

#[test]
fn curve_nodes_lie_on_the_generating_curve() {
    let dom = make_domain(3, &Preset::TangentBall { radius: 1.0 }).unwrap();
    let mesh = generate_mesh(&dom, 0.1, &opts(6, 0.5)).unwrap();
    for (p, m) in mesh.nodes.iter().zip(&mesh.markers) {
        match m {
            NodeMarker::Curve | NodeMarker::Origin => {
                let d = dom.distance_to_boundary(*p).unwrap();
                assert!(d < 1e-9, "curve node {:?} at distance {:.2e}", p, d);
            }
            NodeMarker::Interior => {
                let d = dom.distance_to_boundary(*p).unwrap();
                assert!(d > 0.0, "interior node {:?} on boundary", p);
            }
            NodeMarker::Axis => {}
        }
    }
}

/// Meridian area enclosed by the generating curve and the axis, via the
/// Green's integral of `z dr` along each chain; axis pieces contribute
/// nothing since `dr = 0` there. Each chain closes into a loop with the
/// axis; the loop counts positively when its centroid lies in the domain
/// (outer boundary) and negatively otherwise (hole boundary).
fn green_area(dom: &hardylab_domain::AxisymmetricDomain) -> f64 {
    let mut total = 0.0;
    for range in dom.curve.chains() {
        let mut a = 0.0;
        let mut mz = 0.0;
        let mut mr = 0.0;
        for seg in &dom.curve.segments[range] {
            let n = 20_000;
            let mut prev = seg.point(0.0);
            for k in 1..=n {
                let q = seg.point(k as f64 / n as f64);
                let dr = q[1] - prev[1];
                let z = 0.5 * (prev[0] + q[0]);
                let r = 0.5 * (prev[1] + q[1]);
                a += z * dr;
                mz += 0.5 * z * z * dr;
                mr += z * r * dr;
                prev = q;
            }
        }
        let centroid = [mz / a, mr / a];
        let sign = if dom.contains(centroid) { 1.0 } else { -1.0 };
        total += sign * a.abs();
    }
    total
}

#[test]
fn mesh_area_matches_curve_area_and_improves_under_refinement() {
    let presets = [
        Preset::TangentBall { radius: 1.0 },
        Preset::HalfBall { radius: 1.0 },
        Preset::ChoppedBall { radius: 1.0, delta: 0.4 },
        Preset::BumpedHalfBall { radius: 1.0, amplitude: 0.25, bump_radius: 0.5 },
    ];
    for preset in &presets {
        let dom = make_domain(3, preset).unwrap();
        let exact = green_area(&dom);
        // The curve-enclosed area agrees with the closed form; the bumped
        // face is chord-sampled, so it gets a looser band.
        let formula = meridian_area(preset);
        let formula_tol =
            if matches!(preset, Preset::BumpedHalfBall { .. }) { 1e-2 } else { 1e-6 };
        assert!(
            (exact - formula).abs() / formula < formula_tol,
            "{:?} curve area {exact} vs formula {formula}",
            preset
        );
        let coarse = generate_mesh(&dom, 0.2, &opts(4, 0.5)).unwrap().stats().total_area;
        let fine = generate_mesh(&dom, 0.1, &opts(4, 0.5)).unwrap().stats().total_area;
        let e0 = (coarse - exact).abs() / exact;
        let e1 = (fine - exact).abs() / exact;
        assert!(e0 < 2e-2, "{:?} coarse area error {:.3e}", preset, e0);
        assert!(e1 < 8e-3, "{:?} fine area error {:.3e}", preset, e1);
        // Boundary chord error is quadratic in the local spacing.
        assert!(
            e1 < 0.6 * e0 + 1e-5,
            "{:?} no improvement: {:.3e} -> {:.3e}",
            preset,
            e0,
            e1
        );
    }
}

#[test]
fn refining_target_h_roughly_quadruples_triangle_count() {
    let dom = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
    let n0 = generate_mesh(&dom, 0.2, &opts(6, 0.5)).unwrap().triangle_count();
    let n1 = generate_mesh(&dom, 0.1, &opts(6, 0.5)).unwrap().triangle_count();
    let factor = n1 as f64 / n0 as f64;
    assert!(factor > 2.2 && factor < 7.0, "count {} -> {} (factor {:.2})", n0, n1, factor);
}

#[test]
fn max_diameter_decreases_monotonically_along_a_refinement_ladder() {
    let dom = make_domain(3, &Preset::TangentBall { radius: 1.0 }).unwrap();
    let mut prev = f64::INFINITY;
    for &h in &[0.3, 0.2, 0.12, 0.08] {
        let d = generate_mesh(&dom, h, &opts(5, 0.5)).unwrap().stats().max_diameter;
        assert!(d < prev, "max diameter {d:.3e} did not decrease at h = {h}");
        prev = d;
    }
}

#[test]
fn grading_concentrates_small_elements_near_the_origin() {
    let dom = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
    let mesh = generate_mesh(&dom, 0.1, &opts(6, 0.5)).unwrap();
    // Every element within the innermost layer radius must be near floor size;
    // elements far from the origin must be near target size.
    let floor = mesh.grading.floor_h();
    let mut near_max: f64 = 0.0;
    let mut far_min = f64::INFINITY;
    for t in 0..mesh.triangle_count() {
        let p = mesh.tri_coords(t);
        let c = [(p[0][0] + p[1][0] + p[2][0]) / 3.0, (p[0][1] + p[1][1] + p[2][1]) / 3.0];
        let dist = (c[0] * c[0] + c[1] * c[1]).sqrt();
        let diam = (0..3)
            .map(|i| {
                let q = [p[(i + 1) % 3][0] - p[i][0], p[(i + 1) % 3][1] - p[i][1]];
                (q[0] * q[0] + q[1] * q[1]).sqrt()
            })
            .fold(0.0, f64::max);
        if dist < 2.0 * floor {
            near_max = near_max.max(diam);
        }
        if dist > 0.5 {
            far_min = far_min.min(diam);
        }
    }
    assert!(near_max < 6.0 * floor, "near-origin diameter {near_max:.3e} vs floor {floor:.3e}");
    assert!(far_min > 2.0 * floor, "far elements as small as {far_min:.3e}");
}

#[test]
fn meshing_is_deterministic() {
    let dom = make_domain(3, &Preset::ChoppedBall { radius: 1.0, delta: 0.4 }).unwrap();
    let a = generate_mesh(&dom, 0.12, &opts(5, 0.5)).unwrap();
    let b = generate_mesh(&dom, 0.12, &opts(5, 0.5)).unwrap();
    assert_eq!(a.nodes, b.nodes);
    assert_eq!(a.triangles, b.triangles);
}

#[test]
fn custom_curves_mesh_through_the_winding_test() {
    let hb = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
    let dom = make_domain(3, &Preset::Custom { curve: hb.curve.clone() }).unwrap();
    let mesh = generate_mesh(&dom, 0.15, &opts(4, 0.5)).unwrap();
    mesh.validate().unwrap();
    let area = mesh.stats().total_area;
    let exact = std::f64::consts::PI / 4.0;
    assert!((area - exact).abs() / exact < 2e-2, "area {area}");
}

#[test]
fn bad_mesh_parameters_are_rejected() {
    let dom = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
    assert!(generate_mesh(&dom, 0.0, &MeshOptions::default()).is_err());
    assert!(generate_mesh(&dom, 0.1, &opts(4, 1.5)).is_err());
}
