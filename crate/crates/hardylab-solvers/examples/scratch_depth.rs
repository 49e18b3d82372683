use hardylab_domain::{generate_mesh, make_domain, Preset};
use hardylab_solvers::{halfspace_reference, LadderSpec, QuotientOptions};
use std::time::Instant;

fn main() {
    // Depth sensitivity of the ladder limit at (gamma, s) = (2, 1).
    for depth in [12.0, 16.0, 20.0] {
        let ladder = LadderSpec::halving(0.2, 0.8, depth, 3);
        let t0 = Instant::now();
        match halfspace_reference(3, 2.0, 1.0, &ladder, &QuotientOptions::ladder()) {
            Ok(rep) => println!(
                "depth={depth}: value={:.5} ladder={:?} ({:.1?})",
                rep.value,
                rep.ladder.iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>(),
                t0.elapsed()
            ),
            Err(e) => println!("depth={depth}: ERROR {e}"),
        }
    }

    // Reproduce the bumped meshing failure.
    let bumped = make_domain(
        3,
        &Preset::BumpedHalfBall { radius: 1.0, amplitude: 0.4, bump_radius: 0.6 },
    )
    .unwrap();
    let ladder = LadderSpec::default();
    for rung in &ladder.rungs {
        match generate_mesh(&bumped, rung.target_h, &rung.mesh) {
            Ok(m) => println!(
                "bumped h={} layers={} ratio={:.4}: {} nodes ok",
                rung.target_h,
                rung.mesh.layers,
                rung.mesh.ratio,
                m.nodes.len()
            ),
            Err(e) => println!(
                "bumped h={} layers={} ratio={:.4}: ERROR {e}",
                rung.target_h, rung.mesh.layers, rung.mesh.ratio
            ),
        }
    }
}
