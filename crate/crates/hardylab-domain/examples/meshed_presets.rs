//! Build every preset domain, grade a mesh toward the boundary singularity,
//! and dump one domain/mesh pair to disk.
//!
//! Run with `cargo run --release --example meshed_presets`.

use hardylab_domain::{
    domain_to_json, generate_mesh, make_domain, mesh_to_text, MeshOptions, Preset,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    let presets = [
        Preset::TangentBall { radius: 1.0 },
        Preset::HalfBall { radius: 1.0 },
        Preset::ChoppedBall { radius: 1.0, delta: 0.4 },
        Preset::BumpedHalfBall { radius: 1.0, amplitude: 0.3, bump_radius: 0.5 },
    ];

    println!("{:<22} {:>9} {:>8} {:>7} {:>10} {:>10}", "domain", "curvature", "nodes", "tris", "min angle", "max diam");
    for preset in &presets {
        let dom = make_domain(n, preset)?;
        let h = dom.mean_curvature_at_origin()?;
        let opts = MeshOptions { layers: 8, ..Default::default() };
        let mesh = generate_mesh(&dom, 0.1, &opts)?;
        let s = mesh.stats();
        println!(
            "{:<22} {:>9.3} {:>8} {:>7} {:>9.2}\u{b0} {:>10.4}",
            dom.name, h, s.n_nodes, s.n_triangles, s.min_angle_deg, s.max_diameter
        );
    }

    // Refinement ladder on the half ball: the largest element tracks target_h
    // while the smallest stays pinned near target_h * ratio^layers.
    println!("\nhalf_ball refinement ladder (layers=6, ratio=0.5):");
    let dom = make_domain(n, &Preset::HalfBall { radius: 1.0 })?;
    for k in 0..4 {
        let h = 0.2 / f64::powi(2.0, k);
        let opts = MeshOptions { layers: 6, ..Default::default() };
        let mesh = generate_mesh(&dom, h, &opts)?;
        let s = mesh.stats();
        println!(
            "  target_h={:<7.4} nodes={:<6} max_diam={:<8.4} min_diam={:.2e}",
            h, s.n_nodes, s.max_diameter, s.min_diameter
        );
    }

    let out = std::env::temp_dir();
    let dom_path = out.join("half_ball.domain.json");
    let mesh_path = out.join("half_ball.mesh.txt");
    std::fs::write(&dom_path, domain_to_json(&dom)?)?;
    let mesh = generate_mesh(&dom, 0.1, &MeshOptions::default())?;
    std::fs::write(&mesh_path, mesh_to_text(&mesh))?;
    println!("\nwrote {} and {}", dom_path.display(), mesh_path.display());
    Ok(())
}
