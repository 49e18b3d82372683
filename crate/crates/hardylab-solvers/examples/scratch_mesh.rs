use hardylab_domain::{generate_mesh, make_domain, MeshOptions, Preset};

fn main() {
    let dom = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
    for &(h, layers, ratio) in &[(0.2, 8, 0.5), (0.05, 12, 0.45)] {
        let opts = MeshOptions { layers, ratio, ..MeshOptions::default() };
        let mesh = generate_mesh(&dom, h, &opts).unwrap();
        let mut radii: Vec<f64> = mesh
            .nodes
            .iter()
            .map(|p| (p[0] * p[0] + p[1] * p[1]).sqrt())
            .filter(|r| *r > 0.0)
            .collect();
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        println!(
            "h {} layers {} ratio {}: nodes {} min radii {:?}",
            h,
            layers,
            ratio,
            mesh.nodes.len(),
            &radii[..radii.len().min(12)]
        );
        println!("  grading field: {:?}", mesh.grading);
        let close = radii.iter().filter(|r| **r < 0.01).count();
        println!("  nodes with |x|<0.01: {close}");
    }
}
