use hardylab_domain::{make_domain, Preset};
use hardylab_solvers::{hardy_constant, EigenOptions, GridSpec};
use std::time::Instant;

fn main() {
    let eig = EigenOptions::default();
    let dom = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
    let configs = [
        (0.05, 160, 0.90484),
        (0.05, 200, 0.92312),
        (0.05, 338, 0.95123),
        (0.05, 360, 0.95123),
    ];
    for &(h, layers, ratio) in &configs {
        let mut grid = GridSpec::graded(h, layers);
        grid.mesh.ratio = ratio;
        let t0 = Instant::now();
        match hardy_constant(&dom, &grid, &eig) {
            Ok((mesh, res)) => {
                let hmin = (ratio as f64).powi(layers as i32) * h;
                println!(
                    "h {:5.3} layers {:3} ratio {:.2} nodes {:6} hmin {:8.1e} gammaH {:.6} excess {:8.5} it {:3} conv {} [{:.2?}]",
                    h,
                    layers,
                    ratio,
                    mesh.nodes.len(),
                    hmin,
                    res.value,
                    res.value - 2.25,
                    res.iterations,
                    res.converged,
                    t0.elapsed()
                );
            }
            Err(e) => println!("h {h} layers {layers} ratio {ratio} FAILED: {e}"),
        }
    }
}
