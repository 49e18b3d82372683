use hardylab_assembly::{hs_functional, Quadrature};
use hardylab_domain::{make_domain, Preset};
use hardylab_solvers::{minimize_quotient, GridSpec, QuotientOptions};
use std::time::Instant;

fn main() {
    let dom = make_domain(3, &Preset::TangentBall { radius: 1.0 }).unwrap();
    let qopts = QuotientOptions::default();
    let quad = Quadrature::default();
    for &h in &[0.16, 0.08, 0.04] {
        let grid = GridSpec::graded(h, 4);
        let t0 = Instant::now();
        match minimize_quotient(&dom, -1.0, 0.0, &grid, &qopts) {
            Ok((mesh, res)) => {
                let (f, grad) = hs_functional(&mesh, 3, 0.0, &res.minimizer, &quad).unwrap();
                let dens: Vec<f64> =
                    res.minimizer.iter().zip(&grad).map(|(u, g)| u * g / 6.0).collect();
                let peak = dens
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                    .map(|(i, _)| i)
                    .unwrap();
                let pp = mesh.nodes[peak];
                let frac = |r0: f64| -> f64 {
                    mesh.nodes
                        .iter()
                        .zip(&dens)
                        .filter(|(p, _)| {
                            let dz = p[0] - pp[0];
                            let dr = p[1] - pp[1];
                            (dz * dz + dr * dr).sqrt() <= r0
                        })
                        .map(|(_, d)| d)
                        .sum::<f64>()
                        / f
                };
                println!(
                    "h {:5.3} nodes {:5} mu {:.6} it {:3} conv {} peak (z {:.3}, r {:.3}) frac(0.1) {:.3} frac(0.35) {:.3} [{:.2?}]",
                    h,
                    mesh.nodes.len(),
                    res.value,
                    res.iterations,
                    res.converged,
                    pp[0],
                    pp[1],
                    frac(0.1),
                    frac(0.35),
                    t0.elapsed()
                );
            }
            Err(e) => println!("h {h} FAILED: {e}"),
        }
    }
}
