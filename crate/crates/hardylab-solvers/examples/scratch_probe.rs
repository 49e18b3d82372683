use hardylab_domain::Preset;
use hardylab_solvers::{
    first_eigenvalue, hardy_constant, minimize_quotient, EigenOptions, GridSpec, QuotientOptions,
};
use std::time::Instant;

fn main() {
    let eig = EigenOptions::default();
    let half = Preset::HalfBall { radius: 1.0 };

    println!("== hardy ladder on the half ball (graded) ==");
    for &(h, layers) in &[(0.2, 8), (0.1, 10), (0.05, 12)] {
        let t0 = Instant::now();
        let grid = GridSpec::graded(h, layers);
        match hardy_constant(&hardylab_domain::make_domain(3, &half).unwrap(), &grid, &eig) {
            Ok((mesh, res)) => println!(
                "h {:5.3} layers {:2} nodes {:5} gammaH {:.6} it {} conv {} [{:.2?}]",
                h,
                layers,
                mesh.nodes.len(),
                res.value,
                res.iterations,
                res.converged,
                t0.elapsed()
            ),
            Err(e) => println!("h {h} FAILED: {e}"),
        }
    }

    println!("== first eigenvalue gamma=0 vs 20.1907 ==");
    for &h in &[0.1, 0.05] {
        let t0 = Instant::now();
        let grid = GridSpec::graded(h, 10);
        match first_eigenvalue(
            &hardylab_domain::make_domain(3, &half).unwrap(),
            0.0,
            &grid,
            &eig,
        ) {
            Ok((_, res)) => println!(
                "h {:5.3} lambda1 {:.6} it {} conv {} [{:.2?}]",
                h, res.value, res.iterations, res.converged, t0.elapsed()
            ),
            Err(e) => println!("h {h} FAILED: {e}"),
        }
    }

    println!("== lambda1 decreasing in gamma ==");
    for &g in &[0.0, 1.0, 2.0] {
        let grid = GridSpec::graded(0.08, 10);
        match first_eigenvalue(&hardylab_domain::make_domain(3, &half).unwrap(), g, &grid, &eig) {
            Ok((_, res)) => println!("gamma {g} lambda1 {:.6}", res.value),
            Err(e) => println!("gamma {g} FAILED: {e}"),
        }
    }

    println!("== subcritical quotient gamma=-1 s=0 vs 5.477904 ==");
    let qopts = QuotientOptions::default();
    for &h in &[0.15, 0.1, 0.07] {
        let t0 = Instant::now();
        let grid = GridSpec::graded(h, 8);
        match minimize_quotient(
            &hardylab_domain::make_domain(3, &half).unwrap(),
            -1.0,
            0.0,
            &grid,
            &qopts,
        ) {
            Ok((mesh, res)) => println!(
                "h {:5.3} nodes {:5} mu {:.6} el {:.2e} conc {:?} it {} conv {} [{:.2?}]",
                h,
                mesh.nodes.len(),
                res.value,
                res.el_residual,
                res.concentration,
                res.iterations,
                res.converged,
                t0.elapsed()
            ),
            Err(e) => println!("h {h} FAILED: {e}"),
        }
    }
}
