//! Walk the exponent dictionary: root pairs of the indicial equation, the
//! closed-form boundary profiles they generate, the Kelvin involution that
//! swaps them, and the weighted-inequality parameter map.
//!
//! Run with `cargo run --example exponent_atlas`.

use hardylab_params::{
    alpha_exponents, ckn_to_hardy, cone_hardy_constant, hardy_to_ckn, kelvin_transform,
    laplacian_identity_residual, sobolev_constant, CknParams, ClosedFormSolution, HardyParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;

    println!("{:<8} {:>8} {:>8} {:>8} {:>10}", "gamma", "alpha-", "alpha+", "gap", "2*(s=1)");
    for gamma in [-1.0, 0.0, 1.0, 2.0, 2.2] {
        let hp = HardyParams::new(n, gamma, 1.0)?;
        let pair = hp.alpha();
        println!(
            "{:<8} {:>8.4} {:>8.4} {:>8.4} {:>10.4}",
            gamma,
            pair.minus,
            pair.plus,
            pair.gap(),
            hp.two_star()
        );
    }
    println!(
        "half-space limit n^2/4 = {}, interior constant (n-2)^2/4 = {}",
        HardyParams::new(n, 1.0, 1.0)?.half_space_limit(),
        HardyParams::new(n, 1.0, 1.0)?.interior_constant()
    );
    println!(
        "cone constants k=0..{}: {:?}",
        n,
        (0..=n).map(|k| cone_hardy_constant(n, k)).collect::<Result<Vec<_>, _>>()?
    );

    // The profile x1 |x|^-alpha solves the singular equation exactly when
    // alpha is either root; the residual below is a finite-difference check
    // of the Laplacian identity at a generic point.
    let gamma = 2.0;
    let pair = alpha_exponents(n, gamma)?;
    let x = [0.7, 0.4, -0.2];
    for alpha in [pair.minus, pair.plus] {
        let res = laplacian_identity_residual(alpha, n, &x, 1e-4);
        println!("profile alpha={alpha}: laplacian identity residual {res:.2e}");
    }

    // The Kelvin transform carries the slow-decay profile to the fast one.
    let slow = ClosedFormSolution::new(pair.minus);
    let fast = ClosedFormSolution::new(pair.plus);
    let k = kelvin_transform(move |y: &[f64]| slow.eval(y), n);
    println!(
        "kelvin of the alpha- profile at x: {:.6}, alpha+ profile there: {:.6}",
        k(&x),
        fast.eval(&x)
    );

    // Dictionary between the weighted-inequality exponents (a, b) and the
    // singular-potential parameters (gamma, s); the round trip recovers the
    // branch with a below (n-2)/2.
    let ckn = CknParams::from_ab(0.3, 0.8, n)?;
    let (g, s, q) = ckn_to_hardy(&ckn, n)?;
    let back = hardy_to_ckn(n, g, s)?;
    println!("ckn (a=0.3, b=0.8): gamma={g:.4} s={s:.4} q={q:.4}; round trip a={:.4} b={:.4}", back.a, back.b);

    println!("sharp unweighted constant 1/K(n,2)^2 at n=3: {:.6}", sobolev_constant(3)?);
    Ok(())
}
