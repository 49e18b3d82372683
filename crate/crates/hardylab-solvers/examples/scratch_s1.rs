use hardylab_assembly::Quadrature;
use hardylab_domain::{generate_mesh, make_domain, MeshOptions, Preset};
use hardylab_solvers::{
    existence_gap, halfspace_reference, hardy_constant_on_mesh, minimize_quotient_on_mesh,
    EigenOptions, LadderSpec, QuotientOptions,
};
use std::time::Instant;

fn dratio(v: &[f64]) -> f64 {
    let k = v.len();
    if k < 3 {
        return f64::NAN;
    }
    (v[k - 1] - v[k - 2]) / (v[k - 2] - v[k - 3])
}

fn main() {
    let quad = Quadrature::default();

    // --- criterion 8 probe: tangent ball, s = 1 ---
    let dom = make_domain(3, &Preset::TangentBall { radius: 1.0 }).unwrap();
    let mopts = MeshOptions { layers: 12, ratio: 0.45, ..MeshOptions::default() };
    let mesh = generate_mesh(&dom, 0.08, &mopts).unwrap();
    let hardy = hardy_constant_on_mesh(&mesh, 3, &quad, &EigenOptions::default()).unwrap();
    println!("gamma_H estimate = {:.6}", hardy.value);
    let gm = 0.8 * hardy.value;
    let gp = (1.1 * hardy.value).min(0.99 * 9.0 / 4.0);
    for (label, g) in [("0.8*gH", gm), ("capped", gp)] {
        let r = minimize_quotient_on_mesh(&mesh, 3, g, 1.0, &quad, &QuotientOptions::default())
            .unwrap();
        println!(
            "  {label}: gamma={g:.4} mu={:.6} el={:.2e} its={}",
            r.value, r.el_residual, r.iterations
        );
    }

    // --- halving ladder references ---
    for (g, s) in [(1.0, 1.0), (2.0, 1.0), (2.1, 1.0)] {
        let ladder = LadderSpec::default();
        let t0 = Instant::now();
        match halfspace_reference(3, g, s, &ladder, &QuotientOptions::ladder()) {
            Ok(rep) => println!(
                "ref gamma={g} s={s}: value={:.5} ladder={:?} dratio={:.3} extrap={} conc={:?} slow={} ({:.1?})",
                rep.value,
                rep.ladder.iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>(),
                dratio(&rep.ladder),
                rep.extrapolated,
                rep.concentration.iter().map(|v| (v * 1e3).round() / 1e3).collect::<Vec<_>>(),
                rep.slow_concentration,
                t0.elapsed()
            ),
            Err(e) => println!("ref gamma={g} s={s}: ERROR {e}"),
        }
    }

    // --- existence gap verdicts ---
    let bumped = make_domain(
        3,
        &Preset::BumpedHalfBall { radius: 1.0, amplitude: 0.4, bump_radius: 0.6 },
    )
    .unwrap();
    let tangent = make_domain(3, &Preset::TangentBall { radius: 1.0 }).unwrap();
    for (name, d, g) in [("bumped", &bumped, 1.0), ("tangent", &tangent, 2.1)] {
        let t0 = Instant::now();
        match existence_gap(d, g, 1.0, &LadderSpec::default(), &QuotientOptions::ladder()) {
            Ok(rep) => println!(
                "gap {name} gamma={g}: mu_dom={:.5} mu_half={:.5} gap={:.5} margin={:.5} predicts={} regime={:?} ({:.1?})",
                rep.mu_domain,
                rep.mu_halfspace,
                rep.gap,
                rep.decision_margin,
                rep.predicts_extremal,
                rep.regime,
                t0.elapsed()
            ),
            Err(e) => println!("gap {name}: ERROR {e}"),
        }
    }
}
