//! Projected gradient minimization of the critical weighted quotient under
//! the unit constraint on the singular-weight norm.

use crate::eigen::{smallest_pencil_eigenvalue, EigenOptions};
use crate::linalg::{dot, dual_norm, pcg, scaled_sum, LinearMap};
use crate::{GridSpec, QuotientResult, SolverError};
use hardylab_assembly::{
    assemble_hardy, assemble_stiffness, assemble_weighted_mass, hs_functional, FreeMap,
    Quadrature, SymmetricOperator,
};
use hardylab_domain::{generate_mesh, AxisymmetricDomain, Mesh};
use hardylab_params::critical_exponent;

#[derive(Debug, Clone)]
pub struct QuotientOptions {
    pub max_iterations: usize,
    /// Relative change of the quotient over `stall_window` iterations below
    /// which the value counts as settled.
    pub value_tol: f64,
    pub stall_window: usize,
    /// Euler-Lagrange residual tolerance in the diagonal dual norm.
    pub el_tol: f64,
    /// Radius of the origin ball used for the concentration diagnostic.
    pub concentration_radius: f64,
    pub cg_tol: f64,
    pub cg_max: usize,
    pub armijo_c: f64,
    pub max_backtracks: usize,
    pub eigen: EigenOptions,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions {
            max_iterations: 5000,
            value_tol: 1e-9,
            stall_window: 10,
            el_tol: 1e-6,
            concentration_radius: 0.1,
            cg_tol: 1e-10,
            cg_max: 20_000,
            armijo_c: 1e-4,
            max_backtracks: 40,
            eigen: EigenOptions::default(),
        }
    }
}

impl QuotientOptions {
    /// Looser stopping for refinement ladders. Discretization error dominates
    /// each rung long before the default tolerances bite, and concentrating
    /// minimizers make the tail iterations expensive, so ladders stop once
    /// the value has settled to a few digits.
    pub fn ladder() -> Self {
        QuotientOptions { value_tol: 1e-7, el_tol: 1e-4, ..QuotientOptions::default() }
    }
}

/// Smallest eigenvalue of `(c, m)` even when `c` is indefinite: a growing
/// multiple of `m` is added until the inner conjugate gradient accepts the
/// operator, then the added shift is subtracted back out.
fn ground_state(
    c: &SymmetricOperator,
    m: &SymmetricOperator,
    opts: &EigenOptions,
) -> Result<(f64, Vec<f64>), SolverError> {
    let mut shift = 0.0;
    loop {
        let shifted = if shift == 0.0 {
            None
        } else {
            Some(scaled_sum(c, 1.0, m, shift, "shifted singular form")?)
        };
        let op = shifted.as_ref().unwrap_or(c);
        match smallest_pencil_eigenvalue(op, m, opts) {
            Ok(sol) => return Ok((sol.value - shift, sol.vector)),
            Err(SolverError::Breakdown(_)) => {
                shift = if shift == 0.0 { 1.0 } else { shift * 4.0 };
                if shift > 1e18 {
                    return Err(SolverError::Breakdown("no positive shift stabilizes the form"));
                }
            }
            Err(e) => return Err(e),
        }
    }
}

/// Minimize `u C u` over the discrete Dirichlet space subject to the unit
/// critical-norm constraint, by projected gradient in a positive definite
/// metric with Armijo backtracking. Entrywise absolute value is applied each
/// accepted step whenever it does not raise the energy, so converged
/// minimizers come out nonnegative.
pub fn minimize_quotient_on_mesh(
    mesh: &Mesh,
    n: usize,
    gamma: f64,
    s: f64,
    quad: &Quadrature,
    opts: &QuotientOptions,
) -> Result<QuotientResult, SolverError> {
    let two_star = critical_exponent(n, s)?;
    let a = assemble_stiffness(mesh, n, quad)?;
    let b = assemble_hardy(mesh, n, quad)?;
    let m = assemble_weighted_mass(mesh, n, 0.0, quad)?;
    let c = scaled_sum(&a, 1.0, &b, -gamma, "singular quadratic form")?;
    let fm = FreeMap::from_mesh(mesh);
    let dim = fm.n_free();
    if dim == 0 {
        return Err(SolverError::Breakdown("no free nodes"));
    }

    // Ground state of the quadratic form fixes both the descent metric and,
    // in the indefinite regime, the starting iterate.
    let (lambda1, ground) = ground_state(&c, &m, &opts.eigen)?;
    let diag_scale = c.diagonal().iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
    let metric = if lambda1 > 0.0 {
        c.clone()
    } else {
        let sigma = 1.25 * (-lambda1) + 1e-14 * diag_scale;
        scaled_sum(&c, 1.0, &m, sigma, "stabilized descent metric")?
    };

    let mut u: Vec<f64> = if lambda1 > 0.0 {
        vec![1.0; dim]
    } else {
        ground.iter().map(|x| x.abs()).collect()
    };
    let diag_a = a.diagonal();

    // Evaluate constraint and gradient, renormalizing to the unit level set;
    // the constraint functional is homogeneous of degree two-star, so the
    // rescale is exact.
    let evaluate = |u: &mut Vec<f64>| -> Result<(Vec<f64>, f64), SolverError> {
        let full = fm.scatter(u);
        let (f, grad) = hs_functional(mesh, n, s, &full, quad)?;
        if !(f > 0.0) {
            return Err(SolverError::Breakdown("constraint functional vanished"));
        }
        let scale = f.powf(-1.0 / two_star);
        if (scale - 1.0).abs() > 1e-13 {
            for x in u.iter_mut() {
                *x *= scale;
            }
            let full = fm.scatter(u);
            let (f2, grad2) = hs_functional(mesh, n, s, &full, quad)?;
            let _ = f2;
            return Ok((fm.gather(&grad2), f2));
        }
        Ok((fm.gather(&grad), f))
    };

    let (mut g, _) = evaluate(&mut u)?;
    let mut cu = c.apply(&u);
    let mut mu = dot(&u, &cu);
    let mut history = vec![mu];
    let mut converged = false;
    let mut iterations = 0;

    // Euler-Lagrange residual of the normalized stationarity equation.
    let residual_of = |cu: &[f64], g: &[f64], mu: f64| -> f64 {
        let factor = mu / two_star;
        let r: Vec<f64> = cu.iter().zip(g).map(|(ci, gi)| ci - factor * gi).collect();
        let lhs = dual_norm(cu, &diag_a);
        let rhs: Vec<f64> = g.iter().map(|gi| factor * gi).collect();
        let scale = lhs.max(dual_norm(&rhs, &diag_a)).max(f64::MIN_POSITIVE);
        dual_norm(&r, &diag_a) / scale
    };
    for k in 0..opts.max_iterations {
        iterations = k + 1;
        let el_residual = residual_of(&cu, &g, mu);

        let settled = history.len() > opts.stall_window
            && history[history.len() - 1 - opts.stall_window..]
                .iter()
                .all(|v| (v - mu).abs() <= opts.value_tol * mu.abs().max(1e-30));
        if el_residual < opts.el_tol && settled {
            converged = true;
            break;
        }

        // Projected direction: steepest descent in the metric, made tangent
        // to the constraint level set.
        let two_cu: Vec<f64> = cu.iter().map(|x| 2.0 * x).collect();
        let (y, _) = pcg(&metric, &two_cu, None, opts.cg_tol, opts.cg_max)?;
        let (z, _) = pcg(&metric, &g, None, opts.cg_tol, opts.cg_max)?;
        let gz = dot(&g, &z);
        if !(gz > 0.0) {
            return Err(SolverError::Breakdown("constraint gradient left the metric cone"));
        }
        let beta = dot(&g, &y) / gz;
        let d: Vec<f64> = y.iter().zip(&z).map(|(yi, zi)| -yi + beta * zi).collect();
        let slope = -dot(&two_cu, &d);
        if !(slope > 0.0) {
            // Stationary to rounding; only the tolerance checks remain.
            if el_residual < opts.el_tol {
                converged = settled;
            }
            break;
        }

        // The direction is tangent to the constraint level set, so the raw
        // quadratic model along it is exact up to the renormalization; its
        // minimizer is the natural first trial step.
        let cd = c.apply(&d);
        let curvature = dot(&d, &cd);
        let mut t = if curvature > 0.0 { (0.5 * slope / curvature).min(4.0) } else { 1.0 };
        let mut accepted = false;
        for _ in 0..opts.max_backtracks {
            let mut w: Vec<f64> = u.iter().zip(&d).map(|(ui, di)| ui + t * di).collect();
            match evaluate(&mut w) {
                Ok((gw, _)) => {
                    let cw = c.apply(&w);
                    let ew = dot(&w, &cw);
                    // Entrywise absolute value, kept only when it descends.
                    let mut wa: Vec<f64> = w.iter().map(|x| x.abs()).collect();
                    let (best, gbest, cbest, ebest) = {
                        let (ga, _) = evaluate(&mut wa)?;
                        let ca = c.apply(&wa);
                        let ea = dot(&wa, &ca);
                        if ea <= ew {
                            (wa, ga, ca, ea)
                        } else {
                            (w, gw, cw, ew)
                        }
                    };
                    if ebest <= mu - opts.armijo_c * t * slope {
                        u = best;
                        g = gbest;
                        cu = cbest;
                        mu = ebest;
                        accepted = true;
                        break;
                    }
                }
                Err(SolverError::Breakdown(_)) => {}
                Err(e) => return Err(e),
            }
            t *= 0.5;
        }
        history.push(mu);
        if !accepted {
            // Line search cannot improve the iterate further.
            converged = residual_of(&cu, &g, mu) < opts.el_tol;
            break;
        }
    }

    let el_residual = residual_of(&cu, &g, mu);
    let full = fm.scatter(&u);
    // Concentration diagnostic: share of the constraint integral inside the
    // ball of radius `concentration_radius` around its densest node. For
    // singularity-seeking minimizers the peak sits at the origin, so this
    // reduces to the innermost-layer mass fraction; for interior bubbles it
    // follows the bubble.
    let concentration = {
        let gradient_full = fm.scatter(&g);
        let density: Vec<f64> =
            full.iter().zip(&gradient_full).map(|(ui, gi)| ui * gi / two_star).collect();
        let total: f64 = density.iter().sum();
        let peak = density
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let pp = mesh.nodes[peak];
        let r2 = opts.concentration_radius * opts.concentration_radius;
        let mut near = 0.0;
        for (p, d) in mesh.nodes.iter().zip(&density) {
            let dz = p[0] - pp[0];
            let dr = p[1] - pp[1];
            if dz * dz + dr * dr <= r2 {
                near += d;
            }
        }
        if total.abs() > f64::MIN_POSITIVE { near / total } else { 0.0 }
    };
    Ok(QuotientResult {
        value: mu,
        minimizer: full,
        el_residual,
        lagrange_multiplier: mu,
        iterations,
        converged,
        concentration: Some(concentration),
    })
}

pub fn minimize_quotient(
    dom: &AxisymmetricDomain,
    gamma: f64,
    s: f64,
    grid: &GridSpec,
    opts: &QuotientOptions,
) -> Result<(Mesh, QuotientResult), SolverError> {
    let mesh = generate_mesh(dom, grid.target_h, &grid.mesh)?;
    let result = minimize_quotient_on_mesh(&mesh, dom.n, gamma, s, &grid.quad, opts)?;
    Ok((mesh, result))
}
