//! Smallest generalized eigenvalue of an operator pencil by shifted inverse
//! power iteration with conjugate gradient inner solves.

use crate::linalg::{dual_norm, pcg, scaled_sum, LinearMap, ShiftedSum};
use crate::{GridSpec, QuotientResult, SolverError};
use hardylab_assembly::{
    assemble_hardy, assemble_stiffness, assemble_weighted_mass, FreeMap, Quadrature,
};
use hardylab_domain::{generate_mesh, AxisymmetricDomain, Mesh};

#[derive(Debug, Clone)]
pub struct EigenOptions {
    /// Outer inverse-iteration limit.
    pub max_iterations: usize,
    /// Relative eigenvalue change that counts as converged (two consecutive
    /// hits required).
    pub tol: f64,
    /// Once the Rayleigh quotient settles to within `shift_trigger`, the
    /// iteration freezes a shift at `shift_fraction` of the current value to
    /// sharpen the contraction.
    pub shift_fraction: f64,
    pub shift_trigger: f64,
    pub cg_tol: f64,
    pub cg_max: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            max_iterations: 400,
            tol: 1e-11,
            shift_fraction: 0.95,
            shift_trigger: 0.01,
            cg_tol: 1e-10,
            cg_max: 20_000,
        }
    }
}

pub(crate) struct PencilSolution {
    pub value: f64,
    /// Eigenvector normalized to b-form one.
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub residual: f64,
}

/// Smallest eigenvalue of `a u = lambda b u` for a positive definite `a` and
/// positive definite `b`. Starts from the all-ones vector; once the Rayleigh
/// quotient has settled, a fixed shift below it accelerates the contraction.
pub(crate) fn smallest_pencil_eigenvalue<A: LinearMap, B: LinearMap>(
    a: &A,
    b: &B,
    opts: &EigenOptions,
) -> Result<PencilSolution, SolverError> {
    let dim = a.dim();
    if dim == 0 {
        return Err(SolverError::Breakdown("eigeniteration on an empty space"));
    }
    let b_norm = |v: &[f64]| -> f64 { b.form(v).sqrt() };
    let mut v = vec![1.0; dim];
    let nb = b_norm(&v);
    if !(nb > 0.0) {
        return Err(SolverError::Breakdown("b-form vanishes on the start vector"));
    }
    for vi in &mut v {
        *vi /= nb;
    }
    let mut theta = a.form(&v);
    let mut shift = 0.0;
    let mut shifted = false;
    let mut hits = 0;
    let mut iterations = 0;
    for k in 0..opts.max_iterations {
        iterations = k + 1;
        let rhs = b.apply_vec(&v);
        let w = loop {
            let op = ShiftedSum { a, b, shift: -shift };
            match pcg(&op, &rhs, Some(&v), opts.cg_tol, opts.cg_max) {
                Ok((w, _)) => break w,
                // Shift overshot the bottom of the spectrum; pull it back.
                Err(SolverError::Breakdown(_)) if shift != 0.0 => shift *= 0.9,
                Err(e) => return Err(e),
            }
        };
        let nb = b_norm(&w);
        if !(nb.is_finite() && nb > 0.0) {
            return Err(SolverError::Breakdown("inverse iterate left the b-cone"));
        }
        v = w.iter().map(|x| x / nb).collect();
        let next = a.form(&v);
        let rel = (next - theta).abs() / next.abs().max(f64::MIN_POSITIVE);
        theta = next;
        if !shifted && rel < opts.shift_trigger {
            shift = opts.shift_fraction * theta;
            shifted = true;
        }
        if rel < opts.tol {
            hits += 1;
            if hits >= 2 {
                break;
            }
        } else {
            hits = 0;
        }
    }
    let converged = hits >= 2;
    let av = a.apply_vec(&v);
    let bv = b.apply_vec(&v);
    let r: Vec<f64> = av.iter().zip(&bv).map(|(ai, bi)| ai - theta * bi).collect();
    let diag = a.diagonal();
    if diag.iter().any(|&d| !(d > 0.0)) {
        return Err(SolverError::Breakdown("non-positive diagonal in the residual norm"));
    }
    let scale = dual_norm(&av, &diag).max(f64::MIN_POSITIVE);
    let residual = dual_norm(&r, &diag) / scale;
    Ok(PencilSolution { value: theta, vector: v, iterations, converged, residual })
}

/// Flip the sign so the vector sums nonnegative; the ground eigenfield of
/// these pencils is single-signed up to rounding.
fn sign_normalize(v: &mut [f64]) {
    if v.iter().sum::<f64>() < 0.0 {
        for x in v {
            *x = -*x;
        }
    }
}

fn pencil_to_result(mesh: &Mesh, sol: PencilSolution) -> QuotientResult {
    let fm = FreeMap::from_mesh(mesh);
    let mut free = sol.vector;
    sign_normalize(&mut free);
    QuotientResult {
        value: sol.value,
        minimizer: fm.scatter(&free),
        el_residual: sol.residual,
        lagrange_multiplier: sol.value,
        iterations: sol.iterations,
        converged: sol.converged,
        concentration: None,
    }
}

/// Best constant of the boundary Hardy inequality on the meshed domain: the
/// smallest eigenvalue of the stiffness form against the inverse-square
/// weight form. The minimizer is normalized so the weighted mass is one.
pub fn hardy_constant_on_mesh(
    mesh: &Mesh,
    n: usize,
    quad: &Quadrature,
    opts: &EigenOptions,
) -> Result<QuotientResult, SolverError> {
    let a = assemble_stiffness(mesh, n, quad)?;
    let b = assemble_hardy(mesh, n, quad)?;
    let sol = smallest_pencil_eigenvalue(&a, &b, opts)?;
    Ok(pencil_to_result(mesh, sol))
}

/// Convenience wrapper that meshes the domain first. Returns the mesh with
/// the result so the minimizer field can be interpreted.
pub fn hardy_constant(
    dom: &AxisymmetricDomain,
    grid: &GridSpec,
    opts: &EigenOptions,
) -> Result<(Mesh, QuotientResult), SolverError> {
    let mesh = generate_mesh(dom, grid.target_h, &grid.mesh)?;
    let result = hardy_constant_on_mesh(&mesh, dom.n, &grid.quad, opts)?;
    Ok((mesh, result))
}

/// First eigenvalue of the singular operator with coupling `gamma` under the
/// plain mass normalization. Rejects couplings at or above the discrete
/// Hardy constant of the same mesh, where the form loses coercivity.
pub fn first_eigenvalue_on_mesh(
    mesh: &Mesh,
    n: usize,
    gamma: f64,
    quad: &Quadrature,
    opts: &EigenOptions,
) -> Result<QuotientResult, SolverError> {
    let a = assemble_stiffness(mesh, n, quad)?;
    let b = assemble_hardy(mesh, n, quad)?;
    let hardy = smallest_pencil_eigenvalue(&a, &b, opts)?;
    if gamma >= hardy.value {
        return Err(SolverError::CoercivityLost { gamma, gamma_h: hardy.value });
    }
    let c = scaled_sum(&a, 1.0, &b, -gamma, "coercive singular form")?;
    let m = assemble_weighted_mass(mesh, n, 0.0, quad)?;
    let sol = smallest_pencil_eigenvalue(&c, &m, opts)?;
    Ok(pencil_to_result(mesh, sol))
}

pub fn first_eigenvalue(
    dom: &AxisymmetricDomain,
    gamma: f64,
    grid: &GridSpec,
    opts: &EigenOptions,
) -> Result<(Mesh, QuotientResult), SolverError> {
    let mesh = generate_mesh(dom, grid.target_h, &grid.mesh)?;
    let result = first_eigenvalue_on_mesh(&mesh, dom.n, gamma, &grid.quad, opts)?;
    Ok((mesh, result))
}
