//! Matrix-free linear algebra: operator combinations, the Jacobi
//! preconditioned conjugate gradient, and the pencil shift wrapper.

use crate::SolverError;
use hardylab_assembly::SymmetricOperator;

/// Symmetric operator action together with its diagonal, which the
/// conjugate gradient uses as the Jacobi preconditioner.
pub trait LinearMap {
    fn dim(&self) -> usize;
    fn apply_into(&self, x: &[f64], y: &mut [f64]);
    fn diagonal(&self) -> Vec<f64>;

    fn apply_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.apply_into(x, &mut y);
        y
    }

    fn form(&self, x: &[f64]) -> f64 {
        dot(x, &self.apply_vec(x))
    }
}

impl LinearMap for SymmetricOperator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.matvec(x, y);
    }

    fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }
}

/// Lazy `a + shift * b` over two operators on the same index space.
pub struct ShiftedSum<'a, A: LinearMap, B: LinearMap> {
    pub a: &'a A,
    pub b: &'a B,
    pub shift: f64,
}

impl<A: LinearMap, B: LinearMap> LinearMap for ShiftedSum<'_, A, B> {
    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.a.apply_into(x, y);
        let t = self.b.apply_vec(x);
        for (yi, ti) in y.iter_mut().zip(&t) {
            *yi += self.shift * ti;
        }
    }

    fn diagonal(&self) -> Vec<f64> {
        let da = self.a.diagonal();
        let db = self.b.diagonal();
        da.iter().zip(&db).map(|(x, y)| x + self.shift * y).collect()
    }
}

/// Entrywise `ca * a + cb * b` for operators assembled over the same mesh.
/// The element loops produce identical sparsity patterns, which is checked.
pub fn scaled_sum(
    a: &SymmetricOperator,
    ca: f64,
    b: &SymmetricOperator,
    cb: f64,
    descriptor: &str,
) -> Result<SymmetricOperator, SolverError> {
    if a.dim != b.dim || a.indptr != b.indptr || a.indices != b.indices {
        return Err(SolverError::PatternMismatch("scaled_sum"));
    }
    let vals = a.vals.iter().zip(&b.vals).map(|(x, y)| ca * x + cb * y).collect();
    Ok(SymmetricOperator {
        dim: a.dim,
        indptr: a.indptr.clone(),
        indices: a.indices.clone(),
        vals,
        descriptor: descriptor.into(),
    })
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Dual-norm magnitude of a residual vector under the inverse of a positive
/// diagonal: sqrt(sum r_i^2 / d_i).
pub fn dual_norm(r: &[f64], diag: &[f64]) -> f64 {
    r.iter().zip(diag).map(|(ri, di)| ri * ri / di).sum::<f64>().sqrt()
}

/// Jacobi preconditioned conjugate gradient. Returns the solution and the
/// iteration count; fails on non-positive curvature directions, which signal
/// an indefinite operator, or on stagnation past `max_iterations`.
pub fn pcg(
    map: &impl LinearMap,
    rhs: &[f64],
    x0: Option<&[f64]>,
    tol: f64,
    max_iterations: usize,
) -> Result<(Vec<f64>, usize), SolverError> {
    let dim = map.dim();
    assert_eq!(rhs.len(), dim);
    let diag = map.diagonal();
    if diag.iter().any(|&d| !(d > 0.0)) {
        return Err(SolverError::Breakdown("pcg: non-positive diagonal"));
    }
    let mut x = match x0 {
        Some(v) => v.to_vec(),
        None => vec![0.0; dim],
    };
    let mut r = rhs.to_vec();
    if x0.is_some() {
        let ax = map.apply_vec(&x);
        for (ri, ai) in r.iter_mut().zip(&ax) {
            *ri -= ai;
        }
    }
    let rhs_norm = dot(rhs, rhs).sqrt();
    if rhs_norm == 0.0 {
        return Ok((vec![0.0; dim], 0));
    }
    let mut z: Vec<f64> = r.iter().zip(&diag).map(|(ri, di)| ri / di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; dim];
    for k in 0..max_iterations {
        if dot(&r, &r).sqrt() <= tol * rhs_norm {
            return Ok((x, k));
        }
        map.apply_into(&p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            return Err(SolverError::Breakdown("pcg: non-positive curvature"));
        }
        let alpha = rz / pap;
        for i in 0..dim {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..dim {
            z[i] = r[i] / diag[i];
        }
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..dim {
            p[i] = z[i] + beta * p[i];
        }
    }
    let residual = dot(&r, &r).sqrt() / rhs_norm;
    if residual <= tol * 100.0 {
        // Close enough for an outer iteration that only needs a direction.
        return Ok((x, max_iterations));
    }
    Err(SolverError::NoConvergence { what: "pcg", iterations: max_iterations, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spd() -> SymmetricOperator {
        // Tridiagonal 1D Laplacian, dim 6.
        let dim = 6;
        let mut rows = vec![Vec::new(); dim];
        for i in 0..dim {
            rows[i].push((i, 2.0));
            if i > 0 {
                rows[i].push((i - 1, -1.0));
            }
            if i + 1 < dim {
                rows[i].push((i + 1, -1.0));
            }
        }
        SymmetricOperator::from_rows(rows, "1d laplacian")
    }

    #[test]
    fn cg_solves_the_tridiagonal_system() {
        let a = small_spd();
        let rhs = vec![1.0, 0.0, 2.0, -1.0, 0.5, 0.0];
        let (x, _) = pcg(&a, &rhs, None, 1e-12, 200).unwrap();
        let ax = a.apply(&x);
        for (l, r) in ax.iter().zip(&rhs) {
            assert!((l - r).abs() < 1e-10);
        }
    }

    #[test]
    fn cg_reports_indefinite_operators() {
        let dim = 3;
        let rows = vec![
            vec![(0, 1.0)],
            vec![(1, -2.0)],
            vec![(2, 1.0)],
        ];
        let a = SymmetricOperator::from_rows(rows, "indefinite");
        let rhs = vec![1.0; dim];
        match pcg(&a, &rhs, None, 1e-10, 50) {
            Err(SolverError::Breakdown(_)) => {}
            other => panic!("expected breakdown, got {other:?}"),
        }
    }

    #[test]
    fn scaled_sum_matches_entrywise_arithmetic() {
        let a = small_spd();
        let b = small_spd();
        let c = scaled_sum(&a, 1.0, &b, -0.25, "combo").unwrap();
        for i in 0..a.dim {
            for j in 0..a.dim {
                assert!((c.get(i, j) - 0.75 * a.get(i, j)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn shifted_sum_action_agrees_with_the_dense_combination() {
        let a = small_spd();
        let b = small_spd();
        let s = ShiftedSum { a: &a, b: &b, shift: 0.5 };
        let x = vec![1.0, -2.0, 0.5, 0.0, 3.0, -1.0];
        let lazy = s.apply_vec(&x);
        let dense = scaled_sum(&a, 1.0, &b, 0.5, "dense").unwrap().apply(&x);
        for (l, d) in lazy.iter().zip(&dense) {
            assert!((l - d).abs() < 1e-14);
        }
        let diag = s.diagonal();
        assert!((diag[0] - 3.0).abs() < 1e-15);
    }
}
