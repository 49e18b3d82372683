//! Discrete check of the substitution identity
//! `int |grad(rho v)|^2 - int (-lap rho / rho)(rho v)^2 = int rho^2 |grad v|^2`.

use hardylab_domain::Mesh;
use hardylab_params::{sphere_area, ClosedFormSolution};

use crate::forms::{
    element_weight_integral, integrate_gradient_sq, integrate_weighted_sq, Quadrature,
};
use crate::local::{duffy_points, p1_gradients, rotate_origin_first};
use crate::AssemblyError;

/// Relative defect of the substitution identity for the model weight
/// `rho = z |x|^{-alpha}`, with `v` a nodal field supported away from the
/// origin.
///
/// The left side combines the gradient energy of the interpolant of
/// `rho * v` with `alpha (n - alpha) int (rho v)^2 / |x|^2`; the right side
/// integrates `rho^2` against the constant per-element gradient of `v`.
/// Interpolating the product costs an O(h^2) commutation error, so the
/// returned defect shrinks about fourfold per uniform refinement rather than
/// vanishing. A zero field returns exactly zero.
///
/// Fails when the weight is nonpositive at a quadrature point of an element
/// where `v` is nonzero, and when `v` loads the origin node itself.
pub fn hardy_identity_residual(
    mesh: &Mesh,
    n: usize,
    rho: &ClosedFormSolution,
    v: &[f64],
    quad: &Quadrature,
) -> Result<f64, AssemblyError> {
    if n < 3 {
        return Err(AssemblyError::Dimension(n));
    }
    assert_eq!(v.len(), mesh.nodes.len(), "field must cover every node");
    let alpha = rho.alpha;
    let origin = mesh.origin_node().ok_or(AssemblyError::NoOrigin)?;
    if v[origin] != 0.0 {
        return Err(AssemblyError::WeightSign { element: 0, z: 0.0 });
    }
    let omega = sphere_area(n - 2);
    let (xs, ws) = quad.rule01();

    // right side: rho^2 |grad v|^2 with the gradient constant per element
    let mut rhs = 0.0;
    for (t, &tri) in mesh.triangles.iter().enumerate() {
        if tri.iter().all(|&a| v[a] == 0.0) {
            continue;
        }
        let pts = mesh.tri_coords(t);
        let (g, area2) = p1_gradients(pts);
        if area2 <= 0.0 {
            return Err(AssemblyError::SingularElement { element: t, area2 });
        }
        let rot = rotate_origin_first(tri, pts, origin);
        let at_origin = rot.is_some();
        if let Some((_, crd)) = rot {
            // sign of rho along a ray is its sign at the far edge
            for tq in &xs {
                let q = [
                    (1.0 - tq) * crd[1][0] + tq * crd[2][0],
                    (1.0 - tq) * crd[1][1] + tq * crd[2][1],
                ];
                if rho.eval(&q) <= 0.0 {
                    return Err(AssemblyError::WeightSign { element: t, z: q[0] });
                }
            }
        } else {
            for (x, _) in duffy_points(pts, &xs, &ws) {
                if rho.eval(&x) <= 0.0 {
                    return Err(AssemblyError::WeightSign { element: t, z: x[0] });
                }
            }
        }
        let mut grad = [0.0, 0.0];
        for a in 0..3 {
            grad[0] += v[tri[a]] * g[a][0];
            grad[1] += v[tri[a]] * g[a][1];
        }
        let wgt = element_weight_integral(pts, n, 2, 2.0 * alpha, at_origin, &xs, &ws);
        rhs += omega * wgt * (grad[0] * grad[0] + grad[1] * grad[1]);
    }
    if rhs == 0.0 {
        return Ok(0.0);
    }

    // left side on the interpolant of rho * v
    let mut w = vec![0.0; v.len()];
    for (i, (&vi, p)) in v.iter().zip(&mesh.nodes).enumerate() {
        if vi != 0.0 {
            w[i] = vi * rho.eval(p);
        }
    }
    let grad_term = integrate_gradient_sq(mesh, n, &w, quad)?;
    let mass_term =
        alpha * (n as f64 - alpha) * integrate_weighted_sq(mesh, n, 2.0, &w, quad)?;
    Ok((grad_term - mass_term - rhs).abs() / rhs)
}
