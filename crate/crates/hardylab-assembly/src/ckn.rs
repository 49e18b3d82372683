//! Margin of the axially weighted interpolation inequality
//! `(int |x|^{-bq} z^q |u|^q)^{2/q} <= C int z^2 |x|^{-2a} |grad u|^2`.

use hardylab_domain::Mesh;
use hardylab_params::sphere_area;

use crate::forms::{element_weight_integral, Quadrature};
use crate::local::{barycentric, duffy_points, p1_gradients, rotate_origin_first, tau_moment};
use crate::AssemblyError;

/// Ratio of the gradient side to the weighted-norm side for a nodal field.
///
/// Admissible exponents are `a < n/2` and `0 <= b - a <= 1`, with
/// `q = 2n/(n - 2 + 2(b - a))` fixed by scale invariance. The axial factor
/// `z^q` is clamped to the half-space `z > 0`, so fields living where `z < 0`
/// contribute nothing to the weighted norm. A field with vanishing weighted
/// norm reports `+inf`: the inequality is vacuous there. The ratio is
/// invariant under `u -> c u`.
pub fn ckn_margin(
    mesh: &Mesh,
    n: usize,
    a: f64,
    b: f64,
    u: &[f64],
    quad: &Quadrature,
) -> Result<f64, AssemblyError> {
    if n < 3 {
        return Err(AssemblyError::Dimension(n));
    }
    if !a.is_finite() || a >= n as f64 / 2.0 {
        return Err(AssemblyError::BadExponent(format!(
            "a = {a} must lie below n/2 = {}",
            n as f64 / 2.0
        )));
    }
    if !(0.0..=1.0).contains(&(b - a)) {
        return Err(AssemblyError::BadExponent(format!(
            "b - a = {} outside [0, 1]",
            b - a
        )));
    }
    assert_eq!(u.len(), mesh.nodes.len(), "field must cover every node");
    let q = 2.0 * n as f64 / (n as f64 - 2.0 + 2.0 * (b - a));
    let omega = sphere_area(n - 2);
    let origin = mesh.origin_node().ok_or(AssemblyError::NoOrigin)?;
    let (xs, ws) = quad.rule01();
    let mut grad_side = 0.0;
    let mut norm_side = 0.0;
    for (t, &tri) in mesh.triangles.iter().enumerate() {
        let pts = mesh.tri_coords(t);
        let (g, area2) = p1_gradients(pts);
        if area2 <= 0.0 {
            return Err(AssemblyError::SingularElement { element: t, area2 });
        }
        if tri.iter().all(|&j| u[j] == 0.0) {
            continue;
        }
        let mut grad = [0.0, 0.0];
        for c in 0..3 {
            grad[0] += u[tri[c]] * g[c][0];
            grad[1] += u[tri[c]] * g[c][1];
        }
        let gsq = grad[0] * grad[0] + grad[1] * grad[1];
        match rotate_origin_first(tri, pts, origin) {
            Some((idx, crd)) => {
                grad_side += gsq * element_weight_integral(pts, n, 2, 2.0 * a, true, &xs, &ws);
                if u[idx[0]] == 0.0 {
                    // u_h = tau U(t): the radial moment is exact
                    let pp = 2.0 * q - b * q + (n as f64 - 1.0);
                    let m = tau_moment(pp, 0);
                    for (tq, wt) in xs.iter().zip(&ws) {
                        let qp = [
                            (1.0 - tq) * crd[1][0] + tq * crd[2][0],
                            (1.0 - tq) * crd[1][1] + tq * crd[2][1],
                        ];
                        let qn2 = qp[0] * qp[0] + qp[1] * qp[1];
                        let big_u = (1.0 - tq) * u[idx[1]] + tq * u[idx[2]];
                        norm_side += area2
                            * wt
                            * m
                            * qp[0].max(0.0).powf(q)
                            * qp[1].powi(n as i32 - 2)
                            * qn2.powf(-b * q / 2.0)
                            * big_u.abs().powf(q);
                    }
                } else {
                    // nonzero origin value: tensor rule on the collapsed square
                    let pw = q - b * q + (n as f64 - 1.0);
                    for (tau, wtau) in xs.iter().zip(&ws) {
                        for (tq, wt) in xs.iter().zip(&ws) {
                            let qp = [
                                (1.0 - tq) * crd[1][0] + tq * crd[2][0],
                                (1.0 - tq) * crd[1][1] + tq * crd[2][1],
                            ];
                            let qn2 = qp[0] * qp[0] + qp[1] * qp[1];
                            let uh = (1.0 - tau) * u[idx[0]]
                                + tau * ((1.0 - tq) * u[idx[1]] + tq * u[idx[2]]);
                            norm_side += area2
                                * wtau
                                * wt
                                * tau.powf(pw)
                                * qp[0].max(0.0).powf(q)
                                * qp[1].powi(n as i32 - 2)
                                * qn2.powf(-b * q / 2.0)
                                * uh.abs().powf(q);
                        }
                    }
                }
            }
            None => {
                grad_side += gsq * element_weight_integral(pts, n, 2, 2.0 * a, false, &xs, &ws);
                for (x, wq) in duffy_points(pts, &xs, &ws) {
                    let lam = barycentric(pts, x);
                    let uh = lam[0] * u[tri[0]] + lam[1] * u[tri[1]] + lam[2] * u[tri[2]];
                    norm_side += wq
                        * x[0].max(0.0).powf(q)
                        * x[1].powi(n as i32 - 2)
                        * (x[0] * x[0] + x[1] * x[1]).powf(-b * q / 2.0)
                        * uh.abs().powf(q);
                }
            }
        }
    }
    if norm_side <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(omega * grad_side / (omega * norm_side).powf(2.0 / q))
}
