//! Critical-exponent functional `int |u|^{2*(s)} / |x|^s` and its gradient.

use hardylab_domain::Mesh;
use hardylab_params::{critical_exponent, sphere_area};

use crate::forms::Quadrature;
use crate::local::{barycentric, duffy_points, p1_gradients, rotate_origin_first, tau_moment};
use crate::AssemblyError;

/// Value and nodal gradient of `F(u) = int |u_h|^{2*(s)} |x|^{-s}` over the
/// revolved body.
///
/// The gradient is the exact derivative of the quadratured value, entry `j`
/// being `2*(s) int |u_h|^{2*(s)-2} u_h phi_j |x|^{-s}`. On an element at the
/// origin the radial direction is integrated exactly when the origin value
/// vanishes; a perturbation that keeps the origin value at zero therefore
/// stays on one quadrature branch, and finite differences of the value
/// reproduce the gradient to rounding.
pub fn hs_functional(
    mesh: &Mesh,
    n: usize,
    s: f64,
    u: &[f64],
    quad: &Quadrature,
) -> Result<(f64, Vec<f64>), AssemblyError> {
    if n < 3 {
        return Err(AssemblyError::Dimension(n));
    }
    if !(0.0..2.0).contains(&s) {
        return Err(AssemblyError::BadExponent(format!(
            "weight exponent s = {s} outside [0, 2)"
        )));
    }
    assert_eq!(u.len(), mesh.nodes.len(), "field must cover every node");
    let p2s = critical_exponent(n, s)?;
    let omega = sphere_area(n - 2);
    let origin = mesh.origin_node().ok_or(AssemblyError::NoOrigin)?;
    let (xs, ws) = quad.rule01();
    let mut value = 0.0;
    let mut grad = vec![0.0; u.len()];
    // chain rule factor d|u|^p/du = p |u|^{p-2} u, safe at u = 0 since p > 2
    let dpow = |v: f64| v.abs().powf(p2s - 2.0) * v;
    for (t, &tri) in mesh.triangles.iter().enumerate() {
        let pts = mesh.tri_coords(t);
        let (_, area2) = p1_gradients(pts);
        if area2 <= 0.0 {
            return Err(AssemblyError::SingularElement { element: t, area2 });
        }
        match rotate_origin_first(tri, pts, origin) {
            Some((idx, crd)) if u[idx[0]] == 0.0 => {
                // u_h = tau * U(t) on the element, so tau factors out exactly
                let pp = p2s + (n as f64 - 1.0) - s;
                let m_edge = tau_moment(pp, 0);
                let m_origin = tau_moment(pp - 1.0, 1);
                for (tq, wt) in xs.iter().zip(&ws) {
                    let q = [
                        (1.0 - tq) * crd[1][0] + tq * crd[2][0],
                        (1.0 - tq) * crd[1][1] + tq * crd[2][1],
                    ];
                    let qn2 = q[0] * q[0] + q[1] * q[1];
                    let shape = area2 * wt * q[1].powi(n as i32 - 2) * qn2.powf(-s / 2.0);
                    let lam = [1.0 - tq, *tq];
                    let big_u = lam[0] * u[idx[1]] + lam[1] * u[idx[2]];
                    value += shape * m_edge * big_u.abs().powf(p2s);
                    let d = p2s * dpow(big_u) * shape;
                    grad[idx[0]] += d * m_origin;
                    grad[idx[1]] += d * lam[0] * m_edge;
                    grad[idx[2]] += d * lam[1] * m_edge;
                }
            }
            Some((idx, crd)) => {
                // nonzero origin value: tensor rule over the collapsed square
                let pw = (n as f64 - 1.0) - s;
                for (tau, wtau) in xs.iter().zip(&ws) {
                    for (tq, wt) in xs.iter().zip(&ws) {
                        let q = [
                            (1.0 - tq) * crd[1][0] + tq * crd[2][0],
                            (1.0 - tq) * crd[1][1] + tq * crd[2][1],
                        ];
                        let qn2 = q[0] * q[0] + q[1] * q[1];
                        let shape = area2
                            * wtau
                            * wt
                            * tau.powf(pw)
                            * q[1].powi(n as i32 - 2)
                            * qn2.powf(-s / 2.0);
                        let lam = [1.0 - tq, *tq];
                        let phi = [1.0 - tau, tau * lam[0], tau * lam[1]];
                        let uh = phi[0] * u[idx[0]] + phi[1] * u[idx[1]] + phi[2] * u[idx[2]];
                        value += shape * uh.abs().powf(p2s);
                        let d = p2s * dpow(uh) * shape;
                        for a in 0..3 {
                            grad[idx[a]] += d * phi[a];
                        }
                    }
                }
            }
            None => {
                for (x, wq) in duffy_points(pts, &xs, &ws) {
                    let lam = barycentric(pts, x);
                    let shape = wq
                        * x[1].powi(n as i32 - 2)
                        * (x[0] * x[0] + x[1] * x[1]).powf(-s / 2.0);
                    let uh = lam[0] * u[tri[0]] + lam[1] * u[tri[1]] + lam[2] * u[tri[2]];
                    value += shape * uh.abs().powf(p2s);
                    let d = p2s * dpow(uh) * shape;
                    for a in 0..3 {
                        grad[tri[a]] += d * lam[a];
                    }
                }
            }
        }
        if !value.is_finite() {
            return Err(AssemblyError::NonFinite { what: "critical functional", element: t });
        }
    }
    for g in &mut grad {
        *g *= omega;
    }
    Ok((omega * value, grad))
}
