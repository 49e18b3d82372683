//! Assembly of the quadratic forms and the direct element-sum integrators.

use hardylab_domain::Mesh;
use hardylab_params::sphere_area;

use crate::gauss::gauss01;
use crate::local::{barycentric, duffy_points, p1_gradients, rotate_origin_first, tau_moment};
use crate::sparse::{FreeMap, SymmetricOperator};
use crate::AssemblyError;

/// Gauss order used per direction on each element. Elements touching the
/// origin use the same order along the opposite edge, with the radial
/// direction integrated exactly through power moments.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub order: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { order: 12 }
    }
}

impl Quadrature {
    /// Order sufficient to integrate `r^{n-2}` times quadratic polynomials
    /// exactly away from the origin, with headroom for the singular weights
    /// on the graded layers near it.
    pub fn for_dimension(n: usize) -> Self {
        Quadrature { order: 12usize.max(n / 2 + 3) }
    }

    pub fn doubled(&self) -> Self {
        Quadrature { order: 2 * self.order }
    }

    pub(crate) fn rule01(&self) -> (Vec<f64>, Vec<f64>) {
        gauss01(self.order)
    }
}

/// Local 3x3 matrix of `int phi_a phi_b |x|^{-w} r^{n-2}` on a triangle with
/// its first vertex at the origin; radial moments are exact.
fn origin_local_mass(
    crd: [[f64; 2]; 3],
    n: usize,
    w: f64,
    xs: &[f64],
    ws: &[f64],
) -> [[f64; 3]; 3] {
    let (_, area2) = p1_gradients(crd);
    let p0 = (n as f64 - 1.0) - w;
    let m2 = tau_moment(p0, 2);
    let m1 = tau_moment(p0 + 1.0, 1);
    let m0 = tau_moment(p0 + 2.0, 0);
    let mut acc = [[0.0; 3]; 3];
    for (t, wt) in xs.iter().zip(ws) {
        let q = [
            (1.0 - t) * crd[1][0] + t * crd[2][0],
            (1.0 - t) * crd[1][1] + t * crd[2][1],
        ];
        let qn2 = q[0] * q[0] + q[1] * q[1];
        let base = area2 * wt * q[1].powi(n as i32 - 2) * qn2.powf(-w / 2.0);
        let lam = [1.0 - t, *t];
        acc[0][0] += base * m2;
        for i in 1..3 {
            let v = base * lam[i - 1] * m1;
            acc[0][i] += v;
            acc[i][0] += v;
            for j in 1..3 {
                acc[i][j] += base * lam[i - 1] * lam[j - 1] * m0;
            }
        }
    }
    acc
}

/// Local 3x3 matrix of the same form on an element away from the origin.
fn regular_local_mass(
    pts: [[f64; 2]; 3],
    n: usize,
    w: f64,
    xs: &[f64],
    ws: &[f64],
) -> [[f64; 3]; 3] {
    let mut acc = [[0.0; 3]; 3];
    for (x, wq) in duffy_points(pts, xs, ws) {
        let lam = barycentric(pts, x);
        let wgt = wq
            * x[1].powi(n as i32 - 2)
            * (x[0] * x[0] + x[1] * x[1]).powf(-w / 2.0);
        for a in 0..3 {
            for b in 0..3 {
                acc[a][b] += wgt * lam[a] * lam[b];
            }
        }
    }
    acc
}

/// Weighted element volume `int z^axial |x|^{-inv} r^{n-2}` over one element.
pub(crate) fn element_weight_integral(
    pts: [[f64; 2]; 3],
    n: usize,
    axial: i32,
    inv: f64,
    touches_origin: bool,
    xs: &[f64],
    ws: &[f64],
) -> f64 {
    if touches_origin {
        let (_, area2) = p1_gradients(pts);
        let p = (n as f64 - 2.0) + axial as f64 - inv + 1.0;
        let mut acc = 0.0;
        for (t, wt) in xs.iter().zip(ws) {
            let q = [
                (1.0 - t) * pts[1][0] + t * pts[2][0],
                (1.0 - t) * pts[1][1] + t * pts[2][1],
            ];
            let qn2 = q[0] * q[0] + q[1] * q[1];
            acc += wt * q[0].powi(axial) * q[1].powi(n as i32 - 2) * qn2.powf(-inv / 2.0);
        }
        area2 * acc / (p + 1.0)
    } else {
        let mut acc = 0.0;
        for (x, wq) in duffy_points(pts, xs, ws) {
            acc += wq
                * x[0].powi(axial)
                * x[1].powi(n as i32 - 2)
                * (x[0] * x[0] + x[1] * x[1]).powf(-inv / 2.0);
        }
        acc
    }
}

fn check_local(
    local: &[[f64; 3]; 3],
    what: &'static str,
    element: usize,
) -> Result<(), AssemblyError> {
    for row in local {
        for v in row {
            if !v.is_finite() {
                return Err(AssemblyError::NonFinite { what, element });
            }
        }
    }
    Ok(())
}

fn assemble_mass_like(
    mesh: &Mesh,
    n: usize,
    w: f64,
    quad: &Quadrature,
    what: &'static str,
) -> Result<SymmetricOperator, AssemblyError> {
    if n < 3 {
        return Err(AssemblyError::Dimension(n));
    }
    let omega = sphere_area(n - 2);
    let fm = FreeMap::from_mesh(mesh);
    let origin = mesh.origin_node().ok_or(AssemblyError::NoOrigin)?;
    let (xs, ws) = quad.rule01();
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); fm.n_free()];
    for (t, &tri) in mesh.triangles.iter().enumerate() {
        let pts = mesh.tri_coords(t);
        let (_, area2) = p1_gradients(pts);
        if area2 <= 0.0 {
            return Err(AssemblyError::SingularElement { element: t, area2 });
        }
        let (idx, local) = match rotate_origin_first(tri, pts, origin) {
            Some((idx, crd)) => (idx, origin_local_mass(crd, n, w, &xs, &ws)),
            None => (tri, regular_local_mass(pts, n, w, &xs, &ws)),
        };
        check_local(&local, what, t)?;
        for a in 0..3 {
            let Some(fa) = fm.free_of_node[idx[a]] else { continue };
            for b in 0..3 {
                if let Some(fb) = fm.free_of_node[idx[b]] {
                    rows[fa].push((fb, omega * local[a][b]));
                }
            }
        }
    }
    Ok(SymmetricOperator::from_rows(rows, what))
}

/// Stiffness form `int grad u . grad v` over the revolved body, reduced to
/// the meridian plane. Dirichlet nodes (boundary curve and origin) are
/// eliminated; the symmetry axis carries no constraint.
pub fn assemble_stiffness(
    mesh: &Mesh,
    n: usize,
    quad: &Quadrature,
) -> Result<SymmetricOperator, AssemblyError> {
    if n < 3 {
        return Err(AssemblyError::Dimension(n));
    }
    let omega = sphere_area(n - 2);
    let fm = FreeMap::from_mesh(mesh);
    let (xs, ws) = quad.rule01();
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); fm.n_free()];
    for (t, &tri) in mesh.triangles.iter().enumerate() {
        let pts = mesh.tri_coords(t);
        let (g, area2) = p1_gradients(pts);
        if area2 <= 0.0 {
            return Err(AssemblyError::SingularElement { element: t, area2 });
        }
        // The gradient factor is constant, so only int r^{n-2} is quadratured
        // and the rule is exact for it.
        let vol = element_weight_integral(pts, n, 0, 0.0, false, &xs, &ws);
        for a in 0..3 {
            let Some(fa) = fm.free_of_node[tri[a]] else { continue };
            for b in 0..3 {
                if let Some(fb) = fm.free_of_node[tri[b]] {
                    let v = omega * vol * (g[a][0] * g[b][0] + g[a][1] * g[b][1]);
                    if !v.is_finite() {
                        return Err(AssemblyError::NonFinite { what: "stiffness", element: t });
                    }
                    rows[fa].push((fb, v));
                }
            }
        }
    }
    Ok(SymmetricOperator::from_rows(rows, "stiffness int |grad u|^2"))
}

/// Singular mass form `int u^2 / |x|^2` with the polar rule on elements at
/// the origin.
pub fn assemble_hardy(
    mesh: &Mesh,
    n: usize,
    quad: &Quadrature,
) -> Result<SymmetricOperator, AssemblyError> {
    assemble_mass_like(mesh, n, 2.0, quad, "singular mass int u^2/|x|^2")
}

/// Weighted mass form `int u^2 / |x|^s` for 0 <= s < 2; s = 0 is the plain
/// mass matrix.
pub fn assemble_weighted_mass(
    mesh: &Mesh,
    n: usize,
    s: f64,
    quad: &Quadrature,
) -> Result<SymmetricOperator, AssemblyError> {
    if !(0.0..2.0).contains(&s) {
        return Err(AssemblyError::BadExponent(format!(
            "weight exponent s = {s} outside [0, 2)"
        )));
    }
    assemble_mass_like(mesh, n, s, quad, "weighted mass int u^2/|x|^s")
}

/// Direct evaluation of `int |grad u_h|^2` over the revolved body for a full
/// node vector, without Dirichlet elimination.
pub fn integrate_gradient_sq(
    mesh: &Mesh,
    n: usize,
    u: &[f64],
    quad: &Quadrature,
) -> Result<f64, AssemblyError> {
    if n < 3 {
        return Err(AssemblyError::Dimension(n));
    }
    assert_eq!(u.len(), mesh.nodes.len(), "field must cover every node");
    let omega = sphere_area(n - 2);
    let (xs, ws) = quad.rule01();
    let mut acc = 0.0;
    for (t, &tri) in mesh.triangles.iter().enumerate() {
        let pts = mesh.tri_coords(t);
        let (g, area2) = p1_gradients(pts);
        if area2 <= 0.0 {
            return Err(AssemblyError::SingularElement { element: t, area2 });
        }
        let mut grad = [0.0, 0.0];
        for a in 0..3 {
            grad[0] += u[tri[a]] * g[a][0];
            grad[1] += u[tri[a]] * g[a][1];
        }
        let vol = element_weight_integral(pts, n, 0, 0.0, false, &xs, &ws);
        acc += omega * vol * (grad[0] * grad[0] + grad[1] * grad[1]);
    }
    Ok(acc)
}

/// Direct evaluation of `int u_h^2 |x|^{-w}` over the revolved body for a
/// full node vector.
pub fn integrate_weighted_sq(
    mesh: &Mesh,
    n: usize,
    w: f64,
    u: &[f64],
    quad: &Quadrature,
) -> Result<f64, AssemblyError> {
    if n < 3 {
        return Err(AssemblyError::Dimension(n));
    }
    assert_eq!(u.len(), mesh.nodes.len(), "field must cover every node");
    let omega = sphere_area(n - 2);
    let origin = mesh.origin_node().ok_or(AssemblyError::NoOrigin)?;
    let (xs, ws) = quad.rule01();
    let mut acc = 0.0;
    for (t, &tri) in mesh.triangles.iter().enumerate() {
        let pts = mesh.tri_coords(t);
        let (_, area2) = p1_gradients(pts);
        if area2 <= 0.0 {
            return Err(AssemblyError::SingularElement { element: t, area2 });
        }
        let (idx, local) = match rotate_origin_first(tri, pts, origin) {
            Some((idx, crd)) => (idx, origin_local_mass(crd, n, w, &xs, &ws)),
            None => (tri, regular_local_mass(pts, n, w, &xs, &ws)),
        };
        for a in 0..3 {
            for b in 0..3 {
                acc += omega * local[a][b] * u[idx[a]] * u[idx[b]];
            }
        }
    }
    Ok(acc)
}
