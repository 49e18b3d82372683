//! Element-local machinery: linear basis gradients, barycentric coordinates,
//! the collapsed-square quadrature map, and the polar rule for triangles with
//! a vertex at the origin.

/// Gradients of the three linear basis functions and the doubled signed area.
pub(crate) fn p1_gradients(p: [[f64; 2]; 3]) -> ([[f64; 2]; 3], f64) {
    let area2 = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1])
        - (p[1][1] - p[0][1]) * (p[2][0] - p[0][0]);
    let g = [
        [(p[1][1] - p[2][1]) / area2, (p[2][0] - p[1][0]) / area2],
        [(p[2][1] - p[0][1]) / area2, (p[0][0] - p[2][0]) / area2],
        [(p[0][1] - p[1][1]) / area2, (p[1][0] - p[0][0]) / area2],
    ];
    (g, area2)
}

/// Barycentric coordinates of `x` in the triangle.
pub(crate) fn barycentric(p: [[f64; 2]; 3], x: [f64; 2]) -> [f64; 3] {
    let (g, _) = p1_gradients(p);
    // Affine form lam_a(x) = 1 + g_a . (x - v_a) anchored at vertex a.
    let mut lam = [0.0; 3];
    for a in 0..3 {
        lam[a] = 1.0 + g[a][0] * (x[0] - p[a][0]) + g[a][1] * (x[1] - p[a][1]);
    }
    lam
}

/// Quadrature points `(point, weight)` on a physical triangle through the
/// collapsed-square map; exact for polynomials of degree `m - 1` and better.
pub(crate) fn duffy_points(
    p: [[f64; 2]; 3],
    xs: &[f64],
    ws: &[f64],
) -> Vec<([f64; 2], f64)> {
    let (_, area2) = p1_gradients(p);
    let mut out = Vec::with_capacity(xs.len() * xs.len());
    for (i, &xi) in xs.iter().enumerate() {
        for (j, &eta) in xs.iter().enumerate() {
            let dir = [
                (1.0 - eta) * (p[1][0] - p[0][0]) + eta * (p[2][0] - p[0][0]),
                (1.0 - eta) * (p[1][1] - p[0][1]) + eta * (p[2][1] - p[0][1]),
            ];
            let x = [p[0][0] + xi * dir[0], p[0][1] + xi * dir[1]];
            out.push((x, ws[i] * ws[j] * xi * area2));
        }
    }
    out
}

/// Exact radial moment `int_0^1 tau^p (1 - tau)^k dtau` for k in {0, 1, 2}.
pub(crate) fn tau_moment(p: f64, k: usize) -> f64 {
    match k {
        0 => 1.0 / (p + 1.0),
        1 => 1.0 / (p + 1.0) - 1.0 / (p + 2.0),
        2 => 1.0 / (p + 1.0) - 2.0 / (p + 2.0) + 1.0 / (p + 3.0),
        _ => unreachable!("only products of at most two basis functions arise"),
    }
}

/// Rotate the vertex list of triangle `tri` so the origin node comes first.
/// Returns the rotated global indices and coordinates, or None if the element
/// does not touch the origin.
pub(crate) fn rotate_origin_first(
    tri: [usize; 3],
    pts: [[f64; 2]; 3],
    origin: usize,
) -> Option<([usize; 3], [[f64; 2]; 3])> {
    let k = (0..3).find(|&k| tri[k] == origin)?;
    let idx = [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]];
    let crd = [pts[k], pts[(k + 1) % 3], pts[(k + 2) % 3]];
    Some((idx, crd))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barycentric_is_one_at_own_vertex() {
        let p = [[0.3, 0.1], [1.2, 0.4], [0.5, 1.7]];
        for a in 0..3 {
            let lam = barycentric(p, p[a]);
            for (b, l) in lam.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((l - want).abs() < 1e-13);
            }
        }
        let lam = barycentric(p, [0.6, 0.6]);
        assert!((lam[0] + lam[1] + lam[2] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn gradients_are_dual_to_vertices() {
        let p = [[0.0, 0.0], [2.0, 0.5], [0.5, 1.5]];
        let (g, area2) = p1_gradients(p);
        assert!(area2 > 0.0);
        for a in 0..3 {
            for b in 0..3 {
                let edge = [p[b][0] - p[a][0], p[b][1] - p[a][1]];
                let d = g[a][0] * edge[0] + g[a][1] * edge[1];
                let want = if a == b { 0.0 } else { -1.0 };
                assert!((d - want).abs() < 1e-13, "a={a} b={b}: {d}");
            }
        }
    }

    #[test]
    fn tau_moments_match_direct_sums() {
        // Riemann check at modest accuracy.
        for &(p, k) in &[(0.0, 0usize), (1.5, 1), (0.3, 2), (4.0, 0)] {
            let n = 400_000;
            let mut s = 0.0;
            for i in 0..n {
                let t = (i as f64 + 0.5) / n as f64;
                s += t.powf(p) * (1.0 - t).powi(k as i32);
            }
            s /= n as f64;
            assert!((s - tau_moment(p, k)).abs() < 1e-6, "p={p} k={k}");
        }
    }
}
