//! Axisymmetric domains built from preset shapes or custom generating curves.

use serde::{Deserialize, Serialize};

use crate::curve::{CurveSegment, GeneratingCurve, GEOM_TOL};
use crate::DomainError;

/// Preset shapes. All place the distinguished boundary point at the origin
/// and are symmetric about the axis `r = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case")]
pub enum Preset {
    /// Ball of the given radius centred at `(radius, 0, ..., 0)`; the origin
    /// sits on its boundary and the interior lies in the half-space `x1 > 0`
    /// only infinitesimally (the ball bulges back past any fixed plane).
    TangentBall { radius: f64 },
    /// Intersection of the ball of the given radius about the origin with the
    /// half-space `x1 > 0`. The flat face contains the origin.
    HalfBall { radius: f64 },
    /// Ball of radius `radius` about the origin with the closed ball of
    /// radius `delta/4` centred at `(-delta/4, 0, ..., 0)` removed. The
    /// excised sphere passes through the origin, so the boundary near the
    /// origin curves away from the domain.
    ChoppedBall { radius: f64, delta: f64 },
    /// Image of the half ball under `(x1, x') -> (x1 - amplitude * phi(|x'|), x')`
    /// where `phi` is a smooth bump supported in `|x'| < bump_radius` with
    /// `phi(0) = phi'(0) = 0` and `phi''(0) = 2`. Positive amplitude pushes
    /// the face outward through the tangent plane, producing negative mean
    /// curvature at the origin.
    BumpedHalfBall { radius: f64, amplitude: f64, bump_radius: f64 },
    /// User-supplied generating curve.
    Custom { curve: GeneratingCurve },
}

/// Smooth bump `phi(r) = r^2 * exp(1 - 1 / (1 - (r/r0)^2))` for `r < r0`,
/// zero beyond; infinitely differentiable with `phi''(0) = 2`.
pub fn bump_profile(r: f64, r0: f64) -> f64 {
    let x = r / r0;
    if x.abs() >= 1.0 {
        return 0.0;
    }
    let g = 1.0 - x * x;
    r * r * (1.0 - 1.0 / g).exp()
}

/// A body of revolution in dimension `n` described by its meridian curve.
/// Immutable after construction; all geometric queries are `&self`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisymmetricDomain {
    pub name: String,
    pub n: usize,
    pub curve: GeneratingCurve,
    pub preset: Preset,
}

/// Number of polyline nodes used to trace one bumped face. The spacing is
/// graded toward the origin so chord error stays below quadrature accuracy.
fn bumped_face_polyline(radius: f64, amplitude: f64, bump_radius: f64) -> Vec<[f64; 2]> {
    let mut rs = vec![0.0];
    let floor = 2e-4 * radius;
    let mut r = floor;
    while r < radius {
        rs.push(r);
        r += (r / 6.0).max(floor);
    }
    rs.push(radius);
    rs.iter()
        .map(|&r| {
            let z = -amplitude * bump_profile(r, bump_radius);
            // Normalize -0.0 so exact endpoint matching sees plain zeros.
            [if z == 0.0 { 0.0 } else { z }, r]
        })
        .collect()
}

pub fn make_domain(n: usize, preset: &Preset) -> Result<AxisymmetricDomain, DomainError> {
    if n < 3 {
        return Err(DomainError::InvalidPreset(format!("dimension n = {n} must be at least 3")));
    }
    let positive = |v: f64, what: &str| -> Result<(), DomainError> {
        if v <= 0.0 || !v.is_finite() {
            Err(DomainError::InvalidPreset(format!("{what} must be positive and finite, got {v}")))
        } else {
            Ok(())
        }
    };
    let (name, curve) = match preset {
        Preset::TangentBall { radius } => {
            positive(*radius, "radius")?;
            let r = *radius;
            let curve = GeneratingCurve::new(vec![CurveSegment::arc(
                [0.0, 0.0],
                [2.0 * r, 0.0],
                [r, 0.0],
                false,
            )]);
            (format!("tangent_ball_r{r}"), curve)
        }
        Preset::HalfBall { radius } => {
            positive(*radius, "radius")?;
            let r = *radius;
            let curve = GeneratingCurve::new(vec![
                CurveSegment::line([0.0, 0.0], [0.0, r]),
                CurveSegment::arc([0.0, r], [r, 0.0], [0.0, 0.0], false),
            ]);
            (format!("half_ball_r{r}"), curve)
        }
        Preset::ChoppedBall { radius, delta } => {
            positive(*radius, "radius")?;
            positive(*delta, "delta")?;
            if *delta > *radius {
                return Err(DomainError::InvalidPreset(format!(
                    "delta = {delta} must not exceed the ball radius {radius}"
                )));
            }
            let (r0, d) = (*radius, *delta);
            let curve = GeneratingCurve::new(vec![
                // Outer sphere, equator to equator over the pole.
                CurveSegment::arc([r0, 0.0], [-r0, 0.0], [0.0, 0.0], true),
                // Excised sphere through the origin.
                CurveSegment::arc([0.0, 0.0], [-d / 2.0, 0.0], [-d / 4.0, 0.0], true),
            ]);
            (format!("chopped_ball_r{r0}_d{d}"), curve)
        }
        Preset::BumpedHalfBall { radius, amplitude, bump_radius } => {
            positive(*radius, "radius")?;
            positive(*bump_radius, "bump_radius")?;
            if !amplitude.is_finite() {
                return Err(DomainError::InvalidPreset("amplitude must be finite".into()));
            }
            if *bump_radius >= 0.95 * *radius {
                return Err(DomainError::InvalidPreset(format!(
                    "bump_radius = {bump_radius} must stay below the rim (0.95 * radius)"
                )));
            }
            if amplitude.abs() * bump_radius > 0.5 * radius {
                return Err(DomainError::InvalidPreset(format!(
                    "amplitude = {amplitude} too large for radius {radius}"
                )));
            }
            let (r, t, r0) = (*radius, *amplitude, *bump_radius);
            let mut segs = Vec::new();
            if t == 0.0 {
                segs.push(CurveSegment::line([0.0, 0.0], [0.0, r]));
            } else {
                let pts = bumped_face_polyline(r, t, r0);
                for w in pts.windows(2) {
                    segs.push(CurveSegment::line(w[0], w[1]));
                }
            }
            segs.push(CurveSegment::arc([0.0, r], [r, 0.0], [0.0, 0.0], false));
            let curve = GeneratingCurve::new(segs);
            (format!("bumped_halfball_r{r}_t{t}"), curve)
        }
        Preset::Custom { curve } => ("custom".to_string(), curve.clone()),
    };
    curve.validate()?;
    Ok(AxisymmetricDomain { name, n, curve, preset: preset.clone() })
}

impl AxisymmetricDomain {
    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Membership test for a meridian point `(z, r)` with `r >= 0`. Points on
    /// the axis inside the body count as interior: the axis is not part of
    /// the boundary surface.
    pub fn contains(&self, p: [f64; 2]) -> bool {
        let (z, r) = (p[0], p[1]);
        if r < 0.0 {
            return false;
        }
        match &self.preset {
            Preset::TangentBall { radius } => {
                let dz = z - radius;
                dz * dz + r * r < radius * radius
            }
            Preset::HalfBall { radius } => z > 0.0 && z * z + r * r < radius * radius,
            Preset::ChoppedBall { radius, delta } => {
                let in_outer = z * z + r * r < radius * radius;
                let dz = z + delta / 4.0;
                let out_inner = dz * dz + r * r > (delta / 4.0) * (delta / 4.0);
                in_outer && out_inner
            }
            Preset::BumpedHalfBall { radius, amplitude, bump_radius } => {
                let z0 = z + amplitude * bump_profile(r, *bump_radius);
                z0 > 0.0 && z0 * z0 + r * r < radius * radius
            }
            Preset::Custom { .. } => self.contains_by_winding(p),
        }
    }

    /// Even-odd test casting a vertical ray upward from `(z, r)`; counts
    /// crossings with the generating curve. The axis closure never crosses a
    /// vertical ray with `r >= 0`, so chains alone give the right parity.
    fn contains_by_winding(&self, p: [f64; 2]) -> bool {
        let mut crossings = 0usize;
        for s in &self.curve.segments {
            // Sample-based crossing count; segments are short and smooth.
            let steps = 64;
            let mut prev = s.point(0.0);
            for k in 1..=steps {
                let q = s.point(k as f64 / steps as f64);
                let (za, zb) = (prev[0], q[0]);
                if (za > p[0]) != (zb > p[0]) {
                    let t = (p[0] - za) / (zb - za);
                    let rc = prev[1] + t * (q[1] - prev[1]);
                    if rc > p[1] {
                        crossings += 1;
                    }
                }
                prev = q;
            }
        }
        crossings % 2 == 1
    }

    /// Mean curvature of the boundary surface at the origin with respect to
    /// the interior. The boundary is locally a graph `x1 = psi(|x'|)` with the
    /// interior above it; by axial symmetry the origin is umbilic and the
    /// mean curvature is `(n - 1) * psi''(0)`. A tangent ball of radius `R`
    /// yields `(n - 1) / R`; the half ball yields zero; a face pushed outward
    /// through the tangent plane yields a negative value.
    pub fn mean_curvature_at_origin(&self) -> Result<f64, DomainError> {
        let n1 = (self.n - 1) as f64;
        match &self.preset {
            Preset::TangentBall { radius } => Ok(n1 / radius),
            Preset::HalfBall { .. } => Ok(0.0),
            Preset::ChoppedBall { delta, .. } => Ok(-4.0 * n1 / delta),
            // The bump has phi''(0) = 2 and the face is z = -t * phi(r).
            Preset::BumpedHalfBall { amplitude, .. } => Ok(-2.0 * amplitude * n1),
            Preset::Custom { curve } => {
                let at_origin = curve.segments_at_origin();
                if at_origin.is_empty() {
                    return Err(DomainError::OriginMissing);
                }
                let mut kappa: Option<f64> = None;
                for &i in &at_origin {
                    let k = curve.segments[i].graph_curvature_at_origin()?;
                    match kappa {
                        None => kappa = Some(k),
                        Some(k0) => {
                            if (k - k0).abs() > 1e-7 * (1.0 + k0.abs()) {
                                return Err(DomainError::CurvatureUndefined(format!(
                                    "segments meeting at the origin disagree: {k0} vs {k}"
                                )));
                            }
                        }
                    }
                }
                Ok(n1 * kappa.unwrap())
            }
        }
    }

    /// Distance from a meridian point to the boundary surface. For a body of
    /// revolution this equals the meridian distance to the generating curve,
    /// since both the point and the nearest surface point can be rotated into
    /// the same half-plane. The point must lie in the closure of the domain.
    pub fn distance_to_boundary(&self, p: [f64; 2]) -> Result<f64, DomainError> {
        let (d, _) = self.curve.distance(p);
        let tol = GEOM_TOL * self.curve.scale();
        if d <= tol || self.contains(p) {
            Ok(d)
        } else {
            Err(DomainError::PointOutsideDomain(p[0], p[1]))
        }
    }

    /// A point comfortably inside the domain, used to seed flood fills and
    /// probe orientations. Chosen near the origin along the inward normal.
    pub fn interior_probe(&self) -> [f64; 2] {
        let scale = self.curve.scale();
        for k in 1..60 {
            let eps = scale * 1e-3 * 1.25f64.powi(k);
            let p = [eps, 0.5 * eps];
            if self.contains(p) {
                let (d, _) = self.curve.distance(p);
                if d > 0.2 * eps {
                    return p;
                }
            }
        }
        // Fall back to the centroid of curve samples pulled slightly inward.
        [0.5 * scale, 0.25 * scale]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn presets_validate_and_contain_probe_points() {
        let presets = [
            Preset::TangentBall { radius: 1.0 },
            Preset::HalfBall { radius: 1.0 },
            Preset::ChoppedBall { radius: 1.0, delta: 0.4 },
            Preset::BumpedHalfBall { radius: 1.0, amplitude: 0.3, bump_radius: 0.5 },
        ];
        for p in &presets {
            let dom = make_domain(3, p).unwrap();
            assert!(dom.contains(dom.interior_probe()), "probe outside for {:?}", p);
        }
    }

    #[test]
    fn tangent_ball_membership_matches_sphere_equation() {
        let dom = make_domain(3, &Preset::TangentBall { radius: 1.0 }).unwrap();
        assert!(dom.contains([1.0, 0.0]));
        assert!(dom.contains([0.1, 0.1]));
        assert!(!dom.contains([-0.01, 0.1]));
        assert!(!dom.contains([1.0, 1.001]));
    }

    #[test]
    fn curvature_signs_match_shape() {
        let n = 3;
        let tb = make_domain(n, &Preset::TangentBall { radius: 1.0 }).unwrap();
        assert_relative_eq!(tb.mean_curvature_at_origin().unwrap(), 2.0);
        let hb = make_domain(n, &Preset::HalfBall { radius: 1.0 }).unwrap();
        assert_relative_eq!(hb.mean_curvature_at_origin().unwrap(), 0.0);
        let cb = make_domain(n, &Preset::ChoppedBall { radius: 1.0, delta: 0.4 }).unwrap();
        assert_relative_eq!(cb.mean_curvature_at_origin().unwrap(), -20.0);
        let bb =
            make_domain(n, &Preset::BumpedHalfBall { radius: 1.0, amplitude: 0.3, bump_radius: 0.5 })
                .unwrap();
        assert_relative_eq!(bb.mean_curvature_at_origin().unwrap(), -1.2);
    }

    #[test]
    fn distance_examples() {
        let tb = make_domain(3, &Preset::TangentBall { radius: 1.0 }).unwrap();
        assert_relative_eq!(tb.distance_to_boundary([1.0, 0.0]).unwrap(), 1.0);
        let hb = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
        assert_relative_eq!(hb.distance_to_boundary([0.1, 0.0]).unwrap(), 0.1);
        assert!(hb.distance_to_boundary([-0.5, 0.5]).is_err());
    }

    #[test]
    fn bumped_with_zero_amplitude_equals_half_ball() {
        let b = make_domain(3, &Preset::BumpedHalfBall {
            radius: 1.0,
            amplitude: 0.0,
            bump_radius: 0.5,
        })
        .unwrap();
        let h = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
        assert_eq!(b.curve.segments.len(), h.curve.segments.len());
        for (x, y) in b.curve.segments.iter().zip(&h.curve.segments) {
            assert_eq!(x.a, y.a);
            assert_eq!(x.b, y.b);
        }
    }

    #[test]
    fn custom_curve_winding_agrees_with_analytic() {
        let hb = make_domain(3, &Preset::HalfBall { radius: 1.0 }).unwrap();
        let custom = make_domain(3, &Preset::Custom { curve: hb.curve.clone() }).unwrap();
        for &p in &[[0.5, 0.5], [0.01, 0.9], [0.9, 0.5], [0.5, 0.01], [0.2, 0.0]] {
            assert_eq!(hb.contains(p), custom.contains(p), "at {:?}", p);
        }
    }
}
