//! Generating curves in the meridian half-plane.
//!
//! A domain of revolution is described by a curve in the `(z, r)` half-plane
//! (`r >= 0`); rotating the curve about the axis `r = 0` produces the boundary
//! surface. The curve consists of one or more chains of segments. Every chain
//! starts and ends on the axis, and meets it orthogonally so that the revolved
//! surface is smooth there. The origin `(0, 0)` must be a segment endpoint:
//! this is the boundary point where the inverse-square potential is centred.

use serde::{Deserialize, Serialize};

use crate::DomainError;

/// Coordinate snap tolerance for axis and origin incidence checks.
pub const GEOM_TOL: f64 = 1e-9;

/// Geometry of a single curve segment between two control points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SegmentKind {
    /// Straight line from `a` to `b`.
    Line,
    /// Circular arc from `a` to `b` about `center`. The radius is implied by
    /// the endpoints; `ccw` selects the travel direction around the center.
    Arc { center: [f64; 2], ccw: bool },
}

/// One directed segment of a generating curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSegment {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub kind: SegmentKind,
}

/// Ordered list of segments; consecutive segments sharing an endpoint form a
/// chain, and a gap starts a new chain. Chains are disjoint closed pieces of
/// the meridian boundary once the axis closure is added.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratingCurve {
    pub segments: Vec<CurveSegment>,
}

fn hypot2(d: [f64; 2]) -> f64 {
    (d[0] * d[0] + d[1] * d[1]).sqrt()
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

impl CurveSegment {
    pub fn line(a: [f64; 2], b: [f64; 2]) -> Self {
        CurveSegment { a, b, kind: SegmentKind::Line }
    }

    pub fn arc(a: [f64; 2], b: [f64; 2], center: [f64; 2], ccw: bool) -> Self {
        CurveSegment { a, b, kind: SegmentKind::Arc { center, ccw } }
    }

    /// Arc radius; endpoint distances to the center may disagree by rounding,
    /// so the mean is used. Returns `None` for lines.
    pub fn radius(&self) -> Option<f64> {
        match self.kind {
            SegmentKind::Line => None,
            SegmentKind::Arc { center, .. } => {
                Some(0.5 * (hypot2(sub(self.a, center)) + hypot2(sub(self.b, center))))
            }
        }
    }

    /// Signed angular span of an arc: positive counter-clockwise, in `(0, 2pi]`.
    fn arc_span(&self) -> Option<(f64, f64)> {
        match self.kind {
            SegmentKind::Line => None,
            SegmentKind::Arc { center, ccw } => {
                let ta = (self.a[1] - center[1]).atan2(self.a[0] - center[0]);
                let tb = (self.b[1] - center[1]).atan2(self.b[0] - center[0]);
                let full = std::f64::consts::TAU;
                let mut span = (tb - ta).rem_euclid(full);
                if span < 1e-12 {
                    span = full;
                }
                if ccw {
                    Some((ta, span))
                } else {
                    Some((ta, span - full))
                }
            }
        }
    }

    /// Point at parameter `t` in `[0, 1]`.
    pub fn point(&self, t: f64) -> [f64; 2] {
        match self.kind {
            SegmentKind::Line => {
                [self.a[0] + t * (self.b[0] - self.a[0]), self.a[1] + t * (self.b[1] - self.a[1])]
            }
            SegmentKind::Arc { center, .. } => {
                if t <= 0.0 {
                    return self.a;
                }
                if t >= 1.0 {
                    return self.b;
                }
                let (ta, span) = self.arc_span().unwrap();
                let r = self.radius().unwrap();
                let th = ta + t * span;
                [center[0] + r * th.cos(), center[1] + r * th.sin()]
            }
        }
    }

    /// Unit tangent in the travel direction at parameter `t`.
    pub fn tangent(&self, t: f64) -> [f64; 2] {
        match self.kind {
            SegmentKind::Line => {
                let d = sub(self.b, self.a);
                let l = hypot2(d);
                [d[0] / l, d[1] / l]
            }
            SegmentKind::Arc { center, .. } => {
                let (ta, span) = self.arc_span().unwrap();
                let th = ta + t * span;
                let s = span.signum();
                // Tangent of ccw motion is the radius vector rotated +90 deg.
                let _ = center;
                [-th.sin() * s, th.cos() * s]
            }
        }
    }

    pub fn length(&self) -> f64 {
        match self.kind {
            SegmentKind::Line => hypot2(sub(self.b, self.a)),
            SegmentKind::Arc { .. } => {
                let (_, span) = self.arc_span().unwrap();
                self.radius().unwrap() * span.abs()
            }
        }
    }

    /// Distance from `p` to the segment together with the parameter of the
    /// nearest point.
    pub fn distance(&self, p: [f64; 2]) -> (f64, f64) {
        match self.kind {
            SegmentKind::Line => {
                let d = sub(self.b, self.a);
                let len2 = d[0] * d[0] + d[1] * d[1];
                let t = if len2 == 0.0 {
                    0.0
                } else {
                    (((p[0] - self.a[0]) * d[0] + (p[1] - self.a[1]) * d[1]) / len2).clamp(0.0, 1.0)
                };
                let q = self.point(t);
                (hypot2(sub(p, q)), t)
            }
            SegmentKind::Arc { center, .. } => {
                let (ta, span) = self.arc_span().unwrap();
                let r = self.radius().unwrap();
                let v = sub(p, center);
                let vl = hypot2(v);
                if vl < 1e-300 {
                    // Center of the arc: every arc point is equidistant.
                    return (r, 0.0);
                }
                let phi = v[1].atan2(v[0]);
                // Angle travelled from the start toward the query direction,
                // measured along the travel orientation.
                let travelled = if span > 0.0 {
                    (phi - ta).rem_euclid(std::f64::consts::TAU)
                } else {
                    (ta - phi).rem_euclid(std::f64::consts::TAU)
                };
                let frac = travelled / span.abs();
                if frac <= 1.0 {
                    ((vl - r).abs(), frac.clamp(0.0, 1.0))
                } else {
                    let da = hypot2(sub(p, self.a));
                    let db = hypot2(sub(p, self.b));
                    if da <= db {
                        (da, 0.0)
                    } else {
                        (db, 1.0)
                    }
                }
            }
        }
    }

    /// Signed graph curvature `psi''(0)` of a segment passing through the
    /// origin, for the boundary written as `z = psi(r)` with the domain on the
    /// side `z > psi(r)`. Lines give zero; arcs give `1 / c_z` where `c_z` is
    /// the axial coordinate of the center (the center of an origin-touching
    /// arc with vertical tangent lies on the axis).
    pub fn graph_curvature_at_origin(&self) -> Result<f64, DomainError> {
        match self.kind {
            SegmentKind::Line => Ok(0.0),
            SegmentKind::Arc { center, .. } => {
                if center[1].abs() > GEOM_TOL * (1.0 + hypot2(center)) {
                    return Err(DomainError::CurvatureUndefined(format!(
                        "origin arc center ({}, {}) is off the axis",
                        center[0], center[1]
                    )));
                }
                if center[0].abs() < GEOM_TOL {
                    return Err(DomainError::CurvatureUndefined(
                        "origin arc center coincides with the origin".into(),
                    ));
                }
                Ok(1.0 / center[0])
            }
        }
    }

    fn bbox(&self) -> [f64; 4] {
        // Conservative box: endpoints, padded by the radius for arcs.
        let (mut zmin, mut zmax) = (self.a[0].min(self.b[0]), self.a[0].max(self.b[0]));
        let (mut rmin, mut rmax) = (self.a[1].min(self.b[1]), self.a[1].max(self.b[1]));
        if let SegmentKind::Arc { center, .. } = self.kind {
            let rad = self.radius().unwrap();
            zmin = zmin.min(center[0] - rad);
            zmax = zmax.max(center[0] + rad);
            rmin = rmin.min(center[1] - rad);
            rmax = rmax.max(center[1] + rad);
        }
        [zmin, zmax, rmin, rmax]
    }
}

impl GeneratingCurve {
    pub fn new(segments: Vec<CurveSegment>) -> Self {
        GeneratingCurve { segments }
    }

    /// Segment index ranges of the maximal connected chains.
    pub fn chains(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..self.segments.len() {
            let prev = self.segments[i - 1].b;
            let next = self.segments[i].a;
            if hypot2(sub(prev, next)) > GEOM_TOL {
                out.push(start..i);
                start = i;
            }
        }
        if !self.segments.is_empty() {
            out.push(start..self.segments.len());
        }
        out
    }

    /// Total arc length of all segments.
    pub fn length(&self) -> f64 {
        self.segments.iter().map(|s| s.length()).sum()
    }

    /// Diameter scale used for relative tolerances.
    pub fn scale(&self) -> f64 {
        let mut m: f64 = 0.0;
        for s in &self.segments {
            m = m.max(hypot2(s.a)).max(hypot2(s.b));
        }
        m.max(1e-12)
    }

    /// Distance from `p` to the curve and the index of the nearest segment.
    pub fn distance(&self, p: [f64; 2]) -> (f64, usize) {
        let mut best = (f64::INFINITY, 0);
        for (i, s) in self.segments.iter().enumerate() {
            let (d, _) = s.distance(p);
            if d < best.0 {
                best = (d, i);
            }
        }
        best
    }

    /// Indices of segments with an endpoint at the origin.
    pub fn segments_at_origin(&self) -> Vec<usize> {
        let tol = GEOM_TOL * self.scale();
        self.segments
            .iter()
            .enumerate()
            .filter(|(_, s)| hypot2(s.a) <= tol || hypot2(s.b) <= tol)
            .map(|(i, _)| i)
            .collect()
    }

    /// Structural validation: radii non-negative, chains closed onto the axis
    /// orthogonally, the origin present, and no self-intersections.
    pub fn validate(&self) -> Result<(), DomainError> {
        if self.segments.is_empty() {
            return Err(DomainError::InvalidPreset("curve has no segments".into()));
        }
        let scale = self.scale();
        let tol = GEOM_TOL * scale;

        // Radius sign and arc consistency checks along sampled points.
        for s in &self.segments {
            for k in 0..=16 {
                let p = s.point(k as f64 / 16.0);
                if p[1] < -tol {
                    return Err(DomainError::NegativeRadius(p[1]));
                }
            }
            if let SegmentKind::Arc { center, .. } = s.kind {
                let ra = hypot2(sub(s.a, center));
                let rb = hypot2(sub(s.b, center));
                if (ra - rb).abs() > 1e-6 * scale {
                    return Err(DomainError::InvalidPreset(format!(
                        "arc endpoints at inconsistent radii {ra} vs {rb}"
                    )));
                }
            }
        }

        // Chain endpoints on the axis, met orthogonally. The tangent tolerance
        // admits chord-sampled smooth faces, whose first chord carries a
        // slope of the order of its length, while rejecting genuine tilts.
        for range in self.chains() {
            let first = &self.segments[range.start];
            let last = &self.segments[range.end - 1];
            for (p, t) in [(first.a, first.tangent(0.0)), (last.b, last.tangent(1.0))] {
                if p[1].abs() > tol {
                    return Err(DomainError::ChainEndpointOffAxis(p[0], p[1]));
                }
                if t[0].abs() > 1e-3 {
                    return Err(DomainError::AxisNotOrthogonal(p[0], p[1], t[0].abs()));
                }
            }
        }

        // The origin must be a chain endpoint (it lies on the axis).
        let has_origin = self
            .chains()
            .iter()
            .any(|r| {
                hypot2(self.segments[r.start].a) <= tol || hypot2(self.segments[r.end - 1].b) <= tol
            });
        if !has_origin {
            return Err(DomainError::OriginMissing);
        }

        self.check_simple()?;
        Ok(())
    }

    /// Pairwise intersection test by dense sampling with a bounding-box
    /// prefilter. Adjacent segments of a chain share one endpoint, which is
    /// excluded from the test.
    fn check_simple(&self) -> Result<(), DomainError> {
        let scale = self.scale();
        let sep = 1e-6 * scale;
        let boxes: Vec<[f64; 4]> = self.segments.iter().map(|s| s.bbox()).collect();
        for i in 0..self.segments.len() {
            for j in (i + 1)..self.segments.len() {
                let (bi, bj) = (boxes[i], boxes[j]);
                if bi[1] + sep < bj[0] || bj[1] + sep < bi[0] || bi[3] + sep < bj[2] || bj[3] + sep < bi[2]
                {
                    continue;
                }
                let si = &self.segments[i];
                let sj = &self.segments[j];
                let shared = |p: [f64; 2]| {
                    hypot2(sub(p, sj.a)) <= GEOM_TOL * scale || hypot2(sub(p, sj.b)) <= GEOM_TOL * scale
                };
                let touch_a = shared(si.a);
                let touch_b = shared(si.b);
                let steps = 64;
                for k in 0..=steps {
                    let t = k as f64 / steps as f64;
                    let p = si.point(t);
                    // Skip the neighbourhood of a legitimately shared endpoint.
                    if touch_a && hypot2(sub(p, si.a)) < 0.05 * si.length() {
                        continue;
                    }
                    if touch_b && hypot2(sub(p, si.b)) < 0.05 * si.length() {
                        continue;
                    }
                    let (d, _) = sj.distance(p);
                    if d < sep {
                        return Err(DomainError::SelfIntersection(i, j));
                    }
                }
            }
        }
        Ok(())
    }
}
