//! Graded meridian meshing.
//!
//! The mesher is an incremental Delaunay triangulation (Bowyer-Watson) with
//! Ruppert-style refinement. Boundary chains and the axis closure are sampled
//! into constraint segments whose diametral circles are kept empty of other
//! vertices; such segments are Gabriel edges and therefore always present in
//! the triangulation, so triangles never straddle the boundary. Refinement
//! inserts circumcenters of poor-quality or oversized interior triangles,
//! splitting boundary segments instead whenever a candidate would encroach.
//! Segment midpoints are reprojected onto the true boundary geometry, so
//! circular arcs sharpen toward the exact circle as the mesh refines.
//!
//! Element size follows `clamp(slope * |x|, target_h * ratio^layers, target_h)`
//! with `slope = ln(1 / ratio)`, which grades element diameters geometrically
//! toward the origin: one layer of elements per size halving when ratio = 1/2.
//!
//! Everything is single-threaded and deterministic: work queues are FIFO,
//! vertex scans run in index order, and no hash-map iteration order is ever
//! observed.

use std::collections::VecDeque;

use crate::domain::AxisymmetricDomain;
use crate::mesh::{Grading, Mesh, NodeMarker};
use crate::curve::SegmentKind;
use crate::DomainError;

/// Controls for `generate_mesh`. Defaults follow the standard grading used
/// throughout: eight layers at ratio one half, floor angle 20.5 degrees.
#[derive(Debug, Clone, Copy)]
pub struct MeshOptions {
    pub layers: u32,
    pub ratio: f64,
    pub min_angle_deg: f64,
    pub max_insertions: usize,
}

impl Default for MeshOptions {
    fn default() -> Self {
        MeshOptions { layers: 8, ratio: 0.5, min_angle_deg: 20.5, max_insertions: 400_000 }
    }
}

/// Geometry source for constraint segment splitting: midpoints of arc-backed
/// segments are reprojected onto the circle.
#[derive(Debug, Clone, Copy)]
enum SegSource {
    Straight,
    Arc { center: [f64; 2] },
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    a: usize,
    b: usize,
    src: SegSource,
    mark: NodeMarker,
    alive: bool,
}

#[derive(Debug, Clone, Copy)]
struct Tri {
    v: [usize; 3],
    /// Neighbor across the edge opposite `v[k]`; -1 for none.
    nb: [i64; 3],
    alive: bool,
}

struct Mesher<'a> {
    dom: &'a AxisymmetricDomain,
    pts: Vec<[f64; 2]>,
    marks: Vec<NodeMarker>,
    tris: Vec<Tri>,
    /// One alive incident triangle per vertex, for star walks.
    vert_tri: Vec<i64>,
    segs: Vec<Seg>,
    scale: f64,
    target_h: f64,
    floor_h: f64,
    slope: f64,
    insertions: usize,
    cap: usize,
    last_tri: usize,
    skipped_outside: usize,
    refused_splits: usize,
}

fn d2(a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (a[0] - b[0], a[1] - b[1]);
    dx * dx + dy * dy
}

fn orient2d(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Positive when `p` lies inside the circumcircle of CCW triangle `(a, b, c)`.
/// Returns the determinant together with a magnitude estimate for tolerances.
fn incircle(a: [f64; 2], b: [f64; 2], c: [f64; 2], p: [f64; 2]) -> (f64, f64) {
    let (ax, ay) = (a[0] - p[0], a[1] - p[1]);
    let (bx, by) = (b[0] - p[0], b[1] - p[1]);
    let (cx, cy) = (c[0] - p[0], c[1] - p[1]);
    let (aq, bq, cq) = (ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy);
    let det = ax * (by * cq - bq * cy) - ay * (bx * cq - bq * cx) + aq * (bx * cy - by * cx);
    let mag = ax.abs() * (by.abs() * cq + bq * cy.abs())
        + ay.abs() * (bx.abs() * cq + bq * cx.abs())
        + aq * (bx.abs() * cy.abs() + by.abs() * cx.abs());
    (det, mag.max(f64::MIN_POSITIVE))
}

fn circumcenter(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Option<[f64; 2]> {
    let (bx, by) = (b[0] - a[0], b[1] - a[1]);
    let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
    let d = 2.0 * (bx * cy - by * cx);
    let lim = 1e-14 * ((bx * bx + by * by) + (cx * cx + cy * cy));
    if d.abs() < lim {
        return None;
    }
    let bq = bx * bx + by * by;
    let cq = cx * cx + cy * cy;
    let ux = (cy * bq - by * cq) / d;
    let uy = (bx * cq - cx * bq) / d;
    Some([a[0] + ux, a[1] + uy])
}

fn min_angle_deg(p: [[f64; 2]; 3]) -> f64 {
    let l = [d2(p[1], p[2]).sqrt(), d2(p[2], p[0]).sqrt(), d2(p[0], p[1]).sqrt()];
    let mut best = f64::INFINITY;
    for i in 0..3 {
        let (a, b, c) = (l[i], l[(i + 1) % 3], l[(i + 2) % 3]);
        let cos = ((b * b + c * c - a * a) / (2.0 * b * c)).clamp(-1.0, 1.0);
        best = best.min(cos.acos());
    }
    best.to_degrees()
}

impl<'a> Mesher<'a> {
    fn size_at(&self, p: [f64; 2]) -> f64 {
        let d = (p[0] * p[0] + p[1] * p[1]).sqrt();
        (self.slope * d).clamp(self.floor_h, self.target_h)
    }

    fn new(dom: &'a AxisymmetricDomain, target_h: f64, opts: &MeshOptions) -> Self {
        let scale = dom.curve.scale();
        let floor_h = target_h * opts.ratio.powi(opts.layers as i32);
        Mesher {
            dom,
            pts: Vec::new(),
            marks: Vec::new(),
            tris: Vec::new(),
            vert_tri: Vec::new(),
            segs: Vec::new(),
            scale,
            target_h,
            floor_h,
            slope: (1.0 / opts.ratio).ln().max(0.05),
            insertions: 0,
            cap: opts.max_insertions,
            last_tri: 0,
            skipped_outside: 0,
            refused_splits: 0,
        }
    }

    fn init_super(&mut self) {
        let s = self.scale * 40.0;
        self.pts.push([-s, -0.8 * s]);
        self.pts.push([s, -0.8 * s]);
        self.pts.push([0.0, 1.2 * s]);
        self.marks.extend([NodeMarker::Interior; 3]);
        self.tris.push(Tri { v: [0, 1, 2], nb: [-1, -1, -1], alive: true });
        self.vert_tri = vec![0, 0, 0];
    }

    /// Walk from the last known triangle to one whose closure contains `p`.
    fn locate(&self, p: [f64; 2]) -> Result<usize, DomainError> {
        let mut cur = self.last_tri;
        if !self.tris[cur].alive {
            cur = match (0..self.tris.len()).rev().find(|&t| self.tris[t].alive) {
                Some(t) => t,
                None => return Err(DomainError::Meshing("no alive triangles".into())),
            };
        }
        let limit = 16 * (self.tris.len() + 16);
        for step in 0..limit {
            let t = &self.tris[cur];
            let mut moved = false;
            for kk in 0..3 {
                // Rotating the probe order with the step count breaks cycles.
                let k = (kk + step) % 3;
                let a = self.pts[t.v[(k + 1) % 3]];
                let b = self.pts[t.v[(k + 2) % 3]];
                let o = orient2d(a, b, p);
                let eps = 1e-13 * (d2(a, b) + d2(a, p) + 1e-300);
                if o < -eps {
                    if t.nb[k] >= 0 {
                        cur = t.nb[k] as usize;
                        moved = true;
                        break;
                    }
                    return Err(DomainError::Meshing(format!(
                        "point ({}, {}) escaped the triangulation",
                        p[0], p[1]
                    )));
                }
            }
            if !moved {
                return Ok(cur);
            }
        }
        // Deterministic fallback: linear scan.
        for t in (0..self.tris.len()).rev() {
            if !self.tris[t].alive {
                continue;
            }
            let v = self.tris[t].v;
            let mut inside = true;
            for k in 0..3 {
                let a = self.pts[v[(k + 1) % 3]];
                let b = self.pts[v[(k + 2) % 3]];
                let eps = 1e-13 * (d2(a, b) + d2(a, p) + 1e-300);
                if orient2d(a, b, p) < -eps {
                    inside = false;
                    break;
                }
            }
            if inside {
                return Ok(t);
            }
        }
        Err(DomainError::Meshing("point location failed".into()))
    }

    /// Insert a point, returning its vertex id; `None` when it coincides with
    /// an existing vertex.
    fn insert(&mut self, p: [f64; 2], mark: NodeMarker) -> Result<Option<usize>, DomainError> {
        self.insertions += 1;
        if self.insertions > self.cap {
            return Err(DomainError::Meshing(format!(
                "insertion cap {} exceeded; nodes so far {}, refused splits {}, skipped centers {}",
                self.cap,
                self.pts.len(),
                self.refused_splits,
                self.skipped_outside
            )));
        }
        let t0 = self.locate(p)?;
        // The duplicate guard must stay below the grading floor spacing while
        // still catching rounding-level coincidences.
        let dup = (1e-10 * self.scale).min(0.05 * self.floor_h).max(2e-14 * self.scale);
        let dup_tol = dup * dup;
        for &v in &self.tris[t0].v {
            if d2(self.pts[v], p) < dup_tol {
                return Ok(None);
            }
        }

        // Cavity: BFS over triangles whose circumcircle contains p.
        let mut cavity = vec![t0];
        let mut in_cavity = std::collections::HashMap::new();
        in_cavity.insert(t0, ());
        let mut stack = vec![t0];
        while let Some(t) = stack.pop() {
            let nbs = self.tris[t].nb;
            for &nbi in &nbs {
                if nbi < 0 {
                    continue;
                }
                let u = nbi as usize;
                if in_cavity.contains_key(&u) || !self.tris[u].alive {
                    continue;
                }
                let v = self.tris[u].v;
                let (det, mag) = incircle(self.pts[v[0]], self.pts[v[1]], self.pts[v[2]], p);
                if det > -1e-12 * mag {
                    in_cavity.insert(u, ());
                    cavity.push(u);
                    stack.push(u);
                }
            }
        }

        // Cavity boundary in order; grow the cavity if a fan triangle would be
        // degenerate (point on a boundary edge), then rebuild.
        let boundary = loop {
            let mut edges: Vec<(usize, usize, i64)> = Vec::new();
            for &t in &cavity {
                let tri = self.tris[t];
                for k in 0..3 {
                    let nbi = tri.nb[k];
                    let outside = nbi < 0 || !in_cavity.contains_key(&(nbi as usize));
                    if outside {
                        edges.push((tri.v[(k + 1) % 3], tri.v[(k + 2) % 3], nbi));
                    }
                }
            }
            let mut grew = false;
            for &(a, b, nbi) in &edges {
                let o = orient2d(p, self.pts[a], self.pts[b]);
                let eps = 1e-12 * (d2(self.pts[a], self.pts[b]) + d2(self.pts[a], p) + 1e-300);
                if o.abs() <= eps {
                    if nbi >= 0 && self.tris[nbi as usize].alive {
                        let u = nbi as usize;
                        if in_cavity.insert(u, ()).is_none() {
                            cavity.push(u);
                            grew = true;
                        }
                    } else {
                        // Point collapses onto a hull edge: reject as duplicate-like.
                        return Ok(None);
                    }
                }
            }
            if !grew {
                break edges;
            }
        };

        // Order boundary edges into a closed polygon.
        let mut ordered = Vec::with_capacity(boundary.len());
        let mut used = vec![false; boundary.len()];
        ordered.push(boundary[0]);
        used[0] = true;
        while ordered.len() < boundary.len() {
            let tail = ordered.last().unwrap().1;
            let mut found = false;
            for (i, e) in boundary.iter().enumerate() {
                if !used[i] && e.0 == tail {
                    ordered.push(*e);
                    used[i] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(DomainError::Meshing("cavity boundary is not a single cycle".into()));
            }
        }

        let vid = self.pts.len();
        self.pts.push(p);
        self.marks.push(mark);
        self.vert_tri.push(-1);
        for &t in &cavity {
            self.tris[t].alive = false;
        }

        let base = self.tris.len();
        let m = ordered.len();
        for (i, &(a, b, outer)) in ordered.iter().enumerate() {
            let id = base + i;
            let prev = base + (i + m - 1) % m;
            let next = base + (i + 1) % m;
            // Vertices (p, a, b): nb opposite p is the outer triangle, opposite
            // a is the next fan triangle, opposite b the previous one.
            self.tris.push(Tri {
                v: [vid, a, b],
                nb: [outer, next as i64, prev as i64],
                alive: true,
            });
            if outer >= 0 {
                let o = outer as usize;
                for k in 0..3 {
                    let (x, y) = (self.tris[o].v[(k + 1) % 3], self.tris[o].v[(k + 2) % 3]);
                    if (x, y) == (b, a) {
                        self.tris[o].nb[k] = id as i64;
                        break;
                    }
                }
            }
            self.vert_tri[a] = id as i64;
            self.vert_tri[b] = id as i64;
            self.vert_tri[vid] = id as i64;
        }
        self.last_tri = base;
        Ok(Some(vid))
    }

    /// Existing vertex id at `p`, or a fresh insertion. Used while sampling
    /// the boundary, where consecutive pieces share exact endpoints.
    fn find_or_insert(&mut self, p: [f64; 2], mark: NodeMarker) -> Result<usize, DomainError> {
        // Deep grading floors push legitimate node spacing below any fixed
        // snap distance, so the duplicate tolerance must track the floor.
        let tol = (1e-10 * self.scale).min(0.05 * self.floor_h);
        let tol2 = tol * tol;
        for v in 3..self.pts.len() {
            if d2(self.pts[v], p) < tol2 {
                return Ok(v);
            }
        }
        match self.insert(p, mark)? {
            Some(v) => Ok(v),
            None => {
                let mut best = (f64::INFINITY, 3usize);
                for v in 3..self.pts.len() {
                    let d = d2(self.pts[v], p);
                    if d < best.0 {
                        best = (d, v);
                    }
                }
                Ok(best.1)
            }
        }
    }

    /// True when vertex `v` lies strictly inside the diametral circle of the
    /// segment `(a, b)`.
    fn encroaches(&self, v: [f64; 2], a: [f64; 2], b: [f64; 2]) -> bool {
        let m = [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
        let rho2 = 0.25 * d2(a, b);
        d2(v, m) < rho2 * (1.0 - 1e-9)
    }

    fn seg_midpoint(&self, s: usize) -> [f64; 2] {
        let seg = self.segs[s];
        let (a, b) = (self.pts[seg.a], self.pts[seg.b]);
        match seg.src {
            SegSource::Straight => [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])],
            SegSource::Arc { center } => {
                let r = 0.5 * (d2(a, center).sqrt() + d2(b, center).sqrt());
                let m = [0.5 * (a[0] + b[0]) - center[0], 0.5 * (a[1] + b[1]) - center[1]];
                let l = (m[0] * m[0] + m[1] * m[1]).sqrt();
                if l < 1e-14 * self.scale {
                    // Chord through the center: bisect by angle instead.
                    let ta = (a[1] - center[1]).atan2(a[0] - center[0]);
                    let tb = (b[1] - center[1]).atan2(b[0] - center[0]);
                    let th = 0.5 * (ta + tb);
                    [center[0] + r * th.cos(), center[1] + r * th.sin()]
                } else {
                    [center[0] + r * m[0] / l, center[1] + r * m[1] / l]
                }
            }
        }
    }

    /// Split segment `s` at its geometric midpoint. Returns the new vertex id
    /// and the two child segment ids, or `None` when the segment is already
    /// too short to split safely.
    fn split_segment(&mut self, s: usize) -> Result<Option<(usize, usize, usize)>, DomainError> {
        let seg = self.segs[s];
        if !seg.alive {
            return Ok(None);
        }
        let (a, b) = (self.pts[seg.a], self.pts[seg.b]);
        if d2(a, b).sqrt() < 1e-3 * self.floor_h {
            self.refused_splits += 1;
            return Ok(None);
        }
        let p = self.seg_midpoint(s);
        let mid_mark = match seg.mark {
            NodeMarker::Origin => NodeMarker::Curve,
            m => m,
        };
        let vid = match self.insert(p, mid_mark)? {
            Some(v) => v,
            None => {
                self.refused_splits += 1;
                return Ok(None);
            }
        };
        self.segs[s].alive = false;
        let c1 = self.segs.len();
        self.segs.push(Seg { a: seg.a, b: vid, src: seg.src, mark: seg.mark, alive: true });
        let c2 = self.segs.len();
        self.segs.push(Seg { a: vid, b: seg.b, src: seg.src, mark: seg.mark, alive: true });
        Ok(Some((vid, c1, c2)))
    }

    /// Enforce empty diametral circles on all constraint segments. Segments
    /// with this property are Gabriel edges and hence always present in the
    /// Delaunay triangulation.
    fn enforce_gabriel(&mut self) -> Result<(), DomainError> {
        let mut queue: VecDeque<usize> = (0..self.segs.len()).collect();
        while let Some(s) = queue.pop_front() {
            if !self.segs[s].alive {
                continue;
            }
            let (ia, ib) = (self.segs[s].a, self.segs[s].b);
            let (a, b) = (self.pts[ia], self.pts[ib]);
            let mut hit = false;
            for v in 3..self.pts.len() {
                if v == ia || v == ib {
                    continue;
                }
                if self.encroaches(self.pts[v], a, b) {
                    hit = true;
                    break;
                }
            }
            if hit {
                if let Some((vid, c1, c2)) = self.split_segment(s)? {
                    queue.push_back(c1);
                    queue.push_back(c2);
                    // The new vertex may encroach other segments.
                    let pv = self.pts[vid];
                    for t in 0..self.segs.len() {
                        if self.segs[t].alive && t != c1 && t != c2 {
                            let (ta, tb) = (self.pts[self.segs[t].a], self.pts[self.segs[t].b]);
                            if self.segs[t].a != vid
                                && self.segs[t].b != vid
                                && self.encroaches(pv, ta, tb)
                            {
                                queue.push_back(t);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Distance from `p` to the nearest alive constraint segment chord, with
    /// the segment id; also reports all segments whose diametral circle holds `p`.
    fn probe_segments(&self, p: [f64; 2]) -> (f64, usize, Vec<usize>) {
        let mut dmin = f64::INFINITY;
        let mut smin = usize::MAX;
        let mut encroached = Vec::new();
        for (i, seg) in self.segs.iter().enumerate() {
            if !seg.alive {
                continue;
            }
            let (a, b) = (self.pts[seg.a], self.pts[seg.b]);
            if self.encroaches(p, a, b) {
                encroached.push(i);
            }
            // Point-to-chord distance.
            let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
            let len2 = dx * dx + dy * dy;
            let t = if len2 == 0.0 {
                0.0
            } else {
                (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
            };
            let q = [a[0] + t * dx, a[1] + t * dy];
            let d = d2(p, q).sqrt();
            if d < dmin {
                dmin = d;
                smin = i;
            }
        }
        (dmin, smin, encroached)
    }

    fn tri_pts(&self, t: usize) -> [[f64; 2]; 3] {
        let v = self.tris[t].v;
        [self.pts[v[0]], self.pts[v[1]], self.pts[v[2]]]
    }

    fn centroid(&self, t: usize) -> [f64; 2] {
        let p = self.tri_pts(t);
        [(p[0][0] + p[1][0] + p[2][0]) / 3.0, (p[0][1] + p[1][1] + p[2][1]) / 3.0]
    }

    fn is_interior(&self, t: usize) -> bool {
        let v = self.tris[t].v;
        if v[0] < 3 || v[1] < 3 || v[2] < 3 {
            return false;
        }
        self.dom.contains(self.centroid(t))
    }

    /// Split the given segments, then requeue every triangle created while
    /// doing so, and propagate encroachments caused by the new midpoints.
    fn split_many(
        &mut self,
        targets: &[usize],
        tri_queue: &mut VecDeque<usize>,
    ) -> Result<(), DomainError> {
        let mut seg_queue: VecDeque<usize> = targets.iter().copied().collect();
        while let Some(s) = seg_queue.pop_front() {
            if !self.segs[s].alive {
                continue;
            }
            let before = self.tris.len();
            if let Some((vid, c1, c2)) = self.split_segment(s)? {
                let pv = self.pts[vid];
                for t in 0..self.segs.len() {
                    if !self.segs[t].alive || t == c1 || t == c2 {
                        continue;
                    }
                    let seg = self.segs[t];
                    if seg.a == vid || seg.b == vid {
                        continue;
                    }
                    if self.encroaches(pv, self.pts[seg.a], self.pts[seg.b]) {
                        seg_queue.push_back(t);
                    }
                }
                // A child may be encroached by pre-existing vertices.
                for &c in &[c1, c2] {
                    let seg = self.segs[c];
                    let (a, b) = (self.pts[seg.a], self.pts[seg.b]);
                    for v in 3..self.pts.len() {
                        if v != seg.a && v != seg.b && self.encroaches(self.pts[v], a, b) {
                            seg_queue.push_back(c);
                            break;
                        }
                    }
                }
            }
            for t in before..self.tris.len() {
                tri_queue.push_back(t);
            }
        }
        Ok(())
    }

    fn refine(&mut self, floor_deg: f64) -> Result<(), DomainError> {
        let mut queue: VecDeque<usize> = (0..self.tris.len()).collect();
        while let Some(t) = queue.pop_front() {
            if t >= self.tris.len() || !self.tris[t].alive || !self.is_interior(t) {
                continue;
            }
            let p = self.tri_pts(t);
            let cc = match circumcenter(p[0], p[1], p[2]) {
                Some(c) => c,
                None => continue,
            };
            let rc = d2(cc, p[0]).sqrt();
            let bad_angle = min_angle_deg(p) < floor_deg;
            let bad_size = rc > 0.65 * self.size_at(cc);
            if !(bad_angle || bad_size) {
                continue;
            }
            if d2(cc, [0.0, 0.0]).sqrt() > 10.0 * self.scale {
                self.skipped_outside += 1;
                continue;
            }
            let (_dmin, smin, encroached) = self.probe_segments(cc);
            if !encroached.is_empty() {
                let before = self.tris.len();
                self.split_many(&encroached, &mut queue)?;
                if self.tris.len() > before {
                    queue.push_back(t);
                }
                // No progress means the boundary there is unsplittable; the
                // triangle is accepted as is.
            } else if !self.dom.contains(cc) {
                // The center escaped the domain: the boundary is locally too
                // coarse for the requested size, so refine it instead.
                if smin == usize::MAX {
                    self.skipped_outside += 1;
                    continue;
                }
                let before = self.tris.len();
                self.split_many(&[smin], &mut queue)?;
                if self.tris.len() > before {
                    queue.push_back(t);
                }
            } else {
                let before = self.tris.len();
                if self.insert(cc, NodeMarker::Interior)?.is_none() {
                    continue;
                }
                for nt in before..self.tris.len() {
                    queue.push_back(nt);
                }
            }
        }
        Ok(())
    }

    fn emit(&self, grading: Grading, floor_deg: f64) -> Result<Mesh, DomainError> {
        let mut keep: Vec<usize> = Vec::new();
        for t in 0..self.tris.len() {
            if self.tris[t].alive && self.is_interior(t) {
                keep.push(t);
            }
        }
        if keep.is_empty() {
            return Err(DomainError::Meshing("no interior triangles produced".into()));
        }
        let mut remap: Vec<i64> = vec![-1; self.pts.len()];
        let mut nodes = Vec::new();
        let mut markers = Vec::new();
        let mut triangles = Vec::new();
        for &t in &keep {
            let v = self.tris[t].v;
            let mut out = [0usize; 3];
            for k in 0..3 {
                if remap[v[k]] < 0 {
                    remap[v[k]] = nodes.len() as i64;
                    nodes.push(self.pts[v[k]]);
                    markers.push(self.marks[v[k]]);
                }
                out[k] = remap[v[k]] as usize;
            }
            let q = [nodes[out[0]], nodes[out[1]], nodes[out[2]]];
            if orient2d(q[0], q[1], q[2]) < 0.0 {
                out.swap(1, 2);
            }
            triangles.push(out);
        }
        // Snap axis-marked radii exactly to zero; they are built on the axis
        // but midpoint arithmetic can leave dust.
        for (p, m) in nodes.iter_mut().zip(&markers) {
            if matches!(m, NodeMarker::Axis | NodeMarker::Origin) {
                p[1] = 0.0;
            }
        }
        let mesh = Mesh { nodes, triangles, markers, grading };
        mesh.validate()?;
        let stats = mesh.stats();
        if stats.min_angle_deg < floor_deg - 0.5 {
            let mut worst = (f64::INFINITY, 0usize);
            for t in 0..mesh.triangles.len() {
                let a = min_angle_deg(mesh.tri_coords(t));
                if a < worst.0 {
                    worst = (a, t);
                }
            }
            let p = mesh.tri_coords(worst.1);
            return Err(DomainError::Quality(format!(
                "minimum angle {:.3} deg under floor {:.2} deg ({} triangles; worst at {:?}; {} refused splits, {} skipped centers)",
                stats.min_angle_deg, floor_deg, stats.n_triangles, p, self.refused_splits, self.skipped_outside
            )));
        }
        Ok(mesh)
    }
}

/// Sample the boundary chains and the axis closure into initial vertices and
/// constraint segments, then run Gabriel enforcement and Ruppert refinement.
pub fn generate_mesh(
    dom: &AxisymmetricDomain,
    target_h: f64,
    opts: &MeshOptions,
) -> Result<Mesh, DomainError> {
    if target_h <= 0.0 || !target_h.is_finite() {
        return Err(DomainError::Meshing(format!("target_h must be positive, got {target_h}")));
    }
    if !(opts.ratio > 0.0 && opts.ratio < 1.0) {
        return Err(DomainError::Meshing(format!("grading ratio must be in (0, 1), got {}", opts.ratio)));
    }
    let mut m = Mesher::new(dom, target_h, opts);
    m.init_super();
    let scale = m.scale;
    if m.floor_h < 2.5e-10 * scale {
        return Err(DomainError::Meshing(format!(
            "grading floor {:.2e} is below the robust meshing depth; reduce layers or raise ratio",
            m.floor_h
        )));
    }
    // Everything nearer the origin than the innermost grading ring is the
    // origin itself; the tolerance must sit well inside the floor spacing.
    let origin_tol = (1e-9 * scale).min(0.25 * m.floor_h);

    // Boundary chain samples. Endpoints are exact; interior samples walk the
    // segment with the local grading step.
    let curve = dom.curve.clone();
    for seg in &curve.segments {
        let len = seg.length();
        let src = match seg.kind {
            SegmentKind::Line => SegSource::Straight,
            SegmentKind::Arc { center, .. } => SegSource::Arc { center },
        };
        let mark_of = |p: [f64; 2]| {
            if d2(p, [0.0, 0.0]).sqrt() < origin_tol {
                NodeMarker::Origin
            } else {
                NodeMarker::Curve
            }
        };
        let mut ids = Vec::new();
        let pa = seg.point(0.0);
        ids.push(m.find_or_insert(pa, mark_of(pa))?);
        let mut t = 0.0;
        loop {
            let p = seg.point(t);
            let step = 0.75 * m.size_at(p) / len;
            if t + 1.5 * step >= 1.0 {
                break;
            }
            t += step;
            let q = seg.point(t);
            ids.push(m.find_or_insert(q, mark_of(q))?);
        }
        let pb = seg.point(1.0);
        ids.push(m.find_or_insert(pb, mark_of(pb))?);
        for w in ids.windows(2) {
            if w[0] != w[1] {
                m.segs.push(Seg { a: w[0], b: w[1], src, mark: NodeMarker::Curve, alive: true });
            }
        }
    }

    // Axis closure: intervals of the axis bounding the region, detected by
    // probing just above the midpoint of each span between chain endpoints.
    let mut zs: Vec<f64> = Vec::new();
    for range in curve.chains() {
        zs.push(curve.segments[range.start].a[0]);
        zs.push(curve.segments[range.end - 1].b[0]);
    }
    zs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    zs.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * scale);
    for w in zs.windows(2) {
        let (z0, z1) = (w[0], w[1]);
        let zm = 0.5 * (z0 + z1);
        if !dom.contains([zm, 1e-6 * scale]) {
            continue;
        }
        let mark_of = |z: f64| {
            if z.abs() < origin_tol {
                NodeMarker::Origin
            } else {
                NodeMarker::Axis
            }
        };
        let mut ids = Vec::new();
        ids.push(m.find_or_insert([z0, 0.0], mark_of(z0))?);
        let mut z = z0;
        loop {
            let step = 0.75 * m.size_at([z, 0.0]);
            if z + 1.5 * step >= z1 {
                break;
            }
            z += step;
            ids.push(m.find_or_insert([z, 0.0], mark_of(z))?);
        }
        ids.push(m.find_or_insert([z1, 0.0], mark_of(z1))?);
        for w in ids.windows(2) {
            if w[0] != w[1] {
                m.segs.push(Seg {
                    a: w[0],
                    b: w[1],
                    src: SegSource::Straight,
                    mark: NodeMarker::Axis,
                    alive: true,
                });
            }
        }
    }

    m.enforce_gabriel()?;
    m.refine(opts.min_angle_deg)?;
    m.emit(
        Grading { target_h, layers: opts.layers, ratio: opts.ratio },
        opts.min_angle_deg,
    )
}
