//! Meridian triangulations with boundary markers and quality statistics.

use serde::{Deserialize, Serialize};

use crate::DomainError;

/// Role of a mesh node. Dirichlet data lives on `Curve` and `Origin` nodes;
/// `Axis` nodes belong to the symmetry axis, which is not a boundary of the
/// revolved body. The origin gets its own marker because the singular
/// potential is centred there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeMarker {
    Interior,
    Curve,
    Axis,
    Origin,
}

impl NodeMarker {
    pub fn is_dirichlet(self) -> bool {
        matches!(self, NodeMarker::Curve | NodeMarker::Origin)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NodeMarker::Interior => "interior",
            NodeMarker::Curve => "dirichlet-curve",
            NodeMarker::Axis => "symmetry-axis",
            NodeMarker::Origin => "origin-node",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "interior" => Some(NodeMarker::Interior),
            "dirichlet-curve" => Some(NodeMarker::Curve),
            "symmetry-axis" => Some(NodeMarker::Axis),
            "origin-node" => Some(NodeMarker::Origin),
            _ => None,
        }
    }
}

/// Grading descriptor: element size shrinks geometrically toward the origin,
/// from `target_h` far away down to `target_h * ratio^layers` nearby.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grading {
    pub target_h: f64,
    pub layers: u32,
    pub ratio: f64,
}

impl Grading {
    pub fn floor_h(&self) -> f64 {
        self.target_h * self.ratio.powi(self.layers as i32)
    }
}

/// Conforming triangulation of the meridian region. Triangles are stored with
/// positive (counter-clockwise) orientation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Mesh {
    /// Node coordinates `(z, r)` with `r >= 0`.
    pub nodes: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub markers: Vec<NodeMarker>,
    pub grading: Grading,
}

/// Summary statistics used by quality gates and refinement studies.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MeshStats {
    pub n_nodes: usize,
    pub n_triangles: usize,
    pub min_angle_deg: f64,
    pub min_diameter: f64,
    pub max_diameter: f64,
    pub total_area: f64,
}

fn tri_geometry(p: [[f64; 2]; 3]) -> (f64, f64, f64) {
    let e = [
        [p[2][0] - p[1][0], p[2][1] - p[1][1]],
        [p[0][0] - p[2][0], p[0][1] - p[2][1]],
        [p[1][0] - p[0][0], p[1][1] - p[0][1]],
    ];
    let l: Vec<f64> = e.iter().map(|d| (d[0] * d[0] + d[1] * d[1]).sqrt()).collect();
    let area2 = e[2][0] * (-e[1][1]) - e[2][1] * (-e[1][0]);
    let area = 0.5 * area2;
    let diam = l[0].max(l[1]).max(l[2]);
    // Law of cosines per corner; smallest angle is opposite the shortest edge.
    let mut min_angle = f64::INFINITY;
    for i in 0..3 {
        let (a, b, c) = (l[i], l[(i + 1) % 3], l[(i + 2) % 3]);
        let cos = ((b * b + c * c - a * a) / (2.0 * b * c)).clamp(-1.0, 1.0);
        min_angle = min_angle.min(cos.acos());
    }
    (area, diam, min_angle.to_degrees())
}

impl Mesh {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// Vertex coordinates of a triangle.
    pub fn tri_coords(&self, t: usize) -> [[f64; 2]; 3] {
        let [a, b, c] = self.triangles[t];
        [self.nodes[a], self.nodes[b], self.nodes[c]]
    }

    pub fn stats(&self) -> MeshStats {
        let mut min_angle = f64::INFINITY;
        let mut min_d = f64::INFINITY;
        let mut max_d: f64 = 0.0;
        let mut area = 0.0;
        for t in 0..self.triangles.len() {
            let (a, d, ang) = tri_geometry(self.tri_coords(t));
            area += a;
            min_d = min_d.min(d);
            max_d = max_d.max(d);
            min_angle = min_angle.min(ang);
        }
        MeshStats {
            n_nodes: self.nodes.len(),
            n_triangles: self.triangles.len(),
            min_angle_deg: min_angle,
            min_diameter: min_d,
            max_diameter: max_d,
            total_area: area,
        }
    }

    /// Index of the origin node.
    pub fn origin_node(&self) -> Option<usize> {
        self.markers.iter().position(|&m| m == NodeMarker::Origin)
    }

    /// Structural checks: index bounds, positive orientation, marker counts,
    /// non-negative radii, conformity (every interior edge shared by exactly
    /// two triangles, boundary edges by one).
    pub fn validate(&self) -> Result<(), DomainError> {
        if self.markers.len() != self.nodes.len() {
            return Err(DomainError::Meshing("marker list length mismatch".into()));
        }
        for (i, p) in self.nodes.iter().enumerate() {
            if p[1] < -1e-12 {
                return Err(DomainError::Meshing(format!("node {i} has negative radius {}", p[1])));
            }
        }
        let norig = self.markers.iter().filter(|&&m| m == NodeMarker::Origin).count();
        if norig != 1 {
            return Err(DomainError::Meshing(format!("expected one origin node, found {norig}")));
        }
        use std::collections::HashMap;
        let mut edge_use: HashMap<(usize, usize), usize> = HashMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for &v in tri {
                if v >= self.nodes.len() {
                    return Err(DomainError::Meshing(format!("triangle {t} references node {v}")));
                }
            }
            let (area, _, _) = tri_geometry(self.tri_coords(t));
            if area <= 0.0 {
                return Err(DomainError::Meshing(format!(
                    "triangle {t} is degenerate or negatively oriented (area {area})"
                )));
            }
            for i in 0..3 {
                let (a, b) = (tri[i], tri[(i + 1) % 3]);
                let key = (a.min(b), a.max(b));
                *edge_use.entry(key).or_insert(0) += 1;
            }
        }
        for (&(a, b), &uses) in edge_use.iter() {
            if uses > 2 {
                return Err(DomainError::Meshing(format!(
                    "edge ({a}, {b}) shared by {uses} triangles"
                )));
            }
            if uses == 1 {
                // Border edge: both endpoints must carry boundary markers.
                for v in [a, b] {
                    if self.markers[v] == NodeMarker::Interior {
                        return Err(DomainError::Meshing(format!(
                            "border edge ({a}, {b}) touches interior-marked node {v}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
