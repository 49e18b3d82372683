//! Domain files (JSON) and mesh dumps (plain text).
//!
//! Domain files carry the preset with its parameters, or the full generating
//! curve for custom shapes. Floats survive the round trip exactly: values are
//! printed with the shortest representation that parses back to the same bits.

use serde::{Deserialize, Serialize};

use crate::domain::{make_domain, AxisymmetricDomain, Preset};
use crate::mesh::{Grading, Mesh, NodeMarker};
use crate::DomainError;

#[derive(Debug, Serialize, Deserialize)]
struct DomainFile {
    name: String,
    n: usize,
    #[serde(flatten)]
    preset: Preset,
}

pub fn domain_to_json(dom: &AxisymmetricDomain) -> Result<String, DomainError> {
    let file = DomainFile { name: dom.name.clone(), n: dom.n, preset: dom.preset.clone() };
    serde_json::to_string_pretty(&file).map_err(|e| DomainError::File(e.to_string()))
}

pub fn domain_from_json(text: &str) -> Result<AxisymmetricDomain, DomainError> {
    let file: DomainFile =
        serde_json::from_str(text).map_err(|e| DomainError::File(e.to_string()))?;
    let dom = make_domain(file.n, &file.preset)?;
    Ok(dom.with_name(&file.name))
}

/// Plain-text mesh dump: a header line, one `node` line per node with its
/// marker, one `tri` line per triangle.
pub fn mesh_to_text(mesh: &Mesh) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "mesh nodes={} triangles={} target_h={} layers={} ratio={}\n",
        mesh.nodes.len(),
        mesh.triangles.len(),
        mesh.grading.target_h,
        mesh.grading.layers,
        mesh.grading.ratio
    ));
    for (i, (p, m)) in mesh.nodes.iter().zip(&mesh.markers).enumerate() {
        out.push_str(&format!("node {} {} {} {}\n", i, p[0], p[1], m.as_str()));
    }
    for (i, t) in mesh.triangles.iter().enumerate() {
        out.push_str(&format!("tri {} {} {} {}\n", i, t[0], t[1], t[2]));
    }
    out
}

pub fn mesh_from_text(text: &str) -> Result<Mesh, DomainError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| DomainError::File("empty mesh dump".into()))?;
    let mut target_h = 0.0;
    let mut layers = 0u32;
    let mut ratio = 0.0;
    for tok in header.split_whitespace().skip(1) {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| DomainError::File(format!("bad header token {tok}")))?;
        match key {
            "target_h" => target_h = val.parse().map_err(|_| bad_num(val))?,
            "layers" => layers = val.parse().map_err(|_| bad_num(val))?,
            "ratio" => ratio = val.parse().map_err(|_| bad_num(val))?,
            _ => {}
        }
    }
    let mut nodes = Vec::new();
    let mut markers = Vec::new();
    let mut triangles = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["node", _i, z, r, m] => {
                nodes.push([
                    z.parse().map_err(|_| bad_num(z))?,
                    r.parse().map_err(|_| bad_num(r))?,
                ]);
                markers.push(
                    NodeMarker::parse(m)
                        .ok_or_else(|| DomainError::File(format!("unknown marker {m}")))?,
                );
            }
            ["tri", _i, a, b, c] => {
                triangles.push([
                    a.parse().map_err(|_| bad_num(a))?,
                    b.parse().map_err(|_| bad_num(b))?,
                    c.parse().map_err(|_| bad_num(c))?,
                ]);
            }
            [] => {}
            _ => return Err(DomainError::File(format!("unrecognized line: {line}"))),
        }
    }
    let mesh = Mesh { nodes, triangles, markers, grading: Grading { target_h, layers, ratio } };
    mesh.validate()?;
    Ok(mesh)
}

fn bad_num(s: &str) -> DomainError {
    DomainError::File(format!("bad number {s}"))
}
