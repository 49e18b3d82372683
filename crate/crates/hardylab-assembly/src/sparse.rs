//! Compressed sparse rows over the free nodes, plus the node/free index maps.

use hardylab_domain::{Mesh, NodeMarker};

/// Map between mesh nodes and the free (non-Dirichlet) index space. Nodes on
/// the boundary curve and the origin are eliminated; interior and axis nodes
/// stay free.
#[derive(Debug, Clone)]
pub struct FreeMap {
    pub free_of_node: Vec<Option<usize>>,
    pub node_of_free: Vec<usize>,
}

impl FreeMap {
    pub fn from_mesh(mesh: &Mesh) -> Self {
        let mut free_of_node = vec![None; mesh.nodes.len()];
        let mut node_of_free = Vec::new();
        for (i, m) in mesh.markers.iter().enumerate() {
            if !m.is_dirichlet() {
                free_of_node[i] = Some(node_of_free.len());
                node_of_free.push(i);
            }
        }
        FreeMap { free_of_node, node_of_free }
    }

    pub fn n_free(&self) -> usize {
        self.node_of_free.len()
    }

    /// Expand a free vector to a full node vector, zero on Dirichlet nodes.
    pub fn scatter(&self, free: &[f64]) -> Vec<f64> {
        assert_eq!(free.len(), self.n_free());
        let mut full = vec![0.0; self.free_of_node.len()];
        for (f, &node) in self.node_of_free.iter().enumerate() {
            full[node] = free[f];
        }
        full
    }

    /// Restrict a full node vector to the free entries.
    pub fn gather(&self, full: &[f64]) -> Vec<f64> {
        assert_eq!(full.len(), self.free_of_node.len());
        self.node_of_free.iter().map(|&n| full[n]).collect()
    }

    /// True when the node underlying free index `f` sits on the symmetry axis.
    pub fn is_axis(&self, mesh: &Mesh, f: usize) -> bool {
        mesh.markers[self.node_of_free[f]] == NodeMarker::Axis
    }
}

/// Symmetric sparse matrix in CSR layout with a human-readable descriptor of
/// the quadratic form it discretizes.
#[derive(Debug, Clone)]
pub struct SymmetricOperator {
    pub dim: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<usize>,
    pub vals: Vec<f64>,
    pub descriptor: String,
}

impl SymmetricOperator {
    /// Build from per-row coordinate lists. Duplicate columns are merged by
    /// summation in their insertion order, which follows the element loop.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>, descriptor: &str) -> Self {
        let dim = rows.len();
        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices = Vec::new();
        let mut vals = Vec::new();
        indptr.push(0);
        for mut row in rows {
            row.sort_by_key(|e| e.0);
            let mut k = 0;
            while k < row.len() {
                let col = row[k].0;
                let mut v = 0.0;
                while k < row.len() && row[k].0 == col {
                    v += row[k].1;
                    k += 1;
                }
                indices.push(col);
                vals.push(v);
            }
            indptr.push(indices.len());
        }
        SymmetricOperator { dim, indptr, indices, vals, descriptor: descriptor.into() }
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for (i, out) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.indptr[i]..self.indptr[i + 1] {
                acc += self.vals[k] * x[self.indices[k]];
            }
            *out = acc;
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        self.matvec(x, &mut y);
        y
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let y = self.apply(x);
        x.iter().zip(&y).map(|(a, b)| a * b).sum()
    }

    /// Entry lookup by binary search within the row.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let lo = self.indptr[i];
        let hi = self.indptr[i + 1];
        match self.indices[lo..hi].binary_search(&j) {
            Ok(k) => self.vals[lo + k],
            Err(_) => 0.0,
        }
    }

    /// max |a_ij - a_ji| / max |a_ij|; zero for an empty matrix.
    pub fn symmetry_defect(&self) -> f64 {
        let mut maxabs: f64 = 0.0;
        let mut defect: f64 = 0.0;
        for i in 0..self.dim {
            for k in self.indptr[i]..self.indptr[i + 1] {
                let j = self.indices[k];
                maxabs = maxabs.max(self.vals[k].abs());
                defect = defect.max((self.vals[k] - self.get(j, i)).abs());
            }
        }
        if maxabs == 0.0 {
            0.0
        } else {
            defect / maxabs
        }
    }

    /// Coordinate-format text dump: one `row col value` line per entry.
    pub fn dump_coo(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} dim={} nnz={}\n", self.descriptor, self.dim, self.nnz()));
        for i in 0..self.dim {
            for k in self.indptr[i]..self.indptr[i + 1] {
                out.push_str(&format!("{} {} {}\n", i, self.indices[k], self.vals[k]));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_triplets_merge_by_summation() {
        let rows = vec![
            vec![(0, 1.0), (1, 2.0), (0, 3.0)],
            vec![(0, 2.0), (1, 5.0)],
        ];
        let m = SymmetricOperator::from_rows(rows, "test form");
        assert_eq!(m.get(0, 0), 4.0);
        assert_eq!(m.get(0, 1), 2.0);
        assert_eq!(m.get(1, 0), 2.0);
        assert_eq!(m.nnz(), 4);
        assert!(m.symmetry_defect() < 1e-15);
        let x = vec![1.0, -1.0];
        assert_eq!(m.apply(&x), vec![2.0, -3.0]);
        assert!((m.quadratic_form(&x) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn coo_dump_lists_every_entry() {
        let rows = vec![vec![(1, 0.5)], vec![(0, 0.5)]];
        let m = SymmetricOperator::from_rows(rows, "off-diagonal pair");
        let text = m.dump_coo();
        assert!(text.contains("0 1 0.5"));
        assert!(text.contains("1 0 0.5"));
        assert!(text.starts_with("# off-diagonal pair dim=2 nnz=2"));
    }
}
