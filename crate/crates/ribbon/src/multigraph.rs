use std::collections::{BTreeMap, BTreeSet};

use crate::error::ValidationError;
use crate::label::{EdgeLabel, VertexId};

/// An abstract multigraph: loops and parallel edges allowed, endpoints
/// unordered, isolated vertices kept.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multigraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeLabel, (VertexId, VertexId)>,
}

impl Multigraph {
    pub fn new(
        vertices: BTreeSet<VertexId>,
        edges: BTreeMap<EdgeLabel, (VertexId, VertexId)>,
    ) -> Result<Self, ValidationError> {
        let mut edges = edges;
        for (u, w) in edges.values_mut() {
            if !vertices.contains(u) {
                return Err(ValidationError::UndeclaredEndpoint(u.to_string()));
            }
            if !vertices.contains(w) {
                return Err(ValidationError::UndeclaredEndpoint(w.to_string()));
            }
            if w < u {
                std::mem::swap(u, w);
            }
        }
        Ok(Multigraph { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    /// Edges with endpoints stored in sorted order.
    pub fn edges(&self) -> &BTreeMap<EdgeLabel, (VertexId, VertexId)> {
        &self.edges
    }

    pub fn label_set(&self) -> BTreeSet<EdgeLabel> {
        self.edges.keys().cloned().collect()
    }

    pub fn endpoints(&self, label: &EdgeLabel) -> Option<&(VertexId, VertexId)> {
        self.edges.get(label)
    }

    pub fn is_loop(&self, label: &EdgeLabel) -> Option<bool> {
        self.edges.get(label).map(|(u, w)| u == w)
    }

    /// Number of ends of `e` at `v`: 0, 1, or 2 (a loop counts twice).
    pub fn ends_at(&self, label: &EdgeLabel, v: &VertexId) -> usize {
        match self.edges.get(label) {
            None => 0,
            Some((u, w)) => (u == v) as usize + (w == v) as usize,
        }
    }

    /// Edge-end degree: loops contribute two.
    pub fn degree(&self, v: &VertexId) -> Result<usize, ValidationError> {
        if !self.vertices.contains(v) {
            return Err(ValidationError::UnknownVertex(v.to_string()));
        }
        Ok(self
            .edges
            .keys()
            .map(|label| self.ends_at(label, v))
            .sum())
    }

    /// Labels with at least one end at `v`, in label order.
    pub fn incident_edges(&self, v: &VertexId) -> Vec<EdgeLabel> {
        self.edges
            .iter()
            .filter(|(_, (u, w))| u == v || w == v)
            .map(|(l, _)| l.clone())
            .collect()
    }

    pub fn isolated_vertex_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| self.incident_edges(v).is_empty())
            .count()
    }

    /// Partition of the vertex set into connected components, each sorted;
    /// the list is ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut unseen: BTreeSet<&VertexId> = self.vertices.iter().collect();
        let mut adjacency: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
        for (u, w) in self.edges.values() {
            adjacency.entry(u).or_default().push(w);
            adjacency.entry(w).or_default().push(u);
        }
        let mut out = Vec::new();
        while let Some(start) = unseen.iter().next().copied() {
            let mut component = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !unseen.remove(v) {
                    continue;
                }
                component.insert(v.clone());
                if let Some(nbrs) = adjacency.get(v) {
                    stack.extend(nbrs.iter().copied());
                }
            }
            out.push(component);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Eulerian in the classical sense: every vertex has even edge-end
    /// degree and all edges lie in one component. The empty edge set is
    /// vacuously Eulerian.
    pub fn is_eulerian(&self) -> bool {
        if self.edges.is_empty() {
            return true;
        }
        let even = self
            .vertices
            .iter()
            .all(|v| self.degree(v).expect("own vertex") % 2 == 0);
        if !even {
            return false;
        }
        // Connectivity over edge-touched vertices only.
        let touched: BTreeSet<&VertexId> = self
            .edges
            .values()
            .flat_map(|(u, w)| [u, w])
            .collect();
        let components = self.components();
        components
            .iter()
            .filter(|c| c.iter().any(|v| touched.contains(v)))
            .count()
            == 1
    }

    /// Spanning restriction to the given edge set.
    pub fn restrict(&self, keep: &BTreeSet<EdgeLabel>) -> Result<Multigraph, ValidationError> {
        for label in keep {
            if !self.edges.contains_key(label) {
                return Err(ValidationError::UnknownLabel(label.to_string()));
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|(l, _)| keep.contains(*l))
            .map(|(l, e)| (l.clone(), e.clone()))
            .collect();
        Ok(Multigraph {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    /// Spanning deletion of the given edge set.
    pub fn delete_edges(&self, drop: &BTreeSet<EdgeLabel>) -> Result<Multigraph, ValidationError> {
        let keep = self
            .edges
            .keys()
            .filter(|l| !drop.contains(*l))
            .cloned()
            .collect();
        for label in drop {
            if !self.edges.contains_key(label) {
                return Err(ValidationError::UnknownLabel(label.to_string()));
            }
        }
        self.restrict(&keep)
    }

    /// Cheap isomorphism invariant used to bucket graphs before running the
    /// backtracking matcher.
    pub fn fingerprint(&self) -> Fingerprint {
        let mut profile: Vec<(usize, usize)> = self
            .vertices
            .iter()
            .map(|v| {
                let deg = self.degree(v).expect("own vertex");
                let loops = self
                    .edges
                    .values()
                    .filter(|(u, w)| u == v && w == v)
                    .count();
                (deg, loops)
            })
            .collect();
        profile.sort_unstable();
        let mut pair_mults: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let degree_of = |v: &VertexId| self.degree(v).expect("own vertex");
        for (u, w) in self.edges.values() {
            let mut key = (degree_of(u), degree_of(w));
            if key.1 < key.0 {
                key = (key.1, key.0);
            }
            *pair_mults.entry(key).or_insert(0) += 1;
        }
        let mut edge_profile: Vec<(usize, usize, usize)> = pair_mults
            .into_iter()
            .map(|((a, b), m)| (a, b, m))
            .collect();
        edge_profile.sort_unstable();
        Fingerprint {
            v: self.vertex_count(),
            e: self.edge_count(),
            k: self.component_count(),
            degree_profile: profile,
            edge_profile,
        }
    }
}

/// Isomorphism-invariant summary of a multigraph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fingerprint {
    pub v: usize,
    pub e: usize,
    pub k: usize,
    pub degree_profile: Vec<(usize, usize)>,
    pub edge_profile: Vec<(usize, usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{lbl, vid};

    fn mg(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Multigraph {
        Multigraph::new(
            vertices.iter().map(|v| vid(v)).collect(),
            edges
                .iter()
                .map(|(l, u, w)| (lbl(l), (vid(u), vid(w))))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn loop_degree_is_two() {
        let g = mg(&["v"], &[("e", "v", "v")]);
        assert_eq!(g.degree(&vid("v")).unwrap(), 2);
    }

    #[test]
    fn dipole_vertex_degree() {
        let g = mg(
            &["u", "w"],
            &[("a", "u", "w"), ("b", "u", "w"), ("c", "u", "w")],
        );
        assert_eq!(g.degree(&vid("u")).unwrap(), 3);
    }

    #[test]
    fn isolated_degree_zero() {
        let g = mg(&["v"], &[]);
        assert_eq!(g.degree(&vid("v")).unwrap(), 0);
        assert_eq!(g.isolated_vertex_count(), 1);
    }

    #[test]
    fn unknown_vertex_degree_fails() {
        let g = mg(&["v"], &[]);
        assert!(g.degree(&vid("zz")).is_err());
    }

    #[test]
    fn triangle_is_eulerian() {
        let g = mg(
            &["a", "b", "c"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "a", "c")],
        );
        assert!(g.is_eulerian());
    }

    #[test]
    fn two_edge_path_is_not_eulerian() {
        let g = mg(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]);
        assert!(!g.is_eulerian());
    }

    #[test]
    fn disjoint_loops_are_not_eulerian() {
        let g = mg(&["a", "b"], &[("e1", "a", "a"), ("e2", "b", "b")]);
        assert!(!g.is_eulerian());
    }

    #[test]
    fn empty_edge_set_is_vacuously_eulerian() {
        let g = mg(&["a", "b"], &[]);
        assert!(g.is_eulerian());
    }

    #[test]
    fn components_split_on_isolated() {
        let g = mg(&["a", "b", "c"], &[("e1", "a", "b")]);
        assert_eq!(g.component_count(), 2);
    }
}
