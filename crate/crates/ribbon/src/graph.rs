use std::collections::{BTreeMap, BTreeSet};

use crate::error::ValidationError;
use crate::label::{EdgeLabel, End, HalfEdge, Twist, VertexId};
use crate::multigraph::Multigraph;

/// A ribbon graph encoded as a signed rotation system: every vertex disc
/// carries a cyclic sequence of half-edge attachments, and every edge band
/// carries a twist bit. This is the canonical internal form; arrow
/// presentations are a view of it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RibbonGraph {
    vertices: Vec<(VertexId, Vec<HalfEdge>)>,
    twists: BTreeMap<EdgeLabel, Twist>,
}

impl RibbonGraph {
    /// Validates raw rotation data and builds a ribbon graph.
    ///
    /// Every half-edge must appear exactly once, both ends of every label
    /// must be present, and every label appearing in a rotation must have a
    /// twist entry (and vice versa). Vertex sequences may be empty: isolated
    /// vertex discs are legal.
    pub fn new(
        vertices: Vec<(VertexId, Vec<HalfEdge>)>,
        twists: BTreeMap<EdgeLabel, Twist>,
    ) -> Result<Self, ValidationError> {
        let mut seen_vertices = BTreeSet::new();
        let mut seen_halves: BTreeSet<(EdgeLabel, End)> = BTreeSet::new();
        for (vid, rotation) in &vertices {
            if !seen_vertices.insert(vid.clone()) {
                return Err(ValidationError::DuplicateVertex(vid.to_string()));
            }
            for h in rotation {
                if !seen_halves.insert((h.label.clone(), h.end)) {
                    return Err(ValidationError::DuplicateHalfEdge(h.to_string()));
                }
                if !twists.contains_key(&h.label) {
                    return Err(ValidationError::UndeclaredLabel(h.label.to_string()));
                }
            }
        }
        for label in twists.keys() {
            let zero = seen_halves.contains(&(label.clone(), End::Zero));
            let one = seen_halves.contains(&(label.clone(), End::One));
            match (zero, one) {
                (true, true) => {}
                (false, false) => {
                    return Err(ValidationError::DanglingTwist(label.to_string()))
                }
                (true, false) => {
                    return Err(ValidationError::MissingEnd(format!("{label}.1")))
                }
                (false, true) => {
                    return Err(ValidationError::MissingEnd(format!("{label}.0")))
                }
            }
        }
        let mut vertices = vertices;
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(RibbonGraph { vertices, twists })
    }

    /// Builds without validating; callers guarantee the invariants hold.
    pub(crate) fn from_parts_unchecked(
        mut vertices: Vec<(VertexId, Vec<HalfEdge>)>,
        twists: BTreeMap<EdgeLabel, Twist>,
    ) -> Self {
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        RibbonGraph { vertices, twists }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twists.len()
    }

    /// Vertices in sorted id order, each with its cyclic rotation.
    pub fn vertices(&self) -> &[(VertexId, Vec<HalfEdge>)] {
        &self.vertices
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter().map(|(v, _)| v)
    }

    pub fn rotation(&self, v: &VertexId) -> Option<&[HalfEdge]> {
        self.vertices
            .iter()
            .find(|(vid, _)| vid == v)
            .map(|(_, r)| r.as_slice())
    }

    pub fn labels(&self) -> impl Iterator<Item = &EdgeLabel> {
        self.twists.keys()
    }

    pub fn label_set(&self) -> BTreeSet<EdgeLabel> {
        self.twists.keys().cloned().collect()
    }

    pub fn twist(&self, label: &EdgeLabel) -> Option<Twist> {
        self.twists.get(label).copied()
    }

    pub fn twists(&self) -> &BTreeMap<EdgeLabel, Twist> {
        &self.twists
    }

    /// The vertex hosting the given half-edge.
    pub fn host_vertex(&self, label: &EdgeLabel, end: End) -> Option<&VertexId> {
        self.vertices.iter().find_map(|(vid, rotation)| {
            rotation
                .iter()
                .any(|h| h.label == *label && h.end == end)
                .then_some(vid)
        })
    }

    /// True when both attachment segments of `label` sit on the same vertex.
    pub fn is_loop(&self, label: &EdgeLabel) -> Option<bool> {
        let u = self.host_vertex(label, End::Zero)?;
        let w = self.host_vertex(label, End::One)?;
        Some(u == w)
    }

    /// Spanning deletion: removes the edges in `drop`, keeps every vertex.
    pub fn delete_edges(&self, drop: &BTreeSet<EdgeLabel>) -> Result<RibbonGraph, ValidationError> {
        for label in drop {
            if !self.twists.contains_key(label) {
                return Err(ValidationError::UnknownLabel(label.to_string()));
            }
        }
        let vertices = self
            .vertices
            .iter()
            .map(|(vid, rotation)| {
                let kept = rotation
                    .iter()
                    .filter(|h| !drop.contains(&h.label))
                    .cloned()
                    .collect();
                (vid.clone(), kept)
            })
            .collect();
        let twists = self
            .twists
            .iter()
            .filter(|(label, _)| !drop.contains(*label))
            .map(|(l, t)| (l.clone(), *t))
            .collect();
        Ok(RibbonGraph { vertices, twists })
    }

    /// Complement of `keep` within this graph's label set.
    pub fn complement(&self, keep: &BTreeSet<EdgeLabel>) -> BTreeSet<EdgeLabel> {
        self.twists
            .keys()
            .filter(|l| !keep.contains(*l))
            .cloned()
            .collect()
    }

    /// Reverses `v`'s cyclic sequence and toggles the twist of every
    /// incident non-loop edge; a loop's twist toggles twice, so it is
    /// unchanged.
    pub fn vertex_flip(&self, v: &VertexId) -> Result<RibbonGraph, ValidationError> {
        let Some((_, rotation)) = self.vertices.iter().find(|(vid, _)| vid == v) else {
            return Err(ValidationError::UnknownVertex(v.to_string()));
        };
        let mut twists = self.twists.clone();
        for h in rotation {
            let t = twists
                .get_mut(&h.label)
                .expect("half-edge labels are declared");
            *t = t.toggled();
        }
        let vertices = self
            .vertices
            .iter()
            .map(|(vid, rotation)| {
                let seq = if vid == v {
                    rotation.iter().rev().cloned().collect()
                } else {
                    rotation.clone()
                };
                (vid.clone(), seq)
            })
            .collect();
        Ok(RibbonGraph { vertices, twists })
    }

    /// The abstract multigraph underneath: vertex discs shrink to points,
    /// edge bands to lines; rotations and twists are forgotten.
    pub fn core(&self) -> Multigraph {
        let vertices: BTreeSet<VertexId> = self.vertex_ids().cloned().collect();
        let mut edges = BTreeMap::new();
        for label in self.twists.keys() {
            let u = self
                .host_vertex(label, End::Zero)
                .expect("validated graph has both ends")
                .clone();
            let w = self
                .host_vertex(label, End::One)
                .expect("validated graph has both ends")
                .clone();
            edges.insert(label.clone(), (u, w));
        }
        Multigraph::new(vertices, edges).expect("core endpoints are declared vertices")
    }

    /// Renames every vertex with the supplied function; ids must stay unique.
    pub fn rename_vertices(&self, mut f: impl FnMut(&VertexId) -> VertexId) -> RibbonGraph {
        let vertices: Vec<_> = self
            .vertices
            .iter()
            .map(|(vid, r)| (f(vid), r.clone()))
            .collect();
        RibbonGraph::from_parts_unchecked(vertices, self.twists.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn loop_u_is_valid() {
        let g = fixtures::loop_u();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.is_loop(&fixtures::lbl("e")), Some(true));
    }

    #[test]
    fn duplicate_half_edge_is_rejected() {
        let e = fixtures::lbl("e");
        let err = RibbonGraph::new(
            vec![(
                fixtures::vid("v1"),
                vec![
                    HalfEdge::new(e.clone(), End::Zero),
                    HalfEdge::new(e.clone(), End::Zero),
                ],
            )],
            BTreeMap::from([(e, Twist::Untwisted)]),
        )
        .unwrap_err();
        assert!(matches!(err, ValidationError::DuplicateHalfEdge(_)));
    }

    #[test]
    fn missing_end_is_rejected() {
        let e = fixtures::lbl("e");
        let err = RibbonGraph::new(
            vec![(
                fixtures::vid("v1"),
                vec![HalfEdge::new(e.clone(), End::Zero)],
            )],
            BTreeMap::from([(e, Twist::Untwisted)]),
        )
        .unwrap_err();
        assert!(matches!(err, ValidationError::MissingEnd(_)));
    }

    #[test]
    fn undeclared_label_is_rejected() {
        let e = fixtures::lbl("e");
        let err = RibbonGraph::new(
            vec![(
                fixtures::vid("v1"),
                vec![
                    HalfEdge::new(e.clone(), End::Zero),
                    HalfEdge::new(e, End::One),
                ],
            )],
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, ValidationError::UndeclaredLabel(_)));
    }

    #[test]
    fn delete_nothing_is_identity() {
        let g = fixtures::theta();
        assert_eq!(g.delete_edges(&BTreeSet::new()).unwrap(), g);
    }

    #[test]
    fn delete_all_leaves_isolated_vertex() {
        let g = fixtures::b2_int();
        let all = g.label_set();
        let stripped = g.delete_edges(&all).unwrap();
        assert_eq!(stripped.vertex_count(), 1);
        assert_eq!(stripped.edge_count(), 0);
    }

    #[test]
    fn delete_unknown_label_fails() {
        let g = fixtures::loop_u();
        let err = g
            .delete_edges(&BTreeSet::from([fixtures::lbl("zz")]))
            .unwrap_err();
        assert!(matches!(err, ValidationError::UnknownLabel(_)));
    }

    #[test]
    fn vertex_flip_is_involution() {
        let g = fixtures::theta();
        let u = fixtures::vid("u");
        assert_eq!(g.vertex_flip(&u).unwrap().vertex_flip(&u).unwrap(), g);
    }

    #[test]
    fn vertex_flip_on_isolated_vertex_is_identity() {
        let g = fixtures::v0();
        assert_eq!(g.vertex_flip(&fixtures::vid("v1")).unwrap(), g);
    }

    #[test]
    fn flip_keeps_loop_twists() {
        let g = fixtures::loop_u();
        let flipped = g.vertex_flip(&fixtures::vid("v1")).unwrap();
        assert_eq!(flipped.twist(&fixtures::lbl("e")), Some(Twist::Untwisted));
    }

    #[test]
    fn core_of_theta_is_dipole3() {
        let core = fixtures::theta().core();
        assert_eq!(core.vertex_count(), 2);
        assert_eq!(core.edge_count(), 3);
        assert!(core.edges().values().all(|(u, w)| u != w));
    }

    #[test]
    fn core_forgets_twists() {
        assert_eq!(fixtures::loop_u().core(), fixtures::loop_t().core());
    }
}
