use std::collections::{BTreeMap, BTreeSet};

use crate::arrow::{from_arrow_presentation, token_dir, ArrowPresentation, ArrowToken};
use crate::boundary::{boundary_count, invariants};
use crate::dual::dual_vertex_id;
use crate::error::ValidationError;
use crate::graph::RibbonGraph;
use crate::label::{Dir, EdgeLabel, Twist, VertexId};
use crate::marked::{arrow_marked_decompose, arrow_marked_reassemble, marked_dual, ArrowMarkedRibbonGraph};
use crate::walk::{trace, Board, Slot, Visit, Walk};

/// A subset of edge labels together with the edge bijection that witnesses
/// a partial duality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    subset: BTreeSet<EdgeLabel>,
    map: BTreeMap<EdgeLabel, EdgeLabel>,
}

impl Certificate {
    pub fn new(
        subset: BTreeSet<EdgeLabel>,
        map: BTreeMap<EdgeLabel, EdgeLabel>,
    ) -> Result<Self, ValidationError> {
        let mut images = BTreeSet::new();
        for image in map.values() {
            if !images.insert(image.clone()) {
                return Err(ValidationError::NotABijection(format!(
                    "{image} has two preimages"
                )));
            }
        }
        for label in &subset {
            if !map.contains_key(label) {
                return Err(ValidationError::SubsetOutsideSource(label.to_string()));
            }
        }
        Ok(Certificate { subset, map })
    }

    /// The identity bijection on `labels` with the given subset.
    pub fn identity(
        labels: &BTreeSet<EdgeLabel>,
        subset: BTreeSet<EdgeLabel>,
    ) -> Result<Self, ValidationError> {
        Certificate::new(subset, labels.iter().map(|l| (l.clone(), l.clone())).collect())
    }

    pub fn subset(&self) -> &BTreeSet<EdgeLabel> {
        &self.subset
    }

    pub fn map(&self) -> &BTreeMap<EdgeLabel, EdgeLabel> {
        &self.map
    }

    pub fn apply(&self, label: &EdgeLabel) -> Option<&EdgeLabel> {
        self.map.get(label)
    }

    pub fn image_of_subset(&self) -> BTreeSet<EdgeLabel> {
        self.subset
            .iter()
            .map(|l| self.map[l].clone())
            .collect()
    }

    pub fn source_labels(&self) -> BTreeSet<EdgeLabel> {
        self.map.keys().cloned().collect()
    }

    pub fn target_labels(&self) -> BTreeSet<EdgeLabel> {
        self.map.values().cloned().collect()
    }

    /// The inverse certificate: maps images back, with subset φ(A).
    pub fn inverse(&self) -> Certificate {
        Certificate {
            subset: self.image_of_subset(),
            map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }
}

fn check_subset(graph: &RibbonGraph, subset: &BTreeSet<EdgeLabel>) -> Result<(), ValidationError> {
    for label in subset {
        if graph.twist(label).is_none() {
            return Err(ValidationError::UnknownLabel(label.to_string()));
        }
    }
    Ok(())
}

/// Forms the partial dual along `subset` by the boundary-walk construction:
/// each edge gets oriented arrows, placed on its vertex-attachment arcs
/// when the edge is outside the subset and on its free sides when inside;
/// the boundary of the spanning sub-ribbon graph on the subset is traced,
/// collecting arrows into an arrow presentation, which is the result.
///
/// The returned certificate carries the subset and the identity label map.
pub fn partial_dual(
    graph: &RibbonGraph,
    subset: &BTreeSet<EdgeLabel>,
) -> Result<(RibbonGraph, Certificate), ValidationError> {
    partial_dual_with_orientations(graph, subset, &BTreeSet::new())
}

/// Same construction with the per-edge orientation of step one replaced for
/// the edges in `reversed_orientation`. Any choice yields the same ribbon
/// graph up to labeled equivalence; the default orientation is end 0
/// towards end 1.
pub fn partial_dual_with_orientations(
    graph: &RibbonGraph,
    subset: &BTreeSet<EdgeLabel>,
    reversed_orientation: &BTreeSet<EdgeLabel>,
) -> Result<(RibbonGraph, Certificate), ValidationError> {
    check_subset(graph, subset)?;
    check_subset(graph, reversed_orientation)?;

    let mut band_labels: Vec<EdgeLabel> = Vec::new();
    let mut band_index: BTreeMap<&EdgeLabel, usize> = BTreeMap::new();
    let mut band_twists = Vec::new();
    for (label, twist) in graph.twists() {
        if subset.contains(label) {
            band_index.insert(label, band_labels.len());
            band_labels.push(label.clone());
            band_twists.push(*twist);
        }
    }
    let vertices: Vec<Vec<Slot<(EdgeLabel, Dir)>>> = graph
        .vertices()
        .iter()
        .map(|(_, rotation)| {
            rotation
                .iter()
                .map(|h| {
                    if let Some(&edge) = band_index.get(&h.label) {
                        Slot::Band {
                            edge,
                            end: h.end.index(),
                        }
                    } else {
                        let mut dir =
                            token_dir(h.end, graph.twist(&h.label).expect("declared"));
                        if reversed_orientation.contains(&h.label) {
                            dir = dir.reversed();
                        }
                        Slot::Token((h.label.clone(), dir))
                    }
                })
                .collect()
        })
        .collect();
    let board = Board {
        vertices,
        edge_twists: band_twists,
    };

    let mut cycles: Vec<(VertexId, Vec<ArrowToken>)> = Vec::new();
    for (i, walk) in trace(&board).into_iter().enumerate() {
        let tokens = match walk {
            Walk::Circle { .. } => Vec::new(),
            Walk::Arcs(visits) => visits
                .into_iter()
                .filter_map(|visit| match visit {
                    Visit::Corner { .. } => None,
                    Visit::Token {
                        vertex,
                        slot,
                        reversed,
                    } => {
                        let Slot::Token((label, dir)) = &board.vertices[vertex][slot] else {
                            unreachable!("token visits address token slots");
                        };
                        Some(ArrowToken {
                            label: label.clone(),
                            dir: if reversed { dir.reversed() } else { *dir },
                        })
                    }
                    Visit::Side {
                        edge,
                        side: _,
                        reversed,
                    } => {
                        // The stored side direction is the arrow.
                        let mut dir = if reversed { Dir::Against } else { Dir::With };
                        if reversed_orientation.contains(&band_labels[edge]) {
                            dir = dir.reversed();
                        }
                        Some(ArrowToken {
                            label: band_labels[edge].clone(),
                            dir,
                        })
                    }
                })
                .collect(),
        };
        cycles.push((dual_vertex_id(i), tokens));
    }
    let ap = ArrowPresentation::new(cycles).expect("walk tokens come in colour pairs");
    let result = from_arrow_presentation(&ap);
    let cert = Certificate::identity(&graph.label_set(), subset.clone())
        .expect("subset validated against the label set");
    Ok((result, cert))
}

/// Forms the same partial dual through the arrow-marked route: describe the
/// graph as an arrow-marked spanning sub-ribbon graph on the subset, take
/// the natural dual of the base transporting the marks, and reassemble.
pub fn partial_dual_via_arrow_marked(
    graph: &RibbonGraph,
    subset: &BTreeSet<EdgeLabel>,
) -> Result<(RibbonGraph, Certificate), ValidationError> {
    check_subset(graph, subset)?;
    let removed = graph.complement(subset);
    let am = arrow_marked_decompose(graph, &removed)?;
    let dual_am = marked_dual(&am);
    let result = arrow_marked_reassemble(&dual_am);
    let cert = Certificate::identity(&graph.label_set(), subset.clone())
        .expect("subset validated against the label set");
    Ok((result, cert))
}

/// A naturally dual pair sharing one boundary structure, with coloured
/// marks recording the edges outside the subset. The closed surface is
/// represented by the pair itself, never materialized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialDualEmbedding {
    primal: ArrowMarkedRibbonGraph,
    dualpart: ArrowMarkedRibbonGraph,
}

impl PartialDualEmbedding {
    pub fn new(
        primal: ArrowMarkedRibbonGraph,
        dualpart: ArrowMarkedRibbonGraph,
    ) -> Result<Self, ValidationError> {
        let expected = marked_dual(&primal);
        if expected != dualpart {
            return Err(ValidationError::NotABijection(
                "dualpart is not the transported natural dual of primal".to_string(),
            ));
        }
        Ok(PartialDualEmbedding { primal, dualpart })
    }

    pub fn primal(&self) -> &ArrowMarkedRibbonGraph {
        &self.primal
    }

    pub fn dualpart(&self) -> &ArrowMarkedRibbonGraph {
        &self.dualpart
    }
}

/// Builds the partial dual embedding of `graph` along `subset`: the primal
/// part is the spanning sub-ribbon graph on the subset carrying marks for
/// the other edges; the dual part is its natural dual with the marks
/// transported.
pub fn pd_embedding_build(
    graph: &RibbonGraph,
    subset: &BTreeSet<EdgeLabel>,
) -> Result<PartialDualEmbedding, ValidationError> {
    check_subset(graph, subset)?;
    let removed = graph.complement(subset);
    let primal = arrow_marked_decompose(graph, &removed)?;
    let dualpart = marked_dual(&primal);
    Ok(PartialDualEmbedding { primal, dualpart })
}

/// Reads the two ribbon graphs back out of an embedding: reassembling the
/// marked primal returns the original graph, reassembling the marked dual
/// part returns its partial dual.
pub fn pd_embedding_extract(pde: &PartialDualEmbedding) -> (RibbonGraph, RibbonGraph) {
    (
        arrow_marked_reassemble(&pde.primal),
        arrow_marked_reassemble(&pde.dualpart),
    )
}

/// One checked identity relating the partial dual to the original graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// Both sides of every count identity for a partial dual. A failed row is
/// an implementation bug, never a valid outcome.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialDualReport {
    pub checks: Vec<IdentityCheck>,
}

impl PartialDualReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Evaluates the count identities for `graph` and its partial dual along
/// `subset`: vertex, boundary, edge, component, orientability, and (for
/// orientable graphs) the genus formula.
pub fn invariant_report(
    graph: &RibbonGraph,
    subset: &BTreeSet<EdgeLabel>,
) -> Result<PartialDualReport, ValidationError> {
    let (pd, _) = partial_dual(graph, subset)?;
    let complement = graph.complement(subset);
    let g_minus_ac = graph.delete_edges(&complement)?;
    let g_minus_a = graph.delete_edges(subset)?;
    let before = invariants(graph);
    let after = invariants(&pd);

    let mut checks = Vec::new();
    let mut push = |name: &'static str, lhs: i64, rhs: i64| {
        checks.push(IdentityCheck {
            name,
            lhs,
            rhs,
            holds: lhs == rhs,
        });
    };
    push(
        "v(G^A) = p(G\\A^c)",
        after.v as i64,
        boundary_count(&g_minus_ac) as i64,
    );
    push(
        "p(G^A) = p(G\\A)",
        after.p as i64,
        boundary_count(&g_minus_a) as i64,
    );
    push("e(G^A) = e(G)", after.e as i64, before.e as i64);
    push("k(G^A) = k(G)", after.k as i64, before.k as i64);
    push(
        "orientable(G^A) = orientable(G)",
        after.orientable as i64,
        before.orientable as i64,
    );
    if before.orientable {
        let formula = 2 * before.k as i64 + before.e as i64
            - boundary_count(&g_minus_ac) as i64
            - boundary_count(&g_minus_a) as i64;
        push(
            "2g(G^A) = 2k(G) + e(G) - p(G\\A^c) - p(G\\A)",
            2 * after.genus.expect("orientability is preserved") as i64,
            formula,
        );
    }
    Ok(PartialDualReport { checks })
}

/// Swaps the two end names of one edge. The surface is unchanged; useful
/// for exercising the end-naming freedom in tests.
pub fn rename_ends(graph: &RibbonGraph, label: &EdgeLabel) -> Result<RibbonGraph, ValidationError> {
    if graph.twist(label).is_none() {
        return Err(ValidationError::UnknownLabel(label.to_string()));
    }
    let vertices = graph
        .vertices()
        .iter()
        .map(|(vid, rotation)| {
            let rotation = rotation
                .iter()
                .map(|h| {
                    if h.label == *label {
                        crate::label::HalfEdge::new(h.label.clone(), h.end.flip())
                    } else {
                        h.clone()
                    }
                })
                .collect();
            (vid.clone(), rotation)
        })
        .collect();
    Ok(RibbonGraph::from_parts_unchecked(
        vertices,
        graph.twists().clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::natural_dual;
    use crate::equiv::equivalent;
    use crate::fixtures::{self, lbl};
    use crate::isomorphism::graph_isomorphic;

    fn set(labels: &[&str]) -> BTreeSet<EdgeLabel> {
        labels.iter().map(|l| lbl(l)).collect()
    }

    #[test]
    fn empty_subset_is_labeled_identity() {
        for (name, g) in fixtures::all() {
            let (pd, cert) = partial_dual(&g, &BTreeSet::new()).unwrap();
            assert!(equivalent(&g, &pd, true), "{name}");
            assert!(cert.subset().is_empty());
            assert!(cert.map().iter().all(|(a, b)| a == b));
        }
    }

    #[test]
    fn loop_dualizes_to_a_plain_edge() {
        let (pd, _) = partial_dual(&fixtures::loop_u(), &set(&["e"])).unwrap();
        let inv = invariants(&pd);
        assert_eq!((inv.v, inv.e, inv.p), (2, 1, 1));
        let core = pd.core();
        assert_eq!(core.is_loop(&lbl("e")), Some(false));
    }

    #[test]
    fn torus_bouquet_half_dual_is_the_planar_dipole() {
        let (pd, _) = partial_dual(&fixtures::b2_int(), &set(&["e"])).unwrap();
        let inv = invariants(&pd);
        assert_eq!(inv.genus, Some(0));
        let dipole2 = fixtures::dipole2_r().core();
        assert!(graph_isomorphic(&pd.core(), &dipole2).is_some());
    }

    #[test]
    fn moebius_loop_is_its_own_partial_dual() {
        let (pd, _) = partial_dual(&fixtures::loop_t(), &set(&["e"])).unwrap();
        assert!(equivalent(&pd, &fixtures::loop_t(), true));
        let (pd2, _) = partial_dual_via_arrow_marked(&fixtures::loop_t(), &set(&["e"])).unwrap();
        assert!(equivalent(&pd2, &fixtures::loop_t(), true));
    }

    #[test]
    fn full_subset_matches_the_natural_dual() {
        for (name, g) in fixtures::all() {
            let all = g.label_set();
            let (pd, _) = partial_dual(&g, &all).unwrap();
            let (pd_marked, _) = partial_dual_via_arrow_marked(&g, &all).unwrap();
            let (dual, _) = natural_dual(&g);
            assert!(equivalent(&pd, &dual, true), "{name} direct");
            assert!(equivalent(&pd_marked, &dual, true), "{name} marked");
        }
    }

    #[test]
    fn routes_agree_on_fixtures() {
        for (name, g) in fixtures::all() {
            let labels: Vec<_> = g.labels().cloned().collect();
            for mask in 0..(1u32 << labels.len()) {
                let subset: BTreeSet<_> = labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, l)| l.clone())
                    .collect();
                let (a, _) = partial_dual(&g, &subset).unwrap();
                let (b, _) = partial_dual_via_arrow_marked(&g, &subset).unwrap();
                assert!(equivalent(&a, &b, true), "{name} subset {subset:?}");
            }
        }
    }

    #[test]
    fn involution_on_fixtures() {
        for (name, g) in fixtures::all() {
            let labels: Vec<_> = g.labels().cloned().collect();
            for mask in 0..(1u32 << labels.len()) {
                let subset: BTreeSet<_> = labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, l)| l.clone())
                    .collect();
                let (pd, cert) = partial_dual(&g, &subset).unwrap();
                let (back, _) = partial_dual(&pd, &cert.image_of_subset()).unwrap();
                assert!(equivalent(&g, &back, true), "{name} subset {subset:?}");
            }
        }
    }

    #[test]
    fn unknown_subset_label_is_rejected() {
        let err = partial_dual(&fixtures::loop_u(), &set(&["zz"])).unwrap_err();
        assert!(matches!(err, ValidationError::UnknownLabel(_)));
    }

    #[test]
    fn reorientation_does_not_change_the_result() {
        let g = fixtures::theta();
        let subset = set(&["a", "b"]);
        let (base, _) = partial_dual(&g, &subset).unwrap();
        for mask in 0..8u32 {
            let flips: BTreeSet<_> = ["a", "b", "c"]
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, l)| lbl(l))
                .collect();
            let (pd, _) = partial_dual_with_orientations(&g, &subset, &flips).unwrap();
            assert!(equivalent(&base, &pd, true), "flips {flips:?}");
        }
    }

    #[test]
    fn end_renaming_does_not_change_the_result() {
        let g = fixtures::b2_int();
        let subset = set(&["e"]);
        let (base, _) = partial_dual(&g, &subset).unwrap();
        let swapped = rename_ends(&g, &lbl("e")).unwrap();
        let (pd, _) = partial_dual(&swapped, &subset).unwrap();
        assert!(equivalent(&base, &pd, true));
    }

    #[test]
    fn embedding_round_trips_the_pair() {
        for (name, g) in fixtures::all() {
            let labels: Vec<_> = g.labels().cloned().collect();
            for mask in 0..(1u32 << labels.len()) {
                let subset: BTreeSet<_> = labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, l)| l.clone())
                    .collect();
                let pde = pd_embedding_build(&g, &subset).unwrap();
                let (first, second) = pd_embedding_extract(&pde);
                assert!(equivalent(&first, &g, true), "{name} {subset:?}");
                let (pd, _) = partial_dual(&g, &subset).unwrap();
                assert!(equivalent(&second, &pd, true), "{name} {subset:?}");
            }
        }
    }

    #[test]
    fn full_subset_embedding_has_no_marks() {
        let g = fixtures::theta();
        let pde = pd_embedding_build(&g, &g.label_set()).unwrap();
        assert_eq!(pde.primal().mark_count(), 0);
        assert_eq!(pde.dualpart().mark_count(), 0);
        let (dual, _) = natural_dual(&g);
        assert!(equivalent(&pde.dualpart().base(), &dual, true));
    }

    #[test]
    fn empty_subset_embedding_is_spherical_per_vertex() {
        let g = fixtures::theta();
        let pde = pd_embedding_build(&g, &BTreeSet::new()).unwrap();
        let primal = pde.primal().base();
        assert_eq!(primal.vertex_count(), 2);
        assert_eq!(primal.edge_count(), 0);
        let dual = pde.dualpart().base();
        assert_eq!(dual.vertex_count(), 2);
        assert_eq!(dual.edge_count(), 0);
        // Each vertex disc plus its filling disc closes into a sphere.
        assert_eq!(invariants(&primal).euler_genus, 0);
    }

    #[test]
    fn invariant_report_for_the_torus_bouquet() {
        let report = invariant_report(&fixtures::b2_int(), &set(&["e"])).unwrap();
        assert!(report.all_hold(), "{report:?}");
        let v_check = &report.checks[0];
        assert_eq!((v_check.lhs, v_check.rhs), (2, 2));
        let genus = report.checks.last().unwrap();
        assert_eq!(genus.lhs, 0);
    }

    #[test]
    fn deletion_identity_on_fixtures() {
        for (name, g) in fixtures::all() {
            let labels: Vec<_> = g.labels().cloned().collect();
            for mask in 0..(1u32 << labels.len()) {
                let subset: BTreeSet<_> = labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, l)| l.clone())
                    .collect();
                let complement = g.complement(&subset);
                let (pd, _) = partial_dual(&g, &subset).unwrap();
                let lhs = pd.delete_edges(&complement).unwrap();
                let (rhs, _) = natural_dual(&g.delete_edges(&complement).unwrap());
                assert!(equivalent(&lhs, &rhs, true), "{name} subset {subset:?}");
            }
        }
    }
}
