use std::collections::BTreeMap;

use crate::graph::RibbonGraph;
use crate::label::{EdgeLabel, End, Twist, VertexId};
use crate::walk::{trace, Board, Slot, Visit, Walk};

/// One oriented arc of a boundary walk. `reversed` is relative to the arc's
/// intrinsic direction (vertex rotation for vertex arcs, the edge
/// orientation convention for edge sides).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BoundaryArc {
    /// Piece of a vertex disc boundary between two consecutive attachments;
    /// `corner` is the rotation position the arc follows.
    VertexArc {
        vertex: VertexId,
        corner: usize,
        reversed: bool,
    },
    /// Free side of an edge band.
    EdgeSide {
        label: EdgeLabel,
        side: End,
        reversed: bool,
    },
    /// Entire boundary circle of an isolated vertex.
    VertexCircle { vertex: VertexId },
}

/// A closed walk along the free boundary of a ribbon graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryComponent {
    pub arcs: Vec<BoundaryArc>,
}

/// Counts and surface invariants of a ribbon graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InvariantReport {
    pub v: usize,
    pub e: usize,
    /// Connected components.
    pub k: usize,
    /// Boundary components.
    pub p: usize,
    pub orientable: bool,
    /// 2k - v + e - p; twice the genus on orientable surfaces.
    pub euler_genus: usize,
    /// Present iff orientable.
    pub genus: Option<usize>,
}

pub(crate) fn board_of(graph: &RibbonGraph) -> Board<()> {
    let mut edge_index: BTreeMap<&EdgeLabel, usize> = BTreeMap::new();
    let mut edge_twists = Vec::new();
    for (label, twist) in graph.twists() {
        edge_index.insert(label, edge_twists.len());
        edge_twists.push(*twist);
    }
    let vertices = graph
        .vertices()
        .iter()
        .map(|(_, rotation)| {
            rotation
                .iter()
                .map(|h| Slot::Band {
                    edge: edge_index[&h.label],
                    end: h.end.index(),
                })
                .collect()
        })
        .collect();
    Board {
        vertices,
        edge_twists,
    }
}

/// Traces the boundary components in a deterministic order. Traversal
/// stays on the same side across an untwisted edge and switches sides
/// across a twisted one.
pub fn boundary_walk(graph: &RibbonGraph) -> Vec<BoundaryComponent> {
    let board = board_of(graph);
    let labels: Vec<&EdgeLabel> = graph.labels().collect();
    trace(&board)
        .into_iter()
        .map(|walk| match walk {
            Walk::Circle { vertex } => BoundaryComponent {
                arcs: vec![BoundaryArc::VertexCircle {
                    vertex: graph.vertices()[vertex].0.clone(),
                }],
            },
            Walk::Arcs(visits) => BoundaryComponent {
                arcs: visits
                    .into_iter()
                    .map(|visit| match visit {
                        Visit::Corner {
                            vertex,
                            corner,
                            reversed,
                        } => BoundaryArc::VertexArc {
                            vertex: graph.vertices()[vertex].0.clone(),
                            corner,
                            reversed,
                        },
                        Visit::Side {
                            edge,
                            side,
                            reversed,
                        } => BoundaryArc::EdgeSide {
                            label: labels[edge].clone(),
                            side: if side == 0 { End::Zero } else { End::One },
                            reversed,
                        },
                        Visit::Token { .. } => unreachable!("plain graphs carry no tokens"),
                    })
                    .collect(),
            },
        })
        .collect()
}

/// Number of boundary components.
pub fn boundary_count(graph: &RibbonGraph) -> usize {
    trace(&board_of(graph)).len()
}

/// True iff local disc orientations can be chosen consistently across every
/// edge: the twist signature must vanish on every cycle of the underlying
/// graph, so a twisted loop is immediately non-orientable.
pub fn is_orientable(graph: &RibbonGraph) -> bool {
    let n = graph.vertex_count();
    let index: BTreeMap<&VertexId, usize> = graph
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (v, i))
        .collect();
    let mut adjacency: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for label in graph.labels() {
        let u = index[graph.host_vertex(label, End::Zero).expect("both ends present")];
        let w = index[graph.host_vertex(label, End::One).expect("both ends present")];
        let twisted = graph.twist(label) == Some(Twist::Twisted);
        if u == w {
            if twisted {
                return false;
            }
            continue;
        }
        adjacency[u].push((w, twisted));
        adjacency[w].push((u, twisted));
    }
    let mut parity: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if parity[start].is_some() {
            continue;
        }
        parity[start] = Some(false);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let pv = parity[v].expect("assigned before push");
            for &(w, twisted) in &adjacency[v] {
                let want = pv ^ twisted;
                match parity[w] {
                    None => {
                        parity[w] = Some(want);
                        stack.push(w);
                    }
                    Some(pw) if pw != want => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Computes every invariant of the report; `euler_genus = 2k - v + e - p`
/// always holds, and `genus` is present exactly when the graph is
/// orientable.
pub fn invariants(graph: &RibbonGraph) -> InvariantReport {
    let v = graph.vertex_count();
    let e = graph.edge_count();
    let k = graph.core().component_count();
    let p = boundary_count(graph);
    let orientable = is_orientable(graph);
    let eg = 2 * k as i64 - v as i64 + e as i64 - p as i64;
    assert!(eg >= 0, "euler genus of a surface is nonnegative");
    let euler_genus = eg as usize;
    let genus = if orientable {
        assert!(euler_genus % 2 == 0, "orientable surfaces have even euler genus");
        Some(euler_genus / 2)
    } else {
        None
    };
    InvariantReport {
        v,
        e,
        k,
        p,
        orientable,
        euler_genus,
        genus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_boundary_counts() {
        assert_eq!(boundary_count(&fixtures::v0()), 1);
        assert_eq!(boundary_count(&fixtures::loop_u()), 2);
        assert_eq!(boundary_count(&fixtures::loop_t()), 1);
        assert_eq!(boundary_count(&fixtures::b2_int()), 1);
        assert_eq!(boundary_count(&fixtures::theta()), 3);
        assert_eq!(boundary_count(&fixtures::dipole2_r()), 2);
    }

    #[test]
    fn walks_partition_all_arcs() {
        for (_, g) in fixtures::all() {
            let mut corners = Vec::new();
            let mut sides = Vec::new();
            for component in boundary_walk(&g) {
                for arc in component.arcs {
                    match arc {
                        BoundaryArc::VertexArc { vertex, corner, .. } => {
                            corners.push((vertex, corner))
                        }
                        BoundaryArc::EdgeSide { label, side, .. } => sides.push((label, side)),
                        BoundaryArc::VertexCircle { .. } => {}
                    }
                }
            }
            let expected_corners: usize =
                g.vertices().iter().map(|(_, r)| r.len()).sum();
            assert_eq!(corners.len(), expected_corners);
            corners.sort();
            corners.dedup();
            assert_eq!(corners.len(), expected_corners, "each corner arc once");
            assert_eq!(sides.len(), 2 * g.edge_count());
            sides.sort();
            sides.dedup();
            assert_eq!(sides.len(), 2 * g.edge_count(), "each side arc once");
        }
    }

    #[test]
    fn fixture_invariants() {
        let v0 = invariants(&fixtures::v0());
        assert_eq!((v0.v, v0.e, v0.k, v0.p), (1, 0, 1, 1));
        assert!(v0.orientable);
        assert_eq!(v0.genus, Some(0));

        let b2 = invariants(&fixtures::b2_int());
        assert_eq!((b2.v, b2.e, b2.k, b2.p), (1, 2, 1, 1));
        assert!(b2.orientable);
        assert_eq!(b2.euler_genus, 2);
        assert_eq!(b2.genus, Some(1));

        let lt = invariants(&fixtures::loop_t());
        assert_eq!(lt.euler_genus, 1);
        assert!(!lt.orientable);
        assert_eq!(lt.genus, None);
    }

    #[test]
    fn orientability_examples() {
        assert!(!is_orientable(&fixtures::loop_t()));
        assert!(is_orientable(&fixtures::theta()));
        let flipped = fixtures::theta()
            .vertex_flip(&fixtures::vid("u"))
            .unwrap();
        assert!(is_orientable(&flipped));
    }

    #[test]
    fn euler_identity_across_fixtures() {
        for (_, g) in fixtures::all() {
            let r = invariants(&g);
            assert_eq!(
                r.euler_genus as i64,
                2 * r.k as i64 - r.v as i64 + r.e as i64 - r.p as i64
            );
        }
    }

    #[test]
    fn flip_preserves_invariants() {
        for (_, g) in fixtures::all() {
            for (v, _) in g.vertices().to_vec() {
                let flipped = g.vertex_flip(&v).unwrap();
                assert_eq!(invariants(&flipped), invariants(&g));
            }
        }
    }
}
