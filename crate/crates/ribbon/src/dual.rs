use std::collections::BTreeMap;

use crate::boundary::board_of;
use crate::graph::RibbonGraph;
use crate::label::{EdgeLabel, End, HalfEdge, Twist, VertexId};
use crate::walk::{trace, Board, Visit, Walk};

/// A dual vertex rotation entry produced from one boundary walk.
#[derive(Clone, Copy, Debug)]
pub(crate) enum DualSlot {
    Half {
        edge: usize,
        end: usize,
    },
    /// A token the walk passed over, with the traversal direction recorded
    /// so its arrow parity can be transported.
    Token {
        vertex: usize,
        slot: usize,
        reversed: bool,
    },
}

/// Rotations and twists of the natural dual, derived from the boundary
/// walks: dual vertices are the walks, side 0 of an edge becomes its dual
/// end 0, and an edge's dual band is untwisted exactly when the walks run
/// over its two sides the same way relative to the stored arrow directions.
pub(crate) fn dual_structure<T>(board: &Board<T>) -> (Vec<Vec<DualSlot>>, Vec<Twist>) {
    let walks = trace(board);
    let mut rotations = Vec::with_capacity(walks.len());
    let mut side_reversed: Vec<[Option<bool>; 2]> = vec![[None, None]; board.edge_twists.len()];
    for walk in &walks {
        let mut rotation = Vec::new();
        if let Walk::Arcs(visits) = walk {
            for visit in visits {
                match *visit {
                    Visit::Side {
                        edge,
                        side,
                        reversed,
                    } => {
                        debug_assert!(side_reversed[edge][side].is_none());
                        side_reversed[edge][side] = Some(reversed);
                        rotation.push(DualSlot::Half { edge, end: side });
                    }
                    Visit::Token {
                        vertex,
                        slot,
                        reversed,
                    } => rotation.push(DualSlot::Token {
                        vertex,
                        slot,
                        reversed,
                    }),
                    Visit::Corner { .. } => {}
                }
            }
        }
        rotations.push(rotation);
    }
    let twists = side_reversed
        .iter()
        .map(|sides| {
            let r0 = sides[0].expect("side 0 traversed once");
            let r1 = sides[1].expect("side 1 traversed once");
            if r0 == r1 {
                Twist::Untwisted
            } else {
                Twist::Twisted
            }
        })
        .collect();
    (rotations, twists)
}

pub(crate) fn dual_vertex_id(index: usize) -> VertexId {
    VertexId::new(&format!("b{index}")).expect("generated id is a valid token")
}

/// Fills the boundary punctures with discs and attaches the complementary
/// sides of every edge to them: vertices of the dual are the boundary
/// components of the input, edges keep their labels. Returns the dual and
/// the label-preserving edge correspondence.
pub fn natural_dual(graph: &RibbonGraph) -> (RibbonGraph, BTreeMap<EdgeLabel, EdgeLabel>) {
    let board = board_of(graph);
    let labels: Vec<EdgeLabel> = graph.labels().cloned().collect();
    let (rotations, twists) = dual_structure(&board);
    let vertices = rotations
        .into_iter()
        .enumerate()
        .map(|(i, rotation)| {
            let rotation = rotation
                .into_iter()
                .map(|slot| match slot {
                    DualSlot::Half { edge, end } => HalfEdge::new(
                        labels[edge].clone(),
                        if end == 0 { End::Zero } else { End::One },
                    ),
                    DualSlot::Token { .. } => unreachable!("plain graphs carry no tokens"),
                })
                .collect();
            (dual_vertex_id(i), rotation)
        })
        .collect();
    let twists = labels.iter().cloned().zip(twists).collect();
    let dual = RibbonGraph::from_parts_unchecked(vertices, twists);
    let correspondence = labels.iter().map(|l| (l.clone(), l.clone())).collect();
    (dual, correspondence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{boundary_count, invariants};
    use crate::equiv::equivalent;
    use crate::fixtures;
    use crate::isomorphism::graph_isomorphic;

    #[test]
    fn dual_swaps_v_and_p() {
        for (name, g) in fixtures::all() {
            let (dual, phi) = natural_dual(&g);
            assert_eq!(dual.vertex_count(), boundary_count(&g), "{name}");
            assert_eq!(boundary_count(&dual), g.vertex_count(), "{name}");
            assert_eq!(dual.edge_count(), g.edge_count(), "{name}");
            assert!(phi.iter().all(|(a, b)| a == b));
        }
    }

    #[test]
    fn dual_preserves_euler_genus_and_orientability() {
        for (name, g) in fixtures::all() {
            let (dual, _) = natural_dual(&g);
            let before = invariants(&g);
            let after = invariants(&dual);
            assert_eq!(before.euler_genus, after.euler_genus, "{name}");
            assert_eq!(before.orientable, after.orientable, "{name}");
        }
    }

    #[test]
    fn double_dual_is_labeled_identity() {
        for (name, g) in fixtures::all() {
            let (once, _) = natural_dual(&g);
            let (twice, _) = natural_dual(&once);
            assert!(equivalent(&g, &twice, true), "{name}");
        }
    }

    #[test]
    fn dual_of_isolated_vertex_is_an_isolated_vertex() {
        let (dual, _) = natural_dual(&fixtures::v0());
        assert_eq!(dual.vertex_count(), 1);
        assert_eq!(dual.edge_count(), 0);
    }

    #[test]
    fn dual_core_of_theta_is_a_triangle() {
        let (dual, _) = natural_dual(&fixtures::theta());
        let triangle = crate::multigraph::Multigraph::new(
            ["x", "y", "z"].iter().map(|v| fixtures::vid(v)).collect(),
            [
                ("a", ("x", "y")),
                ("b", ("y", "z")),
                ("c", ("x", "z")),
            ]
            .iter()
            .map(|(l, (u, w))| (fixtures::lbl(l), (fixtures::vid(u), fixtures::vid(w))))
            .collect(),
        )
        .unwrap();
        assert!(graph_isomorphic(&dual.core(), &triangle).is_some());
    }

    #[test]
    fn moebius_band_is_self_dual() {
        let (dual, _) = natural_dual(&fixtures::loop_t());
        assert!(equivalent(&dual, &fixtures::loop_t(), true));
    }
}
