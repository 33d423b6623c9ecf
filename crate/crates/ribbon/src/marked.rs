use std::collections::{BTreeMap, BTreeSet};

use crate::arrow::token_dir;
use crate::dual::{dual_structure, dual_vertex_id, DualSlot};
use crate::error::ValidationError;
use crate::graph::RibbonGraph;
use crate::label::{Dir, EdgeLabel, End, HalfEdge, Twist, VertexId};
use crate::walk::{Board, Slot};

/// One position on a marked vertex boundary: either a glued half-edge of
/// the base or a coloured marking arrow recording where a removed edge
/// reattaches.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BoundaryItem {
    Half(HalfEdge),
    Mark { colour: EdgeLabel, dir: Dir },
}

/// A ribbon graph with marking arrows on its vertex boundaries: exactly two
/// marks of each colour, no mark colour colliding with a base edge label,
/// and no mark touching an edge (marks occupy their own boundary slots).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArrowMarkedRibbonGraph {
    vertices: Vec<(VertexId, Vec<BoundaryItem>)>,
    twists: BTreeMap<EdgeLabel, Twist>,
}

/// Address and direction of one marking arrow.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkRef {
    pub colour: EdgeLabel,
    pub vertex: VertexId,
    /// Index into the vertex's boundary sequence, counting half-edges and
    /// marks alike.
    pub position: usize,
    pub dir: Dir,
}

impl ArrowMarkedRibbonGraph {
    pub fn new(
        vertices: Vec<(VertexId, Vec<BoundaryItem>)>,
        twists: BTreeMap<EdgeLabel, Twist>,
    ) -> Result<Self, ValidationError> {
        let base_vertices = vertices
            .iter()
            .map(|(vid, items)| {
                let rotation = items
                    .iter()
                    .filter_map(|item| match item {
                        BoundaryItem::Half(h) => Some(h.clone()),
                        BoundaryItem::Mark { .. } => None,
                    })
                    .collect();
                (vid.clone(), rotation)
            })
            .collect();
        RibbonGraph::new(base_vertices, twists.clone())?;
        let mut counts: BTreeMap<&EdgeLabel, usize> = BTreeMap::new();
        for (_, items) in &vertices {
            for item in items {
                if let BoundaryItem::Mark { colour, .. } = item {
                    if twists.contains_key(colour) {
                        return Err(ValidationError::MarkColourCollision(colour.to_string()));
                    }
                    *counts.entry(colour).or_insert(0) += 1;
                }
            }
        }
        for (colour, count) in counts {
            if count != 2 {
                return Err(ValidationError::LabelCount(colour.to_string(), count));
            }
        }
        let mut vertices = vertices;
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(ArrowMarkedRibbonGraph { vertices, twists })
    }

    pub(crate) fn from_parts_unchecked(
        mut vertices: Vec<(VertexId, Vec<BoundaryItem>)>,
        twists: BTreeMap<EdgeLabel, Twist>,
    ) -> Self {
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        ArrowMarkedRibbonGraph { vertices, twists }
    }

    /// Marked vertex boundaries in sorted id order.
    pub fn vertices(&self) -> &[(VertexId, Vec<BoundaryItem>)] {
        &self.vertices
    }

    pub fn twists(&self) -> &BTreeMap<EdgeLabel, Twist> {
        &self.twists
    }

    /// The underlying ribbon graph with every mark forgotten.
    pub fn base(&self) -> RibbonGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|(vid, items)| {
                let rotation = items
                    .iter()
                    .filter_map(|item| match item {
                        BoundaryItem::Half(h) => Some(h.clone()),
                        BoundaryItem::Mark { .. } => None,
                    })
                    .collect();
                (vid.clone(), rotation)
            })
            .collect();
        RibbonGraph::from_parts_unchecked(vertices, self.twists.clone())
    }

    /// Every mark with its address, ordered by (vertex, position).
    pub fn marks(&self) -> Vec<MarkRef> {
        let mut out = Vec::new();
        for (vid, items) in &self.vertices {
            for (position, item) in items.iter().enumerate() {
                if let BoundaryItem::Mark { colour, dir } = item {
                    out.push(MarkRef {
                        colour: colour.clone(),
                        vertex: vid.clone(),
                        position,
                        dir: *dir,
                    });
                }
            }
        }
        out
    }

    pub fn mark_count(&self) -> usize {
        self.vertices
            .iter()
            .map(|(_, items)| {
                items
                    .iter()
                    .filter(|i| matches!(i, BoundaryItem::Mark { .. }))
                    .count()
            })
            .sum()
    }

    pub fn colours(&self) -> BTreeSet<EdgeLabel> {
        self.marks().into_iter().map(|m| m.colour).collect()
    }

    /// Reverses both marks of one colour; an equivalence move.
    pub fn reverse_colour(&self, colour: &EdgeLabel) -> ArrowMarkedRibbonGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|(vid, items)| {
                let items = items
                    .iter()
                    .map(|item| match item {
                        BoundaryItem::Mark { colour: c, dir } if c == colour => {
                            BoundaryItem::Mark {
                                colour: c.clone(),
                                dir: dir.reversed(),
                            }
                        }
                        other => other.clone(),
                    })
                    .collect();
                (vid.clone(), items)
            })
            .collect();
        ArrowMarkedRibbonGraph {
            vertices,
            twists: self.twists.clone(),
        }
    }
}

/// Describes `graph` as an arrow-marked spanning sub-ribbon graph: the
/// edges in `removed` are replaced by marking arrows at their former
/// attachment positions, directions given by the edge orientation
/// convention.
pub fn arrow_marked_decompose(
    graph: &RibbonGraph,
    removed: &BTreeSet<EdgeLabel>,
) -> Result<ArrowMarkedRibbonGraph, ValidationError> {
    for label in removed {
        if graph.twist(label).is_none() {
            return Err(ValidationError::UnknownLabel(label.to_string()));
        }
    }
    let vertices = graph
        .vertices()
        .iter()
        .map(|(vid, rotation)| {
            let items = rotation
                .iter()
                .map(|h| {
                    if removed.contains(&h.label) {
                        BoundaryItem::Mark {
                            colour: h.label.clone(),
                            dir: token_dir(h.end, graph.twist(&h.label).expect("declared")),
                        }
                    } else {
                        BoundaryItem::Half(h.clone())
                    }
                })
                .collect();
            (vid.clone(), items)
        })
        .collect();
    let twists = graph
        .twists()
        .iter()
        .filter(|(l, _)| !removed.contains(*l))
        .map(|(l, t)| (l.clone(), *t))
        .collect();
    Ok(ArrowMarkedRibbonGraph::from_parts_unchecked(
        vertices, twists,
    ))
}

/// Glues one new edge per colour onto the base, at the marked positions:
/// the first mark of a colour (in vertex order) becomes end 0, and the new
/// band is untwisted exactly when the two arrows agree in direction.
pub fn arrow_marked_reassemble(am: &ArrowMarkedRibbonGraph) -> RibbonGraph {
    let mut next_end: BTreeMap<&EdgeLabel, End> = BTreeMap::new();
    let mut dirs: BTreeMap<&EdgeLabel, Vec<Dir>> = BTreeMap::new();
    for (_, items) in am.vertices() {
        for item in items {
            if let BoundaryItem::Mark { colour, dir } = item {
                dirs.entry(colour).or_default().push(*dir);
            }
        }
    }
    let mut twists = am.twists().clone();
    for (colour, pair) in &dirs {
        debug_assert_eq!(pair.len(), 2);
        let twist = if pair[0] == pair[1] {
            Twist::Untwisted
        } else {
            Twist::Twisted
        };
        twists.insert((*colour).clone(), twist);
    }
    let vertices = am
        .vertices()
        .iter()
        .map(|(vid, items)| {
            let rotation = items
                .iter()
                .map(|item| match item {
                    BoundaryItem::Half(h) => h.clone(),
                    BoundaryItem::Mark { colour, .. } => {
                        let end = next_end
                            .entry(colour)
                            .and_modify(|e| *e = e.flip())
                            .or_insert(End::Zero);
                        HalfEdge::new(colour.clone(), *end)
                    }
                })
                .collect();
            (vid.clone(), rotation)
        })
        .collect();
    RibbonGraph::from_parts_unchecked(vertices, twists)
}

pub(crate) fn board_of_marked(am: &ArrowMarkedRibbonGraph) -> Board<(EdgeLabel, Dir)> {
    let mut edge_index: BTreeMap<&EdgeLabel, usize> = BTreeMap::new();
    let mut edge_twists = Vec::new();
    for (label, twist) in am.twists() {
        edge_index.insert(label, edge_twists.len());
        edge_twists.push(*twist);
    }
    let vertices = am
        .vertices()
        .iter()
        .map(|(_, items)| {
            items
                .iter()
                .map(|item| match item {
                    BoundaryItem::Half(h) => Slot::Band {
                        edge: edge_index[&h.label],
                        end: h.end.index(),
                    },
                    BoundaryItem::Mark { colour, dir } => Slot::Token((colour.clone(), *dir)),
                })
                .collect()
        })
        .collect();
    Board {
        vertices,
        edge_twists,
    }
}

/// Natural dual of the base with the marks transported along the shared
/// boundary: dual vertices are the boundary walks, and a mark keeps its
/// place on whatever walk runs over it, flipping its recorded direction
/// when the walk runs against the original vertex rotation.
pub fn marked_dual(am: &ArrowMarkedRibbonGraph) -> ArrowMarkedRibbonGraph {
    let board = board_of_marked(am);
    let labels: Vec<EdgeLabel> = am.twists().keys().cloned().collect();
    let (rotations, twists) = dual_structure(&board);
    let vertices = rotations
        .into_iter()
        .enumerate()
        .map(|(i, rotation)| {
            let items = rotation
                .into_iter()
                .map(|slot| match slot {
                    DualSlot::Half { edge, end } => BoundaryItem::Half(HalfEdge::new(
                        labels[edge].clone(),
                        if end == 0 { End::Zero } else { End::One },
                    )),
                    DualSlot::Token {
                        vertex,
                        slot,
                        reversed,
                    } => {
                        let Slot::Token((colour, dir)) = &board.vertices[vertex][slot] else {
                            unreachable!("token visits address token slots");
                        };
                        BoundaryItem::Mark {
                            colour: colour.clone(),
                            dir: if reversed { dir.reversed() } else { *dir },
                        }
                    }
                })
                .collect();
            (dual_vertex_id(i), items)
        })
        .collect();
    let twists = labels.iter().cloned().zip(twists).collect();
    ArrowMarkedRibbonGraph::from_parts_unchecked(vertices, twists)
}
