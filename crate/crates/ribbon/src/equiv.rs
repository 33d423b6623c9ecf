//! Equivalence of ribbon graphs under the combinatorial moves: cyclic
//! rotation of a vertex sequence, whole-vertex flips (reverse the sequence,
//! toggle the twist of every incident non-loop edge), renaming of the two
//! attachment segments of an edge, vertex relabeling, and, in the unlabeled
//! variant, edge relabeling. Decided by backtracking search; inputs are
//! desk-scale, so correctness beats asymptotics.

use std::collections::BTreeMap;

use crate::graph::RibbonGraph;
use crate::label::{EdgeLabel, Twist, VertexId};

struct Matcher<'a> {
    left: Compiled<'a>,
    right: Compiled<'a>,
    labeled: bool,
    vertex_map: Vec<Option<usize>>,
    used_right_vertex: Vec<bool>,
    flips: Vec<bool>,
    /// left edge -> right edge, built incrementally when unlabeled.
    label_map: Vec<Option<usize>>,
    used_right_label: Vec<bool>,
    /// Per left edge, how many of its half-edges have been placed, to know
    /// when its twist constraint is decidable.
    placed_halves: Vec<u8>,
}

struct Compiled<'a> {
    graph: &'a RibbonGraph,
    labels: Vec<&'a EdgeLabel>,
    /// rotation of each vertex as edge indices
    rotations: Vec<Vec<usize>>,
    /// per edge: (vertex index of end 0, vertex index of end 1)
    hosts: Vec<(usize, usize)>,
    twists: Vec<Twist>,
}

fn compile(graph: &RibbonGraph) -> Compiled<'_> {
    let labels: Vec<&EdgeLabel> = graph.labels().collect();
    let label_index: BTreeMap<&EdgeLabel, usize> =
        labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let vertex_index: BTreeMap<&VertexId, usize> = graph
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (v, i))
        .collect();
    let mut hosts = vec![(usize::MAX, usize::MAX); labels.len()];
    let mut rotations = Vec::with_capacity(graph.vertex_count());
    for (v, (vid, rotation)) in graph.vertices().iter().enumerate() {
        let _ = vid;
        let mut row = Vec::with_capacity(rotation.len());
        for h in rotation {
            let e = label_index[&h.label];
            row.push(e);
            match h.end.index() {
                0 => hosts[e].0 = v,
                _ => hosts[e].1 = v,
            }
        }
        let _ = vertex_index;
        rotations.push(row);
    }
    let twists = labels.iter().map(|l| graph.twist(l).unwrap()).collect();
    Compiled {
        graph,
        labels,
        rotations,
        hosts,
        twists,
    }
}

impl<'a> Matcher<'a> {
    fn run(&mut self) -> bool {
        self.match_vertex(0)
    }

    fn match_vertex(&mut self, lv: usize) -> bool {
        if lv == self.left.rotations.len() {
            return true;
        }
        let degree = self.left.rotations[lv].len();
        for rv in 0..self.right.rotations.len() {
            if self.used_right_vertex[rv] || self.right.rotations[rv].len() != degree {
                continue;
            }
            self.vertex_map[lv] = Some(rv);
            self.used_right_vertex[rv] = true;
            if degree == 0 {
                if self.match_vertex(lv + 1) {
                    return true;
                }
            } else {
                for flip in [false, true] {
                    self.flips[lv] = flip;
                    for offset in 0..degree {
                        if self.try_alignment(lv, rv, offset, flip)
                            && self.match_vertex(lv + 1)
                        {
                            return true;
                        }
                        self.undo_alignment(lv);
                    }
                }
            }
            self.vertex_map[lv] = None;
            self.used_right_vertex[rv] = false;
        }
        false
    }

    /// Attempts to bind the rotation of left vertex `lv` to right vertex
    /// `rv` read from `offset`, reversed when `flip`. On failure the
    /// partial bindings are rolled back by `undo_alignment`.
    fn try_alignment(&mut self, lv: usize, rv: usize, offset: usize, flip: bool) -> bool {
        let degree = self.left.rotations[lv].len();
        let mut bound: Vec<usize> = Vec::new();
        let mut ok = true;
        'outer: for i in 0..degree {
            let le = self.left.rotations[lv][i];
            let pos = if flip {
                (offset + degree - i) % degree
            } else {
                (offset + i) % degree
            };
            let re = self.right.rotations[rv][pos];
            match self.label_map[le] {
                Some(mapped) if mapped != re => {
                    ok = false;
                    break 'outer;
                }
                Some(_) => {}
                None => {
                    if self.used_right_label[re] {
                        ok = false;
                        break 'outer;
                    }
                    if self.labeled && self.left.labels[le] != self.right.labels[re] {
                        ok = false;
                        break 'outer;
                    }
                    self.label_map[le] = Some(re);
                    self.used_right_label[re] = true;
                    bound.push(le);
                }
            }
            self.placed_halves[le] += 1;
        }
        if ok {
            // Twist constraints become checkable once both halves of an
            // edge are placed; loops settle within a single vertex.
            for e in 0..self.left.twists.len() {
                if self.placed_halves[e] != 2 {
                    continue;
                }
                let (u0, u1) = self.left.hosts[e];
                if self.vertex_map[u0].is_none() || self.vertex_map[u1].is_none() {
                    continue;
                }
                let re = self.label_map[e].expect("both halves placed");
                let want = if u0 == u1 {
                    self.left.twists[e]
                } else {
                    let toggles = self.flips[u0] ^ self.flips[u1];
                    if toggles {
                        self.left.twists[e].toggled()
                    } else {
                        self.left.twists[e]
                    }
                };
                if self.right.twists[re] != want {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            // Ends must land on distinct halves of the right edge: a loop
            // whose two halves both aligned onto the same right half is
            // impossible by construction (positions are a bijection), but a
            // left edge could have claimed a right edge whose halves live
            // on different vertices than the left hosts.
            for e in 0..self.left.twists.len() {
                if self.placed_halves[e] == 0 {
                    continue;
                }
                let re = match self.label_map[e] {
                    Some(re) => re,
                    None => continue,
                };
                let (l0, l1) = self.left.hosts[e];
                let (r0, r1) = self.right.hosts[re];
                let mapped = |v: usize| self.vertex_map[v];
                let pair_ok = match (mapped(l0), mapped(l1)) {
                    (Some(m0), Some(m1)) => {
                        (m0 == r0 && m1 == r1) || (m0 == r1 && m1 == r0)
                    }
                    (Some(m0), None) => m0 == r0 || m0 == r1,
                    (None, Some(m1)) => m1 == r0 || m1 == r1,
                    (None, None) => true,
                };
                if !pair_ok {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            for le in bound {
                let re = self.label_map[le].take().expect("was bound");
                self.used_right_label[re] = false;
            }
            // placed_halves counts every successful iteration before the
            // break; rebuild it from scratch for this vertex.
            self.rollback_placements(lv);
            return false;
        }
        true
    }

    fn rollback_placements(&mut self, lv: usize) {
        for e in self.placed_halves.iter_mut() {
            *e = 0;
        }
        for (v, assignment) in self.vertex_map.iter().enumerate() {
            if assignment.is_none() || v == lv {
                continue;
            }
            for &e in &self.left.rotations[v] {
                self.placed_halves[e] += 1;
            }
        }
    }

    fn undo_alignment(&mut self, lv: usize) {
        // Drop label bindings introduced solely by this vertex: an edge
        // binding stays if its other half lives on an already-matched
        // vertex.
        let lv_edges: Vec<usize> = self.left.rotations[lv].clone();
        self.rollback_placements(lv);
        for e in lv_edges {
            if self.placed_halves[e] == 0 {
                if let Some(re) = self.label_map[e].take() {
                    self.used_right_label[re] = false;
                }
            }
        }
    }
}

/// Decides whether two ribbon graphs are the same surface-with-structure.
/// With `labeled` the edge labels must correspond identically; without it
/// any relabeling is allowed.
pub fn equivalent(g1: &RibbonGraph, g2: &RibbonGraph, labeled: bool) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut d1: Vec<usize> = g1.vertices().iter().map(|(_, r)| r.len()).collect();
    let mut d2: Vec<usize> = g2.vertices().iter().map(|(_, r)| r.len()).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return false;
    }
    if labeled {
        if g1.label_set() != g2.label_set() {
            return false;
        }
        for label in g1.labels() {
            if g1.is_loop(label) != g2.is_loop(label) {
                return false;
            }
        }
    }
    let left = compile(g1);
    let right = compile(g2);
    let e = left.twists.len();
    let v = left.rotations.len();
    let mut matcher = Matcher {
        left,
        right,
        labeled,
        vertex_map: vec![None; v],
        used_right_vertex: vec![false; v],
        flips: vec![false; v],
        label_map: vec![None; e],
        used_right_label: vec![false; e],
        placed_halves: vec![0; e],
    };
    matcher.run()
}
