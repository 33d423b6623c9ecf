//! Flag-level boundary tracing.
//!
//! A vertex disc with `d` attachments has `2d` boundary points: the start
//! and end of every attachment segment, read in rotation order. Boundary
//! arcs connect these points: corner arcs run along the vertex disc between
//! consecutive attachments, free-side arcs run along glued edge bands, and
//! token arcs stand where a deleted edge (or a marking arrow) occupies the
//! vertex boundary. Every point meets exactly one corner arc and exactly
//! one slot arc, so the arcs decompose into disjoint closed walks: the
//! boundary components of the surface.
//!
//! Side-arc directions encode the fixed edge-orientation convention. With
//! slot `a` holding end 0 and slot `b` holding end 1:
//!
//! - untwisted: side 0 runs `t(a) -> s(b)`, side 1 runs `t(b) -> s(a)`;
//! - twisted:   side 0 runs `t(a) -> t(b)`, side 1 runs `s(b) -> s(a)`.

use crate::label::Twist;

/// One attachment position on a vertex boundary.
#[derive(Clone, Debug)]
pub(crate) enum Slot<T> {
    /// Attachment segment of a glued edge band.
    Band { edge: usize, end: usize },
    /// Free boundary arc carrying caller data (a deleted-edge arrow or a
    /// marking arrow).
    Token(T),
}

#[derive(Clone, Debug)]
pub(crate) struct Board<T> {
    /// Cyclic slot sequences, one per vertex, in the caller's vertex order.
    pub vertices: Vec<Vec<Slot<T>>>,
    /// Twist bit per edge index.
    pub edge_twists: Vec<Twist>,
}

/// A traversal step of one boundary walk. `reversed` is relative to the
/// arc's intrinsic direction (corner arcs and token arcs run with the
/// vertex rotation; side arcs run with the stored arrow direction).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Visit {
    Corner {
        vertex: usize,
        corner: usize,
        reversed: bool,
    },
    Token {
        vertex: usize,
        slot: usize,
        reversed: bool,
    },
    Side {
        edge: usize,
        side: usize,
        reversed: bool,
    },
}

#[derive(Clone, Debug)]
pub(crate) enum Walk {
    Arcs(Vec<Visit>),
    /// Boundary circle of a vertex with no slots at all.
    Circle { vertex: usize },
}

#[derive(Clone, Copy)]
struct ArcEnd {
    other: usize,
    visit_forward: Visit,
}

/// Traces every boundary walk of the board. Walks that contain arcs come
/// first, ordered by their smallest flag point; isolated-vertex circles
/// follow in vertex order.
pub(crate) fn trace<T>(board: &Board<T>) -> Vec<Walk> {
    // Global slot indexing; slot g owns points 2g (segment start) and
    // 2g + 1 (segment end), in rotation direction.
    let mut slot_base = Vec::with_capacity(board.vertices.len());
    let mut total_slots = 0usize;
    for slots in &board.vertices {
        slot_base.push(total_slots);
        total_slots += slots.len();
    }
    let s = |g: usize| 2 * g;
    let t = |g: usize| 2 * g + 1;
    let n_points = 2 * total_slots;

    let mut corner_at: Vec<Option<ArcEnd>> = vec![None; n_points];
    let mut slot_at: Vec<Option<ArcEnd>> = vec![None; n_points];
    let mut put = |table: &mut Vec<Option<ArcEnd>>, from: usize, to: usize, visit: Visit| {
        debug_assert!(table[from].is_none() && from != to);
        table[from] = Some(ArcEnd {
            other: to,
            visit_forward: visit,
        });
        let mut rev = visit;
        match &mut rev {
            Visit::Corner { reversed, .. }
            | Visit::Token { reversed, .. }
            | Visit::Side { reversed, .. } => *reversed = true,
        }
        debug_assert!(table[to].is_none());
        table[to] = Some(ArcEnd {
            other: from,
            visit_forward: rev,
        });
    };

    let mut edge_slots: Vec<[Option<usize>; 2]> = vec![[None, None]; board.edge_twists.len()];
    for (v, slots) in board.vertices.iter().enumerate() {
        let d = slots.len();
        for (i, slot) in slots.iter().enumerate() {
            let g = slot_base[v] + i;
            match slot {
                Slot::Band { edge, end } => {
                    debug_assert!(edge_slots[*edge][*end].is_none());
                    edge_slots[*edge][*end] = Some(g);
                }
                Slot::Token(_) => {
                    put(
                        &mut slot_at,
                        s(g),
                        t(g),
                        Visit::Token {
                            vertex: v,
                            slot: i,
                            reversed: false,
                        },
                    );
                }
            }
        }
        for i in 0..d {
            let g_here = slot_base[v] + i;
            let g_next = slot_base[v] + (i + 1) % d;
            put(
                &mut corner_at,
                t(g_here),
                s(g_next),
                Visit::Corner {
                    vertex: v,
                    corner: i,
                    reversed: false,
                },
            );
        }
    }
    for (e, ends) in edge_slots.iter().enumerate() {
        let a = ends[0].expect("edge end 0 placed in some rotation");
        let b = ends[1].expect("edge end 1 placed in some rotation");
        let side = |idx: usize| Visit::Side {
            edge: e,
            side: idx,
            reversed: false,
        };
        match board.edge_twists[e] {
            Twist::Untwisted => {
                put(&mut slot_at, t(a), s(b), side(0));
                put(&mut slot_at, t(b), s(a), side(1));
            }
            Twist::Twisted => {
                put(&mut slot_at, t(a), t(b), side(0));
                put(&mut slot_at, s(b), s(a), side(1));
            }
        }
    }

    let mut walks = Vec::new();
    let mut visited = vec![false; n_points];
    for start in 0..n_points {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut visits = Vec::new();
        let first = corner_at[start].expect("every point meets a corner arc");
        visits.push(first.visit_forward);
        let mut cur = first.other;
        loop {
            visited[cur] = true;
            let hop = slot_at[cur].expect("every point meets a slot arc");
            visits.push(hop.visit_forward);
            if hop.other == start {
                break;
            }
            cur = hop.other;
            visited[cur] = true;
            let hop = corner_at[cur].expect("every point meets a corner arc");
            visits.push(hop.visit_forward);
            cur = hop.other;
            debug_assert_ne!(cur, start, "walks re-enter their start via a slot arc");
        }
        walks.push(Walk::Arcs(visits));
    }
    for (v, slots) in board.vertices.iter().enumerate() {
        if slots.is_empty() {
            walks.push(Walk::Circle { vertex: v });
        }
    }
    walks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn band(edge: usize, end: usize) -> Slot<()> {
        Slot::Band { edge, end }
    }

    fn walk_count(board: &Board<()>) -> usize {
        trace(board).len()
    }

    #[test]
    fn untwisted_loop_has_two_walks() {
        let board = Board {
            vertices: vec![vec![band(0, 0), band(0, 1)]],
            edge_twists: vec![Twist::Untwisted],
        };
        assert_eq!(walk_count(&board), 2);
    }

    #[test]
    fn twisted_loop_has_one_walk() {
        let board = Board {
            vertices: vec![vec![band(0, 0), band(0, 1)]],
            edge_twists: vec![Twist::Twisted],
        };
        assert_eq!(walk_count(&board), 1);
    }

    #[test]
    fn isolated_vertex_is_a_circle() {
        let board: Board<()> = Board {
            vertices: vec![vec![]],
            edge_twists: vec![],
        };
        let walks = trace(&board);
        assert_eq!(walks.len(), 1);
        assert!(matches!(walks[0], Walk::Circle { vertex: 0 }));
    }

    #[test]
    fn interleaved_bouquet_has_one_walk() {
        // The genus-one bouquet: rotation e0 f0 e1 f1.
        let board = Board {
            vertices: vec![vec![band(0, 0), band(1, 0), band(0, 1), band(1, 1)]],
            edge_twists: vec![Twist::Untwisted; 2],
        };
        assert_eq!(walk_count(&board), 1);
    }

    #[test]
    fn theta_has_three_walks() {
        let board = Board {
            vertices: vec![
                vec![band(0, 0), band(1, 0), band(2, 0)],
                vec![band(2, 1), band(1, 1), band(0, 1)],
            ],
            edge_twists: vec![Twist::Untwisted; 3],
        };
        assert_eq!(walk_count(&board), 3);
    }

    #[test]
    fn every_arc_is_traversed_once() {
        let board = Board {
            vertices: vec![
                vec![band(0, 0), band(1, 0), band(2, 0)],
                vec![band(2, 1), band(1, 1), band(0, 1)],
            ],
            edge_twists: vec![Twist::Untwisted, Twist::Twisted, Twist::Untwisted],
        };
        let mut corners = 0;
        let mut sides = 0;
        for walk in trace(&board) {
            if let Walk::Arcs(visits) = walk {
                for v in visits {
                    match v {
                        Visit::Corner { .. } => corners += 1,
                        Visit::Side { .. } => sides += 1,
                        Visit::Token { .. } => panic!("no tokens on this board"),
                    }
                }
            }
        }
        assert_eq!(corners, 6);
        assert_eq!(sides, 6);
    }
}
