//! Named example ribbon graphs used throughout the tests and the
//! command-line selftest. The same objects ship as `.srs` files in the
//! repository `fixtures/` directory.

use std::collections::BTreeMap;

use crate::graph::RibbonGraph;
use crate::label::{EdgeLabel, End, HalfEdge, Twist, VertexId};

pub fn lbl(s: &str) -> EdgeLabel {
    EdgeLabel::new(s).expect("fixture label")
}

pub fn vid(s: &str) -> VertexId {
    VertexId::new(s).expect("fixture vertex id")
}

fn h(label: &str, end: End) -> HalfEdge {
    HalfEdge::new(lbl(label), end)
}

fn build(vertices: Vec<(&str, Vec<HalfEdge>)>, twists: Vec<(&str, Twist)>) -> RibbonGraph {
    RibbonGraph::new(
        vertices
            .into_iter()
            .map(|(v, r)| (vid(v), r))
            .collect(),
        twists
            .into_iter()
            .map(|(l, t)| (lbl(l), t))
            .collect::<BTreeMap<_, _>>(),
    )
    .expect("fixtures are valid")
}

/// A single isolated vertex disc.
pub fn v0() -> RibbonGraph {
    build(vec![("v1", vec![])], vec![])
}

/// One untwisted loop: an annulus, two boundary components.
pub fn loop_u() -> RibbonGraph {
    build(
        vec![("v1", vec![h("e", End::Zero), h("e", End::One)])],
        vec![("e", Twist::Untwisted)],
    )
}

/// One twisted loop: a Moebius band, one boundary component.
pub fn loop_t() -> RibbonGraph {
    build(
        vec![("v1", vec![h("e", End::Zero), h("e", End::One)])],
        vec![("e", Twist::Twisted)],
    )
}

/// Two interleaved loops on one vertex: the torus bouquet, genus 1.
pub fn b2_int() -> RibbonGraph {
    build(
        vec![(
            "v1",
            vec![
                h("e", End::Zero),
                h("f", End::Zero),
                h("e", End::One),
                h("f", End::One),
            ],
        )],
        vec![("e", Twist::Untwisted), ("f", Twist::Untwisted)],
    )
}

/// The plane theta graph: two vertices, three parallel edges, three faces.
pub fn theta() -> RibbonGraph {
    build(
        vec![
            (
                "u",
                vec![h("a", End::Zero), h("b", End::Zero), h("c", End::Zero)],
            ),
            (
                "w",
                vec![h("c", End::One), h("b", End::One), h("a", End::One)],
            ),
        ],
        vec![
            ("a", Twist::Untwisted),
            ("b", Twist::Untwisted),
            ("c", Twist::Untwisted),
        ],
    )
}

/// Two vertices joined by two parallel untwisted edges: an annulus.
pub fn dipole2_r() -> RibbonGraph {
    build(
        vec![
            ("u", vec![h("e", End::Zero), h("f", End::Zero)]),
            ("w", vec![h("f", End::One), h("e", End::One)]),
        ],
        vec![("e", Twist::Untwisted), ("f", Twist::Untwisted)],
    )
}

/// Every named fixture with its name, in a fixed order.
pub fn all() -> Vec<(&'static str, RibbonGraph)> {
    vec![
        ("V0", v0()),
        ("LOOP_U", loop_u()),
        ("LOOP_T", loop_t()),
        ("B2_INT", b2_int()),
        ("THETA", theta()),
        ("DIPOLE2_R", dipole2_r()),
    ]
}
