use std::fmt;

use crate::error::ValidationError;

fn valid_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Edge label: a nonempty token over `[A-Za-z0-9_]`, unique within one graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabel(String);

impl EdgeLabel {
    pub fn new(name: &str) -> Result<Self, ValidationError> {
        if valid_token(name) {
            Ok(EdgeLabel(name.to_string()))
        } else {
            Err(ValidationError::BadToken(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Vertex identifier, same token syntax as edge labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(name: &str) -> Result<Self, ValidationError> {
        if valid_token(name) {
            Ok(VertexId(name.to_string()))
        } else {
            Err(ValidationError::BadToken(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Which of an edge's two attachment segments a half-edge is.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum End {
    Zero,
    One,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Zero => End::One,
            End::One => End::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            End::Zero => 0,
            End::One => 1,
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            End::Zero => "0",
            End::One => "1",
        })
    }
}

/// One of the two attachment segments of an edge, as it sits in a vertex rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfEdge {
    pub label: EdgeLabel,
    pub end: End,
}

impl HalfEdge {
    pub fn new(label: EdgeLabel, end: End) -> Self {
        HalfEdge { label, end }
    }
}

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.label, self.end)
    }
}

/// Twist bit of an edge band.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Twist {
    Untwisted,
    Twisted,
}

impl Twist {
    pub fn toggled(self) -> Twist {
        match self {
            Twist::Untwisted => Twist::Twisted,
            Twist::Twisted => Twist::Untwisted,
        }
    }

    pub fn is_twisted(self) -> bool {
        matches!(self, Twist::Twisted)
    }

    pub fn from_bit(bit: bool) -> Twist {
        if bit {
            Twist::Twisted
        } else {
            Twist::Untwisted
        }
    }
}

/// Direction of a marking arrow relative to the cycle that carries it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Dir {
    With,
    Against,
}

impl Dir {
    pub fn reversed(self) -> Dir {
        match self {
            Dir::With => Dir::Against,
            Dir::Against => Dir::With,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::With => "+",
            Dir::Against => "-",
        })
    }
}
