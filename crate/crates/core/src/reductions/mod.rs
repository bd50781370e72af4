//! The two hardness constructions, with witness maps in both directions.
//!
//! * [`nae_to_mac2`] turns a not-all-equal 3-SAT formula into a graph that
//!   has a majority additive 2-coloring iff the formula is NAE-satisfiable.
//! * [`subdivide3`] subdivides every edge three times; for minimum degree at
//!   least four the result has a majority additive k-coloring iff the
//!   original graph is properly k-colorable (`k >= 3`).

use std::collections::HashMap;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

mod nae;
mod subdivide;

pub use nae::{
    assignment_to_coloring, coloring_to_assignment, lift_assignment, nae_brute, nae_to_mac2, Literal,
    NaeFormula, NAE_BRUTE_MAX_VARS,
};
pub use subdivide::{
    is_majority_edge_coloring, is_proper_coloring, kcoloring_to_mac, lift_coloring,
    majority_3_edge_coloring, restrict_to_original, subdivide3, EdgeColoring,
};

/// What a vertex of a gadget graph stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    /// `v_ℓ`, the literal vertex.
    LiteralVertex { literal: Literal },
    /// `a_ℓ`, on the variable path next to `v_ℓ`.
    PathA { literal: Literal },
    /// `b_x`, the middle of the variable path.
    PathB { var: usize },
    /// `α_i^ℓ` (pendant), `i` counted from 1.
    Alpha { literal: Literal, i: usize },
    /// `β_i^ℓ`, between `α_i^ℓ` and `v_ℓ`.
    Beta { literal: Literal, i: usize },
    /// `v_C`.
    ClauseVertex { clause: usize },
    /// `β_C`.
    ClauseBeta { clause: usize },
    /// `α_C` (pendant).
    ClauseAlpha { clause: usize },
    /// `v_ℓ^C`, joining `v_ℓ` and `v_C`.
    Occurrence { literal: Literal, clause: usize },
    /// A vertex of the subdivided graph.
    Original { vertex: usize },
    /// `x_end^e` for edge `e = {u, v}`, adjacent to `end`.
    SubdivisionX { edge: (usize, usize), end: usize },
    /// `y^e`, the middle of the subdivided edge.
    SubdivisionY { edge: (usize, usize) },
}

/// Role of every vertex of a gadget graph, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvenanceMap {
    roles: Vec<Role>,
    index: HashMap<Role, usize>,
}

impl ProvenanceMap {
    pub(crate) fn new() -> Self {
        ProvenanceMap {
            roles: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub(crate) fn push(&mut self, role: Role) -> usize {
        let v = self.roles.len();
        let previous = self.index.insert(role, v);
        assert!(previous.is_none(), "role {role:?} assigned twice");
        self.roles.push(role);
        v
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn vertex(&self, role: &Role) -> Option<usize> {
        self.index.get(role).copied()
    }
}

#[derive(Serialize)]
struct Entry<'a> {
    vertex: usize,
    #[serde(flatten)]
    role: &'a Role,
}

/// Serializes as a list of `{"vertex": i, "role": ..., <fields>}` objects.
impl Serialize for ProvenanceMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.roles.len()))?;
        for (vertex, role) in self.roles.iter().enumerate() {
            seq.serialize_element(&Entry { vertex, role })?;
        }
        seq.end()
    }
}
