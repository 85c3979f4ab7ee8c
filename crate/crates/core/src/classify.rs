//! Structure of the primitive disk complex of `L(p, q)`: connectivity,
//! dimension, edge and simplex types, and orbit counts under the Goeritz
//! group.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::PqParams;

/// Item labels of the structure theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// `L(2,1)`: a tree, every edge of type 2.
    T1a,
    /// `L(p,1)`, `p ≥ 4`: a tree, every edge of type 1.
    T1b,
    /// `q ≥ 2`, neither `q = 2` nor `p = 2q+1`: a tree with edges of type 0 and 1.
    T1c,
    /// `L(3,1)`: 2-dimensional, every edge of type 1, type-3 simplices.
    T2a,
    /// `L(5,2)`: 2-dimensional, every type-0 edge in exactly two 2-simplices.
    T2b,
    /// `q = 2, p ≥ 7` or `p = 2q+1, q ≥ 3`.
    T2c,
    /// `p ≢ ±1 (mod q)`: infinitely many tree components.
    Disconnected,
}

impl CaseTag {
    /// The clause of the structure theorem this case is stated in.
    pub fn clause(self) -> &'static str {
        match self {
            CaseTag::T1a => "structure theorem (1)(a)",
            CaseTag::T1b => "structure theorem (1)(b)",
            CaseTag::T1c => "structure theorem (1)(c)",
            CaseTag::T2a => "structure theorem (2)(a)",
            CaseTag::T2b => "structure theorem (2)(b)",
            CaseTag::T2c => "structure theorem (2)(c)",
            CaseTag::Disconnected => "structure theorem, non-connected case",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CaseTag::T1a | CaseTag::T1b | CaseTag::T1c => {
                "a tree, and every vertex has infinite valency"
            }
            CaseTag::T2a | CaseTag::T2b | CaseTag::T2c => {
                "2-dimensional and contractible; every vertex has infinite valency"
            }
            CaseTag::Disconnected => "infinitely many tree components",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CommonDualRule {
    /// Every primitive pair has a common dual disk iff `q = 1`.
    pub q_is_one: bool,
    /// Number of disjoint common dual disks of such a pair.
    pub dual_count: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientGraph {
    SingleEdge,
    Path3,
    Path4,
    NotApplicable,
}

impl QuotientGraph {
    pub fn vertex_count(self) -> usize {
        match self {
            QuotientGraph::SingleEdge => 2,
            QuotientGraph::Path3 => 3,
            QuotientGraph::Path4 => 4,
            QuotientGraph::NotApplicable => 0,
        }
    }

    pub fn edge_count(self) -> usize {
        self.vertex_count().saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeOrbit {
    /// Representative edge, e.g. `{E, D}`.
    pub representative: &'static str,
    /// Some Goeritz element swaps the two endpoints.
    pub exchangeable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeOrbits {
    pub count: usize,
    pub orbits: Vec<EdgeOrbit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexStructureReport {
    pub params: PqParams,
    pub connected: bool,
    pub dimension: u8,
    pub case_tag: CaseTag,
    pub clause: &'static str,
    pub description: &'static str,
    pub edge_types_present: BTreeSet<u8>,
    pub simplex_types_present: BTreeSet<u8>,
    pub triple_exists: bool,
    pub common_dual_rule: CommonDualRule,
    pub vertex_orbits: Option<u8>,
    pub edge_orbits: Option<usize>,
    pub exchangeable_edges: Vec<bool>,
    pub quotient_graph: QuotientGraph,
    /// Caveats the theorem leaves unresolved per edge.
    pub notes: Vec<&'static str>,
}

pub fn case_tag(params: &PqParams) -> CaseTag {
    let PqParams { p, q, .. } = *params;
    if !params.connected {
        CaseTag::Disconnected
    } else if p == 3 {
        CaseTag::T2a
    } else if q == 1 && p == 2 {
        CaseTag::T1a
    } else if q == 1 {
        CaseTag::T1b
    } else if p == 5 {
        CaseTag::T2b
    } else if q == 2 || p == 2 * q + 1 {
        CaseTag::T2c
    } else {
        CaseTag::T1c
    }
}

pub fn classify(params: PqParams) -> ComplexStructureReport {
    let tag = case_tag(&params);
    let edge_types_present: BTreeSet<u8> = match tag {
        CaseTag::T1a => [2].into(),
        CaseTag::T1b | CaseTag::T2a => [1].into(),
        _ => [0, 1].into(),
    };
    let simplex_types_present: BTreeSet<u8> = match tag {
        CaseTag::T2a => [3].into(),
        CaseTag::T2b | CaseTag::T2c => [1].into(),
        _ => BTreeSet::new(),
    };
    let dimension = match tag {
        CaseTag::T2a | CaseTag::T2b | CaseTag::T2c => 2,
        _ => 1,
    };
    let triple_exists = params.connected && (params.q == 2 || params.p == 2 * params.q + 1);
    let mut notes = Vec::new();
    if tag == CaseTag::T2c {
        notes.push(
            "each type-1 edge lies in a unique 2-simplex or in no 2-simplex; \
             which one is not determined per edge",
        );
    }
    let edge = edge_orbits(params).ok();
    ComplexStructureReport {
        params,
        connected: params.connected,
        dimension,
        case_tag: tag,
        clause: tag.clause(),
        description: tag.description(),
        edge_types_present,
        simplex_types_present,
        triple_exists,
        common_dual_rule: CommonDualRule {
            q_is_one: params.q == 1,
            dual_count: if params.p == 2 { 2 } else { 1 },
        },
        vertex_orbits: vertex_orbits(params).ok(),
        edge_orbits: edge.as_ref().map(|e| e.count),
        exchangeable_edges: edge
            .map(|e| e.orbits.iter().map(|o| o.exchangeable).collect())
            .unwrap_or_default(),
        quotient_graph: quotient_graph(params).unwrap_or(QuotientGraph::NotApplicable),
        notes,
    }
}

fn require_connected(params: &PqParams) -> Result<()> {
    if params.connected {
        Ok(())
    } else {
        Err(Error::NotCovered {
            p: params.p,
            q: params.q,
            r: params.r,
        })
    }
}

/// Goeritz orbits on primitive disks: one iff `q² ≡ 1 (mod p)`, otherwise
/// two, represented by `E` and `D = E_{q′}`.
pub fn vertex_orbits(params: PqParams) -> Result<u8> {
    require_connected(&params)?;
    Ok(if params.q_squared_is_unit() { 1 } else { 2 })
}

pub fn edge_orbits(params: PqParams) -> Result<EdgeOrbits> {
    require_connected(&params)?;
    let orbit = |representative, exchangeable| EdgeOrbit {
        representative,
        exchangeable,
    };
    let orbits = if params.q == 1 {
        vec![orbit("{E, D}", true)]
    } else if params.q_squared_is_unit() {
        vec![orbit("{E, D}", true), orbit("{E, E1}", true)]
    } else {
        vec![
            orbit("{E, D}", false),
            orbit("{E, E1}", true),
            orbit("{D, D1}", true),
        ]
    };
    Ok(EdgeOrbits {
        count: orbits.len(),
        orbits,
    })
}

/// Shape of the quotient of the tree the Goeritz group acts on.
pub fn quotient_graph(params: PqParams) -> Result<QuotientGraph> {
    require_connected(&params)?;
    Ok(match case_tag(&params) {
        CaseTag::T1a | CaseTag::T1b | CaseTag::T2a | CaseTag::T2b => QuotientGraph::SingleEdge,
        CaseTag::T2c => QuotientGraph::Path3,
        CaseTag::T1c if params.q_squared_is_unit() => QuotientGraph::Path3,
        CaseTag::T1c => QuotientGraph::Path4,
        CaseTag::Disconnected => unreachable!("checked above"),
    })
}
