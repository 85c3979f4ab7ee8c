//! Shells: the fan `E_0, …, E_p` of disks around a primitive disk `E`,
//! modeled by boundary words and indices.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{sequence_word, PqParams};
use crate::word::{Gen, Letter, Word};

/// Which of the four slopes `{q, p−q, q′, p−q′}` a shell is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShellKind {
    Q,
    PMinusQ,
    QPrime,
    PMinusQPrime,
}

impl ShellKind {
    pub const ALL: [ShellKind; 4] = [
        ShellKind::Q,
        ShellKind::PMinusQ,
        ShellKind::QPrime,
        ShellKind::PMinusQPrime,
    ];

    pub fn slope(self, params: &PqParams) -> u64 {
        match self {
            ShellKind::Q => params.q,
            ShellKind::PMinusQ => params.p - params.q,
            ShellKind::QPrime => params.q_prime,
            ShellKind::PMinusQPrime => params.p - params.q_prime,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ShellKind::Q => "q",
            ShellKind::PMinusQ => "p-q",
            ShellKind::QPrime => "q'",
            ShellKind::PMinusQPrime => "p-q'",
        }
    }

    fn uses_q_prime(self) -> bool {
        matches!(self, ShellKind::QPrime | ShellKind::PMinusQPrime)
    }
}

impl FromStr for ShellKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "q" => Ok(ShellKind::Q),
            "pq" => Ok(ShellKind::PMinusQ),
            "q2" => Ok(ShellKind::QPrime),
            "pq2" => Ok(ShellKind::PMinusQPrime),
            _ => Err(format!("unknown shell kind {s:?} (expected q, pq, q2 or pq2)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiskClass {
    Primitive,
    Semiprimitive,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShellEntry {
    pub index: u64,
    pub boundary_word: Word,
    pub disk_class: DiskClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct Shell {
    pub params: PqParams,
    pub kind: ShellKind,
    /// The actual slope `q̄` of the `(p, q̄)`-shell.
    pub slope: u64,
    pub entries: Vec<ShellEntry>,
}

/// Primitive indices of a shell of the given kind.
pub fn shell_primitive_indices(params: &PqParams, kind: ShellKind) -> BTreeSet<u64> {
    let p = params.p;
    let k = if kind.uses_q_prime() {
        params.q
    } else {
        params.q_prime
    };
    [1, k, p - k, p - 1].into_iter().collect()
}

pub fn build_shell(params: PqParams, kind: ShellKind) -> Shell {
    let slope = kind.slope(&params);
    let primitive = shell_primitive_indices(&params, kind);
    let xy = Word::reduce([Letter::pos(Gen::X), Letter::pos(Gen::Y)]);
    let entries = (0..=params.p)
        .map(|j| {
            let disk_class = if j == 0 || j == params.p {
                DiskClass::Semiprimitive
            } else if primitive.contains(&j) {
                DiskClass::Primitive
            } else {
                DiskClass::Neither
            };
            ShellEntry {
                index: j,
                boundary_word: sequence_word(params.p, slope, j).substitute(Gen::Z, &xy),
                disk_class,
            }
        })
        .collect();
    Shell {
        params,
        kind,
        slope,
        entries,
    }
}

/// `|E_i ∩ E_j| = j − i − 1`.
pub fn intersection_number(shell: &Shell, i: u64, j: u64) -> Result<u64> {
    let p = shell.params.p;
    if i >= j || j > p {
        return Err(Error::IndexOrder {
            i: i as usize,
            j: j as usize,
            p,
        });
    }
    Ok(j - i - 1)
}

impl Shell {
    /// Edge types of the edges `{E, E_j}` for primitive `E_j`: type 1 when
    /// `E_j` is next to a semiprimitive endpoint, type 0 otherwise, type 2
    /// when `p = 2`.
    pub fn edge_type_candidates(&self) -> BTreeSet<u8> {
        let p = self.params.p;
        self.entries
            .iter()
            .filter(|e| e.disk_class == DiskClass::Primitive)
            .map(|e| {
                if p == 2 {
                    2
                } else if e.index == 1 || e.index == p - 1 {
                    1
                } else {
                    0
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// The pair `(E, E_1)`, which has a common dual disk.
    CommonDual,
    /// The pair `(E, E_{q′})`, which has none.
    NoCommonDual,
}

/// How the shell `S_D` centered at the other endpoint `D` of an edge sits
/// relative to `S_E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualShellRelation {
    pub dual_kind: ShellKind,
    pub dual_slope: u64,
    /// Indices `k` with `E = D_k`.
    pub center_in_dual: Vec<u64>,
    /// Indices `k` with `D = E_k`.
    pub dual_in_center: Vec<u64>,
}

pub fn dual_shell_relation(params: PqParams, edge: EdgeKind) -> Result<DualShellRelation> {
    let p = params.p;
    match edge {
        EdgeKind::CommonDual => Ok(DualShellRelation {
            dual_kind: ShellKind::Q,
            dual_slope: params.q,
            center_in_dual: dedup(vec![1, p - 1]),
            dual_in_center: dedup(vec![1, p - 1]),
        }),
        EdgeKind::NoCommonDual => {
            if params.q == 1 {
                return Err(Error::AlwaysCommonDual { p });
            }
            Ok(DualShellRelation {
                dual_kind: ShellKind::QPrime,
                dual_slope: params.q_prime,
                center_in_dual: dedup(vec![params.q, p - params.q]),
                dual_in_center: dedup(vec![params.q_prime, p - params.q_prime]),
            })
        }
    }
}

fn dedup(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}
