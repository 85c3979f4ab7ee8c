//! Lens-space parameters and the `(p, q)`-sequence `w_0, …, w_p`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{cyclic_reduce, cyclically_equal, Gen, Letter, Word};

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Validated parameters of a lens space `L(p, q)`, with `q` normalized to
/// `1 ≤ q ≤ p/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PqParams {
    pub p: u64,
    pub q: u64,
    /// The unique `1 ≤ q′ ≤ p/2` with `q·q′ ≡ ±1 (mod p)`.
    pub q_prime: u64,
    /// `p mod q`.
    pub r: u64,
    /// `(p − r) / q`.
    pub m: u64,
    /// `p ≡ ±1 (mod q)`.
    pub connected: bool,
}

pub fn make_params(p: i64, q: i64) -> Result<PqParams> {
    let invalid = |constraint| Error::InvalidParams { p, q, constraint };
    if p < 2 {
        return Err(invalid("p ≥ 2"));
    }
    if q <= 0 || q >= p {
        return Err(invalid("0 < q < p"));
    }
    let (pu, qu) = (p as u64, q as u64);
    if gcd(pu, qu) != 1 {
        return Err(invalid("gcd(p, q) = 1"));
    }
    let q = qu.min(pu - qu);
    let p = pu;
    let q_prime = (1..=p / 2)
        .find(|k| {
            let prod = (q * k) % p;
            prod == 1 || prod == p - 1
        })
        .expect("q is a unit mod p");
    let r = p % q;
    let m = (p - r) / q;
    let connected = q == 1 || r == 1 || r == q - 1;
    Ok(PqParams {
        p,
        q,
        q_prime,
        r,
        m,
        connected,
    })
}

impl PqParams {
    /// The homeomorphism class `{q, q′, p−q, p−q′}` of representatives.
    pub fn homeomorphism_class(&self) -> BTreeSet<u64> {
        [self.q, self.q_prime, self.p - self.q, self.p - self.q_prime]
            .into_iter()
            .collect()
    }

    pub fn q_squared_is_unit(&self) -> bool {
        (self.q * self.q) % self.p == 1 % self.p
    }
}

/// All coprime `(p, q)` with `2 ≤ p ≤ max_p` and `1 ≤ q ≤ p/2`.
pub fn parameter_grid(max_p: u64) -> Vec<PqParams> {
    let mut out = Vec::new();
    for p in 2..=max_p {
        for q in 1..=p / 2 {
            if gcd(p, q) == 1 {
                out.push(make_params(p as i64, q as i64).expect("coprime grid point"));
            }
        }
    }
    out
}

/// `w_j` for slope `slope`: position `i ∈ 1..=p` carries `z` iff
/// `i ≡ 1 + k·slope (mod p)` for some `0 ≤ k < j`.
pub fn sequence_word(p: u64, slope: u64, j: u64) -> Word {
    let mut marked = vec![false; p as usize];
    for k in 0..j {
        // position i stored at index i-1
        marked[((k * slope) % p) as usize] = true;
    }
    Word::reduce(marked.into_iter().map(|z| {
        if z {
            Letter::pos(Gen::Z)
        } else {
            Letter::pos(Gen::Y)
        }
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct PqSequence {
    pub params: PqParams,
    pub words: Vec<Word>,
    pub primitive_indices: BTreeSet<u64>,
}

pub fn pq_sequence(params: PqParams) -> PqSequence {
    let words = (0..=params.p)
        .map(|j| sequence_word(params.p, params.q, j))
        .collect();
    PqSequence {
        params,
        words,
        primitive_indices: primitive_indices(params),
    }
}

/// `{1, q′, p−q′, p−1}`.
pub fn primitive_indices(params: PqParams) -> BTreeSet<u64> {
    let PqParams { p, q_prime, .. } = params;
    [1, q_prime, p - q_prime, p - 1].into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceClass {
    Primitive,
    SemiprimitiveEndpoint,
    Other,
}

impl PqSequence {
    pub fn class_of(&self, j: u64) -> SequenceClass {
        if j == 0 || j == self.params.p {
            SequenceClass::SemiprimitiveEndpoint
        } else if self.primitive_indices.contains(&j) {
            SequenceClass::Primitive
        } else {
            SequenceClass::Other
        }
    }

    /// Indices `j` where `w_{p−j}` is not a rotation of `reverse(ψ(w_j))`.
    pub fn symmetry_failures(&self) -> Vec<u64> {
        let p = self.params.p as usize;
        (0..=p)
            .filter(|&j| {
                let mirrored = self.words[j].swap_generators(Gen::Z, Gen::Y).reverse();
                !cyclically_equal(&cyclic_reduce(&self.words[p - j]), &cyclic_reduce(&mirrored))
            })
            .map(|j| j as u64)
            .collect()
    }
}

pub fn verify_symmetry(seq: &PqSequence) -> bool {
    seq.symmetry_failures().is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitivity::is_primitive_whitehead;

    #[test]
    fn params_examples() {
        assert_eq!(make_params(5, 2).unwrap().q_prime, 2);
        assert_eq!(make_params(8, 3).unwrap().q_prime, 3);
        for p in 2..20 {
            assert_eq!(make_params(p, 1).unwrap().q_prime, 1);
        }
        let pr = make_params(12, 5).unwrap();
        assert_eq!((pr.q, pr.q_prime, pr.r, pr.m, pr.connected), (5, 5, 2, 2, false));
        assert_eq!(make_params(12, 7).unwrap(), pr);
        assert_eq!(make_params(10, 3).unwrap().q_prime, 3);
        assert_eq!(make_params(2, 1).unwrap().q, 1);
    }

    #[test]
    fn params_errors() {
        for (p, q) in [(6, 4), (1, 1), (5, 0), (5, 5), (5, 7), (5, -1)] {
            assert!(
                matches!(make_params(p, q), Err(Error::InvalidParams { .. })),
                "({p},{q})"
            );
        }
        let Err(Error::InvalidParams { constraint, .. }) = make_params(6, 4) else {
            unreachable!()
        };
        assert_eq!(constraint, "gcd(p, q) = 1");
    }

    #[test]
    fn sequence_8_3() {
        let s = pq_sequence(make_params(8, 3).unwrap());
        let got: Vec<String> = s.words.iter().map(|w| w.to_string()).collect();
        assert_eq!(
            got,
            [
                "yyyyyyyy", "zyyyyyyy", "zyyzyyyy", "zyyzyyzy", "zzyzyyzy", "zzyzzyzy",
                "zzyzzyzz", "zzzzzyzz", "zzzzzzzz"
            ]
        );
        assert_eq!(s.primitive_indices, [1, 3, 5, 7].into());
    }

    #[test]
    fn sequence_examples() {
        let s = pq_sequence(make_params(5, 2).unwrap());
        assert_eq!(s.words[2].to_string(), "zyzyy");
        assert_eq!(s.primitive_indices, [1, 2, 3, 4].into());
        assert_eq!(primitive_indices(make_params(2, 1).unwrap()), [1].into());
        for pr in parameter_grid(15) {
            let s = pq_sequence(pr);
            let expect = format!("z{}", "y".repeat(pr.p as usize - 1));
            assert_eq!(s.words[1].to_string(), expect);
        }
    }

    #[test]
    fn symmetry_examples() {
        assert!(verify_symmetry(&pq_sequence(make_params(8, 3).unwrap())));
        assert!(verify_symmetry(&pq_sequence(make_params(5, 2).unwrap())));
        for p in 2..12 {
            assert!(verify_symmetry(&pq_sequence(make_params(p, 1).unwrap())));
        }
    }

    #[test]
    fn primitive_set_small_grid() {
        for pr in parameter_grid(16) {
            let s = pq_sequence(pr);
            let found: BTreeSet<u64> = (0..=pr.p)
                .filter(|&j| is_primitive_whitehead(&s.words[j as usize]))
                .collect();
            assert_eq!(found, s.primitive_indices, "{pr:?}");
        }
    }

    #[test]
    fn q_prime_involution() {
        for pr in parameter_grid(40) {
            assert_eq!(make_params(pr.p as i64, pr.q_prime as i64).unwrap().q_prime, pr.q);
        }
    }
}
