//! Replacement calculus on disks whose boundary words have the form
//! `(xy^q)^d x y^e`, labeled by Farey fractions, and the non-connectivity
//! witness it yields.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sequence::{gcd, PqParams};
use crate::word::{Gen, Word};

/// A fraction `a/b`, with `1/0` allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub a: u64,
    pub b: u64,
}

impl Fraction {
    pub const INFINITY: Fraction = Fraction { a: 1, b: 0 };
    pub const ZERO: Fraction = Fraction { a: 0, b: 1 };

    pub fn mediant(self, other: Fraction) -> Fraction {
        Fraction {
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }

    /// `|a₁b₂ − a₂b₁| = 1`.
    pub fn is_farey_neighbor(self, other: Fraction) -> bool {
        (self.a * other.b).abs_diff(other.a * self.b) == 1
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A disk labeled by a fraction, with boundary word `(xy^q)^d x y^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FareyLabel {
    pub fraction: Fraction,
    pub d: u64,
    pub e: i64,
}

impl FareyLabel {
    /// `d = a·m + b − 1`, `e = a·r − (b − 1)·q`.
    pub fn closed_form(fraction: Fraction, params: &PqParams) -> FareyLabel {
        let Fraction { a, b } = fraction;
        FareyLabel {
            fraction,
            d: a * params.m + b - 1,
            e: (a * params.r) as i64 - (b as i64 - 1) * params.q as i64,
        }
    }

    pub fn word(&self, q: u64) -> Word {
        let x = Word::generator(Gen::X);
        let unit = x.concat(&Word::power_of(Gen::Y, q as i64));
        unit.pow(self.d as i64)
            .concat(&x)
            .concat(&Word::power_of(Gen::Y, self.e))
    }
}

/// Partial quotients `[p₀; p₁, …, p_k]` of `num/den`, with `p_k ≥ 2`.
pub fn continued_fraction(num: u64, den: u64) -> Result<Vec<u64>> {
    let invalid = |constraint| Error::InvalidFraction {
        num,
        den,
        constraint,
    };
    if den == 0 || num <= den {
        return Err(invalid("requires numerator > denominator ≥ 1"));
    }
    if gcd(num, den) != 1 {
        return Err(invalid("requires coprime numerator and denominator"));
    }
    let (mut a, mut b) = (num, den);
    let mut out = Vec::new();
    while b != 0 {
        out.push(a / b);
        (a, b) = (b, a % b);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// The new disk replaces the left member of the pair.
    L,
    /// The new disk replaces the right member of the pair.
    R,
}

/// One replacement: the mediant fraction, `d = d₁ + d₂ + 1` and
/// `e = e₁ + e₂ − q`.
pub fn replacement(left: &FareyLabel, right: &FareyLabel, params: &PqParams) -> FareyLabel {
    FareyLabel {
        fraction: left.fraction.mediant(right.fraction),
        d: left.d + right.d + 1,
        e: left.e + right.e - params.q as i64,
    }
}

/// Labels of the two seed disks: `1/0` with word `(xy^q)^{m−1} x y^{q+r}`
/// and `0/1` with word `x`.
pub fn seed_labels(params: &PqParams) -> Result<(FareyLabel, FareyLabel)> {
    if params.connected {
        return Err(Error::Connected {
            p: params.p,
            q: params.q,
        });
    }
    Ok((
        FareyLabel {
            fraction: Fraction::INFINITY,
            d: params.m - 1,
            e: (params.q + params.r) as i64,
        },
        FareyLabel {
            fraction: Fraction::ZERO,
            d: 0,
            e: 0,
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepTag {
    Seed,
    L,
    R,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceDisk {
    pub step: StepTag,
    pub label: FareyLabel,
    pub word: Word,
    /// The ordered pair `(left, right)` after this disk is placed.
    pub pair_after: (Fraction, Fraction),
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplacementTrace {
    pub params: PqParams,
    /// Slope convention of the shell the witness is built in.
    pub shell_slope: &'static str,
    pub s: u64,
    pub t: u64,
    pub cf: Vec<u64>,
    pub disks: Vec<TraceDisk>,
}

impl ReplacementTrace {
    pub fn last(&self) -> &TraceDisk {
        self.disks.last().expect("trace has seeds")
    }

    pub fn target(&self) -> Fraction {
        Fraction {
            a: self.s,
            b: self.t + 1,
        }
    }
}

/// Smallest `s ≥ 1` with `s·r − (t+1)·q = 1`, returned as `(s, t)`.
pub fn bezout_pair(params: &PqParams) -> (u64, u64) {
    let (q, r) = (params.q, params.r);
    let s = (1..q)
        .find(|s| (s * r) % q == 1)
        .expect("r is a unit mod q");
    (s, (s * r - 1) / q - 1)
}

/// Runs the alternating replacement schedule from the two seeds to the
/// primitive disk labeled `s/(t+1)`.
pub fn nonconnectivity_witness(params: PqParams) -> Result<ReplacementTrace> {
    let (d0, dm1) = seed_labels(&params)?;
    let (s, t) = bezout_pair(&params);
    let cf = continued_fraction(s, t + 1)?;
    let q = params.q;
    let mut left = d0;
    let mut right = dm1;
    let mut disks = vec![
        TraceDisk {
            step: StepTag::Seed,
            label: d0,
            word: d0.word(q),
            pair_after: (d0.fraction, dm1.fraction),
        },
        TraceDisk {
            step: StepTag::Seed,
            label: dm1,
            word: dm1.word(q),
            pair_after: (d0.fraction, dm1.fraction),
        },
    ];
    for (i, &count) in cf.iter().enumerate() {
        let side = if i % 2 == 0 { Side::R } else { Side::L };
        for _ in 0..count {
            let new = replacement(&left, &right, &params);
            match side {
                Side::R => right = new,
                Side::L => left = new,
            }
            disks.push(TraceDisk {
                step: match side {
                    Side::L => StepTag::L,
                    Side::R => StepTag::R,
                },
                label: new,
                word: new.word(q),
                pair_after: (left.fraction, right.fraction),
            });
        }
    }
    Ok(ReplacementTrace {
        params,
        shell_slope: "q",
        s,
        t,
        cf,
        disks,
    })
}
