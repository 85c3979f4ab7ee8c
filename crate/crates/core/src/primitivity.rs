//! Primitivity in the free group of rank 2.
//!
//! Three independent routes:
//! * the Osborne–Zieschang characterization of positive primitive words,
//! * a quick sufficient test for non-primitivity based on forbidden
//!   subword pairs,
//! * Whitehead's peak-reduction algorithm, used as the oracle for the other
//!   two.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{cyclic_length, cyclic_reduce, cyclically_equal, CyclicWord, Gen, Letter, Word};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The Osborne–Zieschang word `w(m, n) = g(1) g(1+m) … g(1+(m+n-1)m)` over
/// `{z, y}`, where `g(i) = z` iff `i ≡ 1, …, m (mod m+n)`.
pub fn oz_canonical_word(m: u64, n: u64) -> Result<CyclicWord> {
    oz_word_in(Gen::Z, Gen::Y, m, n)
}

/// [`oz_canonical_word`] with `minor` playing `z` and `major` playing `y`.
pub fn oz_word_in(minor: Gen, major: Gen, m: u64, n: u64) -> Result<CyclicWord> {
    if m == 0 || m > n {
        return Err(Error::InvalidOzCounts {
            m,
            n,
            constraint: "1 ≤ m ≤ n",
        });
    }
    if gcd(m, n) != 1 {
        return Err(Error::InvalidOzCounts {
            m,
            n,
            constraint: "gcd(m, n) = 1",
        });
    }
    let period = m + n;
    let letters = (0..period).map(|k| {
        let i = (1 + k * m) % period;
        // residues 1..=m carry z; residue 0 stands for m+n
        if (1..=m).contains(&i) {
            Letter::pos(minor)
        } else {
            Letter::pos(major)
        }
    });
    Ok(cyclic_reduce(&Word::reduce(letters)))
}

/// Primitivity of a positive word by the Osborne–Zieschang criterion.
///
/// The less frequent symbol plays the role of `z` (a ψ-swap when the `z`
/// count exceeds the `y` count). Words in a single symbol are primitive
/// iff they have length 1.
pub fn is_primitive_positive(w: &CyclicWord) -> Result<bool> {
    if !w.is_positive() {
        return Err(Error::NotPositive(w.to_string()));
    }
    let gens = w.as_word().generators();
    match gens.as_slice() {
        [] => Ok(false),
        [_] => Ok(w.len() == 1),
        [a, b] => {
            let (ca, cb) = (w.count(*a) as u64, w.count(*b) as u64);
            let (minor, major, m, n) = if ca <= cb {
                (*a, *b, ca, cb)
            } else {
                (*b, *a, cb, ca)
            };
            if gcd(m, n) != 1 {
                return Ok(false);
            }
            let canonical = oz_word_in(minor, major, m, n)?;
            Ok(cyclically_equal(w, &canonical))
        }
        _ => Err(Error::NotRankTwo(w.to_string())),
    }
}

/// A free basis `(first, second)` of the rank-2 group the word lives in.
///
/// Words over `z` use `(z, y)`; everything else defaults to `(x, y)`.
pub fn rank_two_basis(w: &Word) -> Result<(Gen, Gen)> {
    let mut gens = w.generators();
    gens.sort();
    match gens.as_slice() {
        [] => Ok((Gen::X, Gen::Y)),
        [g] if *g == Gen::Z => Ok((Gen::Z, Gen::Y)),
        [g] if *g == Gen::Y || *g == Gen::X => Ok((Gen::X, Gen::Y)),
        [g] => Ok((*g, if *g == Gen::Y { Gen::X } else { Gen::Y })),
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::NotRankTwo(w.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum WhiteheadKind {
    /// Type I: a signed permutation of the basis.
    Permutation,
    /// Type II: the multiplier is fixed; the other generator `v` becomes
    /// `v·a` when `v` is in the cut set, `a⁻¹·v` when `v⁻¹` is, or both.
    Multiplier {
        multiplier: String,
        right: bool,
        left: bool,
    },
}

/// A Whitehead automorphism of a rank-2 free group, given by the images of
/// the two basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WhiteheadAutomorphism {
    pub kind: WhiteheadKind,
    #[serde(serialize_with = "serialize_images")]
    pub images: [(Gen, Word); 2],
}

fn serialize_images<S: serde::Serializer>(
    images: &[(Gen, Word); 2],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(2))?;
    for (g, w) in images {
        m.serialize_entry(&Letter::pos(*g).to_string(), &w.to_string())?;
    }
    m.end()
}

impl WhiteheadAutomorphism {
    fn image_of(&self, g: Gen) -> Word {
        self.images
            .iter()
            .find(|(h, _)| *h == g)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(|| Word::generator(g))
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.map_letters(|l| {
            let img = self.image_of(l.gen);
            if l.inverse {
                img.invert()
            } else {
                img
            }
        })
    }

    pub fn compose_then(&self, next: &WhiteheadAutomorphism) -> [(Gen, Word); 2] {
        let [(a, wa), (b, wb)] = &self.images;
        [(*a, next.apply(wa)), (*b, next.apply(wb))]
    }

    /// The inverse automorphism (also a Whitehead automorphism).
    pub fn inverse(&self) -> WhiteheadAutomorphism {
        match &self.kind {
            WhiteheadKind::Multiplier { right, left, .. } => {
                let [(a, wa), (b, wb)] = &self.images;
                // the fixed generator is the one whose image is itself
                let (fixed, moved, moved_img) = if *wa == Word::generator(*a) {
                    (*a, *b, wb)
                } else {
                    (*b, *a, wa)
                };
                let mult = if *right {
                    *moved_img.letters().last().expect("non-empty image")
                } else {
                    moved_img.letters()[0].inv()
                };
                let _ = fixed;
                let inv_mult = mult.inv();
                let mut raw = Vec::new();
                if *left {
                    raw.push(inv_mult.inv());
                }
                raw.push(Letter::pos(moved));
                if *right {
                    raw.push(inv_mult);
                }
                let mut images = self.images.clone();
                for (g, w) in images.iter_mut() {
                    if *g == moved {
                        *w = Word::reduce(raw.clone());
                    }
                }
                WhiteheadAutomorphism {
                    kind: WhiteheadKind::Multiplier {
                        multiplier: inv_mult.to_string(),
                        right: *right,
                        left: *left,
                    },
                    images,
                }
            }
            WhiteheadKind::Permutation => {
                // images are single letters; invert the signed permutation
                let mut images = self.images.clone();
                for (g, w) in &self.images {
                    let l = w.letters()[0];
                    let back = if l.inverse {
                        Letter::neg(*g)
                    } else {
                        Letter::pos(*g)
                    };
                    for (h, slot) in images.iter_mut() {
                        if *h == l.gen {
                            *slot = Word::letter(back);
                        }
                    }
                }
                WhiteheadAutomorphism {
                    kind: WhiteheadKind::Permutation,
                    images,
                }
            }
        }
    }
}

/// Every Whitehead automorphism of the free group on `basis`, in a fixed
/// order: type II (length-changing) first, then the eight type I.
///
/// Type II moves that are inner on the generators (`v ↦ a⁻¹va`) are
/// included; they never change cyclic length.
pub fn whitehead_automorphisms(basis: (Gen, Gen)) -> Vec<WhiteheadAutomorphism> {
    let (a, b) = basis;
    let mut out = Vec::with_capacity(20);
    for mult in [Letter::pos(a), Letter::neg(a), Letter::pos(b), Letter::neg(b)] {
        let fixed = mult.gen;
        let moved = if fixed == a { b } else { a };
        for (right, left) in [(true, false), (false, true), (true, true)] {
            let mut raw = Vec::new();
            if left {
                raw.push(mult.inv());
            }
            raw.push(Letter::pos(moved));
            if right {
                raw.push(mult);
            }
            let mut images = [
                (a, Word::generator(a)),
                (b, Word::generator(b)),
            ];
            for (g, w) in images.iter_mut() {
                if *g == moved {
                    *w = Word::reduce(raw.clone());
                }
            }
            out.push(WhiteheadAutomorphism {
                kind: WhiteheadKind::Multiplier {
                    multiplier: mult.to_string(),
                    right,
                    left,
                },
                images,
            });
        }
    }
    for swap in [false, true] {
        for (sa, sb) in [(false, false), (true, false), (false, true), (true, true)] {
            let (ta, tb) = if swap { (b, a) } else { (a, b) };
            let la = Letter { gen: ta, inverse: sa };
            let lb = Letter { gen: tb, inverse: sb };
            out.push(WhiteheadAutomorphism {
                kind: WhiteheadKind::Permutation,
                images: [(a, Word::letter(la)), (b, Word::letter(lb))],
            });
        }
    }
    out
}

/// One greedy peak-reduction step: the first automorphism (in enumeration
/// order) whose image has strictly smaller cyclic length.
pub fn whitehead_reduce_step(w: &CyclicWord) -> Option<(WhiteheadAutomorphism, CyclicWord)> {
    if w.len() <= 1 {
        return None;
    }
    let word = w.as_word();
    let basis = rank_two_basis(&word).ok()?;
    whitehead_automorphisms(basis).into_iter().find_map(|auto| {
        let image = auto.apply(&word);
        (cyclic_length(&image) < w.len()).then(|| (auto, cyclic_reduce(&image)))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WhiteheadStep {
    pub automorphism: WhiteheadAutomorphism,
    pub result: CyclicWord,
}

#[derive(Clone, Debug, Serialize)]
pub struct WhiteheadTrace {
    pub start: CyclicWord,
    pub steps: Vec<WhiteheadStep>,
    pub terminal: CyclicWord,
    pub primitive: bool,
}

/// Runs greedy peak reduction to a cyclic word of minimal length.
pub fn whitehead_trace(w: &Word) -> Result<WhiteheadTrace> {
    rank_two_basis(w)?;
    let start = cyclic_reduce(w);
    let mut current = start.clone();
    let mut steps = Vec::new();
    while let Some((automorphism, next)) = whitehead_reduce_step(&current) {
        current = next.clone();
        steps.push(WhiteheadStep {
            automorphism,
            result: next,
        });
    }
    Ok(WhiteheadTrace {
        start,
        primitive: current.len() == 1,
        terminal: current,
        steps,
    })
}

/// Whitehead-algorithm primitivity oracle.
///
/// # Panics
/// If `w` involves more than two generators.
pub fn is_primitive_whitehead(w: &Word) -> bool {
    whitehead_trace(w)
        .expect("primitivity oracle needs a rank-2 word")
        .primitive
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterOutcome {
    NotPrimitive,
    Inconclusive,
}

/// Sign convention under which a filter pattern was found: the word was
/// optionally inverted (reading direction) and had the signs of the first
/// and/or second basis symbol flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub inverted: bool,
    pub flip_first: bool,
    pub flip_second: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "pattern")]
pub enum FilterPattern {
    /// Both `xy` and `xy⁻¹` occur.
    MixedSigns { xy_at: usize, x_yinv_at: usize },
    /// `x yⁿ x` and `yⁿ⁺²` occur.
    RunGap {
        n: usize,
        short_at: usize,
        long_at: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterWitness {
    pub orientation: Orientation,
    /// The normalized cyclic word the positions refer to.
    pub normalized: CyclicWord,
    #[serde(flatten)]
    pub pattern: FilterPattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterVerdict {
    pub outcome: FilterOutcome,
    pub witness: Option<FilterWitness>,
}

fn scan_patterns(v: &[Letter], x: Gen, y: Gen) -> Option<FilterPattern> {
    let n = v.len();
    if n == 0 {
        return None;
    }
    let at = |i: usize| v[i % n];
    let (xp, yp, yn) = (Letter::pos(x), Letter::pos(y), Letter::neg(y));

    let xy = (0..n).find(|&i| at(i) == xp && at(i + 1) == yp);
    let xyinv = (0..n).find(|&i| at(i) == xp && at(i + 1) == yn);
    if let (Some(xy_at), Some(x_yinv_at)) = (xy, xyinv) {
        return Some(FilterPattern::MixedSigns { xy_at, x_yinv_at });
    }

    if !v.iter().any(|&l| l != yp) {
        return None;
    }
    // longest cyclic run of y, starting after some non-y letter
    let mut long: Option<(usize, usize)> = None;
    for i in 0..n {
        if at(i) == yp && at(i + n - 1) != yp {
            let len = (0..n).take_while(|&k| at(i + k) == yp).count();
            if long.is_none_or(|(l, _)| len > l) {
                long = Some((len, i));
            }
        }
    }
    let (long_len, long_at) = long?;
    // shortest gap x yⁿ x, read periodically
    let mut short: Option<(usize, usize)> = None;
    for i in 0..n {
        if at(i) != xp {
            continue;
        }
        let gap = (1..n).take_while(|&k| at(i + k) == yp).count();
        if at(i + gap + 1) == xp && short.is_none_or(|(g, _)| gap < g) {
            short = Some((gap, i));
        }
    }
    let (gap, short_at) = short?;
    (long_len >= gap + 2).then_some(FilterPattern::RunGap {
        n: gap,
        short_at,
        long_at,
    })
}

/// Sound but incomplete non-primitivity test.
///
/// Scans the cyclic word under every sign convention of the two basis
/// symbols, in both reading directions, for the pairs (`xy`, `xy⁻¹`) and
/// (`xyⁿx`, `yⁿ⁺²`).
pub fn nonprimitivity_filter(w: &Word) -> FilterVerdict {
    let inconclusive = FilterVerdict {
        outcome: FilterOutcome::Inconclusive,
        witness: None,
    };
    let Ok((x, y)) = rank_two_basis(w) else {
        return inconclusive;
    };
    for inverted in [false, true] {
        for flip_first in [false, true] {
            for flip_second in [false, true] {
                let mut v = if inverted { w.invert() } else { w.clone() };
                if flip_first {
                    v = v.flip_sign(x);
                }
                if flip_second {
                    v = v.flip_sign(y);
                }
                let normalized = cyclic_reduce(&v);
                if let Some(pattern) = scan_patterns(normalized.letters(), x, y) {
                    return FilterVerdict {
                        outcome: FilterOutcome::NotPrimitive,
                        witness: Some(FilterWitness {
                            orientation: Orientation {
                                inverted,
                                flip_first,
                                flip_second,
                            },
                            normalized,
                            pattern,
                        }),
                    };
                }
            }
        }
    }
    inconclusive
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Auto,
    Oz,
    Whitehead,
    Filter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Primitive,
    NotPrimitive,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub word: Word,
    pub cyclic: CyclicWord,
    /// The route that produced the verdict.
    pub method: Method,
    pub verdict: Verdict,
    pub filter: Option<FilterVerdict>,
    pub trace: Option<WhiteheadTrace>,
}

/// Decides primitivity with the chosen route. `Auto` runs the filter,
/// then Osborne–Zieschang for positive words, then Whitehead.
pub fn decide(w: &Word, method: Method) -> Result<Decision> {
    rank_two_basis(w)?;
    let cyclic = cyclic_reduce(w);
    let mut decision = Decision {
        word: w.clone(),
        cyclic: cyclic.clone(),
        method,
        verdict: Verdict::Inconclusive,
        filter: None,
        trace: None,
    };
    let from_bool = |b: bool| {
        if b {
            Verdict::Primitive
        } else {
            Verdict::NotPrimitive
        }
    };
    match method {
        Method::Oz => decision.verdict = from_bool(is_primitive_positive(&cyclic)?),
        Method::Whitehead => {
            let trace = whitehead_trace(w)?;
            decision.verdict = from_bool(trace.primitive);
            decision.trace = Some(trace);
        }
        Method::Filter => {
            let f = nonprimitivity_filter(w);
            decision.verdict = match f.outcome {
                FilterOutcome::NotPrimitive => Verdict::NotPrimitive,
                FilterOutcome::Inconclusive => Verdict::Inconclusive,
            };
            decision.filter = Some(f);
        }
        Method::Auto => {
            let f = nonprimitivity_filter(w);
            let fired = f.outcome == FilterOutcome::NotPrimitive;
            decision.filter = Some(f);
            if fired {
                decision.method = Method::Filter;
                decision.verdict = Verdict::NotPrimitive;
            } else if cyclic.is_positive() {
                decision.method = Method::Oz;
                decision.verdict = from_bool(is_primitive_positive(&cyclic)?);
            } else {
                let trace = whitehead_trace(w)?;
                decision.method = Method::Whitehead;
                decision.verdict = from_bool(trace.primitive);
                decision.trace = Some(trace);
            }
        }
    }
    Ok(decision)
}
