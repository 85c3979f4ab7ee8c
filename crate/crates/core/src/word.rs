//! Reduced and cyclically reduced words in a free group.
//!
//! The rank-2 machinery uses the symbols `x`, `y` and `z` (with `z` standing
//! in for `xy` before substitution). Letters carry an arbitrary generator
//! index so the same types also spell relators of group presentations.

use std::fmt;

use serde::{Serialize, Serializer};

/// Generator index. `X`, `Z` and `Y` are reserved for the rank-2 alphabets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(pub u16);

impl Gen {
    pub const X: Gen = Gen(0);
    pub const Z: Gen = Gen(1);
    pub const Y: Gen = Gen(2);

    fn symbol(self) -> Option<char> {
        match self {
            Gen::X => Some('x'),
            Gen::Z => Some('z'),
            Gen::Y => Some('y'),
            _ => None,
        }
    }
}

/// A generator or its inverse.
///
/// The derived order is generator first, positive before inverse, which
/// gives `x < X < z < Z < y < Y` on the reserved symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(gen: Gen) -> Letter {
        Letter { gen, inverse: false }
    }

    pub const fn neg(gen: Gen) -> Letter {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gen.symbol() {
            Some(c) if self.inverse => write!(f, "{}", c.to_ascii_uppercase()),
            Some(c) => write!(f, "{c}"),
            None if self.inverse => write!(f, "G{}", self.gen.0),
            None => write!(f, "g{}", self.gen.0),
        }
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    pub fn generator(g: Gen) -> Word {
        Word::letter(Letter::pos(g))
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            if letters.last().is_some_and(|&last| last.cancels(l)) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Word { letters }
    }

    /// `g^k` for a single generator.
    pub fn power_of(g: Gen, k: i64) -> Word {
        let l = if k < 0 { Letter::neg(g) } else { Letter::pos(g) };
        Word {
            letters: vec![l; k.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        Word::reduce(
            std::iter::repeat_n(base.letters.iter().copied(), k.unsigned_abs() as usize)
                .flatten(),
        )
    }

    /// `w⁻¹`: reversed sequence with every sign flipped.
    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `w̄`: reversed sequence, signs kept.
    pub fn reverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Exchanges the symbols `a` and `b` (the automorphism ψ when applied
    /// to `z` and `y`).
    pub fn swap_generators(&self, a: Gen, b: Gen) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|&l| {
                    let gen = if l.gen == a {
                        b
                    } else if l.gen == b {
                        a
                    } else {
                        l.gen
                    };
                    Letter { gen, ..l }
                })
                .collect(),
        }
    }

    /// Inverts every occurrence of `g`, keeping positions.
    pub fn flip_sign(&self, g: Gen) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|&l| if l.gen == g { l.inv() } else { l })
                .collect(),
        }
    }

    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == g)
            .map(|l| l.sign())
            .sum()
    }

    /// Exponent sums of the first symbol (`x`, or `z` before substitution)
    /// and of `y`.
    pub fn abelianize(&self) -> (i64, i64) {
        (
            self.exponent_sum(Gen::X) + self.exponent_sum(Gen::Z),
            self.exponent_sum(Gen::Y),
        )
    }

    /// Homomorphic image under `g ↦ image`, other generators fixed.
    pub fn substitute(&self, g: Gen, image: &Word) -> Word {
        self.map_letters(|l| {
            if l.gen != g {
                Word::letter(l)
            } else if l.inverse {
                image.invert()
            } else {
                image.clone()
            }
        })
    }

    /// Homomorphic image given the image of each letter.
    pub fn map_letters<F: FnMut(Letter) -> Word>(&self, mut f: F) -> Word {
        let mut raw = Vec::with_capacity(self.len());
        for &l in &self.letters {
            raw.extend_from_slice(f(l).letters());
        }
        Word::reduce(raw)
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    /// Distinct generators in order of first appearance.
    pub fn generators(&self) -> Vec<Gen> {
        let mut seen = Vec::new();
        for l in &self.letters {
            if !seen.contains(&l.gen) {
                seen.push(l.gen);
            }
        }
        seen
    }

    /// Caret notation, e.g. `xy^2xy^3` or `zy^-2`.
    pub fn to_caret(&self) -> String {
        let mut out = String::new();
        for (letter, run) in runs(&self.letters) {
            let l = Letter::pos(letter.gen);
            let exp = run as i64 * letter.sign();
            if exp == 1 {
                out.push_str(&l.to_string());
            } else {
                out.push_str(&format!("{l}^{exp}"));
            }
        }
        out
    }
}

/// Maximal runs of equal letters, as (letter, run length).
pub(crate) fn runs(letters: &[Letter]) -> Vec<(Letter, usize)> {
    let mut out: Vec<(Letter, usize)> = Vec::new();
    for &l in letters {
        match out.last_mut() {
            Some((last, n)) if *last == l => *n += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A cyclically reduced word stored as its least rotation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Strips mutually inverse first/last letters, then canonicalizes.
    pub fn from_word(w: &Word) -> CyclicWord {
        let s = &w.letters;
        let (mut lo, mut hi) = (0, s.len());
        while hi - lo >= 2 && s[lo].cancels(s[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        CyclicWord {
            letters: least_rotation(&s[lo..hi]),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_word(&self) -> Word {
        Word {
            letters: self.letters.clone(),
        }
    }

    pub fn invert(&self) -> CyclicWord {
        CyclicWord::from_word(&self.as_word().invert())
    }

    pub fn reverse(&self) -> CyclicWord {
        CyclicWord::from_word(&self.as_word().reverse())
    }

    pub fn swap_generators(&self, a: Gen, b: Gen) -> CyclicWord {
        CyclicWord::from_word(&self.as_word().swap_generators(a, b))
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    pub fn count(&self, g: Gen) -> usize {
        self.letters.iter().filter(|l| l.gen == g).count()
    }
}

/// `w` cyclically reduced and put in canonical rotation.
pub fn cyclic_reduce(w: &Word) -> CyclicWord {
    CyclicWord::from_word(w)
}

/// Length of the cyclic reduction, without canonicalizing.
pub fn cyclic_length(w: &Word) -> usize {
    let s = &w.letters;
    let (mut lo, mut hi) = (0, s.len());
    while hi - lo >= 2 && s[lo].cancels(s[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    hi - lo
}

/// True iff `u` is a rotation of `v`.
pub fn cyclically_equal(u: &CyclicWord, v: &CyclicWord) -> bool {
    u == v
}

// Minimum expression by the two-pointer scan, linear time.
fn least_rotation(s: &[Letter]) -> Vec<Letter> {
    let n = s.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    let best = i.min(j);
    s[best..].iter().chain(&s[..best]).copied().collect()
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn least_rotation_matches_brute_force() {
        let alphabet = [Letter::pos(Gen::X), Letter::neg(Gen::X), Letter::pos(Gen::Y)];
        for n in 0..8u32 {
            for code in 0..3usize.pow(n) {
                let s: Vec<Letter> = (0..n)
                    .map(|i| alphabet[code / 3usize.pow(i) % 3])
                    .collect();
                let brute = (0..(n as usize).max(1))
                    .map(|r| {
                        let r = r.min(s.len());
                        s[r..].iter().chain(&s[..r]).copied().collect::<Vec<_>>()
                    })
                    .min()
                    .unwrap();
                assert_eq!(least_rotation(&s), brute, "{s:?}");
            }
        }
    }

    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn c(s: &str) -> CyclicWord {
        cyclic_reduce(&w(s))
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("x X"), Word::empty());
        assert_eq!(w("x y Y x").to_string(), "xx");
        assert_eq!(w("z y y z y y z y").to_string(), "zyyzyyzy");
    }

    #[test]
    fn reduce_is_idempotent() {
        let once = w("x y Y X y x X Y y");
        assert_eq!(Word::reduce(once.letters().iter().copied()), once);
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(c("y x Y").to_string(), "x");
        assert_eq!(c("x y").to_string(), "xy");
        assert_eq!(c("y x").to_string(), "xy");
        assert_eq!(c("Y z y").to_string(), "z");
        assert_eq!(c("X x").to_string(), "");
    }

    #[test]
    fn canonical_rotation_uses_letter_order() {
        // x < X < y < Y
        assert_eq!(c("Y x").to_string(), "xY");
        assert_eq!(c("y X").to_string(), "Xy");
        assert_eq!(c("y z").to_string(), "zy");
        assert_eq!(c("y Z").to_string(), "Zy");
    }

    #[test]
    fn cyclic_equality_examples() {
        assert!(cyclically_equal(&c("z y"), &c("y z")));
        assert!(!cyclically_equal(&c("z y y"), &c("z y z")));
        let base = w("z z z z y z z y");
        let rotated = w("z z y z z y z z");
        // brute force over all rotations of base
        let n = base.len();
        let by_hand = (0..n).any(|k| {
            let l = base.letters();
            let rot: Vec<Letter> = l[k..].iter().chain(&l[..k]).copied().collect();
            rot == rotated.letters()
        });
        assert!(by_hand);
        assert!(cyclically_equal(&cyclic_reduce(&base), &cyclic_reduce(&rotated)));
    }

    #[test]
    fn invert_reverse_swap() {
        assert_eq!(w("x y").invert().to_string(), "YX");
        assert_eq!(w("z y y").reverse().to_string(), "yyz");
        assert_eq!(
            w("z y y z y y y y").swap_generators(Gen::Z, Gen::Y).to_string(),
            "yzzyzzzz"
        );
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(w("x y").abelianize(), (1, 1));
        assert_eq!(w("x y X Y").abelianize(), (0, 0));
        assert_eq!(w("x y^2 x y^3").abelianize(), (2, 5));
    }

    #[test]
    fn substitute_examples() {
        let xy = w("x y");
        assert_eq!(w("z").substitute(Gen::Z, &xy), xy);
        assert_eq!(w("z y z y y").substitute(Gen::Z, &xy), w("x y^2 x y^3"));
        assert_eq!(w("z z z y z").substitute(Gen::Z, &xy), w("x y x y x y y x y"));
        assert_eq!(w("Z").substitute(Gen::Z, &xy), w("Y X"));
    }

    #[test]
    fn caret_notation() {
        assert_eq!(w("x y y x y y y").to_caret(), "xy^2xy^3");
        assert_eq!(w("z Y Y").to_caret(), "zy^-2");
        assert_eq!(Word::empty().to_caret(), "");
    }

    #[test]
    fn powers() {
        assert_eq!(w("x y").pow(3), w("xyxyxy"));
        assert_eq!(w("x y").pow(-2), w("YXYX"));
        assert_eq!(w("x y").pow(0), Word::empty());
        assert_eq!(Word::power_of(Gen::Y, -3), w("y^-3"));
    }
}
