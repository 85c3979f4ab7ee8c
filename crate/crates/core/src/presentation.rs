//! Finite presentations of the genus-2 Goeritz group of `L(p, q)` and of
//! the stabilizers it is assembled from.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sequence::PqParams;
use crate::snf::invariant_factors;
use crate::word::{runs, Gen, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    /// Display name, e.g. `β₁`.
    pub name: String,
    /// ASCII name for CAS output, e.g. `b1`.
    pub ascii: String,
    pub description: String,
}

/// Generators plus relators; relator letters index into `generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
}

/// A direct sum of presented groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub label: String,
    pub summands: Vec<Presentation>,
}

const GREEK: [(char, char); 6] = [
    ('α', 'a'),
    ('β', 'b'),
    ('γ', 'c'),
    ('δ', 'd'),
    ('ρ', 'r'),
    ('σ', 's'),
];

fn subscript(n: u32) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

fn superscript(k: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if k < 0 {
        s.push('⁻');
    }
    for c in k.unsigned_abs().to_string().chars() {
        s.push(DIGITS[c.to_digit(10).unwrap() as usize]);
    }
    s
}

fn generator(symbol: char, index: Option<u32>, description: &str) -> Generator {
    let ascii = GREEK.iter().find(|(g, _)| *g == symbol).map(|(_, a)| *a).unwrap();
    let (name, ascii) = match index {
        Some(i) => (format!("{symbol}{}", subscript(i)), format!("{ascii}{i}")),
        None => (symbol.to_string(), ascii.to_string()),
    };
    Generator {
        name,
        ascii,
        description: description.to_string(),
    }
}

impl Presentation {
    fn index_of(&self, name: &str) -> Gen {
        Gen(self.generators.iter().position(|g| g.name == name).unwrap() as u16)
    }

    /// Builds a relator from `(name, exponent)` factors.
    fn relator(&self, factors: &[(&str, i64)]) -> Word {
        Word::reduce(factors.iter().flat_map(|&(name, k)| {
            Word::power_of(self.index_of(name), k).letters().to_vec()
        }))
    }

    fn with(generators: Vec<Generator>, relators: &[&[(&str, i64)]]) -> Presentation {
        let mut p = Presentation {
            generators,
            relators: Vec::new(),
        };
        p.relators = relators.iter().map(|r| p.relator(r)).collect();
        p
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| render_word(r, &self.generators, Format::Text))
            .collect()
    }
}

fn alpha_summand() -> Presentation {
    Presentation::with(
        vec![generator('α', None, "hyperelliptic involution of both V and W")],
        &[&[("α", 2)]],
    )
}

fn beta_gamma(index: Option<u32>, at: &str) -> Presentation {
    let b = generator('β', index, &format!("half-twist along a reducing sphere, fixing {at}"));
    let c = generator('γ', index, &format!("exchanges two disjoint dual disks of {at}"));
    let gamma = c.name.clone();
    Presentation::with(vec![b, c], &[&[(gamma.as_str(), 2)]])
}

fn sigma(index: Option<u32>, pair: &str) -> Presentation {
    let s = generator('σ', index, &format!("exchanges the endpoints of {pair}"));
    let name = s.name.clone();
    Presentation::with(vec![s], &[&[(name.as_str(), 2)]])
}

impl GroupPresentation {
    fn new(label: &str, summands: Vec<Presentation>) -> GroupPresentation {
        GroupPresentation {
            label: label.to_string(),
            summands,
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.summands.iter().flat_map(|s| &s.generators)
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators().map(|g| g.name.clone()).collect()
    }

    /// Relators of the summands, rendered as text, without the
    /// commutators that flattening adds.
    pub fn relator_strings(&self) -> Vec<String> {
        self.summands.iter().flat_map(|s| s.relator_strings()).collect()
    }

    /// One presentation: generators and relators of all summands, plus
    /// `[g, h]` for generators `g`, `h` of different summands.
    pub fn flatten(&self) -> Presentation {
        let mut generators = Vec::new();
        let mut relators = Vec::new();
        let mut blocks = Vec::new();
        for s in &self.summands {
            let offset = generators.len() as u16;
            generators.extend(s.generators.iter().cloned());
            relators.extend(s.relators.iter().map(|r| shift(r, offset)));
            blocks.push(offset..offset + s.generators.len() as u16);
        }
        for (i, a) in blocks.iter().enumerate() {
            for b in &blocks[i + 1..] {
                for g in a.clone() {
                    for h in b.clone() {
                        relators.push(commutator(Gen(g), Gen(h)));
                    }
                }
            }
        }
        Presentation {
            generators,
            relators,
        }
    }

    /// Index of the summand-level generator called `name` in the flat form.
    fn flat_index(&self, name: &str) -> Gen {
        Gen(self.generators().position(|g| g.name == name).unwrap() as u16)
    }
}

fn shift(w: &Word, offset: u16) -> Word {
    w.map_letters(|l| {
        Word::letter(Letter {
            gen: Gen(l.gen.0 + offset),
            inverse: l.inverse,
        })
    })
}

fn commutator(g: Gen, h: Gen) -> Word {
    Word::reduce([Letter::neg(g), Letter::neg(h), Letter::pos(g), Letter::pos(h)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilizerKind {
    /// Stabilizer of a primitive disk.
    Vertex,
    /// Stabilizer of both endpoints of an edge.
    EdgeUnordered,
    /// Stabilizer of the union of an edge whose endpoints can be swapped.
    EdgeOrderedPairExchangeable,
    /// Stabilizer of the union of an edge whose endpoints cannot be swapped.
    EdgeOrderedPairRigid,
}

pub fn stabilizer_presentation(kind: StabilizerKind, params: &PqParams) -> Result<GroupPresentation> {
    if kind != StabilizerKind::Vertex && params.p < 3 {
        return Err(Error::PairStabilizerNeedsP3 { p: params.p });
    }
    Ok(match kind {
        StabilizerKind::Vertex => {
            GroupPresentation::new("G_E", vec![alpha_summand(), beta_gamma(None, "E")])
        }
        StabilizerKind::EdgeUnordered => GroupPresentation::new("G_{A,B}", vec![alpha_summand()]),
        StabilizerKind::EdgeOrderedPairExchangeable => {
            GroupPresentation::new("G_{A∪B}", vec![alpha_summand(), sigma(None, "{A, B}")])
        }
        StabilizerKind::EdgeOrderedPairRigid => {
            GroupPresentation::new("G_{A∪B}", vec![alpha_summand()])
        }
    })
}

/// The items of the presentation theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationCase {
    /// `(p, q) = (2, 1)`.
    LensTwo,
    /// `(p, q) = (3, 1)`.
    LensThree,
    /// `q = 1, p ≥ 4`.
    QOne,
    /// `q > 1, p = 5`.
    PFive,
    /// `q > 1`, `p = 2q+1` with `q ≥ 3`, or `q = 2` with `p > 5`.
    Triple,
    /// `q > 1`, `q² ≡ 1 (mod p)`.
    QSquaredOne,
    /// Every other connected case.
    General,
}

impl PresentationCase {
    pub fn clause(self) -> &'static str {
        match self {
            PresentationCase::LensTwo => "presentation theorem (1)(a)",
            PresentationCase::LensThree => "presentation theorem (1)(b)",
            PresentationCase::QOne => "presentation theorem (1)(c)",
            PresentationCase::PFive => "presentation theorem (2)(a)",
            PresentationCase::Triple => "presentation theorem (2)(b)",
            PresentationCase::QSquaredOne => "presentation theorem (2)(c)",
            PresentationCase::General => "presentation theorem (2)(d)",
        }
    }
}

fn not_covered(params: &PqParams) -> Error {
    Error::NotCovered {
        p: params.p,
        q: params.q,
        r: params.r,
    }
}

pub fn presentation_case(params: &PqParams) -> Result<PresentationCase> {
    if !params.connected {
        return Err(not_covered(params));
    }
    let PqParams { p, q, .. } = *params;
    Ok(if q == 1 {
        match p {
            2 => PresentationCase::LensTwo,
            3 => PresentationCase::LensThree,
            _ => PresentationCase::QOne,
        }
    } else if p == 5 {
        PresentationCase::PFive
    } else if (p == 2 * q + 1 && q >= 3) || (p > 5 && q == 2) {
        PresentationCase::Triple
    } else if params.q_squared_is_unit() {
        PresentationCase::QSquaredOne
    } else {
        PresentationCase::General
    })
}

fn rho_gamma() -> Presentation {
    Presentation::with(
        vec![
            generator('ρ', None, "order-4 symmetry preserving E ∪ D"),
            generator('γ', None, "exchanges the two disjoint common dual disks"),
        ],
        &[&[("ρ", 4)], &[("γ", 2)], &[("γ", 1), ("ρ", 1), ("γ", 1), ("ρ", 1)]],
    )
}

fn delta_gamma() -> Presentation {
    Presentation::with(
        vec![
            generator('δ', None, "order-3 rotation of the triple E, E₁, E₂"),
            generator('γ', None, "exchanges two disjoint dual disks of E"),
        ],
        &[&[("δ", 3)], &[("γ", 2)], &[("γ", 1), ("δ", 1), ("γ", 1), ("δ", 1)]],
    )
}

fn merge(summand_lists: &[&Presentation]) -> Presentation {
    let mut out = Presentation {
        generators: Vec::new(),
        relators: Vec::new(),
    };
    for s in summand_lists {
        let offset = out.generators.len() as u16;
        out.generators.extend(s.generators.iter().cloned());
        out.relators.extend(s.relators.iter().map(|r| shift(r, offset)));
    }
    out
}

/// The presentation theorem's table entry for `L(p, q)`.
pub fn goeritz_presentation(params: &PqParams) -> Result<GroupPresentation> {
    let case = presentation_case(params)?;
    let summands = match case {
        PresentationCase::LensTwo => {
            let rg = rho_gamma();
            let b = Presentation {
                generators: vec![generator('β', None, "half-twist along a reducing sphere")],
                relators: vec![],
            };
            let mut all = merge(&[&b, &rg]);
            let extra = all.relator(&[("ρ", 2), ("β", 1), ("ρ", 2), ("β", -1)]);
            all.relators.push(extra);
            vec![all]
        }
        PresentationCase::LensThree => {
            let p = Presentation::with(
                vec![
                    generator('β', None, "half-twist along a reducing sphere, fixing E"),
                    generator('δ', None, "order-3 rotation of the triple E, E₁, E₂"),
                    generator('γ', None, "exchanges two disjoint dual disks of E"),
                ],
                &[&[("δ", 3)], &[("γ", 2)], &[("γ", 1), ("δ", 1), ("γ", 1), ("δ", 1)]],
            );
            vec![alpha_summand(), p]
        }
        PresentationCase::QOne => vec![
            alpha_summand(),
            merge(&[&beta_gamma(None, "E"), &sigma(None, "{E, D}")]),
        ],
        PresentationCase::PFive => vec![
            alpha_summand(),
            interleave(&beta_gamma(Some(1), "E"), &beta_gamma(Some(2), "D"), &[]),
        ],
        PresentationCase::Triple => vec![
            alpha_summand(),
            interleave(
                &beta_gamma(Some(1), "E"),
                &beta_gamma(Some(2), "D"),
                &[&sigma(None, "{E, E₁}")],
            ),
        ],
        PresentationCase::QSquaredOne => vec![
            alpha_summand(),
            merge(&[
                &beta_gamma(None, "E"),
                &sigma(Some(1), "{E, D}"),
                &sigma(Some(2), "{E, E₁}"),
            ]),
        ],
        PresentationCase::General => vec![
            alpha_summand(),
            interleave(
                &beta_gamma(Some(1), "E"),
                &beta_gamma(Some(2), "D"),
                &[&sigma(Some(1), "{E, E₁}"), &sigma(Some(2), "{D, D₁}")],
            ),
        ],
    };
    Ok(GroupPresentation::new(
        &format!("G(L({},{}))", params.p, params.q),
        summands,
    ))
}

/// `β₁, β₂, γ₁, γ₂, …` ordering with relators `γ₁², γ₂², …`.
fn interleave(first: &Presentation, second: &Presentation, rest: &[&Presentation]) -> Presentation {
    let mut generators = vec![
        first.generators[0].clone(),
        second.generators[0].clone(),
        first.generators[1].clone(),
        second.generators[1].clone(),
    ];
    let mut relators: Vec<Vec<(String, i64)>> = vec![
        vec![(first.generators[1].name.clone(), 2)],
        vec![(second.generators[1].name.clone(), 2)],
    ];
    for s in rest {
        generators.extend(s.generators.iter().cloned());
        relators.push(vec![(s.generators[0].name.clone(), 2)]);
    }
    let mut p = Presentation {
        generators,
        relators: Vec::new(),
    };
    p.relators = relators
        .iter()
        .map(|r| {
            let factors: Vec<(&str, i64)> = r.iter().map(|(n, k)| (n.as_str(), *k)).collect();
            p.relator(&factors)
        })
        .collect();
    p
}

/// An edge of the quotient graph: the edge group and its inclusions into
/// the two adjacent factors.
#[derive(Clone, Debug)]
pub struct AmalgamEdge {
    pub label: String,
    pub group: GroupPresentation,
    pub between: (usize, usize),
    /// Image of each (flat) edge generator in the flat generators of the
    /// left and right factor.
    pub left_images: Vec<Word>,
    pub right_images: Vec<Word>,
}

#[derive(Clone, Debug)]
pub struct AmalgamDecomposition {
    pub params: PqParams,
    pub factors: Vec<GroupPresentation>,
    pub edges: Vec<AmalgamEdge>,
}

fn by_name(edge: &GroupPresentation, factor: &GroupPresentation) -> Vec<Word> {
    edge.generators()
        .map(|g| Word::generator(factor.flat_index(&g.name)))
        .collect()
}

fn labeled(label: &str, mut g: GroupPresentation) -> GroupPresentation {
    g.label = label.to_string();
    g
}

/// Builds a path of factors joined by edges whose generators include into
/// both neighbors by name.
fn chain(params: &PqParams, factors: Vec<GroupPresentation>, edges: Vec<GroupPresentation>) -> AmalgamDecomposition {
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(i, group)| AmalgamEdge {
            label: group.label.clone(),
            left_images: by_name(&group, &factors[i]),
            right_images: by_name(&group, &factors[i + 1]),
            group,
            between: (i, i + 1),
        })
        .collect();
    AmalgamDecomposition {
        params: *params,
        factors,
        edges,
    }
}

/// The Bass–Serre decomposition of the Goeritz group along the quotient of
/// its tree.
pub fn amalgam_decomposition(params: &PqParams) -> Result<AmalgamDecomposition> {
    let case = presentation_case(params)?;
    let alpha = || GroupPresentation::new("", vec![alpha_summand()]);
    let vertex = |label: &str, index: Option<u32>, at: &str| {
        GroupPresentation::new(label, vec![alpha_summand(), beta_gamma(index, at)])
    };
    let union = |label: &str, index: Option<u32>, pair: &str| {
        GroupPresentation::new(label, vec![alpha_summand(), sigma(index, pair)])
    };
    Ok(match case {
        PresentationCase::LensTwo => {
            let union = GroupPresentation::new("G_{E∪D}", vec![rho_gamma()]);
            let vertex = vertex("G_{E}", None, "E");
            let edge = GroupPresentation::new(
                "G_{E,D}",
                vec![
                    alpha_summand(),
                    Presentation::with(
                        vec![generator('γ', None, "exchanges the two disjoint common dual disks")],
                        &[&[("γ", 2)]],
                    ),
                ],
            );
            let rho = union.flat_index("ρ");
            let left_images = vec![Word::power_of(rho, 2), Word::generator(union.flat_index("γ"))];
            let right_images = by_name(&edge, &vertex);
            AmalgamDecomposition {
                params: *params,
                factors: vec![union, vertex],
                edges: vec![AmalgamEdge {
                    label: edge.label.clone(),
                    group: edge,
                    between: (0, 1),
                    left_images,
                    right_images,
                }],
            }
        }
        PresentationCase::LensThree => {
            let triple = GroupPresentation::new("G_{E∪E₁∪E₂}", vec![alpha_summand(), delta_gamma()]);
            let edge = GroupPresentation::new(
                "G_{E,E₁∪E₂}",
                vec![
                    alpha_summand(),
                    Presentation::with(
                        vec![generator('γ', None, "exchanges two disjoint dual disks of E")],
                        &[&[("γ", 2)]],
                    ),
                ],
            );
            chain(params, vec![triple, vertex("G_{E}", None, "E")], vec![edge])
        }
        PresentationCase::QOne => chain(
            params,
            vec![union("G_{E∪D}", None, "{E, D}"), vertex("G_{E}", None, "E")],
            vec![labeled("G_{E,D}", alpha())],
        ),
        PresentationCase::PFive => chain(
            params,
            vec![vertex("G_{E}", Some(1), "E"), vertex("G_{D}", Some(2), "D")],
            vec![labeled("G_{E,D}", alpha())],
        ),
        PresentationCase::Triple => chain(
            params,
            vec![
                vertex("G_{D}", Some(2), "D"),
                vertex("G_{E}", Some(1), "E"),
                union("G_{E∪E₁}", None, "{E, E₁}"),
            ],
            vec![labeled("G_{E,D}", alpha()), labeled("G_{E,E₁}", alpha())],
        ),
        PresentationCase::QSquaredOne => chain(
            params,
            vec![
                union("G_{E∪D}", Some(1), "{E, D}"),
                vertex("G_{E}", None, "E"),
                union("G_{E∪E₁}", Some(2), "{E, E₁}"),
            ],
            vec![labeled("G_{E,D}", alpha()), labeled("G_{E,E₁}", alpha())],
        ),
        PresentationCase::General => chain(
            params,
            vec![
                union("G_{D∪D₁}", Some(2), "{D, D₁}"),
                vertex("G_{D}", Some(2), "D"),
                vertex("G_{E}", Some(1), "E"),
                union("G_{E∪E₁}", Some(1), "{E, E₁}"),
            ],
            vec![
                labeled("G_{D,D₁}", alpha()),
                labeled("G_{E,D}", alpha()),
                labeled("G_{E,E₁}", alpha()),
            ],
        ),
    })
}

impl AmalgamDecomposition {
    /// Presentation of the amalgamated product: all factor generators kept
    /// apart, factor relators, and `ι_left(g) = ι_right(g)` for every edge
    /// generator `g`.
    pub fn flatten(&self) -> Presentation {
        let mut generators = Vec::new();
        let mut relators = Vec::new();
        let mut offsets = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            let flat = f.flatten();
            let offset = generators.len() as u16;
            offsets.push(offset);
            generators.extend(flat.generators.into_iter().map(|mut g| {
                g.ascii = format!("{}_{i}", g.ascii);
                g
            }));
            relators.extend(flat.relators.iter().map(|r| shift(r, offset)));
        }
        for e in &self.edges {
            let (l, r) = e.between;
            for (a, b) in e.left_images.iter().zip(&e.right_images) {
                let lhs = shift(a, offsets[l]);
                let rhs = shift(b, offsets[r]);
                relators.push(lhs.concat(&rhs.invert()));
            }
        }
        Presentation {
            generators,
            relators,
        }
    }

    /// Generator and relator multisets after identifying each edge group
    /// with its images, when every inclusion is the identity on names.
    /// `None` when some inclusion is not name-preserving.
    pub fn identified_counts(&self) -> Option<(BTreeMap<String, i64>, BTreeMap<String, i64>)> {
        let mut gens = BTreeMap::new();
        let mut rels = BTreeMap::new();
        for f in &self.factors {
            for g in f.generator_names() {
                *gens.entry(g).or_insert(0) += 1;
            }
            for r in f.relator_strings() {
                *rels.entry(r).or_insert(0) += 1;
            }
        }
        for e in &self.edges {
            for (side, images) in [(e.between.0, &e.left_images), (e.between.1, &e.right_images)] {
                let names = self.factors[side].generator_names();
                for (g, img) in e.group.generators().zip(images) {
                    let [l] = img.letters() else { return None };
                    if l.inverse || names[l.gen.0 as usize] != g.name {
                        return None;
                    }
                }
            }
            for g in e.group.generator_names() {
                *gens.entry(g).or_insert(0) -= 1;
            }
            for r in e.group.relator_strings() {
                *rels.entry(r).or_insert(0) -= 1;
            }
        }
        gens.retain(|_, v| *v != 0);
        rels.retain(|_, v| *v != 0);
        Some((gens, rels))
    }
}

/// Invariant factors and free rank of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    /// Orders of the finite cyclic factors, each dividing the next.
    pub torsion: Vec<u64>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            n => parts.push(format!("ℤ{}", superscript(n as i64))),
        }
        let mut grouped: Vec<(u64, usize)> = Vec::new();
        for &t in &self.torsion {
            match grouped.last_mut() {
                Some((o, c)) if *o == t => *c += 1,
                _ => grouped.push((t, 1)),
            }
        }
        for (o, c) in grouped {
            let base = format!("ℤ{}", subscript(o as u32));
            parts.push(if c == 1 { base } else { format!("{base}{}", superscript(c as i64)) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

pub fn abelianize_flat(pres: &Presentation) -> Abelianization {
    let n = pres.generators.len();
    let rows: Vec<Vec<i64>> = pres
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0; n];
            for l in r.letters() {
                row[l.gen.0 as usize] += l.sign();
            }
            row
        })
        .collect();
    let factors = invariant_factors(&rows);
    Abelianization {
        free_rank: n - factors.len(),
        torsion: factors.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect(),
    }
}

pub fn abelianize_presentation(pres: &GroupPresentation) -> Abelianization {
    abelianize_flat(&pres.flatten())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Gap,
}

fn render_runs(letters: &[Letter], names: &[String], format: Format) -> String {
    let parts: Vec<String> = runs(letters)
        .into_iter()
        .map(|(l, k)| {
            let name = &names[l.gen.0 as usize];
            let exp = if l.inverse { -(k as i64) } else { k as i64 };
            match (format, exp) {
                (_, 1) => name.clone(),
                (Format::Gap, e) => format!("{name}^{e}"),
                (_, e) => format!("{name}{}", superscript(e)),
            }
        })
        .collect();
    match format {
        Format::Gap => parts.join("*"),
        _ => parts.concat(),
    }
}

/// Renders a relator, writing a proper power of a word of length ≥ 2 as
/// `(uv)ᵏ`.
pub fn render_word(w: &Word, generators: &[Generator], format: Format) -> String {
    let names: Vec<String> = generators
        .iter()
        .map(|g| match format {
            Format::Gap => g.ascii.clone(),
            _ => g.name.clone(),
        })
        .collect();
    let s = w.letters();
    let n = s.len();
    let period = (2..n).find(|&d| n.is_multiple_of(d) && (d..n).all(|i| s[i] == s[i - d]));
    match period {
        Some(d) if runs(&s[..d]).len() > 1 => {
            let inner = render_runs(&s[..d], &names, format);
            match format {
                Format::Gap => format!("({inner})^{}", n / d),
                _ => format!("({inner}){}", superscript((n / d) as i64)),
            }
        }
        _ if n == 0 => "1".to_string(),
        _ => render_runs(s, &names, format),
    }
}

fn render_summand(p: &Presentation) -> String {
    let gens = p.generator_names().join(", ");
    if p.relators.is_empty() {
        format!("⟨{gens}⟩")
    } else {
        format!("⟨{gens} | {}⟩", p.relator_strings().join(", "))
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(render_summand).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Presentation", 2)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("relators", &self.relator_strings())?;
        st.end()
    }
}

impl Serialize for GroupPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GroupPresentation", 5)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("generators", &self.generator_names())?;
        st.serialize_field("relators", &self.relator_strings())?;
        st.serialize_field("summands", &self.summands)?;
        st.end()
    }
}

struct Images<'a> {
    edge: &'a GroupPresentation,
    images: &'a [Word],
    factor: &'a GroupPresentation,
}

impl Serialize for Images<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let flat = self.factor.flatten();
        let mut m = s.serialize_map(Some(self.images.len()))?;
        for (g, w) in self.edge.generators().zip(self.images) {
            m.serialize_entry(&g.name, &render_word(w, &flat.generators, Format::Text))?;
        }
        m.end()
    }
}

impl Serialize for AmalgamDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct EdgeOut<'a> {
            label: &'a str,
            group: &'a GroupPresentation,
            between: (&'a str, &'a str),
            left_inclusion: Images<'a>,
            right_inclusion: Images<'a>,
        }
        let edges: Vec<EdgeOut> = self
            .edges
            .iter()
            .map(|e| {
                let (l, r) = (&self.factors[e.between.0], &self.factors[e.between.1]);
                EdgeOut {
                    label: &e.label,
                    group: &e.group,
                    between: (&l.label, &r.label),
                    left_inclusion: Images {
                        edge: &e.group,
                        images: &e.left_images,
                        factor: l,
                    },
                    right_inclusion: Images {
                        edge: &e.group,
                        images: &e.right_images,
                        factor: r,
                    },
                }
            })
            .collect();
        let mut st = s.serialize_struct("AmalgamDecomposition", 3)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("factors", &self.factors)?;
        st.serialize_field("amalgamating_subgroups", &edges)?;
        st.end()
    }
}

impl fmt::Display for AmalgamDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut chain = self.factors[0].label.clone();
        for e in &self.edges {
            chain.push_str(&format!(" *_{{{}}} {}", e.label, self.factors[e.between.1].label));
        }
        writeln!(f, "G = {chain}")?;
        for g in &self.factors {
            writeln!(f, "  {} = {g}", g.label)?;
        }
        for e in &self.edges {
            let (l, r) = (&self.factors[e.between.0], &self.factors[e.between.1]);
            let (lf, rf) = (l.flatten(), r.flatten());
            let maps: Vec<String> = e
                .group
                .generators()
                .zip(e.left_images.iter().zip(&e.right_images))
                .map(|(g, (a, b))| {
                    format!(
                        "{} ↦ {} in {}, {} in {}",
                        g.name,
                        render_word(a, &lf.generators, Format::Text),
                        l.label,
                        render_word(b, &rf.generators, Format::Text),
                        r.label
                    )
                })
                .collect();
            writeln!(f, "  {} = {}  ({})", e.label, e.group, maps.join("; "))?;
        }
        Ok(())
    }
}

/// GAP script: a free group on the ASCII names and the flattened relator
/// list.
pub fn render_gap(pres: &GroupPresentation) -> String {
    let flat = pres.flatten();
    render_gap_flat(&flat)
}

pub fn render_gap_flat(flat: &Presentation) -> String {
    let names: Vec<String> = flat.generators.iter().map(|g| format!("\"{}\"", g.ascii)).collect();
    let rels: Vec<String> = flat
        .relators
        .iter()
        .map(|r| render_word(r, &flat.generators, Format::Gap))
        .collect();
    format!(
        "F := FreeGroup({});; AssignGeneratorVariables(F);;\nG := F / [{}];;\n",
        names.join(", "),
        rels.join(", ")
    )
}

pub fn render(pres: &GroupPresentation, format: Format) -> String {
    match format {
        Format::Text => format!("{pres}\n"),
        Format::Json => serde_json::to_string_pretty(pres).expect("serializable") + "\n",
        Format::Gap => render_gap(pres),
    }
}

pub fn render_amalgam(am: &AmalgamDecomposition, format: Format) -> String {
    match format {
        Format::Text => am.to_string(),
        Format::Json => serde_json::to_string_pretty(am).expect("serializable") + "\n",
        Format::Gap => render_gap_flat(&am.flatten()),
    }
}
