//! Per-`(p, q)` reports and the parameter sweeps that machine-check the
//! structural identities.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;
use std::thread;

use serde::Serialize;

use crate::classify::{classify, ComplexStructureReport};
use crate::error::{Error, Result};
use crate::farey::{nonconnectivity_witness, FareyLabel, ReplacementTrace, StepTag};
use crate::presentation::{
    abelianize_presentation, amalgam_decomposition, goeritz_presentation, presentation_case,
    Abelianization, AmalgamDecomposition, GroupPresentation, PresentationCase,
};
use crate::primitivity::{
    is_primitive_positive, is_primitive_whitehead, nonprimitivity_filter, FilterOutcome,
};
use crate::sequence::{make_params, parameter_grid, pq_sequence, PqParams, PqSequence, SequenceClass};
use crate::shell::{build_shell, Shell, ShellKind};
use crate::word::{cyclic_reduce, Gen, Letter, Word};

#[derive(Clone, Debug, Serialize)]
pub struct SequenceRow {
    pub j: u64,
    pub word: Word,
    pub class: SequenceClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceSummary {
    pub primitive_indices: BTreeSet<u64>,
    pub symmetric: bool,
    pub rows: Vec<SequenceRow>,
}

impl SequenceSummary {
    pub fn of(seq: &PqSequence) -> SequenceSummary {
        SequenceSummary {
            primitive_indices: seq.primitive_indices.clone(),
            symmetric: seq.symmetry_failures().is_empty(),
            rows: seq
                .words
                .iter()
                .enumerate()
                .map(|(j, w)| SequenceRow {
                    j: j as u64,
                    word: w.clone(),
                    class: seq.class_of(j as u64),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FullReport {
    pub params: PqParams,
    pub homeomorphism_class: BTreeSet<u64>,
    pub sequence: SequenceSummary,
    pub shells: Vec<Shell>,
    pub structure: ComplexStructureReport,
    pub witness: Option<ReplacementTrace>,
    pub presentation_case: Option<PresentationCase>,
    pub presentation: Option<GroupPresentation>,
    pub abelianization: Option<Abelianization>,
    pub amalgam: Option<AmalgamDecomposition>,
}

pub fn report(p: i64, q: i64) -> Result<FullReport> {
    let params = make_params(p, q)?;
    let seq = pq_sequence(params);
    let presentation = goeritz_presentation(&params).ok();
    Ok(FullReport {
        params,
        homeomorphism_class: params.homeomorphism_class(),
        sequence: SequenceSummary::of(&seq),
        shells: ShellKind::ALL
            .iter()
            .map(|&k| build_shell(params, k))
            .collect(),
        structure: classify(params),
        witness: nonconnectivity_witness(params).ok(),
        presentation_case: presentation_case(&params).ok(),
        abelianization: presentation.as_ref().map(abelianize_presentation),
        presentation,
        amalgam: amalgam_decomposition(&params).ok(),
    })
}

impl FullReport {
    pub fn to_text(&self) -> String {
        let pr = &self.params;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "L({},{})  q' = {}  r = {}  m = {}  equivalent q: {:?}",
            pr.p, pr.q, pr.q_prime, pr.r, pr.m, self.homeomorphism_class
        );
        let _ = writeln!(
            out,
            "(p,q)-sequence primitive indices: {:?}  symmetric: {}",
            self.sequence.primitive_indices, self.sequence.symmetric
        );
        out.push('\n');
        out.push_str(&render_structure(&self.structure));
        if let Some(w) = &self.witness {
            out.push('\n');
            out.push_str(&render_witness(w));
        }
        if let (Some(p), Some(case)) = (&self.presentation, self.presentation_case) {
            let _ = writeln!(out, "\nGoeritz group ({}):\n  {p}", case.clause());
            if let Some(ab) = &self.abelianization {
                let _ = writeln!(out, "  abelianization: {ab}");
            }
        }
        if let Some(am) = &self.amalgam {
            let _ = writeln!(out, "\n{am}");
        }
        out
    }
}

pub fn render_sequence(seq: &PqSequence, verified: Option<&[bool]>) -> String {
    let mut out = String::new();
    let pr = &seq.params;
    let _ = writeln!(out, "(p,q)-sequence of L({},{}), q' = {}", pr.p, pr.q, pr.q_prime);
    for (j, w) in seq.words.iter().enumerate() {
        let class = match seq.class_of(j as u64) {
            SequenceClass::Primitive => "primitive",
            SequenceClass::SemiprimitiveEndpoint => "semiprimitive-endpoint",
            SequenceClass::Other => "other",
        };
        let _ = write!(out, "w{j:<3} {w}  {class}");
        if let Some(v) = verified {
            let agree = v[j] == (seq.class_of(j as u64) == SequenceClass::Primitive);
            let verdict = if v[j] { "primitive" } else { "not primitive" };
            let _ = write!(out, "  oracle: {verdict}{}", if agree { "" } else { "  MISMATCH" });
        }
        out.push('\n');
    }
    let _ = writeln!(out, "primitive indices: {:?}", seq.primitive_indices);
    out
}

pub fn render_shell(shell: &Shell) -> String {
    let pr = &shell.params;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "({}, {})-shell of L({},{}) (slope {})",
        pr.p,
        shell.slope,
        pr.p,
        pr.q,
        shell.kind.label()
    );
    let _ = writeln!(out, "{:>5}  {:<14} |E0∩Ej| |Ej∩Ep|  word", "j", "class");
    for e in &shell.entries {
        let class = format!("{:?}", e.disk_class).to_lowercase();
        let to_start = match e.index {
            0 => "-".to_string(),
            j => (j - 1).to_string(),
        };
        let to_end = match pr.p - e.index {
            0 => "-".to_string(),
            k => (k - 1).to_string(),
        };
        let _ = writeln!(
            out,
            "{:>5}  {:<14} {:>7} {:>7}  {}",
            e.index,
            class,
            to_start,
            to_end,
            e.boundary_word.to_caret()
        );
    }
    out
}

pub fn render_witness(tr: &ReplacementTrace) -> String {
    let mut out = String::new();
    let pr = &tr.params;
    let cf: Vec<String> = tr.cf.iter().map(u64::to_string).collect();
    let cf = match cf.split_first() {
        Some((h, [])) => format!("[{h}]"),
        Some((h, rest)) => format!("[{h}; {}]", rest.join(", ")),
        None => "[]".into(),
    };
    let _ = writeln!(
        out,
        "non-connectivity witness for L({},{}): s = {}, t = {}, s/(t+1) = {}/{} = {cf}",
        pr.p,
        pr.q,
        tr.s,
        tr.t,
        tr.s,
        tr.t + 1
    );
    let _ = writeln!(
        out,
        "{:>4} {:>5} {:>8} {:>5} {:>5}  {:<14} word",
        "step", "side", "fraction", "d", "e", "oracle"
    );
    for (i, d) in tr.disks.iter().enumerate() {
        let side = match d.step {
            StepTag::Seed => "seed",
            StepTag::L => "L",
            StepTag::R => "R",
        };
        let verdict = if is_primitive_whitehead(&d.word) {
            "primitive"
        } else {
            "not primitive"
        };
        let _ = writeln!(
            out,
            "{:>4} {:>5} {:>8} {:>5} {:>5}  {:<14} {}",
            match i {
                0 => 0,
                1 => -1,
                i => i as i64 - 1,
            },
            side,
            d.label.fraction.to_string(),
            d.label.d,
            d.label.e,
            verdict,
            d.word.to_caret()
        );
    }
    out
}

pub fn render_structure(r: &ComplexStructureReport) -> String {
    let mut out = String::new();
    let pr = &r.params;
    let _ = writeln!(out, "primitive disk complex of L({},{}): {} ({})", pr.p, pr.q, r.description, r.clause);
    let _ = writeln!(out, "  case: {:?}", r.case_tag);
    let _ = writeln!(out, "  connected: {}  dimension: {}", r.connected, r.dimension);
    let _ = writeln!(out, "  edge types: {:?}  simplex types: {:?}", r.edge_types_present, r.simplex_types_present);
    let _ = writeln!(out, "  triple of pairwise disjoint primitive disks: {}", r.triple_exists);
    let _ = writeln!(
        out,
        "  every primitive pair has a common dual disk: {} (dual disks per pair: {})",
        r.common_dual_rule.q_is_one, r.common_dual_rule.dual_count
    );
    if let (Some(v), Some(e)) = (r.vertex_orbits, r.edge_orbits) {
        let _ = writeln!(out, "  vertex orbits: {v}  edge orbits: {e}  exchangeable: {:?}", r.exchangeable_edges);
        let _ = writeln!(out, "  quotient graph: {:?}", r.quotient_graph);
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    FourPrimitives,
    OzVsWhitehead,
    FilterSoundness,
    Witness,
    Symmetry,
    DispatchTotality,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::FourPrimitives,
        Check::OzVsWhitehead,
        Check::FilterSoundness,
        Check::Witness,
        Check::Symmetry,
        Check::DispatchTotality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::FourPrimitives => "four-primitives",
            Check::OzVsWhitehead => "oz-vs-whitehead",
            Check::FilterSoundness => "filter-soundness",
            Check::Witness => "witness",
            Check::Symmetry => "symmetry",
            Check::DispatchTotality => "dispatch-totality",
        }
    }

    /// Default bound: `max_p` for parameter sweeps, word length for the
    /// word-level checks.
    pub fn default_bound(self) -> u64 {
        match self {
            Check::FourPrimitives | Check::Symmetry => 40,
            Check::OzVsWhitehead => 14,
            Check::FilterSoundness => 12,
            Check::Witness | Check::DispatchTotality => 60,
        }
    }

    pub fn is_word_level(self) -> bool {
        matches!(self, Check::OzVsWhitehead | Check::FilterSoundness)
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SweepFailure {
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub check: &'static str,
    pub range: String,
    pub cases: usize,
    pub failures: Vec<SweepFailure>,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Maps `f` over `items` on all available cores, keeping input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    })
}

fn failure(pr: &PqParams, detail: String) -> SweepFailure {
    SweepFailure {
        p: Some(pr.p),
        q: Some(pr.q),
        detail,
    }
}

/// Every freely reduced word over `{a, A, b, B}` of length `1..=max_len`.
pub fn reduced_words(a: Gen, b: Gen, max_len: usize) -> Vec<Word> {
    let alphabet = [Letter::pos(a), Letter::neg(a), Letter::pos(b), Letter::neg(b)];
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    let mut out = Vec::new();
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for w in &layer {
            for &l in &alphabet {
                if w.last().is_some_and(|&last| last.cancels(l)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| Word::reduce(v.iter().copied())));
        layer = next;
    }
    out
}

/// Every positive word over `{z, y}` of length `1..=max_len`.
pub fn positive_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        for code in 0u64..1 << n {
            out.push(Word::reduce((0..n).map(|i| {
                if code >> i & 1 == 1 {
                    Letter::pos(Gen::Z)
                } else {
                    Letter::pos(Gen::Y)
                }
            })));
        }
    }
    out
}

/// Failures of a witness trace: final exponent, oracle verdicts, closed
/// form, Farey path.
pub fn audit_witness(tr: &ReplacementTrace) -> Vec<String> {
    let pr = &tr.params;
    let mut bad = Vec::new();
    let last = tr.last();
    if last.label.e != pr.q as i64 + 1 {
        bad.push(format!("final e = {}, expected {}", last.label.e, pr.q + 1));
    }
    if last.label.fraction != tr.target() {
        bad.push(format!("trace ends at {}, expected {}", last.label.fraction, tr.target()));
    }
    if !is_primitive_whitehead(&last.word) {
        bad.push(format!("final word {} is not primitive", last.word.to_caret()));
    }
    for (name, idx) in [("D0", 0), ("D1", 2)] {
        if let Some(d) = tr.disks.get(idx) {
            if is_primitive_whitehead(&d.word) {
                bad.push(format!("{name} = {} is primitive", d.word.to_caret()));
            }
        }
    }
    for d in &tr.disks {
        let closed = FareyLabel::closed_form(d.label.fraction, pr);
        if closed != d.label || closed.word(pr.q) != d.word {
            bad.push(format!("label {} disagrees with the closed form", d.label.fraction));
        }
        if d.step != StepTag::Seed && d.label.e < 1 {
            bad.push(format!("label {} has e = {}", d.label.fraction, d.label.e));
        }
        let (l, r) = d.pair_after;
        if !l.is_farey_neighbor(r) {
            bad.push(format!("pair ({l}, {r}) is not a Farey edge"));
        }
    }
    for w in tr.disks.windows(2).skip(1) {
        let (l, r) = w[0].pair_after;
        if w[1].label.fraction != l.mediant(r) {
            bad.push(format!("{} is not the mediant of ({l}, {r})", w[1].label.fraction));
        }
    }
    bad
}

pub fn sweep(check: Check, bound: Option<u64>) -> SweepResult {
    let bound = bound.unwrap_or(check.default_bound());
    let grid = parameter_grid(bound);
    let (cases, mut failures): (usize, Vec<SweepFailure>) = match check {
        Check::FourPrimitives => {
            let f = par_map(&grid, |pr| {
                let seq = pq_sequence(*pr);
                let found: BTreeSet<u64> = (0..=pr.p)
                    .filter(|&j| is_primitive_whitehead(&seq.words[j as usize]))
                    .collect();
                (found != seq.primitive_indices).then(|| {
                    failure(pr, format!("oracle {:?} vs {:?}", found, seq.primitive_indices))
                })
            });
            (grid.len(), f.into_iter().flatten().collect())
        }
        Check::Symmetry => {
            let f = grid
                .iter()
                .filter_map(|pr| {
                    let bad = pq_sequence(*pr).symmetry_failures();
                    (!bad.is_empty()).then(|| failure(pr, format!("indices {bad:?}")))
                })
                .collect();
            (grid.len(), f)
        }
        Check::Witness => {
            let targets: Vec<PqParams> = grid.iter().copied().filter(|p| !p.connected).collect();
            let f = par_map(&targets, |pr| match nonconnectivity_witness(*pr) {
                Ok(tr) => audit_witness(&tr)
                    .into_iter()
                    .map(|d| failure(pr, d))
                    .collect(),
                Err(e) => vec![failure(pr, e.to_string())],
            });
            (targets.len(), f.into_iter().flatten().collect())
        }
        Check::DispatchTotality => {
            let f = grid
                .iter()
                .filter_map(|pr| {
                    let connected = classify(*pr).connected;
                    let presented = goeritz_presentation(pr).is_ok();
                    let rejected = matches!(nonconnectivity_witness(*pr), Err(Error::Connected { .. }));
                    let q2 = pr.q_squared_is_unit();
                    let overlaps = [pr.p == 5, (pr.p == 2 * pr.q + 1 && pr.q >= 3) || (pr.p > 5 && pr.q == 2), q2]
                        .iter()
                        .filter(|&&b| b)
                        .count();
                    if connected != presented || connected != rejected {
                        Some(failure(
                            pr,
                            format!("connected {connected}, presentation {presented}, witness rejected {rejected}"),
                        ))
                    } else if connected && pr.q > 1 && overlaps > 1 {
                        Some(failure(pr, "presentation cases overlap".into()))
                    } else {
                        None
                    }
                })
                .collect();
            (grid.len(), f)
        }
        Check::OzVsWhitehead => {
            let words = positive_words(bound as usize);
            let f = par_map(&words, |w| {
                let c = cyclic_reduce(w);
                let oz = is_primitive_positive(&c).expect("positive word");
                let wh = is_primitive_whitehead(w);
                (oz != wh).then(|| SweepFailure {
                    p: None,
                    q: None,
                    detail: format!("{w}: characterization {oz}, oracle {wh}"),
                })
            });
            (words.len(), f.into_iter().flatten().collect())
        }
        Check::FilterSoundness => {
            let words = reduced_words(Gen::X, Gen::Y, bound as usize);
            let f = par_map(&words, |w| {
                let v = nonprimitivity_filter(w);
                (v.outcome == FilterOutcome::NotPrimitive && is_primitive_whitehead(w)).then(|| {
                    SweepFailure {
                        p: None,
                        q: None,
                        detail: format!("{w} flagged but primitive"),
                    }
                })
            });
            (words.len(), f.into_iter().flatten().collect())
        }
    };
    failures.sort();
    SweepResult {
        check: check.name(),
        range: if check.is_word_level() {
            format!("word length ≤ {bound}")
        } else {
            format!("p ≤ {bound}")
        },
        cases,
        failures,
    }
}
