//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Expected values are computed here from first principles (explicit
//! residue patterns, closed-form labels, hand-written tables) and compared
//! with the library and the CLI. The Whitehead reduction serves as the
//! primitivity oracle throughout.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::Instant;

use lensprim::classify::{classify, CaseTag};
use lensprim::farey::nonconnectivity_witness;
use lensprim::presentation::{abelianize_presentation, amalgam_decomposition, goeritz_presentation};
use lensprim::primitivity::{
    is_primitive_positive, is_primitive_whitehead, nonprimitivity_filter, FilterOutcome,
};
use lensprim::sequence::make_params;
use lensprim::word::{cyclic_reduce, Gen, Letter, Word};
use lensprim::Error;

const BIN: &str = env!("CARGO_BIN_EXE_lensprim");

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn grid(max_p: u64) -> Vec<(u64, u64)> {
    (2..=max_p)
        .flat_map(|p| (1..=p / 2).filter(move |&q| gcd(p, q) == 1).map(move |q| (p, q)))
        .collect()
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

struct Outcome {
    failures: Vec<String>,
    /// Failures predicted by the analysis of an identity that does not hold.
    expected: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            failures: Vec::new(),
            expected: Vec::new(),
        }
    }
}

fn c1_sequence_snapshot() -> Outcome {
    let mut o = Outcome::new();
    let expected = [
        "yyyyyyyy", "zyyyyyyy", "zyyzyyyy", "zyyzyyzy", "zzyzyyzy", "zzyzzyzy", "zzyzzyzz",
        "zzzzzyzz", "zzzzzzzz",
    ];
    let (code, out, _) = run(&["sequence", "8", "3"]);
    if code != 0 {
        o.failures.push(format!("exit code {code}"));
    }
    let rows: Vec<Vec<&str>> = out
        .lines()
        .filter(|l| l.starts_with('w'))
        .map(|l| l.split_whitespace().collect())
        .collect();
    if rows.len() != 9 {
        o.failures.push(format!("{} rows", rows.len()));
    }
    let mut primitive = BTreeSet::new();
    for (j, row) in rows.iter().enumerate() {
        if row.get(1) != expected.get(j) {
            o.failures.push(format!("w{j} = {:?}", row.get(1)));
        }
        if row.get(2) == Some(&"primitive") {
            primitive.insert(j);
        }
    }
    if primitive != BTreeSet::from([1, 3, 5, 7]) {
        o.failures.push(format!("primitive marks {primitive:?}"));
    }
    o
}

/// `w_j` straight from the residue pattern: position `i` is `z` iff
/// `i ≡ 1 + kq (mod p)` for some `0 ≤ k < j`.
fn residue_word(p: u64, q: u64, j: u64) -> Word {
    let zs: BTreeSet<u64> = (0..j).map(|k| (1 + k * q) % p).collect();
    Word::reduce((1..=p).map(|i| {
        if zs.contains(&(i % p)) {
            Letter::pos(Gen::Z)
        } else {
            Letter::pos(Gen::Y)
        }
    }))
}

fn c2_four_primitives() -> Outcome {
    let mut o = Outcome::new();
    for (p, q) in grid(40) {
        let qp = (1..=p / 2).find(|k| [1, p - 1].contains(&(q * k % p))).unwrap();
        let expect: BTreeSet<u64> = [1, qp, p - qp, p - 1].into();
        let found: BTreeSet<u64> = (0..=p)
            .filter(|&j| is_primitive_whitehead(&residue_word(p, q, j)))
            .collect();
        if found != expect {
            o.failures.push(format!("({p},{q}): {found:?} vs {expect:?}"));
        }
    }
    o
}

fn c3_oz_vs_oracle() -> Outcome {
    let mut o = Outcome::new();
    for n in 1..=14u32 {
        for code in 0u32..1 << n {
            let w = Word::reduce((0..n).map(|i| {
                Letter::pos(if code >> i & 1 == 1 { Gen::Z } else { Gen::Y })
            }));
            let oz = is_primitive_positive(&cyclic_reduce(&w)).unwrap();
            if oz != is_primitive_whitehead(&w) {
                o.failures.push(format!("{w}"));
            }
        }
    }
    o
}

fn c4_filter_soundness() -> Outcome {
    let mut o = Outcome::new();
    let alphabet = [
        Letter::pos(Gen::X),
        Letter::neg(Gen::X),
        Letter::pos(Gen::Y),
        Letter::neg(Gen::Y),
    ];
    // depth-first over freely reduced words; unreduced strings reduce to
    // shorter words that are visited anyway
    let mut stack: Vec<Vec<Letter>> = alphabet.iter().map(|&l| vec![l]).collect();
    let mut checked = 0usize;
    while let Some(v) = stack.pop() {
        let w = Word::reduce(v.iter().copied());
        checked += 1;
        if nonprimitivity_filter(&w).outcome == FilterOutcome::NotPrimitive
            && is_primitive_whitehead(&w)
        {
            o.failures.push(format!("{w}"));
        }
        if v.len() < 12 {
            for &l in &alphabet {
                if !v.last().unwrap().cancels(l) {
                    let mut next = v.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
    }
    let expected_count: usize = (1..=12).map(|n| 4 * 3usize.pow(n - 1)).sum();
    if checked != expected_count {
        o.failures.push(format!("visited {checked} words"));
    }
    o
}

fn label_word(q: u64, d: i64, e: i64) -> Word {
    let unit = word(&format!("x y^{q}"));
    unit.pow(d).concat(&word(&format!("x y^{e}")))
}

fn c5_witness_suite() -> Outcome {
    let mut o = Outcome::new();
    for (p, q) in grid(60) {
        let r = p % q;
        if q == 1 || r == 1 || r == q - 1 {
            continue;
        }
        let m = (p - r) / q;
        let tag = format!("({p},{q})");
        let tr = match nonconnectivity_witness(make_params(p as i64, q as i64).unwrap()) {
            Ok(tr) => tr,
            Err(e) => {
                o.failures.push(format!("{tag}: {e}"));
                continue;
            }
        };
        let s = (1..q).find(|s| s * r % q == 1).unwrap();
        let t1 = (s * r - 1) / q;
        if (tr.s, tr.t + 1) != (s, t1) {
            o.failures.push(format!("{tag}: s, t = {}, {}", tr.s, tr.t));
        }
        let last = tr.disks.last().unwrap();
        if last.label.e != q as i64 + 1 {
            o.failures.push(format!("{tag}: final e = {}", last.label.e));
        }
        if !is_primitive_whitehead(&last.word) {
            o.failures.push(format!("{tag}: final word not primitive"));
        }
        for idx in [0, 2] {
            if is_primitive_whitehead(&tr.disks[idx].word) {
                o.failures.push(format!("{tag}: disk {idx} primitive"));
            }
        }
        let mut pair = ((1u64, 0u64), (0u64, 1u64));
        for (i, d) in tr.disks.iter().enumerate() {
            let (a, b) = (d.label.fraction.a, d.label.fraction.b);
            let dd = (a * m + b) as i64 - 1;
            let ee = (a * r) as i64 - (b as i64 - 1) * q as i64;
            if d.word != label_word(q, dd, ee) {
                o.failures.push(format!("{tag}: label {a}/{b} word {}", d.word.to_caret()));
            }
            if i >= 2 {
                let med = (pair.0 .0 + pair.1 .0, pair.0 .1 + pair.1 .1);
                if (a, b) != med {
                    o.failures.push(format!("{tag}: {a}/{b} is not a mediant"));
                }
                // replace whichever side the trace reports
                let (l, rr) = d.pair_after;
                pair = ((l.a, l.b), (rr.a, rr.b));
                let det = (pair.0 .0 * pair.1 .1) as i64 - (pair.1 .0 * pair.0 .1) as i64;
                if det.abs() != 1 || !(pair.0 == med || pair.1 == med) {
                    o.failures.push(format!("{tag}: pair after {a}/{b} is not a Farey edge"));
                }
            }
        }
        let (a, b) = (last.label.fraction.a, last.label.fraction.b);
        if (a, b) != (s, t1) {
            o.failures.push(format!("{tag}: ends at {a}/{b}"));
        }
    }
    o
}

fn multiset(items: impl IntoIterator<Item = String>) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for i in items {
        *m.entry(i).or_insert(0) += 1;
    }
    m
}

fn c6_presentation_table() -> Outcome {
    let mut o = Outcome::new();
    let a = ("α", "α²");
    let table: [((u64, u64), &[&str], &[&str]); 10] = [
        ((2, 1), &["β", "ρ", "γ"], &["ρ⁴", "γ²", "(γρ)²", "ρ²βρ²β⁻¹"]),
        ((3, 1), &[a.0, "β", "δ", "γ"], &[a.1, "δ³", "γ²", "(γδ)²"]),
        ((4, 1), &[a.0, "β", "γ", "σ"], &[a.1, "γ²", "σ²"]),
        ((7, 1), &[a.0, "β", "γ", "σ"], &[a.1, "γ²", "σ²"]),
        ((5, 2), &[a.0, "β₁", "β₂", "γ₁", "γ₂"], &[a.1, "γ₁²", "γ₂²"]),
        ((7, 2), &[a.0, "β₁", "β₂", "γ₁", "γ₂", "σ"], &[a.1, "γ₁²", "γ₂²", "σ²"]),
        ((9, 2), &[a.0, "β₁", "β₂", "γ₁", "γ₂", "σ"], &[a.1, "γ₁²", "γ₂²", "σ²"]),
        ((7, 3), &[a.0, "β₁", "β₂", "γ₁", "γ₂", "σ"], &[a.1, "γ₁²", "γ₂²", "σ²"]),
        ((8, 3), &[a.0, "β", "γ", "σ₁", "σ₂"], &[a.1, "γ²", "σ₁²", "σ₂²"]),
        (
            (10, 3),
            &[a.0, "β₁", "β₂", "γ₁", "γ₂", "σ₁", "σ₂"],
            &[a.1, "γ₁²", "γ₂²", "σ₁²", "σ₂²"],
        ),
    ];
    for ((p, q), gens, rels) in table {
        let (code, out, err) = run(&["presentation", &p.to_string(), &q.to_string(), "--json"]);
        if code != 0 {
            o.failures.push(format!("({p},{q}): exit {code}: {err}"));
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let strings = |key: &str| {
            v["presentation"][key]
                .as_array()
                .unwrap()
                .iter()
                .map(|s| s.as_str().unwrap().to_string())
                .collect::<Vec<_>>()
        };
        let want_g = multiset(gens.iter().map(|s| s.to_string()));
        let want_r = multiset(rels.iter().map(|s| s.to_string()));
        if multiset(strings("generators")) != want_g {
            o.failures.push(format!("({p},{q}) generators {:?}", strings("generators")));
        }
        if multiset(strings("relators")) != want_r {
            o.failures.push(format!("({p},{q}) relators {:?}", strings("relators")));
        }
    }
    let (code, _, err) = run(&["presentation", "12", "5"]);
    if code != 2 || !err.contains("not covered") || !err.contains("p ≡ ± 1 (mod q)") {
        o.failures.push(format!("(12,5): exit {code}, stderr {err:?}"));
    }
    o
}

fn c7_structure() -> Outcome {
    let mut o = Outcome::new();
    for (p, q) in grid(60) {
        let pr = make_params(p as i64, q as i64).unwrap();
        let tag = format!("({p},{q})");
        let r = p % q;
        let connected = q == 1 || r == 1 || r == q - 1;
        let rep = classify(pr);
        let presented = goeritz_presentation(&pr).ok();
        let rejected = matches!(nonconnectivity_witness(pr), Err(Error::Connected { .. }));
        if rep.connected != connected || presented.is_some() != connected || rejected != connected {
            o.failures.push(format!(
                "{tag}: connected {connected}, classify {}, presentation {}, witness rejected {rejected}",
                rep.connected,
                presented.is_some()
            ));
        }
        let Some(pres) = presented else { continue };
        if (rep.dimension == 2) != (q == 2 || p == 2 * q + 1) {
            o.failures.push(format!("{tag}: dimension {}", rep.dimension));
        }
        let sigmas = pres.generator_names().iter().filter(|n| n.starts_with('σ')).count();
        let exchangeable = rep.exchangeable_edges.iter().filter(|&&e| e).count();
        if sigmas != exchangeable {
            let line = format!("{tag} {:?}: {sigmas} σ-generators, {exchangeable} exchangeable edge orbits", rep.case_tag);
            o.failures.push(line.clone());
            // the identity fails for L(2,1), L(3,1) and the 2-dimensional
            // cases, where the tree acted on is not the complex itself
            if matches!(rep.case_tag, CaseTag::T1a | CaseTag::T2a | CaseTag::T2b | CaseTag::T2c) {
                o.expected.push(line);
            }
        }
        let am = amalgam_decomposition(&pr).unwrap();
        let want = match rep.case_tag {
            CaseTag::T2c => 3,
            CaseTag::T1c if q * q % p == 1 => 3,
            CaseTag::T1c => 4,
            _ => 2,
        };
        if am.factors.len() != want || rep.quotient_graph.vertex_count() != want {
            o.failures.push(format!(
                "{tag}: {} factors, quotient {:?}",
                am.factors.len(),
                rep.quotient_graph
            ));
        }
    }
    o
}

fn c8_abelianization() -> Outcome {
    let mut o = Outcome::new();
    for ((p, q), free, torsion) in [((2, 1), 1, vec![2, 2]), ((5, 2), 2, vec![2, 2, 2]), ((8, 3), 1, vec![2, 2, 2, 2])] {
        let pres = goeritz_presentation(&make_params(p, q).unwrap()).unwrap();
        let ab = abelianize_presentation(&pres);
        if ab.free_rank != free || ab.torsion != torsion {
            o.failures.push(format!("({p},{q}): {ab}"));
        }
    }
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 (8,3)-sequence snapshot", c1_sequence_snapshot),
        ("2 four-primitives sweep, p ≤ 40", c2_four_primitives),
        ("3 positive characterization vs oracle, length ≤ 14", c3_oz_vs_oracle),
        ("4 filter soundness, length ≤ 12", c4_filter_soundness),
        ("5 witness suite, p ≤ 60", c5_witness_suite),
        ("6 presentation table snapshot", c6_presentation_table),
        ("7 structural cross-consistency, p ≤ 60", c7_structure),
        ("8 abelianizations", c8_abelianization),
    ];
    let mut unexpected = false;
    for (name, check) in criteria {
        let start = Instant::now();
        let out = check();
        let secs = start.elapsed().as_secs_f64();
        let status = if out.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {name}: {status} ({secs:.1}s)");
        for f in out.failures.iter().take(20) {
            let mark = if out.expected.contains(f) { "known" } else { "new" };
            println!("    [{mark}] {f}");
        }
        if out.failures.len() > 20 {
            println!("    … {} failures in total", out.failures.len());
        }
        unexpected |= out.failures.iter().any(|f| !out.expected.contains(f));
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
