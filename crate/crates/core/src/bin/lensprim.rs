use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lensprim::classify::classify;
use lensprim::farey::nonconnectivity_witness;
use lensprim::presentation::{
    abelianize_presentation, amalgam_decomposition, goeritz_presentation, presentation_case,
    render, render_amalgam, Format,
};
use lensprim::primitivity::{decide, is_primitive_whitehead, Method, Verdict};
use lensprim::report::{
    render_sequence, render_shell, render_structure, render_witness, report, sweep, Check,
};
use lensprim::sequence::{make_params, pq_sequence, PqParams};
use lensprim::shell::{build_shell, ShellKind};
use lensprim::{Error, Word};

#[derive(Parser)]
#[command(name = "lensprim", version, about = "Primitive disks and Goeritz groups of lens spaces")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Oz,
    Whitehead,
    Filter,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Gap,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a word is primitive in the free group of rank 2.
    Primitive {
        word: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Print the Whitehead automorphism chain.
        #[arg(long)]
        trace: bool,
    },
    /// The (p,q)-sequence w_0 … w_p.
    Sequence {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        /// Run the Whitehead oracle on every word.
        #[arg(long)]
        verify: bool,
    },
    /// A shell of disks around a primitive disk.
    Shell {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        /// Slope: q, pq (p−q), q2 (q′) or pq2 (p−q′).
        #[arg(long, default_value = "q")]
        kind: ShellKind,
    },
    /// Replacement trace reaching a primitive disk in another component.
    Witness {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Structure of the primitive disk complex.
    Classify {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Presentation of the genus-2 Goeritz group.
    Presentation {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Show the amalgamated product decomposition.
        #[arg(long)]
        amalgam: bool,
        /// Show the abelianization.
        #[arg(long)]
        abelianization: bool,
    },
    /// Everything above for one lens space.
    Report {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Run a verification sweep (or `all`).
    Sweep {
        check: String,
        /// Largest p, or largest word length for word-level checks.
        #[arg(long)]
        max_p: Option<u64>,
    },
}

enum Failure {
    Validation(Error),
    Verdict,
    Sweep,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Validation(e)
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn params(p: i64, q: i64) -> Result<PqParams, Failure> {
    Ok(make_params(p, q)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Primitive { word, method, trace } => {
            let w: Word = word.parse().map_err(Error::from)?;
            let method = match method {
                MethodArg::Auto => Method::Auto,
                MethodArg::Oz => Method::Oz,
                MethodArg::Whitehead => Method::Whitehead,
                MethodArg::Filter => Method::Filter,
            };
            let mut d = decide(&w, method)?;
            if trace && d.trace.is_none() {
                d.trace = lensprim::primitivity::whitehead_trace(&w).ok();
            }
            emit(json, &d, || {
                let verdict = match d.verdict {
                    Verdict::Primitive => "primitive",
                    Verdict::NotPrimitive => "not primitive",
                    Verdict::Inconclusive => "inconclusive",
                };
                let mut s = format!("{}: {verdict} (by {:?})\n", d.cyclic, d.method);
                if let Some(wit) = d.filter.as_ref().and_then(|f| f.witness.as_ref()) {
                    s += &format!(
                        "  filter pattern {:?} in {} (inverted {}, flipped {} {})\n",
                        wit.pattern,
                        wit.normalized,
                        wit.orientation.inverted,
                        wit.orientation.flip_first,
                        wit.orientation.flip_second
                    );
                }
                if trace {
                    if let Some(t) = &d.trace {
                        s += &format!("  start {}\n", t.start);
                        for step in &t.steps {
                            let imgs: Vec<String> = step
                                .automorphism
                                .images
                                .iter()
                                .map(|(g, w)| format!("{} ↦ {w}", Word::generator(*g)))
                                .collect();
                            s += &format!("  {} → {}\n", imgs.join(", "), step.result);
                        }
                        s += &format!("  terminal length {}\n", t.terminal.len());
                    }
                }
                s
            });
            if d.verdict == Verdict::NotPrimitive {
                return Err(Failure::Verdict);
            }
        }
        Command::Sequence { p, q, verify } => {
            let seq = pq_sequence(params(p, q)?);
            let verdicts: Option<Vec<bool>> =
                verify.then(|| seq.words.iter().map(is_primitive_whitehead).collect());
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                seq: &'a lensprim::sequence::PqSequence,
                oracle: Option<&'a Vec<bool>>,
            }
            emit(
                json,
                &Out {
                    seq: &seq,
                    oracle: verdicts.as_ref(),
                },
                || render_sequence(&seq, verdicts.as_deref()),
            );
            if let Some(v) = &verdicts {
                let agree = (0..=seq.params.p)
                    .all(|j| v[j as usize] == seq.primitive_indices.contains(&j));
                if !agree {
                    return Err(Failure::Sweep);
                }
            }
        }
        Command::Shell { p, q, kind } => {
            let s = build_shell(params(p, q)?, kind);
            emit(json, &s, || render_shell(&s));
        }
        Command::Witness { p, q } => {
            let tr = nonconnectivity_witness(params(p, q)?)?;
            emit(json, &tr, || render_witness(&tr));
        }
        Command::Classify { p, q } => {
            let r = classify(params(p, q)?);
            emit(json, &r, || render_structure(&r));
        }
        Command::Presentation {
            p,
            q,
            format,
            amalgam,
            abelianization,
        } => {
            let pr = params(p, q)?;
            let pres = goeritz_presentation(&pr)?;
            let case = presentation_case(&pr)?;
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Gap => Format::Gap,
                FormatArg::Text if json => Format::Json,
                FormatArg::Text => Format::Text,
            };
            let am = if amalgam {
                Some(amalgam_decomposition(&pr)?)
            } else {
                None
            };
            let ab = abelianization.then(|| abelianize_presentation(&pres));
            if format == Format::Json {
                #[derive(Serialize)]
                struct Out<'a> {
                    params: PqParams,
                    clause: &'static str,
                    presentation: &'a lensprim::presentation::GroupPresentation,
                    amalgam: Option<&'a lensprim::presentation::AmalgamDecomposition>,
                    abelianization: Option<String>,
                }
                let out = Out {
                    params: pr,
                    clause: case.clause(),
                    presentation: &pres,
                    amalgam: am.as_ref(),
                    abelianization: ab.as_ref().map(|a| a.to_string()),
                };
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            } else {
                if format == Format::Text {
                    println!("{}  [{}]", pres, case.clause());
                } else {
                    print!("{}", render(&pres, format));
                }
                if let Some(am) = &am {
                    print!("{}", render_amalgam(am, format));
                }
                if let Some(ab) = &ab {
                    let prefix = if format == Format::Gap { "# " } else { "" };
                    println!("{prefix}abelianization: {ab}");
                }
            }
        }
        Command::Report { p, q } => {
            let r = report(p, q)?;
            emit(json, &r, || r.to_text());
        }
        Command::Sweep { check, max_p } => {
            let checks: Vec<Check> = if check == "all" {
                Check::ALL.to_vec()
            } else {
                vec![check.parse()?]
            };
            let results: Vec<_> = checks.into_iter().map(|c| sweep(c, max_p)).collect();
            emit(json, &results, || {
                let mut s = String::new();
                for r in &results {
                    let status = if r.passed() { "PASS" } else { "FAIL" };
                    s += &format!("{status} {} ({}, {} cases)\n", r.check, r.range, r.cases);
                    for f in &r.failures {
                        match (f.p, f.q) {
                            (Some(p), Some(q)) => s += &format!("  ({p},{q}): {}\n", f.detail),
                            _ => s += &format!("  {}\n", f.detail),
                        }
                    }
                }
                s
            });
            if results.iter().any(|r| !r.passed()) {
                return Err(Failure::Sweep);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Sweep) => ExitCode::from(3),
    }
}
