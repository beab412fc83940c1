use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use freegroup::text::{format_tuple, infer_rank};
use freegroup::verifier::{verify_basis_extension, verify_power_product, verify_witness_family};
use freegroup::whitehead::DEFAULT_MAX_STATES;
use freegroup::{
    abelian_det_filter, complete_to_basis, fold, format_word, is_basis, is_generating, parse_tuple,
    parse_word, random_chain, Certificate, Checked, CyclicWord, Error, Rank, SearchLimits, Syntax,
    Whitehead, Word, WordTuple,
};

#[derive(Parser, Debug)]
#[command(
    name = "freegroup",
    version,
    about = "Whitehead's algorithm and basis tests in free groups"
)]
struct Cli {
    /// Rank of the ambient free group; inferred from the input words when omitted.
    #[arg(long, global = true)]
    rank: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Letter syntax: a..z for generators, A..Z for inverses.
    #[arg(long, global = true)]
    shorthand: bool,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// State budget for breadth-first searches.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Freely reduce a word.
    Reduce { word: String },
    /// Cyclic reduction and canonical cyclic word.
    Cyclic { word: String },
    /// Whitehead length minimization with its certificate.
    Minimize { word: String },
    /// Decide whether a word is primitive.
    Primitive { word: String },
    /// Decide whether two words lie in the same automorphism orbit.
    #[command(name = "orbit-eq")]
    OrbitEq { first: String, second: String },
    /// Decide whether a semicolon-separated tuple is a basis.
    Basis {
        tuple: String,
        /// Also print the folded graph as an edge list.
        #[arg(long)]
        edges: bool,
    },
    /// Extend a primitive word to a verified basis.
    Complete { word: String },
    /// List all primitive cyclic words up to a length.
    EnumeratePrimitives {
        #[arg(long)]
        max_len: usize,
    },
    /// Check a claim about explicit families of words.
    Verify {
        #[command(subcommand)]
        claim: Claim,
    },
    /// Re-verify a certificate file.
    CheckCertificate { file: PathBuf },
    /// Print a reproducible random chain of Whitehead moves.
    RandomChain {
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Claim {
    /// a1^k1 ... am^km with every k > 1 is not primitive.
    #[command(name = "fact1.1")]
    PowerProduct {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<i64>,
    },
    /// The witness family g, b_1..b_n and its difference words.
    #[command(name = "thm2.3")]
    WitnessFamily,
    /// A primitive word extends to a basis.
    #[command(name = "thm2.1")]
    BasisExtension { word: String },
}

/// What a command produced: exit status plus both renderings.
struct Outcome {
    holds: bool,
    input: Value,
    result: Value,
    certificate: Option<Value>,
    text: String,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ResourceExhausted { .. } => 3,
        Error::Verification(_) | Error::Certificate(_) => 1,
        _ => 2,
    }
}

struct Context {
    syntax: Syntax,
    rank: Option<u32>,
    limits: SearchLimits,
    seed: u64,
}

impl Context {
    fn rank_for(&self, texts: &[&str]) -> Result<Rank, Error> {
        if let Some(n) = self.rank {
            return Rank::new(n);
        }
        let mut max = None;
        for t in texts {
            max = max.max(infer_rank(t, self.syntax)?);
        }
        match max {
            Some(n) => Rank::new(n),
            None => Err(Error::Usage("cannot infer the rank; pass --rank".into())),
        }
    }

    fn required_rank(&self) -> Result<Rank, Error> {
        match self.rank {
            Some(n) => Rank::new(n),
            None => Err(Error::Usage("--rank is required".into())),
        }
    }

    fn word(&self, text: &str) -> Result<Word, Error> {
        let rank = self.rank_for(&[text])?;
        parse_word(text, rank, self.syntax)
    }

    fn show(&self, w: &Word) -> String {
        format_word(w, self.syntax)
    }

    fn show_cyclic(&self, cw: &CyclicWord) -> String {
        format_word(&cw.to_word(), self.syntax)
    }
}

fn run(cli: &Cli, ctx: &Context) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Reduce { word } => {
            let w = ctx.word(word)?;
            Ok(Outcome {
                holds: true,
                input: json!(word),
                result: json!({ "word": ctx.show(&w), "length": w.len() }),
                certificate: None,
                text: ctx.show(&w),
            })
        }
        Command::Cyclic { word } => {
            let w = ctx.word(word)?;
            let red = w.cyclic_reduce();
            let core = ctx.show_cyclic(&red.core);
            let conj = ctx.show(&red.conjugator);
            Ok(Outcome {
                holds: true,
                input: json!(word),
                result: json!({
                    "core": core,
                    "conjugator": conj,
                    "rotation": red.rotation,
                    "cyclic_length": red.core.len(),
                }),
                certificate: None,
                text: format!(
                    "core: {core}\nconjugator: {conj}\nrotation: {}\ncyclic length: {}",
                    red.rotation,
                    red.core.len()
                ),
            })
        }
        Command::Minimize { word } => {
            let w = ctx.word(word)?;
            let res = Whitehead::new(w.rank()).minimize(&CyclicWord::of_word(&w))?;
            let cert = Certificate::minimization(&w, &res);
            let mut text = format!(
                "start: {} (length {})\n",
                ctx.show_cyclic(&res.start),
                res.start.len()
            );
            for s in &res.steps {
                text.push_str(&format!("  {} -> length {}\n", s.aut, s.length));
            }
            text.push_str(&format!(
                "minimal: {} (length {})",
                ctx.show_cyclic(&res.minimal),
                res.minimal.len()
            ));
            Ok(Outcome {
                holds: true,
                input: json!(word),
                result: json!({
                    "minimal": ctx.show_cyclic(&res.minimal),
                    "length": res.minimal.len(),
                    "steps": res.steps.len(),
                }),
                certificate: Some(serde_json::to_value(&cert).expect("serializable")),
                text,
            })
        }
        Command::Primitive { word } => {
            let w = ctx.word(word)?;
            let verdict = Whitehead::new(w.rank()).is_primitive(&w)?;
            let cert = Certificate::minimization(&w, &verdict.witness);
            Ok(Outcome {
                holds: verdict.primitive,
                input: json!(word),
                result: json!({
                    "primitive": verdict.primitive,
                    "minimal": ctx.show_cyclic(&verdict.witness.minimal),
                }),
                certificate: Some(serde_json::to_value(&cert).expect("serializable")),
                text: format!(
                    "{} (Whitehead-minimal form {})",
                    if verdict.primitive {
                        "primitive"
                    } else {
                        "not primitive"
                    },
                    ctx.show_cyclic(&verdict.witness.minimal)
                ),
            })
        }
        Command::OrbitEq { first, second } => {
            let rank = ctx.rank_for(&[first, second])?;
            let u = parse_word(first, rank, ctx.syntax)?;
            let v = parse_word(second, rank, ctx.syntax)?;
            let res = Whitehead::new(rank)
                .with_limits(ctx.limits)
                .orbit_equivalent(&u, &v)?;
            let path: Option<Vec<String>> = res
                .path
                .as_ref()
                .map(|p| p.iter().map(ToString::to_string).collect());
            let certificate = json!({
                "first": serde_json::to_value(Certificate::minimization(&u, &res.left)).expect("serializable"),
                "second": serde_json::to_value(Certificate::minimization(&v, &res.right)).expect("serializable"),
                "connecting_moves": path,
            });
            Ok(Outcome {
                holds: res.equivalent,
                input: json!([first, second]),
                result: json!({
                    "equivalent": res.equivalent,
                    "first_minimal": ctx.show_cyclic(&res.left.minimal),
                    "second_minimal": ctx.show_cyclic(&res.right.minimal),
                }),
                certificate: Some(certificate),
                text: format!(
                    "{} (minimal forms {} and {})",
                    if res.equivalent {
                        "equivalent"
                    } else {
                        "not equivalent"
                    },
                    ctx.show_cyclic(&res.left.minimal),
                    ctx.show_cyclic(&res.right.minimal)
                ),
            })
        }
        Command::Basis { tuple, edges } => {
            let rank = ctx.rank_for(&[tuple])?;
            let t = WordTuple::new(parse_tuple(tuple, rank, ctx.syntax)?, rank)?;
            let basis = is_basis(&t);
            let generating = is_generating(&t);
            let det = abelian_det_filter(&t).ok();
            let graph = fold(&t);
            let mut text = format!(
                "{}\ngenerating: {generating}\nabelian determinant ±1: {}",
                if basis { "basis" } else { "not a basis" },
                det.map_or("n/a".to_string(), |d| d.to_string())
            );
            if *edges {
                text.push_str("\nfolded graph:\n");
                text.push_str(graph.to_edge_list().trim_end());
            }
            Ok(Outcome {
                holds: basis,
                input: json!(tuple),
                result: json!({
                    "basis": basis,
                    "generating": generating,
                    "abelian_det_unit": det,
                    "folded_vertices": graph.vertex_count(),
                    "folded_edges": graph.to_edge_list().lines().collect::<Vec<_>>(),
                }),
                certificate: None,
                text,
            })
        }
        Command::Complete { word } => {
            let w = ctx.word(word)?;
            match complete_to_basis(&w) {
                Ok(basis) => {
                    let cert = Certificate::basis(&w, &basis);
                    let shown = format_tuple(basis.words(), ctx.syntax);
                    Ok(Outcome {
                        holds: true,
                        input: json!(word),
                        result: json!({ "basis": basis.words().iter().map(|b| ctx.show(b)).collect::<Vec<_>>() }),
                        certificate: Some(serde_json::to_value(&cert).expect("serializable")),
                        text: shown,
                    })
                }
                Err(Error::NotPrimitive(_)) => {
                    let verdict = Whitehead::new(w.rank()).is_primitive(&w)?;
                    let cert = Certificate::minimization(&w, &verdict.witness);
                    Ok(Outcome {
                        holds: false,
                        input: json!(word),
                        result: json!({ "basis": null, "primitive": false }),
                        certificate: Some(serde_json::to_value(&cert).expect("serializable")),
                        text: format!("{} is not primitive; it lies in no basis", ctx.show(&w)),
                    })
                }
                Err(e) => Err(e),
            }
        }
        Command::EnumeratePrimitives { max_len } => {
            let rank = ctx.required_rank()?;
            let set = Whitehead::new(rank)
                .with_limits(ctx.limits)
                .enumerate_primitives(*max_len)?;
            let words: Vec<String> = set.iter().map(|c| ctx.show_cyclic(c)).collect();
            Ok(Outcome {
                holds: true,
                input: json!({ "rank": rank.get(), "max_len": max_len }),
                result: json!({ "count": words.len(), "words": words }),
                certificate: None,
                text: format!(
                    "{} primitive cyclic words\n{}",
                    words.len(),
                    words.join("\n")
                ),
            })
        }
        Command::Verify { claim } => {
            let (input, report) = match claim {
                Claim::PowerProduct { exponents } => {
                    let rank = ctx.required_rank()?;
                    (
                        json!({ "rank": rank.get(), "exponents": exponents }),
                        verify_power_product(rank, exponents)?,
                    )
                }
                Claim::WitnessFamily => {
                    let rank = ctx.required_rank()?;
                    (json!({ "rank": rank.get() }), verify_witness_family(rank)?)
                }
                Claim::BasisExtension { word } => {
                    let rank = ctx.required_rank()?;
                    let w = parse_word(word, rank, ctx.syntax)?;
                    (
                        json!({ "rank": rank.get(), "word": word }),
                        verify_basis_extension(rank, &w)?,
                    )
                }
            };
            Ok(Outcome {
                holds: report.passed,
                input,
                result: serde_json::to_value(&report).expect("serializable"),
                certificate: None,
                text: report.render_text().trim_end().to_string(),
            })
        }
        Command::CheckCertificate { file } => {
            let raw = std::fs::read_to_string(file)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", file.display())))?;
            let value: Value = serde_json::from_str(&raw)
                .map_err(|e| Error::Usage(format!("{} is not JSON: {e}", file.display())))?;
            // accept either a bare certificate or a command's JSON output
            let cert_value = match value.get("certificate") {
                Some(inner) if inner.get("kind").is_some() => inner.clone(),
                _ => value,
            };
            let cert: Certificate = serde_json::from_value(cert_value)
                .map_err(|e| Error::Usage(format!("not a certificate: {e}")))?;
            let (holds, text) = match cert.check() {
                Ok(Checked::Minimization { minimal_length }) => (
                    true,
                    format!("certificate OK: strict descent to a minimal word of length {minimal_length}"),
                ),
                Ok(Checked::Basis) => (true, "certificate OK: verified basis containing the input".to_string()),
                Err(e) => (false, format!("certificate REJECTED: {e}")),
            };
            Ok(Outcome {
                holds,
                input: json!(file.display().to_string()),
                result: json!({ "valid": holds, "message": text }),
                certificate: Some(serde_json::to_value(&cert).expect("serializable")),
                text,
            })
        }
        Command::RandomChain { depth } => {
            let rank = ctx.required_rank()?;
            let chain = random_chain(rank, *depth, ctx.seed);
            let moves: Vec<String> = chain.moves().iter().map(ToString::to_string).collect();
            Ok(Outcome {
                holds: true,
                input: json!({ "rank": rank.get(), "depth": depth, "seed": ctx.seed }),
                result: json!({ "moves": moves }),
                certificate: None,
                text: moves.join("\n"),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context {
        syntax: if cli.shorthand {
            Syntax::Shorthand
        } else {
            Syntax::Standard
        },
        rank: cli.rank,
        limits: SearchLimits {
            max_states: cli.max_states,
        },
        seed: cli.seed,
    };
    let started = Instant::now();
    let outcome = run(&cli, &ctx);
    let timing_ms = started.elapsed().as_secs_f64() * 1000.0;
    match outcome {
        Ok(out) => {
            match cli.format {
                Format::Text => {
                    let _ = writeln!(std::io::stdout(), "{}", out.text);
                }
                Format::Json => {
                    let mut doc = json!({
                        "input": out.input,
                        "result": out.result,
                        "timing_ms": timing_ms,
                    });
                    if let Some(cert) = out.certificate {
                        doc["certificate"] = cert;
                    }
                    let _ = writeln!(
                        std::io::stdout(),
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("serializable")
                    );
                }
            }
            ExitCode::from(if out.holds { 0 } else { 1 })
        }
        Err(err) => {
            match cli.format {
                Format::Text => eprintln!("error: {err}"),
                Format::Json => {
                    let doc = json!({ "error": err.to_string(), "timing_ms": timing_ms });
                    let _ = writeln!(std::io::stdout(), "{doc}");
                }
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
