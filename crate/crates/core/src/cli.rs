//! Command-line front end. Every command reads JSON (inline or from a file)
//! and prints one JSON document.
//!
//! Exit codes: `0` success, `2` input or precondition error, `3` a verdict
//! that only holds up to a bound.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::entropy::{
    boost_entropy_construction, entropy_word_count, perron_entropy, scale_entropy_construction,
    sofic_entropy, EntropyEstimate,
};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::invariants::{bowen_franks, franks_decide};
use crate::json::{self, Kind};
use crate::matrix::IntMatrix;
use crate::moves::WordImage;
use crate::presentation::LabeledGraph;
use crate::sgap::{self, FeVerdict, SGapSet};
use crate::word::{Symbol, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUNDED: i32 = 3;

/// Word length used by `entropy --method wordcount` when `--n` is absent.
pub const DEFAULT_WORD_LENGTH: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn json(code: i32, v: &Value) -> Self {
        CommandResult {
            code,
            stdout: format!("{}\n", serde_json::to_string(v).expect("serializable")),
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        CommandResult {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "symdyn",
    version,
    about = "Flow equivalence, entropy and S-gap tools for symbolic dynamics",
    after_help = "Arguments marked <JSON> take inline JSON or a path to a JSON file."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of nonnegative integer matrices
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Flow equivalence of edge shifts
    #[command(subcommand)]
    Fe(FeCmd),
    /// Languages of shifts
    #[command(subcommand)]
    Language(LanguageCmd),
    /// Graph constructions
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Labeled-graph presentations
    #[command(subcommand)]
    Presentation(PresentationCmd),
    /// Topological entropy of the shift a document describes
    Entropy {
        #[arg(long, value_enum)]
        method: Method,
        /// Word length for the word-count method
        #[arg(long)]
        n: Option<usize>,
        input: String,
    },
    /// Entropy-changing constructions
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Move pipelines
    #[command(subcommand)]
    Moves(MovesCmd),
    /// S-gap shifts
    #[command(subcommand)]
    Sgap(SgapCmd),
    /// Checks any input or output document against its schema
    Validate {
        /// Expected kind; detected from the document when absent
        #[arg(long)]
        kind: Option<String>,
        input: String,
    },
}

#[derive(Subcommand, Debug)]
enum InvariantCmd {
    /// Signed Bowen-Franks group
    Bf { input: String },
}

#[derive(Subcommand, Debug)]
enum FeCmd {
    /// Franks' decision for two irreducible edge shifts
    DecideSft { a: String, b: String },
}

#[derive(Subcommand, Debug)]
enum LanguageCmd {
    /// All words of length n
    Enum {
        #[arg(long)]
        n: usize,
        input: String,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Higher-block edge-shift presentation of an SFT
    EdgeShift { input: String },
}

#[derive(Subcommand, Debug)]
enum PresentationCmd {
    /// Minimal right-resolving presentation
    Minimize { input: String },
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    /// Subdivides every edge into n edges
    Scale {
        #[arg(long)]
        n: usize,
        input: String,
    },
    /// Word contractions raising the entropy to at least `target` bits
    Boost {
        #[arg(long)]
        target: u32,
        input: String,
    },
}

#[derive(Subcommand, Debug)]
enum MovesCmd {
    /// Image of a word under a pipeline
    Apply {
        /// Also print each primitive step with its forbidden set
        #[arg(long)]
        trace: bool,
        pipeline: String,
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum SgapCmd {
    /// Shift type of an S-gap set
    Classify { input: String },
    /// Flow equivalence of two S-gap shifts
    FeEqual {
        /// Largest translation tried when searching for a witness
        #[arg(long)]
        bound: u64,
        s1: String,
        s2: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Wordcount,
    Perron,
}

/// Parses `argv` (without the program name) and runs the command.
pub fn run<S: AsRef<str>>(argv: &[S]) -> CommandResult {
    let args = std::iter::once("symdyn").chain(argv.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(|e| CommandResult::error(&e))
}

/// Inline JSON when the argument starts with `{` or `[`, otherwise a file path.
fn load(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    let (text, origin) = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        (arg.to_string(), "inline JSON".to_string())
    } else {
        let text = std::fs::read_to_string(arg)
            .map_err(|e| Error::Invalid(format!("cannot read `{arg}`: {e}")))?;
        (text, format!("`{arg}`"))
    };
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{origin} is not valid JSON: {e}")))
}

fn detect(v: &Value) -> Result<Kind> {
    Kind::detect(v).ok_or_else(|| Error::Invalid("unrecognized document".into()))
}

/// Adjacency matrix of any document that describes a graph.
fn adjacency(v: &Value) -> Result<IntMatrix> {
    match detect(v)? {
        Kind::Matrix => json::parse_adjacency(v, "$"),
        Kind::Graph => Ok(json::parse_graph(v, "$")?.graph.adjacency()),
        Kind::Sft => Ok(json::parse_sft(v, "$")?.edge_shift().graph.adjacency()),
        k => Err(Error::Invalid(format!("expected a matrix, graph or SFT, found a {} document", k.name()))),
    }
}

fn graph(v: &Value) -> Result<DirectedGraph> {
    match detect(v)? {
        Kind::Matrix => DirectedGraph::from_adjacency(&json::parse_adjacency(v, "$")?),
        Kind::Graph => Ok(json::parse_graph(v, "$")?.graph),
        k => Err(Error::Invalid(format!("expected a graph or matrix, found a {} document", k.name()))),
    }
}

/// Edges labeled by their own ids present the edge shift.
fn edge_labeled(g: DirectedGraph) -> LabeledGraph {
    let labels = g.edges().iter().map(|e| Symbol::new(e.id.to_string())).collect();
    LabeledGraph::new(g, labels).expect("one label per edge")
}

fn presentation(v: &Value) -> Result<LabeledGraph> {
    match detect(v)? {
        Kind::Sft => Ok(json::parse_sft(v, "$")?.presentation()),
        Kind::Graph => {
            let doc = json::parse_graph(v, "$")?;
            Ok(match doc.labeled() {
                Some(lg) => lg,
                None => edge_labeled(doc.graph),
            })
        }
        Kind::Matrix => Ok(edge_labeled(graph(v)?)),
        k => Err(Error::Invalid(format!("expected a matrix, graph or SFT, found a {} document", k.name()))),
    }
}

fn entropy(method: Method, n: Option<usize>, v: &Value) -> Result<EntropyEstimate> {
    match method {
        Method::Wordcount => entropy_word_count(&presentation(v)?, n.unwrap_or(DEFAULT_WORD_LENGTH)),
        Method::Perron => {
            if n.is_some() {
                return Err(Error::Invalid("--n only applies to --method wordcount".into()));
            }
            match detect(v)? {
                Kind::Graph => match json::parse_graph(v, "$")?.labeled() {
                    Some(lg) => sofic_entropy(&lg),
                    None => perron_entropy(&adjacency(v)?),
                },
                _ => perron_entropy(&adjacency(v)?),
            }
        }
    }
}

/// A plain string of one-character symbols or a JSON array of symbol names.
fn parse_word_arg(arg: &str) -> Result<Word> {
    if arg.trim_start().starts_with('[') {
        json::parse_word(&load(arg)?, "$")
    } else {
        Ok(Word::parse(arg))
    }
}

fn dispatch(command: Command) -> Result<CommandResult> {
    let ok = |v: Value| Ok(CommandResult::json(EXIT_OK, &v));
    match command {
        Command::Invariant(InvariantCmd::Bf { input }) => {
            ok(json::bf_to_json(&bowen_franks(&adjacency(&load(&input)?)?)?))
        }
        Command::Fe(FeCmd::DecideSft { a, b }) => {
            let (a, b) = (adjacency(&load(&a)?)?, adjacency(&load(&b)?)?);
            ok(json!({ "flow_equivalent": franks_decide(&a, &b)? }))
        }
        Command::Language(LanguageCmd::Enum { n, input }) => {
            let v = load(&input)?;
            let words = match detect(&v)? {
                Kind::Sft => json::parse_sft(&v, "$")?.enumerate_language(n),
                _ => presentation(&v)?.words(n),
            };
            ok(json::language_to_json(n, &words))
        }
        Command::Graph(GraphCmd::EdgeShift { input }) => {
            let es = json::parse_sft(&load(&input)?, "$")?.edge_shift();
            let names: Vec<String> = es.vertex_words.iter().map(Word::to_string).collect();
            let mut g = DirectedGraph::with_vertices(names);
            for e in es.graph.edges() {
                g.add_edge(e.source, e.target);
            }
            let lg = LabeledGraph::new(g, es.labeled_graph().labels().to_vec())?;
            ok(json::labeled_graph_to_json(&lg))
        }
        Command::Presentation(PresentationCmd::Minimize { input }) => {
            let lg = json::parse_graph(&load(&input)?, "$")?
                .labeled()
                .ok_or_else(|| Error::Invalid("the graph has no edge labels".into()))?;
            ok(json::labeled_graph_to_json(&lg.minimal_right_resolving()?))
        }
        Command::Entropy { method, n, input } => ok(json::entropy_to_json(&entropy(method, n, &load(&input)?)?)),
        Command::Construct(ConstructCmd::Scale { n, input }) => {
            ok(json::graph_to_json(&scale_entropy_construction(&graph(&load(&input)?)?, n)?, None))
        }
        Command::Construct(ConstructCmd::Boost { target, input }) => {
            let x = json::parse_sft(&load(&input)?, "$")?;
            let symbols = x.alphabet().symbols();
            for a in &symbols {
                for b in symbols.iter().filter(|b| *b != a) {
                    match boost_entropy_construction(&x, a, b, target) {
                        Ok(p) => return ok(json::pipeline_to_json(&p)),
                        Err(Error::Precondition(_)) => continue,
                        Err(e) => return Err(e),
                    }
                }
            }
            Err(Error::Precondition("no pair of symbols spans an embedded full 2-shift".into()))
        }
        Command::Moves(MovesCmd::Apply { trace, pipeline, word }) => {
            let w = parse_word_arg(&word)?;
            let doc = json::parse_pipeline(&load(&pipeline)?, "$")?;
            let p = doc.build(w.symbols())?;
            let image = p.apply_word(&w)?;
            let mut out = json::word_image_to_json(&w, &image);
            if trace {
                let words = p.trace_word(&w)?;
                let stages: Vec<Value> = p
                    .stages()
                    .iter()
                    .zip(&words)
                    .map(|(s, w)| {
                        json!({
                            "step": s.step.to_string(),
                            "forbidden": s.target.forbidden().iter().map(json::word_to_json).collect::<Vec<_>>(),
                            "word": json::word_to_json(w),
                        })
                    })
                    .collect();
                out["stages"] = Value::Array(stages);
            }
            let code = match image {
                WordImage::Image(_) => EXIT_OK,
                WordImage::Undecided => EXIT_BOUNDED,
            };
            Ok(CommandResult::json(code, &out))
        }
        Command::Sgap(SgapCmd::Classify { input }) => {
            let s = json::parse_sgap(&load(&input)?, "$")?;
            let t = sgap::classify_type(&s);
            let periodic = sgap::detect_eventual_periodicity(&s);
            let mut out = json::shift_type_to_json(t, periodic.as_ref());
            if let Some(b) = s.known_up_to() {
                out["bound"] = json!(b);
            }
            let code = if s.is_sampled() { EXIT_BOUNDED } else { EXIT_OK };
            Ok(CommandResult::json(code, &out))
        }
        Command::Sgap(SgapCmd::FeEqual { bound, s1, s2 }) => {
            let a: SGapSet = json::parse_sgap(&load(&s1)?, "$")?;
            let b: SGapSet = json::parse_sgap(&load(&s2)?, "$")?;
            let verdict = sgap::fe_equal(&a, &b, bound)?;
            let code = match verdict {
                FeVerdict::NotEquivalentUpTo(_) | FeVerdict::UnknownUpTo(_) => EXIT_BOUNDED,
                FeVerdict::Equivalent(_) if a.is_sampled() || b.is_sampled() => EXIT_BOUNDED,
                _ => EXIT_OK,
            };
            Ok(CommandResult::json(code, &json::fe_verdict_to_json(&verdict)))
        }
        Command::Validate { kind, input } => {
            let v = load(&input)?;
            let kind = match kind {
                Some(k) => {
                    let k = Kind::from_name(&k).ok_or_else(|| {
                        let names: Vec<&str> = Kind::ALL.iter().map(|k| k.name()).collect();
                        Error::Invalid(format!("unknown kind `{k}`; expected one of {}", names.join(", ")))
                    })?;
                    json::validate_as(&v, k)?;
                    k
                }
                None => json::validate(&v)?,
            };
            ok(json!({ "valid": true, "kind": kind.name() }))
        }
    }
}
