//! JSON reading and writing for every input and output format. Readers
//! report errors with a JSON path such as `$.edges[2].from`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::block::BlockMap;
use crate::entropy::{EntropyEstimate, EntropyMethod};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::invariants::SignedBfGroup;
use crate::matrix::IntMatrix;
use crate::moves::{Move, MovePipeline, WordImage};
use crate::presentation::LabeledGraph;
use crate::sft::Sft;
use crate::sgap::{FeVerdict, SGapSet, ShiftType, Witness};
use crate::word::{Alphabet, Symbol, Word};

fn at(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("at {path}: {msg}"))
}

/// Re-anchors a library error at `path` without repeating its prefix.
fn wrap(path: &str, e: Error) -> Error {
    match e {
        Error::Invalid(m) => at(path, m),
        other => at(path, other),
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| at(path, format!("expected an array, found {}", type_name(v))))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| at(path, format!("expected an object, found {}", type_name(v))))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| at(path, format!("expected a string, found {}", type_name(v))))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| at(path, format!("expected a nonnegative integer, found {v}")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| at(path, format!("missing field `{key}`")))
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(at(path, format!("unknown field `{k}`"))),
        None => Ok(()),
    }
}

fn u64_set(v: &Value, path: &str) -> Result<BTreeSet<u64>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_u64(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn parse_matrix(v: &Value, path: &str) -> Result<IntMatrix> {
    let rows = as_array(v, path)?;
    if rows.is_empty() {
        return Err(at(path, "matrix must have at least one row"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let entries = as_array(row, &rp)?;
        let parsed = entries
            .iter()
            .enumerate()
            .map(|(j, x)| {
                let ep = format!("{rp}[{j}]");
                if let Some(u) = x.as_u64() {
                    Ok(BigInt::from(u))
                } else if let Some(s) = x.as_i64() {
                    Ok(BigInt::from(s))
                } else {
                    Err(at(&ep, format!("expected an integer, found {x}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if i > 0 && parsed.len() != out.first().map_or(0, Vec::len) {
            return Err(at(&rp, "rows must all have the same length"));
        }
        out.push(parsed);
    }
    IntMatrix::try_from_big_rows(out)
}

/// Nonnegative square matrix, naming the first negative entry.
pub fn parse_adjacency(v: &Value, path: &str) -> Result<IntMatrix> {
    let m = parse_matrix(v, path)?;
    if !m.is_square() {
        return Err(at(path, format!("matrix is {}x{}, expected square", m.rows(), m.cols())));
    }
    if let Some((r, c)) = m.first_negative() {
        return Err(at(
            &format!("{path}[{r}][{c}]"),
            format!("matrix entry at [{r}][{c}] is negative ({})", m.get(r, c)),
        ));
    }
    Ok(m)
}

pub fn parse_symbol(v: &Value, path: &str) -> Result<Symbol> {
    let s = as_str(v, path)?;
    if s.is_empty() {
        return Err(at(path, "symbols must be non-empty"));
    }
    Ok(Symbol::new(s))
}

/// A string of one-character symbols, or an array of symbol names.
pub fn parse_word(v: &Value, path: &str) -> Result<Word> {
    match v {
        Value::String(s) => Ok(Word::parse(s)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, x)| parse_symbol(x, &format!("{path}[{i}]")))
            .collect(),
        _ => Err(at(path, format!("expected a word (string or array), found {}", type_name(v)))),
    }
}

pub fn word_to_json(w: &Word) -> Value {
    if w.is_plain() {
        Value::String(w.symbols().iter().map(Symbol::as_str).collect())
    } else {
        Value::Array(w.symbols().iter().map(|s| json!(s.as_str())).collect())
    }
}

fn check_word_in(alphabet: &Alphabet, w: &Word, path: &str) -> Result<()> {
    match w.symbols().iter().find(|s| !alphabet.contains(s)) {
        Some(s) => Err(at(path, format!("symbol `{s}` is not in the alphabet"))),
        None => Ok(()),
    }
}

pub fn parse_sft(v: &Value, path: &str) -> Result<Sft> {
    let obj = as_object(v, path)?;
    reject_unknown(obj, &["alphabet", "forbidden"], path)?;
    let ap = format!("{path}.alphabet");
    let symbols = as_array(field(obj, "alphabet", path)?, &ap)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_symbol(x, &format!("{ap}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let alphabet = Alphabet::new(symbols).map_err(|e| wrap(&ap, e))?;
    let fp = format!("{path}.forbidden");
    let mut forbidden = BTreeSet::new();
    if let Some(f) = obj.get("forbidden") {
        for (i, x) in as_array(f, &fp)?.iter().enumerate() {
            let wp = format!("{fp}[{i}]");
            let w = parse_word(x, &wp)?;
            if w.is_empty() {
                return Err(at(&wp, "forbidden words must be non-empty"));
            }
            check_word_in(&alphabet, &w, &wp)?;
            forbidden.insert(w);
        }
    }
    Sft::new(alphabet, forbidden)
}

pub fn sft_to_json(x: &Sft) -> Value {
    json!({
        "alphabet": x.alphabet().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
        "forbidden": x.forbidden().iter().map(word_to_json).collect::<Vec<_>>(),
    })
}

/// A graph with optional edge labels; labels must be given on every edge or none.
#[derive(Clone, Debug)]
pub struct GraphDoc {
    pub graph: DirectedGraph,
    pub labels: Option<Vec<Symbol>>,
}

impl GraphDoc {
    pub fn labeled(&self) -> Option<LabeledGraph> {
        self.labels
            .clone()
            .map(|l| LabeledGraph::new(self.graph.clone(), l).expect("one label per edge"))
    }
}

pub fn parse_graph(v: &Value, path: &str) -> Result<GraphDoc> {
    let obj = as_object(v, path)?;
    reject_unknown(obj, &["vertices", "edges"], path)?;
    let vp = format!("{path}.vertices");
    let mut graph = DirectedGraph::new();
    for (i, x) in as_array(field(obj, "vertices", path)?, &vp)?.iter().enumerate() {
        let p = format!("{vp}[{i}]");
        let name = as_str(x, &p)?;
        if graph.vertex_index(name).is_some() {
            return Err(at(&p, format!("duplicate vertex `{name}`")));
        }
        graph.add_vertex(name);
    }
    let ep = format!("{path}.edges");
    let mut labels = Vec::new();
    let mut labeled = None;
    let empty = Vec::new();
    let edges = match obj.get("edges") {
        Some(e) => as_array(e, &ep)?,
        None => &empty,
    };
    for (i, e) in edges.iter().enumerate() {
        let p = format!("{ep}[{i}]");
        let eo = as_object(e, &p)?;
        reject_unknown(eo, &["from", "to", "label"], &p)?;
        let end = |key: &str| -> Result<usize> {
            let kp = format!("{p}.{key}");
            let name = as_str(field(eo, key, &p)?, &kp)?;
            graph
                .vertex_index(name)
                .ok_or_else(|| at(&kp, format!("unknown vertex `{name}`")))
        };
        let (s, t) = (end("from")?, end("to")?);
        let has_label = eo.contains_key("label");
        match labeled {
            None => labeled = Some(has_label),
            Some(l) if l != has_label => {
                return Err(at(&p, "either every edge has a label or none does"))
            }
            _ => {}
        }
        if let Some(l) = eo.get("label") {
            labels.push(parse_symbol(l, &format!("{p}.label"))?);
        }
        graph.add_edge(s, t);
    }
    Ok(GraphDoc {
        graph,
        labels: labeled.unwrap_or(false).then_some(labels),
    })
}

pub fn graph_to_json(g: &DirectedGraph, labels: Option<&[Symbol]>) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            let mut o = Map::new();
            o.insert("from".into(), json!(g.vertices()[e.source]));
            o.insert("to".into(), json!(g.vertices()[e.target]));
            if let Some(l) = labels {
                o.insert("label".into(), json!(l[e.id].as_str()));
            }
            Value::Object(o)
        })
        .collect();
    json!({ "vertices": g.vertices(), "edges": edges })
}

pub fn labeled_graph_to_json(lg: &LabeledGraph) -> Value {
    graph_to_json(lg.graph(), Some(lg.labels()))
}

pub fn parse_sgap(v: &Value, path: &str) -> Result<SGapSet> {
    let obj = as_object(v, path)?;
    let kp = format!("{path}.kind");
    let kind = as_str(field(obj, "kind", path)?, &kp)?;
    let set = |key: &str| u64_set(field(obj, key, path)?, &format!("{path}.{key}"));
    match kind {
        "finite" => {
            reject_unknown(obj, &["kind", "elements"], path)?;
            SGapSet::finite(set("elements")?).map_err(|e| wrap(&format!("{path}.elements"), e))
        }
        "eventually_periodic" => {
            reject_unknown(obj, &["kind", "R", "T", "N"], path)?;
            let n = as_u64(field(obj, "N", path)?, &format!("{path}.N"))?;
            let r = match obj.get("R") {
                Some(_) => set("R")?,
                None => BTreeSet::new(),
            };
            SGapSet::eventually_periodic(r, set("T")?, n).map_err(|e| wrap(path, e))
        }
        "sampled" => {
            reject_unknown(obj, &["kind", "members", "bound"], path)?;
            let mp = format!("{path}.members");
            let members = as_array(field(obj, "members", path)?, &mp)?
                .iter()
                .enumerate()
                .map(|(i, x)| as_u64(x, &format!("{mp}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let bound = as_u64(field(obj, "bound", path)?, &format!("{path}.bound"))?;
            SGapSet::sampled(&members, bound).map_err(|e| wrap(&mp, e))
        }
        other => Err(at(
            &kp,
            format!("unknown kind `{other}`; expected finite, eventually_periodic or sampled"),
        )),
    }
}

pub fn sgap_to_json(s: &SGapSet) -> Value {
    match s {
        SGapSet::Finite(e) => json!({ "kind": "finite", "elements": e }),
        SGapSet::EventuallyPeriodic { r, t, n } => {
            json!({ "kind": "eventually_periodic", "R": r, "T": t, "N": n })
        }
        SGapSet::Sampled { members, bound } => {
            json!({ "kind": "sampled", "members": members, "bound": bound })
        }
    }
}

/// The trivial group is written `[1]`, i.e. as `ℤ/1`.
pub fn bf_to_json(g: &SignedBfGroup) -> Value {
    let divisors: Vec<Value> = if g.divisors.is_empty() {
        vec![json!(1)]
    } else {
        g.divisors.iter().map(big_to_json).collect()
    };
    json!({ "sign": g.sign, "divisors": divisors })
}

fn big_to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn parse_bf(v: &Value, path: &str) -> Result<SignedBfGroup> {
    let obj = as_object(v, path)?;
    reject_unknown(obj, &["sign", "divisors"], path)?;
    let sp = format!("{path}.sign");
    let sign = field(obj, "sign", path)?
        .as_i64()
        .filter(|s| (-1..=1).contains(s))
        .ok_or_else(|| at(&sp, "sign must be -1, 0 or 1"))?;
    let dp = format!("{path}.divisors");
    let divisors = as_array(field(obj, "divisors", path)?, &dp)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_u64(x, &format!("{dp}[{i}]")).map(BigInt::from))
        .collect::<Result<Vec<_>>>()?;
    Ok(SignedBfGroup::new(sign as i8, divisors))
}

/// Values are rounded to six decimals.
pub fn entropy_to_json(e: &EntropyEstimate) -> Value {
    let mut o = Map::new();
    o.insert("value".into(), json!((e.value * 1e6).round() / 1e6));
    o.insert("method".into(), json!(e.method.to_string()));
    if let Some(n) = e.n_used {
        o.insert("n".into(), json!(n));
    }
    if e.empty_shift {
        o.insert("empty_shift".into(), json!(true));
    }
    Value::Object(o)
}

pub fn parse_entropy(v: &Value, path: &str) -> Result<EntropyEstimate> {
    let obj = as_object(v, path)?;
    reject_unknown(obj, &["value", "method", "n", "empty_shift"], path)?;
    let value = field(obj, "value", path)?
        .as_f64()
        .filter(|x| *x >= 0.0)
        .ok_or_else(|| at(&format!("{path}.value"), "expected a nonnegative number"))?;
    let mp = format!("{path}.method");
    let method = match as_str(field(obj, "method", path)?, &mp)? {
        "perron" => EntropyMethod::Perron,
        "wordcount" => EntropyMethod::WordCount,
        other => return Err(at(&mp, format!("unknown method `{other}`"))),
    };
    let n_used = obj
        .get("n")
        .map(|n| as_u64(n, &format!("{path}.n")).map(|n| n as usize))
        .transpose()?;
    let empty_shift = obj
        .get("empty_shift")
        .map(|b| b.as_bool().ok_or_else(|| at(&format!("{path}.empty_shift"), "expected a boolean")))
        .transpose()?
        .unwrap_or(false);
    Ok(EntropyEstimate {
        value,
        method,
        n_used,
        empty_shift,
    })
}

pub fn block_map_to_json(b: &BlockMap) -> Value {
    let table: Vec<Value> = b
        .table()
        .iter()
        .map(|(w, s)| json!([word_to_json(w), s.as_str()]))
        .collect();
    json!({ "memory": b.memory(), "anticipation": b.anticipation(), "table": table })
}

/// `table` is either an object from plain windows to symbols or an array
/// of `[window, symbol]` pairs.
pub fn parse_block_map(v: &Value, path: &str) -> Result<BlockMap> {
    let obj = as_object(v, path)?;
    reject_unknown(obj, &["memory", "anticipation", "table"], path)?;
    let memory = as_u64(field(obj, "memory", path)?, &format!("{path}.memory"))? as usize;
    let anticipation =
        as_u64(field(obj, "anticipation", path)?, &format!("{path}.anticipation"))? as usize;
    let tp = format!("{path}.table");
    let mut table = BTreeMap::new();
    match field(obj, "table", path)? {
        Value::Object(o) => {
            for (k, x) in o {
                table.insert(Word::parse(k), parse_symbol(x, &format!("{tp}.{k}"))?);
            }
        }
        Value::Array(pairs) => {
            for (i, pair) in pairs.iter().enumerate() {
                let pp = format!("{tp}[{i}]");
                match pair.as_array().map(Vec::as_slice) {
                    Some([w, s]) => {
                        table.insert(parse_word(w, &format!("{pp}[0]"))?, parse_symbol(s, &format!("{pp}[1]"))?);
                    }
                    _ => return Err(at(&pp, "expected a [window, symbol] pair")),
                }
            }
        }
        other => return Err(at(&tp, format!("expected an object or array, found {}", type_name(other)))),
    }
    BlockMap::new(memory, anticipation, table).map_err(|e| wrap(&tp, e))
}

pub fn move_to_json(m: &Move) -> Value {
    match m {
        Move::SymbolExpansion { symbol, fresh } => {
            json!({ "op": "expand", "symbol": symbol.as_str(), "fresh": fresh.as_str() })
        }
        Move::SymbolContraction { symbol, removed } => {
            json!({ "op": "contract", "symbol": symbol.as_str(), "removed": removed.as_str() })
        }
        Move::WordContraction { word, fresh } => {
            json!({ "op": "word_contract", "word": word_to_json(word), "fresh": fresh.as_str() })
        }
        Move::Recode { forward, inverse } => json!({
            "op": "recode",
            "forward": block_map_to_json(forward),
            "inverse": block_map_to_json(inverse),
        }),
    }
}

/// A move as written in a pipeline file. Fresh symbols may be left out
/// and are then chosen by the pipeline.
#[derive(Clone, Debug)]
pub enum MoveEntry {
    Expand { symbol: Symbol, fresh: Option<Symbol> },
    Contract { symbol: Symbol, removed: Symbol },
    WordContract { word: Word, fresh: Option<Symbol> },
    Recode { forward: BlockMap, inverse: BlockMap },
}

impl MoveEntry {
    fn mentioned_symbols(&self) -> Vec<Symbol> {
        match self {
            MoveEntry::Expand { symbol, .. } => vec![symbol.clone()],
            MoveEntry::Contract { symbol, removed } => vec![symbol.clone(), removed.clone()],
            MoveEntry::WordContract { word, .. } => word.symbols().to_vec(),
            MoveEntry::Recode { .. } => Vec::new(),
        }
    }
}

fn parse_move(v: &Value, path: &str) -> Result<MoveEntry> {
    let obj = as_object(v, path)?;
    let op = as_str(field(obj, "op", path)?, &format!("{path}.op"))?;
    let sym = |key: &str| parse_symbol(field(obj, key, path)?, &format!("{path}.{key}"));
    let fresh = || obj.get("fresh").map(|f| parse_symbol(f, &format!("{path}.fresh"))).transpose();
    match op {
        "expand" => {
            reject_unknown(obj, &["op", "symbol", "fresh"], path)?;
            Ok(MoveEntry::Expand { symbol: sym("symbol")?, fresh: fresh()? })
        }
        "contract" => {
            reject_unknown(obj, &["op", "symbol", "removed"], path)?;
            Ok(MoveEntry::Contract { symbol: sym("symbol")?, removed: sym("removed")? })
        }
        "word_contract" => {
            reject_unknown(obj, &["op", "word", "fresh"], path)?;
            let word = parse_word(field(obj, "word", path)?, &format!("{path}.word"))?;
            Ok(MoveEntry::WordContract { word, fresh: fresh()? })
        }
        "recode" => {
            reject_unknown(obj, &["op", "forward", "inverse"], path)?;
            Ok(MoveEntry::Recode {
                forward: parse_block_map(field(obj, "forward", path)?, &format!("{path}.forward"))?,
                inverse: parse_block_map(field(obj, "inverse", path)?, &format!("{path}.inverse"))?,
            })
        }
        other => Err(at(
            &format!("{path}.op"),
            format!("unknown op `{other}`; expected expand, contract, word_contract or recode"),
        )),
    }
}

/// Pipeline file contents before the moves are checked against a source.
#[derive(Clone, Debug)]
pub struct PipelineDoc {
    pub source: Option<Sft>,
    pub moves: Vec<MoveEntry>,
    pub target: Option<Sft>,
}

impl PipelineDoc {
    /// Runs the moves. Without an explicit source, the full shift on every
    /// symbol mentioned by the moves and by `extra` is used.
    pub fn build(&self, extra: &[Symbol]) -> Result<MovePipeline> {
        let source = match &self.source {
            Some(s) => s.clone(),
            None => {
                let mut syms: BTreeSet<Symbol> = extra.iter().cloned().collect();
                for m in &self.moves {
                    syms.extend(m.mentioned_symbols());
                }
                for m in &self.moves {
                    if let MoveEntry::Expand { fresh: Some(f), .. } | MoveEntry::WordContract { fresh: Some(f), .. } = m {
                        syms.remove(f);
                    }
                }
                Sft::full_shift(Alphabet::new(syms)?)
            }
        };
        let mut p = MovePipeline::new(source);
        for (i, m) in self.moves.iter().enumerate() {
            let mp = format!("$.moves[{i}]");
            let mv = match m {
                MoveEntry::Expand { symbol, fresh } => Move::SymbolExpansion {
                    symbol: symbol.clone(),
                    fresh: fresh.clone().unwrap_or_else(|| p.next_fresh()),
                },
                MoveEntry::Contract { symbol, removed } => Move::SymbolContraction {
                    symbol: symbol.clone(),
                    removed: removed.clone(),
                },
                MoveEntry::WordContract { word, fresh } => Move::WordContraction {
                    word: word.clone(),
                    fresh: fresh.clone().unwrap_or_else(|| p.next_fresh()),
                },
                MoveEntry::Recode { forward, inverse } => Move::Recode {
                    forward: forward.clone(),
                    inverse: inverse.clone(),
                },
            };
            p.push(mv).map_err(|e| wrap(&mp, e))?;
        }
        if let Some(t) = &self.target {
            let same = t.alphabet().symbols() == p.target().alphabet().symbols()
                && t.forbidden() == p.target().forbidden();
            if !same {
                return Err(at("$.target", "does not match the result of the moves"));
            }
        }
        Ok(p)
    }
}

pub fn parse_pipeline(v: &Value, path: &str) -> Result<PipelineDoc> {
    let obj = as_object(v, path)?;
    reject_unknown(obj, &["source", "moves", "target"], path)?;
    let mp = format!("{path}.moves");
    let moves = as_array(field(obj, "moves", path)?, &mp)?
        .iter()
        .enumerate()
        .map(|(i, m)| parse_move(m, &format!("{mp}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let source = obj.get("source").map(|s| parse_sft(s, &format!("{path}.source"))).transpose()?;
    let target = obj.get("target").map(|s| parse_sft(s, &format!("{path}.target"))).transpose()?;
    Ok(PipelineDoc { source, moves, target })
}

pub fn pipeline_to_json(p: &MovePipeline) -> Value {
    json!({
        "source": sft_to_json(p.source()),
        "moves": p.moves().iter().map(move_to_json).collect::<Vec<_>>(),
        "target": sft_to_json(p.target()),
    })
}

pub fn word_image_to_json(w: &Word, image: &WordImage) -> Value {
    json!({
        "word": word_to_json(w),
        "image": image.word().map_or(Value::Null, word_to_json),
    })
}

pub fn shift_type_to_json(t: ShiftType, periodic_form: Option<&SGapSet>) -> Value {
    let mut o = Map::new();
    o.insert("type".into(), json!(t.to_string()));
    if let ShiftType::NotEventuallyPeriodicUpToBound(b) = t {
        o.insert("bound".into(), json!(b));
    }
    if let Some(s) = periodic_form {
        o.insert("periodic_form".into(), sgap_to_json(s));
    }
    Value::Object(o)
}

pub fn fe_verdict_to_json(v: &FeVerdict) -> Value {
    match v {
        FeVerdict::Equivalent(Witness::CofiniteTranslation { n, r }) => {
            json!({ "outcome": "equivalent", "witness": { "n": n, "r": r } })
        }
        FeVerdict::Equivalent(Witness::FullShift { k }) => {
            json!({ "outcome": "equivalent", "witness": { "full_shift": k } })
        }
        FeVerdict::NotEquivalent(reason) => json!({ "outcome": "not_equivalent", "reason": reason }),
        FeVerdict::NotEquivalentUpTo(b) => json!({ "outcome": "not_equivalent_up_to", "bound": b }),
        FeVerdict::UnknownUpTo(b) => json!({ "outcome": "unknown_up_to", "bound": b }),
    }
}

pub fn language_to_json(n: usize, words: &BTreeSet<Word>) -> Value {
    json!({
        "n": n,
        "count": words.len(),
        "words": words.iter().map(word_to_json).collect::<Vec<_>>(),
    })
}

/// Every document kind `validate` recognizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Matrix,
    Sft,
    Graph,
    SGapSet,
    Pipeline,
    BfGroup,
    Entropy,
    Language,
    FlowEquivalence,
    SGapVerdict,
    ShiftType,
    WordImage,
    Validation,
}

impl Kind {
    pub const ALL: [Kind; 13] = [
        Kind::Matrix,
        Kind::Sft,
        Kind::Graph,
        Kind::SGapSet,
        Kind::Pipeline,
        Kind::BfGroup,
        Kind::Entropy,
        Kind::Language,
        Kind::FlowEquivalence,
        Kind::SGapVerdict,
        Kind::ShiftType,
        Kind::WordImage,
        Kind::Validation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Matrix => "matrix",
            Kind::Sft => "sft",
            Kind::Graph => "graph",
            Kind::SGapSet => "sgap_set",
            Kind::Pipeline => "pipeline",
            Kind::BfGroup => "bf_group",
            Kind::Entropy => "entropy",
            Kind::Language => "language",
            Kind::FlowEquivalence => "flow_equivalence",
            Kind::SGapVerdict => "sgap_verdict",
            Kind::ShiftType => "shift_type",
            Kind::WordImage => "word_image",
            Kind::Validation => "validation",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Guesses the kind from the top-level shape.
    pub fn detect(v: &Value) -> Option<Kind> {
        let obj = match v {
            Value::Array(_) => return Some(Kind::Matrix),
            Value::Object(o) => o,
            _ => return None,
        };
        let has = |k: &str| obj.contains_key(k);
        Some(if has("valid") {
            Kind::Validation
        } else if has("alphabet") {
            Kind::Sft
        } else if has("vertices") {
            Kind::Graph
        } else if has("kind") {
            Kind::SGapSet
        } else if has("moves") {
            Kind::Pipeline
        } else if has("sign") {
            Kind::BfGroup
        } else if has("method") {
            Kind::Entropy
        } else if has("words") {
            Kind::Language
        } else if has("flow_equivalent") {
            Kind::FlowEquivalence
        } else if has("outcome") {
            Kind::SGapVerdict
        } else if has("type") {
            Kind::ShiftType
        } else if has("image") {
            Kind::WordImage
        } else {
            return None;
        })
    }
}

fn expect_keys(obj: &Map<String, Value>, required: &[&str], optional: &[&str], path: &str) -> Result<()> {
    for k in required {
        field(obj, k, path)?;
    }
    let all: Vec<&str> = required.iter().chain(optional).copied().collect();
    reject_unknown(obj, &all, path)
}

/// Checks `v` against the schema of `kind`.
pub fn validate_as(v: &Value, kind: Kind) -> Result<()> {
    let p = "$";
    match kind {
        Kind::Matrix => parse_adjacency(v, p).map(drop),
        Kind::Sft => parse_sft(v, p).map(drop),
        Kind::Graph => parse_graph(v, p).map(drop),
        Kind::SGapSet => parse_sgap(v, p).map(drop),
        Kind::Pipeline => parse_pipeline(v, p)?.build(&[]).map(drop),
        Kind::BfGroup => parse_bf(v, p).map(drop),
        Kind::Entropy => parse_entropy(v, p).map(drop),
        Kind::Language => {
            let obj = as_object(v, p)?;
            expect_keys(obj, &["n", "count", "words"], &[], p)?;
            let n = as_u64(&obj["n"], "$.n")? as usize;
            let words = as_array(&obj["words"], "$.words")?;
            for (i, w) in words.iter().enumerate() {
                let wp = format!("$.words[{i}]");
                if parse_word(w, &wp)?.len() != n {
                    return Err(at(&wp, format!("word length differs from n = {n}")));
                }
            }
            if as_u64(&obj["count"], "$.count")? != words.len() as u64 {
                return Err(at("$.count", "does not match the number of words"));
            }
            Ok(())
        }
        Kind::FlowEquivalence => {
            let obj = as_object(v, p)?;
            expect_keys(obj, &["flow_equivalent"], &[], p)?;
            obj["flow_equivalent"]
                .as_bool()
                .map(drop)
                .ok_or_else(|| at("$.flow_equivalent", "expected a boolean"))
        }
        Kind::SGapVerdict => {
            let obj = as_object(v, p)?;
            let outcome = as_str(field(obj, "outcome", p)?, "$.outcome")?;
            match outcome {
                "equivalent" => {
                    expect_keys(obj, &["outcome", "witness"], &[], p)?;
                    let w = as_object(&obj["witness"], "$.witness")?;
                    if w.contains_key("full_shift") {
                        expect_keys(w, &["full_shift"], &[], "$.witness")?;
                        as_u64(&w["full_shift"], "$.witness.full_shift").map(drop)
                    } else {
                        expect_keys(w, &["n", "r"], &[], "$.witness")?;
                        as_u64(&w["n"], "$.witness.n")?;
                        w["r"].as_i64().map(drop).ok_or_else(|| at("$.witness.r", "expected an integer"))
                    }
                }
                "not_equivalent" => {
                    expect_keys(obj, &["outcome", "reason"], &[], p)?;
                    as_str(&obj["reason"], "$.reason").map(drop)
                }
                "not_equivalent_up_to" | "unknown_up_to" => {
                    expect_keys(obj, &["outcome", "bound"], &[], p)?;
                    as_u64(&obj["bound"], "$.bound").map(drop)
                }
                other => Err(at("$.outcome", format!("unknown outcome `{other}`"))),
            }
        }
        Kind::ShiftType => {
            let obj = as_object(v, p)?;
            expect_keys(obj, &["type"], &["bound", "periodic_form"], p)?;
            match as_str(&obj["type"], "$.type")? {
                "finite_type" | "strictly_sofic" => {}
                "not_eventually_periodic_up_to_bound" => {
                    as_u64(field(obj, "bound", p)?, "$.bound")?;
                }
                other => return Err(at("$.type", format!("unknown type `{other}`"))),
            }
            if let Some(s) = obj.get("periodic_form") {
                parse_sgap(s, "$.periodic_form")?;
            }
            Ok(())
        }
        Kind::WordImage => {
            let obj = as_object(v, p)?;
            expect_keys(obj, &["word", "image"], &["stages"], p)?;
            parse_word(&obj["word"], "$.word")?;
            if !obj["image"].is_null() {
                parse_word(&obj["image"], "$.image")?;
            }
            if let Some(stages) = obj.get("stages") {
                for (i, s) in as_array(stages, "$.stages")?.iter().enumerate() {
                    let sp = format!("$.stages[{i}]");
                    let so = as_object(s, &sp)?;
                    expect_keys(so, &["step", "forbidden", "word"], &[], &sp)?;
                    as_str(&so["step"], &format!("{sp}.step"))?;
                    for (j, w) in as_array(&so["forbidden"], &format!("{sp}.forbidden"))?.iter().enumerate() {
                        parse_word(w, &format!("{sp}.forbidden[{j}]"))?;
                    }
                    parse_word(&so["word"], &format!("{sp}.word"))?;
                }
            }
            Ok(())
        }
        Kind::Validation => {
            let obj = as_object(v, p)?;
            expect_keys(obj, &["valid", "kind"], &[], p)?;
            let k = as_str(&obj["kind"], "$.kind")?;
            Kind::from_name(k)
                .map(drop)
                .ok_or_else(|| at("$.kind", format!("unknown kind `{k}`")))
        }
    }
}

/// Detects the kind of `v` and validates it.
pub fn validate(v: &Value) -> Result<Kind> {
    let kind = Kind::detect(v).ok_or_else(|| at("$", "unrecognized document"))?;
    validate_as(v, kind)?;
    Ok(kind)
}
