//! Line-oriented text formats.
//!
//! | ext    | header                   | body                                   |
//! |--------|--------------------------|----------------------------------------|
//! | `.pg`  | `planegraph n=<N>`       | `rot <v>: <u> ...`, `outer: ...`, `S: ...` |
//! | `.ca`  | `correspondence k=<k>`   | `edge <u> <v>: a>b, c>d`, `-` or `id`  |
//! | `.la`  | `lists k=<k>`            | `v <id>: <l1> ... <lk>`                |
//! | `.col` | none                     | `color <v>: <c>`                       |
//! | `.map` | `colormap k=<k>`         | `v <id>: <label of 1> ... <label of k>` |
//! | `.ext` | `extension`              | `tetrad`, `merge`, `perm`, `map` lines  |
//!
//! `#` starts a comment; blank lines are ignored. Errors carry the 1-based
//! line number.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::Coloring;
use crate::configurations::Reduction;
use crate::correspondence::{Color, CorrespondenceAssignment, PartialInjection};
use crate::discharging::{ChargeLedger, Transfer};
use crate::lists::{ColorMap, Label, ListAssignment};
use crate::plane::{BoundarySet, PlaneGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with their line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{tok}`")))
}

/// Parses `<word> <key>=<value>`.
fn header<T: std::str::FromStr>(
    it: &mut dyn Iterator<Item = (usize, &str)>,
    word: &str,
    key: &str,
) -> Result<(usize, T), FormatError> {
    let (no, l) = it.next().ok_or_else(|| syntax(1, format!("missing `{word}` header")))?;
    let mut toks = l.split_whitespace();
    if toks.next() != Some(word) {
        return Err(syntax(no, format!("expected `{word} {key}=...`")));
    }
    let kv = toks.next().ok_or_else(|| syntax(no, format!("missing `{key}=`")))?;
    let val = kv
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| syntax(no, format!("expected `{key}=<value>`, found `{kv}`")))?;
    if let Some(extra) = toks.next() {
        return Err(syntax(no, format!("unexpected `{extra}`")));
    }
    Ok((no, number(no, val, key)?))
}

/// Splits `<tag> <args...>: <rest>` and returns the tokens before the colon
/// (tag excluded) and the text after it.
fn tagged<'a>(no: usize, l: &'a str, tag: &str) -> Result<(Vec<&'a str>, &'a str), FormatError> {
    let (head, rest) = l
        .split_once(':')
        .ok_or_else(|| syntax(no, format!("expected `{tag} ...: ...`")))?;
    let mut toks = head.split_whitespace();
    if toks.next() != Some(tag) {
        return Err(syntax(no, format!("expected `{tag}`")));
    }
    Ok((toks.collect(), rest.trim()))
}

fn vertex_list(no: usize, text: &str) -> Result<Vec<Vertex>, FormatError> {
    text.split_whitespace().map(|t| number(no, t, "a vertex id")).collect()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// A parsed `.pg` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: PlaneGraph,
    pub boundary: Option<BoundarySet>,
}

pub fn parse_pg(text: &str) -> Result<GraphFile, FormatError> {
    let mut it = lines(text);
    let (hno, n): (usize, usize) = header(&mut it, "planegraph", "n")?;
    if n == 0 {
        return Err(syntax(hno, "graph needs at least one vertex"));
    }
    let mut rotations: Vec<Option<Vec<Vertex>>> = vec![None; n];
    let mut outer = None;
    let mut boundary = None;
    for (no, l) in it {
        let tag = l.split_whitespace().next().unwrap_or("");
        if tag.starts_with("outer") {
            let (args, rest) = tagged(no, l, "outer")?;
            if !args.is_empty() || outer.is_some() {
                return Err(syntax(no, "malformed or repeated `outer:` line"));
            }
            outer = Some((no, vertex_list(no, rest)?));
        } else if tag.starts_with('S') {
            let (args, rest) = tagged(no, l, "S")?;
            if !args.is_empty() || boundary.is_some() {
                return Err(syntax(no, "malformed or repeated `S:` line"));
            }
            let vs = vertex_list(no, rest)?;
            if let Some(&v) = vs.iter().find(|&&v| v == 0 || v > n) {
                return Err(syntax(no, format!("vertex {v} out of range")));
            }
            boundary = Some(BoundarySet::new(vs));
        } else {
            let (args, rest) = tagged(no, l, "rot")?;
            let [v] = args.as_slice() else {
                return Err(syntax(no, "expected `rot <v>: ...`"));
            };
            let v: Vertex = number(no, v, "a vertex id")?;
            if v == 0 || v > n {
                return Err(syntax(no, format!("vertex {v} out of range 1..={n}")));
            }
            if rotations[v - 1].is_some() {
                return Err(syntax(no, format!("rotation of vertex {v} given twice")));
            }
            rotations[v - 1] = Some(vertex_list(no, rest)?);
        }
    }
    let rotations: Vec<Vec<Vertex>> = rotations.into_iter().map(Option::unwrap_or_default).collect();
    let mut graph = PlaneGraph::new(rotations).map_err(|e| FormatError::Invalid(e.to_string()))?;
    if let Some((no, walk)) = outer {
        graph.set_outer_walk(&walk).map_err(|e| syntax(no, e.to_string()))?;
    }
    Ok(GraphFile { graph, boundary })
}

pub fn emit_pg(g: &PlaneGraph, s: Option<&BoundarySet>) -> String {
    let mut out = format!("planegraph n={}\n", g.n());
    for v in g.vertices() {
        let _ = writeln!(out, "rot {v}: {}", join(g.rotation(v).iter()));
    }
    if let Some(w) = g.outer_walk() {
        if !w.is_empty() {
            let _ = writeln!(out, "outer: {}", join(w.iter()));
        }
    }
    if let Some(s) = s {
        let _ = writeln!(out, "S: {}", join(s.iter()));
    }
    out
}

pub fn parse_ca(text: &str) -> Result<CorrespondenceAssignment, FormatError> {
    let mut it = lines(text);
    let (hno, k): (usize, u8) = header(&mut it, "correspondence", "k")?;
    let mut c = CorrespondenceAssignment::new(k).map_err(|e| syntax(hno, e.to_string()))?;
    for (no, l) in it {
        let (args, rest) = tagged(no, l, "edge")?;
        let [u, v] = args.as_slice() else {
            return Err(syntax(no, "expected `edge <u> <v>: ...`"));
        };
        let u: Vertex = number(no, u, "a vertex id")?;
        let v: Vertex = number(no, v, "a vertex id")?;
        if c.contains_edge(u, v) {
            return Err(syntax(no, format!("edge {u}-{v} given twice")));
        }
        let map = match rest {
            "-" => PartialInjection::empty(k),
            "id" => PartialInjection::identity(k),
            _ => {
                let mut pairs = Vec::new();
                for p in rest.split(',') {
                    let p = p.trim();
                    let (a, b) = p
                        .split_once('>')
                        .ok_or_else(|| syntax(no, format!("expected `a>b`, found `{p}`")))?;
                    let a: Color = number(no, a.trim(), "a colour")?;
                    let b: Color = number(no, b.trim(), "a colour")?;
                    pairs.push((a, b));
                }
                PartialInjection::from_pairs(k, &pairs).map_err(|e| syntax(no, e.to_string()))?
            }
        };
        c.set(u, v, map).map_err(|e| syntax(no, e.to_string()))?;
    }
    Ok(c)
}

pub fn emit_ca(c: &CorrespondenceAssignment) -> String {
    let mut out = format!("correspondence k={}\n", c.k());
    for (e, m) in c.iter() {
        let body = if m.domain_len() == 0 {
            "-".to_string()
        } else if m.is_full() && m.is_straight() {
            "id".to_string()
        } else {
            m.pairs()
                .map(|(a, b)| format!("{a}>{b}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(out, "edge {} {}: {body}", e.u(), e.v());
    }
    out
}

/// Per-vertex label rows after a `<word> k=<k>` header.
fn parse_rows(text: &str, word: &str) -> Result<(usize, Vec<Vec<Label>>), FormatError> {
    let mut it = lines(text);
    let (_, k): (usize, usize) = header(&mut it, word, "k")?;
    let mut rows: Vec<Option<Vec<Label>>> = Vec::new();
    for (no, l) in it {
        let (args, rest) = tagged(no, l, "v")?;
        let [v] = args.as_slice() else {
            return Err(syntax(no, "expected `v <id>: ...`"));
        };
        let v: Vertex = number(no, v, "a vertex id")?;
        if v == 0 {
            return Err(syntax(no, "vertex ids start at 1"));
        }
        let row: Vec<Label> = rest
            .split_whitespace()
            .map(|t| number(no, t, "a label"))
            .collect::<Result<_, _>>()?;
        if row.len() != k {
            return Err(syntax(no, format!("expected {k} labels, found {}", row.len())));
        }
        if rows.len() < v {
            rows.resize(v, None);
        }
        if rows[v - 1].is_some() {
            return Err(syntax(no, format!("vertex {v} given twice")));
        }
        rows[v - 1] = Some(row);
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| FormatError::Invalid(format!("vertex {} has no row", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((k, rows))
}

fn emit_rows(word: &str, k: usize, rows: impl Iterator<Item = Vec<Label>>) -> String {
    let mut out = format!("{word} k={k}\n");
    for (i, r) in rows.enumerate() {
        let _ = writeln!(out, "v {}: {}", i + 1, join(r));
    }
    out
}

pub fn parse_la(text: &str) -> Result<ListAssignment, FormatError> {
    let (k, rows) = parse_rows(text, "lists")?;
    ListAssignment::new(k, rows).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn emit_la(l: &ListAssignment) -> String {
    emit_rows("lists", l.k(), (1..=l.n()).map(|v| l.list(v).to_vec()))
}

pub fn parse_map(text: &str) -> Result<ColorMap, FormatError> {
    let (k, rows) = parse_rows(text, "colormap")?;
    ColorMap::new(k, rows).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn emit_map(m: &ColorMap) -> String {
    emit_rows("colormap", m.k(), (1..=m.n()).map(|v| m.labels(v).to_vec()))
}

/// The `(vertex, colour)` lines of a `.col` file, in file order.
pub fn parse_col(text: &str) -> Result<Vec<(Vertex, Color)>, FormatError> {
    let mut out: Vec<(Vertex, Color)> = Vec::new();
    for (no, l) in lines(text) {
        let (args, rest) = tagged(no, l, "color")?;
        let [v] = args.as_slice() else {
            return Err(syntax(no, "expected `color <v>: <c>`"));
        };
        let v: Vertex = number(no, v, "a vertex id")?;
        let c: Color = number(no, rest, "a colour")?;
        if v == 0 || c == 0 {
            return Err(syntax(no, "vertex ids and colours start at 1"));
        }
        if out.iter().any(|&(w, _)| w == v) {
            return Err(syntax(no, format!("vertex {v} coloured twice")));
        }
        out.push((v, c));
    }
    Ok(out)
}

/// A colouring of `n` vertices from `.col` lines.
pub fn coloring_from_pairs(n: usize, pairs: &[(Vertex, Color)]) -> Result<Coloring, FormatError> {
    let mut f = Coloring::empty(n);
    for &(v, c) in pairs {
        if v > n {
            return Err(FormatError::Invalid(format!("coloured vertex {v} is not in the graph")));
        }
        f.set(v, c);
    }
    Ok(f)
}

pub fn emit_col(f: &Coloring) -> String {
    let mut out = String::new();
    for (v, c) in f.iter() {
        let _ = writeln!(out, "color {v}: {c}");
    }
    out
}

/// Transfer log as TSV: `rule source sink amount`, amounts as `p/q`.
pub fn emit_transfers_tsv(l: &ChargeLedger) -> String {
    let mut out = String::from("rule\tsource\tsink\tamount\n");
    for t in l.log() {
        let Transfer {
            rule,
            source,
            sink,
            amount,
        } = t;
        let _ = writeln!(out, "{rule}\t{source}\t{sink}\t{}/{}", amount.numer(), amount.denom());
    }
    out
}

/// What `extend` needs to lift colourings of a reduced instance back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionScript {
    pub tetrad: [Vertex; 4],
    pub keep: Vertex,
    pub absorbed: Vertex,
    pub perms: Vec<Vec<Color>>,
    pub vertex_map: Vec<Option<Vertex>>,
}

impl ExtensionScript {
    pub fn of(r: &Reduction) -> Self {
        let n = r.original.n();
        ExtensionScript {
            tetrad: r.tetrad.path,
            keep: r.keep,
            absorbed: r.absorbed,
            perms: (1..=n).map(|v| r.relabeling.perm(v).to_vec()).collect(),
            vertex_map: r.vertex_map[1..].to_vec(),
        }
    }

    /// Whether `r` is the reduction this script records.
    pub fn matches(&self, r: &Reduction) -> bool {
        *self == ExtensionScript::of(r)
    }
}

pub fn emit_ext(s: &ExtensionScript) -> String {
    let mut out = String::from("extension\n");
    let _ = writeln!(out, "tetrad: {}", join(s.tetrad));
    let _ = writeln!(out, "merge: {} {}", s.keep, s.absorbed);
    for (i, p) in s.perms.iter().enumerate() {
        let _ = writeln!(out, "perm {}: {}", i + 1, join(p.iter()));
    }
    for (i, m) in s.vertex_map.iter().enumerate() {
        let target = m.map_or("-".to_string(), |w| w.to_string());
        let _ = writeln!(out, "map {}: {target}", i + 1);
    }
    out
}

pub fn parse_ext(text: &str) -> Result<ExtensionScript, FormatError> {
    let mut it = lines(text);
    match it.next() {
        Some((_, "extension")) => {}
        Some((no, _)) => return Err(syntax(no, "expected `extension` header")),
        None => return Err(syntax(1, "missing `extension` header")),
    }
    let mut tetrad = None;
    let mut merge = None;
    let mut perms: Vec<Vec<Color>> = Vec::new();
    let mut vertex_map: Vec<Option<Vertex>> = Vec::new();
    for (no, l) in it {
        let tag = l.split_whitespace().next().unwrap_or("");
        let tag = tag.trim_end_matches(':');
        let (args, rest) = tagged(no, l, tag)?;
        let index = |expected: usize| -> Result<(), FormatError> {
            match args.as_slice() {
                [i] if number::<usize>(no, i, "an index")? == expected => Ok(()),
                _ => Err(syntax(no, format!("expected `{tag} {expected}: ...`"))),
            }
        };
        match tag {
            "tetrad" => {
                let vs = vertex_list(no, rest)?;
                let arr: [Vertex; 4] = vs.try_into().map_err(|_| syntax(no, "tetrad needs 4 vertices"))?;
                tetrad = Some(arr);
            }
            "merge" => {
                let vs = vertex_list(no, rest)?;
                let [a, b] = vs.as_slice() else {
                    return Err(syntax(no, "merge needs 2 vertices"));
                };
                merge = Some((*a, *b));
            }
            "perm" => {
                index(perms.len() + 1)?;
                let p: Vec<Color> = rest
                    .split_whitespace()
                    .map(|t| number(no, t, "a colour"))
                    .collect::<Result<_, _>>()?;
                perms.push(p);
            }
            "map" => {
                index(vertex_map.len() + 1)?;
                vertex_map.push(if rest == "-" {
                    None
                } else {
                    Some(number(no, rest, "a vertex id")?)
                });
            }
            _ => return Err(syntax(no, format!("unknown line `{tag}`"))),
        }
    }
    let tetrad = tetrad.ok_or_else(|| FormatError::Invalid("missing `tetrad:` line".into()))?;
    let (keep, absorbed) = merge.ok_or_else(|| FormatError::Invalid("missing `merge:` line".into()))?;
    Ok(ExtensionScript {
        tetrad,
        keep,
        absorbed,
        perms,
        vertex_map,
    })
}
