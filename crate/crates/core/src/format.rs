//! Line-oriented text formats.
//!
//! Graphs: optional `c ...` comments, a header `p edge <n> <m>` and `m`
//! lines `e <u> <v>` with 1-based ids. Annotated instances add `s <v>` lines
//! and one `k <int>` line. Deletion sets are `d <u> <v>` lines. Formulas use
//! DIMACS `p cnf`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, EdgeSet, Graph, GraphError, Vertex};
use crate::kernelizer::AnnotatedInstance;
use crate::reductions::CnfFormula;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, ParseError> {
    match tok.map(str::parse) {
        Some(Ok(v)) => Ok(v),
        Some(Err(_)) => err(line, format!("malformed {what}")),
        None => err(line, format!("missing {what}")),
    }
}

/// Everything a graph-like file may carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: Graph,
    /// 0-based annotated vertices, in file order.
    pub annotated: Vec<Vertex>,
    pub k: Option<usize>,
}

/// Parses a graph file that may also carry `s` and `k` lines.
pub fn parse_document(text: &str) -> Result<GraphDocument, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut edge_lines = 0;
    let mut annotated = Vec::new();
    let mut k = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        let vertex = |tok: Option<&str>, n: usize| -> Result<Vertex, ParseError> {
            let v: usize = parse_num(line, tok, "vertex id")?;
            if v == 0 || v > n {
                return err(line, format!("vertex id {v} out of range 1..={n}"));
            }
            Ok(v - 1)
        };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return err(line, "duplicate header");
                }
                if toks.next() != Some("edge") {
                    return err(line, "expected header `p edge <n> <m>`");
                }
                let n = parse_num(line, toks.next(), "vertex count")?;
                let m = parse_num(line, toks.next(), "edge count")?;
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return err(line, "edge before header");
                };
                let u = vertex(toks.next(), n)?;
                let v = vertex(toks.next(), n)?;
                if u == v {
                    return err(line, format!("self-loop at vertex {}", u + 1));
                }
                edges.push((u, v));
                edge_lines += 1;
            }
            "s" => {
                let Some((n, _)) = header else {
                    return err(line, "annotation before header");
                };
                annotated.push(vertex(toks.next(), n)?);
            }
            "k" => {
                if k.is_some() {
                    return err(line, "duplicate budget line");
                }
                k = Some(parse_num(line, toks.next(), "budget")?);
            }
            other => return err(line, format!("unknown line type `{other}`")),
        }
        if toks.next().is_some() {
            return err(line, "trailing tokens");
        }
    }
    let Some((n, m)) = header else {
        return err(text.lines().count().max(1), "missing header `p edge <n> <m>`");
    };
    if edge_lines != m {
        return err(
            text.lines().count().max(1),
            format!("header declares {m} edges but {edge_lines} edge lines follow"),
        );
    }
    let graph = Graph::from_edges(n, edges).expect("validated while parsing");
    Ok(GraphDocument { graph, annotated, k })
}

/// Parses a plain graph file; annotation and budget lines are rejected.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let doc = parse_document(text)?;
    if !doc.annotated.is_empty() || doc.k.is_some() {
        return err(0, "unexpected annotation or budget line in a plain graph file");
    }
    Ok(doc.graph)
}

/// Canonical form: header, then edges in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for e in g.edges() {
        writeln!(out, "e {} {}", e.u() + 1, e.v() + 1).unwrap();
    }
    out
}

/// Graph plus a `k` line.
pub fn write_instance(g: &Graph, k: usize) -> String {
    let mut out = write_graph(g);
    writeln!(out, "k {k}").unwrap();
    out
}

pub fn parse_annotated(text: &str) -> Result<AnnotatedInstance, ParseError> {
    let doc = parse_document(text)?;
    let Some(k) = doc.k else {
        return err(text.lines().count().max(1), "missing budget line `k <int>`");
    };
    AnnotatedInstance::new(doc.graph, doc.annotated, k).map_err(|e: GraphError| ParseError {
        line: 0,
        message: e.to_string(),
    })
}

pub fn write_annotated(a: &AnnotatedInstance) -> String {
    let mut out = write_graph(&a.graph);
    for &v in &a.s {
        writeln!(out, "s {}", v + 1).unwrap();
    }
    writeln!(out, "k {}", a.k).unwrap();
    out
}

/// `d <u> <v>` lines; `SOLUTION` and comment lines are skipped.
pub fn parse_deletions(text: &str) -> Result<EdgeSet, ParseError> {
    let mut out = EdgeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") | Some("SOLUTION") => continue,
            Some("d") => {
                let u: usize = parse_num(line, toks.next(), "vertex id")?;
                let v: usize = parse_num(line, toks.next(), "vertex id")?;
                if u == 0 || v == 0 || u == v {
                    return err(line, "invalid edge");
                }
                out.insert(Edge::new(u - 1, v - 1));
            }
            Some(other) => return err(line, format!("unknown line type `{other}`")),
        }
    }
    Ok(out)
}

pub fn write_deletions(f: &EdgeSet) -> String {
    f.iter().map(|e| format!("d {} {}\n", e.u() + 1, e.v() + 1)).collect()
}

pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            let mut toks = trimmed.split_whitespace().skip(1);
            if header.is_some() || toks.next() != Some("cnf") {
                return err(line, "expected a single header `p cnf <vars> <clauses>`");
            }
            let vars = parse_num(line, toks.next(), "variable count")?;
            let count = parse_num(line, toks.next(), "clause count")?;
            header = Some((vars, count));
            continue;
        }
        let Some((vars, _)) = header else {
            return err(line, "clause before header");
        };
        for tok in trimmed.split_whitespace() {
            let lit: i32 = parse_num(line, Some(tok), "literal")?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return err(line, format!("literal {lit} exceeds declared {vars} variables"));
            } else {
                current.push(lit);
            }
        }
    }
    let Some((vars, count)) = header else {
        return err(text.lines().count().max(1), "missing header `p cnf <vars> <clauses>`");
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return err(
            text.lines().count().max(1),
            format!("header declares {count} clauses but {} follow", clauses.len()),
        );
    }
    Ok(CnfFormula::new(vars, clauses))
}

pub fn write_dimacs_cnf(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.num_vars, phi.clauses.len());
    for c in &phi.clauses {
        for l in c {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}
