//! The `.uhg` text format and the JSON index report.
//!
//! ```text
//! # comment lines start with '#'
//! uhg 1
//! m n k
//! v1 v2 ... vm      (k edge lines)
//! ```
//!
//! Blank lines are skipped. Edges are validated and sorted on load;
//! [`serialize_uhg`] writes the canonical form with no comments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{validate, Edge, UniformHypergraph, Violation};
use crate::indices::IndexReport;
use crate::modring::ModuleDecomposition;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UhgDocument {
    pub version: u32,
    pub hypergraph: UniformHypergraph,
    pub comments: Vec<String>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split(' ')
        .map(|tok| {
            if tok.is_empty() {
                return Err(parse_err(line_no, "fields must be separated by single spaces"));
            }
            tok.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("expected a base-10 integer, got {tok:?}")))
        })
        .collect()
}

pub fn parse_uhg(text: &str) -> Result<UhgDocument> {
    let mut comments = Vec::new();
    let mut payload = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if let Some(comment) = line.strip_prefix('#') {
            comments.push(comment.to_string());
        } else if !line.trim().is_empty() {
            payload.push((idx + 1, line));
        }
    }
    let mut lines = payload.into_iter();
    let last_line = text.split('\n').count();

    let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "missing \"uhg 1\" header"))?;
    let version = header
        .strip_prefix("uhg ")
        .ok_or_else(|| parse_err(line_no, format!("expected \"uhg {FORMAT_VERSION}\" header")))?;
    let version: u32 = version
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad version {version:?}")))?;
    if version != FORMAT_VERSION {
        return Err(parse_err(line_no, format!("unsupported version {version}, expected {FORMAT_VERSION}")));
    }

    let (line_no, dims) = lines.next().ok_or_else(|| parse_err(last_line, "missing \"m n k\" line"))?;
    let dims = parse_numbers(line_no, dims)?;
    let [m, n, k] = dims[..] else {
        return Err(parse_err(line_no, format!("expected 3 fields \"m n k\", got {}", dims.len())));
    };
    if m < 2 {
        return Err(parse_err(line_no, format!("uniformity {m} is below 2")));
    }

    let mut edges: Vec<Edge> = Vec::with_capacity(k);
    let mut edge_lines = Vec::with_capacity(k);
    for (line_no, line) in lines {
        if edges.len() == k {
            return Err(parse_err(line_no, format!("more than k = {k} edge lines")));
        }
        let edge = parse_numbers(line_no, line)?;
        edges.push(edge);
        edge_lines.push(line_no);
    }
    if edges.len() != k {
        return Err(parse_err(last_line, format!("expected k = {k} edge lines, found {}", edges.len())));
    }
    if let Err(v) = validate(m, n, &edges) {
        let line = match v {
            Violation::WrongArity { edge, .. }
            | Violation::RepeatedVertex { edge, .. }
            | Violation::OutOfRange { edge, .. }
            | Violation::DuplicateEdge { edge } => edge_lines[edge],
            Violation::Uniformity(_) => line_no,
        };
        let message = match v {
            Violation::WrongArity { len, .. } => format!("arity mismatch: {len} vertices, expected {m}"),
            Violation::RepeatedVertex { vertex, .. } => format!("repeated vertex {vertex}"),
            Violation::OutOfRange { vertex, .. } => format!("vertex {vertex} out of range 1..={n}"),
            Violation::DuplicateEdge { .. } => "duplicate edge".to_string(),
            Violation::Uniformity(m) => format!("uniformity {m} is below 2"),
        };
        return Err(parse_err(line, message));
    }
    Ok(UhgDocument {
        version,
        hypergraph: UniformHypergraph::new(m, n, edges)?,
        comments,
    })
}

pub fn parse_uhg_bytes(bytes: &[u8]) -> Result<UhgDocument> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        parse_err(line, "input is not valid UTF-8")
    })?;
    parse_uhg(text)
}

/// Canonical bytes: header, dimensions, sorted edges, trailing newline.
pub fn serialize_uhg(g: &UniformHypergraph) -> String {
    let mut out = format!(
        "uhg {FORMAT_VERSION}\n{} {} {}\n",
        g.uniformity(),
        g.vertex_count(),
        g.edge_count()
    );
    for e in g.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// JSON form of [`IndexReport`]; field order is the wire order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub invariant_divisors: Vec<u64>,
    pub free_rank: usize,
    pub stabilizing_index: String,
    pub cyclic_index: u64,
    pub decomposition: ModuleDecomposition,
    pub method: String,
}

impl From<&IndexReport> for ReportJson {
    fn from(r: &IndexReport) -> Self {
        ReportJson {
            m: r.m,
            n: r.n,
            k: r.k,
            invariant_divisors: r.invariant_divisors.clone(),
            free_rank: r.free_rank,
            stabilizing_index: r.stabilizing_index.to_str_radix(10),
            cyclic_index: r.cyclic_index,
            decomposition: r.decomposition.clone(),
            method: r.method.as_str().to_string(),
        }
    }
}

pub fn report_to_json(r: &IndexReport) -> String {
    serde_json::to_string(&ReportJson::from(r)).expect("report serializes")
}

pub fn report_to_json_pretty(r: &IndexReport) -> String {
    serde_json::to_string_pretty(&ReportJson::from(r)).expect("report serializes")
}
