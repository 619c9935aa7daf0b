//! Graph ingestion: graph6 records and a JSON edge-list schema.
//!
//! graph6 follows McKay's format: a size prefix `N(n)` followed by the upper
//! triangle of the adjacency matrix in column order (`x(0,1) x(0,2) x(1,2)
//! x(0,3) ...`), packed six bits per printable byte (value + 63). Files may
//! start with the `>>graph6<<` header.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::graph::Graph;

pub const DEFAULT_MAX_VERTICES: usize = 100_000;
const HEADER: &[u8] = b">>graph6<<";

/// Options for graph6 decoding.
#[derive(Clone, Copy, Debug)]
pub struct Graph6Options {
    pub max_vertices: usize,
}

impl Default for Graph6Options {
    fn default() -> Self {
        Graph6Options {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

/// Decodes every graph6 record in `bytes`, one record per line.
pub fn parse_graph6(bytes: &[u8]) -> Result<Vec<Graph>, ParseError> {
    parse_graph6_with(bytes, Graph6Options::default())
}

pub fn parse_graph6_with(bytes: &[u8], opts: Graph6Options) -> Result<Vec<Graph>, ParseError> {
    let mut graphs = Vec::new();
    for (idx, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line = idx + 1;
        let mut rec = raw.strip_suffix(b"\r").unwrap_or(raw);
        if let Some(rest) = rec.strip_prefix(HEADER) {
            rec = rest;
        }
        if rec.is_empty() {
            continue;
        }
        graphs.push(decode_record(rec, line, opts)?);
    }
    Ok(graphs)
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Graph6 {
        line,
        message: message.into(),
    }
}

fn decode_record(rec: &[u8], line: usize, opts: Graph6Options) -> Result<Graph, ParseError> {
    if rec[0] == b':' || rec[0] == b';' {
        return Err(malformed(
            line,
            "sparse6/digraph6 records are not supported",
        ));
    }
    if let Some(pos) = rec.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(malformed(
            line,
            format!(
                "byte 0x{:02x} at offset {pos} is outside the graph6 range",
                rec[pos]
            ),
        ));
    }
    let (n, body) = decode_size(rec, line)?;
    if n > opts.max_vertices {
        return Err(ParseError::TooLarge {
            line,
            n,
            cap: opts.max_vertices,
        });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(malformed(
            line,
            format!(
                "adjacency field has {} bytes, expected {expected} for n = {n}",
                body.len()
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unique(n, edges))
}

fn decode_size(rec: &[u8], line: usize) -> Result<(usize, &[u8]), ParseError> {
    let take = |bytes: &[u8], count: usize| -> Result<usize, ParseError> {
        if bytes.len() < count {
            return Err(malformed(line, "truncated size field"));
        }
        Ok(bytes[..count]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    if rec[0] != 126 {
        return Ok(((rec[0] - 63) as usize, &rec[1..]));
    }
    if rec.len() >= 2 && rec[1] == 126 {
        let n = take(&rec[2..], 6)?;
        return Ok((n, &rec[8..]));
    }
    let n = take(&rec[1..], 3)?;
    Ok((n, &rec[4..]))
}

/// Encodes `g` as a single graph6 record without a trailing newline.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonGraph {
    n: i64,
    edges: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_labels: Option<Vec<u32>>,
    /// `[u, v, label]` triples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_labels: Option<Vec<[i64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

fn index(value: i64, n: usize) -> Result<usize, ParseError> {
    usize::try_from(value)
        .ok()
        .filter(|&v| v < n)
        .ok_or_else(|| ParseError::Schema(format!("vertex index {value} out of range 0..{n}")))
}

impl JsonGraph {
    fn into_graph(self) -> Result<Graph, ParseError> {
        let n = usize::try_from(self.n)
            .map_err(|_| ParseError::Schema(format!("negative vertex count {}", self.n)))?;
        let edges = self
            .edges
            .iter()
            .map(|[u, v]| Ok((index(*u, n)?, index(*v, n)?)))
            .collect::<Result<Vec<_>, ParseError>>()?;
        let mut g = Graph::from_edges(n, edges)?;
        if let Some(labels) = self.vertex_labels {
            g = g.with_vertex_labels(labels)?;
        }
        if let Some(labels) = self.edge_labels {
            let triples = labels
                .iter()
                .map(|[u, v, l]| {
                    let l = u32::try_from(*l)
                        .map_err(|_| ParseError::Schema(format!("invalid edge label {l}")))?;
                    Ok(((index(*u, n)?, index(*v, n)?), l))
                })
                .collect::<Result<Vec<_>, ParseError>>()?;
            g = g.with_edge_labels(triples)?;
        }
        if let Some(name) = self.name {
            g = g.with_name(name);
        }
        Ok(g)
    }

    fn from_graph(g: &Graph) -> Self {
        JsonGraph {
            n: g.n() as i64,
            edges: g
                .edges()
                .iter()
                .map(|&(u, v)| [u as i64, v as i64])
                .collect(),
            vertex_labels: g.vertex_labels().map(<[u32]>::to_vec),
            edge_labels: g.edge_labels().map(|m| {
                m.iter()
                    .map(|(&(u, v), &l)| [u as i64, v as i64, l as i64])
                    .collect()
            }),
            name: g.name().map(str::to_owned),
        }
    }
}

/// Parses one JSON graph object.
pub fn parse_json_graph(text: &str) -> Result<Graph, ParseError> {
    let raw: JsonGraph = serde_json::from_str(text)?;
    raw.into_graph()
}

/// Parses a dataset: a JSON array of graph objects, a single object, or one
/// object per line.
pub fn parse_json_graphs(text: &str) -> Result<Vec<Graph>, ParseError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let raw: Vec<JsonGraph> = serde_json::from_str(trimmed)?;
        return raw.into_iter().map(JsonGraph::into_graph).collect();
    }
    let mut out = Vec::new();
    for item in serde_json::Deserializer::from_str(trimmed).into_iter::<JsonGraph>() {
        out.push(item?.into_graph()?);
    }
    Ok(out)
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&JsonGraph::from_graph(g)).expect("serialisable graph")
}

/// Input format guessed from content: JSON when the first non-blank byte is
/// `{` or `[` and the text parses as JSON, graph6 otherwise (`[` and `{` also
/// start graph6 lines for n = 28 and n = 60).
pub fn parse_graphs(bytes: &[u8]) -> Result<Vec<Graph>, ParseError> {
    let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
    let graphs = match first {
        None => return Err(ParseError::Empty),
        Some(b'{') | Some(b'[') => {
            let text = std::str::from_utf8(bytes)
                .map_err(|e| ParseError::Schema(format!("input is not UTF-8: {e}")))?;
            match parse_json_graphs(text) {
                Ok(gs) => gs,
                Err(ParseError::Json(e)) if e.is_syntax() || e.is_eof() => {
                    parse_graph6(bytes).map_err(|_| ParseError::Json(e))?
                }
                Err(e) => return Err(e),
            }
        }
        Some(_) => parse_graph6(bytes)?,
    };
    if graphs.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(graphs)
}

/// Reads graphs from a file, or from standard input when `path` is `-`.
pub fn read_graphs(path: &Path) -> Result<Vec<Graph>, ParseError> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf)?;
        buf
    } else {
        std::fs::read(path)?
    };
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("stdin")
        .to_owned();
    let graphs = parse_graphs(&bytes)?;
    Ok(graphs
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            if g.name().is_some() {
                g
            } else {
                g.with_name(format!("{stem}#{i}"))
            }
        })
        .collect())
}
