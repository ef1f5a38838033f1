use std::path::Path;

use crate::constructions::Constructions;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Edge list: one `i j` pair per line, optional `n <count>` header, `#` comments.
/// Without a header the vertex count is the largest index plus one.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Parse {
            line: i + 1,
            msg: format!("{msg}: '{line}'"),
        };
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["n", k] => n = Some(k.parse::<usize>().map_err(|_| bad("bad vertex count"))?),
            [a, b] => {
                let a = a.parse::<usize>().map_err(|_| bad("bad vertex index"))?;
                let b = b.parse::<usize>().map_err(|_| bad("bad vertex index"))?;
                edges.push((a, b));
            }
            _ => return Err(bad("expected 'i j' or 'n count'")),
        }
    }
    let n = match n {
        Some(n) => n,
        None => edges
            .iter()
            .map(|&(a, b)| a.max(b) + 1)
            .max()
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: "empty edge list".into(),
            })?,
    };
    Graph::from_edges(n, &edges)
}

/// One graph6 string per line; blank lines and `>>graph6<<` headers are skipped.
pub fn read_graph6_file(path: &Path) -> Result<Vec<Graph>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim().trim_start_matches(">>graph6<<");
        if line.is_empty() {
            continue;
        }
        out.push(Graph::from_graph6(line).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?);
    }
    Ok(out)
}

/// A graph from a graph6 string, a named graph of the constructions file, or an edge list.
pub fn resolve_graph(
    spec: Option<&str>,
    edges: Option<&Path>,
    config: &Constructions,
) -> Result<Graph> {
    match (spec, edges) {
        (_, Some(p)) => parse_edge_list(&std::fs::read_to_string(p)?),
        (Some(s), None) => match config.graph.get(s) {
            Some(named) => named.graph(),
            None => Graph::from_graph6(s),
        },
        (None, None) => Err(Error::Parse {
            line: 0,
            msg: "no graph given".into(),
        }),
    }
}
