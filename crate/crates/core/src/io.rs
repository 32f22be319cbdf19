//! Adjacency-CSV and edge-list text formats.
//!
//! CSV: comma-separated 0/1 cells, row `i` column `j` is the edge `i -> j`,
//! optionally preceded by a header row of node labels.
//!
//! Edge list: one statement per line, `u -> v`, `u -- v` or `node u`. Blank
//! lines and `#` comments are ignored. Node order is first appearance.

use std::collections::HashMap;

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::graph::{default_labels, CausalGraph};

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
}

fn split_cells(line: &str) -> Vec<&str> {
    line.split(',').map(str::trim).collect()
}

pub fn parse_adjacency_csv(text: &str, has_header: bool) -> Result<CausalGraph> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut rows = lines(text).filter(|(_, l)| !l.trim().is_empty());

    let labels: Option<Vec<String>> = if has_header {
        let (_, header) = rows.next().ok_or(Error::Empty)?;
        Some(
            split_cells(header)
                .into_iter()
                .map(|s| s.trim_matches('"').to_string())
                .collect(),
        )
    } else {
        None
    };

    let body: Vec<Vec<&str>> = rows.map(|(_, l)| split_cells(l)).collect();
    let n = body.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if let Some(l) = &labels {
        if l.len() != n {
            return Err(Error::NonSquare {
                row: 0,
                expected: n,
                found: l.len(),
            });
        }
    }
    let mut adj = BitMatrix::zeros(n);
    for (i, cells) in body.iter().enumerate() {
        if cells.len() != n {
            return Err(Error::NonSquare {
                row: i,
                expected: n,
                found: cells.len(),
            });
        }
        for (j, cell) in cells.iter().enumerate() {
            match *cell {
                "0" => {}
                "1" => adj.set(i, j, true),
                other => {
                    return Err(Error::BadCell {
                        row: i,
                        col: j,
                        value: other.to_string(),
                    })
                }
            }
        }
    }
    CausalGraph::new(labels.unwrap_or_else(|| default_labels(n)), adj)
}

/// True when the first non-blank line holds anything other than 0/1 cells.
pub fn csv_has_header(text: &str) -> bool {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    lines(text)
        .find(|(_, l)| !l.trim().is_empty())
        .map(|(_, l)| split_cells(l).iter().any(|c| *c != "0" && *c != "1"))
        .unwrap_or(false)
}

pub fn write_adjacency_csv(g: &CausalGraph, with_header: bool) -> String {
    let mut out = String::new();
    if with_header {
        out.push_str(&g.labels().join(","));
        out.push('\n');
    }
    for row in g.to_rows() {
        let cells: Vec<&str> = row.iter().map(|&v| if v == 1 { "1" } else { "0" }).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Decl {
    Arrow,
    Line,
}

pub fn parse_edge_list(text: &str) -> Result<CausalGraph> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // unordered pair -> how it was declared
    let mut decls: HashMap<(usize, usize), Decl> = HashMap::new();

    let mut intern = |name: &str, labels: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(name) {
            return i;
        }
        let i = labels.len();
        labels.push(name.to_string());
        index.insert(name.to_string(), i);
        i
    };

    for (lineno, raw) in lines(text) {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let malformed = || Error::MalformedLine {
            line: lineno,
            content: raw.to_string(),
        };
        match tokens.as_slice() {
            ["node", name] => {
                intern(name, &mut labels);
            }
            [u, op @ ("->" | "--"), v] => {
                if u == v {
                    return Err(Error::SelfLoop(u.to_string()));
                }
                let a = intern(u, &mut labels);
                let b = intern(v, &mut labels);
                let decl = if *op == "->" { Decl::Arrow } else { Decl::Line };
                let key = (a.min(b), a.max(b));
                match decls.get(&key) {
                    Some(prev) if *prev != decl => {
                        return Err(Error::ConflictingEdge(u.to_string(), v.to_string()))
                    }
                    _ => {
                        decls.insert(key, decl);
                    }
                }
                edges.push((a, b));
                if decl == Decl::Line {
                    edges.push((b, a));
                }
            }
            _ => return Err(malformed()),
        }
    }
    let n = labels.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut adj = BitMatrix::zeros(n);
    for (a, b) in edges {
        adj.set(a, b, true);
    }
    CausalGraph::new(labels, adj)
}

/// Edge-list text: every node declared first (keeps order and isolated nodes),
/// then one line per undirected or directed edge in row-major order.
pub fn write_edge_list(g: &CausalGraph) -> String {
    let mut out = String::new();
    for l in g.labels() {
        out.push_str("node ");
        out.push_str(l);
        out.push('\n');
    }
    for i in 0..g.n() {
        for j in g.child_bits(i).iter() {
            if g.has_edge(j, i) {
                if i < j {
                    out.push_str(&format!("{} -- {}\n", g.label(i), g.label(j)));
                }
            } else {
                out.push_str(&format!("{} -> {}\n", g.label(i), g.label(j)));
            }
        }
    }
    out
}
