//! Plain-text formats. Blank lines and `#` comments are ignored everywhere.
//!
//! * tree: `n`, then `n - 1` lines `u v`
//! * search tree: `n`, the root id, then `child parent` lines
//! * frequencies: lines `node count`
//! * sequence: whitespace-separated node ids

use std::fmt::Write as _;

use stt_core::opt::FrequencyMap;
use stt_core::{NodeId, SearchTree, UnrootedTree};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
    #[error(transparent)]
    Invalid(#[from] stt_core::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty content lines with 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn numbers<const N: usize>(line: usize, text: &str) -> Result<[u64; N], FormatError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != N {
        return Err(syntax(
            line,
            format!("expected {N} field(s), found {}", fields.len()),
        ));
    }
    let mut out = [0u64; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f
            .parse()
            .map_err(|_| syntax(line, format!("`{f}` is not a non-negative integer")))?;
    }
    Ok(out)
}

fn node(line: usize, value: u64, n: usize) -> Result<usize, FormatError> {
    if value as usize >= n {
        return Err(syntax(
            line,
            format!("node {value} out of range for {n} nodes"),
        ));
    }
    Ok(value as usize)
}

pub fn parse_tree(text: &str) -> Result<UnrootedTree, FormatError> {
    let mut lines = content_lines(text);
    let (first, head) = lines
        .next()
        .ok_or(FormatError::Truncated("missing node count"))?;
    let [n] = numbers::<1>(first, head)?;
    let n = n as usize;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (line, text) in lines {
        let [u, v] = numbers::<2>(line, text)?;
        edges.push((node(line, u, n)?, node(line, v, n)?));
    }
    if edges.len() != n.saturating_sub(1) {
        return Err(syntax(
            first,
            format!(
                "expected {} edges, found {}",
                n.saturating_sub(1),
                edges.len()
            ),
        ));
    }
    Ok(UnrootedTree::new(n, edges)?)
}

pub fn write_tree(tree: &UnrootedTree) -> String {
    let mut out = format!("{}\n", tree.len());
    for (u, v) in tree.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_stt<'s>(text: &str, space: &'s UnrootedTree) -> Result<SearchTree<'s>, FormatError> {
    let mut lines = content_lines(text);
    let (first, head) = lines
        .next()
        .ok_or(FormatError::Truncated("missing node count"))?;
    let [n] = numbers::<1>(first, head)?;
    if n as usize != space.len() {
        return Err(syntax(
            first,
            format!(
                "search tree has {n} nodes but the space has {}",
                space.len()
            ),
        ));
    }
    let n = n as usize;
    let (line, text) = lines.next().ok_or(FormatError::Truncated("missing root"))?;
    let [root] = numbers::<1>(line, text)?;
    let root = node(line, root, n)?;
    let mut parent: Vec<Option<NodeId>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    for (line, text) in lines {
        let [c, p] = numbers::<2>(line, text)?;
        let (c, p) = (node(line, c, n)?, node(line, p, n)?);
        if std::mem::replace(&mut seen[c], true) {
            return Err(syntax(
                line,
                format!("node {c} appears twice (or is the root)"),
            ));
        }
        parent[c] = Some(NodeId::new(p));
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(syntax(first, format!("node {missing} has no parent line")));
    }
    Ok(SearchTree::from_parents(space, parent)?)
}

pub fn write_stt(tree: &SearchTree<'_>) -> String {
    let mut out = format!("{}\n{}\n", tree.len(), tree.root());
    for (c, p) in tree.parents().iter().enumerate() {
        if let Some(p) = p {
            writeln!(out, "{c} {p}").unwrap();
        }
    }
    out
}

/// Frequencies; nodes without a line get count 0.
pub fn parse_frequencies(text: &str, n: usize) -> Result<FrequencyMap, FormatError> {
    let mut p = FrequencyMap::zeros(n);
    for (line, text) in content_lines(text) {
        let [v, count] = numbers::<2>(line, text)?;
        p.set(NodeId::new(node(line, v, n)?), count);
    }
    Ok(p)
}

pub fn write_frequencies(p: &FrequencyMap) -> String {
    let mut out = String::new();
    for (v, c) in p.as_slice().iter().enumerate() {
        writeln!(out, "{v} {c}").unwrap();
    }
    out
}

pub fn parse_sequence(text: &str, n: usize) -> Result<Vec<NodeId>, FormatError> {
    let mut out = Vec::new();
    for (line, text) in content_lines(text) {
        for f in text.split_whitespace() {
            let v: u64 = f
                .parse()
                .map_err(|_| syntax(line, format!("`{f}` is not a node id")))?;
            out.push(NodeId::new(node(line, v, n)?));
        }
    }
    Ok(out)
}

pub fn write_sequence(seq: &[NodeId]) -> String {
    let mut out = seq
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    out
}
