//! Graph-source mini-language shared by the CLI and FFI surfaces.
//!
//! A source string is resolved as, in order: a generator expression
//! ("turan:12,3", "path:5", "petersen", with "+" joining disjoint-union
//! parts), an existing file of graph6 records, or a literal graph6 record.

use std::path::Path;

use crate::error::Error;
use crate::generate::{self, Family};
use crate::graph::Graph;
use crate::{graph6, Result};

/// Try to interpret `text` as a generator expression. Returns None when the
/// text does not match the grammar at all.
pub fn parse_generator_expr(text: &str) -> Option<Result<Graph>> {
    if text.contains('+') {
        let mut acc = Graph::empty(0).ok()?;
        for part in text.split('+') {
            match parse_generator_expr(part.trim())? {
                Ok(g) => acc = acc.disjoint_union(&g),
                Err(e) => return Some(Err(e)),
            }
        }
        return Some(Ok(acc));
    }
    let (name, args) = match text.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (text.trim(), None),
    };
    let parse_n = |args: Option<&str>| -> Result<usize> {
        args.and_then(|a| a.parse().ok())
            .ok_or_else(|| Error::BadSource(text.to_string()))
    };
    let result = match name {
        "petersen" => generate::gen_named(Family::Petersen, 0),
        "path" => parse_n(args).and_then(|n| generate::gen_named(Family::Path, n)),
        "cycle" => parse_n(args).and_then(|n| generate::gen_named(Family::Cycle, n)),
        "complete" => parse_n(args).and_then(|n| generate::gen_named(Family::Complete, n)),
        "empty" => parse_n(args).and_then(|n| generate::gen_named(Family::Empty, n)),
        "turan" => {
            let parts: Vec<&str> = args.unwrap_or("").split(',').map(str::trim).collect();
            match parts.as_slice() {
                [n, w] => match (n.parse(), w.parse()) {
                    (Ok(n), Ok(w)) => generate::gen_turan(n, w),
                    _ => Err(Error::BadSource(text.to_string())),
                },
                _ => Err(Error::BadSource(text.to_string())),
            }
        }
        _ => return None,
    };
    Some(result)
}

/// Resolve a source string into labeled graphs.
pub fn resolve(text: &str) -> Result<Vec<(String, Graph)>> {
    if let Some(result) = parse_generator_expr(text) {
        return Ok(vec![(text.to_string(), result?)]);
    }
    if Path::new(text).is_file() {
        let body = std::fs::read_to_string(text)?;
        let graphs = graph6::parse_graph6_lines(&body)?;
        return Ok(graphs
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("{text}:{}", i + 1), g))
            .collect());
    }
    match graph6::parse_graph6(text) {
        Ok(g) => Ok(vec![(text.to_string(), g)]),
        Err(Error::InvalidByte(_) | Error::MalformedHeader) => {
            Err(Error::BadSource(text.to_string()))
        }
        Err(e) => Err(e),
    }
}

/// Resolve a source expected to name exactly one graph.
pub fn resolve_single(text: &str) -> Result<Graph> {
    let mut graphs = resolve(text)?;
    if graphs.len() != 1 {
        return Err(Error::BadSource(format!(
            "{text} names {} graphs, expected exactly one",
            graphs.len()
        )));
    }
    Ok(graphs.pop().unwrap().1)
}
