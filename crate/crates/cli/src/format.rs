//! Plain-text graph files.
//!
//! ```text
//! # comment
//! 4 3
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! The header gives the vertex and edge counts, then one `u v` line per
//! edge with 0-based ids. Blank lines and lines starting with `#` are
//! skipped.

use std::fmt::Write;

use anyhow::{bail, Context, Result};
use nlc2_core::Graph;

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((header_line, header)) = lines.next() else {
        bail!("missing header line `n m`");
    };
    let [n, m] = numbers(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let [u, v] = numbers(line, text)?;
        if u >= n || v >= n {
            bail!("line {line}: vertex id out of range for n = {n}");
        }
        if u == v {
            bail!("line {line}: self-loop at {u}");
        }
        edges.push((u, v));
        if edges.len() > m {
            bail!("line {line}: more edges than the header's {m}");
        }
    }
    if edges.len() != m {
        bail!("header announces {m} edges but {} were given", edges.len());
    }
    let g = Graph::build(n, &edges).with_context(|| "invalid edge list")?;
    if g.m() != m {
        bail!("edge list contains duplicate edges");
    }
    Ok(g)
}

fn numbers(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        bail!("line {line}: expected two integers, found `{text}`");
    }
    let parse = |f: &str| f.parse::<usize>().with_context(|| format!("line {line}: `{f}` is not a vertex id"));
    Ok([parse(fields[0])?, parse(fields[1])?])
}

/// Header plus edges sorted with `u < v`.
pub fn render_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_graph(path: &std::path::Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("in {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blanks() {
        let g = parse_graph("# P4\n\n4 3\n0 1\n# middle\n1 2\n2 3\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn round_trip_is_sorted() {
        let g = parse_graph("3 2\n2 1\n1 0\n").unwrap();
        assert_eq!(render_graph(&g), "3 2\n0 1\n1 2\n");
        assert_eq!(parse_graph(&render_graph(&g)).unwrap().edges(), g.edges());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", "missing header"),
            ("4\n", "line 1"),
            ("3 1\n0 3\n", "line 2"),
            ("3 1\n\n1 1\n", "line 3"),
            ("3 2\n0 1\n", "announces 2"),
            ("3 1\n0 1\n1 2\n", "line 3"),
            ("3 2\n0 1\n1 0\n", "duplicate"),
            ("3 1\n0 x\n", "line 2"),
        ];
        for (text, want) in cases {
            let msg = format!("{:#}", parse_graph(text).unwrap_err());
            assert!(msg.contains(want), "{text:?}: {msg}");
        }
    }
}
