//! Edge-list text format.
//!
//! UTF-8, one edge per line as two whitespace-separated labels, `#` starts
//! a comment line, blank lines are ignored. A line holding a single label
//! declares an isolated vertex.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Drop self-loops and repeated edges instead of failing.
    pub dedupe: bool,
}

pub fn parse_edge_list(text: &str, opts: ParseOptions) -> Result<Graph> {
    let mut builder = GraphBuilder::new().dedupe(opts.dedupe);
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let located = |e: Error| Error::Parse { line: i + 1, msg: e.to_string() };
        match tokens.as_slice() {
            [v] => {
                builder.add_vertex(v);
            }
            [u, v] => builder.add_edge(u, v).map_err(located)?,
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected two labels, found {}", tokens.len()),
                })
            }
        }
    }
    Ok(builder.build())
}

/// Reads and parses a file. I/O failures come back as `std::io::Error`.
pub fn read_edge_list(path: &Path, opts: ParseOptions) -> std::result::Result<Result<Graph>, std::io::Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_edge_list(&text, opts))
}

/// Serialises `g`, optionally preceded by `# header`. Edges are written in
/// ascending index order; isolated vertices get a line of their own.
pub fn write_edge_list(g: &Graph, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            writeln!(out, "# {line}").unwrap();
        }
    }
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            writeln!(out, "{}", g.label(v)).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "# fixture\n\nt a\n  t l  \n# more\nl e\n";
        let g = parse_edge_list(text, ParseOptions::default()).unwrap();
        assert_eq!((g.n(), g.m()), (4, 3));
        assert_eq!(g.labels(), ["t", "a", "l", "e"]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_edge_list("a b\nb c d\n", ParseOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_edge_list("a b\na a\n", ParseOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_edge_list("a b\nb a\n", ParseOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let g = parse_edge_list("a b\nb a\na a\n", ParseOptions { dedupe: true }).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn unicode_labels() {
        let g = parse_edge_list("α β\nβ γ\n", ParseOptions::default()).unwrap();
        assert_eq!(g.labels(), ["α", "β", "γ"]);
    }

    #[test]
    fn isolated_vertices_survive() {
        let g = crate::graph::Graph::from_index_edges(3, &[(0, 2)]).unwrap();
        let text = write_edge_list(&g, Some("model=x"));
        assert_eq!(text, "# model=x\n1\n0 2\n");
        let back = parse_edge_list(&text, ParseOptions::default()).unwrap();
        assert!(back.same_labelled_graph(&g));
    }

    proptest! {
        #[test]
        fn round_trip((n, mask) in (1usize..12).prop_flat_map(|n| (Just(n), proptest::bits::u64::between(0, n * (n - 1) / 2)))) {
            let g = from_mask(n, mask);
            let text = write_edge_list(&g, Some("header"));
            let back = parse_edge_list(&text, ParseOptions::default()).unwrap();
            prop_assert!(back.same_labelled_graph(&g));
            prop_assert_eq!(write_edge_list(&back, Some("header")).lines().count(), text.lines().count());
        }
    }

    #[test]
    fn fig2_round_trip() {
        let g = fig2();
        let back = parse_edge_list(&write_edge_list(&g, None), ParseOptions::default()).unwrap();
        assert!(back.same_labelled_graph(&g));
    }
}
