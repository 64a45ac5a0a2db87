//! Text formats: 0-based edge lists, DIMACS, ordering files, and labelled
//! edge lists that get remapped onto dense ids.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{Graph, Ordering, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParseWarning {
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    SelfLoop { line: usize, vertex: Vertex },
    EdgeCountMismatch { declared: usize, found: usize },
}

/// A graph read from text, with any repairs that were applied.
#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub warnings: Vec<ParseWarning>,
    /// Original label of each dense vertex id, for labelled inputs.
    pub labels: Option<Vec<String>>,
}

impl ParsedGraph {
    pub fn has_warnings(&self) -> bool {
        !self.warnings.is_empty()
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty content lines as `(1-based line number, trimmed text)`.
fn content_lines<'a>(
    text: &'a str,
    comment: impl Fn(&str) -> bool + 'a,
) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    text.lines().enumerate().filter_map(move |(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || comment(line) {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_number(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| {
        parse_err(
            line,
            format!("{what} {tok:?} is not a non-negative integer"),
        )
    })
}

/// Accumulates edges and warnings, then builds the graph.
struct EdgeCollector {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    seen: std::collections::HashSet<(Vertex, Vertex)>,
    warnings: Vec<ParseWarning>,
}

impl EdgeCollector {
    fn new(n: usize) -> Self {
        EdgeCollector {
            n,
            edges: Vec::new(),
            seen: Default::default(),
            warnings: Vec::new(),
        }
    }

    fn add(&mut self, line: usize, u: Vertex, v: Vertex) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(parse_err(
                    line,
                    format!("vertex {x} out of range for n = {}", self.n),
                ));
            }
        }
        if u == v {
            self.warnings
                .push(ParseWarning::SelfLoop { line, vertex: u });
            return Ok(());
        }
        if !self.seen.insert((u.min(v), u.max(v))) {
            self.warnings
                .push(ParseWarning::DuplicateEdge { line, u, v });
            return Ok(());
        }
        self.edges.push((u, v));
        Ok(())
    }

    fn finish(mut self, declared_m: usize, lines_read: usize) -> Result<ParsedGraph> {
        if declared_m != lines_read {
            self.warnings.push(ParseWarning::EdgeCountMismatch {
                declared: declared_m,
                found: lines_read,
            });
        }
        let graph = Graph::new(self.n, self.edges)?;
        Ok(ParsedGraph {
            graph,
            warnings: self.warnings,
            labels: None,
        })
    }
}

/// Parses the plain format: a header `n m`, then one `u v` pair per line,
/// 0-based. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut lines = content_lines(text, |_| false);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input: expected header \"n m\""))?;
    let mut toks = header.split_whitespace();
    let n = parse_number(toks.next(), hline, "vertex count")?;
    let m = parse_number(toks.next(), hline, "edge count")?;
    if toks.next().is_some() {
        return Err(parse_err(hline, "header must be exactly \"n m\""));
    }
    let mut acc = EdgeCollector::new(n);
    let mut count = 0;
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        let u = parse_number(toks.next(), ln, "endpoint")?;
        let v = parse_number(toks.next(), ln, "endpoint")?;
        if toks.next().is_some() {
            return Err(parse_err(ln, "expected exactly two endpoints"));
        }
        acc.add(ln, u, v)?;
        count += 1;
    }
    acc.finish(m, count)
}

/// Parses DIMACS-style files: `c` comments, a `p <format> n m` header
/// (`tw`, `edge`, `col`, ...), then 1-based edges written either as
/// `e u v` or bare `u v`.
pub fn parse_dimacs(text: &str) -> Result<ParsedGraph> {
    let mut lines = content_lines(text, |l| l.starts_with('c'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input: expected \"p\" line"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") {
        return Err(parse_err(hline, "expected problem line \"p <format> n m\""));
    }
    toks.next()
        .ok_or_else(|| parse_err(hline, "missing format in problem line"))?;
    let n = parse_number(toks.next(), hline, "vertex count")?;
    let m = parse_number(toks.next(), hline, "edge count")?;
    let mut acc = EdgeCollector::new(n);
    let mut count = 0;
    for (ln, line) in lines {
        let mut toks = line.split_whitespace().peekable();
        if toks.peek() == Some(&"e") {
            toks.next();
        }
        let u = parse_number(toks.next(), ln, "endpoint")?;
        let v = parse_number(toks.next(), ln, "endpoint")?;
        if u == 0 || v == 0 {
            return Err(parse_err(ln, "DIMACS vertices are 1-based"));
        }
        acc.add(ln, u - 1, v - 1)?;
        count += 1;
    }
    acc.finish(m, count)
}

/// Picks DIMACS when the first content line is a `p` line, the plain format
/// otherwise.
pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let first = content_lines(text, |l| l.starts_with("c ") || l == "c").next();
    match first {
        Some((_, l)) if l.starts_with("p ") => parse_dimacs(text),
        _ => parse_edge_list(text),
    }
}

/// Parses an edge list whose endpoints are arbitrary tokens. Labels get
/// dense ids in order of first appearance; the table is kept on the result.
pub fn parse_labelled_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut ids: HashMap<&str, Vertex> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut raw = Vec::new();
    for (ln, line) in content_lines(text, |_| false) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(ln, "expected exactly two endpoint labels"));
        }
        let mut endpoints = [0; 2];
        for (slot, tok) in endpoints.iter_mut().zip(toks) {
            *slot = *ids.entry(tok).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() - 1
            });
        }
        let [u, v] = endpoints;
        raw.push((ln, u, v));
    }
    let mut acc = EdgeCollector::new(labels.len());
    for &(ln, u, v) in &raw {
        acc.add(ln, u, v)?;
    }
    let mut parsed = acc.finish(raw.len(), raw.len())?;
    parsed.labels = Some(labels);
    Ok(parsed)
}

/// Label table: line `i` holds the original label of vertex `i`.
pub fn write_label_table(labels: &[String]) -> String {
    let mut out = String::new();
    for l in labels {
        out.push_str(l);
        out.push('\n');
    }
    out
}

/// Writes the plain `n m` edge-list format.
pub fn write_edge_list<I>(n: usize, edges: I) -> String
where
    I: IntoIterator<Item = (Vertex, Vertex)>,
{
    let edges: Vec<_> = edges.into_iter().collect();
    let mut out = String::with_capacity(16 * (edges.len() + 1));
    writeln!(out, "{} {}", n, edges.len()).unwrap();
    for (u, v) in edges {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_graph(g: &Graph) -> String {
    write_edge_list(g.n(), g.edges())
}

/// Ordering files list one vertex per line, smallest first.
pub fn parse_ordering(text: &str, n: usize) -> Result<Ordering> {
    let mut position = Vec::with_capacity(n);
    for (ln, line) in content_lines(text, |_| false) {
        let v = parse_number(Some(line), ln, "vertex")?;
        if v >= n {
            return Err(parse_err(
                ln,
                format!("vertex {v} out of range for n = {n}"),
            ));
        }
        position.push(v);
    }
    if position.len() != n {
        return Err(Error::InvalidOrdering(format!(
            "ordering lists {} vertices, graph has {n}",
            position.len()
        )));
    }
    Ordering::from_positions(position)
}

pub fn write_ordering(l: &Ordering) -> String {
    let mut out = String::new();
    for &v in l.positions() {
        writeln!(out, "{v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_from_edge_list() {
        let p = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(p.graph.n(), 3);
        assert_eq!(p.graph.m(), 2);
        assert!(!p.has_warnings());
    }

    #[test]
    fn duplicate_edge_sets_warning() {
        let p = parse_edge_list("2 2\n0 1\n1 0\n").unwrap();
        assert_eq!(p.graph.m(), 1);
        assert_eq!(
            p.warnings,
            vec![ParseWarning::DuplicateEdge {
                line: 3,
                u: 1,
                v: 0
            }]
        );
    }

    #[test]
    fn self_loop_dropped_with_warning() {
        let p = parse_edge_list("2 2\n0 1\n1 1\n").unwrap();
        assert_eq!(p.graph.m(), 1);
        assert_eq!(
            p.warnings,
            vec![ParseWarning::SelfLoop { line: 3, vertex: 1 }]
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_edge_list("# a path\n3 2 # header\n\n0 1\n# skip\n1 2\n").unwrap();
        assert_eq!(p.graph.m(), 2);
    }

    #[test]
    fn errors_name_the_line() {
        match parse_edge_list("3 1\n0 x\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_edge_list("3 1\n0 1\n0 3\n") {
            Err(Error::Parse { line: 3, message }) => assert!(message.contains("out of range")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_edge_list(""),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn edge_count_mismatch_is_a_warning() {
        let p = parse_edge_list("3 5\n0 1\n").unwrap();
        assert_eq!(
            p.warnings,
            vec![ParseWarning::EdgeCountMismatch {
                declared: 5,
                found: 1
            }]
        );
    }

    #[test]
    fn dimacs_is_one_based() {
        let text = "c a triangle\np tw 3 3\n1 2\n2 3\n1 3\n";
        let g = parse_dimacs(text).unwrap().graph;
        assert_eq!(g.m(), 3);
        assert!(g.has_edge(0, 2));
        let g2 = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3\n").unwrap().graph;
        assert!(g2.has_edge(0, 1) && g2.has_edge(1, 2));
        assert!(parse_dimacs("p edge 3 1\ne 0 1\n").is_err());
        assert!(parse_dimacs("p edge 3 1\ne 1 4\n").is_err());
    }

    #[test]
    fn autodetect() {
        assert_eq!(parse_graph("c x\np tw 2 1\n1 2\n").unwrap().graph.m(), 1);
        assert_eq!(parse_graph("2 1\n0 1\n").unwrap().graph.m(), 1);
    }

    #[test]
    fn labelled_remap() {
        let p = parse_labelled_edge_list("alice bob\nbob carol\ncarol alice\n").unwrap();
        assert_eq!(p.graph.n(), 3);
        assert_eq!(p.graph.m(), 3);
        assert_eq!(p.labels.as_deref().unwrap(), ["alice", "bob", "carol"]);
        assert_eq!(
            write_label_table(p.labels.as_ref().unwrap()),
            "alice\nbob\ncarol\n"
        );
    }

    #[test]
    fn ordering_file() {
        let l = parse_ordering("2\n0\n1\n", 3).unwrap();
        assert_eq!(l.positions(), &[2, 0, 1]);
        assert_eq!(write_ordering(&l), "2\n0\n1\n");
        assert!(parse_ordering("0\n1\n", 3).is_err());
        assert!(parse_ordering("0\n0\n1\n", 3).is_err());
        assert!(parse_ordering("0\n5\n1\n", 3).is_err());
    }

    #[test]
    fn edge_list_written_back_parses() {
        let g = Graph::new(4, [(0, 1), (2, 3), (1, 3)]).unwrap();
        let back = parse_edge_list(&write_graph(&g)).unwrap();
        assert_eq!(back.graph, g);
    }
}
