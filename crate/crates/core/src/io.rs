//! Plain-text graph and hypergraph formats.
//!
//! ```text
//! # scale c=2          (optional, written on sparsifier outputs)
//! g <n> <m>
//! <a> <b> [w]          (m lines)
//!
//! h <n> <m>
//! [w=<w>] v1 v2 ... vk (m lines)
//! ```
//!
//! Lines starting with `#` are comments. Vertex tokens that are all
//! non-negative integers are used as indices; otherwise labels are numbered
//! by first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Graph, Hypergraph};

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Graph(Graph),
    Hypergraph(Hypergraph),
}

impl Instance {
    pub fn n(&self) -> usize {
        match self {
            Instance::Graph(g) => g.n(),
            Instance::Hypergraph(h) => h.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Instance::Graph(g) => g.m(),
            Instance::Hypergraph(h) => h.m(),
        }
    }

    /// Graphs are viewed as rank-2 hypergraphs.
    pub fn to_hypergraph(&self) -> Hypergraph {
        match self {
            Instance::Graph(g) => Hypergraph::from_graph(g),
            Instance::Hypergraph(h) => h.clone(),
        }
    }
}

/// A parsed file.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub instance: Instance,
    /// Original label of each vertex, when the input was not index-based.
    pub labels: Option<Vec<String>>,
    /// Value of a `# scale c=<c>` header.
    pub scale: Option<f64>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Row<'a> {
    line: usize,
    weight: Option<f64>,
    vertices: Vec<&'a str>,
}

fn parse_weight(tok: &str, line: usize) -> Result<f64> {
    let w: f64 = tok
        .parse()
        .map_err(|_| parse_err(line, format!("invalid weight `{tok}`")))?;
    if !w.is_finite() || w < 0.0 {
        return Err(parse_err(line, format!("weight must be finite and non-negative, got {tok}")));
    }
    Ok(w)
}

/// Parses a graph or hypergraph. `known` fixes the label numbering, e.g. to
/// read a sparsifier written with the labels of its source.
pub fn parse(text: &str, known: Option<&[String]>) -> Result<Document> {
    let mut scale = None;
    let mut header: Option<(bool, usize, usize, usize)> = None;
    let mut rows: Vec<Row> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("scale c=") {
                scale = Some(v.trim().parse::<f64>().map_err(|_| parse_err(line, "invalid scale"))?);
            }
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((is_graph, _, m, _)) = header else {
            let kind = match toks[0] {
                "g" => true,
                "h" => false,
                other => return Err(parse_err(line, format!("expected header `g n m` or `h n m`, got `{other}`"))),
            };
            if toks.len() != 3 {
                return Err(parse_err(line, "header needs exactly two counts"));
            }
            let count = |t: &str| t.parse::<usize>().map_err(|_| parse_err(line, format!("invalid count `{t}`")));
            header = Some((kind, count(toks[1])?, count(toks[2])?, line));
            continue;
        };
        if rows.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} edge lines")));
        }
        let row = if is_graph {
            match toks.len() {
                2 => Row { line, weight: None, vertices: toks },
                3 => Row {
                    line,
                    weight: Some(parse_weight(toks[2], line)?),
                    vertices: toks[..2].to_vec(),
                },
                _ => return Err(parse_err(line, "graph lines are `a b [w]`")),
            }
        } else {
            match toks[0].strip_prefix("w=") {
                Some(w) => Row {
                    line,
                    weight: Some(parse_weight(w, line)?),
                    vertices: toks[1..].to_vec(),
                },
                None => Row { line, weight: None, vertices: toks },
            }
        };
        if row.vertices.is_empty() {
            return Err(parse_err(line, "hyperedge without vertices"));
        }
        rows.push(row);
    }
    let Some((is_graph, n, m, header_line)) = header else {
        return Err(parse_err(0, "missing header"));
    };
    if rows.len() != m {
        return Err(parse_err(header_line, format!("declared {m} edges, found {}", rows.len())));
    }

    let numeric = known.is_none() && rows.iter().all(|r| r.vertices.iter().all(|t| t.parse::<usize>().is_ok()));
    let mut map: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    if let Some(k) = known {
        for (i, l) in k.iter().enumerate() {
            map.insert(l.clone(), i);
        }
        labels = k.to_vec();
    }
    let mut resolve = |tok: &str, line: usize| -> Result<usize> {
        if numeric {
            let v: usize = tok.parse().expect("checked numeric");
            if v >= n {
                return Err(parse_err(line, format!("vertex {v} out of range for {n} vertices")));
            }
            return Ok(v);
        }
        if let Some(&v) = map.get(tok) {
            return Ok(v);
        }
        if known.is_some() {
            return Err(parse_err(line, format!("unknown vertex label `{tok}`")));
        }
        if labels.len() == n {
            return Err(parse_err(line, format!("more than {n} distinct vertex labels")));
        }
        map.insert(tok.to_string(), labels.len());
        labels.push(tok.to_string());
        Ok(labels.len() - 1)
    };

    let weighted = rows.iter().any(|r| r.weight.is_some());
    let weights: Option<Vec<f64>> = weighted.then(|| rows.iter().map(|r| r.weight.unwrap_or(1.0)).collect());
    let instance = if is_graph {
        let mut edges = Vec::with_capacity(m);
        for r in &rows {
            let (a, b) = (resolve(r.vertices[0], r.line)?, resolve(r.vertices[1], r.line)?);
            if a == b {
                return Err(parse_err(r.line, format!("self-loop on `{}`", r.vertices[0])));
            }
            edges.push((a, b));
        }
        Instance::Graph(Graph::with_weights(n, edges, weights)?)
    } else {
        let mut edges = Vec::with_capacity(m);
        for r in &rows {
            let mut e = Vec::with_capacity(r.vertices.len());
            for t in &r.vertices {
                let v = resolve(t, r.line)?;
                if e.contains(&v) {
                    return Err(parse_err(r.line, format!("vertex `{t}` repeated in hyperedge")));
                }
                e.push(v);
            }
            if e.len() < 2 {
                return Err(parse_err(r.line, "hyperedge needs at least two vertices"));
            }
            e.sort_unstable();
            edges.push(e);
        }
        Instance::Hypergraph(Hypergraph::with_weights(n, edges, weights)?)
    };
    if !numeric {
        while labels.len() < n {
            labels.push(format!("_{}", labels.len()));
        }
    }
    Ok(Document {
        instance,
        labels: (!numeric).then_some(labels),
        scale,
    })
}

/// Serializes an instance, optionally with a scale header and labels.
pub fn write(instance: &Instance, scale: Option<f64>, labels: Option<&[String]>) -> String {
    let name = |v: usize| -> String {
        match labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    };
    let mut out = String::new();
    if let Some(c) = scale {
        let _ = writeln!(out, "# scale c={c}");
    }
    match instance {
        Instance::Graph(g) => {
            let _ = writeln!(out, "g {} {}", g.n(), g.m());
            for (i, &(a, b)) in g.edges().iter().enumerate() {
                match g.weights() {
                    Some(w) => writeln!(out, "{} {} {}", name(a), name(b), w[i]),
                    None => writeln!(out, "{} {}", name(a), name(b)),
                }
                .expect("writing to a string");
            }
        }
        Instance::Hypergraph(h) => {
            let _ = writeln!(out, "h {} {}", h.n(), h.m());
            for (i, e) in h.edges().iter().enumerate() {
                if let Some(w) = h.weights() {
                    let _ = write!(out, "w={} ", w[i]);
                }
                let names: Vec<String> = e.iter().map(|&v| name(v)).collect();
                let _ = writeln!(out, "{}", names.join(" "));
            }
        }
    }
    out
}

/// `index<TAB>label` lines.
pub fn write_labels(labels: &[String]) -> String {
    labels.iter().enumerate().map(|(i, l)| format!("{i}\t{l}\n")).collect()
}

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_edge() {
        let d = parse("g 2 1\n0 1\n", None).unwrap();
        assert_eq!(d.instance, Instance::Graph(Graph::new(2, vec![(0, 1)]).unwrap()));
        assert!(d.labels.is_none());
    }

    #[test]
    fn weighted_edge() {
        let d = parse("g 3 2\n0 1 2.5\n1 2\n", None).unwrap();
        let Instance::Graph(g) = d.instance else { panic!() };
        assert_eq!(g.weights(), Some(&[2.5, 1.0][..]));
    }

    #[test]
    fn repeated_vertex_names_line() {
        let err = parse("h 4 2\n0 1 2\n# note\n1 3 1\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse("g 2 1\n0 5\n", None), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("g 2 1\n0 x y z\n", None), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("g 2 2\n0 1\n", None), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("q 2 2\n", None), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("g 3 1\n0 1 -2\n", None), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn scale_header_and_labels() {
        let text = "# scale c=2\nh 4 2\nw=0.5 a b c\nw=1 c d\n";
        let d = parse(text, None).unwrap();
        assert_eq!(d.scale, Some(2.0));
        let labels = d.labels.clone().unwrap();
        assert_eq!(labels, vec!["a", "b", "c", "d"]);
        let again = write(&d.instance, d.scale, Some(&labels));
        assert_eq!(again, text);
        let sub = parse("h 4 1\nd a\n", Some(&labels)).unwrap();
        assert_eq!(sub.instance.to_hypergraph().edges(), &[vec![0, 3]]);
        assert!(parse("h 4 1\nd z\n", Some(&labels)).is_err());
    }

    proptest! {
        #[test]
        fn graph_round_trip(n in 2usize..10, raw in proptest::collection::vec((0usize..10, 0usize..10, 0.0f64..5.0), 0..30), weighted: bool) {
            let pairs: Vec<(usize, usize, f64)> = raw.into_iter().map(|(a, b, w)| (a % n, b % n, w)).filter(|(a, b, _)| a != b).collect();
            let edges = pairs.iter().map(|&(a, b, _)| (a, b)).collect();
            let w = (weighted && !pairs.is_empty()).then(|| pairs.iter().map(|p| p.2).collect());
            let g = Instance::Graph(Graph::with_weights(n, edges, w).unwrap());
            let text = write(&g, None, None);
            prop_assert_eq!(parse(&text, None).unwrap().instance, g);
        }

        #[test]
        fn hypergraph_round_trip(n in 2usize..10, raw in proptest::collection::vec((proptest::collection::btree_set(0usize..10, 2..5), 0.0f64..5.0), 0..20), weighted: bool) {
            let edges: Vec<Vec<usize>> = raw.iter().map(|(s, _)| {
                let mut e: Vec<usize> = s.iter().map(|v| v % n).collect();
                e.sort_unstable();
                e.dedup();
                e
            }).filter(|e| e.len() >= 2).collect();
            let w = (weighted && !edges.is_empty()).then(|| (0..edges.len()).map(|i| raw[i].1).collect());
            let h = Instance::Hypergraph(Hypergraph::with_weights(n, edges, w).unwrap());
            let text = write(&h, Some(1.5), None);
            let back = parse(&text, None).unwrap();
            prop_assert_eq!(back.instance, h);
            prop_assert_eq!(back.scale, Some(1.5));
        }
    }
}
