//! Line-oriented graph file format.
//!
//! ```text
//! VERTICES
//! v
//! COLORS 2
//! EDGES
//! e 1 v v
//! f 2 v v
//! SQUARES
//! e f -> f e
//! TAIL true
//! ```
//!
//! Edge lines are `id color source range`; square lines `f g -> g' f'`
//! state `f g = g' f'`. Blank lines and `#` comments are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::{is_identifier, EdgeDecl, NGraph, SquareDecl, MAX_COLORS};
use crate::error::{Error, Result};
use crate::multidegree::Color;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Vertices,
    Edges,
    Squares,
}

/// Parses a graph without validating it.
pub fn parse_graph_text(text: &str) -> Result<NGraph> {
    let mut section = Section::None;
    let mut seen: HashSet<&str> = HashSet::new();
    let mut vertices: Vec<(usize, String)> = Vec::new();
    let mut edges: Vec<(usize, EdgeDecl)> = Vec::new();
    let mut squares: Vec<(usize, SquareDecl)> = Vec::new();
    let mut colors: Option<Color> = None;
    let mut tail: Option<bool> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let header = words[0];
        if matches!(header, "VERTICES" | "EDGES" | "SQUARES" | "COLORS" | "TAIL") {
            if !seen.insert(header) {
                return Err(Error::syntax(line, format!("section {header} appears twice")));
            }
            section = Section::None;
            match header {
                "VERTICES" | "EDGES" | "SQUARES" if words.len() > 1 => {
                    return Err(Error::syntax(line, format!("unexpected text after {header}")));
                }
                "VERTICES" => section = Section::Vertices,
                "EDGES" => section = Section::Edges,
                "SQUARES" => section = Section::Squares,
                "COLORS" => {
                    let [_, k] = words[..] else {
                        return Err(Error::syntax(line, "expected `COLORS K`"));
                    };
                    let k: Color = k
                        .parse()
                        .map_err(|_| Error::syntax(line, format!("bad color count `{k}`")))?;
                    if k > MAX_COLORS {
                        return Err(Error::syntax(
                            line,
                            format!("at most {MAX_COLORS} explicit colors are supported"),
                        ));
                    }
                    colors = Some(k);
                }
                _ => {
                    tail = Some(match words[..] {
                        [_, "true"] => true,
                        [_, "false"] => false,
                        _ => return Err(Error::syntax(line, "expected `TAIL true` or `TAIL false`")),
                    });
                }
            }
            continue;
        }
        match section {
            Section::None => return Err(Error::syntax(line, format!("unexpected `{content}` outside a section"))),
            Section::Vertices => {
                for w in words {
                    if !is_identifier(w) {
                        return Err(Error::syntax(line, format!("bad vertex identifier `{w}`")));
                    }
                    vertices.push((line, w.to_string()));
                }
            }
            Section::Edges => {
                let [id, color, source, range] = words[..] else {
                    return Err(Error::syntax(line, "expected `id color source range`"));
                };
                if !is_identifier(id) {
                    return Err(Error::syntax(line, format!("bad edge identifier `{id}`")));
                }
                let color: Color = color
                    .parse()
                    .map_err(|_| Error::syntax(line, format!("bad color `{color}`")))?;
                edges.push((line, EdgeDecl::new(id, color, source, range)));
            }
            Section::Squares => {
                let [f, g, "->", g2, f2] = words[..] else {
                    return Err(Error::syntax(line, "expected `f g -> g' f'`"));
                };
                squares.push((line, [f, g, g2, f2].map(str::to_string)));
            }
        }
    }

    let colors = colors.ok_or_else(|| Error::syntax(0, "missing COLORS section"))?;

    // Resolve names here so that errors carry line numbers.
    let mut vnames: HashSet<&str> = HashSet::new();
    for (line, v) in &vertices {
        if !vnames.insert(v) {
            return Err(Error::syntax(*line, format!("duplicate vertex `{v}`")));
        }
    }
    let mut enames: HashSet<&str> = HashSet::new();
    for (line, e) in &edges {
        if vnames.contains(e.id.as_str()) {
            return Err(Error::syntax(
                *line,
                format!("`{}` names both a vertex and an edge", e.id),
            ));
        }
        if !enames.insert(&e.id) {
            return Err(Error::syntax(*line, format!("duplicate edge `{}`", e.id)));
        }
        if e.color == 0 || e.color > colors {
            return Err(Error::syntax(*line, format!("color {} outside 1..={colors}", e.color)));
        }
        for end in [&e.source, &e.range] {
            if !vnames.contains(end.as_str()) {
                return Err(Error::syntax(*line, format!("unknown vertex `{end}`")));
            }
        }
    }
    for (line, sq) in &squares {
        if let Some(missing) = sq.iter().find(|e| !enames.contains(e.as_str())) {
            return Err(Error::syntax(
                *line,
                format!("square refers to unknown edge `{missing}`"),
            ));
        }
    }

    NGraph::new(
        vertices.into_iter().map(|(_, v)| v).collect(),
        colors,
        edges.into_iter().map(|(_, e)| e).collect(),
        squares.into_iter().map(|(_, s)| s).collect(),
        tail.unwrap_or(false),
    )
}

/// Parses a graph and requires it to pass validation.
pub fn parse_graph_file(text: &str) -> Result<NGraph> {
    let g = parse_graph_text(text)?;
    let report = g.validate();
    if !report.passed() {
        return Err(Error::ValidationFailure(Box::new(report)));
    }
    Ok(g)
}

/// Canonical text form; `parse_graph_text(render_graph(g)) == g`.
pub fn render_graph(g: &NGraph) -> String {
    let mut out = String::from("VERTICES\n");
    for v in g.vertices() {
        let _ = writeln!(out, "{}", g.vertex_name(v));
    }
    let _ = writeln!(out, "COLORS {}", g.colors());
    out.push_str("EDGES\n");
    for e in g.edges() {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            e.id,
            e.color,
            g.vertex_name(e.source),
            g.vertex_name(e.range)
        );
    }
    out.push_str("SQUARES\n");
    for sq in g.squares() {
        let [f, gg, g2, f2] = [sq.f, sq.g, sq.g2, sq.f2].map(|e| g.edge(e).id.as_str());
        let _ = writeln!(out, "{f} {gg} -> {g2} {f2}");
    }
    let _ = writeln!(out, "TAIL {}", g.trivial_tail());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_examples() {
        for (name, g) in catalog::all() {
            let text = render_graph(&g);
            assert_eq!(parse_graph_text(&text).unwrap(), g, "{name}");
            assert_eq!(render_graph(&parse_graph_text(&text).unwrap()), text, "{name}");
        }
        let omega = crate::graph::build_omega(&"{1:1,2:1}".parse().unwrap());
        assert_eq!(parse_graph_text(&render_graph(&omega)).unwrap(), omega);
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let text = "VERTICES\nv\nCOLORS 2\nEDGES\ne 1 v v\nf 2 v v\nSQUARES\ne h -> f e\nTAIL true\n";
        match parse_graph_text(text) {
            Err(Error::Syntax { line, msg }) => {
                assert_eq!(line, 8);
                assert!(msg.contains("`h`"));
            }
            other => panic!("{other:?}"),
        }
        let cases = [
            ("VERTICES\nv\nv\nCOLORS 1\n", 3),
            ("VERTICES\nv\nCOLORS 1\nEDGES\ne 2 v v\n", 5),
            ("VERTICES\nv\nCOLORS 1\nEDGES\ne 1 v w\n", 5),
            ("VERTICES\nv\nCOLORS 1\nEDGES\ne 1 v\n", 5),
            ("v\n", 1),
            ("COLORS x\n", 1),
            ("VERTICES\nv\nCOLORS 1\nTAIL maybe\n", 4),
            ("VERTICES\nv.w\n", 2),
            ("COLORS 1\nCOLORS 1\n", 2),
        ];
        for (text, want) in cases {
            match parse_graph_text(text) {
                Err(Error::Syntax { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn validated_parse_rejects_bad_squares() {
        let text =
            "VERTICES\nv\nCOLORS 2\nEDGES\na 1 v v\nb 1 v v\nx 2 v v\nSQUARES\na x -> x a\nb x -> x a\nTAIL true\n";
        assert!(matches!(parse_graph_file(text), Err(Error::ValidationFailure(_))));
        let fixture = render_graph(&catalog::e2());
        assert_eq!(parse_graph_file(&fixture).unwrap(), catalog::e2());
    }

    #[test]
    fn comments_and_spacing() {
        let text = "# E1\nVERTICES\n  v   # the only vertex\n\nCOLORS 1\nEDGES\nf 1 v v\nSQUARES\nTAIL true\n";
        assert_eq!(parse_graph_file(text).unwrap(), catalog::e1());
    }
}
