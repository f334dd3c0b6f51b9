use std::collections::BTreeMap;
use std::fmt;

use super::{EdgeId, NGraph};

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub failures: Vec<String>,
    pub skipped: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// All failure messages, prefixed by the check name.
    pub fn failures(&self) -> impl Iterator<Item = String> + '_ {
        self.checks
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| format!("{}: {f}", c.name)))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match (&c.skipped, c.passed()) {
                (Some(why), _) => writeln!(f, "skip {} ({why})", c.name)?,
                (None, true) => writeln!(f, "ok   {}", c.name)?,
                (None, false) => {
                    writeln!(f, "FAIL {}", c.name)?;
                    for msg in &c.failures {
                        writeln!(f, "     {msg}")?;
                    }
                }
            }
        }
        write!(f, "{}", if self.passed() { "valid" } else { "invalid" })
    }
}

struct Collector {
    check: Check,
}

impl Collector {
    fn new(name: &str) -> Self {
        Self {
            check: Check {
                name: name.to_string(),
                failures: Vec::new(),
                skipped: None,
            },
        }
    }

    fn fail(&mut self, msg: String) {
        self.check.failures.push(msg);
    }
}

pub(super) fn validate(g: &NGraph) -> ValidationReport {
    let name = |e: EdgeId| g.edge(e).id.as_str();
    let color = |e: EdgeId| g.edge(e).color;
    let mut checks = Vec::new();

    // Identifiers are resolved at construction; this re-checks the stored
    // indices so that hand-assembled graphs are covered too.
    let mut integrity = Collector::new("referential-integrity");
    for e in g.edges() {
        if e.source.index() >= g.num_vertices() || e.range.index() >= g.num_vertices() {
            integrity.fail(format!("edge {} has an undeclared endpoint", e.id));
        }
        if e.color == 0 || e.color > g.colors() {
            integrity.fail(format!(
                "edge {} has color {} outside 1..={}",
                e.id,
                e.color,
                g.colors()
            ));
        }
    }
    checks.push(integrity.check);

    let mut shape = Collector::new("endpoint-compatibility");
    for sq in g.squares() {
        let (f, gg, g2, f2) = (sq.f, sq.g, sq.g2, sq.f2);
        let label = format!("{} {} -> {} {}", name(f), name(gg), name(g2), name(f2));
        if !(color(f) == color(f2) && color(gg) == color(g2) && color(f) < color(gg)) {
            shape.fail(format!(
                "square {label} does not map colors (i, j) to (j, i) with i < j"
            ));
            continue;
        }
        let (ef, eg, eg2, ef2) = (g.edge(f), g.edge(gg), g.edge(g2), g.edge(f2));
        if ef.source != eg.range {
            shape.fail(format!("square {label}: {} {} is not composable", ef.id, eg.id));
        }
        if eg2.source != ef2.range {
            shape.fail(format!("square {label}: {} {} is not composable", eg2.id, ef2.id));
        }
        if eg2.range != ef.range || ef2.source != eg.source {
            shape.fail(format!("square {label}: endpoints differ"));
        }
    }
    let shape_ok = shape.check.passed();
    checks.push(shape.check);

    // For every color pair, the squares must pair composable (i, j) words
    // bijectively with composable (j, i) words.
    let mut bij = Collector::new("square-bijectivity");
    let mut keys: BTreeMap<(EdgeId, EdgeId), usize> = BTreeMap::new();
    let mut images: BTreeMap<(EdgeId, EdgeId), usize> = BTreeMap::new();
    for sq in g.squares() {
        *keys.entry((sq.f, sq.g)).or_default() += 1;
        *images.entry((sq.g2, sq.f2)).or_default() += 1;
    }
    for (&(f, gg), &n) in &keys {
        if n > 1 {
            bij.fail(format!("conflicting squares for ({}, {})", name(f), name(gg)));
        }
    }
    for (&(g2, f2), &n) in &images {
        if n > 1 {
            bij.fail(format!("pair ({}, {}) is the image of {n} squares", name(g2), name(f2)));
        }
    }
    for lo in 1..=g.colors() {
        for hi in lo + 1..=g.colors() {
            for x in g.edge_ids().filter(|&e| color(e) == lo) {
                for &y in g.edges_into(g.edge(x).source, hi) {
                    if !keys.contains_key(&(x, y)) {
                        bij.fail(format!("missing square for ({}, {})", name(x), name(y)));
                    }
                }
            }
            for y in g.edge_ids().filter(|&e| color(e) == hi) {
                for &x in g.edges_into(g.edge(y).source, lo) {
                    if !images.contains_key(&(y, x)) {
                        bij.fail(format!(
                            "pair ({}, {}) is not the image of any square",
                            name(y),
                            name(x)
                        ));
                    }
                }
            }
        }
    }
    let bij_ok = bij.check.passed();
    checks.push(bij.check);

    let mut hex = Collector::new("hexagon");
    if !(shape_ok && bij_ok) {
        hex.check.skipped = Some("squares incomplete".to_string());
    } else {
        let above = |e: EdgeId| {
            let at = g.edge(e).source;
            (color(e) + 1..=g.colors()).flat_map(move |c| g.edges_into(at, c).iter().copied())
        };
        for a in g.edge_ids() {
            for b in above(a) {
                for c in above(b) {
                    match hexagon_routes(g, a, b, c) {
                        Some((left, right)) if left == right => {}
                        Some((left, right)) => hex.fail(format!(
                            "{} {} {}: reorders to {} {} {} or {} {} {}",
                            name(a),
                            name(b),
                            name(c),
                            name(left[0]),
                            name(left[1]),
                            name(left[2]),
                            name(right[0]),
                            name(right[1]),
                            name(right[2]),
                        )),
                        None => hex.fail(format!("{} {} {}: a square is missing", name(a), name(b), name(c))),
                    }
                }
            }
        }
    }
    checks.push(hex.check);

    let mut sources = Collector::new("no-sources");
    for v in g.vertices() {
        for c in 1..=g.colors() {
            if g.edges_into(v, c).is_empty() {
                sources.fail(format!("vertex {} receives no edge of color {c}", g.vertex_name(v)));
            }
        }
    }
    checks.push(sources.check);

    ValidationReport { checks }
}

/// Fully reverses the 3-colored word `a b c` along both orders of moves.
fn hexagon_routes(g: &NGraph, a: EdgeId, b: EdgeId, c: EdgeId) -> Option<([EdgeId; 3], [EdgeId; 3])> {
    // b c first
    let (c1, b1) = g.swap(b, c).ok()?;
    let (c2, a1) = g.swap(a, c1).ok()?;
    let (b2, a2) = g.swap(a1, b1).ok()?;
    let left = [c2, b2, a2];
    // a b first
    let (b1, a1) = g.swap(a, b).ok()?;
    let (c1, a2) = g.swap(a1, c).ok()?;
    let (c2, b2) = g.swap(b1, c1).ok()?;
    Some((left, [c2, b2, a2]))
}

#[cfg(test)]
mod tests {
    use crate::catalog;
    use crate::graph::{build_omega, NGraph};

    #[test]
    fn examples_validate() {
        for (name, g) in catalog::all() {
            assert!(g.validate().passed(), "{name}:\n{}", g.validate());
        }
    }

    #[test]
    fn missing_square_is_reported() {
        let g = NGraph::new(
            vec!["v".into()],
            2,
            vec![
                crate::graph::EdgeDecl::new("e", 1, "v", "v"),
                crate::graph::EdgeDecl::new("f", 2, "v", "v"),
            ],
            vec![],
            true,
        )
        .unwrap();
        let report = g.validate();
        assert!(!report.passed());
        let bij = report.check("square-bijectivity").unwrap();
        assert!(
            bij.failures.iter().any(|m| m == "missing square for (e, f)"),
            "{report}"
        );
        assert!(report.check("hexagon").unwrap().skipped.is_some());
    }

    #[test]
    fn omega_has_boundary_sources() {
        let g = build_omega(&"{1:1,2:1}".parse().unwrap());
        let report = g.validate();
        assert!(!report.passed());
        assert!(!report.check("no-sources").unwrap().passed());
        assert!(report.check("hexagon").unwrap().passed());
        assert!(report.check("square-bijectivity").unwrap().passed());
    }

    #[test]
    fn broken_hexagon_is_detected() {
        let g = catalog::broken_hexagon();
        let report = g.validate();
        assert!(report.check("square-bijectivity").unwrap().passed(), "{report}");
        assert!(!report.check("hexagon").unwrap().passed(), "{report}");
    }

    #[test]
    fn non_bijective_squares() {
        let text =
            "VERTICES\nv\nCOLORS 2\nEDGES\na 1 v v\nb 1 v v\nx 2 v v\nSQUARES\na x -> x a\nb x -> x a\nTAIL true\n";
        let g = crate::graph::parse_graph_text(text).unwrap();
        let report = g.validate();
        let bij = report.check("square-bijectivity").unwrap();
        assert!(
            bij.failures.iter().any(|m| m.contains("image of 2 squares")),
            "{report}"
        );
        assert!(
            bij.failures.iter().any(|m| m.contains("(x, b) is not the image")),
            "{report}"
        );
    }
}
