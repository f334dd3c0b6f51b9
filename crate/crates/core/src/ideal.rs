//! Hereditary and saturated vertex sets.
//!
//! Gauge-invariant (and basic graded) ideals correspond to saturated
//! hereditary vertex sets, so everything here works at the vertex level.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeDecl, EdgeId, NGraph, SquareDecl, VertexId};

/// A set of vertices of a fixed graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(BTreeSet<VertexId>);

impl VertexSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn all(g: &NGraph) -> Self {
        g.vertices().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self(&self.0 | &other.0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self(&self.0 & &other.0)
    }

    pub fn complement(&self, g: &NGraph) -> Self {
        g.vertices().filter(|v| !self.contains(*v)).collect()
    }

    /// Parses `u,v`, `{u,v}` or `{}`; whitespace around names is ignored.
    pub fn parse(g: &NGraph, text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(t);
        if t.trim().is_empty() {
            return Ok(Self::empty());
        }
        t.split(',').map(|name| g.vertex(name.trim())).collect()
    }

    pub fn render(&self, g: &NGraph) -> String {
        let names: Vec<&str> = self.iter().map(|v| g.vertex_name(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Lattice order: by size, then by sorted members.
    fn sort_key(&self) -> (usize, Vec<VertexId>) {
        (self.len(), self.iter().collect())
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Every edge ranged in `h` is sourced in `h`.
pub fn is_hereditary(g: &NGraph, h: &VertexSet) -> bool {
    g.edges().iter().all(|e| !h.contains(e.range) || h.contains(e.source))
}

/// Vertices outside `h` all of whose incoming edges of some explicit color
/// are sourced in `h`. Tail colors never qualify since their only edge is
/// a loop.
fn forced(g: &NGraph, h: &VertexSet) -> Vec<VertexId> {
    g.vertices()
        .filter(|&v| !h.contains(v))
        .filter(|&v| (1..=g.colors()).any(|c| g.edges_into(v, c).iter().all(|&e| h.contains(g.edge(e).source))))
        .collect()
}

/// No vertex outside `h` has all its sources of some degree `e_c` in `h`.
pub fn is_saturated(g: &NGraph, h: &VertexSet) -> bool {
    forced(g, h).is_empty()
}

/// The smallest saturated hereditary superset.
pub fn closure(g: &NGraph, h: &VertexSet) -> VertexSet {
    let mut out = h.clone();
    loop {
        let mut changed = false;
        for e in g.edges() {
            if out.contains(e.range) && out.insert(e.source) {
                changed = true;
            }
        }
        if !changed {
            let add = forced(g, &out);
            if add.is_empty() {
                return out;
            }
            for v in add {
                out.insert(v);
            }
        }
    }
}

/// All saturated hereditary sets, ordered by size and then members.
///
/// Every such set is the join of the closures of its vertices, so the
/// lattice is generated from principal closures under joins.
pub fn enumerate_lattice(g: &NGraph) -> Vec<VertexSet> {
    let principal: Vec<VertexSet> = g.vertices().map(|v| closure(g, &[v].into_iter().collect())).collect();
    let mut seen: BTreeSet<(usize, Vec<VertexId>)> = BTreeSet::new();
    let mut queue = VecDeque::from([closure(g, &VertexSet::empty())]);
    queue.extend(principal.iter().cloned());
    let mut found = Vec::new();
    while let Some(h) = queue.pop_front() {
        if !seen.insert(h.sort_key()) {
            continue;
        }
        for p in &principal {
            if !p.is_subset(&h) {
                queue.push_back(closure(g, &h.union(p)));
            }
        }
        found.push(h);
    }
    found.sort_by_key(VertexSet::sort_key);
    found
}

fn require_closed(g: &NGraph, h: &VertexSet) -> Result<()> {
    if is_hereditary(g, h) && is_saturated(g, h) {
        Ok(())
    } else {
        Err(Error::NotSaturatedHereditary(h.render(g)))
    }
}

/// The graph on the vertices outside `h`, with the edges and squares that
/// avoid `h`.
pub fn quotient(g: &NGraph, h: &VertexSet) -> Result<NGraph> {
    require_closed(g, h)?;
    let kept = |e: EdgeId| !h.contains(g.edge(e).source);
    let vertices = g
        .vertices()
        .filter(|v| !h.contains(*v))
        .map(|v| g.vertex_name(v).to_string())
        .collect();
    let edges = g
        .edge_ids()
        .filter(|&e| kept(e))
        .map(|e| g.edge(e))
        .map(|e| EdgeDecl::new(e.id.clone(), e.color, g.vertex_name(e.source), g.vertex_name(e.range)))
        .collect();
    let squares: Vec<SquareDecl> = g
        .squares()
        .iter()
        .filter(|sq| [sq.f, sq.g, sq.g2, sq.f2].into_iter().all(kept))
        .map(|sq| [sq.f, sq.g, sq.g2, sq.f2].map(|e| g.edge(e).id.clone()))
        .collect();
    NGraph::new(vertices, g.colors(), edges, squares, g.trivial_tail())
}

fn search(g: &NGraph, start: impl IntoIterator<Item = VertexId>, backward: bool) -> VertexSet {
    let mut out: VertexSet = start.into_iter().collect();
    let mut stack: Vec<VertexId> = out.iter().collect();
    while let Some(x) = stack.pop() {
        for e in g.edges() {
            let (from, to) = if backward {
                (e.range, e.source)
            } else {
                (e.source, e.range)
            };
            if from == x && out.insert(to) {
                stack.push(to);
            }
        }
    }
    out
}

/// `T(w)`: sources of paths ranged at `w`, including `w`.
pub fn reach_t(g: &NGraph, w: VertexId) -> VertexSet {
    search(g, [w], true)
}

/// Ranges of paths sourced in `h`, including `h`.
pub fn hbar(g: &NGraph, h: &VertexSet) -> VertexSet {
    search(g, h.iter(), false)
}

/// The vertex set of the annihilator ideal.
pub fn perp(g: &NGraph, h: &VertexSet) -> Result<VertexSet> {
    require_closed(g, h)?;
    Ok(hbar(g, h).complement(g))
}

/// The vertex set of the double annihilator: all `w` with `T(w)` inside
/// `hbar(h)`.
pub fn double_perp(g: &NGraph, h: &VertexSet) -> Result<VertexSet> {
    require_closed(g, h)?;
    let hb = hbar(g, h);
    Ok(g.vertices().filter(|&w| reach_t(g, w).is_subset(&hb)).collect())
}

pub fn is_regular(g: &NGraph, h: &VertexSet) -> Result<bool> {
    Ok(double_perp(g, h)? == *h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn set(g: &NGraph, s: &str) -> VertexSet {
        VertexSet::parse(g, s).unwrap()
    }

    fn show(g: &NGraph, sets: &[VertexSet]) -> Vec<String> {
        sets.iter().map(|h| h.render(g)).collect()
    }

    #[test]
    fn hereditary_and_saturated() {
        let e4 = catalog::e4();
        assert!(is_hereditary(&e4, &set(&e4, "v")));
        assert!(!is_hereditary(&e4, &set(&e4, "u")));
        assert!(is_hereditary(&e4, &VertexSet::all(&e4)));
        assert!(is_saturated(&e4, &set(&e4, "v")));
        let e4p = catalog::e4p();
        assert!(!is_saturated(&e4p, &set(&e4p, "w")));
        assert!(is_saturated(&e4p, &VertexSet::empty()));
    }

    #[test]
    fn closures() {
        let e4p = catalog::e4p();
        assert_eq!(closure(&e4p, &set(&e4p, "w")), set(&e4p, "v,w"));
        let e4 = catalog::e4();
        assert_eq!(closure(&e4, &set(&e4, "v")), set(&e4, "v"));
        assert_eq!(closure(&e4, &set(&e4, "u")), set(&e4, "u,v"));
        assert!(closure(&e4, &VertexSet::empty()).is_empty());
    }

    #[test]
    fn lattices() {
        let e4 = catalog::e4();
        assert_eq!(show(&e4, &enumerate_lattice(&e4)), ["{}", "{v}", "{u,v}"]);
        let e1 = catalog::e1();
        assert_eq!(show(&e1, &enumerate_lattice(&e1)), ["{}", "{v}"]);
        let e5 = catalog::e5();
        assert_eq!(show(&e5, &enumerate_lattice(&e5)), ["{}", "{u}", "{v}", "{u,v}"]);
        let e4p = catalog::e4p();
        assert_eq!(show(&e4p, &enumerate_lattice(&e4p)), ["{}", "{v,w}"]);
    }

    #[test]
    fn quotients() {
        let e4 = catalog::e4();
        let q = quotient(&e4, &set(&e4, "v")).unwrap();
        assert_eq!(
            crate::graph::render_graph(&q),
            "VERTICES\nu\nCOLORS 1\nEDGES\nx 1 u u\nSQUARES\nTAIL true\n"
        );
        assert_eq!(quotient(&e4, &VertexSet::empty()).unwrap(), e4);
        let e5 = catalog::e5();
        let q = quotient(&e5, &set(&e5, "v")).unwrap();
        assert_eq!(q.num_vertices(), 1);
        assert_eq!(q.num_edges(), 2);
        assert!(q.validate().passed());
        assert!(matches!(
            quotient(&e4, &set(&e4, "u")),
            Err(Error::NotSaturatedHereditary(_))
        ));
    }

    #[test]
    fn reachability() {
        let e4 = catalog::e4();
        let (u, v) = (e4.vertex("u").unwrap(), e4.vertex("v").unwrap());
        assert_eq!(reach_t(&e4, u), set(&e4, "u,v"));
        assert_eq!(reach_t(&e4, v), set(&e4, "v"));
        assert_eq!(hbar(&e4, &set(&e4, "v")), set(&e4, "u,v"));
        assert!(hbar(&e4, &VertexSet::empty()).is_empty());
        let e5 = catalog::e5();
        assert_eq!(hbar(&e5, &set(&e5, "v")), set(&e5, "v"));
    }

    #[test]
    fn regular_ideals() {
        let e4 = catalog::e4();
        let v = set(&e4, "v");
        assert!(perp(&e4, &v).unwrap().is_empty());
        assert_eq!(double_perp(&e4, &v).unwrap(), set(&e4, "u,v"));
        assert!(!is_regular(&e4, &v).unwrap());
        assert!(is_regular(&e4, &VertexSet::all(&e4)).unwrap());
        assert_eq!(perp(&e4, &VertexSet::empty()).unwrap(), VertexSet::all(&e4));
        assert!(double_perp(&e4, &VertexSet::empty()).unwrap().is_empty());
        let e5 = catalog::e5();
        let v = set(&e5, "v");
        assert_eq!(perp(&e5, &v).unwrap(), set(&e5, "u"));
        assert_eq!(double_perp(&e5, &v).unwrap(), v);
        assert!(is_regular(&e5, &v).unwrap());
        assert!(perp(&e4, &set(&e4, "u")).is_err());
    }

    #[test]
    fn set_syntax() {
        let e4 = catalog::e4();
        assert_eq!(set(&e4, "{ u , v }"), VertexSet::all(&e4));
        assert!(set(&e4, "{}").is_empty());
        assert!(matches!(VertexSet::parse(&e4, "u,w"), Err(Error::UnknownVertex(_))));
        assert!(VertexSet::parse(&e4, "u,,v").is_err());
    }
}
