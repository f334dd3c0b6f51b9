//! Paths in canonical color-ordered form and the factorization calculus.

use std::fmt;

use super::{EdgeId, NGraph, VertexId};
use crate::error::{Error, Result};
use crate::multidegree::{Color, MultiIndex};

/// A morphism of the graph.
///
/// Explicit edges are stored as a composable word whose colors ascend from
/// the range end; tail loops are stored only as a degree, since each tail
/// color has a single loop per vertex that commutes with everything.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    degree: MultiIndex,
    range: VertexId,
    edges: Vec<EdgeId>,
    tail: MultiIndex,
    source: VertexId,
}

impl Path {
    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn degree(&self) -> &MultiIndex {
        &self.degree
    }

    /// Explicit edges in canonical order, range end first.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Tail part of the degree.
    pub fn tail(&self) -> &MultiIndex {
        &self.tail
    }

    pub fn is_vertex(&self) -> bool {
        self.degree.is_zero()
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Path({:?} <- {:?} : {:?} tail {} deg {})",
            self.range, self.source, self.edges, self.tail, self.degree
        )
    }
}

impl NGraph {
    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path {
            degree: MultiIndex::zero(),
            range: v,
            edges: Vec::new(),
            tail: MultiIndex::zero(),
            source: v,
        }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        let edge = self.edge(e);
        Path {
            degree: MultiIndex::unit(edge.color),
            range: edge.range,
            edges: vec![e],
            tail: MultiIndex::zero(),
            source: edge.source,
        }
    }

    /// The path at `v` made of tail loops only.
    pub fn tail_path(&self, v: VertexId, tail: MultiIndex) -> Result<Path> {
        self.check_degree(&tail)?;
        if tail.project(self.colors()) != MultiIndex::zero() {
            return Err(Error::UnsupportedColor(tail.to_string()));
        }
        Ok(Path {
            degree: tail.clone(),
            range: v,
            edges: Vec::new(),
            tail,
            source: v,
        })
    }

    /// Fails with `UnsupportedColor` when `n` uses tail colors in a graph
    /// without a tail.
    pub fn check_degree(&self, n: &MultiIndex) -> Result<()> {
        if !self.trivial_tail() && n.max_color() > self.colors() {
            return Err(Error::UnsupportedColor(n.to_string()));
        }
        Ok(())
    }

    fn vertex_at(&self, range: VertexId, word: &[EdgeId], pos: usize) -> VertexId {
        if pos == 0 {
            range
        } else {
            self.edge(word[pos - 1]).source
        }
    }

    /// Canonical path from a composable word of explicit edges in any color
    /// order plus a tail degree. `range` is only consulted for empty words.
    pub fn path_from_word(&self, range: VertexId, word: &[EdgeId], tail: &MultiIndex) -> Result<Path> {
        self.check_degree(tail)?;
        for w in word.windows(2) {
            if self.edge(w[0]).source != self.edge(w[1]).range {
                return Err(Error::NonComposable {
                    left: self.edge(w[0]).id.clone(),
                    right: self.edge(w[1]).id.clone(),
                });
            }
        }
        let range = word.first().map_or(range, |&e| self.edge(e).range);
        let source = word.last().map_or(range, |&e| self.edge(e).source);
        let edges = self.canonicalize(word)?;
        let degree =
            MultiIndex::from_pairs(edges.iter().map(|&e| (self.edge(e).color, 1))).add(&tail.above(self.colors()));
        Ok(Path {
            degree,
            range,
            edges,
            tail: tail.above(self.colors()),
            source,
        })
    }

    /// Sorts a composable word into ascending color blocks by square moves.
    pub fn canonicalize(&self, word: &[EdgeId]) -> Result<Vec<EdgeId>> {
        let mut target: Vec<Color> = word.iter().map(|&e| self.edge(e).color).collect();
        target.sort_unstable();
        self.rearrange(word, &target)
    }

    /// Rewrites a composable word so that its color sequence becomes
    /// `target` (a permutation of the word's colors). By unique
    /// factorization the result does not depend on the order of the moves.
    pub fn rearrange(&self, word: &[EdgeId], target: &[Color]) -> Result<Vec<EdgeId>> {
        debug_assert_eq!(word.len(), target.len());
        let mut w = word.to_vec();
        for (p, &want) in target.iter().enumerate() {
            let q = (p..w.len())
                .find(|&q| self.edge(w[q]).color == want)
                .expect("target is a permutation of the word's colors");
            // positions p..q hold other colors, so each step swaps distinct colors
            for k in (p..q).rev() {
                let (a, b) = self.swap(w[k], w[k + 1])?;
                w[k] = a;
                w[k + 1] = b;
            }
        }
        Ok(w)
    }

    /// The composite `lambda mu`, defined when `s(lambda) = r(mu)`.
    pub fn compose(&self, lambda: &Path, mu: &Path) -> Result<Path> {
        if lambda.source != mu.range {
            return Err(Error::NonComposable {
                left: self.render_path(lambda),
                right: self.render_path(mu),
            });
        }
        let mut word = lambda.edges.clone();
        word.extend_from_slice(&mu.edges);
        let edges = self.canonicalize(&word)?;
        Ok(Path {
            degree: lambda.degree.add(&mu.degree),
            range: lambda.range,
            edges,
            tail: lambda.tail.add(&mu.tail),
            source: mu.source,
        })
    }

    /// The factor `mu` of degree `n - m` in `lambda = head mu rest` with
    /// `d(head) = m`. Requires `m <= n <= d(lambda)`.
    pub fn segment(&self, lambda: &Path, m: &MultiIndex, n: &MultiIndex) -> Result<Path> {
        let out_of_range = || Error::OutOfRange {
            from: m.to_string(),
            to: n.to_string(),
            degree: lambda.degree.to_string(),
        };
        let mid = n.sub(m).ok_or_else(out_of_range)?;
        let rest = lambda.degree.sub(n).ok_or_else(out_of_range)?;
        let k = self.colors();
        let (head_x, mid_x, rest_x) = (m.project(k), mid.project(k), rest.project(k));
        let mut target = head_x.color_word();
        target.extend(mid_x.color_word());
        target.extend(rest_x.color_word());
        let word = self.rearrange(&lambda.edges, &target)?;
        let (from, to) = (head_x.total() as usize, (head_x.total() + mid_x.total()) as usize);
        let range = self.vertex_at(lambda.range, &word, from);
        let source = self.vertex_at(lambda.range, &word, to);
        let edges = self.canonicalize(&word[from..to])?;
        Ok(Path {
            degree: mid.clone(),
            range,
            edges,
            tail: mid.above(k),
            source,
        })
    }

    /// All paths of degree `n` with range `v`, in deterministic order.
    pub fn paths_from(&self, v: VertexId, n: &MultiIndex) -> Result<Vec<Path>> {
        self.check_degree(n)?;
        let explicit = n.project(self.colors()).color_word();
        let tail = n.above(self.colors());
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(explicit.len());
        self.extend_words(v, &explicit, &mut word, &mut |w, source| {
            out.push(Path {
                degree: n.clone(),
                range: v,
                edges: w.to_vec(),
                tail: tail.clone(),
                source,
            });
        });
        Ok(out)
    }

    fn extend_words(
        &self,
        at: VertexId,
        colors: &[Color],
        word: &mut Vec<EdgeId>,
        emit: &mut dyn FnMut(&[EdgeId], VertexId),
    ) {
        match colors.split_first() {
            None => emit(word, at),
            Some((&c, rest)) => {
                for &e in self.edges_into(at, c) {
                    word.push(e);
                    self.extend_words(self.edge(e).source, rest, word, emit);
                    word.pop();
                }
            }
        }
    }

    /// All paths of degree `n`, grouped by range in vertex order.
    pub fn paths_of_degree(&self, n: &MultiIndex) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        for v in self.vertices() {
            out.extend(self.paths_from(v, n)?);
        }
        Ok(out)
    }

    /// All paths with degree at most `cap`, ordered by degree (total first),
    /// then range, then enumeration order.
    pub fn paths_up_to(&self, cap: &MultiIndex) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        for n in cap.below() {
            out.extend(self.paths_of_degree(&n)?);
        }
        Ok(out)
    }

    /// Renders a path as dot-separated edge identifiers followed by `~c`
    /// tokens for tail loops; a path without explicit edges starts with its
    /// vertex.
    pub fn render_path(&self, p: &Path) -> String {
        let mut parts: Vec<String> = p.edges.iter().map(|&e| self.edge(e).id.clone()).collect();
        if parts.is_empty() {
            parts.push(self.vertex_name(p.range).to_string());
        }
        for c in p.tail.color_word() {
            parts.push(format!("~{c}"));
        }
        parts.join(".")
    }

    /// Parses the output of [`NGraph::render_path`]. More generally accepts
    /// any dot-separated composable word mixing vertices, edges and tail
    /// tokens `~c`; tail tokens need at least one vertex or edge to anchor
    /// them.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let unknown = || Error::UnknownPath(text.to_string());
        let mut anchor: Option<VertexId> = None;
        let mut word = Vec::new();
        let mut tail = MultiIndex::zero();
        // vertex tokens must sit where the chain of edges passes
        let mut at: Option<VertexId> = None;
        for token in text.split('.') {
            if let Some(c) = token.strip_prefix('~') {
                let c: Color = c.parse().map_err(|_| unknown())?;
                if c == 0 || !self.trivial_tail() || !self.is_tail_color(c) {
                    return Err(unknown());
                }
                tail = tail.add(&MultiIndex::unit(c));
            } else if let Some(v) = self.vertex_id(token) {
                if at.is_some_and(|a| a != v) {
                    return Err(Error::NonComposable {
                        left: text.to_string(),
                        right: token.to_string(),
                    });
                }
                anchor.get_or_insert(v);
                at = Some(v);
            } else if let Some(e) = self.edge_id(token) {
                let edge = self.edge(e);
                if at.is_some_and(|a| a != edge.range) {
                    return Err(Error::NonComposable {
                        left: text.to_string(),
                        right: token.to_string(),
                    });
                }
                anchor.get_or_insert(edge.range);
                at = Some(edge.source);
                word.push(e);
            } else {
                return Err(unknown());
            }
        }
        let range = anchor.ok_or_else(unknown)?;
        self.path_from_word(range, &word, &tail)
    }
}

#[cfg(test)]
mod tests {
    use crate::catalog;
    use crate::multidegree::MultiIndex;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    #[test]
    fn compose_reorders_colors() {
        let g = catalog::e3();
        let e = g.parse_path("e").unwrap();
        let f = g.parse_path("f").unwrap();
        let fe = g.compose(&f, &e).unwrap();
        assert_eq!(g.render_path(&fe), "e.f");
        assert_eq!(fe.degree(), &mi("{1:1,2:1}"));
        let v = g.parse_path("v").unwrap();
        assert_eq!(g.compose(&v, &f).unwrap(), f);
    }

    #[test]
    fn compose_single_color_concatenates() {
        let g = catalog::e2();
        let ab = g
            .compose(&g.parse_path("a").unwrap(), &g.parse_path("b").unwrap())
            .unwrap();
        assert_eq!(g.render_path(&ab), "a.b");
        assert_eq!(ab.degree(), &mi("{1:2}"));
    }

    #[test]
    fn compose_rejects_mismatched_endpoints() {
        let g = catalog::e4();
        let gg = g.parse_path("g").unwrap();
        let u = g.parse_path("u").unwrap();
        assert!(g.compose(&gg, &u).is_err());
    }

    #[test]
    fn segments() {
        let g = catalog::e2();
        let ab = g.parse_path("a.b").unwrap();
        assert_eq!(g.segment(&ab, &MultiIndex::zero(), ab.degree()).unwrap(), ab);
        assert_eq!(g.render_path(&g.segment(&ab, &mi("{1:1}"), &mi("{1:2}")).unwrap()), "b");
        assert!(g.segment(&ab, &mi("{1:2}"), &mi("{1:1}")).is_err());
        assert!(g.segment(&ab, &mi("{}"), &mi("{1:3}")).is_err());
    }

    #[test]
    fn segment_uses_the_inverse_square() {
        // twisted squares: a.x = x.b, so the color-1 factor after x is b
        let g = catalog::twisted();
        let ax = g.parse_path("a.x").unwrap();
        let tail = g.segment(&ax, &mi("{2:1}"), ax.degree()).unwrap();
        assert_eq!(g.render_path(&tail), "b");
        let head = g.segment(&ax, &mi("{}"), &mi("{2:1}")).unwrap();
        assert_eq!(g.render_path(&head), "x");
        // in E3 the partner of e is e itself
        let e3 = catalog::e3();
        let ef = e3.parse_path("e.f").unwrap();
        assert_eq!(
            e3.render_path(&e3.segment(&ef, &mi("{2:1}"), ef.degree()).unwrap()),
            "e"
        );
    }

    #[test]
    fn path_enumeration_counts() {
        let e2 = catalog::e2();
        let v = e2.vertex("v").unwrap();
        let names: Vec<String> = e2
            .paths_from(v, &mi("{1:2}"))
            .unwrap()
            .iter()
            .map(|p| e2.render_path(p))
            .collect();
        assert_eq!(names, ["a.a", "a.b", "b.a", "b.b"]);
        let e1 = catalog::e1();
        assert_eq!(e1.paths_from(e1.vertex("v").unwrap(), &mi("{1:3}")).unwrap().len(), 1);
        let e3 = catalog::e3();
        let ps = e3.paths_from(e3.vertex("v").unwrap(), &mi("{1:1,2:1}")).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(e3.render_path(&ps[0]), "e.f");
    }

    #[test]
    fn tail_colors_need_a_tail() {
        let e2 = catalog::e2();
        let v = e2.vertex("v").unwrap();
        let ps = e2.paths_from(v, &mi("{1:1,3:2}")).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(e2.render_path(&ps[0]), "a.~3.~3");
        let truncated = crate::graph::truncate(&e2, 1);
        assert!(truncated.paths_from(v, &mi("{2:1}")).is_err());
    }

    #[test]
    fn parse_path_round_trips_and_rejects() {
        let g = catalog::e4();
        for text in ["u", "v", "g", "g.y", "x.g", "u.~2", "x.~2.~2"] {
            let p = g.parse_path(text).unwrap();
            assert_eq!(g.render_path(&p), text);
        }
        for bad in ["", "~2", "w", "g.x", "u.g.u", "~1.u", "g..y"] {
            assert!(g.parse_path(bad).is_err(), "{bad}");
        }
        // tail tokens may appear anywhere and vertex tokens are identities
        assert_eq!(g.render_path(&g.parse_path("~2.x.u.g").unwrap()), "x.g.~2");
    }
}
