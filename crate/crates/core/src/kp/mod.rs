//! Elements of the Kumjian-Pask algebra `KP_R(G)`.
//!
//! An element is a finite sum `sum r s_a s_b*` stored as a map from the
//! pair `(a, b)` (with `s(a) = s(b)`) to a nonzero coefficient. Vertex
//! projections, paths and ghost paths are all special pairs.

mod expr;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

pub use expr::{parse_expr, parse_expr_syntax, Expr, Factor};

use crate::error::{Error, Result};
use crate::graph::{NGraph, Path, VertexId};
use crate::multidegree::{GradedDegree, MultiIndex};
use crate::ring::Ring;

/// A single generator of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Vertex(VertexId),
    Path(Path),
    Ghost(Path),
}

#[derive(Clone, Debug)]
pub struct KPElement<R: Ring> {
    graph: Arc<NGraph>,
    ring: R,
    terms: BTreeMap<(Path, Path), R::Elem>,
}

impl<R: Ring> PartialEq for KPElement<R> {
    /// Equality of term forms; use [`KPElement::equals`] for equality in
    /// the algebra.
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.terms == other.terms
    }
}

impl<R: Ring> KPElement<R> {
    pub fn zero(graph: Arc<NGraph>, ring: R) -> Self {
        Self {
            graph,
            ring,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `sum_v p_v`.
    pub fn one(graph: Arc<NGraph>, ring: R) -> Self {
        let mut x = Self::zero(graph, ring);
        for v in x.graph.vertices() {
            let p = x.graph.vertex_path(v);
            let one = x.ring.one();
            x.terms.insert((p.clone(), p), one);
        }
        x
    }

    pub fn generator(graph: Arc<NGraph>, ring: R, generator: Generator) -> Self {
        let (a, b) = match generator {
            Generator::Vertex(v) => (graph.vertex_path(v), graph.vertex_path(v)),
            Generator::Path(p) => {
                let s = graph.vertex_path(p.source());
                (p, s)
            }
            Generator::Ghost(p) => {
                let s = graph.vertex_path(p.source());
                (s, p)
            }
        };
        Self::monomial(graph, ring, a, b)
    }

    pub fn vertex(graph: Arc<NGraph>, ring: R, v: VertexId) -> Self {
        Self::generator(graph, ring, Generator::Vertex(v))
    }

    pub fn path(graph: Arc<NGraph>, ring: R, p: Path) -> Self {
        Self::generator(graph, ring, Generator::Path(p))
    }

    pub fn ghost(graph: Arc<NGraph>, ring: R, p: Path) -> Self {
        Self::generator(graph, ring, Generator::Ghost(p))
    }

    /// `s_a s_b*`; requires `s(a) = s(b)`.
    pub fn monomial(graph: Arc<NGraph>, ring: R, a: Path, b: Path) -> Self {
        assert_eq!(a.source(), b.source(), "monomial needs s(a) = s(b)");
        let mut x = Self::zero(graph, ring);
        let one = x.ring.one();
        x.terms.insert((a, b), one);
        x
    }

    /// Builds an element from explicit terms, summing repeated keys.
    pub fn from_terms<I>(graph: Arc<NGraph>, ring: R, terms: I) -> Self
    where
        I: IntoIterator<Item = ((Path, Path), R::Elem)>,
    {
        let mut x = Self::zero(graph, ring);
        for (key, r) in terms {
            assert_eq!(key.0.source(), key.1.source(), "monomial needs s(a) = s(b)");
            x.accumulate(key, r);
        }
        x
    }

    pub fn graph(&self) -> &Arc<NGraph> {
        &self.graph
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<(Path, Path), R::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_algebra(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.graph, &other.graph) || self.graph == other.graph) && self.ring == other.ring
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    fn accumulate(&mut self, key: (Path, Path), r: R::Elem) {
        if self.ring.is_zero(&r) {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c = self.ring.add(c, &r);
                if self.ring.is_zero(c) {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, r);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (key, r) in &other.terms {
            out.accumulate(key.clone(), r.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, r)| (k.clone(), self.ring.neg(r))).collect();
        Self {
            terms,
            ..self.zero_like()
        }
    }

    pub fn smul(&self, r: &R::Elem) -> Self {
        let mut out = self.zero_like();
        for (key, c) in &self.terms {
            out.accumulate(key.clone(), self.ring.mul(r, c));
        }
        out
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.graph.clone(), self.ring.clone())
    }

    /// The involution `s_a s_b* -> s_b s_a*`.
    pub fn star(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((a, b), r)| ((b.clone(), a.clone()), r.clone()))
            .collect();
        Self {
            terms,
            ..self.zero_like()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let g = &*self.graph;
        let mut out = self.zero_like();
        let mut cache: HashMap<(&Path, &Path), Vec<(Path, Path)>> = HashMap::new();
        for ((a, b), r) in &self.terms {
            for ((c, d), t) in &other.terms {
                let pairs = cache.entry((b, c)).or_insert_with(|| ghost_pairs(g, b, c));
                if pairs.is_empty() {
                    continue;
                }
                let coef = self.ring.mul(r, t);
                for (a2, b2) in pairs.iter() {
                    let left = g.compose(a, a2).expect("s(a) = s(b) = r(a')");
                    let right = g.compose(d, b2).expect("s(d) = s(c) = r(b')");
                    out.accumulate((left, right), coef.clone());
                }
            }
        }
        Ok(out)
    }

    /// Graded degree `d(a) - d(b)` of a monomial.
    pub fn component_of(a: &Path, b: &Path) -> GradedDegree {
        GradedDegree::difference(a.degree(), b.degree())
    }

    pub fn graded_component(&self, c: &GradedDegree) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|((a, b), _)| Self::component_of(a, b) == *c)
            .map(|(k, r)| (k.clone(), r.clone()))
            .collect();
        Self {
            terms,
            ..self.zero_like()
        }
    }

    /// The graded components with a nonzero term, in increasing order.
    pub fn degree_support(&self) -> Vec<GradedDegree> {
        let set: BTreeSet<GradedDegree> = self.terms.keys().map(|(a, b)| Self::component_of(a, b)).collect();
        set.into_iter().collect()
    }

    /// Expansion degree per component: the join of the ghost degrees.
    pub fn expansion_degrees(&self) -> BTreeMap<GradedDegree, MultiIndex> {
        let mut out: BTreeMap<GradedDegree, MultiIndex> = BTreeMap::new();
        for (a, b) in self.terms.keys() {
            let q = out.entry(Self::component_of(a, b)).or_default();
            *q = q.join(b.degree());
        }
        out
    }

    /// Inflates every term so that, within each graded component, all terms
    /// share the same bidegree. The result is empty exactly when the element
    /// is zero in the algebra.
    pub fn normal_form(&self) -> Result<Self> {
        let g = &*self.graph;
        if !g.has_no_sources() {
            return Err(Error::SourcesPresent);
        }
        let q = self.expansion_degrees();
        let mut out = self.zero_like();
        for ((a, b), r) in &self.terms {
            let target = &q[&Self::component_of(a, b)];
            let extra = target.sub(b.degree()).expect("q is a join of ghost degrees");
            if extra.is_zero() {
                out.accumulate((a.clone(), b.clone()), r.clone());
                continue;
            }
            for gamma in g.paths_from(a.source(), &extra)? {
                let a2 = g.compose(a, &gamma).expect("r(gamma) = s(a)");
                let b2 = g.compose(b, &gamma).expect("r(gamma) = s(b)");
                out.accumulate((a2, b2), r.clone());
            }
        }
        Ok(out)
    }

    /// Equality in the algebra.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.normal_form()?.is_zero())
    }

    /// Transports an element along the inclusion of a sub-graph presented by
    /// [`crate::graph::truncate`]; see [`include_path`].
    pub fn include(&self, target: Arc<NGraph>) -> Result<Self> {
        let mut out = Self::zero(target, self.ring.clone());
        for ((a, b), r) in &self.terms {
            let a2 = include_path(&self.graph, a, &out.graph)?;
            let b2 = include_path(&self.graph, b, &out.graph)?;
            out.accumulate((a2, b2), r.clone());
        }
        Ok(out)
    }

    /// Renders terms `r * s a S* b` sorted by component and then by pair.
    /// Unit coefficients are omitted, a vertex pair renders as `p v`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keyed: Vec<_> = self
            .terms
            .iter()
            .map(|((a, b), r)| (Self::component_of(a, b), a, b, r))
            .collect();
        keyed.sort_by(|x, y| (&x.0, x.1, x.2).cmp(&(&y.0, y.1, y.2)));
        let g = &*self.graph;
        let parts: Vec<String> = keyed
            .into_iter()
            .map(|(_, a, b, r)| {
                let mut words = Vec::new();
                if !self.ring.is_one(r) {
                    words.push(format!("{} *", self.ring.render(r)));
                }
                if a.is_vertex() && b.is_vertex() {
                    words.push(format!("p {}", g.vertex_name(a.range())));
                } else {
                    if !a.is_vertex() {
                        words.push(format!("s {}", g.render_path(a)));
                    }
                    if !b.is_vertex() {
                        words.push(format!("S* {}", g.render_path(b)));
                    }
                }
                words.join(" ")
            })
            .collect();
        parts.join(" + ")
    }
}

/// All `(a, b)` with `s_l* s_m = sum s_a s_b*`, i.e. `l a = m b` and
/// `d(l a) = d(l) v d(m)`, in enumeration order of `a`.
pub fn ghost_pairs(g: &NGraph, l: &Path, m: &Path) -> Vec<(Path, Path)> {
    if l.range() != m.range() {
        return Vec::new();
    }
    let q = l.degree().join(m.degree());
    let shared = l.degree().meet(m.degree());
    let prefix = |p: &Path| g.segment(p, &MultiIndex::zero(), &shared).expect("shared <= d(p)");
    if prefix(l) != prefix(m) {
        return Vec::new();
    }
    let ext = q.sub(l.degree()).expect("q >= d(l)");
    let ext_m = q.sub(m.degree()).expect("q >= d(m)");
    let mut out = Vec::new();
    for a in g.paths_from(l.source(), &ext).expect("degree is supported") {
        let la = g.compose(l, &a).expect("r(a) = s(l)");
        if g.segment(&la, &MultiIndex::zero(), m.degree()).expect("d(m) <= q") == *m {
            let b = g.segment(&la, m.degree(), &q).expect("d(m) <= q");
            debug_assert_eq!(b.degree(), &ext_m);
            out.push((a, b));
        }
    }
    out
}

/// `s_l* s_m` as an element.
pub fn ghost_product<R: Ring>(graph: Arc<NGraph>, ring: R, l: &Path, m: &Path) -> KPElement<R> {
    let pairs = ghost_pairs(&graph, l, m);
    let one = ring.one();
    KPElement::from_terms(graph, ring, pairs.into_iter().map(|k| (k, one.clone())))
}

/// Maps a path of `from` to the path of `to` with the same edge
/// identifiers. Explicit edges of `from` missing in `to` whose color lies
/// in the tail of `to` are read as tail loops, which is how
/// [`crate::graph::truncate`] materializes them.
pub fn include_path(from: &NGraph, p: &Path, to: &NGraph) -> Result<Path> {
    let range = to.vertex(from.vertex_name(p.range()))?;
    let mut word = Vec::new();
    let mut tail = p.tail().clone();
    for &e in p.edges() {
        let edge = from.edge(e);
        match to.edge_id(&edge.id) {
            Some(e2) if to.edge(e2).color == edge.color => word.push(e2),
            _ if edge.source == edge.range && to.trivial_tail() && to.is_tail_color(edge.color) => {
                tail = tail.add(&MultiIndex::unit(edge.color));
            }
            _ => return Err(Error::UnknownPath(from.render_path(p))),
        }
    }
    to.path_from_word(range, &word, &tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ring::{Integers, IntegersMod, Rationals};
    use num_bigint::BigInt;

    struct Alg {
        g: Arc<NGraph>,
    }

    impl Alg {
        fn new(g: NGraph) -> Self {
            Self { g: Arc::new(g) }
        }
        fn path(&self, s: &str) -> Path {
            self.g.parse_path(s).unwrap()
        }
        fn p(&self, v: &str) -> KPElement<Integers> {
            KPElement::vertex(self.g.clone(), Integers, self.g.vertex(v).unwrap())
        }
        fn s(&self, l: &str) -> KPElement<Integers> {
            KPElement::path(self.g.clone(), Integers, self.path(l))
        }
        fn sg(&self, l: &str) -> KPElement<Integers> {
            KPElement::ghost(self.g.clone(), Integers, self.path(l))
        }
        fn ss(&self, a: &str, b: &str) -> KPElement<Integers> {
            KPElement::monomial(self.g.clone(), Integers, self.path(a), self.path(b))
        }
    }

    #[test]
    fn generators_are_pairs() {
        let e2 = Alg::new(catalog::e2());
        let key = |x: &KPElement<Integers>| {
            let (a, b) = x.terms().keys().next().unwrap();
            (e2.g.render_path(a), e2.g.render_path(b))
        };
        assert_eq!(key(&e2.p("v")), ("v".into(), "v".into()));
        assert_eq!(key(&e2.s("a")), ("a".into(), "v".into()));
        assert_eq!(key(&e2.sg("b")), ("v".into(), "b".into()));
    }

    #[test]
    fn module_operations() {
        let e2 = Alg::new(catalog::e2());
        let x = e2.s("a").add(&e2.ss("a", "b")).unwrap();
        assert_eq!(x.add(&KPElement::zero(e2.g.clone(), Integers)).unwrap(), x);
        assert!(x.smul(&BigInt::from(0)).is_zero());
        assert!(x.sub(&x).unwrap().is_zero());
        let z4 = IntegersMod::new(4).unwrap();
        let y = KPElement::path(e2.g.clone(), z4, e2.path("a"));
        assert!(y.smul(&2).smul(&2).is_zero());
        let other = Alg::new(catalog::e1());
        assert_eq!(e2.p("v").add(&other.p("v")), Err(Error::GraphMismatch));
        let q = KPElement::vertex(e2.g.clone(), Rationals, e2.g.vertex("v").unwrap());
        assert!(q.mul(&q).unwrap() == q);
    }

    #[test]
    fn star_examples() {
        let e2 = Alg::new(catalog::e2());
        assert_eq!(e2.p("v").star(), e2.p("v"));
        assert_eq!(e2.s("a").star(), e2.sg("a"));
        assert_eq!(e2.ss("a", "b").star(), e2.ss("b", "a"));
        let x = e2.ss("a", "b").add(&e2.s("a.b")).unwrap();
        let y = e2.sg("b").add(&e2.p("v")).unwrap();
        assert_eq!(x.mul(&y).unwrap().star(), y.star().mul(&x.star()).unwrap());
    }

    #[test]
    fn ghost_product_examples() {
        let e2 = Alg::new(catalog::e2());
        let gp = |a: &Alg, l: &str, m: &str| ghost_product(a.g.clone(), Integers, &a.path(l), &a.path(m));
        assert_eq!(gp(&e2, "a", "a"), e2.p("v"));
        assert!(gp(&e2, "a", "b").is_zero());
        let e3 = Alg::new(catalog::e3());
        assert_eq!(gp(&e3, "e", "f"), e3.ss("f", "e"));
        // a.b against a: s_{ab}* s_a = s_b*
        assert_eq!(gp(&e2, "a.b", "a"), e2.sg("b"));
        let tw = Alg::new(catalog::twisted());
        // a x = x b while a y = y a
        assert_eq!(gp(&tw, "a", "x"), tw.ss("x", "b"));
        assert_eq!(gp(&tw, "a", "y"), tw.ss("y", "a"));
    }

    #[test]
    fn multiplication_examples() {
        let e2 = Alg::new(catalog::e2());
        assert_eq!(e2.p("v").mul(&e2.s("a")).unwrap(), e2.s("a"));
        assert_eq!(e2.sg("a").mul(&e2.s("a")).unwrap(), e2.p("v"));
        assert_eq!(e2.ss("a", "a").mul(&e2.ss("a", "b")).unwrap(), e2.ss("a", "b"));
        assert_eq!(e2.s("a").mul(&e2.s("b")).unwrap(), e2.s("a.b"));
        let e4 = Alg::new(catalog::e4());
        assert!(e4.p("u").mul(&e4.p("v")).unwrap().is_zero());
        assert!(e4.s("g").mul(&e4.s("x")).unwrap().is_zero());
        assert_eq!(e4.s("x").mul(&e4.s("g")).unwrap(), e4.s("x.g"));
    }

    #[test]
    fn normal_form_examples() {
        let e2 = Alg::new(catalog::e2());
        let x = e2.p("v").sub(&e2.ss("a", "a")).unwrap().sub(&e2.ss("b", "b")).unwrap();
        assert!(x.normal_form().unwrap().is_zero());
        assert_eq!(e2.s("a").normal_form().unwrap(), e2.s("a"));
        let e1 = Alg::new(catalog::e1());
        assert!(e1
            .p("v")
            .sub(&e1.ss("f", "f"))
            .unwrap()
            .normal_form()
            .unwrap()
            .is_zero());
        let omega = Arc::new(crate::graph::build_omega(&"{1:1}".parse().unwrap()));
        let o0 = omega.vertex_id("o0").unwrap();
        let p = KPElement::vertex(omega, Integers, o0);
        assert_eq!(p.normal_form(), Err(Error::SourcesPresent));
    }

    #[test]
    fn equality_examples() {
        let e2 = Alg::new(catalog::e2());
        let sum = e2.ss("a", "a").add(&e2.ss("b", "b")).unwrap();
        assert!(e2.p("v").equals(&sum).unwrap());
        assert!(!e2.s("a").equals(&e2.s("b")).unwrap());
        let x = e2.ss("a.b", "b").add(&e2.sg("a")).unwrap();
        assert!(x.equals(&x).unwrap());
        // tail colors obey the same relation with a single loop
        let tail = Alg::new(catalog::e2());
        assert!(tail.p("v").equals(&tail.ss("v.~2", "v.~2")).unwrap());
        assert!(tail
            .s("v.~2")
            .mul(&tail.sg("v.~2"))
            .unwrap()
            .equals(&tail.p("v"))
            .unwrap());
    }

    #[test]
    fn grading_examples() {
        let e2 = Alg::new(catalog::e2());
        let ab = e2.ss("a", "b");
        assert_eq!(ab.graded_component(&GradedDegree::zero()), ab);
        assert!(e2.s("a").graded_component(&"{1:-1}".parse().unwrap()).is_zero());
        let x = e2.p("v").add(&e2.s("a")).unwrap();
        assert_eq!(x.degree_support(), vec![GradedDegree::zero(), "{1:1}".parse().unwrap()]);
        let mut total = KPElement::zero(e2.g.clone(), Integers);
        for c in x.degree_support() {
            total = total.add(&x.graded_component(&c)).unwrap();
        }
        assert_eq!(total, x);
    }

    #[test]
    fn rendering() {
        let e2 = Alg::new(catalog::e2());
        let x = e2
            .s("a")
            .add(&e2.p("v"))
            .unwrap()
            .add(&e2.ss("a", "b").smul(&BigInt::from(-3)))
            .unwrap()
            .add(&e2.sg("b.a"))
            .unwrap();
        assert_eq!(x.render(), "p v + -3 * s a S* b + S* b.a + s a");
        assert_eq!(KPElement::zero(e2.g.clone(), Integers).render(), "0");
    }

    #[test]
    fn inclusion_of_truncation() {
        let e3 = Arc::new(catalog::e3());
        let t1 = Arc::new(crate::graph::truncate(&e3, 1));
        let e = t1.parse_path("e.e").unwrap();
        let x = KPElement::monomial(t1.clone(), Integers, e.clone(), t1.parse_path("e").unwrap());
        let y = x.include(e3.clone()).unwrap();
        assert_eq!(y.render(), "s e.e S* e");
        // materialized tail loops return to the tail
        let e1 = Arc::new(catalog::e1());
        let t3 = Arc::new(crate::graph::truncate(&e1, 3));
        let w = t3.parse_path("f.t2_v.t3_v").unwrap();
        let z = KPElement::path(t3, Integers, w).include(e1.clone()).unwrap();
        assert_eq!(z.render(), "s f.~2.~3");
    }
}
