//! Finite-window path representation.
//!
//! The algebra acts on formal combinations of paths: `s_a s_b*` sends `e_m`
//! to `e_{a m'}` when `m = b m'` and to zero when `m` and `b` disagree. Only
//! paths of degree at most a cap are kept, which leaves two kinds of
//! columns whose image the window cannot determine:
//!
//! * overflow: the image has degree above the cap;
//! * shallow: `m` is a proper prefix-compatible truncation of something
//!   `b` could match, so the answer depends on how `m` continues.
//!
//! Relations are only ever checked on the remaining (safe) columns.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{build_omega, omega_point_name, NGraph, Path};
use crate::kp::KPElement;
use crate::multidegree::MultiIndex;
use crate::ring::{Integers, Ring};

/// The basis `{m : d(m) <= cap}` with a lookup index.
#[derive(Clone, Debug)]
pub struct Window {
    graph: Arc<NGraph>,
    cap: MultiIndex,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl Window {
    pub fn new(graph: Arc<NGraph>, cap: MultiIndex) -> Result<Self> {
        let basis = graph.paths_up_to(&cap)?;
        let index = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(Self {
            graph,
            cap,
            basis,
            index,
        })
    }

    pub fn graph(&self) -> &Arc<NGraph> {
        &self.graph
    }

    pub fn cap(&self) -> &MultiIndex {
        &self.cap
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// All paths of degree at most `cap`, in the window order.
pub fn window_basis(g: &NGraph, cap: &MultiIndex) -> Result<Vec<Path>> {
    g.paths_up_to(cap)
}

/// A sparse square matrix over the window basis, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionMatrix<R: Ring> {
    pub cols: Vec<BTreeMap<usize, R::Elem>>,
    /// Columns with an image above the cap.
    pub overflow: BTreeSet<usize>,
    /// Columns whose image depends on paths longer than the basis path.
    pub shallow: BTreeSet<usize>,
}

impl<R: Ring> ActionMatrix<R> {
    fn empty(dim: usize) -> Self {
        Self {
            cols: vec![BTreeMap::new(); dim],
            overflow: BTreeSet::new(),
            shallow: BTreeSet::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn is_safe(&self, col: usize) -> bool {
        !self.overflow.contains(&col) && !self.shallow.contains(&col)
    }

    pub fn safe_columns(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&c| self.is_safe(c)).collect()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&R::Elem> {
        self.cols[col].get(&row)
    }

    fn add_entry(&mut self, ring: &R, row: usize, col: usize, r: &R::Elem) {
        let column = &mut self.cols[col];
        let next = match column.get(&row) {
            Some(c) => ring.add(c, r),
            None => r.clone(),
        };
        if ring.is_zero(&next) {
            column.remove(&row);
        } else {
            column.insert(row, next);
        }
    }

    /// Whether every safe column is zero.
    pub fn is_zero_on_safe(&self) -> bool {
        self.safe_columns().iter().all(|&c| self.cols[c].is_empty())
    }

    /// The product `self * rhs`. A column is safe when it is safe in `rhs`
    /// and every column of `self` it feeds into is safe.
    pub fn mul(&self, rhs: &Self, ring: &R) -> Self {
        let mut out = Self::empty(self.dim());
        for (j, col) in rhs.cols.iter().enumerate() {
            if rhs.overflow.contains(&j) {
                out.overflow.insert(j);
            } else if rhs.shallow.contains(&j) {
                out.shallow.insert(j);
            }
            for (&k, b) in col {
                if self.overflow.contains(&k) {
                    out.overflow.insert(j);
                } else if self.shallow.contains(&k) {
                    out.shallow.insert(j);
                }
                for (&i, a) in &self.cols[k] {
                    out.add_entry(ring, i, j, &ring.mul(a, b));
                }
            }
        }
        out
    }

    /// Agreement on the columns safe in both matrices.
    pub fn agrees_on_safe(&self, other: &Self) -> bool {
        (0..self.dim())
            .filter(|&c| self.is_safe(c) && other.is_safe(c))
            .all(|c| self.cols[c] == other.cols[c])
    }

    /// Sparse `row col value` lines preceded by the basis.
    pub fn render_triplets(&self, w: &Window, ring: &R) -> String {
        let g = w.graph();
        let mut out = format!("basis {}\n", w.dim());
        for (i, p) in w.basis().iter().enumerate() {
            out.push_str(&format!("{i} {}\n", g.render_path(p)));
        }
        out.push_str("entries\n");
        for (j, col) in self.cols.iter().enumerate() {
            for (i, r) in col {
                out.push_str(&format!("{i} {j} {}\n", ring.render(r)));
            }
        }
        for (name, cols) in [("overflow", &self.overflow), ("shallow", &self.shallow)] {
            out.push_str(name);
            for c in cols {
                out.push_str(&format!(" {c}"));
            }
            out.push('\n');
        }
        out
    }
}

enum Image {
    Zero,
    Path(Path),
    Shallow,
}

/// `s_b* e_m` as far as `m` determines it.
fn ghost_image(g: &NGraph, b: &Path, m: &Path) -> Image {
    if b.range() != m.range() {
        return Image::Zero;
    }
    let zero = MultiIndex::zero();
    if b.degree().leq(m.degree()) {
        let head = g.segment(m, &zero, b.degree()).expect("d(b) <= d(m)");
        if head == *b {
            Image::Path(g.segment(m, b.degree(), m.degree()).expect("d(b) <= d(m)"))
        } else {
            Image::Zero
        }
    } else {
        let shared = b.degree().meet(m.degree());
        let cut = |p: &Path| g.segment(p, &zero, &shared).expect("shared <= d(p)");
        if cut(b) == cut(m) {
            Image::Shallow
        } else {
            Image::Zero
        }
    }
}

pub fn matrix_of<R: Ring>(x: &KPElement<R>, w: &Window) -> Result<ActionMatrix<R>> {
    let g = w.graph();
    if !(Arc::ptr_eq(g, x.graph()) || **g == **x.graph()) {
        return Err(Error::GraphMismatch);
    }
    let ring = x.ring();
    let mut out = ActionMatrix::empty(w.dim());
    for (j, m) in w.basis().iter().enumerate() {
        for ((a, b), r) in x.terms() {
            match ghost_image(g, b, m) {
                Image::Zero => {}
                Image::Shallow => {
                    out.shallow.insert(j);
                }
                Image::Path(rest) => {
                    let target = g.compose(a, &rest).expect("s(a) = s(b) = r(rest)");
                    match w.position(&target) {
                        Some(i) => out.add_entry(ring, i, j, r),
                        None => {
                            out.overflow.insert(j);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of one family of relation instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub instances: usize,
    /// Total number of (instance, column) pairs compared.
    pub columns: usize,
    pub failures: Vec<String>,
    pub skipped: Option<String>,
}

impl RelationCheck {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            instances: 0,
            columns: 0,
            failures: Vec::new(),
            skipped: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }

    pub fn check(&self, name: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match (&c.skipped, c.passed()) {
                (Some(why), _) => writeln!(f, "skip {} ({why})", c.name)?,
                (None, true) => writeln!(f, "ok   {} instances={} columns={}", c.name, c.instances, c.columns)?,
                (None, false) => {
                    writeln!(f, "FAIL {} instances={} columns={}", c.name, c.instances, c.columns)?;
                    for msg in &c.failures {
                        writeln!(f, "     {msg}")?;
                    }
                }
            }
        }
        write!(f, "{}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Compares `lhs` and `rhs` on the columns safe in both and records the
/// outcome.
fn compare<R: Ring>(
    check: &mut RelationCheck,
    what: impl Fn() -> String,
    lhs: &ActionMatrix<R>,
    rhs: &ActionMatrix<R>,
) {
    check.instances += 1;
    let cols: Vec<usize> = (0..lhs.dim()).filter(|&c| lhs.is_safe(c) && rhs.is_safe(c)).collect();
    check.columns += cols.len();
    if cols.iter().any(|&c| lhs.cols[c] != rhs.cols[c]) {
        check.failures.push(what());
    }
}

/// Checks the Cuntz-Krieger relations on the window for the generator
/// matrices over the integers:
///
/// * `CK1`: `p_v p_w = delta p_v`;
/// * `CK2`: `s_l s_m = s_{lm}` for composable `l`, `m` with `d(lm) <= cap`;
/// * `CK3`: `s_l* s_l = p_{s(l)}`;
/// * `CK4`: `p_v = sum_{l in v G^n} s_l s_l*` for `0 < n <= cap`, skipped
///   when the graph has sources;
/// * `nonzero`: every `s_l` and `s_l*` with `d(l) <= cap` acts nontrivially.
pub fn check_ck(g: Arc<NGraph>, cap: &MultiIndex) -> Result<RelationReport> {
    let w = Window::new(g.clone(), cap.clone())?;
    let ring = Integers;
    let matrix = |x: KPElement<Integers>| matrix_of(&x, &w).expect("same graph");
    let name = |p: &Path| g.render_path(p);

    let vertex: BTreeMap<_, _> = g
        .vertices()
        .map(|v| (v, matrix(KPElement::vertex(g.clone(), ring, v))))
        .collect();
    let paths = w.basis().to_vec();
    let s: Vec<_> = paths
        .iter()
        .map(|p| matrix(KPElement::path(g.clone(), ring, p.clone())))
        .collect();
    let s_star: Vec<_> = paths
        .iter()
        .map(|p| matrix(KPElement::ghost(g.clone(), ring, p.clone())))
        .collect();

    let mut ck1 = RelationCheck::new("CK1");
    for (&v, pv) in &vertex {
        for (&u, pu) in &vertex {
            let expect = if u == v {
                pv.clone()
            } else {
                ActionMatrix::empty(w.dim())
            };
            let what = || format!("p_{} p_{}", g.vertex_name(v), g.vertex_name(u));
            compare(&mut ck1, what, &pv.mul(pu, &ring), &expect);
        }
    }

    let mut ck2 = RelationCheck::new("CK2");
    for (i, l) in paths.iter().enumerate() {
        for (j, m) in paths.iter().enumerate() {
            if l.source() != m.range() || !l.degree().add(m.degree()).leq(cap) {
                continue;
            }
            let lm = g.compose(l, m)?;
            let k = w.position(&lm).expect("d(lm) <= cap");
            let what = || format!("s_{} s_{} = s_{}", name(l), name(m), name(&lm));
            compare(&mut ck2, what, &s[i].mul(&s[j], &ring), &s[k]);
        }
    }

    let mut ck3 = RelationCheck::new("CK3");
    for (i, l) in paths.iter().enumerate() {
        let what = || format!("s_{}* s_{}", name(l), name(l));
        compare(&mut ck3, what, &s_star[i].mul(&s[i], &ring), &vertex[&l.source()]);
    }

    let mut ck4 = RelationCheck::new("CK4");
    if !g.has_no_sources() {
        ck4.skipped = Some("graph has sources".into());
    } else {
        for n in cap.below().into_iter().filter(|n| !n.is_zero()) {
            for v in g.vertices() {
                let mut sum: Option<ActionMatrix<Integers>> = None;
                for l in g.paths_from(v, &n)? {
                    let i = w.position(&l).expect("n <= cap");
                    let term = s[i].mul(&s_star[i], &ring);
                    sum = Some(match sum {
                        None => term,
                        Some(acc) => add_matrices(&acc, &term, &ring),
                    });
                }
                let sum = sum.unwrap_or_else(|| ActionMatrix::empty(w.dim()));
                let what = || format!("p_{} at degree {n}", g.vertex_name(v));
                compare(&mut ck4, what, &sum, &vertex[&v]);
            }
        }
    }

    let mut nonzero = RelationCheck::new("nonzero");
    for (i, l) in paths.iter().enumerate() {
        for (m, label) in [(&s[i], ""), (&s_star[i], "*")] {
            nonzero.instances += 1;
            nonzero.columns += m.safe_columns().len();
            if m.is_zero_on_safe() {
                nonzero.failures.push(format!("s_{}{label} vanishes", name(l)));
            }
        }
    }

    Ok(RelationReport {
        checks: vec![ck1, ck2, ck3, ck4, nonzero],
    })
}

fn add_matrices<R: Ring>(a: &ActionMatrix<R>, b: &ActionMatrix<R>, ring: &R) -> ActionMatrix<R> {
    let mut out = a.clone();
    for (j, col) in b.cols.iter().enumerate() {
        for (&i, r) in col {
            out.add_entry(ring, i, j, r);
        }
    }
    out.overflow.extend(b.overflow.iter().copied());
    out.shallow.extend(b.shallow.iter().copied());
    out
}

/// Rank of a list of sparse rational vectors by exact elimination.
pub fn rank(vectors: Vec<BTreeMap<usize, BigRational>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for mut v in vectors {
        // reduce by existing pivots until the leading entry is new
        while let Some((&lead, _)) = v.iter().next() {
            let Some(p) = pivots.get(&lead) else { break };
            let factor = &v[&lead] / &p[&lead];
            for (&k, pk) in p {
                let e = v.entry(k).or_insert_with(BigRational::zero);
                *e -= &factor * pk;
                if e.is_zero() {
                    v.remove(&k);
                }
            }
        }
        if let Some((&lead, _)) = v.iter().next() {
            pivots.insert(lead, v);
        }
    }
    pivots.len()
}

/// Whether the matrices of `xs` are linearly independent on the columns
/// that are safe for all of them.
pub fn independent<R: Ring>(xs: &[KPElement<R>], w: &Window) -> Result<bool> {
    let Some(first) = xs.first() else {
        return Ok(true);
    };
    let ring = first.ring();
    if ring.to_rational(&ring.one()).is_none() {
        return Err(Error::NonDomainRing(ring.name()));
    }
    let matrices: Vec<ActionMatrix<R>> = xs.iter().map(|x| matrix_of(x, w)).collect::<Result<_>>()?;
    let safe: Vec<usize> = (0..w.dim())
        .filter(|&c| matrices.iter().all(|m| m.is_safe(c)))
        .collect();
    let n = w.dim();
    let vectors = matrices
        .iter()
        .map(|m| {
            let mut v = BTreeMap::new();
            for &c in &safe {
                for (&r, e) in &m.cols[c] {
                    v.insert(c * n + r, ring.to_rational(e).expect("domain ring"));
                }
            }
            v
        })
        .collect();
    Ok(rank(vectors) == xs.len())
}

/// Smallest cap at which `x` and its normal form are both visible on a
/// common column. With `Q` the join of the ghost degrees of both term sets,
/// every column of degree `Q` is safe for each term `s_a s_b*`, whose image
/// lands at degree `d(a) + Q - d(b)`. On those columns the matrix of `x`
/// vanishes exactly when the normal form does.
pub fn detection_cap<R: Ring>(x: &KPElement<R>) -> Result<MultiIndex> {
    let nf = x.normal_form()?;
    let keys: Vec<_> = x.terms().keys().chain(nf.terms().keys()).collect();
    let q = keys.iter().fold(MultiIndex::zero(), |acc, (_, b)| acc.join(b.degree()));
    Ok(keys.iter().fold(q.clone(), |acc, (a, b)| {
        acc.join(&a.degree().add(&q).sub(b.degree()).expect("d(b) <= q"))
    }))
}

/// Matrix-unit behaviour in the truncated grid graph over `cap`.
///
/// The columns `e_{(p, cap)}` stand for the infinite path from each grid
/// point `p`. On them each `s_{(m,n)}` is the matrix unit sending column
/// `n` to row `m`. Also checks `s_{(m,n)} s_{(n,p)} = s_{(m,p)}` both in the
/// algebra and as matrices, `s_{(m,n)} s_{(m,n)} = 0` for `m != n`, and
/// that `s_{(m,m)} = p_m` is idempotent.
pub fn omega_matrix_units(cap: &MultiIndex) -> Result<RelationReport> {
    let g = Arc::new(build_omega(cap));
    let w = Window::new(g.clone(), cap.clone())?;
    let ring = Integers;
    let points = cap.below();
    let vertex = |m: &MultiIndex| g.vertex(&omega_point_name(m, cap.max_color())).expect("grid point");
    let morphism = |m: &MultiIndex, n: &MultiIndex| -> Path {
        let d = n.sub(m).expect("m <= n");
        let target = vertex(n);
        g.paths_from(vertex(m), &d)
            .expect("explicit colors")
            .into_iter()
            .find(|p| p.source() == target)
            .expect("grid morphisms exist")
    };
    let element = |m: &MultiIndex, n: &MultiIndex| KPElement::path(g.clone(), ring, morphism(m, n));
    let column: BTreeMap<MultiIndex, usize> = points
        .iter()
        .map(|p| (p.clone(), w.position(&morphism(p, cap)).expect("d <= cap")))
        .collect();
    let label = |m: &MultiIndex, n: &MultiIndex| format!("s({m},{n})");

    let mut units = RelationCheck::new("matrix-units");
    let mut composition = RelationCheck::new("composition");
    let mut orthogonal = RelationCheck::new("non-composable");
    let mut idempotent = RelationCheck::new("idempotent");
    for m in &points {
        for n in points.iter().filter(|n| m.leq(n)) {
            let x = element(m, n);
            let mx = matrix_of(&x, &w)?;
            units.instances += 1;
            units.columns += column.len();
            for (p, &c) in &column {
                let expect: BTreeMap<usize, _> = if p == n {
                    [(column[m], ring.one())].into_iter().collect()
                } else {
                    BTreeMap::new()
                };
                if !mx.is_safe(c) || mx.cols[c] != expect {
                    units
                        .failures
                        .push(format!("{} on column {}", label(m, n), g.render_path(&w.basis()[c])));
                }
            }
            for p in points.iter().filter(|p| n.leq(p)) {
                let y = element(n, p);
                let xy = x.mul(&y)?;
                let expect = element(m, p);
                compare(
                    &mut composition,
                    || format!("{} {} = {}", label(m, n), label(n, p), label(m, p)),
                    &mx.mul(&matrix_of(&y, &w)?, &ring),
                    &matrix_of(&expect, &w)?,
                );
                if xy != expect {
                    composition
                        .failures
                        .push(format!("{} {} in the algebra", label(m, n), label(n, p)));
                }
            }
            if m != n {
                orthogonal.instances += 1;
                if !x.mul(&x)?.is_zero() {
                    orthogonal.failures.push(format!("{} squared", label(m, n)));
                }
            } else {
                idempotent.instances += 1;
                let pm = KPElement::vertex(g.clone(), ring, vertex(m));
                if x != pm || x.mul(&x)? != x {
                    idempotent.failures.push(label(m, n));
                }
            }
        }
    }
    Ok(RelationReport {
        checks: vec![units, composition, orthogonal, idempotent],
    })
}
