//! Constructors for the standard example graphs and truncations.

use std::collections::{BTreeMap, BTreeSet};

use super::{EdgeDecl, NGraph, SquareDecl};
use crate::error::{Error, Result};
use crate::multidegree::{Color, MultiIndex};

/// Commuting squares for a single-vertex graph. Loops are referenced by
/// `(color, index)` with indices counted from 0 within each color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquarePairing {
    /// `f g = g f` for every pair of loops.
    Trivial,
    /// `f g = g' f'` for each listed `((f, g), (g', f'))`.
    Explicit(Vec<((LoopRef, LoopRef), (LoopRef, LoopRef))>),
}

pub type LoopRef = (Color, usize);

fn fresh(base: String, used: &mut BTreeSet<String>) -> String {
    let mut id = base;
    while used.contains(&id) {
        id.push('\'');
    }
    used.insert(id.clone());
    id
}

fn loop_name(n: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuwxyz";
    if n < LETTERS.len() {
        (LETTERS[n] as char).to_string()
    } else {
        format!("l{n}")
    }
}

/// Single vertex `v` with `loop_counts[c - 1]` loops of color `c`. Loops are
/// named `a, b, c, ...` in order of color (skipping `v`). The result has a
/// trivial tail and is validated.
pub fn build_single_vertex(loop_counts: &[usize], squares: &SquarePairing) -> Result<NGraph> {
    let colors = loop_counts.len() as Color;
    let mut names: BTreeMap<LoopRef, String> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut n = 0;
    for (ci, &count) in loop_counts.iter().enumerate() {
        for k in 0..count {
            let id = loop_name(n);
            n += 1;
            edges.push(EdgeDecl::new(id.clone(), ci as Color + 1, "v", "v"));
            names.insert((ci as Color + 1, k), id);
        }
    }
    let name = |r: &LoopRef| {
        names
            .get(r)
            .cloned()
            .ok_or_else(|| Error::Usage(format!("no loop {} of color {}", r.1, r.0)))
    };
    let mut decls: Vec<SquareDecl> = Vec::new();
    match squares {
        SquarePairing::Trivial => {
            for (f, fname) in &names {
                for (g, gname) in &names {
                    if f.0 < g.0 {
                        decls.push([fname.clone(), gname.clone(), gname.clone(), fname.clone()]);
                    }
                }
            }
        }
        SquarePairing::Explicit(list) => {
            for ((f, g), (g2, f2)) in list {
                decls.push([name(f)?, name(g)?, name(g2)?, name(f2)?]);
            }
        }
    }
    let graph = NGraph::new(vec!["v".to_string()], colors, edges, decls, true)?;
    let report = graph.validate();
    if !report.passed() {
        return Err(Error::InvalidSquares(Box::new(report)));
    }
    Ok(graph)
}

/// Cartesian product of one-color graphs: factor `i` contributes the edges
/// of color `i + 1`, and all squares are the trivial ones.
pub fn build_product(factors: &[NGraph]) -> Result<NGraph> {
    if let Some(bad) = factors.iter().position(|g| g.colors() != 1) {
        return Err(Error::Usage(format!(
            "factor {} does not have exactly one color",
            bad + 1
        )));
    }
    // vertex tuples in lexicographic order of factor vertex indices
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for g in factors {
        tuples = tuples
            .iter()
            .flat_map(|t| {
                (0..g.num_vertices()).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    let joined = |t: &[usize]| {
        t.iter()
            .zip(factors)
            .map(|(&i, g)| g.vertex_name(super::VertexId(i as u32)).to_string())
            .collect::<Vec<_>>()
            .join("_")
    };
    let mut used = BTreeSet::new();
    let vnames: BTreeMap<Vec<usize>, String> = tuples
        .iter()
        .map(|t| (t.clone(), fresh(joined(t), &mut used)))
        .collect();

    // edge of factor i from the tuple `src`, keyed by (factor, edge, src)
    let mut enames: BTreeMap<(usize, u32, Vec<usize>), String> = BTreeMap::new();
    let mut edges = Vec::new();
    for (i, g) in factors.iter().enumerate() {
        let others = tuples.len() / g.num_vertices().max(1);
        for e in g.edge_ids() {
            let edge = g.edge(e);
            for t in tuples.iter().filter(|t| t[i] == edge.source.index()) {
                let mut r = t.clone();
                r[i] = edge.range.index();
                let base = if others == 1 {
                    edge.id.clone()
                } else {
                    let rest: Vec<usize> = t.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
                    format!(
                        "{}_{}",
                        edge.id,
                        rest.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_")
                    )
                };
                let id = fresh(base, &mut used);
                edges.push(EdgeDecl::new(
                    id.clone(),
                    i as Color + 1,
                    vnames[t].clone(),
                    vnames[&r].clone(),
                ));
                enames.insert((i, e.0, t.clone()), id);
            }
        }
    }

    // f (factor i) after g (factor j), i < j, starting at tuple s:
    // g moves coordinate j first, then f moves coordinate i. The other way
    // round, f' moves coordinate i from s and g' moves coordinate j after.
    let mut squares = Vec::new();
    for (i, gi) in factors.iter().enumerate() {
        for (j, gj) in factors.iter().enumerate().skip(i + 1) {
            for s in &tuples {
                for eg in gj.edge_ids().filter(|&e| gj.edge(e).source.index() == s[j]) {
                    let mut mid = s.clone();
                    mid[j] = gj.edge(eg).range.index();
                    for ef in gi.edge_ids().filter(|&e| gi.edge(e).source.index() == s[i]) {
                        let mut mid2 = s.clone();
                        mid2[i] = gi.edge(ef).range.index();
                        squares.push([
                            enames[&(i, ef.0, mid.clone())].clone(),
                            enames[&(j, eg.0, s.clone())].clone(),
                            enames[&(j, eg.0, mid2.clone())].clone(),
                            enames[&(i, ef.0, s.clone())].clone(),
                        ]);
                    }
                }
            }
        }
    }
    let tail = factors.iter().all(NGraph::trivial_tail);
    NGraph::new(
        vnames.into_values().collect(),
        factors.len() as Color,
        edges,
        squares,
        tail,
    )
}

/// Vertex name of the grid point `m` in a grid with `colors` colors,
/// e.g. `o1_0`.
pub fn omega_point_name(m: &MultiIndex, colors: Color) -> String {
    let coords: Vec<String> = (1..=colors).map(|c| m.get(c).to_string()).collect();
    format!("o{}", coords.join("_"))
}

/// Finite piece of the path category of the multi-index monoid: vertices
/// are the `m <= cap`, and each `m + e_c <= cap` gives an edge of color `c`
/// from `m + e_c` to `m`. Boundary vertices are sources, so the result does
/// not pass validation.
pub fn build_omega(cap: &MultiIndex) -> NGraph {
    let colors = cap.max_color();
    let name = |m: &MultiIndex| omega_point_name(m, colors);
    let points = cap.below();
    let mut edges = Vec::new();
    for m in &points {
        for c in 1..=colors {
            let up = m.add(&MultiIndex::unit(c));
            if up.leq(cap) {
                edges.push(EdgeDecl::new(format!("c{c}_{}", name(m)), c, name(&up), name(m)));
            }
        }
    }
    let mut squares = Vec::new();
    let edge = |c: Color, range: &MultiIndex| format!("c{c}_{}", name(range));
    for m in &points {
        for i in 1..=colors {
            for j in i + 1..=colors {
                let top = m.add(&MultiIndex::unit(i)).add(&MultiIndex::unit(j));
                if top.leq(cap) {
                    let mi = m.add(&MultiIndex::unit(i));
                    let mj = m.add(&MultiIndex::unit(j));
                    squares.push([edge(i, m), edge(j, &mi), edge(j, m), edge(i, &mj)]);
                }
            }
        }
    }
    NGraph::new(points.iter().map(name).collect(), colors, edges, squares, false)
        .expect("omega identifiers are well formed")
}

/// The sub-graph of morphisms supported on colors `1..=k`. With a trivial
/// tail and `k` above the explicit colors, the tail loops of colors
/// `K + 1..=k` become explicit edges. The result has no tail.
pub fn truncate(g: &NGraph, k: Color) -> NGraph {
    let explicit = g.colors().min(k);
    let top = if g.trivial_tail() {
        k.min(super::MAX_COLORS)
    } else {
        explicit
    };
    let mut used: BTreeSet<String> = g.edges().iter().map(|e| e.id.clone()).collect();
    used.extend(g.vertices().map(|v| g.vertex_name(v).to_string()));

    let mut edges: Vec<EdgeDecl> = g
        .edges()
        .iter()
        .filter(|e| e.color <= explicit)
        .map(|e| EdgeDecl::new(e.id.clone(), e.color, g.vertex_name(e.source), g.vertex_name(e.range)))
        .collect();
    let mut squares: Vec<SquareDecl> = g
        .squares()
        .iter()
        .filter(|sq| g.edge(sq.g).color <= explicit)
        .map(|sq| [sq.f, sq.g, sq.g2, sq.f2].map(|e| g.edge(e).id.clone()))
        .collect();

    let mut loops: BTreeMap<(Color, String), String> = BTreeMap::new();
    for c in explicit + 1..=top {
        for v in g.vertices() {
            let vname = g.vertex_name(v).to_string();
            let id = fresh(format!("t{c}_{vname}"), &mut used);
            edges.push(EdgeDecl::new(id.clone(), c, vname.clone(), vname.clone()));
            loops.insert((c, vname), id);
        }
    }
    for c in explicit + 1..=top {
        for e in g.edges().iter().filter(|e| e.color <= explicit) {
            let at_range = loops[&(c, g.vertex_name(e.range).to_string())].clone();
            let at_source = loops[&(c, g.vertex_name(e.source).to_string())].clone();
            squares.push([e.id.clone(), at_source, at_range, e.id.clone()]);
        }
        for c2 in c + 1..=top {
            for v in g.vertices() {
                let vname = g.vertex_name(v).to_string();
                let lo = loops[&(c, vname.clone())].clone();
                let hi = loops[&(c2, vname)].clone();
                squares.push([lo.clone(), hi.clone(), hi, lo]);
            }
        }
    }
    let vertices = g.vertices().map(|v| g.vertex_name(v).to_string()).collect();
    NGraph::new(vertices, top, edges, squares, false).expect("truncation keeps identifiers valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    /// Compares graphs up to a renaming of edges, given as (ours, theirs).
    fn same_up_to_edge_names(a: &NGraph, b: &NGraph, renaming: &[(&str, &str)]) -> bool {
        let map: BTreeMap<&str, &str> = renaming.iter().copied().collect();
        let text = super::super::render_graph(a);
        let renamed: Vec<String> = text
            .lines()
            .map(|l| {
                l.split(' ')
                    .map(|w| map.get(w).copied().unwrap_or(w))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let parsed = super::super::parse_graph_text(&renamed.join("\n")).unwrap();
        &parsed == b
    }

    #[test]
    fn single_vertex_examples() {
        let e1 = build_single_vertex(&[1], &SquarePairing::Trivial).unwrap();
        assert!(same_up_to_edge_names(&e1, &catalog::e1(), &[("a", "f")]));
        let e2 = build_single_vertex(&[2], &SquarePairing::Trivial).unwrap();
        assert_eq!(e2, catalog::e2());
        let e3 = build_single_vertex(
            &[1, 1],
            &SquarePairing::Explicit(vec![(((1, 0), (2, 0)), ((2, 0), (1, 0)))]),
        )
        .unwrap();
        assert!(same_up_to_edge_names(&e3, &catalog::e3(), &[("a", "e"), ("b", "f")]));
    }

    #[test]
    fn single_vertex_rejects_bad_pairings() {
        let incomplete = SquarePairing::Explicit(vec![]);
        assert!(matches!(
            build_single_vertex(&[1, 1], &incomplete),
            Err(Error::InvalidSquares(_))
        ));
        let clash = SquarePairing::Explicit(vec![
            (((1, 0), (2, 0)), ((2, 0), (1, 0))),
            (((1, 1), (2, 0)), ((2, 0), (1, 0))),
        ]);
        assert!(build_single_vertex(&[2, 1], &clash).is_err());
    }

    #[test]
    fn products() {
        let e1 = catalog::e1();
        let p = build_product(&[e1.clone(), e1.clone()]).unwrap();
        assert!(p.validate().passed());
        assert_eq!((p.num_vertices(), p.num_edges(), p.squares().len()), (1, 2, 1));

        let p = build_product(&[catalog::e2(), e1.clone()]).unwrap();
        assert!(p.validate().passed());
        assert_eq!((p.num_vertices(), p.colors(), p.num_edges()), (1, 2, 3));
        let names: Vec<_> = p
            .squares()
            .iter()
            .map(|s| {
                (
                    p.edge(s.f).id.as_str(),
                    p.edge(s.g).id.as_str(),
                    p.edge(s.g2).id.as_str(),
                    p.edge(s.f2).id.as_str(),
                )
            })
            .collect();
        assert_eq!(names, [("a", "f", "f", "a"), ("b", "f", "f", "b")]);

        let e4 = truncate(&catalog::e4(), 1);
        let p = build_product(&[e4, truncate(&e1, 1)]).unwrap();
        assert!(p.validate().passed(), "{}", p.validate());
        assert_eq!((p.num_vertices(), p.colors()), (2, 2));

        assert!(build_product(&[catalog::e3()]).is_err());
    }

    #[test]
    fn omega_shapes() {
        let g = build_omega(&mi("{1:2}"));
        assert_eq!((g.num_vertices(), g.num_edges(), g.squares().len()), (3, 2, 0));
        let g = build_omega(&mi("{1:1,2:1}"));
        assert_eq!((g.num_vertices(), g.num_edges(), g.squares().len()), (4, 4, 1));
        let g = build_omega(&mi("{1:1}"));
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 1));
        assert!(!g.trivial_tail());
    }

    #[test]
    fn truncations() {
        let e3 = catalog::e3();
        let t1 = truncate(&e3, 1);
        assert_eq!((t1.colors(), t1.num_edges()), (1, 1));
        assert_eq!(t1.edge(crate::graph::EdgeId(0)).id, "e");
        assert!(t1.validate().passed());

        let t2 = truncate(&e3, 2);
        assert_eq!(t2.edges(), e3.edges());
        assert_eq!(t2.squares(), e3.squares());
        assert!(!t2.trivial_tail());

        let t = truncate(&catalog::e1(), 2);
        assert_eq!((t.colors(), t.num_edges(), t.squares().len()), (2, 2, 1));
        assert!(t.validate().passed(), "{}", t.validate());
    }

    #[test]
    fn truncation_composes() {
        for (name, g) in catalog::all() {
            for k in 0..4 {
                for i in 0..4 {
                    assert_eq!(
                        truncate(&truncate(&g, k), i),
                        truncate(&g, i.min(k)),
                        "{name} k={k} i={i}"
                    );
                }
            }
        }
    }
}
