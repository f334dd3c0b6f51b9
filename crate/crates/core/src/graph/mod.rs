//! Finite presentations of row-finite infinite-rank graphs.
//!
//! A graph is stored as a colored skeleton (the edges, i.e. morphisms of
//! degree `e_c`) together with a table of commuting squares `f g = g' f'`
//! for every pair of colors `i < j`. Colors `1..=K` are explicit. When the
//! trivial-tail flag is set, every color above `K` carries exactly one loop
//! at every vertex and those loops commute with everything; they are never
//! stored as edges and appear in paths only as counts.

mod build;
mod path;
mod text;
mod validate;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::multidegree::Color;

pub use build::{build_omega, build_product, build_single_vertex, omega_point_name, truncate, SquarePairing};
pub use path::Path;
pub use text::{parse_graph_file, parse_graph_text, render_graph};
pub use validate::{Check, ValidationReport};

/// Upper limit on the number of explicit colors accepted from input.
pub const MAX_COLORS: Color = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub color: Color,
    pub source: VertexId,
    pub range: VertexId,
}

/// One commuting square `f g = g2 f2`, where `f`, `f2` share the lower
/// color and `g`, `g2` the higher one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square {
    pub f: EdgeId,
    pub g: EdgeId,
    pub g2: EdgeId,
    pub f2: EdgeId,
}

/// Edge declaration by name, used to assemble a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDecl {
    pub id: String,
    pub color: Color,
    pub source: String,
    pub range: String,
}

impl EdgeDecl {
    pub fn new(id: impl Into<String>, color: Color, source: impl Into<String>, range: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            color,
            source: source.into(),
            range: range.into(),
        }
    }
}

/// Square declaration by edge names: `f g -> g2 f2`.
pub type SquareDecl = [String; 4];

#[derive(Clone)]
pub struct NGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    colors: Color,
    squares: Vec<Square>,
    trivial_tail: bool,

    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    forward: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    backward: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    // into[v][c - 1]: edges of color c with range v, in id order
    into: Vec<Vec<Vec<EdgeId>>>,
    out_of: Vec<Vec<EdgeId>>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl NGraph {
    /// Assembles a graph from named parts. Identifiers are resolved and
    /// edges must carry explicit colors `1..=colors`; everything else
    /// (square shape, bijectivity, hexagons, sources) is left to
    /// [`NGraph::validate`].
    pub fn new(
        vertices: Vec<String>,
        colors: Color,
        edges: Vec<EdgeDecl>,
        squares: Vec<SquareDecl>,
        trivial_tail: bool,
    ) -> Result<Self> {
        if colors > MAX_COLORS {
            return Err(Error::syntax(
                0,
                format!("at most {MAX_COLORS} explicit colors are supported"),
            ));
        }
        let mut vertices = vertices;
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::syntax(0, format!("duplicate vertex `{}`", w[0])));
            }
        }
        for v in &vertices {
            if !is_identifier(v) {
                return Err(Error::syntax(0, format!("bad vertex identifier `{v}`")));
            }
        }
        let vertex_index: HashMap<String, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexId(i as u32)))
            .collect();

        let mut decls = edges;
        decls.sort_by(|a, b| a.id.cmp(&b.id));
        let mut edges = Vec::with_capacity(decls.len());
        for (i, d) in decls.iter().enumerate() {
            if !is_identifier(&d.id) {
                return Err(Error::syntax(0, format!("bad edge identifier `{}`", d.id)));
            }
            if i > 0 && decls[i - 1].id == d.id {
                return Err(Error::syntax(0, format!("duplicate edge `{}`", d.id)));
            }
            if vertex_index.contains_key(&d.id) {
                return Err(Error::syntax(0, format!("`{}` names both a vertex and an edge", d.id)));
            }
            if d.color == 0 || d.color > colors {
                return Err(Error::syntax(
                    0,
                    format!("edge `{}` has color {} outside 1..={colors}", d.id, d.color),
                ));
            }
            let lookup = |name: &str| {
                vertex_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::syntax(0, format!("edge `{}` refers to unknown vertex `{name}`", d.id)))
            };
            edges.push(Edge {
                id: d.id.clone(),
                color: d.color,
                source: lookup(&d.source)?,
                range: lookup(&d.range)?,
            });
        }
        let edge_index: HashMap<String, EdgeId> = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), EdgeId(i as u32)))
            .collect();

        let mut resolved = Vec::with_capacity(squares.len());
        for sq in &squares {
            let mut ids = [EdgeId(0); 4];
            for (slot, name) in ids.iter_mut().zip(sq.iter()) {
                *slot = *edge_index
                    .get(name)
                    .ok_or_else(|| Error::syntax(0, format!("square refers to unknown edge `{name}`")))?;
            }
            resolved.push(Square {
                f: ids[0],
                g: ids[1],
                g2: ids[2],
                f2: ids[3],
            });
        }
        resolved.sort();
        resolved.dedup();

        Ok(Self::assemble(
            vertices,
            edges,
            colors,
            resolved,
            trivial_tail,
            vertex_index,
            edge_index,
        ))
    }

    fn assemble(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        colors: Color,
        squares: Vec<Square>,
        trivial_tail: bool,
        vertex_index: HashMap<String, VertexId>,
        edge_index: HashMap<String, EdgeId>,
    ) -> Self {
        let mut into = vec![vec![Vec::new(); colors as usize]; vertices.len()];
        let mut out_of = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            into[e.range.index()][e.color as usize - 1].push(EdgeId(i as u32));
            out_of[e.source.index()].push(EdgeId(i as u32));
        }
        let mut forward = HashMap::new();
        let mut backward = HashMap::new();
        for sq in &squares {
            forward.entry((sq.f, sq.g)).or_insert((sq.g2, sq.f2));
            backward.entry((sq.g2, sq.f2)).or_insert((sq.f, sq.g));
        }
        Self {
            vertices,
            edges,
            colors,
            squares,
            trivial_tail,
            vertex_index,
            edge_index,
            forward,
            backward,
            into,
            out_of,
        }
    }

    pub fn colors(&self) -> Color {
        self.colors
    }

    pub fn trivial_tail(&self) -> bool {
        self.trivial_tail
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_id(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// Edges of color `c` whose range is `v`, in identifier order. Empty for
    /// tail colors.
    pub fn edges_into(&self, v: VertexId, c: Color) -> &[EdgeId] {
        if c == 0 || c > self.colors {
            return &[];
        }
        &self.into[v.index()][c as usize - 1]
    }

    /// Edges of any explicit color whose source is `v`.
    pub fn edges_out_of(&self, v: VertexId) -> &[EdgeId] {
        &self.out_of[v.index()]
    }

    pub fn is_tail_color(&self, c: Color) -> bool {
        c > self.colors
    }

    /// Reorders the composable pair `x y` (distinct colors) into `y' x'`
    /// with the colors swapped, using the square table in whichever
    /// direction applies.
    pub fn swap(&self, x: EdgeId, y: EdgeId) -> Result<(EdgeId, EdgeId)> {
        let (cx, cy) = (self.edge(x).color, self.edge(y).color);
        let hit = if cx < cy {
            self.forward.get(&(x, y))
        } else {
            self.backward.get(&(x, y))
        };
        hit.copied()
            .ok_or_else(|| Error::MissingSquare(self.edge(x).id.clone(), self.edge(y).id.clone()))
    }

    /// True when every vertex receives at least one edge of every explicit
    /// color.
    pub fn has_no_sources(&self) -> bool {
        self.into
            .iter()
            .all(|per_color| per_color.iter().all(|es| !es.is_empty()))
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }
}

impl PartialEq for NGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.colors == other.colors
            && self.squares == other.squares
            && self.trivial_tail == other.trivial_tail
    }
}

impl Eq for NGraph {}

impl fmt::Debug for NGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_graph(self))
    }
}
