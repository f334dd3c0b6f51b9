//! Text syntax for algebra elements.
//!
//! Tokens are separated by whitespace:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := [coef '*'] factor+ | coef
//! factor := 'p' VERTEX | 's' PATH | 'S*' PATH
//! ```
//!
//! Factors in a term are multiplied left to right; a bare coefficient stands
//! for that multiple of the unit. Paths use the dotted form of
//! [`NGraph::render_path`], so `"2 * s a.b S* b - p v"` is valid input for a
//! graph with a vertex `v` and edges `a`, `b`.

use std::sync::Arc;

use super::{Generator, KPElement};
use crate::error::{Error, Result};
use crate::graph::NGraph;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Vertex(String),
    Path(String),
    Ghost(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub negated: bool,
    pub coef: Option<String>,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

fn is_coef(token: &str) -> bool {
    let t = token.strip_prefix('-').unwrap_or(token);
    t.starts_with(|c: char| c.is_ascii_digit())
}

fn err(msg: impl Into<String>) -> Error {
    Error::syntax(0, msg)
}

/// Parses the token structure without consulting a graph or ring.
pub fn parse_expr_syntax(text: &str) -> Result<Expr> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(err("empty expression"));
    }
    let mut terms = Vec::new();
    let mut i = 0;
    let mut negated = false;
    if tokens[0] == "-" {
        negated = true;
        i = 1;
    }
    loop {
        let mut term = Term {
            negated,
            coef: None,
            factors: Vec::new(),
        };
        if let Some(&t) = tokens.get(i).filter(|t| is_coef(t)) {
            term.coef = Some(t.to_string());
            i += 1;
            if tokens.get(i) == Some(&"*") {
                i += 1;
                if !matches!(tokens.get(i), Some(&("p" | "s" | "S*"))) {
                    return Err(err(format!("expected a factor after `{t} *`")));
                }
            }
        }
        while let Some(&kind) = tokens.get(i).filter(|t| matches!(**t, "p" | "s" | "S*")) {
            let arg = tokens
                .get(i + 1)
                .filter(|a| !matches!(**a, "+" | "-" | "*" | "p" | "s" | "S*"))
                .ok_or_else(|| err(format!("`{kind}` needs an argument")))?;
            term.factors.push(match kind {
                "p" => Factor::Vertex(arg.to_string()),
                "s" => Factor::Path(arg.to_string()),
                _ => Factor::Ghost(arg.to_string()),
            });
            i += 2;
        }
        if term.coef.is_none() && term.factors.is_empty() {
            return Err(match tokens.get(i) {
                Some(t) => err(format!("unexpected token `{t}`")),
                None => err("expression ends after an operator"),
            });
        }
        terms.push(term);
        match tokens.get(i) {
            None => break,
            Some(&"+") => negated = false,
            Some(&"-") => negated = true,
            Some(t) => return Err(err(format!("unexpected token `{t}`"))),
        }
        i += 1;
    }
    Ok(Expr { terms })
}

impl Expr {
    /// Resolves identifiers and coefficients against a graph and ring.
    pub fn resolve<R: Ring>(&self, g: &NGraph, ring: &R) -> Result<Vec<(R::Elem, Vec<Generator>)>> {
        self.terms
            .iter()
            .map(|t| {
                let mut coef = match &t.coef {
                    Some(c) => ring.parse(c)?,
                    None => ring.one(),
                };
                if t.negated {
                    coef = ring.neg(&coef);
                }
                let gens = t
                    .factors
                    .iter()
                    .map(|f| {
                        Ok(match f {
                            Factor::Vertex(v) => Generator::Vertex(g.vertex(v)?),
                            Factor::Path(p) => Generator::Path(g.parse_path(p)?),
                            Factor::Ghost(p) => Generator::Ghost(g.parse_path(p)?),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((coef, gens))
            })
            .collect()
    }

    pub fn evaluate<R: Ring>(&self, graph: Arc<NGraph>, ring: R) -> Result<KPElement<R>> {
        let resolved = self.resolve(&graph, &ring)?;
        let mut total = KPElement::zero(graph.clone(), ring.clone());
        for (coef, gens) in resolved {
            let mut x = KPElement::one(graph.clone(), ring.clone());
            for gen in gens {
                x = x.mul(&KPElement::generator(graph.clone(), ring.clone(), gen))?;
            }
            total = total.add(&x.smul(&coef))?;
        }
        Ok(total)
    }
}

/// Parses and evaluates an element.
pub fn parse_expr<R: Ring>(graph: Arc<NGraph>, ring: R, text: &str) -> Result<KPElement<R>> {
    parse_expr_syntax(text)?.evaluate(graph, ring)
}
