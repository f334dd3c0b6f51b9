//! Bounded witness search for aperiodicity.
//!
//! The condition quantifies over paths of unbounded degree, so a failed
//! search only ever reports that nothing was found below the bound.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{NGraph, Path, VertexId};
use crate::multidegree::MultiIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    AperiodicWitnessed,
    UnknownWithinBound,
}

pub type PairKey = (VertexId, MultiIndex, MultiIndex);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperiodicityVerdict {
    pub status: Status,
    pub witnesses: BTreeMap<PairKey, Path>,
    pub unresolved: Vec<PairKey>,
}

/// Whether `lambda` separates the shifts by `m` and `n`:
/// `lambda(m, m + t) != lambda(n, n + t)` with `t = d(lambda) - (m v n)`.
pub fn separates(g: &NGraph, lambda: &Path, m: &MultiIndex, n: &MultiIndex) -> Result<bool> {
    let j = m.join(n);
    let t = lambda.degree().sub(&j).ok_or_else(|| Error::OutOfRange {
        from: m.to_string(),
        to: n.to_string(),
        degree: lambda.degree().to_string(),
    })?;
    Ok(g.segment(lambda, m, &m.add(&t))? != g.segment(lambda, n, &n.add(&t))?)
}

/// First path `lambda` at `v` with `m v n <= d(lambda) <= bound` separating
/// the shifts by `m` and `n`, searching degrees in increasing order.
pub fn check_pair(g: &NGraph, v: VertexId, m: &MultiIndex, n: &MultiIndex, bound: &MultiIndex) -> Result<Option<Path>> {
    if m == n {
        return Err(Error::BadPair(m.to_string()));
    }
    let j = m.join(n);
    if !j.leq(bound) {
        return Err(Error::Usage(format!("pair join {j} exceeds bound {bound}")));
    }
    for d in bound.below().into_iter().filter(|d| j.leq(d)) {
        for lambda in g.paths_from(v, &d)? {
            if separates(g, &lambda, m, n)? {
                return Ok(Some(lambda));
            }
        }
    }
    Ok(None)
}

/// Runs [`check_pair`] for every vertex and every unordered pair of
/// distinct degrees below `pair_cap`.
pub fn is_aperiodic(g: &NGraph, pair_cap: &MultiIndex, bound: &MultiIndex) -> Result<AperiodicityVerdict> {
    if !pair_cap.leq(bound) {
        return Err(Error::Usage(format!("pair cap {pair_cap} exceeds bound {bound}")));
    }
    let degrees = pair_cap.below();
    let mut witnesses = BTreeMap::new();
    let mut unresolved = Vec::new();
    for v in g.vertices() {
        for (i, m) in degrees.iter().enumerate() {
            for n in &degrees[i + 1..] {
                let key = (v, m.clone(), n.clone());
                match check_pair(g, v, m, n, bound)? {
                    Some(lambda) => {
                        witnesses.insert(key, lambda);
                    }
                    None => unresolved.push(key),
                }
            }
        }
    }
    let status = if unresolved.is_empty() {
        Status::AperiodicWitnessed
    } else {
        Status::UnknownWithinBound
    };
    Ok(AperiodicityVerdict {
        status,
        witnesses,
        unresolved,
    })
}

/// Paths with source `v` and degree at most `l`.
fn paths_into(g: &NGraph, v: VertexId, l: &MultiIndex) -> Result<Vec<Path>> {
    Ok(g.paths_up_to(l)?.into_iter().filter(|p| p.source() == v).collect())
}

/// Whether the initial segments of degree `d(lambda)` of `a lambda` and
/// `b lambda` differ for all distinct `a`, `b` in `others`.
pub fn is_separating(g: &NGraph, lambda: &Path, others: &[Path]) -> Result<bool> {
    let zero = MultiIndex::zero();
    let heads: Vec<Path> = others
        .iter()
        .map(|a| g.segment(&g.compose(a, lambda)?, &zero, lambda.degree()))
        .collect::<Result<_>>()?;
    for i in 0..heads.len() {
        for j in i + 1..heads.len() {
            if heads[i] == heads[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A path `lambda` at `v` with `l <= d(lambda) <= bound` such that the
/// initial segments of degree `d(lambda)` of `a lambda` are pairwise
/// distinct over all paths `a` into `v` of degree at most `l`.
pub fn separating_path(g: &NGraph, v: VertexId, l: &MultiIndex, bound: &MultiIndex) -> Result<Option<Path>> {
    if !l.leq(bound) {
        return Err(Error::Usage(format!("level {l} exceeds bound {bound}")));
    }
    let others = paths_into(g, v, l)?;
    for d in bound.below().into_iter().filter(|d| l.leq(d)) {
        for lambda in g.paths_from(v, &d)? {
            if is_separating(g, &lambda, &others)? {
                return Ok(Some(lambda));
            }
        }
    }
    Ok(None)
}
