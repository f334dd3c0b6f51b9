//! Finitely supported multi-indices and their signed counterparts.
//!
//! A [`MultiIndex`] is an element of the monoid of finitely supported
//! functions from colors `1, 2, 3, ...` to the natural numbers. Only nonzero
//! entries are stored, so structural equality coincides with equality of the
//! underlying functions. [`GradedDegree`] is the group completion used to
//! label graded components of the algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Color index of an edge. Colors start at 1.
pub type Color = u32;

/// Finitely supported degree with natural-number entries.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    entries: BTreeMap<Color, u32>,
}

impl MultiIndex {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The generator `e_c`.
    pub fn unit(color: Color) -> Self {
        Self::from_pairs([(color, 1)])
    }

    /// Builds a multi-index from `(color, count)` pairs, summing repeated
    /// colors and dropping zero counts.
    ///
    /// Panics on color 0; use the parser for untrusted input.
    pub fn from_pairs<I: IntoIterator<Item = (Color, u32)>>(pairs: I) -> Self {
        let mut entries = BTreeMap::new();
        for (c, v) in pairs {
            assert!(c >= 1, "colors start at 1");
            if v > 0 {
                *entries.entry(c).or_insert(0) += v;
            }
        }
        Self { entries }
    }

    pub fn get(&self, color: Color) -> u32 {
        self.entries.get(&color).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all entries (the length of a path of this degree).
    pub fn total(&self) -> u32 {
        self.entries.values().sum()
    }

    /// Largest color with a nonzero entry, or 0 for the zero index.
    pub fn max_color(&self) -> Color {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Color, u32)> + '_ {
        self.entries.iter().map(|(&c, &v)| (c, v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        for (&c, &v) in &other.entries {
            *entries.entry(c).or_insert(0) += v;
        }
        Self { entries }
    }

    /// Entrywise difference, defined only when `other <= self`.
    pub fn sub(&self, other: &Self) -> Option<Self> {
        if !other.leq(self) {
            return None;
        }
        Some(self.saturating_sub(other))
    }

    /// Entrywise `max(self - other, 0)`.
    pub fn saturating_sub(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .filter_map(|(&c, &v)| {
                let d = v.saturating_sub(other.get(c));
                (d > 0).then_some((c, d))
            })
            .collect();
        Self { entries }
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.entries.iter().all(|(&c, &v)| v <= other.get(c))
    }

    /// Entrywise maximum (least upper bound).
    pub fn join(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        for (&c, &v) in &other.entries {
            let e = entries.entry(c).or_insert(0);
            *e = (*e).max(v);
        }
        Self { entries }
    }

    /// Entrywise minimum (greatest lower bound).
    pub fn meet(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .filter_map(|(&c, &v)| {
                let m = v.min(other.get(c));
                (m > 0).then_some((c, m))
            })
            .collect();
        Self { entries }
    }

    /// Drops every entry at a color greater than `k`.
    pub fn project(&self, k: Color) -> Self {
        let entries = self.entries.range(..=k).map(|(&c, &v)| (c, v)).collect();
        Self { entries }
    }

    /// Keeps only the entries at colors greater than `k`.
    pub fn above(&self, k: Color) -> Self {
        let entries = self
            .entries
            .range(k.saturating_add(1)..)
            .map(|(&c, &v)| (c, v))
            .collect();
        Self { entries }
    }

    /// Colors listed with multiplicity in ascending order, e.g. `{1:2,3:1}`
    /// gives `[1, 1, 3]`.
    pub fn color_word(&self) -> Vec<Color> {
        self.entries
            .iter()
            .flat_map(|(&c, &v)| std::iter::repeat_n(c, v as usize))
            .collect()
    }

    /// All multi-indices `m` with `m <= self`, ordered by total degree and
    /// then by the derived order.
    pub fn below(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero()];
        for (&c, &v) in &self.entries {
            let mut next = Vec::with_capacity(out.len() * (v as usize + 1));
            for m in &out {
                for k in 0..=v {
                    let mut m = m.clone();
                    if k > 0 {
                        m.entries.insert(c, k);
                    }
                    next.push(m);
                }
            }
            out = next;
        }
        out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        out
    }

    pub fn to_graded(&self) -> GradedDegree {
        GradedDegree {
            entries: self.entries.iter().map(|(&c, &v)| (c, v as i64)).collect(),
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, self.entries.iter().map(|(c, v)| (*c, *v as i64)))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let pairs = parse_entries(s)?;
        let mut entries = BTreeMap::new();
        for (c, v) in pairs {
            let v = u32::try_from(v)
                .map_err(|_| Error::syntax(0, format!("entry for color {c} must be a natural number")))?;
            if v > 0 {
                entries.insert(c, v);
            }
        }
        Ok(Self { entries })
    }
}

/// Finitely supported degree with integer entries; `d(alpha) - d(beta)`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedDegree {
    entries: BTreeMap<Color, i64>,
}

impl GradedDegree {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn difference(plus: &MultiIndex, minus: &MultiIndex) -> Self {
        plus.to_graded().add(&minus.to_graded().neg())
    }

    pub fn from_pairs<I: IntoIterator<Item = (Color, i64)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (c, v) in pairs {
            assert!(c >= 1, "colors start at 1");
            out.bump(c, v);
        }
        out
    }

    fn bump(&mut self, c: Color, v: i64) {
        let e = self.entries.entry(c).or_insert(0);
        *e += v;
        if *e == 0 {
            self.entries.remove(&c);
        }
    }

    pub fn get(&self, color: Color) -> i64 {
        self.entries.get(&color).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&c, &v) in &other.entries {
            out.bump(c, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(&c, &v)| (c, -v)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Color, i64)> + '_ {
        self.entries.iter().map(|(&c, &v)| (c, v))
    }
}

impl fmt::Display for GradedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, self.entries.iter().map(|(c, v)| (*c, *v)))
    }
}

impl fmt::Debug for GradedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GradedDegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(Self::from_pairs(parse_entries(s)?))
    }
}

fn write_entries<I: Iterator<Item = (Color, i64)>>(f: &mut fmt::Formatter<'_>, it: I) -> fmt::Result {
    f.write_str("{")?;
    for (i, (c, v)) in it.enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{c}:{v}")?;
    }
    f.write_str("}")
}

/// Parses `{c1:v1, c2:v2, ...}`. Braces are optional; colors must be
/// positive and distinct.
fn parse_entries(s: &str) -> Result<Vec<(Color, i64)>, Error> {
    let t = s.trim();
    let inner = match (t.strip_prefix('{'), t.ends_with('}')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => t,
        _ => return Err(Error::syntax(0, format!("unbalanced braces in multi-index `{s}`"))),
    };
    let mut out: Vec<(Color, i64)> = Vec::new();
    for item in inner.split(',') {
        let item = item.trim();
        if item.is_empty() {
            if inner.trim().is_empty() {
                continue;
            }
            return Err(Error::syntax(0, format!("empty entry in multi-index `{s}`")));
        }
        let (c, v) = item
            .split_once(':')
            .ok_or_else(|| Error::syntax(0, format!("expected `color:value`, found `{item}`")))?;
        let c: Color = c
            .trim()
            .parse()
            .map_err(|_| Error::syntax(0, format!("bad color `{}`", c.trim())))?;
        if c == 0 {
            return Err(Error::syntax(0, "colors start at 1"));
        }
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| Error::syntax(0, format!("bad value `{}`", v.trim())))?;
        if i64::from(u32::MAX) < v.abs() {
            return Err(Error::syntax(0, format!("value {v} out of range")));
        }
        if out.iter().any(|&(d, _)| d == c) {
            return Err(Error::syntax(0, format!("color {c} repeated")));
        }
        out.push((c, v));
    }
    Ok(out)
}
