//! Quivers, paths and elements of path algebras.
//!
//! Composition is written right to left: the path `b*a` traverses `a` first.
//! Internally a [`Path`] stores its arrows in traversal order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::{FieldDescriptor, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("paths are not composable: {0}")]
    NotComposable(String),
    #[error("relation terms are not parallel: {0}")]
    NotParallel(String),
    #[error("relation has a term of length {0}; relations need paths of length at least 2")]
    ShortRelation(usize),
    #[error("relation is not length-homogeneous: {0}")]
    Inhomogeneous(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize, QuiverError> {
        let name = name.into();
        if self.vertex_index(&name).is_some() || self.arrow_index(&name).is_some() {
            return Err(QuiverError::DuplicateName(name));
        }
        self.vertices.push(name);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(
        &mut self,
        name: impl Into<String>,
        source: usize,
        target: usize,
    ) -> Result<usize, QuiverError> {
        let name = name.into();
        if self.vertex_index(&name).is_some() || self.arrow_index(&name).is_some() {
            return Err(QuiverError::DuplicateName(name));
        }
        for v in [source, target] {
            if v >= self.vertices.len() {
                return Err(QuiverError::UnknownVertex(format!("#{v}")));
            }
        }
        self.arrows.push(Arrow {
            name,
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn add_arrow_by_name(
        &mut self,
        name: impl Into<String>,
        source: &str,
        target: &str,
    ) -> Result<usize, QuiverError> {
        let s = self
            .vertex_index(source)
            .ok_or_else(|| QuiverError::UnknownVertex(source.to_string()))?;
        let t = self
            .vertex_index(target)
            .ok_or_else(|| QuiverError::UnknownVertex(target.to_string()))?;
        self.add_arrow(name, s, t)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm; `None` when there is a directed cycle (loops included).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    ready.push(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Length of the longest path, `None` for quivers with oriented cycles.
    pub fn longest_path_length(&self) -> Option<usize> {
        let order = self.topological_order()?;
        let mut longest = vec![0usize; self.vertices.len()];
        for &v in &order {
            for a in self.arrows.iter().filter(|a| a.source == v) {
                longest[a.target] = longest[a.target].max(longest[v] + 1);
            }
        }
        Some(longest.into_iter().max().unwrap_or(0))
    }

    pub fn trivial_path(&self, v: usize) -> Path {
        Path::trivial(v)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let arr = &self.arrows[a];
        Path {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        }
    }

    /// Builds a path from arrow indices in traversal order.
    pub fn path_from_traversal(&self, arrows: Vec<usize>) -> Result<Path, QuiverError> {
        let first = *arrows
            .first()
            .ok_or_else(|| QuiverError::NotComposable("empty arrow list".into()))?;
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(QuiverError::NotComposable(format!(
                    "{} then {}",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        let last = *arrows.last().unwrap();
        Ok(Path {
            source: self.arrows[first].source,
            target: self.arrows[last].target,
            arrows,
        })
    }

    /// Builds a path from names written right to left (`["b", "a"]` is `b*a`).
    pub fn path_from_names(&self, written: &[&str]) -> Result<Path, QuiverError> {
        let mut arrows = Vec::with_capacity(written.len());
        for name in written.iter().rev() {
            arrows.push(
                self.arrow_index(name)
                    .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))?,
            );
        }
        self.path_from_traversal(arrows)
    }

    /// `p ∘ q`: first `q`, then `p`.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Path, QuiverError> {
        p.compose(q).ok_or_else(|| {
            QuiverError::NotComposable(format!(
                "{} after {}",
                self.path_name(p),
                self.path_name(q)
            ))
        })
    }

    /// All paths of length at most `max_len`, graded by length and sorted
    /// within each length.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = (0..self.num_vertices()).map(Path::trivial).collect();
        let mut frontier: Vec<Path> = (0..self.num_arrows()).map(|a| self.arrow_path(a)).collect();
        let mut len = 1;
        while len <= max_len && !frontier.is_empty() {
            frontier.sort();
            all.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            frontier = next;
            len += 1;
        }
        all
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .rev()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    pub fn element_to_string(&self, e: &AlgebraElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, c)) in e.terms().enumerate() {
            let neg = c.is_negative_literal();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&self.path_name(p));
        }
        out
    }
}

/// A path; `arrows` is in traversal order and empty for trivial paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Arrow indices in traversal order.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn is_parallel(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// `self ∘ q` (first `q`), or `None` when `source(self) != target(q)`.
    pub fn compose(&self, q: &Path) -> Option<Path> {
        if self.source != q.target {
            return None;
        }
        let mut arrows = q.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Some(Path {
            source: q.source,
            target: self.target,
            arrows,
        })
    }

    /// Subpath covering traversal positions `start..end` (nonempty range).
    pub(crate) fn slice(&self, start: usize, end: usize, quiver: &Quiver) -> Path {
        debug_assert!(start < end && end <= self.arrows.len());
        let arrows = self.arrows[start..end].to_vec();
        Path {
            source: quiver.arrows[arrows[0]].source,
            target: quiver.arrows[*arrows.last().unwrap()].target,
            arrows,
        }
    }

    /// Prefix in traversal order (what is done first), possibly trivial.
    pub(crate) fn head(&self, n: usize, quiver: &Quiver) -> Path {
        if n == 0 {
            Path::trivial(self.source)
        } else {
            self.slice(0, n, quiver)
        }
    }

    /// Suffix in traversal order starting at position `n`, possibly trivial.
    pub(crate) fn tail(&self, n: usize, quiver: &Quiver) -> Path {
        if n == self.arrows.len() {
            Path::trivial(self.target)
        } else {
            self.slice(n, self.arrows.len(), quiver)
        }
    }

    /// Positions where `factor` occurs as a contiguous subpath.
    pub fn occurrences(&self, factor: &Path) -> Vec<usize> {
        let k = factor.arrows.len();
        if k == 0 || k > self.arrows.len() {
            return Vec::new();
        }
        (0..=self.arrows.len() - k)
            .filter(|&i| self.arrows[i..i + k] == factor.arrows[..])
            .collect()
    }

    /// Written (right-to-left) arrow sequence, used for orderings.
    fn written(&self) -> impl Iterator<Item = &usize> {
        self.arrows.iter().rev()
    }
}

/// Deterministic order: by length, then lexicographic on written arrow
/// indices; trivial paths by vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.written().cmp(other.written()))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of paths with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    field: FieldDescriptor,
    terms: BTreeMap<Path, Scalar>,
}

impl AlgebraElement {
    pub fn zero(field: FieldDescriptor) -> Self {
        AlgebraElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(field: FieldDescriptor, p: Path) -> Self {
        Self::monomial(p, field.one())
    }

    pub fn monomial(p: Path, c: Scalar) -> Self {
        let mut e = Self::zero(c.field());
        e.add_term(p, c);
        e
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (p, d) in &other.terms {
            self.add_term(p.clone(), d * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> AlgebraElement {
        let mut out = Self::zero(self.field);
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(other, &-self.field.one());
        out
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(other, &self.field.one());
        out
    }

    /// Product in the free path algebra: `self * other` (first `other`);
    /// non-composable term pairs multiply to zero.
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = Self::zero(self.field);
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, c * d);
                }
            }
        }
        out
    }

    /// Largest term under the default path order.
    pub fn max_path(&self) -> Option<&Path> {
        self.terms.keys().next_back()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    /// Checks that all terms share source and target.
    pub fn is_parallel(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(first) => it.all(|p| p.is_parallel(first)),
        }
    }
}
