//! The bridge between list colouring and consistent correspondence
//! colouring.
//!
//! [`from_lists`] numbers each list in sorted order and links equal labels
//! across every edge. [`to_lists`] goes back by numbering the classes of the
//! cover relation. In both directions a [`ColorMap`] records which label each
//! colour of each vertex stands for.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::coloring::Coloring;
use crate::correspondence::{
    cover_classes, inconsistency_witness, AssignmentError, Color, CorrespondenceAssignment, PartialInjection,
};
use crate::plane::{PlaneGraph, Vertex};

pub type Label = i64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ListError {
    #[error("list of vertex {vertex} has {len} labels, expected {k}")]
    Ragged { vertex: Vertex, len: usize, k: usize },
    #[error("list of vertex {0} repeats a label")]
    Repeated(Vertex),
    #[error("list assignment covers {found} vertices, graph has {expected}")]
    VertexCount { expected: usize, found: usize },
    #[error("assignment is inconsistent: colours {1} and {2} of vertex {0} are linked")]
    Inconsistent(Vertex, Color, Color),
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
}

/// Lists of `k` distinct labels, `lists[v - 1]` for vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    k: usize,
    lists: Vec<Vec<Label>>,
}

impl ListAssignment {
    pub fn new(k: usize, lists: Vec<Vec<Label>>) -> Result<Self, ListError> {
        for (i, l) in lists.iter().enumerate() {
            if l.len() != k {
                return Err(ListError::Ragged {
                    vertex: i + 1,
                    len: l.len(),
                    k,
                });
            }
            if l.iter().collect::<BTreeSet<_>>().len() != k {
                return Err(ListError::Repeated(i + 1));
            }
        }
        Ok(ListAssignment { k, lists })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, v: Vertex) -> &[Label] {
        &self.lists[v - 1]
    }

    /// Proper colourings choosing each vertex's label from its list, by
    /// exhaustive enumeration.
    pub fn colorings(&self, g: &PlaneGraph) -> Vec<Vec<Label>> {
        let n = self.n();
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        if n == 0 {
            return out;
        }
        loop {
            let phi: Vec<Label> = (0..n).map(|i| self.lists[i][idx[i]]).collect();
            if g.edges().iter().all(|e| phi[e.u() - 1] != phi[e.v() - 1]) {
                out.push(phi);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                idx[i] += 1;
                if idx[i] < self.k {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }
}

/// For each vertex, the label standing for each colour: `labels[v - 1][c - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorMap {
    k: usize,
    labels: Vec<Vec<Label>>,
}

impl ColorMap {
    pub fn new(k: usize, labels: Vec<Vec<Label>>) -> Result<Self, ListError> {
        // Same shape rules as a list assignment.
        ListAssignment::new(k, labels.clone())?;
        Ok(ColorMap { k, labels })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: Vertex, c: Color) -> Label {
        self.labels[v - 1][c as usize - 1]
    }

    pub fn labels(&self, v: Vertex) -> &[Label] {
        &self.labels[v - 1]
    }

    pub fn color_of(&self, v: Vertex, label: Label) -> Option<Color> {
        self.labels[v - 1]
            .iter()
            .position(|&l| l == label)
            .map(|i| i as Color + 1)
    }

    /// Label colouring `v -> label(v, f(v))` of a total colouring.
    pub fn to_labels(&self, f: &Coloring) -> Option<Vec<Label>> {
        (1..=self.n()).map(|v| f.get(v).map(|c| self.label(v, c))).collect()
    }

    /// Colouring with `label(v, f(v)) = phi(v)`.
    pub fn to_coloring(&self, phi: &[Label]) -> Option<Coloring> {
        let colors: Option<Vec<Color>> = phi.iter().enumerate().map(|(i, &l)| self.color_of(i + 1, l)).collect();
        colors.map(|c| Coloring::total(&c))
    }
}

/// Builds the consistent assignment of a list assignment. Colour `i` of `v`
/// stands for the `i`-th smallest label of `L(v)`; `C_uv` links the colours of
/// every label shared by `L(u)` and `L(v)`.
pub fn from_lists(g: &PlaneGraph, lists: &ListAssignment) -> Result<(CorrespondenceAssignment, ColorMap), ListError> {
    if lists.n() != g.n() {
        return Err(ListError::VertexCount {
            expected: g.n(),
            found: lists.n(),
        });
    }
    let k = lists.k();
    let sorted: Vec<Vec<Label>> = lists
        .lists
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l
        })
        .collect();
    let q = ColorMap { k, labels: sorted };
    let mut c = CorrespondenceAssignment::new(k as u8)?;
    for e in g.edges() {
        let mut m = PartialInjection::empty(k as u8);
        for (i, label) in q.labels(e.u()).iter().enumerate() {
            if let Some(b) = q.color_of(e.v(), *label) {
                m.insert(i as Color + 1, b)?;
            }
        }
        c.set(e.u(), e.v(), m)?;
    }
    Ok((c, q))
}

/// Builds lists from a consistent assignment: labels are the classes of the
/// cover relation, numbered from 1 in order of first appearance when pairs
/// `(v, c)` are scanned by vertex and then colour.
pub fn to_lists(g: &PlaneGraph, c: &CorrespondenceAssignment) -> Result<(ListAssignment, ColorMap), ListError> {
    if let Some((v, a, b)) = inconsistency_witness(c) {
        return Err(ListError::Inconsistent(v, a, b));
    }
    let n = g.n();
    let k = c.k() as usize;
    let mut uf = cover_classes(c, n);
    let mut numbers: BTreeMap<usize, Label> = BTreeMap::new();
    let mut labels = vec![Vec::with_capacity(k); n];
    for v in 1..=n {
        for col in 0..k {
            let root = uf.find((v - 1) * k + col);
            let next = numbers.len() as Label + 1;
            let l = *numbers.entry(root).or_insert(next);
            labels[v - 1].push(l);
        }
    }
    let map = ColorMap {
        k,
        labels: labels.clone(),
    };
    Ok((ListAssignment::new(k, labels)?, map))
}
