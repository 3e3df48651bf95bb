//! Colour renaming between equivalent assignments, straightening of edge
//! subsets and saturation of non-triangle edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::coloring::Coloring;
use crate::correspondence::{AssignmentError, Color, CorrespondenceAssignment, PartialInjection};
use crate::plane::{BoundarySet, Edge, GraphError, PlaneGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("permutation at vertex {vertex} is not a bijection on 1..={k}")]
    NotAPermutation { vertex: Vertex, k: u8 },
    #[error("relabeling covers {found} vertices, assignment needs {needed}")]
    Arity { needed: usize, found: usize },
    #[error("edge {edge} lies on cycle {cycle:?} but is not full")]
    NotFull { edge: Edge, cycle: Vec<Vertex> },
    #[error("assignment is not consistent on cycle {cycle:?}")]
    Inconsistent { cycle: Vec<Vertex> },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
}

impl TransformError {
    /// The offending cycle for straightening failures.
    pub fn cycle(&self) -> Option<&[Vertex]> {
        match self {
            TransformError::NotFull { cycle, .. } | TransformError::Inconsistent { cycle } => Some(cycle),
            _ => None,
        }
    }
}

/// One permutation of `1..=k` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    k: u8,
    // perms[v - 1][c - 1] = pi_v(c)
    perms: Vec<Vec<Color>>,
}

impl Relabeling {
    pub fn identity(n: usize, k: u8) -> Self {
        Relabeling {
            k,
            perms: vec![(1..=k).collect(); n],
        }
    }

    pub fn from_perms(k: u8, perms: Vec<Vec<Color>>) -> Result<Self, TransformError> {
        for (i, p) in perms.iter().enumerate() {
            if !is_permutation(p, k) {
                return Err(TransformError::NotAPermutation { vertex: i + 1, k });
            }
        }
        Ok(Relabeling { k, perms })
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, v: Vertex) -> &[Color] {
        &self.perms[v - 1]
    }

    pub fn set(&mut self, v: Vertex, perm: Vec<Color>) -> Result<(), TransformError> {
        if !is_permutation(&perm, self.k) {
            return Err(TransformError::NotAPermutation { vertex: v, k: self.k });
        }
        self.perms[v - 1] = perm;
        Ok(())
    }

    /// `pi_v(c)`.
    pub fn apply(&self, v: Vertex, c: Color) -> Color {
        self.perms[v - 1][c as usize - 1]
    }

    pub fn inverse(&self) -> Self {
        let perms = self
            .perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                for (i, &b) in p.iter().enumerate() {
                    inv[b as usize - 1] = i as Color + 1;
                }
                inv
            })
            .collect();
        Relabeling { k: self.k, perms }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Relabeling) -> Relabeling {
        let perms = self
            .perms
            .iter()
            .zip(&next.perms)
            .map(|(p, q)| p.iter().map(|&c| q[c as usize - 1]).collect())
            .collect();
        Relabeling { k: self.k, perms }
    }

    pub fn is_fixed(&self, v: Vertex) -> bool {
        self.perms[v - 1].iter().enumerate().all(|(i, &c)| c as usize == i + 1)
    }

    pub fn fixed_vertices(&self) -> Vec<Vertex> {
        (1..=self.perms.len()).filter(|&v| self.is_fixed(v)).collect()
    }

    pub fn moved_vertices(&self) -> Vec<Vertex> {
        (1..=self.perms.len()).filter(|&v| !self.is_fixed(v)).collect()
    }
}

fn is_permutation(p: &[Color], k: u8) -> bool {
    if p.len() != k as usize {
        return false;
    }
    let mut seen = vec![false; k as usize + 1];
    p.iter().all(|&c| {
        let ok = c >= 1 && c <= k && !seen[c as usize];
        if ok {
            seen[c as usize] = true;
        }
        ok
    })
}

/// The assignment `C'` with `C_uv = pi_u . C'_uv . pi_v^-1`, i.e. every pair
/// `a -> b` of `C_uv` becomes `pi_u(a) -> pi_v(b)`.
pub fn apply_relabeling(
    c: &CorrespondenceAssignment,
    r: &Relabeling,
) -> Result<CorrespondenceAssignment, TransformError> {
    if r.k() != c.k() {
        return Err(AssignmentError::KMismatch {
            expected: c.k(),
            found: r.k(),
        }
        .into());
    }
    if c.max_vertex() > r.n() {
        return Err(TransformError::Arity {
            needed: c.max_vertex(),
            found: r.n(),
        });
    }
    let mut out = CorrespondenceAssignment::new(c.k())?;
    for (e, m) in c.iter() {
        let mut p = PartialInjection::empty(c.k());
        for (a, b) in m.pairs() {
            p.insert(r.apply(e.u(), a), r.apply(e.v(), b))?;
        }
        out.set(e.u(), e.v(), p)?;
    }
    Ok(out)
}

/// `f'(v) = pi_v(f(v))`, a colouring for the relabeled assignment.
pub fn transport_coloring(f: &Coloring, r: &Relabeling) -> Coloring {
    let colors = (1..=f.n()).map(|v| f.get(v).map(|c| r.apply(v, c))).collect();
    Coloring::from_options(colors)
}

/// Renames colours so every edge of `h` becomes straight while vertices
/// outside `h` stay fixed. Every cycle of `h` must consist of full edges on
/// which `c` is consistent; otherwise the offending cycle is reported.
///
/// Blocks of `h` are processed so that each meets the earlier ones in at most
/// one vertex `r` (the smallest vertex for a fresh block). Inside a block,
/// vertices are visited breadth-first from `r` in id order and each one is
/// renamed so the tree edge to its parent becomes straight.
pub fn straighten(
    c: &CorrespondenceAssignment,
    g: &PlaneGraph,
    h: &[Edge],
) -> Result<(CorrespondenceAssignment, Relabeling), TransformError> {
    let blocks = g.blocks(h)?;
    // Cycle edges must be full before anything else is attempted.
    for b in &blocks {
        if b.edges.len() < 2 {
            continue;
        }
        for e in &b.edges {
            if !c.is_full(e.u(), e.v())? {
                let cycle = cycle_through(&b.edges, *e);
                return Err(TransformError::NotFull { edge: *e, cycle });
            }
        }
    }

    let n = g.n().max(c.max_vertex());
    let k = c.k();
    let mut total = Relabeling::identity(n, k);
    let mut current = c.clone();
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    for b in &blocks {
        let root = b
            .vertices
            .iter()
            .copied()
            .find(|v| seen.contains(v))
            .unwrap_or(b.vertices[0]);
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for e in &b.edges {
            adj.entry(e.u()).or_default().insert(e.v());
            adj.entry(e.v()).or_default().insert(e.u());
        }
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        let mut visited = BTreeSet::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[&x] {
                if visited.insert(y) {
                    parent.insert(y, x);
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        for &v in &order[1..] {
            let p = parent[&v];
            let m = current.map(p, v)?;
            let step_perm = straightening_perm(&m, k);
            let mut step = Relabeling::identity(n, k);
            step.set(v, step_perm)?;
            current = apply_relabeling(&current, &step)?;
            total = total.then(&step);
        }
        // Non-tree edges close a cycle with the tree; they come out straight
        // exactly when `c` is consistent on that cycle.
        for e in &b.edges {
            if parent.get(&e.v()) == Some(&e.u()) || parent.get(&e.u()) == Some(&e.v()) {
                continue;
            }
            if !current.is_straight(e.u(), e.v())? {
                let cycle = tree_cycle(&parent, e.u(), e.v());
                return Err(TransformError::Inconsistent { cycle });
            }
        }
        seen.extend(b.vertices.iter().copied());
    }
    Ok((current, total))
}

/// Permutation `pi` at the head of `m` with `pi(m(a)) = a` on the domain of
/// `m`; the remaining colours are matched in increasing order.
fn straightening_perm(m: &PartialInjection, k: u8) -> Vec<Color> {
    let mut perm = vec![0; k as usize];
    for (a, b) in m.pairs() {
        perm[b as usize - 1] = a;
    }
    let used: BTreeSet<Color> = perm.iter().copied().filter(|&c| c != 0).collect();
    let mut free = (1..=k).filter(|c| !used.contains(c));
    for slot in perm.iter_mut() {
        if *slot == 0 {
            *slot = free.next().expect("counts match");
        }
    }
    perm
}

fn tree_cycle(parent: &BTreeMap<Vertex, Vertex>, u: Vertex, v: Vertex) -> Vec<Vertex> {
    let ancestors = |mut x: Vertex| {
        let mut out = vec![x];
        while let Some(&p) = parent.get(&x) {
            out.push(p);
            x = p;
        }
        out
    };
    let au = ancestors(u);
    let av = ancestors(v);
    let lca = *au.iter().find(|x| av.contains(x)).expect("same tree");
    let mut cycle: Vec<Vertex> = au.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let back: Vec<Vertex> = av.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

/// A cycle through `e` inside a 2-connected block: `e` plus a shortest path
/// between its ends avoiding `e`.
fn cycle_through(edges: &[Edge], e: Edge) -> Vec<Vertex> {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for f in edges {
        if *f == e {
            continue;
        }
        adj.entry(f.u()).or_default().push(f.v());
        adj.entry(f.v()).or_default().push(f.u());
    }
    let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut queue = VecDeque::from([e.u()]);
    let mut seen = BTreeSet::from([e.u()]);
    while let Some(x) = queue.pop_front() {
        if x == e.v() {
            break;
        }
        for &y in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![e.v()];
    let mut x = e.v();
    while let Some(&p) = prev.get(&x) {
        path.push(p);
        x = p;
    }
    path.reverse();
    path
}

/// Adds correspondences to every edge that is in no triangle and does not
/// join two vertices of `s`, until the edge is full. Spare colours are paired
/// smallest first. Colourings of the result are colourings of `c`.
pub fn saturate(
    c: &CorrespondenceAssignment,
    g: &PlaneGraph,
    s: &BoundarySet,
) -> Result<CorrespondenceAssignment, TransformError> {
    let mut out = c.clone();
    for e in g.edges() {
        if s.contains(e.u()) && s.contains(e.v()) {
            continue;
        }
        if g.edge_in_triangle(e.u(), e.v()) {
            continue;
        }
        let m = out.canonical(e).cloned().ok_or(AssignmentError::MissingEdge(e))?;
        let mut m = m;
        let dom: BTreeSet<Color> = m.domain().into_iter().collect();
        let rng: BTreeSet<Color> = m.range().into_iter().collect();
        let spare_src = (1..=c.k()).filter(|x| !dom.contains(x));
        let spare_dst: Vec<Color> = (1..=c.k()).filter(|x| !rng.contains(x)).collect();
        for (a, b) in spare_src.zip(spare_dst) {
            m.insert(a, b)?;
        }
        out.set(e.u(), e.v(), m)?;
    }
    Ok(out)
}
