//! Correspondence assignments: one partial injection of colours per edge.
//!
//! Colours are `1..=k`. An assignment stores the map of each edge `{u, v}`
//! in the direction `u -> v` with `u < v`; the map for `v -> u` is always the
//! inverse and is computed on demand, never stored.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::plane::{Edge, PlaneGraph, Vertex};
use crate::union_find::UnionFind;

pub type Color = u8;

/// Largest number of colours supported (candidate sets are `u32` masks).
pub const MAX_COLORS: u8 = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssignmentError {
    #[error("number of colours must be in 1..={MAX_COLORS}, got {0}")]
    BadK(u8),
    #[error("colour count mismatch: expected {expected}, found {found}")]
    KMismatch { expected: u8, found: u8 },
    #[error("colour {color} outside 1..={k}")]
    ColorOutOfRange { color: Color, k: u8 },
    #[error("colour {0} mapped twice")]
    NotFunctional(Color),
    #[error("colour {0} hit twice")]
    NotInjective(Color),
    #[error("no correspondence on edge {0}-{1}")]
    UnknownEdge(Vertex, Vertex),
    #[error("walk steps between non-adjacent vertices {0} and {1}")]
    NotAdjacent(Vertex, Vertex),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("walk is not closed")]
    OpenWalk,
    #[error("walk is empty")]
    EmptyWalk,
    #[error("assignment has edge {0} which the graph lacks")]
    ExtraEdge(Edge),
    #[error("graph edge {0} has no correspondence")]
    MissingEdge(Edge),
}

/// Injective, not necessarily total, map on the colours `1..=k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    k: u8,
    // image[c - 1] = C(c), 0 when c is outside the domain.
    image: Vec<Color>,
}

impl fmt::Debug for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} {{", self.k)?;
        for (i, (a, b)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}>{b}")?;
        }
        write!(f, "}}")
    }
}

impl PartialInjection {
    pub fn empty(k: u8) -> Self {
        PartialInjection {
            k,
            image: vec![0; k as usize],
        }
    }

    pub fn identity(k: u8) -> Self {
        PartialInjection {
            k,
            image: (1..=k).collect(),
        }
    }

    pub fn from_pairs(k: u8, pairs: &[(Color, Color)]) -> Result<Self, AssignmentError> {
        if k == 0 || k > MAX_COLORS {
            return Err(AssignmentError::BadK(k));
        }
        let mut p = PartialInjection::empty(k);
        for &(a, b) in pairs {
            p.insert(a, b)?;
        }
        Ok(p)
    }

    /// A total map given as the images of `1..=k`.
    pub fn from_permutation(perm: &[Color]) -> Result<Self, AssignmentError> {
        let k = perm.len() as u8;
        let pairs: Vec<(Color, Color)> = perm.iter().enumerate().map(|(i, &b)| (i as Color + 1, b)).collect();
        Self::from_pairs(k, &pairs)
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    fn check_color(&self, c: Color) -> Result<(), AssignmentError> {
        if c == 0 || c > self.k {
            Err(AssignmentError::ColorOutOfRange { color: c, k: self.k })
        } else {
            Ok(())
        }
    }

    /// Adds `a -> b`, keeping the map functional and injective.
    pub fn insert(&mut self, a: Color, b: Color) -> Result<(), AssignmentError> {
        self.check_color(a)?;
        self.check_color(b)?;
        if self.image[a as usize - 1] != 0 {
            return Err(AssignmentError::NotFunctional(a));
        }
        if self.image.contains(&b) {
            return Err(AssignmentError::NotInjective(b));
        }
        self.image[a as usize - 1] = b;
        Ok(())
    }

    pub fn get(&self, c: Color) -> Option<Color> {
        match self.image.get((c as usize).wrapping_sub(1)) {
            Some(&b) if b != 0 => Some(b),
            _ => None,
        }
    }

    /// Preimage of `b`, i.e. the inverse map applied to `b`.
    pub fn preimage(&self, b: Color) -> Option<Color> {
        if b == 0 {
            return None;
        }
        self.image.iter().position(|&x| x == b).map(|i| i as Color + 1)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Color, Color)> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(i, &b)| (i as Color + 1, b))
    }

    pub fn domain(&self) -> Vec<Color> {
        self.pairs().map(|(a, _)| a).collect()
    }

    pub fn range(&self) -> Vec<Color> {
        let mut r: Vec<Color> = self.pairs().map(|(_, b)| b).collect();
        r.sort_unstable();
        r
    }

    pub fn domain_len(&self) -> usize {
        self.image.iter().filter(|&&b| b != 0).count()
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.k as usize];
        for (a, b) in self.pairs() {
            image[b as usize - 1] = a;
        }
        PartialInjection { k: self.k, image }
    }

    /// `self` first, then `next`: defined on `c` when `next` is defined on
    /// `self(c)`.
    pub fn then(&self, next: &PartialInjection) -> Result<Self, AssignmentError> {
        if self.k != next.k {
            return Err(AssignmentError::KMismatch {
                expected: self.k,
                found: next.k,
            });
        }
        let image = self
            .image
            .iter()
            .map(|&b| if b == 0 { 0 } else { next.image[b as usize - 1] })
            .collect();
        Ok(PartialInjection { k: self.k, image })
    }

    /// Identity on its domain.
    pub fn is_straight(&self) -> bool {
        self.pairs().all(|(a, b)| a == b)
    }

    pub fn is_full(&self) -> bool {
        self.image.iter().all(|&b| b != 0)
    }

    /// Fixes every colour of its domain.
    pub fn fixes_domain(&self) -> bool {
        self.is_straight()
    }
}

/// Composition in walk order: `a` first, then `b`.
pub fn compose(a: &PartialInjection, b: &PartialInjection) -> Result<PartialInjection, AssignmentError> {
    a.then(b)
}

/// Sequence of vertices, consecutive ones adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk(Vec<Vertex>);

impl Walk {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Walk(vertices)
    }

    /// The closed walk around `cycle`, returning to its first vertex.
    pub fn closed(cycle: &[Vertex]) -> Self {
        let mut v = cycle.to_vec();
        if let Some(&first) = cycle.first() {
            v.push(first);
        }
        Walk(v)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn is_closed(&self) -> bool {
        !self.0.is_empty() && self.0.first() == self.0.last()
    }

    pub fn reversed(&self) -> Self {
        Walk(self.0.iter().rev().copied().collect())
    }

    /// Joins `self` and `other` where `other` starts at the end of `self`.
    pub fn concat(&self, other: &Walk) -> Option<Walk> {
        if self.0.last() != other.0.first() {
            return None;
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0[1..]);
        Some(Walk(v))
    }

    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A `k`-correspondence assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceAssignment {
    k: u8,
    maps: BTreeMap<Edge, PartialInjection>,
}

impl CorrespondenceAssignment {
    pub fn new(k: u8) -> Result<Self, AssignmentError> {
        if k == 0 || k > MAX_COLORS {
            return Err(AssignmentError::BadK(k));
        }
        Ok(CorrespondenceAssignment {
            k,
            maps: BTreeMap::new(),
        })
    }

    /// Every edge of `g` gets the empty map.
    pub fn empty(g: &PlaneGraph, k: u8) -> Result<Self, AssignmentError> {
        let mut c = Self::new(k)?;
        for e in g.edges() {
            c.maps.insert(e, PartialInjection::empty(k));
        }
        Ok(c)
    }

    /// Every edge of `g` gets the identity: ordinary `k`-colouring.
    pub fn straight_full(g: &PlaneGraph, k: u8) -> Result<Self, AssignmentError> {
        let mut c = Self::new(k)?;
        for e in g.edges() {
            c.maps.insert(e, PartialInjection::identity(k));
        }
        Ok(c)
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// Sets `C_uv`; the map is stored inverted when `u > v`.
    pub fn set(&mut self, u: Vertex, v: Vertex, map: PartialInjection) -> Result<(), AssignmentError> {
        if u == v {
            return Err(AssignmentError::Loop(u));
        }
        if map.k() != self.k {
            return Err(AssignmentError::KMismatch {
                expected: self.k,
                found: map.k(),
            });
        }
        let stored = if u < v { map } else { map.inverse() };
        self.maps.insert(Edge::new(u, v), stored);
        Ok(())
    }

    /// Adds `C_uv(a) = b`.
    pub fn insert_pair(&mut self, u: Vertex, v: Vertex, a: Color, b: Color) -> Result<(), AssignmentError> {
        let e = Edge::new(u, v);
        let entry = self.maps.get_mut(&e).ok_or(AssignmentError::UnknownEdge(u, v))?;
        if u < v {
            entry.insert(a, b)
        } else {
            entry.insert(b, a)
        }
    }

    pub fn remove(&mut self, u: Vertex, v: Vertex) -> Option<PartialInjection> {
        self.maps.remove(&Edge::new(u, v))
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.maps.contains_key(&Edge::new(u, v))
    }

    /// Stored map of `e` in the direction `e.u() -> e.v()`.
    pub fn canonical(&self, e: Edge) -> Option<&PartialInjection> {
        self.maps.get(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &PartialInjection)> + '_ {
        self.maps.iter().map(|(&e, m)| (e, m))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.maps.keys().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.maps.len()
    }

    /// `C_uv` in the requested direction.
    pub fn map(&self, u: Vertex, v: Vertex) -> Result<PartialInjection, AssignmentError> {
        let m = self
            .maps
            .get(&Edge::new(u, v))
            .ok_or(AssignmentError::UnknownEdge(u, v))?;
        Ok(if u < v { m.clone() } else { m.inverse() })
    }

    /// `C_uv(c)`, `None` outside the domain or for unknown edges.
    pub fn apply(&self, u: Vertex, v: Vertex, c: Color) -> Option<Color> {
        let m = self.maps.get(&Edge::new(u, v))?;
        if u < v {
            m.get(c)
        } else {
            m.preimage(c)
        }
    }

    pub fn is_straight(&self, u: Vertex, v: Vertex) -> Result<bool, AssignmentError> {
        self.maps
            .get(&Edge::new(u, v))
            .map(PartialInjection::is_straight)
            .ok_or(AssignmentError::UnknownEdge(u, v))
    }

    pub fn is_full(&self, u: Vertex, v: Vertex) -> Result<bool, AssignmentError> {
        self.maps
            .get(&Edge::new(u, v))
            .map(PartialInjection::is_full)
            .ok_or(AssignmentError::UnknownEdge(u, v))
    }

    pub fn domain_len(&self, u: Vertex, v: Vertex) -> usize {
        self.maps.get(&Edge::new(u, v)).map_or(0, PartialInjection::domain_len)
    }

    /// Sum of domain sizes over all edges.
    pub fn total_domain(&self) -> usize {
        self.maps.values().map(PartialInjection::domain_len).sum()
    }

    /// Checks that the assignment lives on exactly the edges of `g`.
    pub fn check_edges(&self, g: &PlaneGraph) -> Result<(), AssignmentError> {
        for e in self.maps.keys() {
            if !g.has_edge(e.u(), e.v()) {
                return Err(AssignmentError::ExtraEdge(*e));
            }
        }
        for e in g.edges() {
            if !self.maps.contains_key(&e) {
                return Err(AssignmentError::MissingEdge(e));
            }
        }
        Ok(())
    }

    /// Largest vertex id touched by an edge.
    pub fn max_vertex(&self) -> Vertex {
        self.maps.keys().map(|e| e.v()).max().unwrap_or(0)
    }
}

/// `C_W`: the edge maps composed along the walk. A one-vertex walk gives the
/// identity.
pub fn walk_map(c: &CorrespondenceAssignment, w: &Walk) -> Result<PartialInjection, AssignmentError> {
    let vs = w.vertices();
    if vs.is_empty() {
        return Err(AssignmentError::EmptyWalk);
    }
    let mut acc = PartialInjection::identity(c.k());
    for pair in vs.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        if !c.contains_edge(u, v) {
            return Err(AssignmentError::NotAdjacent(u, v));
        }
        acc = acc.then(&c.map(u, v)?)?;
    }
    Ok(acc)
}

/// `C_W(c) = c` for every `c` in the domain of `C_W`. Depends on where the
/// walk starts.
pub fn is_consistent_on(c: &CorrespondenceAssignment, w: &Walk) -> Result<bool, AssignmentError> {
    if !w.is_closed() {
        return Err(AssignmentError::OpenWalk);
    }
    Ok(walk_map(c, w)?.fixes_domain())
}

/// The six closed walks around a triangle: three starts, two directions.
pub fn triangle_walks(t: [Vertex; 3]) -> [Walk; 6] {
    let [a, b, c] = t;
    [
        Walk::new(vec![a, b, c, a]),
        Walk::new(vec![b, c, a, b]),
        Walk::new(vec![c, a, b, c]),
        Walk::new(vec![a, c, b, a]),
        Walk::new(vec![c, b, a, c]),
        Walk::new(vec![b, a, c, b]),
    ]
}

/// First closed walk of length three on which `c` is inconsistent.
pub fn inconsistent_triangle_walk(c: &CorrespondenceAssignment, g: &PlaneGraph) -> Option<Walk> {
    for t in g.triangles() {
        for w in triangle_walks(t) {
            if !is_consistent_on(c, &w).unwrap_or(false) {
                return Some(w);
            }
        }
    }
    None
}

pub fn is_consistent_all_triangles(c: &CorrespondenceAssignment, g: &PlaneGraph) -> bool {
    inconsistent_triangle_walk(c, g).is_none()
}

/// Classes of the cover relation on vertex-colour pairs, linking `(u, a)`
/// with `(v, C_uv(a))`. Pair `(v, c)` has index `(v - 1) * k + (c - 1)`.
pub fn cover_classes(c: &CorrespondenceAssignment, n: usize) -> UnionFind {
    let k = c.k() as usize;
    let mut uf = UnionFind::new(n * k);
    for (e, m) in c.iter() {
        for (a, b) in m.pairs() {
            uf.union((e.u() - 1) * k + a as usize - 1, (e.v() - 1) * k + b as usize - 1);
        }
    }
    uf
}

/// Two distinct colours of one vertex linked in the cover relation, if any.
pub fn inconsistency_witness(c: &CorrespondenceAssignment) -> Option<(Vertex, Color, Color)> {
    let n = c.max_vertex();
    let k = c.k() as usize;
    let mut uf = cover_classes(c, n);
    for v in 1..=n {
        for a in 0..k {
            for b in a + 1..k {
                if uf.same((v - 1) * k + a, (v - 1) * k + b) {
                    return Some((v, a as Color + 1, b as Color + 1));
                }
            }
        }
    }
    None
}

/// Consistency on every closed walk, decided through the cover relation.
pub fn is_consistent_global(c: &CorrespondenceAssignment) -> bool {
    inconsistency_witness(c).is_none()
}
