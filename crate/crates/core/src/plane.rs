//! Simple plane graphs described by a rotation system.
//!
//! Vertices are dense ids `1..=n`. Each vertex stores its neighbours in
//! clockwise order; faces are traced from the rotations and are never part of
//! the input. The dart `u -> v` is followed on its face by `v -> w`, where `w`
//! is the neighbour that follows `u` in the rotation of `v`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;
pub type FaceId = usize;

/// Undirected edge stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(&self) -> Vertex {
        self.u
    }

    pub fn v(&self) -> Vertex {
        self.v
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A face given by its closed boundary walk. Consecutive entries (cyclically)
/// are the darts of the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    boundary: Vec<Vertex>,
}

impl Face {
    pub fn boundary(&self) -> &[Vertex] {
        &self.boundary
    }

    /// Length of the boundary walk; bridges count twice.
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn darts(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.boundary.len();
        (0..n).map(move |i| (self.boundary[i], self.boundary[(i + 1) % n]))
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.boundary.iter().copied().collect()
    }

    /// True when the boundary walk visits every vertex once.
    pub fn is_cycle(&self) -> bool {
        self.vertex_set().len() == self.boundary.len() && self.boundary.len() >= 3
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("vertex {0} lists neighbour {1} more than once")]
    ParallelEdge(Vertex, Vertex),
    #[error("rotation asymmetry: {1} is listed around {0} but not vice versa")]
    Asymmetric(Vertex, Vertex),
    #[error("rotation system is not planar: component containing {vertex} has V-E+F = {euler}")]
    NotPlanar { vertex: Vertex, euler: i64 },
    #[error("no edge between {0} and {1}")]
    NoSuchEdge(Vertex, Vertex),
    #[error("no face with id {0}")]
    NoSuchFace(FaceId),
    #[error("walk does not bound a face: {0:?}")]
    NotAFace(Vec<Vertex>),
    #[error("invalid cycle length range [{0}, {1}]")]
    InvalidRange(usize, usize),
    #[error("{0}")]
    InvalidEdit(String),
}

#[derive(Clone, Debug)]
pub struct PlaneGraph {
    rotations: Vec<Vec<Vertex>>,
    /// `dart_faces[v - 1][i]` is the face of the dart `v -> rotations[v - 1][i]`.
    dart_faces: Vec<Vec<FaceId>>,
    faces: Vec<Face>,
    outer: Option<FaceId>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rotations == other.rotations && self.outer_walk() == other.outer_walk()
    }
}

impl Eq for PlaneGraph {}

impl PlaneGraph {
    /// Builds a plane graph from clockwise rotations, `rotations[v - 1]` being
    /// the neighbours of `v`. The outer face defaults to the longest face,
    /// ties going to the smallest face id.
    pub fn new(rotations: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let n = rotations.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for (i, rot) in rotations.iter().enumerate() {
            let v = i + 1;
            let mut seen = BTreeSet::new();
            for &u in rot {
                if u == 0 || u > n {
                    return Err(GraphError::VertexOutOfRange(u));
                }
                if u == v {
                    return Err(GraphError::Loop(v));
                }
                if !seen.insert(u) {
                    return Err(GraphError::ParallelEdge(v, u));
                }
            }
        }
        for (i, rot) in rotations.iter().enumerate() {
            let v = i + 1;
            for &u in rot {
                if !rotations[u - 1].contains(&v) {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        let mut g = PlaneGraph {
            rotations,
            dart_faces: Vec::new(),
            faces: Vec::new(),
            outer: None,
        };
        g.trace();
        g.check_euler()?;
        g.outer = g.default_outer();
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Self::new(vec![Vec::new(); n])
    }

    /// The cycle `1 2 ... n 1`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidEdit(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let rotations = (1..=n)
            .map(|v| {
                let prev = if v == 1 { n } else { v - 1 };
                let next = if v == n { 1 } else { v + 1 };
                vec![next, prev]
            })
            .collect();
        Self::new(rotations)
    }

    /// The path `1 2 ... n`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let rotations = (1..=n)
            .map(|v| {
                let mut r = Vec::new();
                if v > 1 {
                    r.push(v - 1);
                }
                if v < n {
                    r.push(v + 1);
                }
                r
            })
            .collect();
        Self::new(rotations)
    }

    fn trace(&mut self) {
        const UNSET: FaceId = usize::MAX;
        self.dart_faces = self.rotations.iter().map(|r| vec![UNSET; r.len()]).collect();
        self.faces.clear();
        for v in 1..=self.rotations.len() {
            for i in 0..self.rotations[v - 1].len() {
                if self.dart_faces[v - 1][i] != UNSET {
                    continue;
                }
                let id = self.faces.len();
                let mut boundary = Vec::new();
                let (mut a, mut ai) = (v, i);
                loop {
                    self.dart_faces[a - 1][ai] = id;
                    boundary.push(a);
                    let b = self.rotations[a - 1][ai];
                    let pos = self.position(b, a).expect("symmetric rotation");
                    let next = (pos + 1) % self.rotations[b - 1].len();
                    a = b;
                    ai = next;
                    if self.dart_faces[a - 1][ai] != UNSET {
                        break;
                    }
                }
                self.faces.push(Face { boundary });
            }
        }
    }

    fn check_euler(&self) -> Result<(), GraphError> {
        let comp = self.component_ids();
        let count = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut verts = vec![0i64; count];
        let mut darts = vec![0i64; count];
        let mut faces = vec![0i64; count];
        let mut rep = vec![0; count];
        for v in self.vertices() {
            let c = comp[v - 1];
            if verts[c] == 0 {
                rep[c] = v;
            }
            verts[c] += 1;
            darts[c] += self.degree(v) as i64;
        }
        for f in &self.faces {
            faces[comp[f.boundary[0] - 1]] += 1;
        }
        for c in 0..count {
            // An isolated vertex sits in a single face with an empty boundary.
            let f = if darts[c] == 0 { 1 } else { faces[c] };
            let euler = verts[c] - darts[c] / 2 + f;
            if euler != 2 {
                return Err(GraphError::NotPlanar { vertex: rep[c], euler });
            }
        }
        Ok(())
    }

    fn default_outer(&self) -> Option<FaceId> {
        let mut best: Option<FaceId> = None;
        for (id, f) in self.faces.iter().enumerate() {
            if best.is_none_or(|b| f.len() > self.faces[b].len()) {
                best = Some(id);
            }
        }
        best
    }

    fn position(&self, v: Vertex, u: Vertex) -> Option<usize> {
        self.rotations[v - 1].iter().position(|&x| x == u)
    }

    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.rotations.len()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n()
    }

    /// Clockwise rotation at `v`.
    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotations[v - 1]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotations
    }

    pub fn neighbors_sorted(&self, v: Vertex) -> Vec<Vertex> {
        let mut ns = self.rotations[v - 1].clone();
        ns.sort_unstable();
        ns
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotations[v - 1].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains_vertex(u) && self.contains_vertex(v) && self.rotations[u - 1].contains(&v)
    }

    /// All edges in increasing order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for &v in &self.rotations[u - 1] {
                if u < v {
                    out.push(Edge::new(u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Neighbour following `u` clockwise around `v`.
    pub fn succ(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let rot = &self.rotations[v - 1];
        self.position(v, u).map(|i| rot[(i + 1) % rot.len()])
    }

    /// Neighbour preceding `u` clockwise around `v`.
    pub fn pred(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let rot = &self.rotations[v - 1];
        self.position(v, u).map(|i| rot[(i + rot.len() - 1) % rot.len()])
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> Option<&Face> {
        self.faces.get(id)
    }

    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> Option<FaceId> {
        if !self.contains_vertex(u) {
            return None;
        }
        self.position(u, v).map(|i| self.dart_faces[u - 1][i])
    }

    /// Face at the corner of `v` between `a` and its clockwise successor.
    pub fn corner_face(&self, v: Vertex, a: Vertex) -> Option<FaceId> {
        self.face_of_dart(a, v)
    }

    /// Distinct faces around `v`, in rotation order.
    pub fn faces_at(&self, v: Vertex) -> Vec<FaceId> {
        let mut out = Vec::new();
        for &a in &self.rotations[v - 1] {
            if let Some(f) = self.corner_face(v, a) {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out
    }

    pub fn outer_face(&self) -> Option<FaceId> {
        self.outer
    }

    pub fn outer_walk(&self) -> Option<&[Vertex]> {
        self.outer.map(|id| self.faces[id].boundary())
    }

    pub fn outer_vertices(&self) -> BTreeSet<Vertex> {
        self.outer.map(|id| self.faces[id].vertex_set()).unwrap_or_default()
    }

    pub fn set_outer_face(&mut self, id: FaceId) -> Result<(), GraphError> {
        if id >= self.faces.len() {
            return Err(GraphError::NoSuchFace(id));
        }
        self.outer = Some(id);
        Ok(())
    }

    /// Re-roots the drawing so that `id` becomes the outer face.
    pub fn with_outer_face(&self, id: FaceId) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.set_outer_face(id)?;
        Ok(g)
    }

    /// Finds the face whose boundary walk equals `walk` up to rotation, or
    /// failing that up to rotation and reversal.
    pub fn find_face(&self, walk: &[Vertex]) -> Option<FaceId> {
        let reversed: Vec<Vertex> = walk.iter().rev().copied().collect();
        let find = |w: &[Vertex]| self.faces.iter().position(|f| cyclic_eq(f.boundary(), w));
        find(walk).or_else(|| find(&reversed))
    }

    pub fn set_outer_walk(&mut self, walk: &[Vertex]) -> Result<(), GraphError> {
        let id = self
            .find_face(walk)
            .ok_or_else(|| GraphError::NotAFace(walk.to_vec()))?;
        self.outer = Some(id);
        Ok(())
    }

    /// Triangles as sorted vertex triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<[Vertex; 3]> {
        let mut out = Vec::new();
        for e in self.edges() {
            let (u, v) = (e.u(), e.v());
            for w in self.neighbors_sorted(v) {
                if w > v && self.has_edge(u, w) {
                    out.push([u, v, w]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn edge_in_triangle(&self, u: Vertex, v: Vertex) -> bool {
        self.rotations[u - 1].iter().any(|&w| w != v && self.has_edge(v, w))
    }

    /// Component index per vertex (`out[v - 1]`), numbered by smallest vertex.
    pub fn component_ids(&self) -> Vec<usize> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 1..=n {
            if comp[s - 1] != usize::MAX {
                continue;
            }
            comp[s - 1] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.rotations[x - 1] {
                    if comp[y - 1] == usize::MAX {
                        comp[y - 1] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().iter().all(|&c| c == 0)
    }

    /// Inserts a path with `internal` new vertices through the face `face`,
    /// joining the corners at boundary positions `a_pos` and `b_pos`.
    /// Returns the new graph and the new vertex ids in path order.
    pub fn insert_path(
        &self,
        face: FaceId,
        a_pos: usize,
        b_pos: usize,
        internal: usize,
    ) -> Result<(PlaneGraph, Vec<Vertex>), GraphError> {
        let f = self.faces.get(face).ok_or(GraphError::NoSuchFace(face))?;
        let len = f.len();
        if a_pos >= len || b_pos >= len || a_pos == b_pos {
            return Err(GraphError::InvalidEdit(format!(
                "bad corner positions {a_pos}, {b_pos} on face of length {len}"
            )));
        }
        let a = f.boundary[a_pos];
        let b = f.boundary[b_pos];
        let a_prev = f.boundary[(a_pos + len - 1) % len];
        let b_prev = f.boundary[(b_pos + len - 1) % len];
        let mut rotations = self.rotations.clone();
        let first = self.n() + 1;
        let new: Vec<Vertex> = (first..first + internal).collect();
        let a_nb = new.first().copied().unwrap_or(b);
        let b_nb = new.last().copied().unwrap_or(a);
        for (i, &x) in new.iter().enumerate() {
            let prev = if i == 0 { a } else { new[i - 1] };
            let next = if i + 1 == new.len() { b } else { new[i + 1] };
            rotations.push(vec![prev, next]);
            debug_assert_eq!(rotations.len(), x);
        }
        insert_after(&mut rotations[a - 1], a_prev, a_nb);
        insert_after(&mut rotations[b - 1], b_prev, b_nb);
        let mut g = PlaneGraph::new(rotations)?;
        g.keep_outer_from(self);
        Ok((g, new))
    }

    /// Attaches a new pendant vertex at the corner `pos` of `face`.
    pub fn insert_pendant(&self, face: FaceId, pos: usize) -> Result<(PlaneGraph, Vertex), GraphError> {
        let f = self.faces.get(face).ok_or(GraphError::NoSuchFace(face))?;
        let len = f.len();
        if pos >= len {
            return Err(GraphError::InvalidEdit(format!("bad corner position {pos}")));
        }
        let a = f.boundary[pos];
        let a_prev = f.boundary[(pos + len - 1) % len];
        let mut rotations = self.rotations.clone();
        let x = self.n() + 1;
        rotations.push(vec![a]);
        insert_after(&mut rotations[a - 1], a_prev, x);
        let mut g = PlaneGraph::new(rotations)?;
        g.keep_outer_from(self);
        Ok((g, x))
    }

    /// After an edit, carry the outer face over through the first dart of the
    /// old outer face that still exists. When the edited face was the outer
    /// one, the part holding its first dart stays outer.
    fn keep_outer_from(&mut self, old: &PlaneGraph) {
        let Some(outer) = old.outer else { return };
        for (u, v) in old.faces[outer].darts() {
            if let Some(f) = self.face_of_dart(u, v) {
                self.outer = Some(f);
                return;
            }
        }
    }

    /// Deletes `removed` and renumbers the remaining vertices densely in
    /// increasing order. Returns the new graph and the old-to-new map.
    pub fn remove_vertices(&self, removed: &BTreeSet<Vertex>) -> Result<(PlaneGraph, Vec<Option<Vertex>>), GraphError> {
        let mut map = vec![None; self.n() + 1];
        let mut next = 1;
        for v in self.vertices() {
            if !removed.contains(&v) {
                map[v] = Some(next);
                next += 1;
            }
        }
        let rotations: Vec<Vec<Vertex>> = self
            .vertices()
            .filter(|v| !removed.contains(v))
            .map(|v| self.rotations[v - 1].iter().filter_map(|&u| map[u]).collect())
            .collect();
        let mut g = PlaneGraph::new(rotations)?;
        g.carry_outer(self, &map);
        Ok((g, map))
    }

    /// Carries the outer face through a vertex map, using the first surviving
    /// dart of the old outer walk.
    pub(crate) fn carry_outer(&mut self, old: &PlaneGraph, map: &[Option<Vertex>]) {
        let Some(walk) = old.outer_walk() else { return };
        let n = walk.len();
        for i in 0..n {
            let (u, v) = (walk[i], walk[(i + 1) % n]);
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                if let Some(f) = self.face_of_dart(a, b) {
                    self.outer = Some(f);
                    return;
                }
            }
        }
    }
}

fn insert_after(rot: &mut Vec<Vertex>, anchor: Vertex, x: Vertex) {
    match rot.iter().position(|&y| y == anchor) {
        Some(i) => rot.insert(i + 1, x),
        None => rot.push(x),
    }
}

fn cyclic_eq(a: &[Vertex], b: &[Vertex]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

/// A boundary set `S` of precoloured vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundarySet {
    vertices: BTreeSet<Vertex>,
}

impl BoundarySet {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        BoundarySet {
            vertices: vertices.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// All vertices of the outer face of `g`.
    pub fn outer(g: &PlaneGraph) -> Self {
        BoundarySet {
            vertices: g.outer_vertices(),
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn as_set(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    /// Either `|S| <= 1` or `S` is the vertex set of some face of `g`; the
    /// face found is returned (the outer face is preferred).
    pub fn shape(&self, g: &PlaneGraph) -> BoundaryShape {
        if self.vertices.len() <= 1 {
            return BoundaryShape::Small;
        }
        if let Some(outer) = g.outer_face() {
            if g.faces()[outer].vertex_set() == self.vertices {
                return BoundaryShape::Face(outer);
            }
        }
        match g.faces().iter().position(|f| f.vertex_set() == self.vertices) {
            Some(id) => BoundaryShape::Face(id),
            None => BoundaryShape::Other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryShape {
    Small,
    Face(FaceId),
    Other,
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn triangle() -> PlaneGraph {
        PlaneGraph::new(vec![vec![2, 3], vec![3, 1], vec![1, 2]]).unwrap()
    }

    pub(crate) fn k4() -> PlaneGraph {
        // 4 in the middle of triangle 1 2 3.
        PlaneGraph::new(vec![vec![2, 4, 3], vec![3, 4, 1], vec![1, 4, 2], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn triangle_has_two_faces_of_length_three() {
        let g = triangle();
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn nine_cycle_has_two_faces_of_length_nine() {
        let g = PlaneGraph::cycle(9).unwrap();
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.len() == 9));
    }

    #[test]
    fn k4_has_four_triangular_faces() {
        let g = k4();
        assert_eq!(g.faces().len(), 4);
        assert!(g.faces().iter().all(|f| f.len() == 3));
        assert_eq!(g.n() as i64 - g.edge_count() as i64 + g.faces().len() as i64, 2);
    }

    #[test]
    fn rejects_bad_rotations() {
        assert_eq!(PlaneGraph::new(vec![vec![1]]).unwrap_err(), GraphError::Loop(1));
        assert_eq!(
            PlaneGraph::new(vec![vec![2, 2], vec![1, 1]]).unwrap_err(),
            GraphError::ParallelEdge(1, 2)
        );
        assert_eq!(
            PlaneGraph::new(vec![vec![2], vec![]]).unwrap_err(),
            GraphError::Asymmetric(1, 2)
        );
        assert!(matches!(
            PlaneGraph::new(vec![vec![5]]),
            Err(GraphError::VertexOutOfRange(5))
        ));
        assert_eq!(PlaneGraph::new(vec![]).unwrap_err(), GraphError::Empty);
    }

    #[test]
    fn rejects_toroidal_rotation() {
        // K4 with one rotation flipped is not a planar embedding.
        let r = PlaneGraph::new(vec![vec![2, 3, 4], vec![3, 4, 1], vec![1, 4, 2], vec![1, 2, 3]]);
        assert!(matches!(r, Err(GraphError::NotPlanar { .. })));
    }

    #[test]
    fn edgeless_graph_is_accepted() {
        let g = PlaneGraph::edgeless(4).unwrap();
        assert!(g.faces().is_empty());
        assert_eq!(g.outer_face(), None);
        assert!(!g.is_connected());
    }

    #[test]
    fn outer_face_by_walk() {
        let mut g = PlaneGraph::cycle(5).unwrap();
        g.set_outer_walk(&[3, 4, 5, 1, 2]).unwrap();
        assert_eq!(g.outer_vertices().len(), 5);
        assert!(g.set_outer_walk(&[1, 3, 2]).is_err());
    }

    #[test]
    fn inserted_chord_splits_face() {
        let g = PlaneGraph::cycle(6).unwrap();
        let (h, new) = g.insert_path(0, 0, 3, 0).unwrap();
        assert!(new.is_empty());
        assert_eq!(h.edge_count(), 7);
        let mut lens: Vec<usize> = h.faces().iter().map(Face::len).collect();
        lens.sort();
        assert_eq!(lens, vec![4, 4, 6]);
    }

    #[test]
    fn inserted_path_and_pendant_stay_planar() {
        let g = PlaneGraph::cycle(9).unwrap();
        let (h, new) = g.insert_path(1, 2, 7, 3).unwrap();
        assert_eq!(new, vec![10, 11, 12]);
        assert_eq!(h.faces().len(), 3);
        let (p, x) = h.insert_pendant(0, 0).unwrap();
        assert_eq!(p.degree(x), 1);
        assert_eq!(p.faces().len(), 3);
    }

    #[test]
    fn remove_vertices_renumbers() {
        let g = k4();
        let (h, map) = g.remove_vertices(&BTreeSet::from([4])).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(map[4], None);
        assert_eq!(h.faces().len(), 2);
    }

    #[test]
    fn triangles_of_k4() {
        assert_eq!(k4().triangles().len(), 4);
        assert!(PlaneGraph::cycle(9).unwrap().triangles().is_empty());
    }
}
