//! Structural configurations of targets: the basic checklist, edge
//! fullness, tetrads and the tetrad reduction.
//!
//! None of the reports here are assertions about arbitrary inputs. They list
//! the structure a smallest counterexample could not have, so on ordinary
//! colourable instances failures are expected and merely informative.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::coloring::{conflict, is_valid, Coloring};
use crate::correspondence::{AssignmentError, Color, CorrespondenceAssignment};
use crate::plane::{BoundarySet, Edge, FaceId, GraphError, PlaneGraph, Vertex};
use crate::solver::{TargetInstance, TargetViolation, Validation};
use crate::transforms::{apply_relabeling, straighten, transport_coloring, Relabeling, TransformError};

/// Longest cycle the basic checks look at.
pub const SHORT_CYCLE: usize = 12;

/// Items (a) to (f) of the basic checklist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasicProperty {
    /// (a) some vertex lies outside `S`.
    NotAllBoundary,
    /// (b) the graph is 2-connected.
    TwoConnected,
    /// (c) no short non-facial-outer cycle has a vertex inside.
    EmptyShortCycles,
    /// (d) no short cycle has two chords in one triangle.
    NoChordPairInTriangle,
    /// (e) every vertex of degree at most 2 is in `S`.
    LowDegreeInBoundary,
    /// (f) the outer face is an induced cycle whose vertex set is `S`.
    InducedOuterCycle,
}

impl BasicProperty {
    pub const ALL: [BasicProperty; 6] = [
        BasicProperty::NotAllBoundary,
        BasicProperty::TwoConnected,
        BasicProperty::EmptyShortCycles,
        BasicProperty::NoChordPairInTriangle,
        BasicProperty::LowDegreeInBoundary,
        BasicProperty::InducedOuterCycle,
    ];

    pub fn letter(self) -> char {
        match self {
            BasicProperty::NotAllBoundary => 'a',
            BasicProperty::TwoConnected => 'b',
            BasicProperty::EmptyShortCycles => 'c',
            BasicProperty::NoChordPairInTriangle => 'd',
            BasicProperty::LowDegreeInBoundary => 'e',
            BasicProperty::InducedOuterCycle => 'f',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicWitness {
    AllBoundary,
    Disconnected,
    CutVertex(Vertex),
    TooSmall(usize),
    CycleWithInterior {
        cycle: Vec<Vertex>,
        interior: Vec<Vertex>,
    },
    ChordPair {
        cycle: Vec<Vertex>,
        chords: [Edge; 2],
        triangle: [Vertex; 3],
    },
    LowDegree {
        vertex: Vertex,
        degree: usize,
    },
    OuterNotCycle(Vec<Vertex>),
    OuterChord(Edge),
    BoundaryMismatch,
}

impl fmt::Display for BasicWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicWitness::AllBoundary => write!(f, "every vertex is in S"),
            BasicWitness::Disconnected => write!(f, "graph is disconnected"),
            BasicWitness::CutVertex(v) => write!(f, "cut vertex {v}"),
            BasicWitness::TooSmall(n) => write!(f, "only {n} vertices"),
            BasicWitness::CycleWithInterior { cycle, interior } => {
                write!(f, "cycle {} contains {}", seq(cycle), seq(interior))
            }
            BasicWitness::ChordPair {
                cycle,
                chords,
                triangle,
            } => write!(
                f,
                "chords {} and {} of cycle {} lie in triangle {}",
                chords[0],
                chords[1],
                seq(cycle),
                seq(triangle)
            ),
            BasicWitness::LowDegree { vertex, degree } => write!(f, "vertex {vertex} of degree {degree} is not in S"),
            BasicWitness::OuterNotCycle(w) => write!(f, "outer walk {} is not a cycle", seq(w)),
            BasicWitness::OuterChord(e) => write!(f, "outer cycle has chord {e}"),
            BasicWitness::BoundaryMismatch => write!(f, "S differs from the outer face vertices"),
        }
    }
}

pub(crate) fn seq(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicCheck {
    pub property: BasicProperty,
    pub witness: Option<BasicWitness>,
}

impl BasicCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicReport {
    pub checks: Vec<BasicCheck>,
}

impl BasicReport {
    pub fn passed(&self, p: BasicProperty) -> bool {
        self.get(p).passed()
    }

    pub fn get(&self, p: BasicProperty) -> &BasicCheck {
        self.checks
            .iter()
            .find(|c| c.property == p)
            .expect("all properties checked")
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(BasicCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BasicCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Evaluates (a) to (f) independently.
pub fn check_basic(g: &PlaneGraph, s: &BoundarySet) -> BasicReport {
    let short = g.cycles_up_to(SHORT_CYCLE);
    let checks = BasicProperty::ALL
        .iter()
        .map(|&property| {
            let witness = match property {
                BasicProperty::NotAllBoundary => {
                    g.vertices().all(|v| s.contains(v)).then_some(BasicWitness::AllBoundary)
                }
                BasicProperty::TwoConnected => two_connected_witness(g),
                BasicProperty::EmptyShortCycles => short.iter().find_map(|k| {
                    if g.bounds_outer_face(k) {
                        return None;
                    }
                    let interior = g.interior_vertices(k);
                    (!interior.is_empty()).then(|| BasicWitness::CycleWithInterior {
                        cycle: k.clone(),
                        interior,
                    })
                }),
                BasicProperty::NoChordPairInTriangle => short.iter().find_map(|k| chord_pair(g, k)),
                BasicProperty::LowDegreeInBoundary => {
                    g.vertices()
                        .find(|&v| g.degree(v) <= 2 && !s.contains(v))
                        .map(|v| BasicWitness::LowDegree {
                            vertex: v,
                            degree: g.degree(v),
                        })
                }
                BasicProperty::InducedOuterCycle => outer_cycle_witness(g, s),
            };
            BasicCheck { property, witness }
        })
        .collect();
    BasicReport { checks }
}

fn two_connected_witness(g: &PlaneGraph) -> Option<BasicWitness> {
    if g.n() < 3 {
        return Some(BasicWitness::TooSmall(g.n()));
    }
    if !g.is_connected() {
        return Some(BasicWitness::Disconnected);
    }
    g.cut_vertex().map(BasicWitness::CutVertex)
}

fn chord_pair(g: &PlaneGraph, cycle: &[Vertex]) -> Option<BasicWitness> {
    let chords = g.chords(cycle);
    for (i, &e1) in chords.iter().enumerate() {
        for &e2 in &chords[i + 1..] {
            let ends: BTreeSet<Vertex> = [e1.u(), e1.v(), e2.u(), e2.v()].into_iter().collect();
            if ends.len() != 3 {
                continue;
            }
            let t: Vec<Vertex> = ends.into_iter().collect();
            if g.has_edge(t[0], t[1]) && g.has_edge(t[1], t[2]) && g.has_edge(t[0], t[2]) {
                return Some(BasicWitness::ChordPair {
                    cycle: cycle.to_vec(),
                    chords: [e1, e2],
                    triangle: [t[0], t[1], t[2]],
                });
            }
        }
    }
    None
}

fn outer_cycle_witness(g: &PlaneGraph, s: &BoundarySet) -> Option<BasicWitness> {
    let walk = g.outer_walk().unwrap_or(&[]);
    let distinct: BTreeSet<Vertex> = walk.iter().copied().collect();
    if walk.len() < 3 || distinct.len() != walk.len() {
        return Some(BasicWitness::OuterNotCycle(walk.to_vec()));
    }
    if let Some(&e) = g.chords(walk).first() {
        return Some(BasicWitness::OuterChord(e));
    }
    (s.as_set() != &distinct).then_some(BasicWitness::BoundaryMismatch)
}

/// One shortfall found by [`check_edge_fullness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FullnessIssue {
    /// A non-`S` edge with at most one correspondence.
    Sparse { edge: Edge, domain: usize },
    /// A non-`S` edge in no triangle that is not full.
    NotFull { edge: Edge, domain: usize },
    /// A triangle with two degree-3 vertices outside `S` and a non-full edge.
    Triangle { triangle: [Vertex; 3], edge: Edge },
}

impl fmt::Display for FullnessIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FullnessIssue::Sparse { edge, domain } => write!(f, "edge {edge} has domain of size {domain}"),
            FullnessIssue::NotFull { edge, domain } => {
                write!(f, "edge {edge} is in no triangle and has domain of size {domain}")
            }
            FullnessIssue::Triangle { triangle, edge } => {
                write!(f, "triangle {} has non-full edge {edge}", seq(triangle))
            }
        }
    }
}

pub fn check_edge_fullness(g: &PlaneGraph, s: &BoundarySet, c: &CorrespondenceAssignment) -> Vec<FullnessIssue> {
    let k = c.k() as usize;
    let mut out = Vec::new();
    for e in g.edges() {
        if s.contains(e.u()) && s.contains(e.v()) {
            continue;
        }
        let domain = c.domain_len(e.u(), e.v());
        if domain <= 1 {
            out.push(FullnessIssue::Sparse { edge: e, domain });
        }
        if domain < k && !g.edge_in_triangle(e.u(), e.v()) {
            out.push(FullnessIssue::NotFull { edge: e, domain });
        }
    }
    for t in g.triangles() {
        let light = t.iter().filter(|&&v| g.degree(v) == 3 && !s.contains(v)).count();
        if light < 2 {
            continue;
        }
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            if c.domain_len(a, b) < k {
                out.push(FullnessIssue::Triangle {
                    triangle: t,
                    edge: Edge::new(a, b),
                });
            }
        }
    }
    out
}

/// A facial path `v1 v2 v3 v4` of degree-3 vertices whose end edges lie in
/// triangles `v1 v2 x1` and `v3 v4 x4`; `y1` and `y4` are the remaining
/// neighbours of the ends.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tetrad {
    pub path: [Vertex; 4],
    pub x1: Vertex,
    pub x4: Vertex,
    pub y1: Vertex,
    pub y4: Vertex,
    pub face: FaceId,
    pub disjoint_from_boundary: bool,
}

impl Tetrad {
    pub fn vertices(&self) -> [Vertex; 8] {
        let [v1, v2, v3, v4] = self.path;
        [v1, v2, v3, v4, self.x1, self.x4, self.y1, self.y4]
    }

    /// The nine edges incident with the path.
    pub fn incident_edges(&self) -> Vec<Edge> {
        let [v1, v2, v3, v4] = self.path;
        let mut out = vec![
            Edge::new(v1, v2),
            Edge::new(v2, v3),
            Edge::new(v3, v4),
            Edge::new(v1, self.x1),
            Edge::new(v2, self.x1),
            Edge::new(v1, self.y1),
            Edge::new(v3, self.x4),
            Edge::new(v4, self.x4),
            Edge::new(v4, self.y4),
        ];
        out.sort_unstable();
        out
    }

    /// Re-checks every defining property against `g`.
    pub fn verify(&self, g: &PlaneGraph, s: &BoundarySet) -> Result<(), String> {
        let [v1, v2, v3, v4] = self.path;
        let all = self.vertices();
        if all.iter().any(|&v| !g.contains_vertex(v)) {
            return Err("vertex out of range".into());
        }
        if all.iter().collect::<BTreeSet<_>>().len() != 8 {
            return Err(format!("vertices {} are not pairwise distinct", seq(&all)));
        }
        for v in self.path {
            if g.degree(v) != 3 {
                return Err(format!("vertex {v} has degree {}", g.degree(v)));
            }
        }
        let edges = [
            (v1, v2),
            (v2, v3),
            (v3, v4),
            (v1, self.x1),
            (v2, self.x1),
            (v1, self.y1),
            (v3, self.x4),
            (v4, self.x4),
            (v4, self.y4),
        ];
        if let Some((a, b)) = edges.iter().find(|(a, b)| !g.has_edge(*a, *b)) {
            return Err(format!("missing edge {a}-{b}"));
        }
        let face = g.face(self.face).ok_or("no such face")?;
        if !contains_path(face.boundary(), &self.path) {
            return Err(format!("path is not on face {}", self.face));
        }
        if self.disjoint_from_boundary != self.path.iter().all(|&v| !s.contains(v)) {
            return Err("boundary flag is wrong".into());
        }
        Ok(())
    }
}

impl fmt::Display for Tetrad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tetrad {} x1={} x4={} y1={} y4={} face={}{}",
            seq(&self.path),
            self.x1,
            self.x4,
            self.y1,
            self.y4,
            self.face,
            if self.disjoint_from_boundary { " reducible" } else { "" }
        )
    }
}

/// Whether `path` or its reverse occurs as consecutive vertices of the cyclic
/// walk.
fn contains_path(walk: &[Vertex], path: &[Vertex]) -> bool {
    let n = walk.len();
    if n < path.len() {
        return false;
    }
    let forward = |p: &mut dyn Iterator<Item = Vertex>| {
        let p: Vec<Vertex> = p.collect();
        (0..n).any(|s| p.iter().enumerate().all(|(i, &v)| walk[(s + i) % n] == v))
    };
    forward(&mut path.iter().copied()) || forward(&mut path.iter().rev().copied())
}

fn common_neighbors(g: &PlaneGraph, a: Vertex, b: Vertex) -> Vec<Vertex> {
    g.neighbors_sorted(a)
        .into_iter()
        .filter(|&x| g.has_edge(x, b))
        .collect()
}

/// All tetrads, each listed once with `v1 < v4` and on the lowest face id
/// carrying it.
pub fn find_tetrads(g: &PlaneGraph, s: &BoundarySet) -> Vec<Tetrad> {
    let mut found: Vec<Tetrad> = Vec::new();
    for (id, face) in g.faces().iter().enumerate() {
        let w = face.boundary();
        let n = w.len();
        if n < 4 {
            continue;
        }
        for start in 0..n {
            let mut path = [0; 4];
            for (i, slot) in path.iter_mut().enumerate() {
                *slot = w[(start + i) % n];
            }
            if path[0] > path[3] {
                path.reverse();
            }
            if path.iter().any(|&v| g.degree(v) != 3) || path.iter().collect::<BTreeSet<_>>().len() != 4 {
                continue;
            }
            let [v1, v2, v3, v4] = path;
            for x1 in common_neighbors(g, v1, v2) {
                for x4 in common_neighbors(g, v3, v4) {
                    let others = |v: Vertex, skip: [Vertex; 2]| -> Vec<Vertex> {
                        g.rotation(v).iter().copied().filter(|u| !skip.contains(u)).collect()
                    };
                    let y1s = others(v1, [v2, x1]);
                    let y4s = others(v4, [v3, x4]);
                    let (&[y1], &[y4]) = (y1s.as_slice(), y4s.as_slice()) else {
                        continue;
                    };
                    let all = [v1, v2, v3, v4, x1, x4, y1, y4];
                    if all.iter().collect::<BTreeSet<_>>().len() != 8 {
                        continue;
                    }
                    let t = Tetrad {
                        path,
                        x1,
                        x4,
                        y1,
                        y4,
                        face: id,
                        disjoint_from_boundary: path.iter().all(|&v| !s.contains(v)),
                    };
                    if !found.iter().any(|o| same_tetrad(o, &t)) {
                        found.push(t);
                    }
                }
            }
        }
    }
    found.sort_by_key(|t| (t.path, t.x1, t.x4));
    found
}

fn same_tetrad(a: &Tetrad, b: &Tetrad) -> bool {
    (a.path, a.x1, a.x4, a.y1, a.y4) == (b.path, b.x1, b.x4, b.y1, b.y4)
}

/// Longest path between the identified pair that the reduction forbids.
pub const MERGE_DISTANCE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("{0} is not a tetrad of this graph: {1}")]
    NotATetrad(Box<Tetrad>, String),
    #[error("tetrad vertex {0} is in S")]
    TouchesBoundary(Vertex),
    #[error("no identification is possible: {0}")]
    NoOption(String),
    #[error("edge {0} incident with the tetrad is not full")]
    NotFull(Edge),
    #[error("straightening failed: {0}")]
    Straighten(#[from] TransformError),
    #[error("identified graph is not a valid plane graph: {0}")]
    Graph(#[from] GraphError),
    #[error("reduced instance leaves the class: {0}")]
    ClassLost(TargetViolation),
    #[error("instance is invalid: {0}")]
    Invalid(TargetViolation),
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
}

/// Why one identification option was refused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OptionRefusal {
    AbsorbedInBoundary(Vertex),
    BoundaryEdge(Edge),
    ShortPath(usize),
}

impl fmt::Display for OptionRefusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptionRefusal::AbsorbedInBoundary(v) => write!(f, "vertex {v} to be absorbed is in S"),
            OptionRefusal::BoundaryEdge(e) => write!(f, "identification would create edge {e} inside S"),
            OptionRefusal::ShortPath(d) => write!(f, "pair joined by a path of length {d}"),
        }
    }
}

/// A reduced instance with everything needed to lift colourings back.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub original: TargetInstance,
    pub reduced: TargetInstance,
    pub tetrad: Tetrad,
    /// Survivor of the identification, as an original id.
    pub keep: Vertex,
    /// Vertex merged into `keep`, as an original id.
    pub absorbed: Vertex,
    /// Straightens the edges at the tetrad; maps original colours to the
    /// colours used by the reduced instance.
    pub relabeling: Relabeling,
    /// Original id to reduced id; the tetrad is unmapped and `absorbed` maps
    /// to the image of `keep`.
    pub vertex_map: Vec<Option<Vertex>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("colouring has {found} vertices, reduced graph has {expected}")]
    Size { expected: usize, found: usize },
    #[error("colouring of the reduced instance is not valid or misses the precolouring")]
    InvalidInput,
    #[error("no colour is available for vertex {0}")]
    Stuck(Vertex),
    #[error("lifted colouring conflicts on edge {0}")]
    Conflict(Edge),
}

/// Identification candidates `(keep, absorbed)` in trial order.
fn options(t: &Tetrad) -> [(Vertex, Vertex); 2] {
    let a = (t.y1, t.x4);
    let b = (t.y4, t.x1);
    if a.0.min(a.1) <= b.0.min(b.1) {
        [a, b]
    } else {
        [b, a]
    }
}

fn refusal(g: &PlaneGraph, s: &BoundarySet, t: &Tetrad, keep: Vertex, absorbed: Vertex) -> Option<OptionRefusal> {
    if s.contains(absorbed) {
        return Some(OptionRefusal::AbsorbedInBoundary(absorbed));
    }
    if s.contains(keep) {
        if let Some(&z) = g
            .rotation(absorbed)
            .iter()
            .find(|&&z| s.contains(z) && !t.path.contains(&z))
        {
            return Some(OptionRefusal::BoundaryEdge(Edge::new(keep, z)));
        }
    }
    let excluded: BTreeSet<Vertex> = t.path.iter().copied().collect();
    match g.distance_avoiding(keep, absorbed, &excluded) {
        Some(d) if d <= MERGE_DISTANCE => Some(OptionRefusal::ShortPath(d)),
        _ => None,
    }
}

/// Removes the tetrad and identifies one of the pairs `y1, x4` or `y4, x1`,
/// after straightening the edges at the tetrad.
pub fn reduce_tetrad(inst: &TargetInstance, t: &Tetrad) -> Result<Reduction, ReductionError> {
    inst.validate(Validation::Library).map_err(ReductionError::Invalid)?;
    let g = &inst.graph;
    let s = &inst.boundary;
    t.verify(g, s)
        .map_err(|m| ReductionError::NotATetrad(Box::new(t.clone()), m))?;
    if let Some(&v) = t.path.iter().find(|&&v| s.contains(v)) {
        return Err(ReductionError::TouchesBoundary(v));
    }
    let mut reasons = Vec::new();
    let mut chosen = None;
    for (keep, absorbed) in options(t) {
        match refusal(g, s, t, keep, absorbed) {
            None => {
                chosen = Some((keep, absorbed));
                break;
            }
            Some(r) => reasons.push(format!("{keep}/{absorbed}: {r}")),
        }
    }
    let (keep, absorbed) = chosen.ok_or_else(|| ReductionError::NoOption(reasons.join("; ")))?;
    let h = t.incident_edges();
    if let Some(&e) = h
        .iter()
        .find(|e| inst.assignment.domain_len(e.u(), e.v()) < inst.k() as usize)
    {
        return Err(ReductionError::NotFull(e));
    }
    let (_, relabeling) = straighten(&inst.assignment, g, &h)?;
    let straight = apply_relabeling(&inst.assignment, &relabeling)?;
    let f0 = transport_coloring(&inst.precoloring, &relabeling);

    let removed: BTreeSet<Vertex> = t.path.iter().copied().collect();
    let mut map = vec![None; g.n() + 1];
    let mut next = 1;
    for v in g.vertices() {
        if !removed.contains(&v) && v != absorbed {
            map[v] = Some(next);
            next += 1;
        }
    }
    map[absorbed] = map[keep];
    let rename = |u: Vertex| map[u].expect("kept vertex");
    let mut rotations = Vec::with_capacity(next - 1);
    for v in g.vertices() {
        if map[v].is_none() || v == absorbed {
            continue;
        }
        let rot = if v == keep {
            let mut r = after_removed(g.rotation(keep), &removed);
            r.extend(after_removed(g.rotation(absorbed), &removed));
            r
        } else {
            g.rotation(v).iter().copied().filter(|u| !removed.contains(u)).collect()
        };
        rotations.push(rot.into_iter().map(rename).collect());
    }
    let mut reduced_graph = PlaneGraph::new(rotations)?;
    reduced_graph.carry_outer(g, &map);

    let mut c = CorrespondenceAssignment::new(inst.k())?;
    for (e, m) in straight.iter() {
        if removed.contains(&e.u()) || removed.contains(&e.v()) {
            continue;
        }
        c.set(rename(e.u()), rename(e.v()), m.clone())?;
    }
    let mut f = Coloring::empty(reduced_graph.n());
    for (v, col) in f0.iter() {
        f.set(rename(v), col);
    }
    let reduced = TargetInstance::new(reduced_graph, BoundarySet::new(s.iter().map(rename)), c, f);
    let mode = if inst.validate(Validation::Target).is_ok() {
        Validation::Target
    } else {
        Validation::Library
    };
    reduced.validate(mode).map_err(ReductionError::ClassLost)?;
    Ok(Reduction {
        original: inst.clone(),
        reduced,
        tetrad: t.clone(),
        keep,
        absorbed,
        relabeling,
        vertex_map: map,
    })
}

/// The rotation with removed neighbours dropped, starting just after a
/// removed one.
fn after_removed(rot: &[Vertex], removed: &BTreeSet<Vertex>) -> Vec<Vertex> {
    let n = rot.len();
    let start = (0..n)
        .find(|&i| removed.contains(&rot[i]) && !removed.contains(&rot[(i + 1) % n]))
        .map_or(0, |i| i + 1);
    (0..n)
        .map(|i| rot[(start + i) % n])
        .filter(|u| !removed.contains(u))
        .collect()
}

impl Reduction {
    /// Lifts a colouring of the reduced instance to the original one:
    /// `v4`, then `v3` take the smallest admissible colour, then `v1` and
    /// `v2` are chosen together. The result is checked against the original
    /// assignment and precolouring.
    pub fn extend(&self, f: &Coloring) -> Result<Coloring, ExtensionError> {
        let red = &self.reduced;
        if f.n() != red.n() {
            return Err(ExtensionError::Size {
                expected: red.n(),
                found: f.n(),
            });
        }
        if !f.is_total() || !is_valid(&red.assignment, f) || !f.extends(&red.precoloring) {
            return Err(ExtensionError::InvalidInput);
        }
        let g = &self.original.graph;
        let straight =
            apply_relabeling(&self.original.assignment, &self.relabeling).map_err(|_| ExtensionError::InvalidInput)?;
        let mut lifted = Coloring::empty(g.n());
        for v in g.vertices() {
            if let Some(w) = self.vertex_map[v] {
                lifted.set(v, f.get(w).expect("total"));
            }
        }
        let k = straight.k();
        let [v1, v2, v3, v4] = self.tetrad.path;
        for v in [v4, v3] {
            let c = (1..=k)
                .find(|&a| fits(g, &straight, &lifted, v, a))
                .ok_or(ExtensionError::Stuck(v))?;
            lifted.set(v, c);
        }
        let pair = (1..=k)
            .flat_map(|a| (1..=k).map(move |b| (a, b)))
            .find(|&(a, b)| {
                if !fits(g, &straight, &lifted, v1, a) {
                    return false;
                }
                lifted.set(v1, a);
                let ok = fits(g, &straight, &lifted, v2, b);
                lifted.unset(v1);
                ok
            })
            .ok_or(ExtensionError::Stuck(v1))?;
        lifted.set(v1, pair.0);
        lifted.set(v2, pair.1);
        let back = transport_coloring(&lifted, &self.relabeling.inverse());
        if let Some(e) = conflict(&self.original.assignment, &back) {
            return Err(ExtensionError::Conflict(e));
        }
        if !back.extends(&self.original.precoloring) || !is_valid(&self.original.assignment, &back) {
            return Err(ExtensionError::InvalidInput);
        }
        Ok(back)
    }
}

/// Whether colour `a` at `v` clashes with no coloured neighbour.
fn fits(g: &PlaneGraph, c: &CorrespondenceAssignment, f: &Coloring, v: Vertex, a: Color) -> bool {
    g.rotation(v)
        .iter()
        .all(|&u| f.get(u).is_none_or(|b| c.apply(v, u, a) != Some(b)))
}
