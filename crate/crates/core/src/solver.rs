//! Extending a precolouring to a full correspondence colouring.
//!
//! [`solve`] runs a backtracking search with forward checking: every vertex
//! keeps a candidate mask, assigning a colour strikes the corresponding
//! colour from each uncoloured neighbour, and the next vertex is the one with
//! the fewest candidates (smallest id on ties). Colours are tried in
//! increasing order, so the result is deterministic. [`brute_force`] is the
//! exhaustive reference used to cross-check it.

use thiserror::Error;

use crate::coloring::{conflict, is_valid, Coloring};
use crate::correspondence::{inconsistent_triangle_walk, AssignmentError, Color, CorrespondenceAssignment, Walk};
use crate::plane::{BoundarySet, BoundaryShape, Edge, PlaneGraph, Vertex};

/// Most boundary vertices a target may have.
pub const MAX_BOUNDARY: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TargetViolation {
    #[error("graph has a cycle of length {} in 4..=8: {0:?}", .0.len())]
    ShortCycle(Vec<Vertex>),
    #[error("assignment is inconsistent on the closed walk {0}")]
    InconsistentTriangle(Walk),
    #[error("target colourings use 3 colours, assignment has {0}")]
    WrongK(u8),
    #[error("boundary has {0} vertices, at most {MAX_BOUNDARY} allowed")]
    BoundaryTooLarge(usize),
    #[error("boundary is neither a single vertex nor the vertex set of a face")]
    BoundaryShape,
    #[error("precolouring must colour exactly the boundary; vertex {0} disagrees")]
    PrecolorDomain(Vertex),
    #[error("precolouring is not valid: edge {0} is in conflict")]
    PrecolorConflict(Edge),
    #[error("precolouring uses a colour outside 1..=k at vertex {0}")]
    PrecolorRange(Vertex),
    #[error("precolouring covers {found} vertices, graph has {expected}")]
    PrecolorSize { expected: usize, found: usize },
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance too large for enumeration: {vertices} vertices, {k} colours (limits {max_vertices}, {max_k})")]
    TooLarge {
        vertices: usize,
        k: u8,
        max_vertices: usize,
        max_k: u8,
    },
    #[error(transparent)]
    Invalid(#[from] TargetViolation),
}

/// How strictly an instance is checked before solving.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Validation {
    /// Any graph, any `k`; only the precolouring and edge set are checked.
    #[default]
    Library,
    /// Every hypothesis of the extension theorem is enforced.
    Target,
}

/// `(G, S, C, f0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetInstance {
    pub graph: PlaneGraph,
    pub boundary: BoundarySet,
    pub assignment: CorrespondenceAssignment,
    pub precoloring: Coloring,
}

impl TargetInstance {
    pub fn new(
        graph: PlaneGraph,
        boundary: BoundarySet,
        assignment: CorrespondenceAssignment,
        precoloring: Coloring,
    ) -> Self {
        TargetInstance {
            graph,
            boundary,
            assignment,
            precoloring,
        }
    }

    /// No boundary and no precolouring.
    pub fn free(graph: PlaneGraph, assignment: CorrespondenceAssignment) -> Self {
        let n = graph.n();
        TargetInstance {
            graph,
            boundary: BoundarySet::empty(),
            assignment,
            precoloring: Coloring::empty(n),
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> u8 {
        self.assignment.k()
    }

    /// Checks the instance; `Target` adds the theorem hypotheses.
    pub fn validate(&self, mode: Validation) -> Result<(), TargetViolation> {
        self.assignment.check_edges(&self.graph)?;
        if self.precoloring.n() != self.n() {
            return Err(TargetViolation::PrecolorSize {
                expected: self.n(),
                found: self.precoloring.n(),
            });
        }
        for v in self.graph.vertices() {
            if self.boundary.contains(v) != self.precoloring.get(v).is_some() {
                return Err(TargetViolation::PrecolorDomain(v));
            }
            if let Some(c) = self.precoloring.get(v) {
                if c == 0 || c > self.k() {
                    return Err(TargetViolation::PrecolorRange(v));
                }
            }
        }
        if let Some(e) = conflict(&self.assignment, &self.precoloring) {
            return Err(TargetViolation::PrecolorConflict(e));
        }
        if mode == Validation::Library {
            return Ok(());
        }
        if self.k() != 3 {
            return Err(TargetViolation::WrongK(self.k()));
        }
        if self.boundary.len() > MAX_BOUNDARY {
            return Err(TargetViolation::BoundaryTooLarge(self.boundary.len()));
        }
        if self.boundary.shape(&self.graph) == BoundaryShape::Other {
            return Err(TargetViolation::BoundaryShape);
        }
        if let Some(cycle) = self.graph.shortest_cycle_in_range(4, 8).expect("valid range") {
            return Err(TargetViolation::ShortCycle(cycle));
        }
        if let Some(w) = inconsistent_triangle_walk(&self.assignment, &self.graph) {
            return Err(TargetViolation::InconsistentTriangle(w));
        }
        Ok(())
    }
}

/// `(|V(G)|, e(B), -sum |dom C_uv|)`, compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct InstanceMeasure {
    pub vertices: usize,
    /// Edges not inside the boundary.
    pub free_edges: usize,
    pub neg_domain: i64,
}

pub fn measure(inst: &TargetInstance) -> InstanceMeasure {
    let edges = inst.graph.edges();
    let inside = edges
        .iter()
        .filter(|e| inst.boundary.contains(e.u()) && inst.boundary.contains(e.v()))
        .count();
    InstanceMeasure {
        vertices: inst.n(),
        free_edges: edges.len() - inside,
        neg_domain: -(inst.assignment.total_domain() as i64),
    }
}

/// Per-vertex forbidding tables: for neighbour slot `j` of `v`,
/// `forbid[v][j][a - 1]` is the colour of that neighbour clashing with `a`.
struct Network {
    k: u8,
    nbrs: Vec<Vec<Vertex>>,
    forbid: Vec<Vec<Vec<Color>>>,
}

impl Network {
    fn new(g: &PlaneGraph, c: &CorrespondenceAssignment) -> Self {
        let k = c.k();
        let mut nbrs = vec![Vec::new(); g.n() + 1];
        let mut forbid = vec![Vec::new(); g.n() + 1];
        for v in g.vertices() {
            for u in g.neighbors_sorted(v) {
                nbrs[v].push(u);
                forbid[v].push((1..=k).map(|a| c.apply(v, u, a).unwrap_or(0)).collect());
            }
        }
        Network { k, nbrs, forbid }
    }

    fn full_mask(&self) -> u32 {
        if self.k == 32 {
            u32::MAX
        } else {
            (1u32 << self.k) - 1
        }
    }
}

struct Search<'a> {
    net: &'a Network,
    active: &'a [bool],
    cand: Vec<u32>,
    color: Vec<Color>,
    trail: Vec<(Vertex, u32)>,
}

impl Search<'_> {
    fn pick(&self) -> Option<Vertex> {
        let mut best: Option<(u32, Vertex)> = None;
        for v in 1..self.color.len() {
            if !self.active[v] || self.color[v] != 0 {
                continue;
            }
            let cnt = self.cand[v].count_ones();
            if best.is_none_or(|(b, _)| cnt < b) {
                best = Some((cnt, v));
            }
        }
        best.map(|(_, v)| v)
    }

    /// Colours `v` with `a` and prunes its uncoloured neighbours; false when
    /// some neighbour runs out of candidates.
    fn assign(&mut self, v: Vertex, a: Color) -> bool {
        self.color[v] = a;
        let mut ok = true;
        for (j, &u) in self.net.nbrs[v].iter().enumerate() {
            if !self.active[u] || self.color[u] != 0 {
                continue;
            }
            let x = self.net.forbid[v][j][a as usize - 1];
            if x != 0 && self.cand[u] & (1 << (x - 1)) != 0 {
                self.trail.push((u, self.cand[u]));
                self.cand[u] &= !(1 << (x - 1));
                if self.cand[u] == 0 {
                    ok = false;
                }
            }
        }
        ok
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (u, m) = self.trail.pop().unwrap();
            self.cand[u] = m;
        }
    }

    fn run(&mut self) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        let mask = self.cand[v];
        for a in 1..=self.net.k {
            if mask & (1 << (a - 1)) == 0 {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(v, a) && self.run() {
                return true;
            }
            self.undo(mark);
            self.color[v] = 0;
        }
        false
    }
}

/// Searches the subgraph induced by `active`, keeping `fixed` colours.
fn search(net: &Network, fixed: &Coloring, active: &[bool]) -> Option<Coloring> {
    let n = active.len() - 1;
    let mut s = Search {
        net,
        active,
        cand: vec![net.full_mask(); n + 1],
        color: vec![0; n + 1],
        trail: Vec::new(),
    };
    for v in 1..=n {
        if let Some(c) = fixed.get(v) {
            s.cand[v] = 1 << (c - 1);
        }
    }
    for v in (1..=n).filter(|&v| active[v]) {
        if let Some(c) = fixed.get(v) {
            if s.cand[v] & (1 << (c - 1)) == 0 || !s.assign(v, c) {
                return None;
            }
        }
    }
    if !s.run() {
        return None;
    }
    let colors = (1..=n)
        .map(|v| if active[v] { Some(s.color[v]) } else { None })
        .collect();
    Some(Coloring::from_options(colors))
}

/// A total colouring extending the precolouring, if one exists.
pub fn solve(inst: &TargetInstance, mode: Validation) -> Result<Option<Coloring>, TargetViolation> {
    inst.validate(mode)?;
    let net = Network::new(&inst.graph, &inst.assignment);
    let active = active_all(inst.n());
    Ok(search(&net, &inst.precoloring, &active))
}

/// A colouring of `G[vertices]` alone, keeping the colours of `fixed`.
pub fn color_subset(
    g: &PlaneGraph,
    c: &CorrespondenceAssignment,
    fixed: &Coloring,
    vertices: &[Vertex],
) -> Option<Coloring> {
    let net = Network::new(g, c);
    let mut active = vec![false; g.n() + 1];
    for &v in vertices {
        active[v] = true;
    }
    search(&net, fixed, &active)
}

fn active_all(n: usize) -> Vec<bool> {
    let mut a = vec![true; n + 1];
    a[0] = false;
    a
}

/// Greedy vertex deletion on an unsatisfiable instance: vertices are dropped
/// in id order whenever the rest stays unsatisfiable. Returns the surviving
/// vertices, or `None` when the instance is satisfiable.
pub fn minimal_unsat_core(inst: &TargetInstance) -> Result<Option<Vec<Vertex>>, TargetViolation> {
    inst.validate(Validation::Library)?;
    let net = Network::new(&inst.graph, &inst.assignment);
    let mut active = active_all(inst.n());
    if search(&net, &inst.precoloring, &active).is_some() {
        return Ok(None);
    }
    for v in inst.graph.vertices() {
        active[v] = false;
        if search(&net, &inst.precoloring, &active).is_some() {
            active[v] = true;
        }
    }
    Ok(Some(inst.graph.vertices().filter(|&v| active[v]).collect()))
}

/// Limits for [`brute_force`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceLimits {
    pub max_vertices: usize,
    pub max_k: u8,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits {
            max_vertices: 12,
            max_k: 4,
        }
    }
}

/// Every total colouring extending the precolouring, by enumerating all
/// `k^|V \ S|` candidates and keeping the valid ones.
pub fn brute_force(inst: &TargetInstance, limits: BruteForceLimits) -> Result<Vec<Coloring>, SolveError> {
    if inst.n() > limits.max_vertices || inst.k() > limits.max_k {
        return Err(SolveError::TooLarge {
            vertices: inst.n(),
            k: inst.k(),
            max_vertices: limits.max_vertices,
            max_k: limits.max_k,
        });
    }
    inst.validate(Validation::Library)?;
    let free: Vec<Vertex> = inst
        .graph
        .vertices()
        .filter(|&v| inst.precoloring.get(v).is_none())
        .collect();
    let mut f = inst.precoloring.clone();
    for &v in &free {
        f.set(v, 1);
    }
    let mut out = Vec::new();
    loop {
        if is_valid(&inst.assignment, &f) {
            out.push(f.clone());
        }
        let mut i = 0;
        loop {
            if i == free.len() {
                return Ok(out);
            }
            let v = free[i];
            let c = f.get(v).unwrap();
            if c < inst.k() {
                f.set(v, c + 1);
                break;
            }
            f.set(v, 1);
            i += 1;
        }
    }
}
