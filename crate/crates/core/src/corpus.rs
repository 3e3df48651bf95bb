//! Test instances: hand-built gadgets and seeded generators for plane graphs
//! without cycles of lengths 4 to 8, with random assignments and
//! precolourings.
//!
//! Class members are grown by operations that cannot create a forbidden
//! cycle:
//!
//! * an ear of length `l` between two corners of a face at distance `d`,
//!   with `l + d >= 9`;
//! * a triangle on an edge `uv` whose ends are at distance at least 7 once
//!   `uv` is removed;
//! * a pendant path, optionally ending in a pendant triangle.
//!
//! Every graph is still re-checked before it is returned.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::{is_valid, Coloring};
use crate::correspondence::{is_consistent_on, triangle_walks, Color, CorrespondenceAssignment, PartialInjection};
use crate::format::parse_pg;
use crate::plane::{BoundarySet, BoundaryShape, Edge, FaceId, PlaneGraph, Vertex};
use crate::solver::{color_subset, TargetInstance, Validation, MAX_BOUNDARY};
use crate::transforms::saturate;

/// A hand-built graph shipped with the crate.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub name: &'static str,
    pub graph: PlaneGraph,
    pub boundary: Option<BoundarySet>,
}

const GADGET_SOURCES: [(&str, &str); 7] = [
    ("triangle", include_str!("../corpus/triangle.pg")),
    ("c9", include_str!("../corpus/c9.pg")),
    ("c13", include_str!("../corpus/c13.pg")),
    ("bowtie", include_str!("../corpus/bowtie.pg")),
    ("tetrad1", include_str!("../corpus/tetrad1.pg")),
    ("tetrad2", include_str!("../corpus/tetrad2.pg")),
    ("ring9", include_str!("../corpus/ring9.pg")),
];

pub fn gadgets() -> Vec<Gadget> {
    GADGET_SOURCES
        .iter()
        .map(|&(name, text)| {
            let f = parse_pg(text).unwrap_or_else(|e| panic!("gadget {name}: {e}"));
            Gadget {
                name,
                graph: f.graph,
                boundary: f.boundary,
            }
        })
        .collect()
}

pub fn gadget(name: &str) -> Option<Gadget> {
    gadgets().into_iter().find(|g| g.name == name)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("generated graph has a cycle of length 4 to 8: {0:?}")]
    OutOfClass(Vec<Vertex>),
    #[error("no valid precolouring found after {0} attempts")]
    NoPrecoloring(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// The shipped gadgets, cycled through by index.
    Curated,
    /// Triangles joined by pendant paths, with occasional long ears.
    TriangleChains,
    /// Long cycles joined by ears, with triangles on far-apart edges.
    CycleSums,
    /// Either growth mode, chosen per instance.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssignmentDistribution {
    /// Each edge map uniform over all partial injections.
    UniformPartial,
    /// Each edge map a uniform permutation.
    FullPermutation,
    /// Either of the above, per edge.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryChoice {
    /// The vertices of the outer face when there are at most 12 of them.
    Outer,
    /// One vertex of the outer face.
    Single,
    Empty,
    /// Any of the above, per instance.
    Any,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub kind: GeneratorKind,
    pub max_n: usize,
    pub seed: u64,
    pub assignments: AssignmentDistribution,
    pub boundary: BoundaryChoice,
    pub saturate: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            kind: GeneratorKind::Mixed,
            max_n: 24,
            seed: 0,
            assignments: AssignmentDistribution::Mixed,
            boundary: BoundaryChoice::Any,
            saturate: false,
        }
    }
}

/// The generator for instance `index` of a run seeded with `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Distance between the ends of `e` in `g - e`.
fn distance_without_edge(g: &PlaneGraph, e: Edge) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.n() + 1];
    dist[e.u()] = 0;
    let mut queue = VecDeque::from([e.u()]);
    while let Some(x) = queue.pop_front() {
        if x == e.v() {
            return Some(dist[x]);
        }
        for &y in g.rotation(x) {
            if Edge::new(x, y) == e || dist[y] != usize::MAX {
                continue;
            }
            dist[y] = dist[x] + 1;
            queue.push_back(y);
        }
    }
    None
}

fn random_face(g: &PlaneGraph, rng: &mut ChaCha8Rng) -> Option<FaceId> {
    let nonempty: Vec<FaceId> = (0..g.faces().len()).filter(|&i| !g.faces()[i].is_empty()).collect();
    nonempty.choose(rng).copied()
}

fn ear(g: &PlaneGraph, rng: &mut ChaCha8Rng) -> Option<PlaneGraph> {
    let id = random_face(g, rng)?;
    let w = g.faces()[id].boundary();
    let i = rng.gen_range(0..w.len());
    let j = rng.gen_range(0..w.len());
    if w[i] == w[j] {
        return None;
    }
    let d = g.distance_avoiding(w[i], w[j], &Default::default())?;
    let len = 9usize.saturating_sub(d).max(1) + rng.gen_range(0..=2);
    if len == 1 && g.has_edge(w[i], w[j]) {
        return None;
    }
    g.insert_path(id, i, j, len - 1).ok().map(|(h, _)| h)
}

/// Triangle with a new apex on edge `e`, drawn in the face of the dart
/// `u -> v`.
fn triangle_on(g: &PlaneGraph, u: Vertex, v: Vertex) -> Option<PlaneGraph> {
    let id = g.face_of_dart(u, v)?;
    let w = g.faces()[id].boundary();
    let n = w.len();
    let i = (0..n).find(|&i| w[i] == u && w[(i + 1) % n] == v)?;
    g.insert_path(id, i, (i + 1) % n, 1).ok().map(|(h, _)| h)
}

fn triangle_on_edge(g: &PlaneGraph, rng: &mut ChaCha8Rng) -> Option<PlaneGraph> {
    let e = *g.edges().choose(rng)?;
    if distance_without_edge(g, e).is_some_and(|d| d < 7) {
        return None;
    }
    if rng.gen_bool(0.5) {
        triangle_on(g, e.u(), e.v())
    } else {
        triangle_on(g, e.v(), e.u())
    }
}

fn pendant_path(g: &PlaneGraph, rng: &mut ChaCha8Rng, with_triangle: bool) -> Option<PlaneGraph> {
    let id = random_face(g, rng)?;
    let pos = rng.gen_range(0..g.faces()[id].len());
    let (mut h, mut x) = g.insert_pendant(id, pos).ok()?;
    let mut a = g.faces()[id].boundary()[pos];
    for _ in 0..rng.gen_range(0..=3) {
        let f = h.face_of_dart(a, x)?;
        let w = h.faces()[f].boundary();
        let p = (0..w.len()).find(|&i| w[i] == x)?;
        let (h2, y) = h.insert_pendant(f, p).ok()?;
        h = h2;
        a = x;
        x = y;
    }
    if with_triangle {
        h = triangle_on(&h, a, x)?;
    }
    Some(h)
}

fn isolated_start(g: &PlaneGraph) -> bool {
    g.edge_count() == 0
}

/// Grows a class member with at most `max_n` vertices.
pub fn generate_graph(kind: GeneratorKind, max_n: usize, rng: &mut ChaCha8Rng) -> Result<PlaneGraph, CorpusError> {
    let kind = match kind {
        GeneratorKind::Mixed | GeneratorKind::Curated => {
            if rng.gen_bool(0.5) {
                GeneratorKind::TriangleChains
            } else {
                GeneratorKind::CycleSums
            }
        }
        k => k,
    };
    let start = match kind {
        GeneratorKind::TriangleChains => 3,
        _ => rng.gen_range(9..=13usize).min(max_n.max(9)),
    };
    let mut g = PlaneGraph::cycle(start).expect("cycle");
    debug_assert!(!isolated_start(&g));
    let target = if max_n > g.n() {
        rng.gen_range(g.n()..=max_n)
    } else {
        g.n()
    };
    let mut attempts = 0;
    while g.n() < target && attempts < 400 {
        attempts += 1;
        let roll = rng.gen_range(0..100);
        let next = match kind {
            GeneratorKind::TriangleChains => match roll {
                0..=54 => pendant_path(&g, rng, true),
                55..=74 => pendant_path(&g, rng, false),
                75..=89 => ear(&g, rng),
                _ => triangle_on_edge(&g, rng),
            },
            _ => match roll {
                0..=44 => ear(&g, rng),
                45..=79 => triangle_on_edge(&g, rng),
                80..=89 => pendant_path(&g, rng, true),
                _ => pendant_path(&g, rng, false),
            },
        };
        if let Some(h) = next {
            if h.n() <= max_n.max(start) {
                g = h;
            }
        }
    }
    if let Some(c) = g.shortest_cycle_in_range(4, 8).expect("valid range") {
        return Err(CorpusError::OutOfClass(c));
    }
    Ok(g)
}

/// A plane graph on `n` vertices: a random tree grown at random corners,
/// then up to `extra` chords drawn inside faces. No class restriction.
pub fn random_plane_graph(n: usize, extra: usize, rng: &mut ChaCha8Rng) -> PlaneGraph {
    let mut g = if n >= 2 {
        PlaneGraph::path(2).expect("path")
    } else {
        PlaneGraph::edgeless(1).expect("vertex")
    };
    while g.n() < n {
        let id = random_face(&g, rng).expect("a face");
        let pos = rng.gen_range(0..g.faces()[id].len());
        g = g.insert_pendant(id, pos).expect("pendant").0;
    }
    for _ in 0..extra {
        let Some(id) = random_face(&g, rng) else { break };
        let w = g.faces()[id].boundary();
        let i = rng.gen_range(0..w.len());
        let j = rng.gen_range(0..w.len());
        if w[i] == w[j] || g.has_edge(w[i], w[j]) {
            continue;
        }
        if let Ok((h, _)) = g.insert_path(id, i, j, 0) {
            g = h;
        }
    }
    g
}

/// Every partial injection on `1..=k`.
pub fn all_partial_injections(k: u8) -> Vec<PartialInjection> {
    fn rec(k: u8, a: Color, used: &mut Vec<bool>, cur: &mut PartialInjection, out: &mut Vec<PartialInjection>) {
        if a > k {
            out.push(cur.clone());
            return;
        }
        rec(k, a + 1, used, cur, out);
        for b in 1..=k {
            if !used[b as usize] {
                used[b as usize] = true;
                let saved = cur.clone();
                cur.insert(a, b).expect("fresh pair");
                rec(k, a + 1, used, cur, out);
                *cur = saved;
                used[b as usize] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(
        k,
        1,
        &mut vec![false; k as usize + 1],
        &mut PartialInjection::empty(k),
        &mut out,
    );
    out
}

fn random_permutation(k: u8, rng: &mut ChaCha8Rng) -> Vec<Color> {
    let mut p: Vec<Color> = (1..=k).collect();
    p.shuffle(rng);
    p
}

struct EdgeSampler {
    k: u8,
    dist: AssignmentDistribution,
    partial: Vec<PartialInjection>,
}

impl EdgeSampler {
    fn new(k: u8, dist: AssignmentDistribution) -> Self {
        let partial = if dist == AssignmentDistribution::FullPermutation {
            Vec::new()
        } else {
            all_partial_injections(k)
        };
        EdgeSampler { k, dist, partial }
    }

    fn full(&self, rng: &mut ChaCha8Rng) -> bool {
        match self.dist {
            AssignmentDistribution::FullPermutation => true,
            AssignmentDistribution::UniformPartial => false,
            AssignmentDistribution::Mixed => rng.gen_bool(0.5),
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> PartialInjection {
        if self.full(rng) {
            PartialInjection::from_permutation(&random_permutation(self.k, rng)).expect("permutation")
        } else {
            self.partial.choose(rng).expect("nonempty").clone()
        }
    }

    /// A map `pi_u(a) -> pi_v(a)` over a random domain.
    fn twisted(&self, pu: &[Color], pv: &[Color], rng: &mut ChaCha8Rng) -> PartialInjection {
        let full = self.full(rng);
        let mut m = PartialInjection::empty(self.k);
        for a in 1..=self.k {
            if full || rng.gen_bool(0.5) {
                m.insert(pu[a as usize - 1], pv[a as usize - 1]).expect("permutations");
            }
        }
        m
    }
}

fn triangle_consistent(c: &CorrespondenceAssignment, t: [Vertex; 3]) -> bool {
    triangle_walks(t)
        .iter()
        .all(|w| is_consistent_on(c, w).unwrap_or(false))
}

/// A `k`-assignment on the edges of `g`. With `consistent_triangles`, edges
/// of inconsistent triangles are resampled a bounded number of times and
/// then replaced by a relabeled straight triangle.
pub fn random_assignment(
    g: &PlaneGraph,
    k: u8,
    dist: AssignmentDistribution,
    consistent_triangles: bool,
    rng: &mut ChaCha8Rng,
) -> CorrespondenceAssignment {
    let sampler = EdgeSampler::new(k, dist);
    let mut c = CorrespondenceAssignment::new(k).expect("k in range");
    for e in g.edges() {
        c.set(e.u(), e.v(), sampler.sample(rng)).expect("edge");
    }
    if !consistent_triangles {
        return c;
    }
    for t in g.triangles() {
        let mut tries = 0;
        while !triangle_consistent(&c, t) && tries < 20 {
            tries += 1;
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                c.set(a, b, sampler.sample(rng)).expect("edge");
            }
        }
        if !triangle_consistent(&c, t) {
            let perms: Vec<Vec<Color>> = (0..3).map(|_| random_permutation(k, rng)).collect();
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                c.set(t[i], t[j], sampler.twisted(&perms[i], &perms[j], rng))
                    .expect("edge");
            }
        }
    }
    if g.triangles().into_iter().all(|t| triangle_consistent(&c, t)) {
        return c;
    }
    // Triangles sharing edges can undo each other; relabel a straight
    // assignment globally instead.
    let perms: Vec<Vec<Color>> = g.vertices().map(|_| random_permutation(k, rng)).collect();
    let mut c = CorrespondenceAssignment::new(k).expect("k in range");
    for e in g.edges() {
        c.set(e.u(), e.v(), sampler.twisted(&perms[e.u() - 1], &perms[e.v() - 1], rng))
            .expect("edge");
    }
    c
}

/// A valid colouring of `G[s]`: random greedy first, then the solver.
pub fn random_precoloring(
    g: &PlaneGraph,
    s: &BoundarySet,
    c: &CorrespondenceAssignment,
    rng: &mut ChaCha8Rng,
) -> Option<Coloring> {
    let vs: Vec<Vertex> = s.iter().collect();
    for _ in 0..20 {
        let mut f = Coloring::empty(g.n());
        let mut order = vs.clone();
        order.shuffle(rng);
        let mut ok = true;
        for &v in &order {
            let mut colors = random_permutation(c.k(), rng);
            colors.retain(|&a| {
                g.rotation(v)
                    .iter()
                    .all(|&u| f.get(u).is_none_or(|b| c.apply(v, u, a) != Some(b)))
            });
            match colors.first() {
                Some(&a) => f.set(v, a),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            debug_assert!(is_valid(c, &f));
            return Some(f);
        }
    }
    color_subset(g, c, &Coloring::empty(g.n()), &vs)
}

fn choose_boundary(g: &PlaneGraph, choice: BoundaryChoice, rng: &mut ChaCha8Rng) -> BoundarySet {
    let outer = BoundarySet::outer(g);
    let choice = match choice {
        BoundaryChoice::Any => *[BoundaryChoice::Outer, BoundaryChoice::Single, BoundaryChoice::Empty]
            .choose(rng)
            .expect("nonempty"),
        c => c,
    };
    match choice {
        BoundaryChoice::Outer if outer.len() <= MAX_BOUNDARY => outer,
        BoundaryChoice::Outer | BoundaryChoice::Single => {
            let vs: Vec<Vertex> = outer.iter().collect();
            BoundarySet::new(vs.choose(rng).copied())
        }
        _ => BoundarySet::empty(),
    }
}

/// Target instance number `index` of the corpus.
pub fn generate_target(spec: &CorpusSpec, index: u64) -> Result<TargetInstance, CorpusError> {
    let mut rng = rng_for(spec.seed, index);
    let (g, fixed_s) = match spec.kind {
        GeneratorKind::Curated => {
            let all = gadgets();
            let gd = all[(index as usize) % all.len()].clone();
            (gd.graph, gd.boundary)
        }
        kind => (generate_graph(kind, spec.max_n, &mut rng)?, None),
    };
    let s = match fixed_s {
        Some(s) if s.len() <= MAX_BOUNDARY && s.shape(&g) != BoundaryShape::Other => s,
        _ => choose_boundary(&g, spec.boundary, &mut rng),
    };
    let mut c = random_assignment(&g, 3, spec.assignments, true, &mut rng);
    if spec.saturate {
        c = saturate(&c, &g, &s).expect("saturation keeps the edge set");
    }
    let f0 = random_precoloring(&g, &s, &c, &mut rng).ok_or(CorpusError::NoPrecoloring(20))?;
    let inst = TargetInstance::new(g, s, c, f0);
    debug_assert!(inst.validate(Validation::Target).is_ok());
    Ok(inst)
}

/// `count` class graphs grown with alternating modes.
pub fn class_graphs(seed: u64, count: usize, max_n: usize) -> Result<Vec<PlaneGraph>, CorpusError> {
    (0..count)
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            let kind = if i % 2 == 0 {
                GeneratorKind::TriangleChains
            } else {
                GeneratorKind::CycleSums
            };
            generate_graph(kind, max_n, &mut rng)
        })
        .collect()
}
