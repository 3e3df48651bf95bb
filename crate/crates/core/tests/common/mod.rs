#![allow(dead_code)]

use std::collections::BTreeSet;

use corrcolor::coloring::Coloring;
use corrcolor::corpus::{random_assignment, random_plane_graph, rng_for, AssignmentDistribution};
use corrcolor::correspondence::{Color, CorrespondenceAssignment};
use corrcolor::plane::{PlaneGraph, Vertex};
use rand::Rng;

/// A connected plane graph on `n` vertices drawn from `seed`.
pub fn graph(seed: u64, n: usize, chords: usize) -> PlaneGraph {
    random_plane_graph(n, chords, &mut rng_for(seed, 0))
}

pub fn assignment(g: &PlaneGraph, k: u8, seed: u64, consistent_triangles: bool) -> CorrespondenceAssignment {
    random_assignment(
        g,
        k,
        AssignmentDistribution::Mixed,
        consistent_triangles,
        &mut rng_for(seed, 1),
    )
}

/// A random subset of the vertices, each kept with probability `p`.
pub fn subset(g: &PlaneGraph, seed: u64, p: f64) -> BTreeSet<Vertex> {
    let mut rng = rng_for(seed, 2);
    g.vertices().filter(|_| rng.gen_bool(p)).collect()
}

/// Every simple cycle, as a vertex sequence starting at its smallest vertex,
/// each listed once.
pub fn all_cycles(g: &PlaneGraph) -> Vec<Vec<Vertex>> {
    fn dfs(g: &PlaneGraph, start: Vertex, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let last = *path.last().unwrap();
        for &u in g.rotation(last) {
            if u == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if u > start && !path.contains(&u) {
                path.push(u);
                dfs(g, start, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in g.vertices() {
        dfs(g, s, &mut vec![s], &mut out);
    }
    out
}

/// Whether `f` is a proper colouring of every edge where both ends are
/// coloured: no edge maps one end's colour to the other's.
pub fn respects(c: &CorrespondenceAssignment, g: &PlaneGraph, f: &Coloring) -> bool {
    g.edges().iter().all(|e| match (f.get(e.u()), f.get(e.v())) {
        (Some(a), Some(b)) => c.canonical(*e).is_none_or(|m| m.pairs().all(|p| p != (a, b))),
        _ => true,
    })
}

/// Every total colouring of `g` with colours `1..=k`.
pub fn all_colorings(n: usize, k: u8) -> Vec<Vec<Color>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Color>| {
                (1..=k).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}
