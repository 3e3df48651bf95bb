mod common;

use std::collections::{BTreeSet, VecDeque};

use corrcolor::plane::{PlaneGraph, Vertex};
use proptest::prelude::*;

/// Vertices off `cycle` on the clockwise side, from `next` round to `prev`,
/// at every cycle vertex, closed under paths avoiding the cycle. Also
/// returns whether the outer face has a corner or a vertex on that side.
fn side(g: &PlaneGraph, cycle: &[Vertex]) -> (BTreeSet<Vertex>, bool) {
    let on: BTreeSet<Vertex> = cycle.iter().copied().collect();
    let outer = g.outer_face().unwrap();
    let len = cycle.len();
    let mut seeds = Vec::new();
    let mut touches_outer = false;
    for i in 0..len {
        let v = cycle[i];
        let next = cycle[(i + 1) % len];
        let prev = cycle[(i + len - 1) % len];
        let rot = g.rotation(v);
        let d = rot.len();
        let start = rot.iter().position(|&u| u == next).unwrap();
        for j in 0..d {
            let a = rot[(start + j) % d];
            if a == prev {
                break;
            }
            if g.face_of_dart(a, v) == Some(outer) {
                touches_outer = true;
            }
            if j > 0 && !on.contains(&a) {
                seeds.push(a);
            }
        }
    }
    let mut seen: BTreeSet<Vertex> = seeds.iter().copied().collect();
    let mut queue: VecDeque<Vertex> = seeds.into_iter().collect();
    while let Some(x) = queue.pop_front() {
        for &y in g.rotation(x) {
            if !on.contains(&y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let outer_walk = g.faces()[outer].boundary();
    touches_outer |= outer_walk.iter().any(|v| seen.contains(v));
    (seen, touches_outer)
}

fn interior_oracle(g: &PlaneGraph, cycle: &[Vertex]) -> Vec<Vertex> {
    let (cw, cw_outer) = side(g, cycle);
    let rev: Vec<Vertex> = cycle.iter().rev().copied().collect();
    let (ccw, ccw_outer) = side(g, &rev);
    assert!(cw_outer != ccw_outer, "outer face on exactly one side of {cycle:?}");
    assert!(cw.is_disjoint(&ccw));
    let inside = if cw_outer { ccw } else { cw };
    inside.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_and_dart_partition(seed in any::<u64>(), n in 2usize..14, chords in 0usize..10) {
        let g = common::graph(seed, n, chords);
        prop_assert!(g.is_connected());
        let v = g.n() as i64;
        let e = g.edge_count() as i64;
        let f = g.faces().len() as i64;
        prop_assert_eq!(v - e + f, 2);
        let mut darts = BTreeSet::new();
        for (id, face) in g.faces().iter().enumerate() {
            for (a, b) in face.darts() {
                prop_assert!(g.has_edge(a, b));
                prop_assert!(darts.insert((a, b)), "dart {}->{} in two faces", a, b);
                prop_assert_eq!(g.face_of_dart(a, b), Some(id));
            }
        }
        prop_assert_eq!(darts.len() as i64, 2 * e);
    }

    #[test]
    fn retracing_is_idempotent(seed in any::<u64>(), n in 2usize..14, chords in 0usize..10) {
        let g = common::graph(seed, n, chords);
        let h = PlaneGraph::new(g.rotations().to_vec()).unwrap();
        prop_assert_eq!(g.faces(), h.faces());
        let longest = h.faces().iter().map(|f| f.len()).max().unwrap();
        prop_assert_eq!(h.faces()[h.outer_face().unwrap()].len(), longest);
        let walk = g.outer_walk().unwrap().to_vec();
        let mut k = h.clone();
        k.set_outer_walk(&walk).unwrap();
        prop_assert_eq!(k.outer_face(), g.outer_face());
    }

    #[test]
    fn cycle_lengths_match_exhaustive_search(seed in any::<u64>(), n in 3usize..10, chords in 0usize..6) {
        let g = common::graph(seed, n, chords);
        let cycles = common::all_cycles(&g);
        for (lo, hi) in [(3, 3), (4, 8), (3, 9), (5, 6)] {
            let best = cycles.iter().map(Vec::len).filter(|l| (lo..=hi).contains(l)).min();
            let found = g.shortest_cycle_in_range(lo, hi).unwrap();
            prop_assert_eq!(found.as_ref().map(Vec::len), best);
            if let Some(c) = found {
                let distinct: BTreeSet<_> = c.iter().collect();
                prop_assert_eq!(distinct.len(), c.len());
                for i in 0..c.len() {
                    prop_assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            prop_assert_eq!(g.avoids_cycle_lengths(lo, hi), best.is_none());
        }
        let mut listed = g.cycles_up_to(n);
        let mut oracle: Vec<BTreeSet<Vertex>> = cycles.iter().map(|c| c.iter().copied().collect()).collect();
        let mut got: Vec<BTreeSet<Vertex>> = listed.drain(..).map(|c| c.into_iter().collect()).collect();
        oracle.sort();
        got.sort();
        prop_assert_eq!(got.len(), cycles.len());
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn two_connectivity_matches_vertex_deletion(seed in any::<u64>(), n in 3usize..11, chords in 0usize..8) {
        let g = common::graph(seed, n, chords);
        let cuts: Vec<Vertex> = g
            .vertices()
            .filter(|&v| {
                let (h, _) = g.remove_vertices(&BTreeSet::from([v])).unwrap();
                !h.is_connected()
            })
            .collect();
        prop_assert_eq!(g.cut_vertex(), cuts.first().copied());
        prop_assert_eq!(g.is_two_connected(), cuts.is_empty());
    }

    #[test]
    fn interior_matches_side_search(seed in any::<u64>(), n in 3usize..10, chords in 0usize..7) {
        let g = common::graph(seed, n, chords);
        for c in common::all_cycles(&g) {
            prop_assert_eq!(g.interior_vertices(&c), interior_oracle(&g, &c), "cycle {:?}", c);
        }
    }
}
