mod common;

use std::collections::BTreeSet;

use corrcolor::corpus::{generate_graph, rng_for, GeneratorKind};
use corrcolor::discharging::{apply_rules, audit, initial_charges, r3_faces, Charge, Element, Rule, Stage, TOTAL};
use corrcolor::plane::{BoundarySet, FaceId, PlaneGraph, Vertex};
use proptest::prelude::*;

fn graph_for(seed: u64, mode: u8, n: usize) -> PlaneGraph {
    let mut rng = rng_for(seed, 9);
    match mode {
        0 => generate_graph(GeneratorKind::TriangleChains, n + 8, &mut rng).unwrap(),
        1 => generate_graph(GeneratorKind::CycleSums, n + 8, &mut rng).unwrap(),
        _ => common::graph(seed, n, n),
    }
}

/// The face whose walk passes `a v b` or `b v a`.
fn face_through(g: &PlaneGraph, a: Vertex, v: Vertex, b: Vertex) -> FaceId {
    let hits: Vec<FaceId> = (0..g.faces().len())
        .filter(|&id| {
            let w = g.faces()[id].boundary();
            let n = w.len();
            (0..n).any(|i| {
                let (p, q, r) = (w[i], w[(i + 1) % n], w[(i + 2) % n]);
                q == v && ((p == a && r == b) || (p == b && r == a))
            })
        })
        .collect();
    assert!(!hits.is_empty(), "no face through {a} {v} {b}");
    hits[0]
}

/// Every window of four neighbours of `v` that are consecutive in either
/// rotation direction, with the first two adjacent and the last two not.
fn r3_oracle(g: &PlaneGraph, v: Vertex) -> BTreeSet<FaceId> {
    let rot = g.rotation(v);
    let d = rot.len();
    let mut out = BTreeSet::new();
    if d < 4 {
        return out;
    }
    for start in 0..d {
        for dir in [1, d - 1] {
            let w: Vec<Vertex> = (0..4).map(|j| rot[(start + j * dir) % d]).collect();
            if g.has_edge(w[0], w[1]) && !g.has_edge(w[2], w[3]) {
                out.insert(face_through(g, w[1], v, w[2]));
            }
        }
    }
    out
}

fn bound(g: &PlaneGraph, s: &BoundarySet, v: Vertex) -> Charge {
    match (s.contains(v), g.degree(v)) {
        (false, _) => Charge::from_integer(0),
        (true, d) if d >= 4 => Charge::from_integer(0),
        (true, 3) => Charge::from_integer(-1),
        _ => Charge::new(-3, 2),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn initial_charges_follow_degrees_and_lengths(seed in any::<u64>(), mode in 0u8..3, n in 2usize..14) {
        let g = graph_for(seed, mode, n);
        let l = initial_charges(&g).unwrap();
        prop_assert_eq!(l.stage(), Stage::Initial);
        for v in g.vertices() {
            prop_assert_eq!(l.vertex(v), Charge::from_integer(2 * g.degree(v) as i64 - 6));
        }
        for (id, f) in g.faces().iter().enumerate() {
            prop_assert_eq!(l.face(id), Charge::from_integer(f.len() as i64 - 6));
        }
        prop_assert_eq!(l.total(), Charge::from_integer(TOTAL));
    }

    #[test]
    fn rules_conserve_and_replay(seed in any::<u64>(), mode in 0u8..3, n in 2usize..14, p in 0.0f64..0.7) {
        let g = graph_for(seed, mode, n);
        let s = BoundarySet::new(common::subset(&g, seed, p));
        let init = initial_charges(&g).unwrap();
        let fin = apply_rules(&g, &s, &init).unwrap();
        prop_assert_eq!(fin.stage(), Stage::Final);
        prop_assert_eq!(fin.total(), Charge::from_integer(TOTAL));
        let (replayed, totals) = init.replay(fin.log());
        prop_assert_eq!(totals.len(), fin.log().len());
        prop_assert!(totals.iter().all(|t| *t == Charge::from_integer(TOTAL)));
        prop_assert_eq!(replayed.vertex_charges(), fin.vertex_charges());
        prop_assert_eq!(replayed.face_charges(), fin.face_charges());
        let outer = g.outer_face().unwrap();
        for t in fin.log() {
            prop_assert!(t.amount > Charge::from_integer(0));
            if t.rule != Rule::R4 {
                prop_assert!(t.source != Element::Face(outer) && t.sink != Element::Face(outer));
            }
        }
        let report = audit(&g, &s, &fin).unwrap();
        prop_assert_eq!(report.bookkeeping_errors().count(), 0);
        let below: Vec<Vertex> = g.vertices().filter(|&v| fin.vertex(v) < bound(&g, &s, v)).collect();
        prop_assert_eq!(report.vertex_violations().count(), below.len());
        let negative = (0..g.faces().len()).filter(|&id| id != outer && fin.face(id) < Charge::from_integer(0)).count();
        prop_assert_eq!(report.face_violations().count(), negative);
    }

    #[test]
    fn r3_matches_window_scan(seed in any::<u64>(), mode in 0u8..3, n in 4usize..14) {
        let g = graph_for(seed, mode, n);
        for v in g.vertices() {
            prop_assert_eq!(r3_faces(&g, v), r3_oracle(&g, v), "vertex {}", v);
        }
    }
}
