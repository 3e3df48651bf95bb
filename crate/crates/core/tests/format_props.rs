mod common;

use corrcolor::coloring::Coloring;
use corrcolor::corpus::rng_for;
use corrcolor::format::{
    coloring_from_pairs, emit_ca, emit_col, emit_la, emit_map, emit_pg, parse_ca, parse_col, parse_la, parse_map,
    parse_pg,
};
use corrcolor::lists::{from_lists, ListAssignment};
use corrcolor::plane::BoundarySet;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn lists(n: usize, k: usize, seed: u64) -> ListAssignment {
    let mut rng = rng_for(seed, 10);
    let pool: Vec<i64> = (1..=(2 * k as i64 + 1)).collect();
    let rows = (0..n)
        .map(|_| pool.choose_multiple(&mut rng, k).copied().collect())
        .collect();
    ListAssignment::new(k, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graphs_round_trip(seed in any::<u64>(), n in 1usize..14, chords in 0usize..8, p in 0.0f64..0.6) {
        let g = common::graph(seed, n, chords);
        let s = BoundarySet::new(common::subset(&g, seed, p));
        for with_s in [None, Some(&s)] {
            let text = emit_pg(&g, with_s);
            let back = parse_pg(&text).unwrap();
            prop_assert_eq!(&back.graph, &g);
            prop_assert_eq!(back.boundary.as_ref(), with_s);
            prop_assert_eq!(emit_pg(&back.graph, back.boundary.as_ref()), text);
        }
    }

    #[test]
    fn assignments_round_trip(seed in any::<u64>(), n in 2usize..12, chords in 0usize..8, k in 1u8..5) {
        let g = common::graph(seed, n, chords);
        let c = common::assignment(&g, k, seed, false);
        let text = emit_ca(&c);
        let back = parse_ca(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(emit_ca(&back), text);
        back.check_edges(&g).unwrap();
    }

    #[test]
    fn lists_and_maps_round_trip(seed in any::<u64>(), n in 1usize..10, chords in 0usize..6, k in 1usize..4) {
        let g = common::graph(seed, n, chords);
        let l = lists(n, k, seed);
        let text = emit_la(&l);
        let back = parse_la(&text).unwrap();
        prop_assert_eq!(&back, &l);
        prop_assert_eq!(emit_la(&back), text);
        let (_, m) = from_lists(&g, &l).unwrap();
        let mtext = emit_map(&m);
        prop_assert_eq!(parse_map(&mtext).unwrap(), m);
    }

    #[test]
    fn colorings_round_trip(seed in any::<u64>(), n in 1usize..20, k in 1u8..5) {
        let mut rng = rng_for(seed, 11);
        let f = Coloring::from_options((0..n).map(|_| rng.gen_bool(0.7).then(|| rng.gen_range(1..=k))).collect());
        let text = emit_col(&f);
        let back = coloring_from_pairs(n, &parse_col(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(emit_col(&back), text);
    }
}
