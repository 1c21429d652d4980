mod common;

use common::certificate_holds;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ucat::exact::{exact_ucat, exact_ucat_strong, min_tree_cover, strong_ucat_leq, ucat_leq, Budget};
use ucat::families::connected_graphs_up_to;
use ucat::gadgets::two_trees_decision;
use ucat::scalar::int;
use ucat::unimodality::is_strong_decomposition;
use ucat::{ExactFunction, Graph};

fn ones(g: &Graph) -> ExactFunction {
    ExactFunction::constant(g, int(1))
}

#[test]
fn constant_on_cycles_needs_two() {
    let budget = Budget::default();
    for n in 3..=8 {
        let g = Graph::cycle(n);
        let r = exact_ucat(&g, &ones(&g), 1, 0, &budget).unwrap();
        assert_eq!(r.value, 2, "C{n}");
        assert!(r.complete);
        assert!(certificate_holds(&g, &ones(&g), &r.certificate.functions()));
    }
}

#[test]
fn strong_category_of_small_cycles() {
    let budget = Budget::default();
    for n in [3, 4] {
        let g = Graph::cycle(n);
        let r = exact_ucat_strong(&g, &ones(&g), 1, &budget).unwrap();
        assert_eq!(r.value, 3, "C{n}");
        assert!(r.strong && r.strong_raised);
        assert!(is_strong_decomposition(&g, &r.certificate.functions()).unwrap().is_strong());
        assert!(certificate_holds(&g, &ones(&g), &r.certificate.functions()));
        assert!(strong_ucat_leq(&g, &ones(&g), 2, &budget).unwrap().is_none());
    }
}

#[test]
fn zero_function_has_empty_decomposition() {
    let g = Graph::cycle(4);
    let zero = ExactFunction::from_ints(&g, &[0, 0, 0, 0]).unwrap();
    assert_eq!(exact_ucat(&g, &zero, 1, 0, &Budget::default()).unwrap().value, 0);
}

#[test]
fn refinement_never_increases_the_count() {
    let budget = Budget::default();
    let g = Graph::cycle(4);
    let f = ExactFunction::from_ints(&g, &[3, 1, 2, 1]).unwrap();
    let coarse = exact_ucat(&g, &f, 1, 0, &budget).unwrap();
    let fine = exact_ucat(&g, &f, 1, 1, &budget).unwrap();
    assert!(fine.value <= coarse.value);
    assert_eq!(fine.graph.vertex_count(), 8);
    assert!(certificate_holds(&fine.graph, &fine.function, &fine.certificate.functions()));
}

#[test]
fn budgets_are_enforced() {
    let g = Graph::cycle(6);
    let f = ones(&g);
    let small = Budget::default().with_vertices(5);
    assert!(exact_ucat(&g, &f, 1, 0, &small).unwrap_err().is_budget());
    // refinement counts towards the vertex budget
    assert!(exact_ucat(&g, &f, 1, 1, &Budget::default().with_vertices(11)).unwrap_err().is_budget());
    assert!(min_tree_cover(&g, &small).unwrap_err().is_budget());
    assert!(exact_ucat(&g, &f, 0, 0, &Budget::default()).is_err());
}

#[test]
fn tree_cover_matches_open_star_oracle() {
    let budget = Budget::default();
    for g in connected_graphs_up_to(5) {
        let cover = min_tree_cover(&g, &budget).unwrap();
        assert_eq!(cover.size, common::min_open_star_cover(&g), "{:?}", g.edges());
        let overlapping = two_trees_decision(&g, false).unwrap().holds;
        assert_eq!(cover.size <= 2, overlapping);
        let adj = common::adjacency(&g);
        assert!(cover.sets.iter().all(|s| common::is_tree_mask(&adj, s.to_mask())));
        let union = cover.sets.iter().fold(0u64, |m, s| m | s.to_mask());
        assert_eq!(union, (1u64 << g.vertex_count()) - 1);
    }
}

#[test]
fn subdividing_lets_two_open_sets_cover_any_cyclic_graph() {
    // Open sets that may stop inside an edge are not limited to open stars of
    // the original vertices: a spanning tree with the remaining edges
    // stretched in from both ends, plus a second copy reaching across the
    // gaps, covers any connected graph. The unsubdivided count is larger on
    // dense graphs.
    let budget = Budget::default();
    for g in connected_graphs_up_to(5) {
        let fine = common::min_subdivided_open_star_cover(&g);
        assert_eq!(fine, if g.is_tree() { 1 } else { 2 }, "{:?}", g.edges());
        assert!(fine <= min_tree_cover(&g, &budget).unwrap().size);
    }
    assert_eq!(min_tree_cover(&Graph::complete(5), &budget).unwrap().size, 3);
}

fn random_instance(seed: u64, n: usize, extra: f64) -> (Graph, Vec<i64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = common::random_connected(&mut rng, n, extra);
    let vals = (0..n).map(|_| rng.gen_range(0..=3)).collect();
    (g, vals)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn certificates_are_valid_and_tight(seed in any::<u64>(), n in 1usize..=6, extra in 0.0f64..0.5) {
        let (g, vals) = random_instance(seed, n, extra);
        let f = ExactFunction::from_ints(&g, &vals).unwrap();
        let budget = Budget::default();
        let r = exact_ucat(&g, &f, 1, 0, &budget).unwrap();
        prop_assert!(certificate_holds(&g, &f, &r.certificate.functions()));
        prop_assert_eq!(r.certificate.len(), r.value);
        if r.value > 0 {
            prop_assert!(ucat_leq(&g, &f, r.value - 1, 0, &budget).unwrap().is_none());
        }
        prop_assert!(ucat_leq(&g, &f, r.value, 0, &budget).unwrap().is_some());
    }

    #[test]
    fn power_is_the_category_of_the_power(seed in any::<u64>(), n in 1usize..=5, p in 1u32..=3) {
        let (g, vals) = random_instance(seed, n, 0.3);
        let f = ExactFunction::from_ints(&g, &vals).unwrap();
        let budget = Budget::default();
        let direct = exact_ucat(&g, &f, p, 0, &budget).unwrap();
        let via_power = exact_ucat(&g, &f.pow(p), 1, 0, &budget).unwrap();
        prop_assert_eq!(direct.value, via_power.value);
        prop_assert!(certificate_holds(&g, &f.pow(p), &direct.certificate.functions()));
    }

    #[test]
    fn strong_is_at_least_weak(seed in any::<u64>(), n in 1usize..=5) {
        let (g, vals) = random_instance(seed, n, 0.3);
        let f = ExactFunction::from_ints(&g, &vals).unwrap();
        let budget = Budget::default();
        let weak = exact_ucat(&g, &f, 1, 0, &budget).unwrap();
        let strong = exact_ucat_strong(&g, &f, 1, &budget).unwrap();
        prop_assert!(strong.value >= weak.value);
        prop_assert!(is_strong_decomposition(&g, &strong.certificate.functions()).unwrap().is_strong());
        prop_assert!(certificate_holds(&g, &f, &strong.certificate.functions()));
    }
}
