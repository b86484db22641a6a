//! Cross-module invariants on seeded random instances. proptest drives the
//! seeds; the instances themselves come from the shared corpus generator so
//! failures reproduce from a single integer.

mod common;

use proptest::prelude::*;

use drcec::encode::solve_relaxation;
use drcec::hypergraph::{parse_clustering, write_clustering, LabeledHypergraph};
use drcec::metrics::{
    drcec_objective, edge_satisfaction, experience_diversity_totals, naive_objective,
};
use drcec::sensitivity::stability_interval;
use drcec::simplex::Tolerances;
use drcec::vote::{
    exact_ilp, majority_vote, minority_sets, minority_vote, EnumerationBudget, TieBreak,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The assignment-as-vector view of the LP must price a clustering
    /// exactly like the direct objective.
    #[test]
    fn encoding_prices_clusterings_like_the_objective(
        seed in 0u64..10_000,
        aseed in 0u64..10_000,
        beta in 0.0f64..5.0,
    ) {
        let h = common::corpus_instance(seed);
        let c = common::random_clustering(&h, aseed);
        let sol = solve_relaxation(&h, beta, &Tolerances::default()).unwrap();
        let v = sol.encoding.clustering_vector(&h, &c);
        let direct = drcec_objective(&h, &c, beta).unwrap().total;
        let via_lp = sol.encoding.objective_with_offset(&v, beta);
        prop_assert!((direct - via_lp).abs() < 1e-9, "direct {direct} vs encoded {via_lp}");
    }

    /// Nothing beats the exhaustive optimum.
    #[test]
    fn oracle_is_never_beaten(
        seed in 0u64..10_000,
        aseed in 0u64..10_000,
        beta in 0.0f64..5.0,
    ) {
        let h = common::corpus_instance(seed);
        let c = common::random_clustering(&h, aseed);
        let (_, best) = exact_ilp(&h, beta, &EnumerationBudget::default()).unwrap();
        let candidate = drcec_objective(&h, &c, beta).unwrap().total;
        prop_assert!(best.total <= candidate + 1e-9);
    }

    /// With two colors the relaxation shows no integrality gap on this
    /// corpus: its value matches the exhaustive optimum.
    #[test]
    fn two_colors_leave_no_gap(seed in 0u64..10_000, beta in 0.0f64..6.0) {
        let h = common::corpus_instance(seed);
        prop_assume!(h.num_colors() == 2);
        let sol = solve_relaxation(&h, beta, &Tolerances::default()).unwrap();
        let (_, best) = exact_ilp(&h, beta, &EnumerationBudget::default()).unwrap();
        prop_assert!(
            (sol.objective_with_offset - best.total).abs() < 1e-6,
            "lp {} vs exact {}",
            sol.objective_with_offset,
            best.total
        );
    }

    /// Minority assigns least-served colors, majority most-served ones.
    #[test]
    fn votes_pick_extremal_degrees(seed in 0u64..10_000) {
        let h = common::corpus_instance(seed);
        let mins = minority_sets(&h);
        let lo = minority_vote(&h, TieBreak::Deterministic).unwrap();
        let hi = majority_vote(&h, TieBreak::Deterministic).unwrap();
        for v in 0..h.num_nodes() {
            prop_assert!(mins.contains(v, lo.color_of(v)));
            let max = h.color_degrees(v).iter().copied().max().unwrap();
            prop_assert_eq!(h.color_degree(v, hi.color_of(v)), max);
        }
    }

    /// Experience and diversity split the same fixed mass, so their sum is
    /// assignment-independent and the two objectives are affinely tied.
    #[test]
    fn experience_and_diversity_partition_degree_mass(
        seed in 0u64..10_000,
        aseed in 0u64..10_000,
    ) {
        let h = common::corpus_instance(seed);
        let c = common::random_clustering(&h, aseed);
        let (e, d) = experience_diversity_totals(&h, &c).unwrap();
        let mass: u64 = (0..h.num_nodes()).map(|v| u64::from(h.total_degree(v))).sum();
        prop_assert_eq!(e + d, mass);
        // naive score at beta = 1 is that constant, whatever the assignment
        let s = naive_objective(&h, &c, 1.0).unwrap();
        prop_assert!((s - mass as f64).abs() < 1e-12);
    }

    /// Serialization round-trips preserve everything the text format can
    /// express: node count and the edges with their color names. (A color no
    /// edge uses has no line to live on, so color indices may differ.)
    #[test]
    fn text_roundtrips(seed in 0u64..10_000, aseed in 0u64..10_000) {
        let h = common::corpus_instance(seed);
        let h2 = LabeledHypergraph::parse(&h.to_text()).unwrap();
        prop_assert_eq!(h.num_nodes(), h2.num_nodes());
        let named = |g: &LabeledHypergraph| -> Vec<(String, Vec<usize>)> {
            g.edges()
                .iter()
                .map(|e| (g.colors()[e.color].clone(), e.nodes.clone()))
                .collect()
        };
        prop_assert_eq!(named(&h), named(&h2));

        let c = common::random_clustering(&h, aseed);
        let c2 = parse_clustering(&write_clustering(&c, h.colors()), &h).unwrap();
        prop_assert_eq!(c.as_slice(), c2.as_slice());
    }

    /// Edge satisfaction is a fraction, and it is 1 exactly when the
    /// clustering costs no edges.
    #[test]
    fn satisfaction_is_a_fraction(
        seed in 0u64..10_000,
        aseed in 0u64..10_000,
    ) {
        let h = common::corpus_instance(seed);
        let c = common::random_clustering(&h, aseed);
        let sat = edge_satisfaction(&h, &c).unwrap();
        prop_assert!((0.0..=1.0).contains(&sat));
        let b = drcec_objective(&h, &c, 0.0).unwrap();
        let expect = 1.0 - b.edge_cost as f64 / h.num_edges() as f64;
        prop_assert!((sat - expect).abs() < 1e-12);
    }

    /// Inside the reported stability interval the relaxed solution keeps
    /// tracing the optimal value line.
    #[test]
    fn stability_interval_brackets_optimality(
        seed in 0u64..10_000,
        t in 0.1f64..0.9,
    ) {
        let tol = Tolerances::default();
        let h = common::corpus_instance(seed);
        let beta = 0.8;
        let (lo, hi) = stability_interval(&h, beta, &tol).unwrap();
        prop_assert!(lo <= beta + 1e-9 && beta <= hi + 1e-9);
        let sol = solve_relaxation(&h, beta, &tol).unwrap();
        let top = if hi.is_finite() { hi } else { f64::from(h.max_total_degree()) + 2.0 };
        let mid = lo + t * (top - lo);
        let there = solve_relaxation(&h, mid, &tol).unwrap();
        let line = sol.encoding.raw_objective(&sol.x, mid);
        prop_assert!(
            (there.raw_objective - line).abs() < 1e-6,
            "at {mid}: lp {} vs carried line {line}",
            there.raw_objective
        );
    }
}

/// Three parallel two-node edges of one color and one of another: breaking
/// the solid cluster only pays once the weight outweighs the node's degree
/// advantage, which for this shape happens at exactly 2.
#[test]
fn deviation_threshold_worked_instance() {
    let h = LabeledHypergraph::parse("red 0 1\nred 0 1\nred 0 1\nblue 0 1\n").unwrap();
    let budget = EnumerationBudget::default();
    let x0 = drcec::vote::x0_set(&h, &budget).unwrap();
    let all_red = x0
        .iter()
        .find(|c| c.as_slice() == [0, 0])
        .expect("all-red is edge-optimal");
    let t = drcec::vote::deviation_threshold(&h, 0, all_red, &budget).unwrap();
    assert_eq!(t, Some(2.0));
}
