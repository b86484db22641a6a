//! Exhaustive search over all k^n assignments: the ground truth the other
//! solvers are measured against. Also shows the set of zero-penalty optima
//! and the price of forcing diversity on top of them.
//!
//! Run with `cargo run --example exact_oracle`.

use drcec::hypergraph::LabeledHypergraph;
use drcec::vote::{deviation_threshold, enumeration_size, exact_ilp, x0_set, EnumerationBudget};

fn main() -> drcec::Result<()> {
    let h = LabeledHypergraph::parse("red 0 1\nblue 1 2\n")?;
    let budget = EnumerationBudget::default();
    println!("assignments to enumerate: {}", enumeration_size(&h, &budget)?);

    for beta in [0.0, 0.5, 1.0, 3.0] {
        let (c, b) = exact_ilp(&h, beta, &budget)?;
        println!(
            "beta = {beta}: optimum {:?}, broken edges {}, penalty {}, total {}",
            c.as_slice(),
            b.edge_cost,
            b.experience_penalty,
            b.total
        );
    }

    // Every minimizer of the broken-edge count alone.
    let x0 = x0_set(&h, &budget)?;
    println!("\nedge-optimal set ({} clusterings):", x0.len());
    for c in &x0 {
        println!("  {:?}", c.as_slice());
    }

    // Per node, the weight at which abandoning the edge-optimal solution
    // starts to pay off.
    println!("\ndeviation thresholds from {:?}:", x0[0].as_slice());
    for v in 0..h.num_nodes() {
        match deviation_threshold(&h, v, &x0[0], &budget)? {
            Some(t) => println!("  node {v}: beta = {t}"),
            None => println!("  node {v}: never"),
        }
    }
    Ok(())
}
