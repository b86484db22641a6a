//! Majority and minority votes, and where the naive objective flips between
//! them. Each node looks only at its own degree row: majority picks the color
//! it has served most, minority the color it has served least. The naive
//! score E + beta * D is maximized by majority when beta < 1 and by minority
//! when beta > 1, with both optimal at beta = 1.
//!
//! Run with `cargo run --example vote_clusterings`.

use drcec::hypergraph::LabeledHypergraph;
use drcec::metrics::naive_objective;
use drcec::vote::{majority_vote, minority_vote, naive_optimum, TieBreak};

fn main() -> drcec::Result<()> {
    let h = LabeledHypergraph::parse(
        "red 0 1\nred 0 2\nred 1 2\nblue 0 3\nblue 3 4\ngreen 2 4\n",
    )?;

    let maj = majority_vote(&h, TieBreak::Deterministic)?;
    let min = minority_vote(&h, TieBreak::Deterministic)?;
    println!("majority vote: {:?}", maj.as_slice());
    println!("minority vote: {:?}", min.as_slice());

    // Ties can also be broken randomly but reproducibly.
    let seeded = minority_vote(&h, TieBreak::SeededRandom(7))?;
    println!("minority vote, seeded ties: {:?}", seeded.as_slice());

    println!("\nnaive score E + beta * D (higher is better):");
    for beta in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let s_maj = naive_objective(&h, &maj, beta)?;
        let s_min = naive_objective(&h, &min, beta)?;
        let opt = naive_optimum(&h, beta, TieBreak::Deterministic)?;
        let s_opt = naive_objective(&h, &opt, beta)?;
        println!(
            "  beta = {beta:>3}: majority {s_maj:>5.1}  minority {s_min:>5.1}  optimum {s_opt:>5.1} at {:?}",
            opt.as_slice()
        );
    }
    println!("\nbelow beta = 1 the most-experienced assignment wins; above it,");
    println!("the least-experienced one does.");
    Ok(())
}
