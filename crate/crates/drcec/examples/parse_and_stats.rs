//! Parse a hypergraph from its text form, then walk through the basic
//! per-node and per-cluster statistics: color degrees, diversity and
//! experience scores, homogeneity, and the fraction of satisfied edges.
//!
//! Run with `cargo run --example parse_and_stats`.

use drcec::hypergraph::{Clustering, LabeledHypergraph};
use drcec::metrics::{
    diversity_experience_scores, edge_satisfaction, experience_homogeneity, f_within,
    f_within_normalized,
};

fn main() -> drcec::Result<()> {
    // One edge per line: a color name followed by the member node ids.
    // Parallel edges are allowed and count separately toward degrees.
    let text = "\
red 0 1
red 0 2
blue 1 2
blue 2 3
green 3
";
    let h = LabeledHypergraph::parse(text)?;
    println!(
        "{} nodes, {} colors {:?}, {} edges",
        h.num_nodes(),
        h.num_colors(),
        h.colors(),
        h.num_edges()
    );

    println!("\ncolor degrees d_v^c (rows are nodes):");
    for v in 0..h.num_nodes() {
        println!("  node {v}: {:?}  (total {})", h.color_degrees(v), h.total_degree(v));
    }
    println!("max total degree: {}", h.max_total_degree());

    // Score a hand-picked assignment: node ids to color indices.
    let c = Clustering::new(vec![0, 0, 1, 2], h.num_colors())?;
    println!("\nassignment: {:?}", c.as_slice());

    let scores = diversity_experience_scores(&h, &c)?;
    for (i, name) in h.colors().iter().enumerate() {
        println!(
            "  cluster {name}: diversity D = {}, experience E = {}, homogeneity = {:.4}",
            scores[i].diversity,
            scores[i].experience,
            experience_homogeneity(&h, &c, i)?
        );
    }

    println!("\nedge satisfaction: {:.4}", edge_satisfaction(&h, &c)?);
    println!("f_within:          {:.4}", f_within(&h, &c)?);
    println!("f_within (per-color average): {:.4}", f_within_normalized(&h, &c)?);
    Ok(())
}
