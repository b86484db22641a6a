//! Scores for cluster assignments: per-color diversity/experience, the two
//! clustering objectives, and summary statistics.
//!
//! For a clustering C of an edge-labeled hypergraph, a node v contributes its
//! in-color degree `d[v][C(v)]` as experience of cluster C(v) and its entire
//! off-color degree as diversity. Summed over clusters, experience plus
//! diversity is the constant `sum_v d(v)` whatever the assignment; the two
//! objectives below just weight the split differently.

use crate::error::{Error, Result};
use crate::hypergraph::{Clustering, LabeledHypergraph};

/// Diversity D(i) and experience E(i) of one color cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorScores {
    pub diversity: u64,
    pub experience: u64,
}

/// Cost of a clustering under the edge-violation objective: number of edges
/// not fully contained in their color's cluster, plus `beta` times the total
/// in-color degree of the assignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveBreakdown {
    pub edge_cost: u64,
    pub experience_penalty: u64,
    pub beta: f64,
    pub total: f64,
}

impl ObjectiveBreakdown {
    pub fn new(edge_cost: u64, experience_penalty: u64, beta: f64) -> Self {
        ObjectiveBreakdown {
            edge_cost,
            experience_penalty,
            beta,
            total: edge_cost as f64 + beta * experience_penalty as f64,
        }
    }
}

fn check_dims(h: &LabeledHypergraph, c: &Clustering) -> Result<()> {
    if c.num_nodes() != h.num_nodes() {
        return Err(Error::invalid(format!(
            "clustering covers {} nodes, hypergraph has {}",
            c.num_nodes(),
            h.num_nodes()
        )));
    }
    for v in 0..h.num_nodes() {
        if c.color_of(v) >= h.num_colors() {
            return Err(Error::invalid(format!(
                "node {v} assigned color index {} but k = {}",
                c.color_of(v),
                h.num_colors()
            )));
        }
    }
    Ok(())
}

/// D(i) and E(i) for every color i.
pub fn diversity_experience_scores(
    h: &LabeledHypergraph,
    c: &Clustering,
) -> Result<Vec<ColorScores>> {
    check_dims(h, c)?;
    let k = h.num_colors();
    let mut scores = vec![ColorScores { diversity: 0, experience: 0 }; k];
    for v in 0..h.num_nodes() {
        let home = c.color_of(v);
        for (col, &d) in h.color_degrees(v).iter().enumerate() {
            if col == home {
                scores[home].experience += u64::from(d);
            } else {
                scores[home].diversity += u64::from(d);
            }
        }
    }
    Ok(scores)
}

/// Total experience and diversity over all clusters, as exact integers.
pub fn experience_diversity_totals(
    h: &LabeledHypergraph,
    c: &Clustering,
) -> Result<(u64, u64)> {
    let scores = diversity_experience_scores(h, c)?;
    let e = scores.iter().map(|s| s.experience).sum();
    let d = scores.iter().map(|s| s.diversity).sum();
    Ok((e, d))
}

/// The naive score `sum_i E(i) + beta * D(i)`, to be maximized.
pub fn naive_objective(h: &LabeledHypergraph, c: &Clustering, beta: f64) -> Result<f64> {
    let (e, d) = experience_diversity_totals(h, c)?;
    Ok(e as f64 + beta * d as f64)
}

/// Edge violations plus `beta` times the experience penalty; the quantity the
/// LP relaxation and the exhaustive solver minimize.
pub fn drcec_objective(
    h: &LabeledHypergraph,
    c: &Clustering,
    beta: f64,
) -> Result<ObjectiveBreakdown> {
    check_dims(h, c)?;
    if beta < 0.0 || !beta.is_finite() {
        return Err(Error::invalid(format!("beta must be finite and >= 0, got {beta}")));
    }
    let mut edge_cost = 0u64;
    for e in h.edges() {
        if e.nodes.iter().any(|&v| c.color_of(v) != e.color) {
            edge_cost += 1;
        }
    }
    let mut penalty = 0u64;
    for v in 0..h.num_nodes() {
        penalty += u64::from(h.color_degree(v, c.color_of(v)));
    }
    Ok(ObjectiveBreakdown::new(edge_cost, penalty, beta))
}

/// Fraction of edges fully contained in their color's cluster. Undefined on
/// an edgeless graph.
pub fn edge_satisfaction(h: &LabeledHypergraph, c: &Clustering) -> Result<f64> {
    check_dims(h, c)?;
    if h.num_edges() == 0 {
        return Err(Error::invalid("edge satisfaction undefined: hypergraph has no edges"));
    }
    let violated = drcec_objective(h, c, 0.0)?.edge_cost;
    Ok(1.0 - violated as f64 / h.num_edges() as f64)
}

fn within_ratio_sums(h: &LabeledHypergraph, c: &Clustering) -> (Vec<f64>, Vec<usize>) {
    let k = h.num_colors();
    let mut ratio = vec![0.0f64; k];
    let mut size = vec![0usize; k];
    for v in 0..h.num_nodes() {
        let home = c.color_of(v);
        size[home] += 1;
        let total = h.total_degree(v);
        // zero-degree nodes contribute nothing to the ratio sums
        if total > 0 {
            ratio[home] += f64::from(h.color_degree(v, home)) / f64::from(total);
        }
    }
    (ratio, size)
}

/// Size-weighted within-cluster degree fraction:
/// `sum_i (|C(i)|/|V|) * sum_{v in C(i)} d[v][i]/d(v)`.
pub fn f_within(h: &LabeledHypergraph, c: &Clustering) -> Result<f64> {
    check_dims(h, c)?;
    if h.num_nodes() == 0 {
        return Ok(0.0);
    }
    let (ratio, size) = within_ratio_sums(h, c);
    let n = h.num_nodes() as f64;
    Ok(ratio
        .iter()
        .zip(&size)
        .map(|(r, &s)| (s as f64 / n) * r)
        .sum())
}

/// Variant of [`f_within`] with each cluster's ratio sum divided by the
/// cluster size, which collapses to the plain average of per-node in-color
/// degree fractions.
pub fn f_within_normalized(h: &LabeledHypergraph, c: &Clustering) -> Result<f64> {
    check_dims(h, c)?;
    if h.num_nodes() == 0 {
        return Ok(0.0);
    }
    let (ratio, _) = within_ratio_sums(h, c);
    Ok(ratio.iter().sum::<f64>() / h.num_nodes() as f64)
}

/// Per-cluster homogeneity `sum_{v in C(i)} d[v][i]/d(v)`, skipping
/// zero-degree nodes.
pub fn experience_homogeneity(
    h: &LabeledHypergraph,
    c: &Clustering,
    color: usize,
) -> Result<f64> {
    check_dims(h, c)?;
    if color >= h.num_colors() {
        return Err(Error::invalid(format!(
            "color index {color} out of range (k = {})",
            h.num_colors()
        )));
    }
    let (ratio, _) = within_ratio_sums(h, c);
    Ok(ratio[color])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Clustering;

    fn three_node() -> LabeledHypergraph {
        LabeledHypergraph::parse("nodes 3\nred 0 1\nblue 1 2\n").unwrap()
    }

    fn cl(assignment: &[usize]) -> Clustering {
        Clustering::new(assignment.to_vec(), 2).unwrap()
    }

    // Recounting [red,red,red] by hand: experience picks up d[0][r]+d[1][r],
    // diversity picks up node 1's and node 2's blue degrees.
    #[test]
    fn scores_on_all_red() {
        let h = three_node();
        let s = diversity_experience_scores(&h, &cl(&[0, 0, 0])).unwrap();
        assert_eq!(s[0].experience, 2);
        assert_eq!(s[0].diversity, 2);
        assert_eq!(s[1].experience, 0);
        assert_eq!(s[1].diversity, 0);
    }

    #[test]
    fn score_totals_are_degree_sum_invariant() {
        let h = three_node();
        let degree_sum: u64 = (0..3).map(|v| u64::from(h.total_degree(v))).sum();
        assert_eq!(degree_sum, 4);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let (e, d) = experience_diversity_totals(&h, &cl(&[a, b, c])).unwrap();
                    assert_eq!(e + d, degree_sum, "assignment [{a},{b},{c}]");
                }
            }
        }
    }

    #[test]
    fn naive_objective_majority_at_zero_beta() {
        let h = three_node();
        let score = naive_objective(&h, &cl(&[0, 0, 1]), 0.0).unwrap();
        assert_eq!(score, 3.0, "experience sums 1+1+1");
    }

    #[test]
    fn naive_objective_flat_at_beta_one() {
        let h = three_node();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let score = naive_objective(&h, &cl(&[a, b, c]), 1.0).unwrap();
                    assert_eq!(score, 4.0, "every clustering scores sum_v d(v) at beta = 1");
                }
            }
        }
    }

    #[test]
    fn drcec_breakdown_all_red() {
        let h = three_node();
        let b = drcec_objective(&h, &cl(&[0, 0, 0]), 0.5).unwrap();
        assert_eq!(b.edge_cost, 1, "blue edge broken");
        assert_eq!(b.experience_penalty, 2);
        assert_eq!(b.total, 2.0);
    }

    #[test]
    fn drcec_breakdown_minority() {
        let h = three_node();
        let b = drcec_objective(&h, &cl(&[1, 0, 0]), 0.5).unwrap();
        assert_eq!(b.edge_cost, 2, "both edges broken");
        assert_eq!(b.experience_penalty, 1, "only node 1 keeps in-color degree");
    }

    #[test]
    fn negative_beta_rejected() {
        let h = three_node();
        assert!(drcec_objective(&h, &cl(&[0, 0, 0]), -0.5).is_err());
        assert!(drcec_objective(&h, &cl(&[0, 0, 0]), f64::NAN).is_err());
    }

    #[test]
    fn edge_satisfaction_values() {
        let h = three_node();
        assert_eq!(edge_satisfaction(&h, &cl(&[0, 0, 0])).unwrap(), 0.5);
        assert_eq!(edge_satisfaction(&h, &cl(&[1, 0, 0])).unwrap(), 0.0);
        assert_eq!(edge_satisfaction(&h, &cl(&[0, 0, 1])).unwrap(), 0.5);
    }

    #[test]
    fn edge_satisfaction_undefined_without_edges() {
        let h = LabeledHypergraph::parse("nodes 2\n").unwrap();
        let c = Clustering::new(vec![], 0);
        // no colors, so build the clustering by hand over an empty palette
        assert!(c.is_ok());
        let h2 = LabeledHypergraph::new(2, vec!["red".into()]).unwrap();
        let c2 = Clustering::new(vec![0, 0], 1).unwrap();
        assert!(edge_satisfaction(&h2, &c2).is_err());
        drop(h);
    }

    #[test]
    fn f_within_all_red() {
        let h = three_node();
        let f = f_within(&h, &cl(&[0, 0, 0])).unwrap();
        assert!((f - 1.5).abs() < 1e-12, "(3/3)*(1/1 + 1/2 + 0/1), got {f}");
    }

    #[test]
    fn f_within_normalized_all_red() {
        let h = three_node();
        let f = f_within_normalized(&h, &cl(&[0, 0, 0])).unwrap();
        assert!((f - 0.5).abs() < 1e-12, "(1 + 1/2 + 0)/3, got {f}");
    }

    #[test]
    fn homogeneity_majority_red_cluster() {
        let h = three_node();
        let score = experience_homogeneity(&h, &cl(&[0, 0, 1]), 0).unwrap();
        assert!((score - 1.5).abs() < 1e-12, "1/1 + 1/2, got {score}");
        let blue = experience_homogeneity(&h, &cl(&[0, 0, 1]), 1).unwrap();
        assert!((blue - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_degree_nodes_skipped_in_ratio_sums() {
        let h = LabeledHypergraph::parse("nodes 3\nred 0 1\n").unwrap();
        let c = Clustering::new(vec![0, 0, 0], 1).unwrap();
        let f = f_within(&h, &c).unwrap();
        assert!((f - 2.0).abs() < 1e-12, "(3/3)*(1+1), node 2 skipped, got {f}");
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let h = three_node();
        let short = Clustering::new(vec![0, 0], 2).unwrap();
        assert!(diversity_experience_scores(&h, &short).is_err());
    }
}
