//! Iterated group formation over a sliding history window.
//!
//! Each step clusters the hypergraph formed by the most recent `w` steps of
//! history, then materializes the chosen clusters as new hyperedges (one per
//! nonempty cluster, colored by the cluster's color) which become the newest
//! history bucket while the oldest falls out of the window. Once the warm-up
//! has flushed the user-supplied edges, every node sits in exactly one edge
//! per bucket, so windowed color degrees are bounded by `w`; weights
//! `beta > w` therefore drive the process into the least-experienced regime
//! where assignments keep rotating, while `beta = 0` freezes it.

use std::collections::VecDeque;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::encode::algorithm1;
use crate::error::{Error, Result};
use crate::hypergraph::{Clustering, Hyperedge, LabeledHypergraph};
use crate::metrics::{drcec_objective, ObjectiveBreakdown};
use crate::simplex::Tolerances;
use crate::vote::{exact_ilp, majority_vote, minority_vote_rng, EnumerationBudget, TieBreak};

/// How each step's clustering is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynamicsMethod {
    /// Relax and round.
    LpRound,
    /// Exhaustive optimum, lowest assignment on ties. Desk scale only.
    Exact,
    /// Least-experienced color per node, ties uniformly at random; the
    /// faithful stand-in for the large-weight regime, whose long-run
    /// uniformity needs random tie-breaking.
    Minority,
    /// Most-experienced color per node, ties to the lowest index.
    Majority,
}

#[derive(Debug, Clone)]
pub struct DynamicsConfig {
    pub beta: f64,
    /// Number of most recent steps whose edges form the working hypergraph.
    pub window: usize,
    /// Recorded steps.
    pub steps: usize,
    /// Unrecorded steps run first; defaults to `window`, which is exactly
    /// enough to flush the initial history out of the window.
    pub warm_start: Option<usize>,
    pub method: DynamicsMethod,
    pub seed: u64,
    pub budget: EnumerationBudget,
    pub tol: Tolerances,
}

impl DynamicsConfig {
    pub fn new(beta: f64, window: usize, steps: usize, method: DynamicsMethod, seed: u64) -> Self {
        DynamicsConfig {
            beta,
            window,
            steps,
            warm_start: None,
            method,
            seed,
            budget: EnumerationBudget::default(),
            tol: Tolerances::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.window == 0 {
            return Err(Error::invalid("window must be at least 1"));
        }
        if self.steps == 0 {
            return Err(Error::invalid("need at least 1 recorded step"));
        }
        if !self.beta.is_finite() || self.beta < 0.0 {
            return Err(Error::invalid(format!(
                "beta must be finite and >= 0, got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

/// The sliding history: up to `window` buckets of hyperedges, oldest first.
#[derive(Debug, Clone)]
pub struct HistoryWindow {
    num_nodes: usize,
    colors: Vec<String>,
    window: usize,
    buckets: VecDeque<Vec<Hyperedge>>,
}

impl HistoryWindow {
    /// Treat the given hypergraph's edges as the most recent `window` steps
    /// of history, dealt round-robin with edge 0 landing in the oldest
    /// bucket. The color palette is fixed from `h` for the whole run.
    pub fn from_initial(h: &LabeledHypergraph, window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::invalid("window must be at least 1"));
        }
        let mut buckets: VecDeque<Vec<Hyperedge>> = (0..window).map(|_| Vec::new()).collect();
        for (i, e) in h.edges().iter().enumerate() {
            buckets[i % window].push(e.clone());
        }
        Ok(HistoryWindow {
            num_nodes: h.num_nodes(),
            colors: h.colors().to_vec(),
            window,
            buckets,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_colors(&self) -> usize {
        self.colors.len()
    }

    /// Materialize the window's edges as one hypergraph on the fixed
    /// palette.
    pub fn to_hypergraph(&self) -> LabeledHypergraph {
        let mut h = LabeledHypergraph::new(self.num_nodes, self.colors.clone())
            .expect("palette was validated at construction");
        for bucket in &self.buckets {
            for e in bucket {
                h.add_edge(e.color, e.nodes.clone())
                    .expect("window edges stay valid");
            }
        }
        h
    }

    /// Append the newest bucket and evict the oldest beyond the window.
    fn advance(&mut self, newest: Vec<Hyperedge>) {
        self.buckets.push_back(newest);
        while self.buckets.len() > self.window {
            self.buckets.pop_front();
        }
    }
}

/// One nonempty-cluster hyperedge per color.
fn cluster_edges(c: &Clustering, num_colors: usize) -> Vec<Hyperedge> {
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); num_colors];
    for v in 0..c.num_nodes() {
        members[c.color_of(v)].push(v);
    }
    members
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_empty())
        .map(|(color, nodes)| Hyperedge { color, nodes })
        .collect()
}

/// Run one step: cluster the current window, emit the clusters as the
/// newest history bucket. Functional so callers can fork histories.
pub fn step<R: Rng>(
    window: &HistoryWindow,
    cfg: &DynamicsConfig,
    rng: &mut R,
) -> Result<(Clustering, HistoryWindow)> {
    let wh = window.to_hypergraph();
    let c = match cfg.method {
        DynamicsMethod::LpRound => algorithm1(&wh, cfg.beta, &cfg.tol)?.0,
        DynamicsMethod::Exact => exact_ilp(&wh, cfg.beta, &cfg.budget)?.0,
        DynamicsMethod::Minority => minority_vote_rng(&wh, rng)?,
        DynamicsMethod::Majority => majority_vote(&wh, TieBreak::Deterministic)?,
    };
    let mut next = window.clone();
    next.advance(cluster_edges(&c, window.num_colors()));
    Ok((c, next))
}

/// One recorded step of a run.
#[derive(Debug, Clone)]
pub struct StepRecord {
    pub clustering: Clustering,
    /// Per node, whether the color changed from the previous step.  `None`
    /// only for the very first step of a run with no warm-up.
    pub exchanged: Option<Vec<bool>>,
    /// Objective of this clustering on the window it was computed from.
    pub breakdown: ObjectiveBreakdown,
    /// Mean over nodes of the assignment-share gap through this step.
    pub mean_uniformity_gap: f64,
}

#[derive(Debug, Clone)]
pub struct DynamicsTrace {
    pub num_nodes: usize,
    pub num_colors: usize,
    pub steps: Vec<StepRecord>,
    /// How often each node held each color over the recorded steps.
    pub final_counts: Vec<Vec<u32>>,
}

/// Run warm-up plus `cfg.steps` recorded steps. Deterministic given the
/// config, including its seed.
pub fn run(h: &LabeledHypergraph, cfg: &DynamicsConfig) -> Result<DynamicsTrace> {
    cfg.validate()?;
    let n = h.num_nodes();
    let k = h.num_colors();
    if k == 0 {
        return Err(Error::invalid("cannot run dynamics without colors"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut window = HistoryWindow::from_initial(h, cfg.window)?;
    let mut prev: Option<Clustering> = None;
    for _ in 0..cfg.warm_start.unwrap_or(cfg.window) {
        let (c, next) = step(&window, cfg, &mut rng)?;
        window = next;
        prev = Some(c);
    }
    let mut counts = vec![vec![0u32; k]; n];
    let mut steps = Vec::with_capacity(cfg.steps);
    for t in 1..=cfg.steps {
        let wh = window.to_hypergraph();
        let (c, next) = step(&window, cfg, &mut rng)?;
        window = next;
        let breakdown = drcec_objective(&wh, &c, cfg.beta)?;
        let exchanged = prev
            .as_ref()
            .map(|p| (0..n).map(|v| p.color_of(v) != c.color_of(v)).collect());
        for v in 0..n {
            counts[v][c.color_of(v)] += 1;
        }
        let mean_uniformity_gap = mean_gap(&counts, t);
        prev = Some(c.clone());
        steps.push(StepRecord {
            clustering: c,
            exchanged,
            breakdown,
            mean_uniformity_gap,
        });
    }
    Ok(DynamicsTrace {
        num_nodes: n,
        num_colors: k,
        steps,
        final_counts: counts,
    })
}

fn mean_gap(counts: &[Vec<u32>], t: usize) -> f64 {
    if counts.is_empty() {
        return 0.0;
    }
    let total: f64 = counts
        .iter()
        .map(|row| {
            let max = *row.iter().max().expect("k >= 1") as f64;
            let min = *row.iter().min().expect("k >= 1") as f64;
            (max - min) / t as f64
        })
        .sum();
    total / counts.len() as f64
}

/// Per-node spread of assignment shares at the end of the recorded run:
/// `max_c counts[v][c]/T - min_c counts[v][c]/T`. Zero means the node's
/// history is perfectly uniform across colors.
pub fn uniformity_gap(trace: &DynamicsTrace) -> Vec<f64> {
    let t = trace.steps.len().max(1);
    trace
        .final_counts
        .iter()
        .map(|row| {
            let max = *row.iter().max().unwrap_or(&0) as f64;
            let min = *row.iter().min().unwrap_or(&0) as f64;
            (max - min) / t as f64
        })
        .collect()
}

/// Fraction of (step, node) pairs where the node changed color, over the
/// recorded steps that have a predecessor.
pub fn mean_exchanges(trace: &DynamicsTrace) -> Result<f64> {
    if trace.steps.len() < 2 {
        return Err(Error::invalid("need at least 2 recorded steps"));
    }
    let mut flips = 0usize;
    let mut total = 0usize;
    for s in &trace.steps {
        if let Some(flags) = &s.exchanged {
            flips += flags.iter().filter(|&&f| f).count();
            total += flags.len();
        }
    }
    if total == 0 {
        return Err(Error::invalid("no step has a predecessor to compare with"));
    }
    Ok(flips as f64 / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(beta: f64, window: usize, steps: usize, method: DynamicsMethod) -> DynamicsConfig {
        DynamicsConfig::new(beta, window, steps, method, 7)
    }

    #[test]
    fn single_node_alternates_at_large_weight() {
        let h = LabeledHypergraph::parse("red 0\nred 0\nblue 0\n").unwrap();
        let trace = run(&h, &cfg(10.0, 1, 50, DynamicsMethod::Minority)).unwrap();
        assert_eq!(mean_exchanges(&trace).unwrap(), 1.0);
        // 50 recorded steps split 25/25, so the share gap closes completely
        assert_eq!(uniformity_gap(&trace), vec![0.0]);
        for w in trace.steps.windows(2) {
            assert_ne!(
                w[0].clustering.color_of(0),
                w[1].clustering.color_of(0),
                "one-step window always flips the single node"
            );
        }
    }

    #[test]
    fn zero_weight_is_static_for_solver_methods() {
        let h = LabeledHypergraph::parse("nodes 3\nred 0 1\nblue 1 2\n").unwrap();
        for method in [DynamicsMethod::Exact, DynamicsMethod::LpRound] {
            let trace = run(&h, &cfg(0.0, 1, 10, method)).unwrap();
            assert_eq!(mean_exchanges(&trace).unwrap(), 0.0, "{method:?}");
            let first = &trace.steps[0].clustering;
            for s in &trace.steps {
                assert_eq!(&s.clustering, first);
            }
        }
    }

    #[test]
    fn majority_settles_after_warm_up() {
        let h = LabeledHypergraph::parse("nodes 3\nred 0 1\nblue 1 2\n").unwrap();
        for beta in [0.0, 1.0, 5.0] {
            let trace = run(&h, &cfg(beta, 2, 10, DynamicsMethod::Majority)).unwrap();
            assert_eq!(mean_exchanges(&trace).unwrap(), 0.0, "beta {beta}");
        }
    }

    #[test]
    fn counts_partition_recorded_steps() {
        let h = LabeledHypergraph::parse("nodes 4\nred 0 1\nblue 2 3\ngreen 0 2\n").unwrap();
        let trace = run(&h, &cfg(4.0, 2, 17, DynamicsMethod::Minority)).unwrap();
        for v in 0..4 {
            let total: u32 = trace.final_counts[v].iter().sum();
            assert_eq!(total, 17);
        }
        assert_eq!(trace.steps.len(), 17);
        for s in &trace.steps {
            assert!(s.exchanged.is_some(), "warm start supplies a predecessor");
        }
    }

    #[test]
    fn identical_seeds_reproduce_identical_traces() {
        let h = LabeledHypergraph::parse("nodes 5\nred 0 1 2\nblue 3 4\nred 1 3\n").unwrap();
        let a = run(&h, &cfg(6.0, 3, 20, DynamicsMethod::Minority)).unwrap();
        let b = run(&h, &cfg(6.0, 3, 20, DynamicsMethod::Minority)).unwrap();
        for (x, y) in a.steps.iter().zip(&b.steps) {
            assert_eq!(x.clustering, y.clustering);
            assert_eq!(x.exchanged, y.exchanged);
        }
        assert_eq!(a.final_counts, b.final_counts);
    }

    #[test]
    fn minority_regime_tracks_window_counts() {
        // beta > w: with the exact solver, every recorded assignment must
        // minimize the node's windowed count
        let h = LabeledHypergraph::parse("nodes 4\nred 0 1\nblue 2 3\ngreen 1 2\n").unwrap();
        let w = 3usize;
        let mut cfg = cfg(w as f64 + 1.0, w, 12, DynamicsMethod::Exact);
        cfg.seed = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut window = HistoryWindow::from_initial(&h, w).unwrap();
        for _ in 0..w {
            let (_, next) = step(&window, &cfg, &mut rng).unwrap();
            window = next;
        }
        for _ in 0..cfg.steps {
            let wh = window.to_hypergraph();
            let (c, next) = step(&window, &cfg, &mut rng).unwrap();
            for v in 0..4 {
                let min = (0..3).map(|col| wh.color_degree(v, col)).min().unwrap();
                assert_eq!(
                    wh.color_degree(v, c.color_of(v)),
                    min,
                    "node {v} left its least-seen colors"
                );
            }
            window = next;
        }
    }

    #[test]
    fn empty_clusters_emit_no_edges() {
        let c = Clustering::new(vec![0, 0, 2], 4).unwrap();
        let edges = cluster_edges(&c, 4);
        assert_eq!(edges.len(), 2);
        assert_eq!(edges[0].color, 0);
        assert_eq!(edges[0].nodes, vec![0, 1]);
        assert_eq!(edges[1].color, 2);
        assert_eq!(edges[1].nodes, vec![2]);
    }

    #[test]
    fn bad_configs_are_rejected() {
        let h = LabeledHypergraph::parse("red 0 1\n").unwrap();
        assert!(run(&h, &cfg(1.0, 0, 5, DynamicsMethod::Minority)).is_err());
        assert!(run(&h, &cfg(1.0, 1, 0, DynamicsMethod::Minority)).is_err());
        assert!(run(&h, &cfg(-1.0, 1, 5, DynamicsMethod::Minority)).is_err());
    }
}
