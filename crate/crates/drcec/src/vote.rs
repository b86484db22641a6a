//! Closed-form vote clusterings and the exhaustive reference solver.
//!
//! Majority and minority vote assign each node independently by its color
//! degrees. They are the exact optimizers of the naive score in its two
//! regimes: a node assigned color c contributes `d[v][c] + beta * (d(v) -
//! d[v][c])`, which rearranges to `beta * d(v) + (1 - beta) * d[v][c]`, so
//! the best choice per node is the most experienced color for `beta < 1` and
//! the least experienced one for `beta > 1`; at `beta = 1` every assignment
//! scores the same.
//!
//! The exhaustive solver enumerates all `k^n` assignments and is the ground
//! truth the rest of the crate is tested against. It refuses instances over
//! a configurable budget rather than silently grinding.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Clustering, LabeledHypergraph};
use crate::metrics::{drcec_objective, ObjectiveBreakdown};

/// How a vote resolves ties between equally good colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Lowest color index wins. The default everywhere.
    Deterministic,
    /// Uniform choice among the tied colors, from a fresh stream seeded with
    /// the given value; the same seed always reproduces the same clustering.
    SeededRandom(u64),
}

fn vote_with<R: Rng>(
    h: &LabeledHypergraph,
    want_max: bool,
    rng: Option<&mut R>,
) -> Result<Clustering> {
    let k = h.num_colors();
    if k == 0 && h.num_nodes() > 0 {
        return Err(Error::invalid("cannot cluster: hypergraph has no colors"));
    }
    let mut rng = rng;
    let mut assignment = Vec::with_capacity(h.num_nodes());
    let mut tied = Vec::new();
    for v in 0..h.num_nodes() {
        let degrees = h.color_degrees(v);
        let best = if want_max {
            *degrees.iter().max().unwrap()
        } else {
            *degrees.iter().min().unwrap()
        };
        tied.clear();
        tied.extend(
            degrees
                .iter()
                .enumerate()
                .filter(|(_, &d)| d == best)
                .map(|(c, _)| c),
        );
        let choice = match rng.as_deref_mut() {
            Some(r) => tied[r.random_range(0..tied.len())],
            None => tied[0],
        };
        assignment.push(choice);
    }
    Ok(Clustering::from_raw(assignment))
}

fn run_vote(h: &LabeledHypergraph, want_max: bool, tie: TieBreak) -> Result<Clustering> {
    match tie {
        TieBreak::Deterministic => vote_with::<ChaCha8Rng>(h, want_max, None),
        TieBreak::SeededRandom(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            vote_with(h, want_max, Some(&mut rng))
        }
    }
}

/// Assign every node to its most experienced color.
pub fn majority_vote(h: &LabeledHypergraph, tie: TieBreak) -> Result<Clustering> {
    run_vote(h, true, tie)
}

/// Assign every node to its least experienced color.
pub fn minority_vote(h: &LabeledHypergraph, tie: TieBreak) -> Result<Clustering> {
    run_vote(h, false, tie)
}

/// Majority vote drawing tie decisions from a caller-owned stream; used by
/// the dynamics loop where draws must advance across steps.
pub fn majority_vote_rng<R: Rng>(h: &LabeledHypergraph, rng: &mut R) -> Result<Clustering> {
    vote_with(h, true, Some(rng))
}

/// Minority vote drawing tie decisions from a caller-owned stream.
pub fn minority_vote_rng<R: Rng>(h: &LabeledHypergraph, rng: &mut R) -> Result<Clustering> {
    vote_with(h, false, Some(rng))
}

/// A maximizer of the naive score at the given weight: majority vote below
/// the transition at `beta = 1`, minority vote above it. At exactly 1 all
/// clusterings tie and the majority clustering is returned.
pub fn naive_optimum(h: &LabeledHypergraph, beta: f64, tie: TieBreak) -> Result<Clustering> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::invalid(format!("beta must be finite and >= 0, got {beta}")));
    }
    if beta > 1.0 {
        minority_vote(h, tie)
    } else {
        majority_vote(h, tie)
    }
}

/// Per-node sets of least experienced colors, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinoritySets {
    sets: Vec<Vec<usize>>,
}

impl MinoritySets {
    pub fn set(&self, v: usize) -> &[usize] {
        &self.sets[v]
    }

    pub fn contains(&self, v: usize, color: usize) -> bool {
        self.sets[v].binary_search(&color).is_ok()
    }

    /// True when every node has a unique least experienced color, i.e. the
    /// minority clustering is tie-free.
    pub fn all_unique(&self) -> bool {
        self.sets.iter().all(|s| s.len() == 1)
    }
}

pub fn minority_sets(h: &LabeledHypergraph) -> MinoritySets {
    let sets = (0..h.num_nodes())
        .map(|v| {
            let degrees = h.color_degrees(v);
            let min = degrees.iter().min().copied().unwrap_or(0);
            degrees
                .iter()
                .enumerate()
                .filter(|(_, &d)| d == min)
                .map(|(c, _)| c)
                .collect()
        })
        .collect();
    MinoritySets { sets }
}

/// Caps on exhaustive enumeration. Both limits apply.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationBudget {
    pub node_cap: usize,
    pub max_evals: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { node_cap: 12, max_evals: 1 << 24 }
    }
}

/// Number of assignments exhaustive search would visit, or a budget error.
pub fn enumeration_size(h: &LabeledHypergraph, budget: &EnumerationBudget) -> Result<u64> {
    let n = h.num_nodes();
    let k = h.num_colors();
    if k == 0 && n > 0 {
        return Err(Error::invalid("cannot enumerate clusterings: hypergraph has no colors"));
    }
    if n > budget.node_cap {
        return Err(Error::BudgetExceeded(format!(
            "{n} nodes exceeds node cap {}",
            budget.node_cap
        )));
    }
    let evals = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if evals > u128::from(budget.max_evals) {
        return Err(Error::BudgetExceeded(format!(
            "{k}^{n} = {evals} assignments exceeds cap {}",
            budget.max_evals
        )));
    }
    Ok(evals as u64)
}

/// Visit every assignment in lexicographic order (node 0 most significant,
/// colors ascending).
pub fn for_each_assignment(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut a = vec![0usize; n];
    loop {
        f(&a);
        // odometer increment from the least significant digit
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < k {
                break;
            }
            a[i] = 0;
        }
    }
}

/// True optimum of the edge-violation objective by exhaustive search. Ties
/// resolve to the lexicographically smallest assignment, which makes the
/// result deterministic and order-independent.
pub fn exact_ilp(
    h: &LabeledHypergraph,
    beta: f64,
    budget: &EnumerationBudget,
) -> Result<(Clustering, ObjectiveBreakdown)> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::invalid(format!("beta must be finite and >= 0, got {beta}")));
    }
    enumeration_size(h, budget)?;
    let mut best: Option<(Vec<usize>, ObjectiveBreakdown)> = None;
    for_each_assignment(h.num_nodes(), h.num_colors(), |a| {
        let c = Clustering::from_raw(a.to_vec());
        let b = drcec_objective(h, &c, beta).expect("dimensions match");
        let better = match &best {
            None => true,
            Some((_, cur)) => b.total < cur.total,
        };
        if better {
            best = Some((a.to_vec(), b));
        }
    });
    // n == 0 yields the single empty assignment; n > 0 with k >= 1 always
    // yields at least one candidate.
    let (a, b) = best.expect("at least one assignment enumerated");
    Ok((Clustering::from_raw(a), b))
}

/// All minimizers of the edge-violation count (the optima at `beta = 0`), in
/// lexicographic order.
pub fn x0_set(h: &LabeledHypergraph, budget: &EnumerationBudget) -> Result<Vec<Clustering>> {
    enumeration_size(h, budget)?;
    let mut best_cost = u64::MAX;
    let mut out: Vec<Clustering> = Vec::new();
    for_each_assignment(h.num_nodes(), h.num_colors(), |a| {
        let c = Clustering::from_raw(a.to_vec());
        let cost = drcec_objective(h, &c, 0.0).expect("dimensions match").edge_cost;
        if cost < best_cost {
            best_cost = cost;
            out.clear();
        }
        if cost == best_cost {
            out.push(c);
        }
    });
    Ok(out)
}

/// Smallest weight forcing node `v` to abandon the zero-weight optimum
/// `x_ce`: `d(v) / delta` where `delta` is the largest experience saving any
/// non-optimal assignment offers `v`. `None` when no saving exists (isolated
/// or degree-flat nodes, or when every assignment is optimal).
pub fn deviation_threshold(
    h: &LabeledHypergraph,
    v: usize,
    x_ce: &Clustering,
    budget: &EnumerationBudget,
) -> Result<Option<f64>> {
    if v >= h.num_nodes() {
        return Err(Error::invalid(format!(
            "node {v} out of range (n = {})",
            h.num_nodes()
        )));
    }
    enumeration_size(h, budget)?;
    let base_cost = drcec_objective(h, x_ce, 0.0)?.edge_cost;
    let n = h.num_nodes();
    let k = h.num_colors();

    let mut opt_cost = u64::MAX;
    for_each_assignment(n, k, |a| {
        let c = Clustering::from_raw(a.to_vec());
        let cost = drcec_objective(h, &c, 0.0).expect("dimensions match").edge_cost;
        opt_cost = opt_cost.min(cost);
    });
    if base_cost != opt_cost {
        return Err(Error::invalid(format!(
            "x_ce is not optimal at beta = 0 (cost {base_cost}, optimum {opt_cost})"
        )));
    }

    // Least in-color degree v can reach in any assignment outside the
    // zero-weight optimum set.
    let mut min_off: Option<u32> = None;
    for_each_assignment(n, k, |a| {
        let c = Clustering::from_raw(a.to_vec());
        let cost = drcec_objective(h, &c, 0.0).expect("dimensions match").edge_cost;
        if cost > opt_cost {
            let dv = h.color_degree(v, a[v]);
            min_off = Some(min_off.map_or(dv, |m| m.min(dv)));
        }
    });

    let Some(min_off) = min_off else {
        return Ok(None); // every assignment is optimal, nothing to deviate to
    };
    let here = h.color_degree(v, x_ce.color_of(v));
    if here <= min_off {
        return Ok(None);
    }
    let delta = f64::from(here - min_off);
    Ok(Some(f64::from(h.total_degree(v)) / delta))
}
