//! LP relaxation of the clustering objective and its rounding.
//!
//! For `n` nodes, `k` colors and edges `e` with color `l(e)`, the integer
//! program minimizes
//!
//! ```text
//! sum_e x_e + beta * sum_v sum_c d[v][c] * (1 - x[v][c])
//! ```
//!
//! over binary variables where `x[v][c] = 0` exactly when `v` takes color
//! `c` (each node zeroes exactly one color) and `x_e = 1` when edge `e` is
//! broken. The relaxation drops integrality. The encoding here is literal:
//! variables are the `n*k` node-color entries followed by the edge entries,
//! and every constraint is a `>=` row, including the per-node assignment
//! equality (split into two rows) and the `x <= 1` bounds. Keeping the whole
//! system in `Ax >= b, x >= 0` form is what lets the sensitivity analysis
//! use sign-constrained duals throughout.
//!
//! Rounding assigns each node to a color of minimum relaxed value. The
//! rounded cost is never more than twice the relaxation's, which sandwiches
//! the integer optimum between them.

use crate::error::{Error, Result};
use crate::hypergraph::{Clustering, LabeledHypergraph};
use crate::metrics::{drcec_objective, ObjectiveBreakdown};
use crate::simplex::{check_kkt, solve, LpProblem, LpStatus, Sense, Tolerances};

/// Column layout and cost split of one encoded instance. The full cost at
/// weight `beta` is `c_e + beta * c_d`, and adding `beta * const_offset`
/// converts LP values to clustering-objective values.
#[derive(Debug, Clone)]
pub struct DrcecEncoding {
    num_nodes: usize,
    num_colors: usize,
    num_edges: usize,
    pub c_e: Vec<f64>,
    pub c_d: Vec<f64>,
    pub const_offset: f64,
}

impl DrcecEncoding {
    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_cols(&self) -> usize {
        self.num_nodes * self.num_colors + self.num_edges
    }

    /// Column of the node-color variable `x[v][c]`.
    pub fn node_col(&self, v: usize, c: usize) -> usize {
        v * self.num_colors + c
    }

    /// Column of the edge variable `x_e`.
    pub fn edge_col(&self, e: usize) -> usize {
        self.num_nodes * self.num_colors + e
    }

    pub fn cost_at(&self, beta: f64) -> Vec<f64> {
        self.c_e
            .iter()
            .zip(&self.c_d)
            .map(|(e, d)| e + beta * d)
            .collect()
    }

    /// `(c_e + beta c_d)' x`, the bare LP objective.
    pub fn raw_objective(&self, x: &[f64], beta: f64) -> f64 {
        let ce: f64 = self.c_e.iter().zip(x).map(|(c, v)| c * v).sum();
        let cd: f64 = self.c_d.iter().zip(x).map(|(c, v)| c * v).sum();
        ce + beta * cd
    }

    /// LP objective shifted onto the clustering-objective scale.
    pub fn objective_with_offset(&self, x: &[f64], beta: f64) -> f64 {
        self.raw_objective(x, beta) + beta * self.const_offset
    }

    /// The 0/1 point corresponding to a clustering: assigned colors get
    /// `x[v][c] = 0`, broken edges get `x_e = 1`.
    pub fn clustering_vector(&self, h: &LabeledHypergraph, c: &Clustering) -> Vec<f64> {
        let mut x = vec![0.0; self.num_cols()];
        for v in 0..self.num_nodes {
            for col in 0..self.num_colors {
                x[self.node_col(v, col)] = if c.color_of(v) == col { 0.0 } else { 1.0 };
            }
        }
        for (e, edge) in h.edges().iter().enumerate() {
            let broken = edge.nodes.iter().any(|&v| c.color_of(v) != edge.color);
            x[self.edge_col(e)] = if broken { 1.0 } else { 0.0 };
        }
        x
    }
}

/// Build the relaxation at weight `beta`. Requires at least one color.
pub fn encode(h: &LabeledHypergraph, beta: f64) -> Result<(LpProblem, DrcecEncoding)> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::invalid(format!("beta must be finite and >= 0, got {beta}")));
    }
    let n = h.num_nodes();
    let k = h.num_colors();
    if k == 0 {
        return Err(Error::invalid("cannot encode: hypergraph has no colors"));
    }
    let num_cols = n * k + h.num_edges();
    let mut enc = DrcecEncoding {
        num_nodes: n,
        num_colors: k,
        num_edges: h.num_edges(),
        c_e: vec![0.0; num_cols],
        c_d: vec![0.0; num_cols],
        const_offset: 0.0,
    };
    let mut offset = 0u64;
    for v in 0..n {
        for c in 0..k {
            let d = h.color_degree(v, c);
            offset += u64::from(d);
            let col = enc.node_col(v, c);
            enc.c_d[col] = -f64::from(d);
        }
    }
    for e in 0..h.num_edges() {
        let col = enc.edge_col(e);
        enc.c_e[col] = 1.0;
    }
    enc.const_offset = offset as f64;

    let mut p = LpProblem::new(num_cols, enc.cost_at(beta));

    // Assignment equality per node, split so the whole system is >= rows.
    for v in 0..n {
        let mut up = vec![0.0; num_cols];
        for c in 0..k {
            up[enc.node_col(v, c)] = 1.0;
        }
        let mut down: Vec<f64> = up.iter().map(|a| -a).collect();
        let rhs = (k - 1) as f64;
        p.push_row(std::mem::take(&mut up), Sense::Ge, rhs);
        p.push_row(std::mem::take(&mut down), Sense::Ge, -rhs);
    }
    // Edge coupling: a broken node forces the edge variable up.
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in &edge.nodes {
            let mut row = vec![0.0; num_cols];
            row[enc.edge_col(e)] = 1.0;
            row[enc.node_col(v, edge.color)] = -1.0;
            p.push_row(row, Sense::Ge, 0.0);
        }
    }
    // Upper bounds on every column.
    for j in 0..num_cols {
        let mut row = vec![0.0; num_cols];
        row[j] = -1.0;
        p.push_row(row, Sense::Ge, -1.0);
    }

    Ok((p, enc))
}

/// An optimal basic solution of the relaxation.
#[derive(Debug, Clone)]
pub struct RelaxedSolution {
    pub beta: f64,
    pub x: Vec<f64>,
    pub duals: Vec<f64>,
    pub raw_objective: f64,
    pub objective_with_offset: f64,
    pub encoding: DrcecEncoding,
}

impl RelaxedSolution {
    pub fn node_value(&self, v: usize, c: usize) -> f64 {
        self.x[self.encoding.node_col(v, c)]
    }

    pub fn edge_value(&self, e: usize) -> f64 {
        self.x[self.encoding.edge_col(e)]
    }

    /// True when every coordinate is within `tol` of 0 or 1.
    pub fn is_integral(&self, tol: f64) -> bool {
        self.x
            .iter()
            .all(|&v| v.abs() <= tol || (v - 1.0).abs() <= tol)
    }
}

/// Solve the relaxation at `beta`. The encoded polytope is never empty
/// (spreading every node uniformly and breaking every edge is feasible) and
/// the box rows bound it, so anything but an optimal, certificate-clean
/// answer is reported as a solver failure.
pub fn solve_relaxation(
    h: &LabeledHypergraph,
    beta: f64,
    tol: &Tolerances,
) -> Result<RelaxedSolution> {
    Ok(solve_relaxation_with_problem(h, beta, tol)?.1)
}

/// As `solve_relaxation`, but also hands back the encoded problem so callers
/// that keep perturbing it (the stability analysis) avoid a second encode.
pub fn solve_relaxation_with_problem(
    h: &LabeledHypergraph,
    beta: f64,
    tol: &Tolerances,
) -> Result<(LpProblem, RelaxedSolution)> {
    let (p, enc) = encode(h, beta)?;
    let sol = solve(&p, tol)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solver(format!(
            "relaxation at beta = {beta} reported {:?}; the encoded polytope is \
             nonempty and bounded, so this is a solver defect",
            sol.status
        )));
    }
    let report = check_kkt(&p, &sol, tol)?;
    if !report.passes(tol) {
        return Err(Error::Solver(format!(
            "relaxation at beta = {beta} failed its certificate: {report:?}"
        )));
    }
    let raw = sol.objective;
    let relaxed = RelaxedSolution {
        beta,
        raw_objective: raw,
        objective_with_offset: raw + beta * enc.const_offset,
        x: sol.x,
        duals: sol.duals,
        encoding: enc,
    };
    Ok((p, relaxed))
}

// Ties within this distance of the minimum round to the lowest color index.
const ROUND_TIE_EPS: f64 = 1e-9;

/// Round a relaxed solution: each node takes a color of minimum relaxed
/// value, lowest index on ties.
pub fn round(sol: &RelaxedSolution, h: &LabeledHypergraph) -> Result<Clustering> {
    let n = sol.encoding.num_nodes();
    let k = sol.encoding.num_colors();
    if h.num_nodes() != n || h.num_colors() != k {
        return Err(Error::invalid("relaxed solution does not match hypergraph"));
    }
    let mut assignment = Vec::with_capacity(n);
    for v in 0..n {
        let mut best = 0usize;
        let mut best_val = sol.node_value(v, 0);
        for c in 1..k {
            let val = sol.node_value(v, c);
            if val < best_val - ROUND_TIE_EPS {
                best = c;
                best_val = val;
            }
        }
        assignment.push(best);
    }
    Clustering::new(assignment, k)
}

/// Relax, round, and score: the standard approximate pipeline. Returns the
/// rounded clustering, its exact objective, and the relaxation behind it.
pub fn algorithm1(
    h: &LabeledHypergraph,
    beta: f64,
    tol: &Tolerances,
) -> Result<(Clustering, ObjectiveBreakdown, RelaxedSolution)> {
    let sol = solve_relaxation(h, beta, tol)?;
    let c = round(&sol, h)?;
    let breakdown = drcec_objective(h, &c, beta)?;
    Ok((c, breakdown, sol))
}
