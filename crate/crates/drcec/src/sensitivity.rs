//! Parametric stability of the relaxation in the weight `beta`.
//!
//! The relaxation's cost vector is `c_e + beta * c_d`, linear in `beta`, so
//! an optimal point `x0` found at some pivot weight `beta0` stays optimal on
//! a whole interval of weights. The largest admissible downward
//! perturbation `theta` is itself the value of a small auxiliary LP over
//! `(y, theta)`, where `y` is a dual vector for the perturbed cost:
//!
//! ```text
//! max theta
//! s.t. A'y <= c - theta * dc      (dual feasibility at the moved cost)
//!      b'y  = (c - theta * dc)'x0 (strong duality pins x0 as an optimum)
//!      y >= 0, 0 <= theta <= cap
//! ```
//!
//! With `dc = c_d` a step `theta` moves the weight from `beta0` down to
//! `beta0 - theta`; with `dc = -c_d` it moves up. Anchoring at
//! `beta0 = d_max + 1`, where the optimum is known to sit on every node's
//! least-experienced colors, the number `beta_hat = beta0 - theta_plus` is
//! the smallest weight at which that solution is still optimal. Results are
//! verified by re-solving just above and just below the reported threshold.

use crate::encode::{solve_relaxation_with_problem, RelaxedSolution};
use crate::error::{Error, Result};
use crate::hypergraph::LabeledHypergraph;
use crate::simplex::{solve, LpProblem, LpStatus, Sense, Tolerances};
use crate::vote::minority_sets;

/// Residuals from the re-solve and dual-certificate checks behind a
/// stability claim. All are on the raw LP cost scale (no constant offset).
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// Step used for the re-solves: `max(1e-6, 1e-4 * beta0)`.
    pub eps: f64,
    /// `|LP(beta_hat + eps) - line_x0(beta_hat + eps)|`; small means x0 is
    /// still optimal just above the threshold.
    pub upper_residual: f64,
    /// `line_x0(beta_hat - eps) - LP(beta_hat - eps)` when `beta_hat > eps`;
    /// strictly positive means x0 really stops being optimal below it.
    pub lower_gap: Option<f64>,
    /// Worst violation of `A'y <= c - theta * dc` by the auxiliary solution.
    pub dual_feasibility_residual: f64,
    /// `|b'y - (c - theta * dc)'x0|` for the auxiliary solution.
    pub dual_value_residual: f64,
}

impl VerifyReport {
    pub const UPPER_TOL: f64 = 1e-5;
    pub const LOWER_MIN_GAP: f64 = 1e-7;
    pub const DUAL_TOL: f64 = 1e-6;

    pub fn ok(&self) -> bool {
        self.upper_residual <= Self::UPPER_TOL
            && self.lower_gap.is_none_or(|g| g > Self::LOWER_MIN_GAP)
            && self.dual_feasibility_residual <= Self::DUAL_TOL
            && self.dual_value_residual <= Self::DUAL_TOL
    }
}

/// Outcome of the threshold computation.
#[derive(Debug, Clone)]
pub struct StabilityResult {
    pub beta0: f64,
    /// The relaxation's solution at `beta0`, whose stability is certified.
    pub x0: RelaxedSolution,
    pub theta_plus: f64,
    /// `beta0 - theta_plus`, clamped at zero.
    pub beta_hat: f64,
    /// Set when `theta_plus` hit its cap, i.e. x0 stays optimal down to
    /// weight zero.
    pub clamped: bool,
    /// True when every node has a single least-experienced color. Only then
    /// does `beta_hat` also bound the integral threshold from above.
    pub minority_unique: bool,
    pub verification: VerifyReport,
}

/// Build the auxiliary LP over `(y, theta)` for base problem `p`, cost
/// perturbation direction `dc` and certified point `x0`. Requires `p` in
/// all-`>=` form so its duals are sign-constrained. `cap` bounds `theta`
/// from above; `None` leaves it free upward, which makes an unbounded
/// auxiliary LP meaningful (the point stays optimal forever).
pub fn build_aux_lp(
    p: &LpProblem,
    dc: &[f64],
    x0: &[f64],
    cap: Option<f64>,
) -> Result<LpProblem> {
    let m = p.rows.len();
    let n = p.num_vars;
    if dc.len() != n || x0.len() != n {
        return Err(Error::invalid(format!(
            "aux LP dimension mismatch: problem has {n} vars, dc has {}, x0 has {}",
            dc.len(),
            x0.len()
        )));
    }
    if p.rows.iter().any(|r| r.sense != Sense::Ge) {
        return Err(Error::invalid(
            "aux LP needs an all->= base problem; an equality row would free its dual's sign",
        ));
    }
    let vars = m + 1;
    let theta = m;
    let mut cost = vec![0.0; vars];
    cost[theta] = -1.0;
    let mut aux = LpProblem::new(vars, cost);
    // dual feasibility, one row per base column
    for (j, &dcj) in dc.iter().enumerate().take(n) {
        let mut row = vec![0.0; vars];
        for (i, r) in p.rows.iter().enumerate() {
            row[i] = -r.coeffs[j];
        }
        row[theta] = -dcj;
        aux.push_row(row, Sense::Ge, -p.cost[j]);
    }
    // strong duality at the perturbed cost
    let mut eq = vec![0.0; vars];
    for (i, r) in p.rows.iter().enumerate() {
        eq[i] = r.rhs;
    }
    let dc_x0: f64 = dc.iter().zip(x0).map(|(d, x)| d * x).sum();
    let c_x0: f64 = p.cost.iter().zip(x0).map(|(c, x)| c * x).sum();
    eq[theta] = dc_x0;
    aux.push_row(eq, Sense::Eq, c_x0);
    if let Some(cap) = cap {
        let mut row = vec![0.0; vars];
        row[theta] = -1.0;
        aux.push_row(row, Sense::Ge, -cap);
    }
    Ok(aux)
}

struct AuxOutcome {
    theta: f64,
    feas_residual: f64,
    value_residual: f64,
}

/// Solve the auxiliary LP and report `theta` plus certificate residuals.
/// `None` means unbounded (only possible with no cap).
fn solve_aux(
    p: &LpProblem,
    dc: &[f64],
    x0: &[f64],
    cap: Option<f64>,
    tol: &Tolerances,
    context: &str,
) -> Result<Option<AuxOutcome>> {
    let aux = build_aux_lp(p, dc, x0, cap)?;
    let sol = solve(&aux, tol)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Unbounded if cap.is_none() => return Ok(None),
        other => {
            return Err(Error::Solver(format!(
                "auxiliary LP {context} reported {other:?}; the base point failed to \
                 certify as optimal, which indicates accumulated solver error"
            )));
        }
    }
    let theta = (-sol.objective).max(0.0);
    let m = p.rows.len();
    let y = &sol.x[..m];
    let mut feas = 0.0f64;
    for (j, &dcj) in dc.iter().enumerate().take(p.num_vars) {
        let aty: f64 = p.rows.iter().enumerate().map(|(i, r)| r.coeffs[j] * y[i]).sum();
        feas = feas.max(aty - (p.cost[j] - theta * dcj));
    }
    let by: f64 = p.rows.iter().enumerate().map(|(i, r)| r.rhs * y[i]).sum();
    let cx: f64 = p
        .cost
        .iter()
        .zip(dc)
        .zip(x0)
        .map(|((c, d), x)| (c - theta * d) * x)
        .sum();
    Ok(Some(AuxOutcome {
        theta,
        feas_residual: feas,
        value_residual: (by - cx).abs(),
    }))
}

// Relative slack under the cap below which theta counts as capped.
const CLAMP_EPS: f64 = 1e-9;

/// Smallest weight at which the solution found at `beta0` (default
/// `d_max + 1`) remains optimal for the relaxation, with re-solve
/// verification. At the default pivot the certified point sits on every
/// node's least-experienced colors, so this is the full stability range of
/// the diversity-dominant regime.
pub fn beta_hat(
    h: &LabeledHypergraph,
    beta0: Option<f64>,
    tol: &Tolerances,
) -> Result<StabilityResult> {
    let beta0 = beta0.unwrap_or_else(|| f64::from(h.max_total_degree()) + 1.0);
    if !beta0.is_finite() || beta0 <= 0.0 {
        return Err(Error::invalid(format!(
            "pivot weight must be finite and positive, got {beta0}"
        )));
    }
    let (p, x0) = solve_relaxation_with_problem(h, beta0, tol)?;
    let aux = solve_aux(&p, &x0.encoding.c_d, &x0.x, Some(beta0), tol, "(downward)")?
        .expect("capped aux LP cannot be unbounded");
    let clamped = aux.theta >= beta0 * (1.0 - CLAMP_EPS);
    let theta_plus = if clamped { beta0 } else { aux.theta };
    let hat = if clamped { 0.0 } else { beta0 - aux.theta };

    let eps = (1e-4 * beta0).max(1e-6);
    let line = |beta: f64| x0.encoding.raw_objective(&x0.x, beta);
    let up = solve_relaxation_with_problem(h, hat + eps, tol)?.1;
    let upper_residual = (up.raw_objective - line(hat + eps)).abs();
    let lower_gap = if hat > eps {
        let down = solve_relaxation_with_problem(h, hat - eps, tol)?.1;
        Some(line(hat - eps) - down.raw_objective)
    } else {
        None
    };

    Ok(StabilityResult {
        beta0,
        theta_plus,
        beta_hat: hat,
        clamped,
        minority_unique: minority_sets(h).all_unique(),
        verification: VerifyReport {
            eps,
            upper_residual,
            lower_gap,
            dual_feasibility_residual: aux.feas_residual,
            dual_value_residual: aux.value_residual,
        },
        x0,
    })
}

/// The maximal weight interval over which the relaxation's solution at
/// `beta` stays optimal. The upper end is `f64::INFINITY` when the point
/// never stops being optimal (always the case past the minority threshold).
pub fn stability_interval(
    h: &LabeledHypergraph,
    beta: f64,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    let (p, sol) = solve_relaxation_with_problem(h, beta, tol)?;
    let c_d = sol.encoding.c_d.clone();
    let down = solve_aux(&p, &c_d, &sol.x, Some(beta), tol, "(downward)")?
        .expect("capped aux LP cannot be unbounded");
    let lo = if down.theta >= beta * (1.0 - CLAMP_EPS) {
        0.0
    } else {
        beta - down.theta
    };
    let neg_c_d: Vec<f64> = c_d.iter().map(|v| -v).collect();
    let hi = match solve_aux(&p, &neg_c_d, &sol.x, None, tol, "(upward)")? {
        None => f64::INFINITY,
        Some(up) => beta + up.theta,
    };
    Ok((lo, hi))
}
