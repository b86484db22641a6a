//! Dense two-phase primal simplex over problems of the form
//!
//! ```text
//! minimize    c'x
//! subject to  a_i'x >= b_i   or   a_i'x = b_i
//!             x >= 0
//! ```
//!
//! Solutions carry one dual multiplier per row, read off the final basis, so
//! optimality can be certified externally through [`check_kkt`] without
//! trusting the pivot path. Inequality duals come out nonnegative at
//! optimality; equality duals are free.
//!
//! Pivoting uses Dantzig's rule until the iteration stalls on degenerate
//! steps, then switches to Bland's rule, which cannot cycle. Everything is
//! deterministic: the same problem always takes the same pivot path.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub coeffs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub num_vars: usize,
    pub cost: Vec<f64>,
    pub rows: Vec<LpRow>,
}

impl LpProblem {
    pub fn new(num_vars: usize, cost: Vec<f64>) -> Self {
        LpProblem { num_vars, cost, rows: Vec::new() }
    }

    pub fn push_row(&mut self, coeffs: Vec<f64>, sense: Sense, rhs: f64) {
        self.rows.push(LpRow { coeffs, sense, rhs });
    }

    fn validate(&self) -> Result<()> {
        if self.cost.len() != self.num_vars {
            return Err(Error::invalid(format!(
                "cost vector has {} entries for {} variables",
                self.cost.len(),
                self.num_vars
            )));
        }
        if self.cost.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("non-finite cost coefficient"));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.coeffs.len() != self.num_vars {
                return Err(Error::invalid(format!(
                    "row {i} has {} coefficients for {} variables",
                    row.coeffs.len(),
                    self.num_vars
                )));
            }
            if row.coeffs.iter().any(|v| !v.is_finite()) || !row.rhs.is_finite() {
                return Err(Error::invalid(format!("non-finite data in row {i}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Basic solution returned by [`solve`]. `x` and `duals` are meaningful only
/// when `status` is `Optimal`; `duals[i]` belongs to row `i` of the problem.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    pub duals: Vec<f64>,
}

/// Numerical tolerances shared across the crate. `feas` bounds constraint
/// violations, `gap` bounds duality gaps and complementary slackness, and
/// `integrality` decides when a relaxation value counts as 0/1.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub feas: f64,
    pub gap: f64,
    pub integrality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { feas: 1e-7, gap: 1e-6, integrality: 1e-6 }
    }
}

// Pivot-selection thresholds, independent of the user-facing tolerances.
const PIVOT_EPS: f64 = 1e-9;
const SNAP_EPS: f64 = 1e-12;
// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const STALL_LIMIT: u32 = 64;

struct Tableau {
    m: usize,
    cols: usize,
    a: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    z: Vec<f64>,
    allowed: Vec<bool>,
    bland: bool,
    stall: u32,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn entering(&self) -> Option<usize> {
        if self.bland {
            (0..self.cols).find(|&j| self.allowed[j] && self.z[j] < -PIVOT_EPS)
        } else {
            let mut best: Option<(usize, f64)> = None;
            for j in 0..self.cols {
                if self.allowed[j] && self.z[j] < -PIVOT_EPS
                    && best.is_none_or(|(_, zb)| self.z[j] < zb) {
                        best = Some((j, self.z[j]));
                    }
            }
            best.map(|(j, _)| j)
        }
    }

    fn leaving(&self, j: usize) -> Option<usize> {
        let mut pick: Option<(usize, f64)> = None;
        for r in 0..self.m {
            let a = self.a[r][j];
            if a > PIVOT_EPS {
                let ratio = self.rhs[r] / a;
                let better = match pick {
                    None => true,
                    Some((pr, pratio)) => {
                        ratio < pratio - PIVOT_EPS
                            || (ratio <= pratio + PIVOT_EPS && self.basis[r] < self.basis[pr])
                    }
                };
                if better {
                    pick = Some((r, ratio));
                }
            }
        }
        pick.map(|(r, _)| r)
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let theta = self.rhs[r] / self.a[r][j];
        if theta.abs() <= SNAP_EPS {
            self.stall += 1;
            if self.stall > STALL_LIMIT {
                self.bland = true;
            }
        } else {
            self.stall = 0;
        }

        let inv = 1.0 / self.a[r][j];
        for v in self.a[r].iter_mut() {
            *v *= inv;
        }
        self.rhs[r] *= inv;
        self.a[r][j] = 1.0; // exact after normalization

        for r2 in 0..self.m {
            if r2 == r {
                continue;
            }
            let f = self.a[r2][j];
            if f != 0.0 {
                for col in 0..self.cols {
                    let v = self.a[r2][col] - f * self.a[r][col];
                    self.a[r2][col] = if v.abs() < SNAP_EPS { 0.0 } else { v };
                }
                self.a[r2][j] = 0.0;
                self.rhs[r2] -= f * self.rhs[r];
                if self.rhs[r2].abs() < SNAP_EPS {
                    self.rhs[r2] = 0.0;
                }
            }
        }
        let f = self.z[j];
        if f != 0.0 {
            for col in 0..self.cols {
                let v = self.z[col] - f * self.a[r][col];
                self.z[col] = if v.abs() < SNAP_EPS { 0.0 } else { v };
            }
            self.z[j] = 0.0;
        }
        self.basis[r] = j;
    }

    fn step(&mut self) -> Step {
        match self.entering() {
            None => Step::Optimal,
            Some(j) => match self.leaving(j) {
                None => Step::Unbounded,
                Some(r) => {
                    self.pivot(r, j);
                    Step::Pivoted
                }
            },
        }
    }

    /// Rebuild the reduced-cost row for the phase cost `c` (full column
    /// space) from the current basis.
    fn reset_objective(&mut self, c: &[f64]) {
        self.z.copy_from_slice(c);
        for r in 0..self.m {
            let cb = c[self.basis[r]];
            if cb != 0.0 {
                for col in 0..self.cols {
                    self.z[col] -= cb * self.a[r][col];
                }
            }
        }
        // basic columns are exactly zero by construction
        for r in 0..self.m {
            self.z[self.basis[r]] = 0.0;
        }
    }
}

/// Solve the problem, returning a basic optimal solution with duals, or the
/// `Infeasible`/`Unbounded` status. Errors are reserved for malformed input
/// and iteration-limit blowups.
pub fn solve(p: &LpProblem, tol: &Tolerances) -> Result<LpSolution> {
    p.validate()?;
    let n = p.num_vars;
    let m = p.rows.len();

    // Normalized row data: flip rows with negative rhs so every basic
    // solution starts feasible for phase 1.
    let mut flip = vec![false; m];
    let mut aux_col = vec![0usize; m]; // slack or surplus column
    let mut aux_sign = vec![0f64; m];
    let mut art_col = vec![usize::MAX; m];

    let mut num_aux = 0usize;
    let mut num_art = 0usize;
    for (i, row) in p.rows.iter().enumerate() {
        flip[i] = row.rhs < 0.0;
        let ge = row.sense == Sense::Ge;
        match (ge, flip[i]) {
            (true, false) => {
                // a'x >= b, b >= 0: surplus plus artificial
                num_aux += 1;
                num_art += 1;
            }
            (true, true) => {
                // flipped to <=: slack only
                num_aux += 1;
            }
            (false, _) => {
                // equality: artificial only
                num_art += 1;
            }
        }
    }

    let cols = n + num_aux + num_art;
    let mut t = Tableau {
        m,
        cols,
        a: vec![vec![0.0; cols]; m],
        rhs: vec![0.0; m],
        basis: vec![0; m],
        z: vec![0.0; cols],
        allowed: vec![true; cols],
        bland: false,
        stall: 0,
    };

    let mut next_aux = n;
    let mut next_art = n + num_aux;
    let mut bmax = 1.0f64;
    for (i, row) in p.rows.iter().enumerate() {
        let s = if flip[i] { -1.0 } else { 1.0 };
        for j in 0..n {
            let v = s * row.coeffs[j];
            t.a[i][j] = if v == 0.0 { 0.0 } else { v };
        }
        t.rhs[i] = s * row.rhs;
        bmax = bmax.max(t.rhs[i]);
        let ge = row.sense == Sense::Ge;
        match (ge, flip[i]) {
            (true, false) => {
                aux_col[i] = next_aux;
                aux_sign[i] = -1.0;
                t.a[i][next_aux] = -1.0;
                next_aux += 1;
                art_col[i] = next_art;
                t.a[i][next_art] = 1.0;
                t.basis[i] = next_art;
                next_art += 1;
            }
            (true, true) => {
                aux_col[i] = next_aux;
                aux_sign[i] = 1.0;
                t.a[i][next_aux] = 1.0;
                t.basis[i] = next_aux;
                next_aux += 1;
            }
            (false, _) => {
                aux_col[i] = usize::MAX;
                art_col[i] = next_art;
                t.a[i][next_art] = 1.0;
                t.basis[i] = next_art;
                next_art += 1;
            }
        }
    }

    let max_iter = 2000 + 200 * (m + n);

    // Phase 1: drive the artificial variables to zero.
    if num_art > 0 {
        let mut phase1_cost = vec![0.0; cols];
        for c in &mut phase1_cost[n + num_aux..] {
            *c = 1.0;
        }
        t.reset_objective(&phase1_cost);
        let mut iters = 0usize;
        loop {
            match t.step() {
                Step::Optimal => break,
                Step::Unbounded => {
                    return Err(Error::Solver(
                        "phase 1 reported an unbounded direction; the auxiliary \
                         objective is bounded below, so the tableau is corrupt"
                            .into(),
                    ));
                }
                Step::Pivoted => {
                    iters += 1;
                    if iters > max_iter {
                        return Err(Error::Solver(format!(
                            "phase 1 exceeded {max_iter} pivots"
                        )));
                    }
                }
            }
        }
        let infeas: f64 = (0..m)
            .filter(|&r| t.basis[r] >= n + num_aux)
            .map(|r| t.rhs[r])
            .sum();
        if infeas > tol.feas * bmax {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: vec![0.0; n],
                objective: f64::NAN,
                duals: vec![0.0; m],
            });
        }
        // Pivot lingering zero-level artificials out where possible; rows
        // with no eligible column are redundant and stay parked.
        for r in 0..m {
            if t.basis[r] >= n + num_aux {
                let mut best: Option<(usize, f64)> = None;
                for j in 0..n + num_aux {
                    let mag = t.a[r][j].abs();
                    if mag > 1e-7 && best.is_none_or(|(_, b)| mag > b) {
                        best = Some((j, mag));
                    }
                }
                if let Some((j, _)) = best {
                    t.pivot(r, j);
                }
            }
        }
    }

    // Phase 2 over the real objective, artificials barred.
    for j in n + num_aux..cols {
        t.allowed[j] = false;
    }
    let mut phase2_cost = vec![0.0; cols];
    phase2_cost[..n].copy_from_slice(&p.cost);
    t.reset_objective(&phase2_cost);
    t.bland = false;
    t.stall = 0;
    let mut iters = 0usize;
    loop {
        match t.step() {
            Step::Optimal => break,
            Step::Unbounded => {
                return Ok(LpSolution {
                    status: LpStatus::Unbounded,
                    x: vec![0.0; n],
                    objective: f64::NEG_INFINITY,
                    duals: vec![0.0; m],
                });
            }
            Step::Pivoted => {
                iters += 1;
                if iters > max_iter {
                    return Err(Error::Solver(format!("phase 2 exceeded {max_iter} pivots")));
                }
            }
        }
    }

    let mut x = vec![0.0; n];
    for r in 0..m {
        if t.basis[r] < n {
            x[t.basis[r]] = t.rhs[r];
        }
    }
    let objective: f64 = p.cost.iter().zip(&x).map(|(c, v)| c * v).sum();

    // Duals via the reduced costs of each row's unit column: an artificial
    // column is the identity column of its row, a slack column likewise.
    // Columns with cost zero give z_j = -y_i (coefficient +1) or +y_i
    // (surplus, coefficient -1); flipped rows change sign once more.
    let mut duals = vec![0.0; m];
    for i in 0..m {
        let y_norm = if art_col[i] != usize::MAX {
            -t.z[art_col[i]]
        } else {
            -t.z[aux_col[i]] * aux_sign[i]
        };
        duals[i] = if flip[i] { -y_norm } else { y_norm };
    }

    Ok(LpSolution { status: LpStatus::Optimal, x, objective, duals })
}

/// Residuals of the optimality conditions for a claimed primal/dual pair.
#[derive(Debug, Clone, Copy)]
pub struct KktReport {
    /// Worst violation of `a_i'x >= b_i` / `a_i'x = b_i` / `x >= 0`.
    pub max_primal_violation: f64,
    /// Worst violation of `A'y <= c` and of `y_i >= 0` on inequality rows.
    pub max_dual_violation: f64,
    /// `|c'x - b'y|`.
    pub duality_gap: f64,
    /// Worst `|y_i * (a_i'x - b_i)|`.
    pub max_comp_slack: f64,
}

impl KktReport {
    pub fn passes(&self, tol: &Tolerances) -> bool {
        self.max_primal_violation <= tol.feas
            && self.max_dual_violation <= tol.feas
            && self.duality_gap <= tol.gap
            && self.max_comp_slack <= tol.gap
    }
}

/// Evaluate the optimality conditions from scratch against the problem data.
/// Independent of the pivot path that produced the solution.
pub fn check_kkt(p: &LpProblem, sol: &LpSolution, _tol: &Tolerances) -> Result<KktReport> {
    p.validate()?;
    if sol.x.len() != p.num_vars || sol.duals.len() != p.rows.len() {
        return Err(Error::invalid("solution dimensions do not match problem"));
    }
    let mut primal = 0f64;
    for &v in &sol.x {
        primal = primal.max(-v);
    }
    let mut comp = 0f64;
    let mut by = 0f64;
    for (row, &y) in p.rows.iter().zip(&sol.duals) {
        let ax: f64 = row.coeffs.iter().zip(&sol.x).map(|(a, v)| a * v).sum();
        let slack = ax - row.rhs;
        match row.sense {
            Sense::Ge => primal = primal.max(-slack),
            Sense::Eq => primal = primal.max(slack.abs()),
        }
        comp = comp.max((y * slack).abs());
        by += row.rhs * y;
    }
    let mut dual = 0f64;
    for (row, &y) in p.rows.iter().zip(&sol.duals) {
        if row.sense == Sense::Ge {
            dual = dual.max(-y);
        }
    }
    for j in 0..p.num_vars {
        let aty: f64 = p.rows.iter().zip(&sol.duals).map(|(row, &y)| row.coeffs[j] * y).sum();
        dual = dual.max(aty - p.cost[j]);
    }
    let cx: f64 = p.cost.iter().zip(&sol.x).map(|(c, v)| c * v).sum();
    Ok(KktReport {
        max_primal_violation: primal,
        max_dual_violation: dual,
        duality_gap: (cx - by).abs(),
        max_comp_slack: comp,
    })
}

/// Plain-text dump for cross-checking against external solvers: one `c`
/// line per nonzero cost, one `row` line per constraint, one `a` line per
/// nonzero coefficient. Zero entries are omitted.
pub fn dump_triplets(p: &LpProblem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "minimize vars {}", p.num_vars);
    for (j, &c) in p.cost.iter().enumerate() {
        if c != 0.0 {
            let _ = writeln!(out, "c {j} {c}");
        }
    }
    for (i, row) in p.rows.iter().enumerate() {
        let sense = match row.sense {
            Sense::Ge => "ge",
            Sense::Eq => "eq",
        };
        let _ = writeln!(out, "row {i} {sense} {}", row.rhs);
        for (j, &a) in row.coeffs.iter().enumerate() {
            if a != 0.0 {
                let _ = writeln!(out, "a {i} {j} {a}");
            }
        }
    }
    out
}
