//! Command-line front end. Every subcommand reads a hypergraph in the text
//! format of [`crate::hypergraph`], writes data to stdout or `--out`, logs
//! to stderr, and exits 0 on success, 2 on input problems, 3 when an
//! enumeration budget is exceeded and 4 on numerical failure. Floats are
//! printed with nine significant digits so runs are byte-reproducible.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dynamics::{self, DynamicsConfig, DynamicsMethod};
use crate::encode::algorithm1;
use crate::error::{Error, Result};
use crate::hypergraph::{parse_clustering, write_clustering, Clustering, LabeledHypergraph};
use crate::metrics::{
    diversity_experience_scores, drcec_objective, edge_satisfaction, experience_homogeneity,
    f_within, f_within_normalized, ObjectiveBreakdown,
};
use crate::sensitivity::beta_hat;
use crate::simplex::Tolerances;
use crate::vote::{enumeration_size, exact_ilp, majority_vote, minority_vote, EnumerationBudget, TieBreak};

#[derive(Parser)]
#[command(
    name = "drcec",
    version,
    about = "Cluster edge-labeled hypergraphs balancing group experience against diversity"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Feasibility tolerance for the LP solver.
    #[arg(long, global = true, default_value_t = 1e-7)]
    feas_tol: f64,
    /// Duality-gap tolerance for the LP solver.
    #[arg(long, global = true, default_value_t = 1e-6)]
    gap_tol: f64,
    /// Integrality tolerance when checking relaxed solutions.
    #[arg(long, global = true, default_value_t = 1e-6)]
    int_tol: f64,
    /// Node cap for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = 12)]
    node_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    LpRound,
    Exact,
    Minority,
    Majority,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster once and print "<id> <color>" lines.
    Cluster {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::LpRound)]
        method: MethodArg,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        /// Break vote ties randomly with this seed instead of by lowest
        /// color index.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relax, round and score over a grid of weights; CSV per weight.
    Sweep {
        file: PathBuf,
        /// Grid "a:b:step" with a <= b and step > 0, e.g. 0:3:0.5.
        #[arg(long)]
        betas: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest weight at which the diversity-dominant solution stays
    /// optimal; key=value lines, or one CSV row with --csv.
    BetaHat {
        file: PathBuf,
        #[arg(long)]
        beta0: Option<f64>,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterated group formation; per-step CSV.
    Dynamics {
        file: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 1)]
        window: usize,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::LpRound)]
        method: MethodArg,
        /// Unrecorded steps before the trace starts; defaults to the window.
        #[arg(long)]
        warm_start: Option<usize>,
        /// Also write a per-step assignment matrix CSV to this path.
        #[arg(long)]
        assignments: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score an existing assignment; per-color CSV plus a total row.
    Stats {
        file: PathBuf,
        /// Clustering in "<id> <color>" lines, as written by cluster.
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Nine significant digits, enough to make re-runs byte-identical without
/// printing noise digits.
fn fmt(x: f64) -> String {
    format!("{x:.8e}")
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<LabeledHypergraph> {
    LabeledHypergraph::parse(&read_text(path)?)
}

fn emit(out: Option<&Path>, data: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, data)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(data.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err(Error::invalid(format!("grid must be a:b:step, got {text:?}")));
    };
    let bad = |what: &str| Error::invalid(format!("invalid grid number {what:?} in {text:?}"));
    let a: f64 = a.parse().map_err(|_| bad(parts[0]))?;
    let b: f64 = b.parse().map_err(|_| bad(parts[1]))?;
    let step: f64 = step.parse().map_err(|_| bad(parts[2]))?;
    if !a.is_finite() || !b.is_finite() || !step.is_finite() || a < 0.0 || b < a || step <= 0.0 {
        return Err(Error::invalid(format!(
            "grid needs 0 <= a <= b and step > 0, got {text:?}"
        )));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| a + i as f64 * step).collect())
}

fn breakdown_log(label: &str, b: &ObjectiveBreakdown) {
    eprintln!(
        "{label}: edge_cost={} experience_penalty={} beta={} total={}",
        b.edge_cost,
        b.experience_penalty,
        fmt(b.beta),
        fmt(b.total)
    );
}

fn cmd_cluster(
    h: &LabeledHypergraph,
    method: MethodArg,
    beta: f64,
    seed: Option<u64>,
    out: Option<&Path>,
    tol: &Tolerances,
    budget: &EnumerationBudget,
) -> Result<()> {
    let tie = match seed {
        Some(s) => TieBreak::SeededRandom(s),
        None => TieBreak::Deterministic,
    };
    let (c, breakdown) = match method {
        MethodArg::LpRound => {
            let (c, b, sol) = algorithm1(h, beta, tol)?;
            eprintln!("lp_value={}", fmt(sol.objective_with_offset));
            (c, b)
        }
        MethodArg::Exact => exact_ilp(h, beta, budget)?,
        MethodArg::Minority => {
            let c = minority_vote(h, tie)?;
            let b = drcec_objective(h, &c, beta)?;
            (c, b)
        }
        MethodArg::Majority => {
            let c = majority_vote(h, tie)?;
            let b = drcec_objective(h, &c, beta)?;
            (c, b)
        }
    };
    breakdown_log("objective", &breakdown);
    emit(out, &write_clustering(&c, h.colors()))
}

fn cmd_sweep(
    h: &LabeledHypergraph,
    betas: &str,
    out: Option<&Path>,
    tol: &Tolerances,
    budget: &EnumerationBudget,
) -> Result<()> {
    let grid = parse_grid(betas)?;
    let exact_ok = enumeration_size(h, budget).is_ok();
    let mut csv = String::from(
        "beta,lp_value,rounded_total,exact_total,approx_ratio,edge_satisfaction,f_within,experience_penalty\n",
    );
    for &beta in &grid {
        let (c, rounded, sol) = algorithm1(h, beta, tol)?;
        let lp = sol.objective_with_offset;
        let exact = if exact_ok {
            fmt(exact_ilp(h, beta, budget)?.1.total)
        } else {
            String::new()
        };
        let ratio = if lp > 1e-12 {
            fmt(rounded.total / lp)
        } else {
            String::new()
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt(beta),
            fmt(lp),
            fmt(rounded.total),
            exact,
            ratio,
            fmt(edge_satisfaction(h, &c)?),
            fmt(f_within(h, &c)?),
            rounded.experience_penalty,
        ));
    }
    emit(out, &csv)
}

fn cmd_beta_hat(
    h: &LabeledHypergraph,
    beta0: Option<f64>,
    csv: bool,
    out: Option<&Path>,
    tol: &Tolerances,
) -> Result<()> {
    let r = beta_hat(h, beta0, tol)?;
    let v = &r.verification;
    let lower = v.lower_gap.map(fmt).unwrap_or_else(|| "na".into());
    let data = if csv {
        format!(
            "beta0,theta_plus,beta_hat,clamped,minority_unique,eps,upper_residual,lower_gap,dual_feasibility_residual,dual_value_residual\n{},{},{},{},{},{},{},{},{},{}\n",
            fmt(r.beta0),
            fmt(r.theta_plus),
            fmt(r.beta_hat),
            r.clamped,
            r.minority_unique,
            fmt(v.eps),
            fmt(v.upper_residual),
            lower,
            fmt(v.dual_feasibility_residual),
            fmt(v.dual_value_residual),
        )
    } else {
        format!(
            "beta0={}\ntheta_plus={}\nbeta_hat={}\nclamped={}\nminority_unique={}\neps={}\nupper_residual={}\nlower_gap={}\ndual_feasibility_residual={}\ndual_value_residual={}\n",
            fmt(r.beta0),
            fmt(r.theta_plus),
            fmt(r.beta_hat),
            r.clamped,
            r.minority_unique,
            fmt(v.eps),
            fmt(v.upper_residual),
            lower,
            fmt(v.dual_feasibility_residual),
            fmt(v.dual_value_residual),
        )
    };
    emit(out, &data)
}

#[allow(clippy::too_many_arguments)]
fn cmd_dynamics(
    h: &LabeledHypergraph,
    cfg: DynamicsConfig,
    assignments: Option<&Path>,
    out: Option<&Path>,
) -> Result<()> {
    let trace = dynamics::run(h, &cfg)?;
    let mut csv = String::from("t,exchanges,edge_cost,experience_penalty,mean_uniformity_gap\n");
    for (i, s) in trace.steps.iter().enumerate() {
        let exchanges = match &s.exchanged {
            Some(flags) => flags.iter().filter(|&&f| f).count().to_string(),
            None => "na".into(),
        };
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            i + 1,
            exchanges,
            s.breakdown.edge_cost,
            s.breakdown.experience_penalty,
            fmt(s.mean_uniformity_gap),
        ));
    }
    if let Some(path) = assignments {
        let mut matrix = String::from("t");
        for v in 0..trace.num_nodes {
            matrix.push_str(&format!(",{v}"));
        }
        matrix.push('\n');
        for (i, s) in trace.steps.iter().enumerate() {
            matrix.push_str(&(i + 1).to_string());
            for v in 0..trace.num_nodes {
                matrix.push_str(&format!(",{}", s.clustering.color_of(v)));
            }
            matrix.push('\n');
        }
        fs::write(path, matrix)?;
    }
    emit(out, &csv)
}

fn cmd_stats(
    h: &LabeledHypergraph,
    assignment: &Path,
    out: Option<&Path>,
) -> Result<()> {
    let text = read_text(assignment)?;
    let c: Clustering = parse_clustering(&text, h)?;
    let scores = diversity_experience_scores(h, &c)?;
    let mut csv = String::from(
        "scope,diversity,experience,homogeneity,edge_satisfaction,f_within,f_within_normalized\n",
    );
    let mut hom_total = 0.0;
    for (i, name) in h.colors().iter().enumerate() {
        let hom = experience_homogeneity(h, &c, i)?;
        hom_total += hom;
        csv.push_str(&format!(
            "{name},{},{},{},,,\n",
            scores[i].diversity,
            scores[i].experience,
            fmt(hom),
        ));
    }
    let d: u64 = scores.iter().map(|s| s.diversity).sum();
    let e: u64 = scores.iter().map(|s| s.experience).sum();
    csv.push_str(&format!(
        "total,{d},{e},{},{},{},{}\n",
        fmt(hom_total),
        fmt(edge_satisfaction(h, &c)?),
        fmt(f_within(h, &c)?),
        fmt(f_within_normalized(h, &c)?),
    ));
    emit(out, &csv)
}

impl From<MethodArg> for DynamicsMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::LpRound => DynamicsMethod::LpRound,
            MethodArg::Exact => DynamicsMethod::Exact,
            MethodArg::Minority => DynamicsMethod::Minority,
            MethodArg::Majority => DynamicsMethod::Majority,
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let tol = Tolerances {
        feas: cli.feas_tol,
        gap: cli.gap_tol,
        integrality: cli.int_tol,
    };
    let budget = EnumerationBudget {
        node_cap: cli.node_cap,
        max_evals: EnumerationBudget::default().max_evals,
    };
    match cli.command {
        Command::Cluster { ref file, method, beta, seed, ref out } => {
            let h = load(file)?;
            cmd_cluster(&h, method, beta, seed, out.as_deref(), &tol, &budget)
        }
        Command::Sweep { ref file, ref betas, ref out } => {
            let h = load(file)?;
            cmd_sweep(&h, betas, out.as_deref(), &tol, &budget)
        }
        Command::BetaHat { ref file, beta0, csv, ref out } => {
            let h = load(file)?;
            cmd_beta_hat(&h, beta0, csv, out.as_deref(), &tol)
        }
        Command::Dynamics {
            ref file,
            beta,
            window,
            steps,
            seed,
            method,
            warm_start,
            ref assignments,
            ref out,
        } => {
            let h = load(file)?;
            let mut cfg = DynamicsConfig::new(beta, window, steps, method.into(), seed);
            cfg.warm_start = warm_start;
            cfg.budget = budget;
            cfg.tol = tol;
            cmd_dynamics(&h, cfg, assignments.as_deref(), out.as_deref())
        }
        Command::Stats { ref file, ref assignment, ref out } => {
            let h = load(file)?;
            cmd_stats(&h, assignment, out.as_deref())
        }
    }
}

/// Entry point for the binary: parse, run, map errors to exit codes.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0:0:1").unwrap(), vec![0.0]);
        let g = parse_grid("0:3:0.5").unwrap();
        assert_eq!(g.len(), 7);
        assert!((g[6] - 3.0).abs() < 1e-12);
        assert!(parse_grid("1:0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("a:b:c").is_err());
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt(1.0), "1.00000000e0");
        assert_eq!(fmt(0.0003), "3.00000000e-4");
        assert_eq!(fmt(2.0 / 3.0), "6.66666667e-1");
    }

    #[test]
    fn cli_declares_all_subcommands() {
        use clap::CommandFactory;
        let cmd = Cli::command();
        let names: Vec<_> = cmd.get_subcommands().map(|c| c.get_name().to_string()).collect();
        for want in ["cluster", "sweep", "beta-hat", "dynamics", "stats"] {
            assert!(names.iter().any(|n| n == want), "missing subcommand {want}");
        }
    }
}
