//! The LP solver on its own, outside any clustering context. Build a small
//! problem row by row, solve it, and inspect the optimality certificate the
//! solver returns alongside the point: primal feasibility, dual feasibility,
//! duality gap, and complementary slackness.
//!
//! Run with `cargo run --example simplex_lp`.

use drcec::simplex::{check_kkt, dump_triplets, solve, LpProblem, LpStatus, Sense, Tolerances};

fn main() -> drcec::Result<()> {
    // minimize 2x + 3y  subject to  x + y >= 4, x - y >= -2, x,y <= 5
    let mut p = LpProblem::new(2, vec![2.0, 3.0]);
    p.push_row(vec![1.0, 1.0], Sense::Ge, 4.0);
    p.push_row(vec![1.0, -1.0], Sense::Ge, -2.0);
    p.push_row(vec![-1.0, 0.0], Sense::Ge, -5.0);
    p.push_row(vec![0.0, -1.0], Sense::Ge, -5.0);

    println!("problem in triplet form:\n{}", dump_triplets(&p));

    let tol = Tolerances::default();
    let sol = solve(&p, &tol)?;
    assert_eq!(sol.status, LpStatus::Optimal);
    println!("optimum {} at x = {:?}", sol.objective, sol.x);
    println!("row duals: {:?}", sol.duals);

    let kkt = check_kkt(&p, &sol, &tol)?;
    println!(
        "\ncertificate: primal violation {:.1e}, dual violation {:.1e}, gap {:.1e}, slack {:.1e}",
        kkt.max_primal_violation, kkt.max_dual_violation, kkt.duality_gap, kkt.max_comp_slack
    );
    assert!(kkt.passes(&tol));

    // An unbounded direction is reported as a status, not an error.
    let mut free = LpProblem::new(1, vec![-1.0]);
    free.push_row(vec![1.0], Sense::Ge, 0.0);
    let sol = solve(&free, &tol)?;
    println!("\nminimize -x with x >= 0: status {:?}", sol.status);

    // So is an empty feasible region.
    let mut empty = LpProblem::new(1, vec![1.0]);
    empty.push_row(vec![1.0], Sense::Ge, 2.0);
    empty.push_row(vec![-1.0], Sense::Ge, -1.0);
    let sol = solve(&empty, &tol)?;
    println!("x >= 2 and x <= 1: status {:?}", sol.status);
    Ok(())
}
