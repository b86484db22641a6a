//! The LP pipeline end to end: encode the clustering problem as a linear
//! program, solve the relaxation, round the fractional point to a proper
//! assignment, and check the sandwich
//!
//!     relaxation <= exact optimum <= rounded <= 2 * relaxation.
//!
//! Run with `cargo run --example lp_rounding`.

use drcec::encode::{algorithm1, encode, solve_relaxation};
use drcec::hypergraph::LabeledHypergraph;
use drcec::simplex::Tolerances;
use drcec::vote::{exact_ilp, EnumerationBudget};

fn main() -> drcec::Result<()> {
    let h = LabeledHypergraph::parse(
        "red 0 1\nred 2 3\nblue 1 2\nblue 0 3\ngreen 0 2\ngreen 1 3\n",
    )?;
    let tol = Tolerances::default();
    let beta = 0.75;

    let (p, enc) = encode(&h, beta)?;
    println!(
        "encoded: {} variables ({} node-color + {} edge), {} rows, constant offset {}",
        p.num_vars,
        h.num_nodes() * h.num_colors(),
        h.num_edges(),
        p.rows.len(),
        enc.const_offset
    );

    let sol = solve_relaxation(&h, beta, &tol)?;
    println!("relaxation value: {:.6}", sol.objective_with_offset);
    println!("fractional point integral: {}", sol.is_integral(tol.integrality));

    let (c, breakdown, _) = algorithm1(&h, beta, &tol)?;
    println!("\nrounded assignment: {:?}", c.as_slice());
    println!(
        "rounded cost: {} broken edges + {beta} * {} penalty = {}",
        breakdown.edge_cost, breakdown.experience_penalty, breakdown.total
    );

    let (_, exact) = exact_ilp(&h, beta, &EnumerationBudget::default())?;
    println!("exact optimum: {}", exact.total);

    let lp = sol.objective_with_offset;
    assert!(lp <= exact.total + 1e-9);
    assert!(exact.total <= breakdown.total + 1e-9);
    assert!(breakdown.total <= 2.0 * lp + 1e-9);
    println!(
        "\nsandwich holds: {:.4} <= {:.4} <= {:.4} <= {:.4}",
        lp,
        exact.total,
        breakdown.total,
        2.0 * lp
    );
    Ok(())
}
