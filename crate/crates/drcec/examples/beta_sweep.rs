//! Sweep the diversity weight over a grid and watch the relaxation value
//! trace out a concave, non-decreasing curve: the lower envelope of one
//! straight line per assignment. Kinks are the weights where the optimal
//! assignment changes.
//!
//! Run with `cargo run --example beta_sweep`.

use drcec::encode::{algorithm1, solve_relaxation};
use drcec::hypergraph::LabeledHypergraph;
use drcec::simplex::Tolerances;

fn main() -> drcec::Result<()> {
    let h = LabeledHypergraph::parse("red 0 1\nblue 1 2\n")?;
    let tol = Tolerances::default();

    println!("{:>6} {:>10} {:>10}  assignment", "beta", "lp", "rounded");
    let mut prev = f64::NEG_INFINITY;
    let mut prev_assignment: Option<Vec<usize>> = None;
    for i in 0..=12 {
        let beta = i as f64 * 0.25;
        let sol = solve_relaxation(&h, beta, &tol)?;
        let (c, b, _) = algorithm1(&h, beta, &tol)?;
        let changed = prev_assignment.as_deref() != Some(c.as_slice());
        println!(
            "{beta:>6.2} {:>10.4} {:>10.4}  {:?}{}",
            sol.objective_with_offset,
            b.total,
            c.as_slice(),
            if changed && prev_assignment.is_some() { "  <- kink" } else { "" }
        );
        assert!(sol.objective_with_offset >= prev - 1e-9, "curve must not decrease");
        prev = sol.objective_with_offset;
        prev_assignment = Some(c.as_slice().to_vec());
    }
    Ok(())
}
