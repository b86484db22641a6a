//! Shared fixtures for the integration suites: a seeded instance corpus and
//! seeded LP generators whose optima small oracles can certify.

#![allow(dead_code)]

use drcec::hypergraph::LabeledHypergraph;
use drcec::simplex::{LpProblem, Sense};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One corpus hypergraph: 3..=8 nodes, 2..=4 colors, 1..=10 edges of up to
/// 4 nodes each, fully determined by the seed.
pub fn corpus_instance(seed: u64) -> LabeledHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(3..=8usize);
    let k = rng.random_range(2..=4usize);
    let m = rng.random_range(1..=10usize);
    let colors = (0..k).map(|i| format!("c{i}")).collect();
    let mut h = LabeledHypergraph::new(n, colors).expect("generated colors are valid");
    for _ in 0..m {
        let size = rng.random_range(1..=n.min(4));
        let nodes = rand::seq::index::sample(&mut rng, n, size).into_vec();
        let color = rng.random_range(0..k);
        h.add_edge(color, nodes).expect("generated edge is valid");
    }
    h
}

/// A uniformly random assignment for `h`, determined by the seed.
pub fn random_clustering(h: &LabeledHypergraph, seed: u64) -> drcec::hypergraph::Clustering {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = (0..h.num_nodes()).map(|_| rng.random_range(0..h.num_colors())).collect();
    drcec::hypergraph::Clustering::new(a, h.num_colors()).expect("colors in range")
}

/// A random feasible bounded LP in `Ax >= b, x >= 0` form with `n <= 10`
/// variables: rows are sampled around a known interior point and a box keeps
/// the feasible set bounded, so vertex enumeration can certify the optimum.
pub fn bounded_random_lp(seed: u64, max_vars: usize) -> LpProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=max_vars.max(2));
    let interior: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.0)).collect();
    let cost: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
    let mut p = LpProblem::new(n, cost);
    let num_rows = rng.random_range(1..=(n + 2));
    for _ in 0..num_rows {
        let row: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let at_interior: f64 = row.iter().zip(&interior).map(|(a, x)| a * x).sum();
        let slack = rng.random_range(0.1..1.5);
        p.push_row(row, Sense::Ge, at_interior - slack);
    }
    // box: -x_j >= -5 keeps every vertex finite
    for j in 0..n {
        let mut row = vec![0.0; n];
        row[j] = -1.0;
        p.push_row(row, Sense::Ge, -5.0);
    }
    p
}

/// Brute-force LP oracle: enumerate all basic points (intersections of `n`
/// row hyperplanes including the implicit `x_j = 0` planes), keep the
/// feasible ones, and return the minimum objective. Only for tiny problems.
pub fn vertex_enumeration_optimum(p: &LpProblem) -> Option<f64> {
    let n = p.num_vars;
    let mut planes: Vec<(Vec<f64>, f64)> = Vec::new();
    for row in &p.rows {
        planes.push((row.coeffs.clone(), row.rhs));
    }
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        planes.push((e, 0.0));
    }
    let mut best: Option<f64> = None;
    let mut choice: Vec<usize> = (0..n).collect();
    loop {
        if let Some(x) = solve_square(&planes, &choice, n) {
            if feasible(p, &x, 1e-7) {
                let obj: f64 = p.cost.iter().zip(&x).map(|(c, v)| c * v).sum();
                best = Some(match best {
                    Some(b) if b <= obj => b,
                    _ => obj,
                });
            }
        }
        if !next_combination(&mut choice, planes.len(), n) {
            break;
        }
    }
    best
}

fn next_combination(c: &mut [usize], total: usize, k: usize) -> bool {
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < total - (k - i) {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn solve_square(planes: &[(Vec<f64>, f64)], choice: &[usize], n: usize) -> Option<Vec<f64>> {
    let mut a: Vec<Vec<f64>> = choice.iter().map(|&i| planes[i].0.clone()).collect();
    let mut b: Vec<f64> = choice.iter().map(|&i| planes[i].1).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-9 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r != col {
                let f = a[r][col] / pivot_row[col];
                for (val, pv) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *val -= f * pv;
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn feasible(p: &LpProblem, x: &[f64], tol: f64) -> bool {
    if x.iter().any(|&v| v < -tol) {
        return false;
    }
    p.rows.iter().all(|row| {
        let lhs: f64 = row.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        match row.sense {
            Sense::Ge => lhs >= row.rhs - tol,
            Sense::Eq => (lhs - row.rhs).abs() <= tol,
        }
    })
}
