//! Diversity-regularized clustering of edge-labeled hypergraphs.
//!
//! Given a hypergraph whose edges each carry one categorical color, the task
//! is to assign every node a color so that edges are kept monochromatic
//! inside their own color's cluster while a tunable weight `beta` pushes
//! nodes away from the colors they already have the most experience with.
//! The objective minimized throughout is
//!
//! ```text
//! violated-edge count + beta * sum_v d[v][assigned color of v]
//! ```
//!
//! where `d[v][c]` counts the color-`c` edges containing `v`. At `beta = 0`
//! this is pure categorical edge clustering; past the maximum node degree it
//! collapses to a minority vote.
//!
//! The crate provides:
//!
//! * [`hypergraph`]: the data model and a line-oriented text format.
//! * [`metrics`]: per-cluster diversity/experience scores and objectives.
//! * [`vote`]: closed-form majority/minority solvers and an exhaustive
//!   reference solver with explicit budgets.
//! * [`simplex`]: a self-contained dense LP solver with dual certificates.
//! * [`encode`]: the LP relaxation of the objective and its 2-approximate
//!   rounding.
//! * [`sensitivity`]: parametric analysis in `beta`, including the smallest
//!   weight at which the relaxed minority solution stays optimal.
//! * [`dynamics`]: the iterated process that feeds each step's clusters back
//!   in as new hyperedges over a sliding window.
//! * [`cli`]: the `drcec` command-line frontend over all of the above.
//!
//! Start with the runnable programs under `examples/`; each demonstrates one
//! capability end to end.
//!
//! ```
//! use drcec::hypergraph::LabeledHypergraph;
//! use drcec::vote::{minority_vote, TieBreak};
//!
//! let h = LabeledHypergraph::parse("nodes 3\nred 0 1\nblue 1 2\n").unwrap();
//! let c = minority_vote(&h, TieBreak::Deterministic).unwrap();
//! assert_eq!(c.as_slice(), &[1, 0, 0]);
//! ```

pub mod cli;
pub mod dynamics;
pub mod encode;
pub mod error;
pub mod hypergraph;
pub mod metrics;
pub mod sensitivity;
pub mod simplex;
pub mod vote;

pub use error::{Error, Result};
