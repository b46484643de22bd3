//! Desk-scale label oracles.
//!
//! Exact solutions come from exhaustive permutation search (n <= 9) or
//! Held-Karp dynamic programming (n <= 16); larger TSPs use nearest-neighbor
//! construction plus first-improvement 2-opt descent, and CVRP uses
//! Clarke-Wright savings followed by local search. `sample_partial` draws the
//! contiguous solution segments used as teacher-forcing targets.

mod cvrp;
mod sample;
mod tsp;

pub use cvrp::cvrp_heuristic;
pub use sample::sample_partial;
pub use tsp::{brute_force, held_karp, nearest_neighbor, two_opt};

use crate::vrp::{tour_cost, Instance, Solution, Violation};
use thiserror::Error;

/// How a label was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    TwoOpt,
    SavingsTwoOpt,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::TwoOpt => "two_opt",
            Provenance::SavingsTwoOpt => "savings_two_opt",
        }
    }
}

/// A labeled solution: the training target for one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleLabel {
    pub solution: Solution,
    pub cost: f64,
    pub provenance: Provenance,
}

impl OracleLabel {
    fn checked(
        instance: &Instance,
        solution: Solution,
        provenance: Provenance,
    ) -> Result<Self, OracleError> {
        let cost = tour_cost(instance, &solution)?;
        Ok(OracleLabel {
            solution,
            cost,
            provenance,
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("instance size {n} exceeds the {solver} limit of {max}")]
    TooLarge {
        solver: &'static str,
        n: usize,
        max: usize,
    },
    #[error("{solver} requires a {expected} instance")]
    WrongKind {
        solver: &'static str,
        expected: &'static str,
    },
    #[error("customer {node} demand {demand} exceeds vehicle capacity {capacity}")]
    Infeasible { node: usize, demand: u32, capacity: u32 },
    #[error("solution shorter than 4 cannot be sampled")]
    SampleTooShort,
    #[error("invalid solution: {0}")]
    Invalid(#[from] Violation),
}
