//! Problem definitions, cost evaluation, feasibility checking, and the
//! decoding environment shared by training and inference.
//!
//! Edge costs are Euclidean and always computed on demand from coordinates;
//! no cost matrix is ever materialized.

pub(crate) mod cost;
mod env;
mod validate;

pub use cost::tour_cost;
pub use env::{feasible_set, DecodeEnv, EnvError, HorizonError};
pub use validate::{validate, Violation};

use thiserror::Error;

/// Which routing problem an instance encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Tsp,
    Cvrp,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Tsp => "tsp",
            ProblemKind::Cvrp => "cvrp",
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("instance needs at least 2 nodes, got {0}")]
    TooSmall(usize),
    #[error("coordinate {0} is not finite or outside [0,1]^2")]
    BadCoordinate(usize),
    #[error("CVRP instance needs one demand per node ({n} nodes, {demands} demands)")]
    DemandCount { n: usize, demands: usize },
    #[error("depot demand must be 0, got {0}")]
    DepotDemand(u32),
    #[error("demand of customer {node} is {demand}, outside (0, capacity = {capacity}]")]
    BadDemand { node: usize, demand: u32, capacity: u32 },
    #[error("capacity must be positive")]
    ZeroCapacity,
}

/// A TSP or CVRP instance on the unit square.
///
/// For CVRP the depot is always node 0 and `demands[0] == 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub kind: ProblemKind,
    pub coords: Vec<[f64; 2]>,
    /// Per-node integer demands; empty for TSP.
    pub demands: Vec<u32>,
    /// Vehicle capacity; 0 for TSP.
    pub capacity: u32,
}

impl Instance {
    pub fn tsp(coords: Vec<[f64; 2]>) -> Result<Self, InstanceError> {
        let inst = Instance {
            kind: ProblemKind::Tsp,
            coords,
            demands: Vec::new(),
            capacity: 0,
        };
        inst.check()?;
        Ok(inst)
    }

    pub fn cvrp(coords: Vec<[f64; 2]>, demands: Vec<u32>, capacity: u32) -> Result<Self, InstanceError> {
        let inst = Instance {
            kind: ProblemKind::Cvrp,
            coords,
            demands,
            capacity,
        };
        inst.check()?;
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// Depot node index (CVRP); fixed to the first node.
    pub fn depot(&self) -> usize {
        0
    }

    pub fn demand(&self, node: usize) -> u32 {
        if self.kind == ProblemKind::Tsp {
            0
        } else {
            self.demands[node]
        }
    }

    /// Euclidean edge cost, computed on demand.
    pub fn edge_cost(&self, i: usize, j: usize) -> f64 {
        let [xi, yi] = self.coords[i];
        let [xj, yj] = self.coords[j];
        ((xi - xj) * (xi - xj) + (yi - yj) * (yi - yj)).sqrt()
    }

    pub fn check(&self) -> Result<(), InstanceError> {
        if self.n() < 2 {
            return Err(InstanceError::TooSmall(self.n()));
        }
        for (i, c) in self.coords.iter().enumerate() {
            let ok = c.iter().all(|v| v.is_finite() && (0.0..=1.0).contains(v));
            if !ok {
                return Err(InstanceError::BadCoordinate(i));
            }
        }
        if self.kind == ProblemKind::Cvrp {
            if self.capacity == 0 {
                return Err(InstanceError::ZeroCapacity);
            }
            if self.demands.len() != self.n() {
                return Err(InstanceError::DemandCount {
                    n: self.n(),
                    demands: self.demands.len(),
                });
            }
            if self.demands[0] != 0 {
                return Err(InstanceError::DepotDemand(self.demands[0]));
            }
            for (node, &d) in self.demands.iter().enumerate().skip(1) {
                if d == 0 || d > self.capacity {
                    return Err(InstanceError::BadDemand {
                        node,
                        demand: d,
                        capacity: self.capacity,
                    });
                }
            }
        }
        Ok(())
    }
}

/// A candidate solution: one node-index sequence.
///
/// TSP: a permutation of all nodes, closed by the implicit wrap-around edge.
/// CVRP: starts at the depot; repeated depot indices inside the sequence
/// delimit routes, and the wrap-around edge closes the final route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub sequence: Vec<usize>,
}

impl Solution {
    pub fn new(sequence: Vec<usize>) -> Self {
        Solution { sequence }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// CVRP routes recovered by splitting on the depot; empty segments
    /// between consecutive depot visits are dropped.
    pub fn routes(&self) -> Vec<&[usize]> {
        self.sequence
            .split(|&x| x == 0)
            .filter(|r| !r.is_empty())
            .collect()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SampleError {
    #[error("partial sample needs at least 4 nodes, got {0}")]
    TooShort(usize),
}

/// A contiguous segment of a (near-)optimal solution, used as the
/// teacher-forcing target. `nodes[0]` is consumed as the fixed start before
/// decoding begins; the first predicted node is `nodes[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSample {
    pub nodes: Vec<usize>,
    /// Vehicle capacity available when serving `nodes[0]` (CVRP only; 0 for
    /// TSP), obtained by replaying the source solution up to the segment.
    pub start_capacity: u32,
}

impl PartialSample {
    pub fn new(nodes: Vec<usize>, start_capacity: u32) -> Result<Self, SampleError> {
        if nodes.len() < 4 {
            return Err(SampleError::TooShort(nodes.len()));
        }
        Ok(PartialSample {
            nodes,
            start_capacity,
        })
    }

    /// Segment length `n_p`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
