use super::{Instance, PartialSample, ProblemKind};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HorizonError {
    #[error("step {t} out of range for a sample of length {n_p}")]
    BadStep { t: usize, n_p: usize },
    #[error("lookahead t + k = {reach} exceeds the sample horizon n_p = {n_p}")]
    OutOfHorizon { reach: usize, n_p: usize },
}

/// Feasible set at step `t` and lookahead depth `k` under teacher forcing:
/// the sample's remaining nodes once the first `t + k - 1` positions are
/// consumed. Returned as a sorted set of distinct node indices; for CVRP a
/// repeated depot contributes once while it still occurs in the remainder.
///
/// `t + k > n_p` is an out-of-horizon signal — the caller masks the
/// corresponding loss term.
pub fn feasible_set(sample: &PartialSample, t: usize, k: usize) -> Result<Vec<usize>, HorizonError> {
    let n_p = sample.len();
    if t < 1 || t > n_p {
        return Err(HorizonError::BadStep { t, n_p });
    }
    if t + k > n_p {
        return Err(HorizonError::OutOfHorizon { reach: t + k, n_p });
    }
    let mut remaining: Vec<usize> = sample.nodes[t + k - 1..].to_vec();
    remaining.sort_unstable();
    remaining.dedup();
    Ok(remaining)
}

/// Number of remaining sample positions at step `t`, depth `k`; for TSP this
/// equals the feasible-set size.
pub fn remaining_positions(n_p: usize, t: usize, k: usize) -> usize {
    n_p - (t + k - 1)
}

#[derive(Debug, Error, PartialEq)]
pub enum EnvError {
    #[error("node {0} is not available in the current decoding state")]
    NotAvailable(usize),
    #[error("customer {node} has demand {demand} but only {capacity} capacity remains")]
    OverCapacity { node: usize, demand: u32, capacity: u32 },
    #[error("depot revisit immediately after a depot visit")]
    DepotRevisit,
    #[error("decoding already complete")]
    Complete,
}

/// Decoding state: which nodes remain, the (first, previous) context pair,
/// the running step counter, and the remaining vehicle capacity for CVRP.
///
/// The same environment drives teacher-forced training (remaining nodes come
/// from a partial sample, depot multiplicity is bounded by the sample),
/// full-instance inference (all nodes, depot freely revisitable), and
/// segment re-decoding (segment customers, depot freely revisitable).
#[derive(Clone, Debug)]
pub struct DecodeEnv<'a> {
    pub instance: &'a Instance,
    /// Remaining multiplicity per node index.
    counts: Vec<u32>,
    /// CVRP inference mode: the depot can always be revisited.
    depot_unlimited: bool,
    /// Remaining positions (bounded mode) or unvisited customers (unlimited).
    remaining: usize,
    /// Step counter; after consuming the fixed start the next decision is
    /// step 2, matching `t - 1` consumed positions at step `t`.
    pub t: usize,
    pub first: usize,
    pub prev: usize,
    /// Remaining vehicle capacity (CVRP; 0 for TSP).
    pub capacity: u32,
}

impl<'a> DecodeEnv<'a> {
    /// Teacher-forcing environment over a partial sample. The sample's first
    /// node is consumed as the fixed start.
    pub fn for_sample(instance: &'a Instance, sample: &'a PartialSample) -> Self {
        let mut counts = vec![0u32; instance.n()];
        for &node in &sample.nodes {
            counts[node] += 1;
        }
        let mut env = DecodeEnv {
            instance,
            counts,
            depot_unlimited: false,
            remaining: sample.len(),
            t: 1,
            first: sample.nodes[0],
            prev: sample.nodes[0],
            capacity: sample.start_capacity,
        };
        env.consume_start(sample.nodes[0]);
        env
    }

    /// Full-instance construction from a fixed start node.
    pub fn for_instance(instance: &'a Instance, start: usize) -> Self {
        let n = instance.n();
        let cvrp = instance.kind == ProblemKind::Cvrp;
        let counts = vec![1u32; n];
        let remaining = if cvrp { n - 1 } else { n };
        let mut env = DecodeEnv {
            instance,
            counts,
            depot_unlimited: cvrp,
            remaining,
            t: 1,
            first: start,
            prev: start,
            capacity: if cvrp { instance.capacity } else { 0 },
        };
        env.consume_start(start);
        env
    }

    /// Segment re-decoding (RRC): the segment's customers must be re-visited;
    /// for CVRP the depot is freely insertable and capacity starts from the
    /// replayed value at the segment boundary.
    pub fn for_segment(instance: &'a Instance, segment: &[usize], start_capacity: u32) -> Self {
        let cvrp = instance.kind == ProblemKind::Cvrp;
        let mut counts = vec![0u32; instance.n()];
        let mut customers = 0usize;
        for &node in segment {
            if cvrp && node == instance.depot() {
                continue;
            }
            counts[node] += 1;
            customers += 1;
        }
        if cvrp {
            counts[instance.depot()] = 1;
        }
        let mut env = DecodeEnv {
            instance,
            counts,
            depot_unlimited: cvrp,
            remaining: customers,
            t: 1,
            first: segment[0],
            prev: segment[0],
            capacity: start_capacity,
        };
        env.consume_start(segment[0]);
        env
    }

    fn consume_start(&mut self, start: usize) {
        let depot = self.is_depot(start);
        if depot && self.depot_unlimited {
            // Starting from a freely revisitable depot is not a counted position.
        } else {
            debug_assert!(self.counts[start] > 0);
            self.counts[start] -= 1;
            self.remaining -= 1;
        }
        if self.instance.kind == ProblemKind::Cvrp {
            if depot {
                self.capacity = self.instance.capacity;
            } else {
                self.capacity = self.capacity.saturating_sub(self.instance.demand(start));
            }
        }
        self.t = 2;
    }

    fn is_depot(&self, node: usize) -> bool {
        self.instance.kind == ProblemKind::Cvrp && node == self.instance.depot()
    }

    /// Positions consumed so far; equals `t - 1`.
    pub fn consumed(&self) -> usize {
        self.t - 1
    }

    pub fn remaining(&self) -> usize {
        self.remaining
    }

    pub fn done(&self) -> bool {
        self.remaining == 0
    }

    pub fn count(&self, node: usize) -> u32 {
        self.counts[node]
    }

    /// Candidate nodes the decoder sees as tokens: the remaining nodes in
    /// ascending index order, with the depot always present for CVRP (masking
    /// decides whether it may actually be chosen).
    pub fn candidates(&self) -> Vec<usize> {
        let cvrp = self.instance.kind == ProblemKind::Cvrp;
        let mut out = Vec::with_capacity(self.remaining + 1);
        for node in 0..self.instance.n() {
            if cvrp && node == self.instance.depot() {
                out.push(node);
            } else if self.counts[node] > 0 {
                out.push(node);
            }
        }
        out
    }

    fn node_feasible(&self, node: usize) -> Result<(), EnvError> {
        if self.is_depot(node) {
            if self.prev == self.instance.depot() {
                return Err(EnvError::DepotRevisit);
            }
            if !self.depot_unlimited && self.counts[node] == 0 {
                return Err(EnvError::NotAvailable(node));
            }
            return Ok(());
        }
        if self.counts[node] == 0 {
            return Err(EnvError::NotAvailable(node));
        }
        if self.instance.kind == ProblemKind::Cvrp {
            let demand = self.instance.demand(node);
            if demand > self.capacity {
                return Err(EnvError::OverCapacity {
                    node,
                    demand,
                    capacity: self.capacity,
                });
            }
        }
        Ok(())
    }

    /// Feasibility mask aligned with a candidate list.
    pub fn feasible_mask(&self, candidates: &[usize]) -> Vec<bool> {
        candidates
            .iter()
            .map(|&node| self.node_feasible(node).is_ok())
            .collect()
    }

    /// Currently selectable nodes, ascending.
    pub fn feasible_nodes(&self) -> Vec<usize> {
        (0..self.instance.n())
            .filter(|&node| self.node_feasible(node).is_ok())
            .collect()
    }

    /// Advances the environment by one chosen node: marks it consumed, moves
    /// the previous-node pointer, increments the step, and updates capacity
    /// (reset on a depot visit, decremented by the customer's demand
    /// otherwise). Infeasible choices are hard errors; masking upstream must
    /// make them unreachable.
    pub fn step(&mut self, chosen: usize) -> Result<(), EnvError> {
        if self.done() {
            return Err(EnvError::Complete);
        }
        self.node_feasible(chosen)?;
        let depot = self.is_depot(chosen);
        if depot && self.depot_unlimited {
            // free revisit, not a counted position
        } else {
            self.counts[chosen] -= 1;
            self.remaining -= 1;
        }
        if self.instance.kind == ProblemKind::Cvrp {
            if depot {
                self.capacity = self.instance.capacity;
            } else {
                self.capacity -= self.instance.demand(chosen);
            }
        }
        self.prev = chosen;
        self.t += 1;
        Ok(())
    }

    /// A copy of this environment advanced along `forced` teacher-forced
    /// nodes, used to build depth-k lookahead masks and capacities.
    pub fn lookahead(&self, forced: &[usize]) -> Result<DecodeEnv<'a>, EnvError> {
        let mut env = self.clone();
        for &node in forced {
            env.step(node)?;
        }
        Ok(env)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vrp::{Instance, PartialSample};
    use rand::Rng;

    fn tsp(n: usize, seed: u64) -> Instance {
        let mut rng = crate::rng::substream(seed, &[1]);
        Instance::tsp((0..n).map(|_| [rng.gen(), rng.gen()]).collect()).unwrap()
    }

    #[test]
    fn feasible_set_size_follows_remark() {
        let sample = PartialSample::new(vec![3, 1, 4, 0, 5, 2], 0).unwrap();
        let set = feasible_set(&sample, 3, 2).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set, vec![2, 5]);
    }

    #[test]
    fn feasible_set_out_of_horizon() {
        let sample = PartialSample::new(vec![0, 1, 2, 3, 4], 0).unwrap();
        assert_eq!(
            feasible_set(&sample, 4, 2),
            Err(HorizonError::OutOfHorizon { reach: 6, n_p: 5 })
        );
        // First prediction step consumes the fixed start node.
        assert_eq!(feasible_set(&sample, 2, 0).unwrap().len(), 4);
    }

    #[test]
    fn feasible_set_size_exhaustive_small_samples() {
        let mut rng = crate::rng::substream(5, &[7]);
        for _ in 0..50 {
            let n_p = rng.gen_range(4..=12);
            let mut nodes: Vec<usize> = (0..n_p).collect();
            // random permutation
            for i in (1..n_p).rev() {
                let j = rng.gen_range(0..=i);
                nodes.swap(i, j);
            }
            let sample = PartialSample::new(nodes, 0).unwrap();
            for t in 1..=n_p {
                for k in 0..=(n_p - t) {
                    let set = feasible_set(&sample, t, k).unwrap();
                    assert_eq!(set.len(), remaining_positions(n_p, t, k));
                }
            }
        }
    }

    #[test]
    fn step_env_marks_visited_and_counts_match() {
        let inst = tsp(8, 3);
        let sample = PartialSample::new(vec![2, 5, 7, 1, 0], 0).unwrap();
        let mut env = DecodeEnv::for_sample(&inst, &sample);
        assert_eq!(env.t, 2);
        assert_eq!(env.consumed(), 1);
        env.step(5).unwrap();
        assert_eq!(env.t, 3);
        assert_eq!(env.prev, 5);
        assert_eq!(env.count(5), 0);
        assert_eq!(env.step(5), Err(EnvError::NotAvailable(5)));
        // Replaying the ground truth reproduces the feasible sets.
        env.step(7).unwrap();
        assert_eq!(env.feasible_nodes(), feasible_set(&sample, 4, 0).unwrap());
    }

    fn cvrp5() -> Instance {
        Instance::cvrp(
            vec![[0.5, 0.5], [0.1, 0.1], [0.9, 0.1], [0.5, 0.9], [0.9, 0.9]],
            vec![0, 3, 3, 3, 7],
            10,
        )
        .unwrap()
    }

    #[test]
    fn cvrp_capacity_decrements_and_depot_resets() {
        let inst = cvrp5();
        let mut env = DecodeEnv::for_instance(&inst, 0);
        assert_eq!(env.capacity, 10);
        env.step(1).unwrap();
        assert_eq!(env.capacity, 7);
        env.step(2).unwrap();
        assert_eq!(env.capacity, 4);
        // Demand-7 customer no longer fits.
        assert_eq!(
            env.step(4),
            Err(EnvError::OverCapacity {
                node: 4,
                demand: 7,
                capacity: 4
            })
        );
        env.step(0).unwrap();
        assert_eq!(env.capacity, 10);
        // Immediate depot revisit is masked.
        assert_eq!(env.step(0), Err(EnvError::DepotRevisit));
        env.step(4).unwrap();
        assert_eq!(env.capacity, 3);
        env.step(3).unwrap();
        assert!(env.done());
    }

    #[test]
    fn cvrp_sample_env_respects_depot_multiplicity() {
        let inst = cvrp5();
        // Segment crossing one route boundary: capacity before node 2 is 7.
        let sample = PartialSample::new(vec![2, 0, 4, 3], 7).unwrap();
        let mut env = DecodeEnv::for_sample(&inst, &sample);
        assert_eq!(env.capacity, 4);
        let candidates = env.candidates();
        assert_eq!(candidates, vec![0, 3, 4]);
        let mask = env.feasible_mask(&candidates);
        // Depot available (count 1), customer 3 fits, customer 4 does not.
        assert_eq!(mask, vec![true, true, false]);
        env.step(0).unwrap();
        assert_eq!(env.capacity, 10);
        // Depot count exhausted: only customers remain.
        let candidates = env.candidates();
        let mask = env.feasible_mask(&candidates);
        assert_eq!(candidates, vec![0, 3, 4]);
        assert_eq!(mask, vec![false, true, true]);
        env.step(4).unwrap();
        env.step(3).unwrap();
        assert!(env.done());
    }

    #[test]
    fn lookahead_matches_manual_replay() {
        let inst = tsp(9, 4);
        let sample = PartialSample::new(vec![8, 3, 6, 1, 4, 0], 0).unwrap();
        let env = DecodeEnv::for_sample(&inst, &sample);
        let look = env.lookahead(&[3, 6]).unwrap();
        assert_eq!(look.prev, 6);
        assert_eq!(look.feasible_nodes(), feasible_set(&sample, 2, 2).unwrap());
    }
}
