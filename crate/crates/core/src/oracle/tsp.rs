use super::{OracleError, OracleLabel, Provenance};
use crate::vrp::{validate, Instance, ProblemKind, Solution};

const BRUTE_FORCE_MAX: usize = 9;
const HELD_KARP_MAX: usize = 16;

fn require_tsp(instance: &Instance, solver: &'static str) -> Result<(), OracleError> {
    if instance.kind != ProblemKind::Tsp {
        return Err(OracleError::WrongKind {
            solver,
            expected: "TSP",
        });
    }
    Ok(())
}

/// Exact TSP optimum by exhaustive permutation with the first node fixed.
pub fn brute_force(instance: &Instance) -> Result<OracleLabel, OracleError> {
    require_tsp(instance, "brute_force")?;
    let n = instance.n();
    if n > BRUTE_FORCE_MAX {
        return Err(OracleError::TooLarge {
            solver: "brute_force",
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    let mut perm: Vec<usize> = (1..n).collect();
    let mut best: Vec<usize> = perm.clone();
    let mut best_cost = f64::INFINITY;
    permute(&mut perm, 0, instance, &mut best, &mut best_cost);
    let mut sequence = Vec::with_capacity(n);
    sequence.push(0);
    sequence.extend_from_slice(&best);
    OracleLabel::checked(instance, Solution::new(sequence), Provenance::Exact)
}

fn permute(
    perm: &mut Vec<usize>,
    at: usize,
    instance: &Instance,
    best: &mut Vec<usize>,
    best_cost: &mut f64,
) {
    if at == perm.len() {
        let mut cost = instance.edge_cost(0, perm[0]);
        for w in perm.windows(2) {
            cost += instance.edge_cost(w[0], w[1]);
        }
        cost += instance.edge_cost(perm[perm.len() - 1], 0);
        if cost < *best_cost {
            *best_cost = cost;
            best.copy_from_slice(perm);
        }
        return;
    }
    for i in at..perm.len() {
        perm.swap(at, i);
        permute(perm, at + 1, instance, best, best_cost);
        perm.swap(at, i);
    }
}

/// Exact TSP optimum via bitmask dynamic programming over subsets, with the
/// tour reconstructed from parent pointers. Bounded at n <= 16 by the
/// 2^n * n^2 budget.
pub fn held_karp(instance: &Instance) -> Result<OracleLabel, OracleError> {
    require_tsp(instance, "held_karp")?;
    let n = instance.n();
    if n > HELD_KARP_MAX {
        return Err(OracleError::TooLarge {
            solver: "held_karp",
            n,
            max: HELD_KARP_MAX,
        });
    }
    // dp[mask][j]: cheapest path from node 0 through the nodes of `mask`
    // (over nodes 1..n) ending at node j+1.
    let m = n - 1;
    let full = 1usize << m;
    let mut dp = vec![f64::INFINITY; full * m];
    let mut parent = vec![u8::MAX; full * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = instance.edge_cost(0, j + 1);
    }
    for mask in 1..full {
        for j in 0..m {
            if mask & (1 << j) == 0 {
                continue;
            }
            let cur = dp[mask * m + j];
            if !cur.is_finite() {
                continue;
            }
            let rest = (!mask) & (full - 1);
            let mut bits = rest;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let next_mask = mask | (1 << k);
                let cand = cur + instance.edge_cost(j + 1, k + 1);
                let slot = next_mask * m + k;
                if cand < dp[slot] {
                    dp[slot] = cand;
                    parent[slot] = j as u8;
                }
            }
        }
    }
    let mut best_end = 0;
    let mut best_cost = f64::INFINITY;
    for j in 0..m {
        let cand = dp[(full - 1) * m + j] + instance.edge_cost(j + 1, 0);
        if cand < best_cost {
            best_cost = cand;
            best_end = j;
        }
    }
    let mut sequence = Vec::with_capacity(n);
    let mut mask = full - 1;
    let mut j = best_end;
    while mask != 0 {
        sequence.push(j + 1);
        let p = parent[mask * m + j];
        mask &= !(1 << j);
        if p == u8::MAX {
            break;
        }
        j = p as usize;
    }
    sequence.push(0);
    sequence.reverse();
    OracleLabel::checked(instance, Solution::new(sequence), Provenance::Exact)
}

/// Nearest-neighbor construction from a start node; ties break to the lowest
/// node index.
pub fn nearest_neighbor(instance: &Instance, start: usize) -> Solution {
    let n = instance.n();
    let mut visited = vec![false; n];
    let mut sequence = Vec::with_capacity(n);
    let mut current = start;
    visited[current] = true;
    sequence.push(current);
    for _ in 1..n {
        let mut best = usize::MAX;
        let mut best_cost = f64::INFINITY;
        for next in 0..n {
            if visited[next] {
                continue;
            }
            let c = instance.edge_cost(current, next);
            if c < best_cost {
                best_cost = c;
                best = next;
            }
        }
        visited[best] = true;
        sequence.push(best);
        current = best;
    }
    Solution::new(sequence)
}

/// First-improvement 2-exchange descent from an initial tour. Terminates at a
/// local optimum: no 2-exchange improves the tour by more than the
/// floating-point guard.
pub fn two_opt(instance: &Instance, init: &Solution) -> Result<OracleLabel, OracleError> {
    require_tsp(instance, "two_opt")?;
    validate(instance, init)?;
    let mut tour = init.sequence.clone();
    let n = tour.len();
    const EPS: f64 = 1e-12;
    let mut improved = true;
    while improved {
        improved = false;
        'scan: for i in 0..n - 1 {
            for j in i + 1..n {
                // Reversing tour[i+1..=j] replaces edges (i, i+1) and
                // (j, j+1) with (i, j) and (i+1, j+1).
                let a = tour[i];
                let b = tour[i + 1];
                let c = tour[j];
                let d = tour[(j + 1) % n];
                if a == c || b == d {
                    continue;
                }
                let delta = instance.edge_cost(a, c) + instance.edge_cost(b, d)
                    - instance.edge_cost(a, b)
                    - instance.edge_cost(c, d);
                if delta < -EPS {
                    tour[i + 1..=j].reverse();
                    improved = true;
                    continue 'scan;
                }
            }
        }
    }
    OracleLabel::checked(instance, Solution::new(tour), Provenance::TwoOpt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn unit_square() -> Instance {
        Instance::tsp(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    fn random_tsp(n: usize, seed: u64) -> Instance {
        let mut rng = crate::rng::substream(seed, &[41]);
        Instance::tsp((0..n).map(|_| [rng.gen(), rng.gen()]).collect()).unwrap()
    }

    #[test]
    fn brute_force_unit_square() {
        let label = brute_force(&unit_square()).unwrap();
        assert_eq!(label.cost, 4.0);
        assert_eq!(label.provenance, Provenance::Exact);
    }

    #[test]
    fn brute_force_collinear_points() {
        let inst = Instance::tsp(vec![[0.0, 0.0], [0.5, 0.0], [1.0, 0.0]]).unwrap();
        let label = brute_force(&inst).unwrap();
        assert!((label.cost - 2.0).abs() < 1e-12);
    }

    #[test]
    fn brute_force_refuses_large() {
        let inst = random_tsp(10, 1);
        assert!(matches!(
            brute_force(&inst),
            Err(OracleError::TooLarge { solver: "brute_force", .. })
        ));
    }

    #[test]
    fn held_karp_unit_square() {
        assert_eq!(held_karp(&unit_square()).unwrap().cost, 4.0);
    }

    #[test]
    fn held_karp_matches_brute_force() {
        for seed in 0..100 {
            let inst = random_tsp(8, seed);
            let bf = brute_force(&inst).unwrap();
            let hk = held_karp(&inst).unwrap();
            assert!(
                (bf.cost - hk.cost).abs() < 1e-9,
                "seed {seed}: {} vs {}",
                bf.cost,
                hk.cost
            );
        }
    }

    #[test]
    fn held_karp_refuses_large() {
        let inst = random_tsp(17, 2);
        assert!(matches!(
            held_karp(&inst),
            Err(OracleError::TooLarge { solver: "held_karp", .. })
        ));
    }

    #[test]
    fn two_opt_uncrosses_the_square() {
        let label = two_opt(&unit_square(), &Solution::new(vec![0, 2, 1, 3])).unwrap();
        assert_eq!(label.cost, 4.0);
    }

    #[test]
    fn two_opt_fixed_point_on_optimal_tour() {
        let init = Solution::new(vec![0, 1, 2, 3]);
        let label = two_opt(&unit_square(), &init).unwrap();
        assert_eq!(label.solution, init);
    }

    #[test]
    fn two_opt_never_beats_exact_and_never_worsens_init() {
        for seed in 0..30 {
            let inst = random_tsp(12, seed + 500);
            let init = nearest_neighbor(&inst, 0);
            let init_cost = crate::vrp::tour_cost(&inst, &init).unwrap();
            let ls = two_opt(&inst, &init).unwrap();
            let exact = held_karp(&inst).unwrap();
            assert!(ls.cost <= init_cost + 1e-12);
            assert!(ls.cost >= exact.cost - 1e-9, "2-opt beat the optimum?");
            assert!(validate(&inst, &ls.solution).is_ok());
        }
    }

    #[test]
    fn held_karp_upper_bounded_by_two_opt_at_max_size() {
        let inst = random_tsp(16, 77);
        let exact = held_karp(&inst).unwrap();
        let ls = two_opt(&inst, &nearest_neighbor(&inst, 0)).unwrap();
        assert!(exact.cost <= ls.cost + 1e-12);
    }
}
