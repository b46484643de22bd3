use super::{Instance, ProblemKind, Solution};
use thiserror::Error;

/// Structured constraint violations; `validate` reports the first one found.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("solution is empty")]
    Empty,
    #[error("node index {node} at position {position} out of range (n = {n})")]
    OutOfRange { node: usize, position: usize, n: usize },
    #[error("duplicate node {node} at position {position}")]
    DuplicateNode { node: usize, position: usize },
    #[error("node {node} is missing from the solution")]
    MissingNode { node: usize },
    #[error("CVRP solution must start at the depot")]
    NotDepotStart,
    #[error("route {route} exceeds capacity {capacity} by {overload}")]
    CapacityExceeded { route: usize, capacity: u32, overload: u64 },
}

/// Checks a solution against its instance.
///
/// TSP: accepts iff the sequence is a permutation of `0..n`.
/// CVRP: accepts iff the sequence begins at the depot, every customer occurs
/// exactly once, and each depot-to-depot route's demand sum is within
/// capacity.
pub fn validate(instance: &Instance, solution: &Solution) -> Result<(), Violation> {
    let n = instance.n();
    let seq = &solution.sequence;
    if seq.is_empty() {
        return Err(Violation::Empty);
    }
    for (position, &node) in seq.iter().enumerate() {
        if node >= n {
            return Err(Violation::OutOfRange { node, position, n });
        }
    }
    match instance.kind {
        ProblemKind::Tsp => {
            let mut seen = vec![false; n];
            for (position, &node) in seq.iter().enumerate() {
                if seen[node] {
                    return Err(Violation::DuplicateNode { node, position });
                }
                seen[node] = true;
            }
            if let Some(node) = seen.iter().position(|v| !v) {
                return Err(Violation::MissingNode { node });
            }
            Ok(())
        }
        ProblemKind::Cvrp => {
            if seq[0] != instance.depot() {
                return Err(Violation::NotDepotStart);
            }
            let mut seen = vec![false; n];
            for (position, &node) in seq.iter().enumerate() {
                if node == instance.depot() {
                    continue;
                }
                if seen[node] {
                    return Err(Violation::DuplicateNode { node, position });
                }
                seen[node] = true;
            }
            if let Some(node) = seen.iter().skip(1).position(|v| !v) {
                return Err(Violation::MissingNode { node: node + 1 });
            }
            for (route, nodes) in solution.routes().iter().enumerate() {
                let load: u64 = nodes.iter().map(|&c| instance.demands[c] as u64).sum();
                if load > instance.capacity as u64 {
                    return Err(Violation::CapacityExceeded {
                        route,
                        capacity: instance.capacity,
                        overload: load - instance.capacity as u64,
                    });
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tsp4() -> Instance {
        Instance::tsp(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn accepts_permutation() {
        assert_eq!(validate(&tsp4(), &Solution::new(vec![0, 1, 2, 3])), Ok(()));
        assert_eq!(validate(&tsp4(), &Solution::new(vec![2, 0, 3, 1])), Ok(()));
    }

    #[test]
    fn rejects_duplicate_with_position() {
        let err = validate(&tsp4(), &Solution::new(vec![0, 1, 1, 3])).unwrap_err();
        assert_eq!(err, Violation::DuplicateNode { node: 1, position: 2 });
    }

    #[test]
    fn rejects_missing_node() {
        let err = validate(&tsp4(), &Solution::new(vec![0, 1, 2])).unwrap_err();
        assert_eq!(err, Violation::MissingNode { node: 3 });
    }

    fn cvrp4(capacity: u32) -> Instance {
        Instance::cvrp(
            vec![[0.5, 0.5], [0.1, 0.1], [0.9, 0.1], [0.5, 0.9]],
            vec![0, 4, 4, 4],
            capacity,
        )
        .unwrap()
    }

    #[test]
    fn cvrp_capacity_overload_is_reported_with_route_and_amount() {
        // One route carrying demands 4+4+4 = 12 against capacity 10.
        let err = validate(&cvrp4(10), &Solution::new(vec![0, 1, 2, 3])).unwrap_err();
        assert_eq!(
            err,
            Violation::CapacityExceeded {
                route: 0,
                capacity: 10,
                overload: 2
            }
        );
    }

    #[test]
    fn cvrp_split_routes_within_capacity() {
        let sol = Solution::new(vec![0, 1, 2, 0, 3]);
        assert_eq!(validate(&cvrp4(10), &sol), Ok(()));
        assert_eq!(sol.routes(), vec![&[1usize, 2][..], &[3usize][..]]);
    }

    #[test]
    fn cvrp_must_start_at_depot() {
        let err = validate(&cvrp4(10), &Solution::new(vec![1, 0, 2, 0, 3])).unwrap_err();
        assert_eq!(err, Violation::NotDepotStart);
    }
}
