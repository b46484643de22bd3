use super::{OracleError, OracleLabel, Provenance};
use crate::vrp::{Instance, ProblemKind, Solution};

const EPS: f64 = 1e-12;

/// Clarke-Wright savings construction followed by intra-route 2-opt and
/// inter-route relocate until no move improves the cost.
pub fn cvrp_heuristic(instance: &Instance) -> Result<OracleLabel, OracleError> {
    if instance.kind != ProblemKind::Cvrp {
        return Err(OracleError::WrongKind {
            solver: "cvrp_heuristic",
            expected: "CVRP",
        });
    }
    for (node, &demand) in instance.demands.iter().enumerate().skip(1) {
        if demand > instance.capacity {
            return Err(OracleError::Infeasible {
                node,
                demand,
                capacity: instance.capacity,
            });
        }
    }
    let mut routes = savings_construction(instance);
    improve(instance, &mut routes);

    let mut sequence = Vec::with_capacity(instance.n() + routes.len());
    for route in &routes {
        sequence.push(instance.depot());
        sequence.extend_from_slice(route);
    }
    OracleLabel::checked(instance, Solution::new(sequence), Provenance::SavingsTwoOpt)
}

/// Parallel savings: merge routes at their endpoints in order of decreasing
/// savings s(i,j) = c(0,i) + c(0,j) - c(i,j); ties break on (i, j).
fn savings_construction(instance: &Instance) -> Vec<Vec<usize>> {
    let n = instance.n();
    let depot = instance.depot();
    let mut routes: Vec<Vec<usize>> = (1..n).map(|c| vec![c]).collect();
    let mut route_of: Vec<usize> = (0..n).map(|c| c.wrapping_sub(1)).collect();
    let mut loads: Vec<u64> = (1..n).map(|c| instance.demands[c] as u64).collect();

    let mut savings: Vec<(f64, usize, usize)> = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            let s = instance.edge_cost(depot, i) + instance.edge_cost(depot, j)
                - instance.edge_cost(i, j);
            if s > EPS {
                savings.push((s, i, j));
            }
        }
    }
    savings.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    for &(_, i, j) in &savings {
        let (ri, rj) = (route_of[i], route_of[j]);
        if ri == rj || routes[ri].is_empty() || routes[rj].is_empty() {
            continue;
        }
        if loads[ri] + loads[rj] > instance.capacity as u64 {
            continue;
        }
        // Both endpoints must be route ends for the merge to keep paths.
        let i_head = *routes[ri].first().unwrap() == i;
        let i_tail = *routes[ri].last().unwrap() == i;
        let j_head = *routes[rj].first().unwrap() == j;
        let j_tail = *routes[rj].last().unwrap() == j;
        if !(i_head || i_tail) || !(j_head || j_tail) {
            continue;
        }
        let mut left = std::mem::take(&mut routes[ri]);
        let mut right = std::mem::take(&mut routes[rj]);
        if !i_tail {
            left.reverse();
        }
        if !j_head {
            right.reverse();
        }
        left.append(&mut right);
        for &c in &left {
            route_of[c] = ri;
        }
        loads[ri] += loads[rj];
        loads[rj] = 0;
        routes[ri] = left;
    }
    routes.retain(|r| !r.is_empty());
    routes
}

/// Alternates intra-route 2-opt and inter-route relocate to a local optimum.
fn improve(instance: &Instance, routes: &mut Vec<Vec<usize>>) {
    loop {
        let mut improved = false;
        for route in routes.iter_mut() {
            improved |= two_opt_route(instance, route);
        }
        improved |= relocate(instance, routes);
        if !improved {
            routes.retain(|r| !r.is_empty());
            return;
        }
    }
}

/// 2-opt on the closed cycle depot -> route -> depot. Cycle position 0 is the
/// depot, positions 1..=m are the route customers.
fn two_opt_route(instance: &Instance, route: &mut [usize]) -> bool {
    fn at(route: &[usize], depot: usize, idx: usize) -> usize {
        if idx == 0 {
            depot
        } else {
            route[idx - 1]
        }
    }
    let depot = instance.depot();
    let m = route.len();
    if m < 2 {
        return false;
    }
    let mut any = false;
    let mut improved = true;
    while improved {
        improved = false;
        'scan: for i in 0..m {
            for j in i + 1..=m {
                let a = at(route, depot, i);
                let b = at(route, depot, i + 1);
                let c = at(route, depot, j);
                let d = at(route, depot, (j + 1) % (m + 1));
                if a == c || b == d {
                    continue;
                }
                let delta = instance.edge_cost(a, c) + instance.edge_cost(b, d)
                    - instance.edge_cost(a, b)
                    - instance.edge_cost(c, d);
                if delta < -EPS {
                    route[i..j].reverse();
                    improved = true;
                    any = true;
                    continue 'scan;
                }
            }
        }
    }
    any
}

/// First-improvement relocate: move one customer into another route at its
/// best insertion point when capacity allows and cost strictly decreases.
fn relocate(instance: &Instance, routes: &mut Vec<Vec<usize>>) -> bool {
    let depot = instance.depot();
    let loads: Vec<u64> = routes
        .iter()
        .map(|r| r.iter().map(|&c| instance.demands[c] as u64).sum())
        .collect();
    for src in 0..routes.len() {
        for pos in 0..routes[src].len() {
            let customer = routes[src][pos];
            let demand = instance.demands[customer] as u64;
            let prev = if pos == 0 { depot } else { routes[src][pos - 1] };
            let next = if pos + 1 == routes[src].len() {
                depot
            } else {
                routes[src][pos + 1]
            };
            let removal_gain = instance.edge_cost(prev, customer)
                + instance.edge_cost(customer, next)
                - instance.edge_cost(prev, next);
            for dst in 0..routes.len() {
                if dst == src || loads[dst] + demand > instance.capacity as u64 {
                    continue;
                }
                for ins in 0..=routes[dst].len() {
                    let a = if ins == 0 { depot } else { routes[dst][ins - 1] };
                    let b = if ins == routes[dst].len() {
                        depot
                    } else {
                        routes[dst][ins]
                    };
                    let insertion_cost = instance.edge_cost(a, customer)
                        + instance.edge_cost(customer, b)
                        - instance.edge_cost(a, b);
                    if insertion_cost - removal_gain < -EPS {
                        routes[src].remove(pos);
                        routes[dst].insert(ins, customer);
                        routes.retain(|r| !r.is_empty());
                        return true;
                    }
                }
            }
        }
    }
    false
}
