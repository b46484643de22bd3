use super::validate::{validate, Violation};
use super::{Instance, Solution};

/// Total travel cost of a solution: the sum of consecutive edge costs plus
/// the wrap-around edge closing the tour. For CVRP, depot returns inside the
/// sequence are ordinary edges and the wrap-around closes the final route.
///
/// The solution is validated first; an invalid solution yields the first
/// violated constraint.
pub fn tour_cost(instance: &Instance, solution: &Solution) -> Result<f64, Violation> {
    validate(instance, solution)?;
    Ok(cost_unchecked(instance, &solution.sequence))
}

/// Cost of a sequence without validity checks; used by solvers on
/// intermediate tours they maintain as valid by construction.
pub(crate) fn cost_unchecked(instance: &Instance, sequence: &[usize]) -> f64 {
    let k = sequence.len();
    let mut total = 0.0;
    for i in 0..k {
        total += instance.edge_cost(sequence[i], sequence[(i + 1) % k]);
    }
    total
}
