use super::OracleError;
use crate::vrp::{Instance, PartialSample, ProblemKind, Solution};
use rand::Rng;

/// Draws a teacher-forcing segment from a labeled solution: length uniform on
/// [4, len], a uniform start offset on the cyclic sequence, and a uniform
/// traversal direction. For CVRP the capacity available at the segment start
/// is recovered by replaying the solution backwards to the preceding depot
/// visit.
pub fn sample_partial<R: Rng>(
    instance: &Instance,
    solution: &Solution,
    rng: &mut R,
) -> Result<PartialSample, OracleError> {
    let len = solution.len();
    if len < 4 {
        return Err(OracleError::SampleTooShort);
    }
    let n_p = rng.gen_range(4..=len);
    let offset = rng.gen_range(0..len);
    let reversed = rng.gen_bool(0.5);

    let seq = &solution.sequence;
    let mut nodes = Vec::with_capacity(n_p);
    for i in 0..n_p {
        let idx = if reversed {
            (offset + len - (i % len)) % len
        } else {
            (offset + i) % len
        };
        nodes.push(seq[idx]);
    }

    let start_capacity = if instance.kind == ProblemKind::Cvrp {
        capacity_before(instance, seq, offset, reversed)
    } else {
        0
    };

    Ok(PartialSample {
        nodes,
        start_capacity,
    })
}

/// Capacity available when arriving at position `offset`, walking the cyclic
/// sequence against the traversal direction until the previous depot visit.
fn capacity_before(instance: &Instance, seq: &[usize], offset: usize, reversed: bool) -> u32 {
    let len = seq.len();
    let depot = instance.depot();
    let mut used = 0u32;
    for back in 1..len {
        let idx = if reversed {
            (offset + back) % len
        } else {
            (offset + len - back) % len
        };
        if seq[idx] == depot {
            break;
        }
        used += instance.demands[seq[idx]];
    }
    instance.capacity - used
}
