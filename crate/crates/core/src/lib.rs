//! Desk-scale neural vehicle-routing toolkit.
//!
//! The crate is organized around the training pipeline:
//!
//! - [`vrp`] — TSP/CVRP instances, solution validation, tour costs, and the
//!   decoding environment shared by training and inference.
//! - [`gen`] — seeded instance generators (uniform, rotation, explosion),
//!   TSPLIB/CVRPLIB parsing, and the binary dataset format.
//! - [`oracle`] — label producers: exact solvers for small instances
//!   (brute force, Held-Karp), 2-opt and savings heuristics for larger ones,
//!   and the partial-solution sampler used for teacher forcing.
//! - [`autodiff`] — a minimal reverse-mode tape over f64 tensors with exactly
//!   the operations the model needs, plus finite-difference checking.
//! - [`model`] — the light-encoder/heavy-decoder backbone, the causal
//!   lookahead modules with task-specific heads, and the checkpoint format.
//! - [`train`] — teacher-forced supervised training with the multi-depth
//!   lookahead loss, warm-up schedule, and per-step Adam updates.
//! - [`infer`] — greedy construction, random-reconstruct refinement, and
//!   dataset evaluation.
//!
//! Everything is deterministic given a 64-bit seed; see [`rng`].

pub mod autodiff;
pub mod gen;
pub mod infer;
pub mod model;
pub mod oracle;
pub mod rng;
pub mod train;
pub mod vrp;

pub use vrp::{Instance, PartialSample, ProblemKind, Solution};
