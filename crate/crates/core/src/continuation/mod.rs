//! Newton solves on the discretized surface equation, detection of the
//! bifurcation points on the trivial branch and pseudo-arclength tracing of
//! the bifurcating branches.

mod bifurcation;
mod branch;
mod newton;
mod sweep;

pub use bifurcation::{find_bifurcation_points, restricted_determinant_sign, BifurcationPoint};
pub use branch::{
    fit_power_law, is_monotone_profile, linear_remainder, solve_at_amplitudes, trace_branch, trace_branch_until,
    Branch, BranchPoint, BranchStart,
};
pub use newton::{newton_solve, Hold, NewtonOutcome, SolverConfig};
pub use sweep::{sweep_surface, SweepCell, SweepResult, SweepSpec};
