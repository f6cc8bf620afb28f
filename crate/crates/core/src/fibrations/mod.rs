//! Lifting problems, fibration checks, fiber transport and fibrewise contiguity.

mod factorization;
mod fibrewise;
mod lift;
mod path_lift;
mod transport;

pub use factorization::{
    diagonal_factorization, mapping_path_factorization, DiagonalFactorization,
    MappingPathFactorization,
};
pub use fibrewise::{
    compare_lifts, fibrewise_contiguous, fibrewise_equivalence, trivial_model,
    FibrewiseEquivalence, FibrewiseSearch, SubdivisionMap,
};
pub use lift::{
    lift_census, lift_contiguous, sample_family, sample_fibration, solve_lift,
    solve_lift_whole_cylinder, whole_cylinder_lifts, Agreement, Census, FibrationStatus,
    FibrationVerdict, LiftOutcome, LiftProblem,
};
pub use path_lift::{lift_inputs, path_fibration_lift, PathLift, PathLifter};
pub use transport::{
    fiber, fiber_transport, product_fibration, pullback_fibration, transport_problem,
    transport_spread, Transport, TransportSpread,
};
