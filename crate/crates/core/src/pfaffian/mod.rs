//! Logarithmic Pfaffian systems with constant rational residues.

mod checks;
mod system;

pub use checks::{
    check_assumption_generic, check_integrability, check_star_conditions, common_kernel,
    describe_offender, dual_system, fiber_restriction, nonzero_integer_eigenvalues,
    pencil_minor_gcd, transverse_sum, FiberSystem, GenericReport, IntegrabilityReport, StarReport,
    SUM_LABEL,
};
pub use system::{ConvolutionParameter, PfaffianSystem};
