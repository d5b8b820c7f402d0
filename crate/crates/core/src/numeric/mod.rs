//! Numeric analytic continuation of fiber Fuchsian systems.

mod integrator;
mod loops;
mod monodromy;
mod ode;
mod path;

pub use integrator::{
    cash_karp, dopri5, integrator_by_name, EmbeddedTableau, Integrator, IntegratorRegistry,
    DEFAULT_INTEGRATOR,
};
pub use loops::{generator_order, standard_loops, LoopSystem};
pub use monodromy::{
    distance_from_identity, expected_local_eigenvalues, monodromy_of_ode,
    monodromy_tuple_of_system, verify_mc_compatibility, CompatibilityReport, MonodromyReport,
    PRODUCT_SLACK,
};
pub use ode::{transport_along_path, FuchsianODE, TransportSettings, TransportStats, DEFAULT_TOL};
pub use path::{LoopPath, Segment};
