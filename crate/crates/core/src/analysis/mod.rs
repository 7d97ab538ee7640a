//! Expected generator counts, their asymptotics, and deterministic bounds.

pub mod bounds;
pub mod expectation;
pub mod quadrature;
pub mod special;

pub use bounds::{
    attainable_gammas_two_records, bounds, census_two_records, lower_bound, lower_bound_witness, upper_bound,
};
pub use expectation::{
    asymptotic_coefficients, asymptotic_expected, binomial_kernel_interior, depoissonization_bound,
    expectation_table, generators_expected, interior_expected, poissonized_expansion, poissonized_interior,
    AsymptoticCoefficients, ExpectationRow, ExpectationTable,
};
pub use special::{gamma_derivative, polygamma_at_integer, EULER_GAMMA};
