//! Importance sampling of multivariate Pareto records.
//!
//! A point is a *record* when no earlier observation is strictly below it in
//! every coordinate. The region where the next record can land is the union
//! of the upper orthants of finitely many minimal points, the *generators*.
//! This crate keeps that generator set up to date as records arrive, samples
//! new records directly from the region, and evaluates the expected number of
//! generators after `n` uniform observations.
//!
//! ```
//! use pareto_records::{run_simulation, Dimension, Variant};
//!
//! let stream = run_simulation(Dimension::new(3).unwrap(), 50, 7, Variant::Efficient).unwrap();
//! for e in &stream.entries {
//!     assert_eq!(e.gamma_after, 2 * e.rho_after + 1);
//! }
//! ```

pub mod analysis;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod ledger;
pub mod oracle;
pub mod output;
pub mod sampler;

pub use error::{Error, Result};
pub use generators::{
    count_broken_records, new_generator_set, update_bivariate, update_efficient, update_naive, BivariateFrontier,
    GeneratorSet, GeneratorSnapshot, UpdateReport, Variant,
};
pub use geometry::{
    check_tie_free, covered_by_generators, in_record_setting_region, join, orthant_probability,
    strictly_dominates, weakly_dominates, Dimension, Point, Scale, WeakOrder,
};
pub use ledger::{RunLedger, FORMAT_VERSION};
pub use oracle::{generators_via_partitions, generators_via_projection, interior_generators};
pub use sampler::{
    choose_generator, derive_seed, naive_record_stream, next_record, run_simulation, sample_in_orthant,
    sample_in_orthant_on, simulate, simulate_on,
    RandomSource, RecordEntry, RecordState, RecordStream,
};
pub use analysis::{
    asymptotic_coefficients, asymptotic_expected, attainable_gammas_two_records, bounds, gamma_derivative,
    generators_expected, interior_expected, lower_bound_witness, poissonized_interior, AsymptoticCoefficients,
    ExpectationTable,
};
