//! Exact-arithmetic toolkit for Fano simplices and the fake weighted
//! projective spaces they encode.
//!
//! A Fano simplex is a lattice simplex with primitive vertices and the origin
//! in its strict interior; each one determines a weight system and a finite
//! quotient of a weighted projective space. This crate builds those simplices,
//! computes their invariants (weights, multiplicity, volume, degree, quotient
//! group, cone singularities), classifies them up to lattice equivalence, and
//! checks the classical volume and weight inequalities against them — all in
//! arbitrary-precision integer and rational arithmetic, never floating point.

pub mod bounds;
pub mod classify;
pub mod lattice;
pub mod simplex;
pub mod wps;

pub use bounds::{
    applicable_reports, barycentric_bound, canonical_mult_bound, corput_volume_bound,
    lambda0_lower_bound, mult_bound, mult_bound_claimed, nill_bounds, pikhurko_volume_bound,
    pikhurko_volume_report, summarize_reports, verify_corpus, BoundReport, BoundStats,
    CorpusSummary, NillReport,
};
pub use classify::{
    apply_hermite, enumerate_fake_wps, enumerate_hermite, normal_form,
    quotient_construction_crosscheck, quotient_construction_simplex, ClassFilter,
    ClassificationRecord, EnumerateError, EnumerationOutcome, HermiteMatrix,
};
pub use lattice::{
    column_hermite, hermite_reduce, positive_relation, quotient_invariant_factors,
    smith_normal_form, sublattice_index, IntMatrix, LatticeError, LatticePoint,
    SmithDecomposition, SublatticeIndex,
};
pub use simplex::{
    ConeSingularity, FanoSimplex, RationalSimplex, SimplexError, SingularityClass, WeightSystem,
};
pub use wps::{
    enumerate_gorenstein_weights, is_gorenstein_weights, is_well_formed, search_weights,
    sylvester, wps_simplex, SylvesterTable, WeightError,
};
