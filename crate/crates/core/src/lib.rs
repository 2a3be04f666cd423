//! Verification laboratory for dot product sets of translated paraboloids.
//!
//! The crate gathers small, independently checkable pieces of the underlying
//! geometry:
//!
//! * [`geometry`]: the rational map sending points of a translated paraboloid
//!   to pinned squared distances, its Jacobian, and the degenerate region
//!   where that Jacobian vanishes.
//! * [`tube`]: extents and covering counts of tube intersections with
//!   hypersurfaces in polar form, including the tangent-sphere case.
//! * [`fractal`]: lattice approximations of Cantor-like sets, interval covers
//!   of their dot product sets, and a box-counting dimension estimator.
//! * [`ff`]: brute-force dot product sets of subsets of the paraboloid over a
//!   prime field.
//! * [`measure`]: atomic measures, push-forwards under x ↦ x·y, and the
//!   Fourier identity relating the two.
//!
//! Generic operations accept any [`geometry::Scalar`], so everything with an
//! exact formulation can be run in both f64 and arbitrary-precision rational
//! arithmetic.

pub mod error;
pub mod ff;
pub mod fractal;
pub mod geometry;
pub mod measure;
pub mod stats;
pub mod tube;

pub use error::{Error, Result};
pub use ff::{
    dot_product_set, isotropic_vectors, paraboloid_points, threshold_scan, FpPointSet, PrimeField,
};
pub use fractal::{
    box_dimension_estimate, build_level, cover_sweep, dot_cover_euclidean, dot_cover_paraboloid,
    parabola_identity_check, CellSet, CoverMode, DotCover, IntervalCover, LatticeApproxParams,
    SweepRow, SweepSlopes,
};
pub use geometry::{
    h_offset, identity_residual, jacobian_closed, jacobian_numeric, lift, region_report,
    rotation_to_canonical, sample_degenerate_points, transform_map, OriginPosition, Point,
    RegionReport, Scalar, TranslationVector, SINGULARITY_EPS,
};
pub use measure::{
    fourier_at, pushforward_dot, pushforward_identity_residual, AtomicMeasure,
};
pub use tube::{
    cover_count, intersection_extent, tangent_cap_extent, tangent_direction, Branch, PolarSurface,
    Tube,
};
