//! Exact enumeration of the weak and strong defining hyperplanes (facets) of
//! the constant-returns-to-scale (CCR) production possibility set.
//!
//! The crate is `no_std` and needs only `alloc`. Every quantity is an exact
//! rational, so feasibility verdicts and facet equations carry no tolerance.
//!
//! Pipeline overview:
//!
//! 1. [`models::classify`] splits the units into strong efficient, weak
//!    efficient and interior, then runs the per-axis super-efficiency models
//!    on the strong efficient set to find extreme units.
//! 2. [`facets::generate_virtuals`] perturbs extreme units along the axes whose
//!    super-efficiency model is infeasible; these virtual units sit on weak
//!    facets.
//! 3. [`facets::coplanarity_sets`] relates two pool members when their
//!    midpoint is on the frontier, and [`facets::enumerate_candidate_sets`]
//!    lists the mutually coplanar subsets of size `m + s - 1`.
//! 4. Each candidate set yields a hyperplane through the origin by cofactor
//!    expansion; [`facets::support_test`] keeps the supporting ones, which are
//!    then labelled and canonicalized by [`facets::find_facets`].
//!
//! [`oracle`] holds two independent routes to the same facet set.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dataset;
pub mod error;
pub mod facets;
pub mod linalg;
pub mod lp;
pub mod models;
pub mod oracle;

pub use dataset::{negative_ideal, validate, Dataset, Dmu, NegativeIdeal, Origin, Violation};
pub use error::{Error, Result};
pub use facets::{
    find_facets, CandidatePool, CoplanarityGraph, FacetKind, FacetReport, Hyperplane, SearchConfig,
};
pub use models::{classify, Classification, DmuStatus, Extremity};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;
pub use num_bigint::BigInt;
