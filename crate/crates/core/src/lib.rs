//! Generalized Tutte polynomials of ranked sets.
//!
//! A ranked set is a finite ground set together with a tabulated rank
//! function; matroids, greedoids and antimatroids are refinements detected by
//! predicates. The crate computes the corank-nullity and Tutte polynomials
//! exactly, checks the affine relations their coefficients satisfy, builds the
//! usual families of examples and runs small exhaustive searches.

pub mod antimatroid;
pub mod bipoly;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod identities;
pub mod io;
pub mod ranked;
pub mod realizability;
pub mod tutte;

pub use bipoly::{binomial, shifted_from_grid, BiPoly};
pub use error::{Axiom, Error, Result};
pub use ranked::{FeasibleFamily, GroundSet, Mask, RankTable, RankedSet, Witness, MAX_N};
pub use tutte::{
    corank_cardinality, corank_nullity, tutte_expansion, tutte_recursion, PivotOrder, TutteResult,
};
