//! Exact counting of magic-square variants and semi-magic hypercubes as
//! functions of the line sum `t`.
//!
//! Each class is the set of nonnegative integer solutions of `A·x = t·1`,
//! i.e. the lattice points of the `t`-th dilate of a rational polytope. The
//! crate builds `A`, enumerates the polytope's vertices to bound the Ehrhart
//! period, counts lattice points exactly, and interpolates the resulting
//! quasi-polynomial residue by residue.
//!
//! ```
//! use magicpoly::{count, SquareClass};
//!
//! let n = count(&SquareClass::magic(3), 6, false).unwrap();
//! assert_eq!(n, 13u32.into());
//! ```

pub mod arith;
pub mod cache;
pub mod classes;
pub mod count;
pub mod error;
pub mod geometry;
pub mod param;
pub mod pipeline;
pub mod quasi;

pub use arith::{Rational, RationalMatrix};
pub use cache::{SampleCache, Sampler};
pub use classes::{
    build_constraints, class_profile, ClassKind, ClassProfile, ConstraintSystem, SquareClass,
};
pub use count::{count, CountSample, LatticeCounter};
pub use error::{Error, Result};
pub use geometry::{contains_point, enumerate_vertices, VertexOptions, VertexSet};
pub use pipeline::{reconstruct, Reconstruction};
pub use quasi::{QuasiPolynomial, ReciprocityReport};
