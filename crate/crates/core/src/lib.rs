//! Exact refined enumeration of alternating sign matrices (ASMs) and
//! descending plane partitions (DPPs).
//!
//! The crate is organized bottom-up:
//!
//! - [`exactalg`]: arbitrary-precision rationals, sparse Laurent polynomials,
//!   normalized rational functions, the quadratic extension ring holding `nu`,
//!   and truncated power series.
//! - [`linalg`]: dense exact matrices, determinants, minors and the
//!   unitriangular sandwich.
//! - [`genfun`]: infinite matrices given by bivariate generating functions or
//!   entry rules, the structured `L`/`U`/`S`/`T` families and graded products.
//! - [`asm`], [`dpp`]: the two combinatorial sides, their brute-force
//!   partition functions and the determinant formulas for them.
//! - [`lorentzian`]: the transfer matrix `T(g,a)`, its commuting families,
//!   spectral data and the integrable-variety intersection.
//!
//! Data-parallel loops (enumeration sums, minor expansion, sample sweeps)
//! go through [`par`], which uses rayon when the `parallel` feature is on
//! and plain iterators otherwise.

pub mod asm;
pub mod check;
pub mod dpp;
pub mod error;
pub mod exactalg;
pub mod genfun;
pub mod linalg;
pub mod lorentzian;
pub mod par;

pub use error::{Error, Result};
pub use exactalg::{ExactDiv, Field, GradedSeries, MPoly, NuElem, RatFun, Rational, Ring};
pub use genfun::{InfMatrix, StructParams};
pub use linalg::Matrix;
