//! Exact coefficient arithmetic.

pub mod bivariate;
pub mod gcd;
pub mod mpoly;
pub mod nu;
pub mod parse;
pub mod ratfun;
pub mod ring;
pub mod series;

pub use bivariate::{BiSeries, UvFrac, UvPoly};
pub use gcd::gcd;
pub use mpoly::MPoly;
pub use nu::NuElem;
pub use parse::{parse_mpoly, parse_ratfun};
pub use ratfun::{bindings, RatFun};
pub use ring::{binomial, format_rational, parse_rational, rat, ratio, ExactDiv, Field, Rational, Ring};
pub use series::GradedSeries;
