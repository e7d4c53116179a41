//! Exact rationals, sparse multivariate polynomials and their text format.
//!
//! # Key Operations
//!
//! - [`parse_poly`] / `Display`: the text grammar, round-trip exact
//! - `+ - *`, [`Polynomial::scale`], [`Polynomial::pow`]: canonical arithmetic
//! - [`Polynomial::diff`]: partial derivatives
//! - [`Polynomial::eval_at`], [`Polynomial::eval_f64`]: exact and float evaluation
//! - [`Polynomial::compose_linear`]: `p(Ax)` for constant matrices
//!
//! # Design Notes
//!
//! Terms live in a `BTreeMap` keyed by graded-lex monomials, so iteration,
//! printing and linear-system column order are all deterministic.

mod chart;
mod parse;
mod poly;
mod rational;

pub use chart::Chart;
pub use parse::parse_poly;
pub use poly::{Monomial, Polynomial};
pub use rational::{format_rational, frac, int, parse_rational, sqrt_exact, to_f64, Rational};
