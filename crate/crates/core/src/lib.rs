//! Exact-arithmetic toolkit for canonoid and Poissonoid transformations.
//!
//! Polynomial-coefficient tensor calculus over fixed coordinate charts, with
//! every symbolic identity checked in exact rational arithmetic. Floats only
//! appear in [`dynamics`].

pub mod canonoid;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod poissonoid;
pub mod polyalg;
pub mod scenarios;
pub mod symmetry;
pub mod tensorcalc;
pub mod whittaker;

pub use error::{Error, Result};
