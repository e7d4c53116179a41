//! Polynomial-coefficient tensor calculus on a fixed chart.
//!
//! # Key Operations
//!
//! - [`d`], [`interior`], [`lie_form`]: exterior calculus on k-forms, `k <= 3`
//! - [`lie_bracket`], [`lie_bivector`]: Lie derivatives of fields and bivectors
//! - [`sharp`], [`ham_vf`], [`poisson_bracket`]: the Poisson side
//! - [`schouten`], [`jacobiator`]: Jacobi and compatibility tests
//! - [`pullback_bivector`], [`pullback_form`], [`pushforward_vf`]: linear maps
//!
//! # Design Notes
//!
//! Sign conventions are pinned by three identities: the standard bivector
//! gives `q' = dH/dp, p' = -dH/dq`; the so*(3) bivector gives the Euler field;
//! and `sum dq^i ^ dp_i` has matrix `J`, with `i_{X_H} w = dH`.

mod bivector;
mod field;
mod form;
mod linear;

pub use crate::polyalg::Chart;
pub use bivector::{ham_vf, jacobiator, lie_bivector, poisson_bracket, schouten, sharp, Bivector, Trivector};
pub use field::{lie_bracket, VectorField};
pub use form::{
    d, df, increasing_tuples, interior, lie_form, liouville_form, FormEntryWire, FormWire, KForm, MAX_FORM_DEGREE,
};
pub use linear::{pullback_bivector, pullback_form, pullback_function, pushforward_vf};
