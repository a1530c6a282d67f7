//! Mean exponents of class groups in towers of number fields.
//!
//! The crate evaluates genus-theory rank bounds, Golod–Shafarevich style
//! infinitude criteria, Tsfasman–Vladut estimates for `B(L/K)` and the
//! resulting upper bounds on the asymptotic mean exponent. An independent
//! binary-quadratic-form oracle supplies ground truth for small imaginary
//! quadratic fields.

pub mod arith;
pub mod error;
pub mod fields;
pub mod groups;
pub mod oracle;
pub mod propgroups;
pub mod scenario;
pub mod towers;
pub mod tv;

pub use error::{Error, Result};
