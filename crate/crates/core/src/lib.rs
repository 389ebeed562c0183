//! Exact computation of motivic classes in the Grothendieck ring of stacks,
//! restricted to the subring generated by the Lefschetz class `L`.
//!
//! - [`ring`]: canonical-form arithmetic in `Z[L, L^-1, (L^n - 1)^-1]`
//! - [`classes`]: closed forms for `SO_n`, `GL_n`, `SL_n`, `BO_n` and the other classifying stacks
//! - [`recursion`]: the stratification recursion for `BO_n` / `BSO_n` with derivation traces
//! - [`series`]: virtual dimension, filtration and expansion in powers of `L^-1`
//! - [`cli`]: expression language and the `motivic` command line
//! - [`sweep`]: parallel per-`n` verification reports

pub mod classes;
pub mod cli;
pub mod recursion;
pub mod ring;
pub mod series;
pub mod sweep;

pub use classes::{class_of, GroupSpec};
pub use ring::{Degree, IntPoly, MotivicClass};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a unit in the localized ring: {0}")]
    NotAUnit(String),
    #[error("pole at L = {0}")]
    PoleAtQ(String),
    #[error("unsupported class: {0}")]
    UnsupportedSpec(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
