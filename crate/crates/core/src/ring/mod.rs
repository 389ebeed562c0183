//! Exact arithmetic in `Z[L]` localized at `L` and at every `L^n - 1`.
//!
//! Denominators are kept as multisets of cyclotomic polynomials, since
//! `L^n - 1 = prod_{d | n} Phi_d(L)` and the `Phi_d` are pairwise coprime
//! irreducibles. That gives every element a unique reduced form (see
//! [`MotivicClass`]) and makes equality decidable by comparing fields.

mod class;
mod cyclotomic;
mod poly;

pub use class::{Degree, MotivicClass, Sign};
pub use cyclotomic::{
    cyclotomic, cyclotomic_factorization, divisors, totient, CyclotomicMultiset, DenFactor,
};
pub use poly::IntPoly;
