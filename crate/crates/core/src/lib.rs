//! Exact enumeration of monotone and strictly monotone double Hurwitz numbers,
//! Weingarten calculus on the symmetric group, and the resulting 1/N² cumulant
//! expansions of complex Wishart (LUE) and inverse Wishart matrices.
//!
//! Every symbolic result is exact: integers are arbitrary precision and
//! rational functions are kept in canonical reduced form. Floating point only
//! appears in the Monte-Carlo sampler ([`mc`]).
//!
//! Permutations act on `[n] = {1, …, n}` and compose as functions:
//! `(p ∘ q)(k) = p(q(k))`. A product `α τ₁ ⋯ τ_r` is evaluated as successive
//! right multiplications `((α ∘ τ₁) ∘ τ₂) ∘ ⋯`.

pub mod algebra;
pub mod cumulants;
mod error;
pub mod group_algebra;
pub mod hurwitz;
pub mod identities;
pub mod limits;
pub mod mc;
pub mod serde_bigrat;
pub mod serde_biguint;
pub mod sym;
pub mod weingarten;

pub use error::{Error, Result};
pub use limits::Limits;
