//! Exact arithmetic for paramodular groups of polarization (1, t).
//!
//! This crate implements, entirely over exact rational/integer arithmetic:
//!
//! * the paramodular group `Γ_t ⊂ Sp(4, ℚ)` and its extension `Γ_t*` by
//!   Atkin–Lehner style involutions indexed by unitary divisors of `t`
//!   ([`symplectic`]);
//! * the even lattice of signature (3,2) attached to the polarization, the
//!   induced orthogonal maps, discriminant-group actions and reflections
//!   ([`orthogonal`]);
//! * dimensions of eigenspaces of Jacobi cusp forms of weight 3 and index `t`
//!   under the full group of involutions, via an exact class-number trace
//!   formula ([`jacobi`]);
//! * coefficient identities for the arithmetic lift from Jacobi forms to
//!   paramodular forms ([`lifting`]);
//! * Humbert surfaces, their ramification behaviour and representative
//!   involutions ([`humbert`]);
//! * embeddings of Hilbert modular groups over real quadratic orders into
//!   `Γ_t*` ([`hilbert`]).
//!
//! All matrix arithmetic uses arbitrary-precision rationals; no floating
//! point is used anywhere.

pub mod error;
pub mod gaussian;
pub mod hilbert;
pub mod humbert;
pub mod jacobi;
pub mod lifting;
pub mod mat;
pub mod numtheory;
pub mod orthogonal;
pub mod symplectic;

pub use error::Error;

/// Convenient result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
