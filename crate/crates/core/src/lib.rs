//! Exact and numerical machinery for C_λ-extended oscillator algebras.
//!
//! The algebra is generated by `a`, `a†`, `N` and a cyclic generator `K`
//! (`K^λ = I`) subject to
//!
//! ```text
//! [N, a†] = a†      [N, K] = 0      a† K = e^{-2πi/λ} K a†
//! [a, a†] = I + Σ_r γ_r K^r
//! ```
//!
//! The crate provides three independent realizations of these relations and
//! uses them to check one another:
//!
//! * [`fock`]: dense truncated Fock-space matrices (Hamiltonian, spectrum,
//!   deformed-oscillator relations),
//! * [`bilateral`]: a windowed module over `n ∈ [n_min, n_max] ⊂ ℤ` where
//!   negative powers of `a†` make sense,
//! * [`symbolic`]: an exact normal-ordering rewrite engine over the group
//!   ring `ℚ[ℤ_{2λ}]` with formal `γ_r` symbols.
//!
//! [`realizations`] builds the sine-algebra generators `T_m`, the
//! `U_t(sl(2))` quadruple and the deformed Virasoro generators on top of
//! these, and [`suite`] runs the verification grids and assembles a
//! [`report::VerificationReport`].

pub mod bilateral;
pub mod error;
pub mod exec;
pub mod fock;
pub mod params;
pub mod realizations;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod symbolic;

pub use error::{Error, Result};
pub use exec::Exec;
pub use params::AlgebraParams;

/// Tolerance used when validating numeric parameter constraints.
pub const CONSTRAINT_TOL: f64 = 1e-12;
/// Default tolerance for spectra obtained by diagonalization.
pub const SPECTRUM_TOL: f64 = 1e-10;
