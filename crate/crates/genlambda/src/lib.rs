//! Exact arithmetic for generalized λ modular functions.
//!
//! For a level `N ≥ 7` and integers `1 < ℓ ≠ k < N/2`, the quotient
//!
//! ```text
//! Λ_{k,ℓ} = (φ_k − φ_1) / (φ_ℓ − φ_1),      φ_s(τ) = ℘(s/N; Z+Zτ)/(2πi)² − 1/12,
//! ```
//!
//! is a modular function for Γ₁(N). This crate computes, in exact cyclotomic
//! arithmetic over Q(ζ_N):
//!
//! * q-expansions of the weight-2 slashes `φ_s[A]₂` and of `Λ_{k,ℓ}∘A`,
//!   `W_a∘A` for any `A ∈ SL₂(Z)` ([`phiexp`]);
//! * closed-form leading coefficients `θ_{r,s}(A)` and their case analysis
//!   ([`phiexp::theta`]);
//! * a transversal of `SL₂(Z)` modulo `Γ₁(N){±E₂}` together with the Galois
//!   permutation `σ_h` acting on it ([`cosets`]);
//! * the modular equation `Φ(X, j) = ∏_{A}(X − Λ_{k,ℓ}∘A)` with verified
//!   rational-integer coefficients ([`modpoly`]);
//! * high-precision evaluation at imaginary quadratic points and certificates
//!   that the values are algebraic integers ([`cmeval`]).
//!
//! The exact layers ([`cyclotomic`], [`qlaurent`], [`phiexp`], [`cosets`],
//! [`modpoly`]) never touch floating point; the numeric layer ([`numeric`],
//! [`cmeval`]) is used only to evaluate and cross-check.
//!
//! See the `examples/` directory for one runnable program per capability, or
//! the thin `genlambda` binary for the same operations as subcommands.

pub mod cli;
pub mod cmeval;
pub mod cosets;
pub mod cyclotomic;
pub mod error;
pub mod modpoly;
pub mod numeric;
pub mod numtheory;
pub mod phiexp;
pub mod qlaurent;

pub use cyclotomic::{CycloContext, CyclotomicNumber};
pub use error::Error;
pub use phiexp::{BraceValue, LambdaParams, UnimodularMatrix};
pub use qlaurent::QLaurentSeries;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
