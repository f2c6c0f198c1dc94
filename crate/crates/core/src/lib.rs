//! Desk-scale computational workbench for sums of four squares of primes.
//!
//! The crate is organised by subsystem:
//!
//! * [`arith`]: prime tables, factorisation, multiplicative functions,
//!   Diophantine approximation and Dirichlet characters.
//! * [`sieve`]: the Buchstab-identity decomposition of the prime indicator
//!   into the weights ρ₁, ρ₂, ρ₃, evaluated exactly at integers.
//! * [`asymptotics`]: the Buchstab function ω and the integrals that give
//!   the sieve densities C₁, C₂, C₃.
//! * [`circle`]: arcs, exponential sums, Gauss sums, singular series and
//!   singular integral, and the exponential-sum experiments.
//! * [`exceptional`]: representation counts and the scan for integers
//!   n ≡ 4 (mod 24) that are not sums of four prime squares.

pub mod arith;
pub mod asymptotics;
pub mod circle;
pub mod error;
pub mod exceptional;
pub mod interval;
pub mod polytope;
pub mod quadrature;
pub mod sieve;

pub use error::{Error, Result};

/// Default sieve exponent σ = 5/32 + 10⁻⁴.
pub const DEFAULT_SIGMA: f64 = 5.0 / 32.0 + 1e-4;

/// e^{-γ}, the limiting value of the Buchstab function.
pub const EXP_NEG_EULER_GAMMA: f64 = 0.561_459_483_566_885_2;
