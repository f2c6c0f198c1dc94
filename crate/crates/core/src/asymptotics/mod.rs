//! Continuum densities of the sieve weights: the Buchstab function ω, the
//! conversion of ψ-terms into integrals against ω, and the constants C₁, C₂, C₃.

mod buchstab;
mod constants;
mod integral;

pub use buchstab::{build_buchstab, BuchstabTable, DEFAULT_STEP, DEFAULT_U_MAX};
pub use constants::{compute_constants, term_constant, Constant, ConstantsReport, TermContribution};
pub use integral::{integrate, term_to_integral, Beta, TermIntegral, Kernel, Measure, SlabRule};
