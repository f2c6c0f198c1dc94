//! The Buchstab-identity decomposition of ψ(m, P^{1/2}) into the weights
//! g₁, b₁, b₂ (first identity) and g₂, b₃ (second identity), with exact
//! evaluation at integers and identity checks.

mod bilinear;
mod checks;
mod constraint;
mod decomposition;
mod params;
mod term;

pub use bilinear::{
    bilinear_split, region_implies_at_most, MobiusBranch, SumType, TermClassification, Witness, WitnessSource,
    TYPE_II_RANGE,
};
pub use checks::{
    char_sum_check, density_sum, random_pairs, verify_identities, verify_inequality, CharSum, DensitySum,
    IdentityReport, InequalityReport, PairViolation, Sampling, Violation, ViolationKind,
};
pub use constraint::{good_exponent_ranges, Coverage, ExponentConstraint, Relation, SubproductRule, MAX_VARS};
pub use decomposition::{build_decomposition, Decomposition, TermCatalog, Weight, WeightValues};
pub use params::{make_params, Exponent, SieveParams};
pub use term::{InnerSieve, Part, SieveTerm, TermId};

use crate::arith::PrimeTable;
use crate::Result;

/// Unsigned value of one term at m, factorising m with `primes`.
pub fn eval_term(term: &SieveTerm, m: u64, params: &SieveParams, primes: &PrimeTable) -> Result<u64> {
    Ok(term.eval(&primes.factorize(m)?, params))
}

/// ρ_j(m) for j ∈ 1..=3 (j = 0 gives ψ(m, P^{1/2})).
pub fn eval_rho(d: &Decomposition, j: usize, m: u64, primes: &PrimeTable) -> Result<i64> {
    d.eval_rho(j, &primes.factorize(m)?)
}
