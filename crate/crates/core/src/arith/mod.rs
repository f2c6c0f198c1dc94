//! Arithmetic substrate: primes, factorisation, multiplicative functions,
//! Diophantine approximation and Dirichlet characters.

mod characters;
mod diophantine;
mod factor;
mod primes;

pub use characters::{characters_mod, CharacterGroup, DirichletCharacter, MAX_CHARACTER_MODULUS};
pub use diophantine::{diophantine_approx, RationalApprox};
pub use factor::{gcd, psi, rough_indicator, Factorization};
pub use primes::{sieve_primes, PrimeTable, SmallestFactorTable, DEFAULT_CEILING, MAX_LIMIT, SEGMENT_SIZE};
