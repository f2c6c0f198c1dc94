//! Representations n = p₁² + p₂² + p₃² + p₄², the scan for exceptions in the
//! class n ≡ 4 (mod 24), the S₁ − S₂ lower bound and the main-term comparison.

mod index;
mod s12;
mod scan;

pub use index::{build_two_square_index, TwoSquareEntry, TwoSquareIndex, MAX_INDEX_N};
pub use s12::{
    compare_main_term, compute_s1_s2, count_representations_restricted, interval_index, restricted_counts, sample_targets,
    MainTermComparison, MainTermContext, MainTermOptions, S12Context, S12Value, MAX_S12_P,
};
pub use scan::{count_representations, probe_representation, scan_exceptions, ExceptionReport, Probe, RepresentationCount};
