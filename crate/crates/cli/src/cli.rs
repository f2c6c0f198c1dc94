//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fourprimes_core::circle::LemmaKind;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "fourprimes", version, about = "Sieve constants, circle-method quantities and exceptional-set scans for sums of four prime squares")]
#[command(after_help = "Options may also be given in a flat key=value file (--config); flags override the file. \
A JSON report written by an earlier run is accepted as a config file and reproduces that run.\n\
Exit status: 0 success, 1 a checked property failed, 2 usage or parameter error.")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Density constants C1, C2, C3 and the margin C1 − C2·C3 by quadrature
    #[command(after_help = "Uses --sigma, --tol, --buchstab-h.\n\
CSV columns: quantity, value, err_estimate (rows C1, C2, C3, C_b2, C_b3, margin).\n\
Exit status 1 if C1 − C2·C3 ≤ 0. The JSON report also records each band check.")]
    Constants,
    /// Exact identity and inequality checks of the sieve weights on [P/2, P)
    #[command(after_help = "Uses --sigma, --P, --samples (random pairs for the inequality), --seed.\n\
CSV columns: check, m, k, kind, lhs, rhs (one row per violation).\n\
Exit status 1 on any violation.")]
    VerifyDecomposition,
    /// Integers n ≡ 4 (mod 24) up to N that are not sums of four prime squares
    #[command(after_help = "Uses --N (or --P), --counts, --restrict-I, --exceptions.\n\
CSV columns: n, r, witness. Without --counts only the exceptions are listed (r = 0, empty witness); \
with --counts every n of the class is listed with its ordered count r and one sorted witness quadruple.\n\
--restrict-I scans n ∈ (N/2, N] with all primes in [P/2, P).\n\
The exception list is also written as plain text, one n per line, to --exceptions \
(default: the --output path with extension .exceptions.txt).")]
    Scan,
    /// Singular series by Euler product and by truncated q-sum
    #[command(after_help = "Uses --targets, --pmax, --qmax.\n\
CSV columns: n, euler, qsum, gap, tail_estimate, admissible.")]
    SingularSeries,
    /// Singular integral by convolution and by the oscillatory route
    #[command(after_help = "Uses --points (default: a grid of --samples points in (1/2, 1]), --tol, --gamma.\n\
CSV columns: t, convolution, oscillatory, difference.")]
    SingularIntegral,
    /// Largest |f_j(α)|/P^(1−σ) over sampled minor-arc α
    #[command(after_help = "Uses --sigma, --P, --j (1 or 2), --samples, --seed.\n\
CSV columns: j, P, samples, rejected, max_ratio, argmax_alpha, mean_ratio.")]
    ScanMinor,
    /// Bilinear-sum lemma experiments on sampled minor-arc α
    #[command(after_help = "Uses --lemma (L31, L32, L33, L34, COUNT31), --X, --R, --S, --U, --Z, --coefficients, --samples, --seed.\n\
Unset R, S, U, Z default to values inside the lemma's hypotheses; the resolved values are echoed in the report.\n\
CSV columns: alpha, value, bound, ratio.")]
    Lemma,
    /// Restricted representation counts against the predicted main term
    #[command(after_help = "Uses --N, --targets (default: --samples seeded draws of n ≡ 4 (mod 24) in (N/2, N]), \
--pmax, --qmax, --gamma, --tol.\n\
CSV columns: n, quad_count, singular_series, singular_integral, prediction, ratio, ratio_oscillatory.")]
    CompareMainTerm,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constants => "constants",
            Command::VerifyDecomposition => "verify-decomposition",
            Command::Scan => "scan",
            Command::SingularSeries => "singular-series",
            Command::SingularIntegral => "singular-integral",
            Command::ScanMinor => "scan-minor",
            Command::Lemma => "lemma",
            Command::CompareMainTerm => "compare-main-term",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientKind {
    Ones,
    Random,
}

/// Every option, unset unless given. Merged over the config file, then defaulted.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// key=value configuration file
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Sieve exponent σ, in (3/20, 1/6)
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    /// Interval scale P (N = (3P/2)²)
    #[arg(long = "P", global = true)]
    pub p: Option<f64>,
    /// Problem size N (P = (2/3)√N)
    #[arg(long = "N", global = true)]
    pub n: Option<f64>,
    /// Quadrature tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Step of the Buchstab function table
    #[arg(long = "buchstab-h", global = true)]
    pub buchstab_h: Option<f64>,
    /// Euler-product truncation p ≤ pmax
    #[arg(long, global = true)]
    pub pmax: Option<u64>,
    /// q-sum truncation q ≤ qmax
    #[arg(long, global = true)]
    pub qmax: Option<u64>,
    /// Seed for every sampling step
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Report format
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Sample count of sampling subcommands
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Comma-separated target integers n
    #[arg(long, global = true, value_delimiter = ',')]
    pub targets: Option<Vec<u64>>,
    /// Comma-separated evaluation points t
    #[arg(long, global = true, value_delimiter = ',')]
    pub points: Option<Vec<f64>>,
    /// Frequency cutoff Γ of the oscillatory singular integral
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Weight index j of the exponential sum f_j
    #[arg(long, global = true)]
    pub j: Option<usize>,
    /// List every n of the class with its representation count
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    pub counts: Option<bool>,
    /// Restrict primes to [P/2, P)
    #[arg(long = "restrict-I", global = true, num_args = 0..=1, default_missing_value = "true")]
    pub restrict_i: Option<bool>,
    /// Lemma experiment
    #[arg(long, global = true)]
    pub lemma: Option<LemmaKind>,
    /// Lemma length X
    #[arg(long = "X", global = true)]
    pub x: Option<u64>,
    /// Lemma range R
    #[arg(long = "R", global = true)]
    pub r: Option<f64>,
    /// Lemma range S
    #[arg(long = "S", global = true)]
    pub s: Option<f64>,
    /// Lemma range U (COUNT31)
    #[arg(long = "U", global = true)]
    pub u: Option<f64>,
    /// Lemma sieve level z (L34)
    #[arg(long = "Z", global = true)]
    pub z: Option<f64>,
    /// Lemma coefficient sequences
    #[arg(long, global = true)]
    pub coefficients: Option<CoefficientKind>,
    /// Plain-text exception list of the scan
    #[arg(long, global = true, value_name = "PATH")]
    pub exceptions: Option<PathBuf>,
}
