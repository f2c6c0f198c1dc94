use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::index::{build_two_square_index, TwoSquareIndex};
use crate::{Error, Result};

/// Ordered representation count of n as a sum of four squares from the index's primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RepresentationCount {
    pub n: u64,
    pub r: u64,
    /// One representation, sorted ascending.
    pub witness: Option<[u64; 4]>,
}

/// r(n) = Σ over pair values s ≤ n of ord(s)·ord(n − s).
pub fn count_representations(index: &TwoSquareIndex, n: u64) -> Result<RepresentationCount> {
    check_index(index, n)?;
    let mut r = 0;
    let mut witness = None;
    for e in index.entries_up_to(n) {
        let rest = index.ordered_count(n - e.value);
        if rest > 0 {
            r += e.ordered_count as u64 * rest;
            if witness.is_none() {
                witness = Some(quadruple(index, e.value, n - e.value));
            }
        }
    }
    Ok(RepresentationCount { n, r, witness })
}

fn check_index(index: &TwoSquareIndex, n: u64) -> Result<()> {
    if n > index.n_max() {
        return Err(Error::capacity("representation target", n, index.n_max()));
    }
    Ok(())
}

fn quadruple(index: &TwoSquareIndex, s1: u64, s2: u64) -> [u64; 4] {
    let (a, b) = index.witness(s1).expect("member");
    let (c, d) = index.witness(s2).expect("member");
    let mut w = [a, b, c, d];
    w.sort_unstable();
    w
}

/// Outcome of the early-exit existence probe for one n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probe {
    pub witness: Option<[u64; 4]>,
    pub probes: u64,
}

/// Scan pair values s ≤ n/2 upward until n − s is also a pair value. Any
/// representation has one half ≤ n/2, so exhausting the scan proves none exists.
pub fn probe_representation(index: &TwoSquareIndex, n: u64) -> Result<Probe> {
    check_index(index, n)?;
    let mut probes = 0;
    for &s in index.values().iter().take_while(|&&s| 2 * s <= n) {
        probes += 1;
        if index.contains(n - s) {
            return Ok(Probe {
                witness: Some(quadruple(index, s, n - s)),
                probes,
            });
        }
    }
    Ok(Probe { witness: None, probes })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExceptionReport {
    pub n_max: u64,
    /// n ≡ 4 (mod 24), n ≤ N, with no representation as p₁² + p₂² + p₃² + p₄².
    pub exceptions: Vec<u64>,
    pub count: usize,
    pub candidates: u64,
    pub total_probes: u64,
    /// Mean probes per representable n.
    pub mean_probes: f64,
    pub max_probes: u64,
    pub elapsed_s: f64,
}

/// Scan the class n ≡ 4 (mod 24) up to N. Survivors of the probe are
/// re-verified by the full ordered count.
pub fn scan_exceptions(n_max: u64) -> Result<ExceptionReport> {
    let start = Instant::now();
    let index = build_two_square_index(n_max)?;
    scan_with_index(&index, n_max, start)
}

pub(crate) fn scan_with_index(index: &TwoSquareIndex, n_max: u64, start: Instant) -> Result<ExceptionReport> {
    const CHUNK: u64 = 1 << 12;
    let candidates: Vec<u64> = (4..=n_max).step_by(24).collect();
    let parts: Vec<(Vec<u64>, u64, u64, u64)> = candidates
        .par_chunks(CHUNK as usize)
        .map(|chunk| -> Result<_> {
            let mut survivors = Vec::new();
            let (mut probes, mut hits, mut max) = (0, 0, 0);
            for &n in chunk {
                let p = probe_representation(index, n)?;
                match p.witness {
                    Some(_) => {
                        probes += p.probes;
                        hits += 1;
                        max = max.max(p.probes);
                    }
                    None => survivors.push(n),
                }
            }
            Ok((survivors, probes, hits, max))
        })
        .collect::<Result<_>>()?;

    let mut exceptions = Vec::new();
    let (mut total_probes, mut hits, mut max_probes) = (0, 0, 0);
    for (s, p, h, m) in parts {
        exceptions.extend(s);
        total_probes += p;
        hits += h;
        max_probes = max_probes.max(m);
    }
    for &n in &exceptions {
        let full = count_representations(index, n)?;
        if full.r != 0 {
            return Err(Error::Contract(format!(
                "probe reported {n} as an exception but the full count is {}",
                full.r
            )));
        }
    }
    exceptions.sort_unstable();
    Ok(ExceptionReport {
        n_max,
        count: exceptions.len(),
        exceptions,
        candidates: candidates.len() as u64,
        total_probes,
        mean_probes: if hits > 0 { total_probes as f64 / hits as f64 } else { 0.0 },
        max_probes,
        elapsed_s: start.elapsed().as_secs_f64(),
    })
}
