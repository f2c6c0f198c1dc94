use rayon::prelude::*;
use serde::Serialize;

use crate::arith::sieve_primes;
use crate::{Error, Result};

/// Largest bound accepted for a two-square index (a 125 MB bit table).
pub const MAX_INDEX_N: u64 = 1_000_000_000;

/// Values p² + q² ≤ N over a set of primes, with a membership bit table,
/// the smallest witness pair and the ordered-pair count of each value.
#[derive(Debug, Clone)]
pub struct TwoSquareIndex {
    n_max: u64,
    member: Vec<u64>,
    values: Vec<u64>,
    witness: Vec<(u32, u32)>,
    ordered: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoSquareEntry {
    pub value: u64,
    pub witness: (u32, u32),
    pub ordered_count: u32,
}

/// Index over all primes up to √N.
pub fn build_two_square_index(n_max: u64) -> Result<TwoSquareIndex> {
    check_capacity(n_max)?;
    let root = (n_max as f64).sqrt() as u64 + 1;
    let primes = sieve_primes(root.max(2))?;
    TwoSquareIndex::from_primes(primes.primes(), n_max)
}

fn check_capacity(n_max: u64) -> Result<()> {
    if n_max > MAX_INDEX_N {
        return Err(Error::capacity("two-square index bound", n_max, MAX_INDEX_N));
    }
    Ok(())
}

impl TwoSquareIndex {
    /// Index over an ascending list of primes.
    pub fn from_primes(primes: &[u64], n_max: u64) -> Result<Self> {
        check_capacity(n_max)?;
        if primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Contract("prime list must be strictly ascending".into()));
        }
        let mut triples: Vec<(u64, u32, u32)> = primes
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, &p)| {
                primes[i..]
                    .iter()
                    .map(move |&q| (p * p + q * q, p as u32, q as u32))
                    .take_while(move |&(s, _, _)| s <= n_max)
            })
            .collect();
        triples.par_sort_unstable();

        let mut member = vec![0u64; (n_max / 64 + 1) as usize];
        let mut values = Vec::new();
        let mut witness = Vec::new();
        let mut ordered: Vec<u32> = Vec::new();
        for (s, p, q) in triples {
            let weight = if p == q { 1 } else { 2 };
            if values.last() == Some(&s) {
                *ordered.last_mut().expect("parallel vectors") += weight;
            } else {
                member[(s / 64) as usize] |= 1 << (s % 64);
                values.push(s);
                witness.push((p, q));
                ordered.push(weight);
            }
        }
        Ok(TwoSquareIndex {
            n_max,
            member,
            values,
            witness,
            ordered,
        })
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Ascending distinct values.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn contains(&self, s: u64) -> bool {
        s <= self.n_max && self.member[(s / 64) as usize] >> (s % 64) & 1 == 1
    }

    fn position(&self, s: u64) -> Option<usize> {
        if !self.contains(s) {
            return None;
        }
        self.values.binary_search(&s).ok()
    }

    /// Number of ordered prime pairs (p, q) with p² + q² = s.
    pub fn ordered_count(&self, s: u64) -> u64 {
        self.position(s).map_or(0, |i| self.ordered[i] as u64)
    }

    /// The pair p ≤ q with p² + q² = s and p smallest.
    pub fn witness(&self, s: u64) -> Option<(u64, u64)> {
        self.position(s).map(|i| (self.witness[i].0 as u64, self.witness[i].1 as u64))
    }

    pub fn entries(&self) -> impl Iterator<Item = TwoSquareEntry> + '_ {
        (0..self.values.len()).map(|i| TwoSquareEntry {
            value: self.values[i],
            witness: self.witness[i],
            ordered_count: self.ordered[i],
        })
    }

    /// Entries with value ≤ `bound`, ascending.
    pub fn entries_up_to(&self, bound: u64) -> impl Iterator<Item = TwoSquareEntry> + '_ {
        let end = self.values.partition_point(|&v| v <= bound);
        self.entries().take(end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_members() {
        let idx = build_two_square_index(200).unwrap();
        assert_eq!(idx.values()[0], 8);
        assert!(idx.contains(8) && idx.contains(13) && !idx.contains(9));
        assert_eq!(idx.witness(13), Some((2, 3)));
        assert_eq!(idx.ordered_count(13), 2);
        assert_eq!(idx.ordered_count(50), 1);
        assert!(matches!(build_two_square_index(MAX_INDEX_N + 1), Err(Error::Capacity { .. })));
    }
}
