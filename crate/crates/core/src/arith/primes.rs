use crate::arith::Factorization;
use crate::{Error, Result};

/// Entries per sieve segment (fits a typical L2 cache as a byte buffer).
pub const SEGMENT_SIZE: usize = 1 << 20;

/// Hard upper bound on any prime table.
pub const MAX_LIMIT: u64 = 1 << 40;

/// Default memory ceiling: 2^34 entries is a 2 GiB bit table.
pub const DEFAULT_CEILING: u64 = 1 << 34;

/// Primality bit table over `[0, limit]` together with the ascending prime list.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    bits: Vec<u64>,
    primes: Vec<u64>,
}

pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    PrimeTable::with_ceiling(limit, DEFAULT_CEILING)
}

fn simple_sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for n in 2..=limit {
        if !composite[n] {
            out.push(n as u64);
            let mut k = n * n;
            while k <= limit {
                composite[k] = true;
                k += n;
            }
        }
    }
    out
}

impl PrimeTable {
    pub fn new(limit: u64) -> Result<Self> {
        sieve_primes(limit)
    }

    pub fn with_ceiling(limit: u64, ceiling: u64) -> Result<Self> {
        let cap = ceiling.min(MAX_LIMIT);
        if limit > cap {
            return Err(Error::capacity("prime table limit", limit, cap));
        }
        if limit < 2 {
            return Err(Error::Domain(format!("prime table limit must be at least 2, got {limit}")));
        }
        let root = (limit as f64).sqrt() as u64 + 1;
        let base = simple_sieve(root as usize);
        let words = (limit / 64 + 1) as usize;
        let mut bits = vec![0u64; words];
        let mut primes = Vec::new();
        let mut segment = vec![true; SEGMENT_SIZE];

        let mut lo = 0u64;
        while lo <= limit {
            let hi = (lo + SEGMENT_SIZE as u64 - 1).min(limit);
            let len = (hi - lo + 1) as usize;
            segment[..len].fill(true);
            if lo == 0 {
                // 0 and 1 are not prime; limit ≥ 2 so both slots exist.
                segment[0] = false;
                segment[1] = false;
            }
            for &p in &base {
                if p * p > hi {
                    break;
                }
                let first = (p * p).max(lo.div_ceil(p) * p);
                let mut k = first;
                while k <= hi {
                    segment[(k - lo) as usize] = false;
                    k += p;
                }
            }
            for (i, &is_p) in segment[..len].iter().enumerate() {
                if is_p {
                    let n = lo + i as u64;
                    bits[(n / 64) as usize] |= 1 << (n % 64);
                    primes.push(n);
                }
            }
            lo = hi + 1;
        }
        Ok(PrimeTable { limit, bits, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn count(&self) -> usize {
        self.primes.len()
    }

    /// π(x) for x ≤ limit.
    pub fn count_up_to(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }

    /// Primes in the half-open interval `[lo, hi)`.
    pub fn primes_in(&self, lo: u64, hi: u64) -> &[u64] {
        let a = self.primes.partition_point(|&p| p < lo);
        let b = self.primes.partition_point(|&p| p < hi);
        &self.primes[a..b.max(a)]
    }

    /// Membership test; panics if `n` exceeds the table.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "{n} outside prime table of limit {}", self.limit);
        self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    /// Trial division by tabulated primes up to √n; a remaining cofactor is prime.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Domain("cannot factorize 0".into()));
        }
        let cap = self.limit.saturating_mul(self.limit);
        if n > cap {
            return Err(Error::capacity("factorization input", n, cap));
        }
        let mut rest = n;
        let mut factors = Vec::new();
        for &p in &self.primes {
            if p * p > rest {
                break;
            }
            if rest.is_multiple_of(p) {
                let mut e = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Factorization::from_parts(n, factors))
    }

    pub fn mobius(&self, n: u64) -> Result<i8> {
        Ok(self.factorize(n)?.mobius())
    }

    pub fn euler_phi(&self, n: u64) -> Result<u64> {
        Ok(self.factorize(n)?.euler_phi())
    }

    pub fn tau(&self, n: u64) -> Result<u64> {
        Ok(self.factorize(n)?.tau())
    }
}

/// Smallest-prime-factor table for fast bulk factorisation of every n ≤ limit.
#[derive(Debug, Clone)]
pub struct SmallestFactorTable {
    spf: Vec<u32>,
}

impl SmallestFactorTable {
    /// Largest supported limit (the table stores one `u32` per integer).
    pub const MAX: u64 = 1 << 31;

    pub fn new(limit: u64) -> Result<Self> {
        if limit > Self::MAX {
            return Err(Error::capacity("smallest-factor table limit", limit, Self::MAX));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let k = i * p as usize;
                if p > si || k > n {
                    break;
                }
                spf[k] = p;
            }
        }
        if n >= 1 {
            spf[1] = 1;
        }
        Ok(SmallestFactorTable { spf })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn smallest_factor(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Domain("cannot factorize 0".into()));
        }
        if n > self.limit() {
            return Err(Error::capacity("factorization input", n, self.limit()));
        }
        let mut rest = n as usize;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while rest > 1 {
            let p = self.spf[rest] as usize;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        Ok(Factorization::from_parts(n, factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_count(limit: u64) -> usize {
        (2..=limit)
            .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .count()
    }

    #[test]
    fn small_tables() {
        let t = sieve_primes(30).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(sieve_primes(10).unwrap().count(), 4);
        assert_eq!(sieve_primes(100).unwrap().count(), trial_division_count(100));
        assert_eq!(sieve_primes(100).unwrap().count(), 25);
        assert_eq!(sieve_primes(2).unwrap().primes(), &[2]);
    }

    #[test]
    fn crosses_segment_boundaries() {
        // 3·2^20 spans several segments; compare against the SPF table.
        let limit = 3 * SEGMENT_SIZE as u64 + 17;
        let t = sieve_primes(limit).unwrap();
        let spf = SmallestFactorTable::new(limit).unwrap();
        for n in (0..=limit).step_by(7) {
            assert_eq!(t.is_prime(n), spf.is_prime(n) && n >= 2, "n = {n}");
        }
        let count = (2..=limit).filter(|&n| spf.is_prime(n)).count();
        assert_eq!(t.count(), count);
    }

    #[test]
    fn million() {
        // Value checked once against trial division (slow, so not repeated here).
        assert_eq!(sieve_primes(1_000_000).unwrap().count(), 78_498);
        assert_eq!(sieve_primes(500_000).unwrap().count(), 41_538);
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(sieve_primes(1), Err(Error::Domain(_))));
        assert!(matches!(
            PrimeTable::with_ceiling(1 << 20, 1 << 10),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(sieve_primes(MAX_LIMIT + 1), Err(Error::Capacity { .. })));
    }

    #[test]
    fn factorize_examples() {
        let t = sieve_primes(1000).unwrap();
        assert_eq!(t.factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(t.factorize(97).unwrap().factors(), &[(97, 1)]);
        assert_eq!(t.factorize(1001).unwrap().factors(), &[(7, 1), (11, 1), (13, 1)]);
        assert!(t.factorize(1).unwrap().factors().is_empty());
        assert_eq!(sieve_primes(2000).unwrap().factorize(999_983 * 2).unwrap().factors(), &[(2, 1), (999_983, 1)]);
        assert!(matches!(t.factorize(1_000_001), Err(Error::Capacity { .. })));
    }

    #[test]
    fn multiplicative_functions() {
        let t = sieve_primes(100).unwrap();
        assert_eq!(t.mobius(6).unwrap(), 1);
        assert_eq!(t.mobius(4).unwrap(), 0);
        assert_eq!(t.mobius(30).unwrap(), -1);
        assert_eq!(t.mobius(1).unwrap(), 1);
        assert_eq!(t.euler_phi(8).unwrap(), 4);
        assert_eq!(t.euler_phi(1).unwrap(), 1);
        assert_eq!(t.tau(12).unwrap(), 6);
    }

    #[test]
    fn spf_matches_trial_factorization() {
        let t = sieve_primes(1000).unwrap();
        let s = SmallestFactorTable::new(100_000).unwrap();
        for n in 1..5000u64 {
            assert_eq!(t.factorize(n).unwrap(), s.factorize(n).unwrap());
        }
    }
}
