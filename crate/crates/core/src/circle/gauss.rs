use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::gcd;
use crate::{Error, Result};

/// S(q, a) = Σ_{r mod q, (r,q)=1} e_q(ar²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussSumValue {
    pub q: u64,
    pub a: i64,
    pub value: Complex64,
}

/// Largest modulus accepted by the Gauss-sum routines.
pub const MAX_GAUSS_MODULUS: u64 = 1 << 24;

/// counts[c] = #{r mod q : (r,q) = 1, r² ≡ c (mod q)}.
pub fn unit_square_counts(q: u64) -> Vec<u64> {
    let mut counts = vec![0u64; q as usize];
    if q == 1 {
        counts[0] = 1;
        return counts;
    }
    for r in 1..q {
        if gcd(r, q) == 1 {
            counts[(r as u128 * r as u128 % q as u128) as usize] += 1;
        }
    }
    counts
}

pub(crate) fn roots_of_unity(q: u64) -> Vec<Complex64> {
    (0..q).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / q as f64)).collect()
}

fn check_modulus(q: u64) -> Result<()> {
    if q == 0 {
        return Err(Error::Domain("Gauss sum modulus must be at least 1".into()));
    }
    if q > MAX_GAUSS_MODULUS {
        return Err(Error::capacity("Gauss sum modulus", q, MAX_GAUSS_MODULUS));
    }
    Ok(())
}

pub fn gauss_sum(q: u64, a: i64) -> Result<GaussSumValue> {
    check_modulus(q)?;
    let counts = unit_square_counts(q);
    let ar = a.rem_euclid(q as i64) as u128;
    let value = counts
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(c, &n)| {
            let k = (ar * c as u128 % q as u128) as f64;
            Complex64::from_polar(n as f64, TAU * k / q as f64)
        })
        .sum();
    Ok(GaussSumValue { q, a, value })
}

/// S(q, a) for every residue a mod q, from one table of unit squares.
pub fn gauss_sums_all(q: u64) -> Result<Vec<Complex64>> {
    check_modulus(q)?;
    let counts = unit_square_counts(q);
    let roots = roots_of_unity(q);
    let support: Vec<(u64, f64)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(c, &n)| (c as u64, n as f64))
        .collect();
    Ok((0..q)
        .map(|a| {
            support
                .iter()
                .map(|&(c, n)| roots[(a as u128 * c as u128 % q as u128) as usize] * n)
                .sum()
        })
        .collect())
}
