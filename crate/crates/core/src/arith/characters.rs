//! Dirichlet characters stored as exponent vectors over a fixed set of
//! generators of (ℤ/qℤ)^×, so that χ(m) = e(k/φ(q)) with an exact integer k.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::arith::gcd;
use crate::{Error, Result};

pub const MAX_CHARACTER_MODULUS: u64 = 100_000;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug)]
struct CyclicFactor {
    modulus: u64,
    order: u64,
    logs: Vec<u32>,
}

/// Discrete-log tables for a decomposition of (ℤ/qℤ)^× into cyclic factors.
#[derive(Debug)]
pub struct CharacterGroup {
    modulus: u64,
    phi: u64,
    factors: Vec<CyclicFactor>,
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128 % m as u128;
    let m128 = m as u128;
    let mut b128 = b as u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    b = r as u64;
    b
}

fn prime_power_decomposition(mut q: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut e = 0;
            while q.is_multiple_of(p) {
                q /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if q > 1 {
        out.push((q, 1));
    }
    out
}

fn primitive_root_mod_prime(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let order_factors: Vec<u64> = prime_power_decomposition(p - 1).into_iter().map(|(r, _)| r).collect();
    (2..p)
        .find(|&g| order_factors.iter().all(|&r| mod_pow(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

fn cyclic_from_generator(modulus: u64, generator: u64, order: u64) -> CyclicFactor {
    let mut logs = vec![NO_LOG; modulus as usize];
    let mut x = 1u64;
    for k in 0..order {
        logs[x as usize] = k as u32;
        x = x * generator % modulus;
    }
    CyclicFactor { modulus, order, logs }
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("character modulus must be positive".into()));
        }
        if q > MAX_CHARACTER_MODULUS {
            return Err(Error::capacity("character modulus", q, MAX_CHARACTER_MODULUS));
        }
        let mut factors = Vec::new();
        let mut phi = 1u64;
        for (p, e) in prime_power_decomposition(q) {
            let pe = p.pow(e);
            phi *= (p - 1) * p.pow(e - 1);
            if p == 2 {
                match e {
                    1 => {}
                    2 => factors.push(cyclic_from_generator(4, 3, 2)),
                    _ => {
                        let mut sign = vec![NO_LOG; 4];
                        sign[1] = 0;
                        sign[3] = 1;
                        factors.push(CyclicFactor { modulus: 4, order: 2, logs: sign });
                        let order = pe / 4;
                        let mut logs = vec![NO_LOG; pe as usize];
                        let mut x = 1u64;
                        for k in 0..order {
                            logs[x as usize] = k as u32;
                            logs[(pe - x) as usize] = k as u32;
                            x = x * 5 % pe;
                        }
                        factors.push(CyclicFactor { modulus: pe, order, logs });
                    }
                }
            } else {
                let mut g = primitive_root_mod_prime(p);
                if e > 1 && mod_pow(g, p - 1, p * p) == 1 {
                    g += p;
                }
                factors.push(cyclic_from_generator(pe, g, (p - 1) * p.pow(e - 1)));
            }
        }
        Ok(CharacterGroup { modulus: q, phi, factors })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.phi
    }

    fn logs(&self, m: u64) -> Option<Vec<u64>> {
        if gcd(m % self.modulus, self.modulus) != 1 {
            return None;
        }
        Some(
            self.factors
                .iter()
                .map(|f| f.logs[(m % f.modulus) as usize] as u64)
                .collect(),
        )
    }
}

/// One character of (ℤ/qℤ)^×, identified by its exponents on the generators.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<CharacterGroup>,
    exponents: Vec<u64>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus == other.group.modulus && self.exponents == other.exponents
    }
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }

    /// χ(m) = e(k/φ(q)); returns k, or `None` when gcd(m, q) > 1.
    pub fn value_exponent(&self, m: u64) -> Option<u64> {
        let phi = self.group.phi;
        let logs = self.group.logs(m)?;
        let k = self
            .group
            .factors
            .iter()
            .zip(&self.exponents)
            .zip(logs)
            .map(|((f, &c), l)| (c * l % f.order) * (phi / f.order))
            .sum::<u64>();
        Some(k % phi)
    }

    pub fn value(&self, m: u64) -> Complex64 {
        match self.value_exponent(m) {
            None => Complex64::new(0.0, 0.0),
            Some(k) => Complex64::from_polar(1.0, TAU * k as f64 / self.group.phi as f64),
        }
    }

    /// Values χ(0), …, χ(q−1).
    pub fn values(&self) -> Vec<Complex64> {
        (0..self.group.modulus).map(|m| self.value(m)).collect()
    }

    pub fn conj(&self) -> DirichletCharacter {
        let exponents = self
            .group
            .factors
            .iter()
            .zip(&self.exponents)
            .map(|(f, &c)| (f.order - c) % f.order)
            .collect();
        DirichletCharacter { group: Arc::clone(&self.group), exponents }
    }
}

/// All φ(q) characters modulo q; the principal character comes first.
pub fn characters_mod(q: u64) -> Result<Vec<DirichletCharacter>> {
    let group = Arc::new(CharacterGroup::new(q)?);
    let orders: Vec<u64> = group.factors.iter().map(|f| f.order).collect();
    let mut out = Vec::with_capacity(group.phi as usize);
    let mut current = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter { group: Arc::clone(&group), exponents: current.clone() });
        // odometer increment
        let mut i = 0;
        loop {
            if i == orders.len() {
                return Ok(out);
            }
            current[i] += 1;
            if current[i] < orders[i] {
                break;
            }
            current[i] = 0;
            i += 1;
        }
    }
}
