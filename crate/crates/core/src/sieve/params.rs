use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A power of P written as c₀ + c_σ·σ, so P^{exponent} is a sieve threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exponent {
    pub c0: f64,
    pub c_sigma: f64,
}

impl Exponent {
    pub const fn new(c0: f64, c_sigma: f64) -> Self {
        Exponent { c0, c_sigma }
    }

    pub const ZERO: Exponent = Exponent::new(0.0, 0.0);
    pub const ONE: Exponent = Exponent::new(1.0, 0.0);
    pub const HALF: Exponent = Exponent::new(0.5, 0.0);
    /// z = P^{1−6σ}
    pub const Z: Exponent = Exponent::new(1.0, -6.0);
    /// V = P^{2σ}
    pub const V: Exponent = Exponent::new(0.0, 2.0);
    /// W = P^{1−4σ}
    pub const W: Exponent = Exponent::new(1.0, -4.0);
    /// Y = P^{1−3σ}
    pub const Y: Exponent = Exponent::new(1.0, -3.0);
    /// P/W = P^{4σ}
    pub const P_OVER_W: Exponent = Exponent::new(0.0, 4.0);
    /// P/V = P^{1−2σ}
    pub const P_OVER_V: Exponent = Exponent::new(1.0, -2.0);

    pub fn at(&self, sigma: f64) -> f64 {
        self.c0 + self.c_sigma * sigma
    }
}

/// Parameter point of the sieve: σ, P and the derived thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SieveParams {
    pub sigma: f64,
    pub p: f64,
    pub z: f64,
    pub v: f64,
    pub w: f64,
    pub y: f64,
    pub interval_lo: f64,
    pub interval_hi: f64,
    /// Set when z < 2, so the rough cut ψ(·, z) removes nothing.
    pub degenerate: bool,
}

pub fn make_params(sigma: f64, p: f64) -> Result<SieveParams> {
    if !(sigma > 0.15 && sigma < 1.0 / 6.0) {
        return Err(Error::Domain(format!(
            "sigma = {sigma} violates 3/20 < sigma < 1/6"
        )));
    }
    if !(p >= 16.0) || !p.is_finite() {
        return Err(Error::Domain(format!("P = {p} must be a finite number ≥ 16")));
    }
    let pw = |e: Exponent| p.powf(e.at(sigma));
    let z = pw(Exponent::Z);
    Ok(SieveParams {
        sigma,
        p,
        z,
        v: pw(Exponent::V),
        w: pw(Exponent::W),
        y: pw(Exponent::Y),
        interval_lo: p / 2.0,
        interval_hi: p,
        degenerate: z < 2.0,
    })
}

impl SieveParams {
    /// Parameters for the problem size N, with P = (2/3)√N.
    pub fn from_n(sigma: f64, n: f64) -> Result<Self> {
        make_params(sigma, 2.0 / 3.0 * n.sqrt())
    }

    /// N = (3P/2)².
    pub fn n(&self) -> f64 {
        (1.5 * self.p).powi(2)
    }

    /// θ = 1 − 6σ, the exponent of z.
    pub fn theta(&self) -> f64 {
        1.0 - 6.0 * self.sigma
    }

    pub fn log_p(&self) -> f64 {
        self.p.ln()
    }

    pub fn power(&self, e: Exponent) -> f64 {
        self.p.powf(e.at(self.sigma))
    }

    /// Integers of 𝓘 = [P/2, P) as the half-open range `lo..hi`.
    pub fn interval_integers(&self) -> std::ops::Range<u64> {
        self.interval_lo.ceil() as u64..self.interval_hi.ceil() as u64
    }

    /// ψ(m, P^{1/2}) from the smallest prime factor of m (None for m = 1).
    pub fn sqrt_rough(&self, smallest_prime: Option<u64>) -> bool {
        match smallest_prime {
            None => true,
            Some(q) => (q as f64) * (q as f64) >= self.p,
        }
    }

    /// Whether x lies in [V, W] ∪ [P/W, P/V].
    pub fn in_good_range(&self, x: f64) -> bool {
        (x >= self.v && x <= self.w) || (x >= self.p / self.w && x <= self.p / self.v)
    }
}
