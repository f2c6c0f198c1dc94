use serde::Serialize;

use crate::{Error, Result, EXP_NEG_EULER_GAMMA};

pub const DEFAULT_STEP: f64 = 1e-4;
pub const DEFAULT_U_MAX: f64 = 20.0;

/// ω(u) tabulated on [1, u_max]: ω = 1/u on [1, 2] and (uω)′ = ω(u − 1) beyond.
#[derive(Debug, Clone, Serialize)]
pub struct BuchstabTable {
    pub h: f64,
    pub u_max: f64,
    pub limit_value: f64,
    #[serde(skip)]
    values: Vec<f64>,
}

pub fn build_buchstab(u_max: f64, h: f64) -> Result<BuchstabTable> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(Error::Domain(format!("Buchstab step h = {h} must lie in (0, 1e-3]")));
    }
    if !(u_max >= 4.0) || !u_max.is_finite() {
        return Err(Error::Domain(format!("Buchstab range u_max = {u_max} must be at least 4")));
    }
    // Align the grid so that u − 1 is again a grid point.
    let per_unit = (1.0 / h).round() as usize;
    let h = 1.0 / per_unit as f64;
    let n = ((u_max - 1.0) * per_unit as f64).ceil() as usize;
    let u_max = 1.0 + n as f64 * h;
    let at = |i: usize| 1.0 + i as f64 * h;

    // F(u) = u ω(u); exact on [1, 3], trapezoid on F′(u) = ω(u − 1) beyond.
    let mut f = vec![0.0; n + 1];
    let mut w = vec![0.0; n + 1];
    for i in 0..=n {
        let u = at(i);
        if u <= 3.0 + 0.5 * h {
            f[i] = if u <= 2.0 { 1.0 } else { 1.0 + (u - 1.0).ln() };
        } else {
            f[i] = f[i - 1] + 0.5 * h * (w[i - 1 - per_unit] + w[i - per_unit]);
        }
        w[i] = f[i] / u;
    }
    Ok(BuchstabTable { h, u_max, limit_value: EXP_NEG_EULER_GAMMA, values: w })
}

impl BuchstabTable {
    pub fn new() -> Self {
        build_buchstab(DEFAULT_U_MAX, DEFAULT_STEP).expect("default parameters are valid")
    }

    /// ω(u), with ω = 0 below 1 and ω = e^{−γ} beyond the table.
    pub fn omega(&self, u: f64) -> f64 {
        if u < 1.0 {
            0.0
        } else if u <= 2.0 {
            1.0 / u
        } else if u <= 3.0 {
            (1.0 + (u - 1.0).ln()) / u
        } else if u >= self.u_max {
            self.limit_value
        } else {
            let x = (u - 1.0) / self.h;
            let i = (x.floor() as usize).min(self.values.len() - 2);
            let t = x - i as f64;
            self.values[i] * (1.0 - t) + self.values[i + 1] * t
        }
    }

    pub fn grid(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &w)| (1.0 + i as f64 * self.h, w))
    }

    /// max over grid points u > 2 of |Δ(uω)/h − ω(u − 1 − h/2)|.
    pub fn residual(&self) -> f64 {
        let per_unit = (1.0 / self.h).round() as usize;
        let mut worst = 0.0f64;
        for i in per_unit + 1..self.values.len() {
            let u = 1.0 + i as f64 * self.h;
            let d = (u * self.values[i] - (u - self.h) * self.values[i - 1]) / self.h;
            let mid = 0.5 * (self.values[i - per_unit] + self.values[i - 1 - per_unit]);
            worst = worst.max((d - mid).abs());
        }
        worst
    }
}

impl Default for BuchstabTable {
    fn default() -> Self {
        Self::new()
    }
}
