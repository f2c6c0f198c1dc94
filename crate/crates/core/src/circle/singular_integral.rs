use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::quadrature::{adaptive_gk, integrate_fn, QuadratureResult};
use crate::{Error, Result};

/// Support of ℑ: sums of four squares of numbers in [1/3, 2/3].
pub const SUPPORT: (f64, f64) = (4.0 / 9.0, 16.0 / 9.0);

/// Total mass ∫ℑ(t)dt = (1/3)⁴.
pub const TOTAL_MASS: f64 = 1.0 / 81.0;

const SQ_LO: f64 = 1.0 / 9.0;
const SQ_HI: f64 = 4.0 / 9.0;

/// Density of y = x² for x uniform (mass 1/3) on [1/3, 2/3].
pub fn square_density(y: f64) -> f64 {
    if (SQ_LO..=SQ_HI).contains(&y) {
        0.5 / y.sqrt()
    } else {
        0.0
    }
}

/// Density of x₁² + x₂², in closed form ½[arcsin √(y/s)] over the overlap.
pub fn two_square_density(s: f64) -> f64 {
    let lo = SQ_LO.max(s - SQ_HI);
    let hi = SQ_HI.min(s - SQ_LO);
    if hi <= lo || s <= 0.0 {
        return 0.0;
    }
    0.5 * ((hi / s).sqrt().min(1.0).asin() - (lo / s).sqrt().min(1.0).asin())
}

/// ℑ(t) as the density at t of x₁² + … + x₄², x_i ∈ [1/3, 2/3].
pub fn singular_integral(t: f64) -> f64 {
    singular_integral_with_tol(t, 1e-13).value
}

pub fn singular_integral_with_tol(t: f64, tol: f64) -> QuadratureResult {
    let lo = (2.0 * SQ_LO).max(t - 2.0 * SQ_HI);
    let hi = (2.0 * SQ_HI).min(t - 2.0 * SQ_LO);
    if hi <= lo {
        return QuadratureResult::exact(0.0);
    }
    // two_square_density has a derivative singularity at 5/9
    let kink = SQ_LO + SQ_HI;
    let mut cuts = vec![lo, hi];
    for c in [kink, t - kink] {
        if c > lo && c < hi {
            cuts.push(c);
        }
    }
    cuts.sort_by(f64::total_cmp);
    let f = |s: f64| two_square_density(s) * two_square_density(t - s);
    let pieces = (cuts.len() - 1) as f64;
    let mut out = QuadratureResult::exact(0.0);
    for w in cuts.windows(2) {
        out.add(integrate_fn(f, w[0], w[1], tol / pieces));
    }
    out
}

/// ∫ℑ(t)dt by adaptive quadrature over the support.
pub fn singular_integral_mass(tol: f64) -> QuadratureResult {
    let knots: Vec<f64> = (0..=4).map(|k| 4.0 / 9.0 + k as f64 / 3.0).collect();
    let mut out = QuadratureResult::exact(0.0);
    for w in knots.windows(2) {
        out.add(integrate_fn(|t| singular_integral_with_tol(t, 1e-14).value, w[0], w[1], tol / 4.0));
    }
    out
}

/// I(γ) = ∫_{1/3}^{2/3} e(γx²) dx.
pub fn archimedean_factor(gamma: f64, tol: f64) -> Complex64 {
    let re = integrate_fn(|x| (TAU * gamma * x * x).cos(), 1.0 / 3.0, 2.0 / 3.0, tol).value;
    let im = integrate_fn(|x| (TAU * gamma * x * x).sin(), 1.0 / 3.0, 2.0 / 3.0, tol).value;
    Complex64::new(re, im)
}

/// Integration by parts gives |I(γ)| ≤ 3/(2πγ), so the window tail is at
/// most 2∫_Γ^∞ (3/(2πγ))⁴ dγ.
pub fn oscillatory_tail_bound(gamma_max: f64) -> f64 {
    let c = 3.0 / (2.0 * PI);
    2.0 * c.powi(4) / (3.0 * gamma_max.powi(3))
}

/// ℑ(t) = ∫ I(γ)⁴ e(−tγ) dγ evaluated directly over |γ| ≤ Γ. The integrand is
/// even in its real part, so the window is folded onto [0, Γ].
pub fn singular_integral_oscillatory(t: f64, gamma_max: f64, tol: f64) -> Result<QuadratureResult> {
    if !(gamma_max > 0.0 && tol > 0.0) {
        return Err(Error::Domain(format!(
            "oscillatory window needs Γ > 0 and tol > 0, got Γ = {gamma_max}, tol = {tol}"
        )));
    }
    let inner_tol = tol * 1e-3;
    let f = |g: f64| {
        let i4 = archimedean_factor(g, inner_tol).powu(4);
        let v = 2.0 * (i4 * Complex64::from_polar(1.0, -TAU * g * t)).re;
        QuadratureResult::exact(v)
    };
    let mut r = adaptive_gk(f, 0.0, gamma_max, tol, 200_000, true);
    r.err_estimate += oscillatory_tail_bound(gamma_max);
    Ok(r)
}

/// ℑ tabulated on a uniform grid over its support.
#[derive(Debug, Clone, Serialize)]
pub struct SingularIntegralFn {
    pub lo: f64,
    pub hi: f64,
    pub values: Vec<f64>,
}

pub fn build_singular_integral(points: usize) -> Result<SingularIntegralFn> {
    if points < 2 {
        return Err(Error::Domain(format!("singular integral grid needs at least 2 points, got {points}")));
    }
    let (lo, hi) = SUPPORT;
    let step = (hi - lo) / (points - 1) as f64;
    let values = (0..points).map(|i| singular_integral(lo + i as f64 * step)).collect();
    Ok(SingularIntegralFn { lo, hi, values })
}

impl SingularIntegralFn {
    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.values.len() - 1) as f64
    }

    /// Linear interpolation; 0 outside the support.
    pub fn eval(&self, t: f64) -> f64 {
        if !(self.lo..=self.hi).contains(&t) {
            return 0.0;
        }
        let x = (t - self.lo) / self.step();
        let i = (x.floor() as usize).min(self.values.len() - 2);
        let f = x - i as f64;
        self.values[i] * (1.0 - f) + self.values[i + 1] * f
    }

    /// Trapezoid mass of the tabulated density.
    pub fn mass(&self) -> f64 {
        let v = &self.values;
        self.step() * (v.iter().sum::<f64>() - 0.5 * (v[0] + v[v.len() - 1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_square_density_has_mass_one_ninth() {
        let m = integrate_fn(two_square_density, 2.0 / 9.0, 5.0 / 9.0, 1e-12).value
            + integrate_fn(two_square_density, 5.0 / 9.0, 8.0 / 9.0, 1e-12).value;
        assert!((m - 1.0 / 9.0).abs() < 1e-10);
    }

    #[test]
    fn support_and_positivity() {
        assert_eq!(singular_integral(0.4), 0.0);
        assert_eq!(singular_integral(1.8), 0.0);
        assert!(singular_integral(1.0) > 0.0);
    }
}
