//! Vershik-Kerov parameters and the limit functions `φ_{α,β,γ}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{FormalSeries, SeriesVar};

/// `(α⁺, β⁺, γ⁺; α⁻, β⁻, γ⁻)` with finite `α`, `β` lists.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VkParams {
    #[serde(default)]
    pub alpha_plus: Vec<f64>,
    #[serde(default)]
    pub beta_plus: Vec<f64>,
    #[serde(default)]
    pub gamma_plus: f64,
    #[serde(default)]
    pub alpha_minus: Vec<f64>,
    #[serde(default)]
    pub beta_minus: Vec<f64>,
    #[serde(default)]
    pub gamma_minus: f64,
}

const PARAM_SLACK: f64 = 1e-12;

impl VkParams {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        let lists = [
            ("alpha_plus", &self.alpha_plus),
            ("beta_plus", &self.beta_plus),
            ("alpha_minus", &self.alpha_minus),
            ("beta_minus", &self.beta_minus),
        ];
        for (name, v) in lists {
            if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be finite and nonnegative: {v:?}")));
            }
            if v.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidParams(format!("{name} must be weakly decreasing: {v:?}")));
            }
        }
        for (name, g) in [("gamma_plus", self.gamma_plus), ("gamma_minus", self.gamma_minus)] {
            if !g.is_finite() || g < 0.0 {
                return Err(Error::InvalidParams(format!("{name} must be finite and nonnegative: {g}")));
            }
        }
        let b = self.beta_plus.first().unwrap_or(&0.0) + self.beta_minus.first().unwrap_or(&0.0);
        if b > 1.0 + PARAM_SLACK {
            return Err(Error::InvalidParams(format!("β⁺₁ + β⁻₁ = {b} exceeds 1")));
        }
        Ok(())
    }

    /// Parameters of the reflected sequence `λ ↦ (−λ_n, …, −λ_1)`.
    pub fn reflected(&self) -> VkParams {
        VkParams {
            alpha_plus: self.alpha_minus.clone(),
            beta_plus: self.beta_minus.clone(),
            gamma_plus: self.gamma_minus,
            alpha_minus: self.alpha_plus.clone(),
            beta_minus: self.beta_plus.clone(),
            gamma_minus: self.gamma_plus,
        }
    }

    pub fn is_one_sided(&self) -> bool {
        self.alpha_minus.iter().all(|&a| a == 0.0)
            && self.beta_minus.iter().all(|&b| b == 0.0)
            && self.gamma_minus == 0.0
    }
}

fn side_factor(alpha: &[f64], beta: &[f64], gamma: f64, theta: f64, w: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let d = w - one;
    let mut log = d * gamma;
    for &a in alpha {
        log -= (one - d * (a / theta)).ln() * theta;
    }
    let mut out = log.exp();
    for &b in beta {
        out *= one + d * b;
    }
    out
}

fn phi_unchecked(params: &VkParams, theta: f64, z: Complex64) -> Complex64 {
    side_factor(&params.alpha_plus, &params.beta_plus, params.gamma_plus, theta, z)
        * side_factor(&params.alpha_minus, &params.beta_minus, params.gamma_minus, theta, z.inv())
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveTheta(theta.to_string()))
    }
}

/// `φ_{α,β,γ}(z)` with the principal branch of each `(·)^{−θ}`.
pub fn limit_phi(params: &VkParams, theta: f64, z: Complex64) -> Result<Complex64> {
    params.validate()?;
    check_theta(theta)?;
    Ok(phi_unchecked(params, theta, z))
}

/// `Φ_{α,β,γ}(z_1, …, z_k)` evaluated in one pass: the exponentials and
/// branch logarithms of all points are summed before exponentiating.
pub fn limit_phi_multi(params: &VkParams, theta: f64, z: &[Complex64]) -> Result<Complex64> {
    params.validate()?;
    check_theta(theta)?;
    let one = Complex64::new(1.0, 0.0);
    let mut log = Complex64::new(0.0, 0.0);
    let mut poly = one;
    for &zj in z {
        for (alpha, beta, gamma, w) in [
            (&params.alpha_plus, &params.beta_plus, params.gamma_plus, zj),
            (&params.alpha_minus, &params.beta_minus, params.gamma_minus, zj.inv()),
        ] {
            let d = w - one;
            log += d * gamma;
            for &a in alpha.iter() {
                log -= (one - d * (a / theta)).ln() * theta;
            }
            for &b in beta.iter() {
                poly *= one + d * b;
            }
        }
    }
    Ok(log.exp() * poly)
}

/// Radius `(θ + α⁺₁)/α⁺₁` beyond which `φ` stops being holomorphic, or
/// `None` when `α⁺ = 0`.
pub fn outer_singularity_radius(params: &VkParams, theta: f64) -> Option<f64> {
    params.alpha_plus.first().filter(|&&a| a > 0.0).map(|&a| (theta + a) / a)
}

/// Radius `α⁻₁/(θ + α⁻₁)` below which `φ` stops being holomorphic.
pub fn inner_singularity_radius(params: &VkParams, theta: f64) -> f64 {
    match params.alpha_minus.first() {
        Some(&a) if a > 0.0 => a / (theta + a),
        _ => 0.0,
    }
}

/// Taylor coefficients at `z = 0` of a one-sided `φ`.
pub fn limit_phi_taylor(params: &VkParams, theta: f64, order: usize) -> Result<FormalSeries<f64>> {
    params.validate()?;
    check_theta(theta)?;
    if !params.is_one_sided() {
        return Err(Error::InvalidArgument("Taylor expansion at 0 needs α⁻ = β⁻ = γ⁻ = 0".into()));
    }
    let var = SeriesVar::T;
    let g = params.gamma_plus;
    let mut acc = FormalSeries::new(var, vec![0.0, g], order).exp()?.scale(&(-g).exp());
    for &b in &params.beta_plus {
        acc = acc.mul(&FormalSeries::new(var, vec![1.0 - b, b], order));
    }
    for &a in &params.alpha_plus {
        // (1 − α(z−1)/θ)^{−θ} = ((θ+α)/θ)^{−θ} (1 − zα/(θ+α))^{−θ}
        let c = ((theta + a) / theta).powf(-theta);
        acc = acc.mul(&FormalSeries::neg_binomial(var, &(a / (theta + a)), &theta, order).scale(&c));
    }
    Ok(acc)
}

/// Radius of convergence from the tail of a Taylor series, by the
/// Domb-Sykes fit `c_m/c_{m−1} ≈ (1/R)(1 + e/m)`.
pub fn radius_from_coefficients(coefs: &[f64]) -> Option<f64> {
    let m = coefs.len().checked_sub(1)?;
    if m < 2 || coefs[m - 2] == 0.0 || coefs[m - 1] == 0.0 {
        return None;
    }
    let r_m = coefs[m] / coefs[m - 1];
    let r_prev = coefs[m - 1] / coefs[m - 2];
    let inv = m as f64 * r_m - (m - 1) as f64 * r_prev;
    (inv > 0.0).then(|| 1.0 / inv)
}
