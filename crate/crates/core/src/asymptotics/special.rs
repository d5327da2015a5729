//! Extended and doubly extended specializations of symmetric functions.
//!
//! A specialization is fixed by the image of `G(t) = Σ_k g_k t^k`; power
//! sums follow from `G = exp(θ Σ_k p_k t^k / k)`.

use serde::{Deserialize, Serialize};

use crate::asymptotics::params::VkParams;
use crate::error::Result;
use crate::partition::Partition;
use crate::scalar::Scalar;
use crate::series::{FormalSeries, SeriesVar};

/// `t′ = −t/(1 + θt)` through `t^order`.
pub fn t_prime<T: Scalar>(theta: &T, order: usize) -> FormalSeries<T> {
    let mut coefs = vec![T::zero()];
    let mut c = -T::one();
    for _ in 1..=order {
        coefs.push(c.clone());
        c = c * (-theta.clone());
    }
    FormalSeries::new(SeriesVar::T, coefs, order)
}

/// `e^{γθt} ∏(1 + tθβ_i)/(1 − tα_i)^θ`.
pub fn extended_g_series<T: Scalar>(alpha: &[T], beta: &[T], gamma: &T, theta: &T, order: usize) -> FormalSeries<T> {
    let var = SeriesVar::T;
    let mut acc = FormalSeries::new(var, vec![T::zero(), gamma.clone() * theta.clone()], order)
        .exp()
        .expect("zero constant term");
    for b in beta {
        acc = acc.mul(&FormalSeries::new(var, vec![T::one(), theta.clone() * b.clone()], order));
    }
    for a in alpha {
        acc = acc.mul(&FormalSeries::neg_binomial(var, a, theta, order));
    }
    acc
}

/// `G_plus(t) G_minus(t′)`.
pub fn doubly_extended_g_series<T: Scalar>(
    plus: (&[T], &[T], &T),
    minus: (&[T], &[T], &T),
    theta: &T,
    order: usize,
) -> FormalSeries<T> {
    let p = extended_g_series(plus.0, plus.1, plus.2, theta, order);
    let m = extended_g_series(minus.0, minus.1, minus.2, theta, order);
    p.mul(&m.compose(&t_prime(theta, order)).expect("t′ has zero constant term"))
}

pub fn doubly_extended_g_series_f64(params: &VkParams, theta: f64, order: usize) -> FormalSeries<f64> {
    doubly_extended_g_series(
        (&params.alpha_plus, &params.beta_plus, &params.gamma_plus),
        (&params.alpha_minus, &params.beta_minus, &params.gamma_minus),
        &theta,
        order,
    )
}

/// Limits `g(0), …, g(K)` of `g*_k(λ(n))/n^k` for a sequence with these
/// parameters.
pub fn limit_moments(params: &VkParams, theta: f64, order: usize) -> Result<Vec<f64>> {
    params.validate()?;
    Ok(doubly_extended_g_series_f64(params, theta, order).coefs().to_vec())
}

/// Images of `p_1, …, p_K` read off `G` (entry 0 is unused and set to 0).
pub fn power_sums_from_g<T: Scalar>(g: &FormalSeries<T>, theta: &T) -> Result<Vec<T>> {
    let log = g.ln()?;
    let mut out = vec![T::zero()];
    for k in 1..=g.order() {
        out.push(log.coef(k) * T::from_i64(k as i64) / theta.clone());
    }
    Ok(out)
}

/// `p_k ↦ Σα_i^k + (−θ)^{k−1} Σβ_i^k (+ γ if k = 1)`; entry 0 unused.
pub fn extended_power_sums<T: Scalar>(alpha: &[T], beta: &[T], gamma: &T, theta: &T, order: usize) -> Vec<T> {
    let mut out = vec![T::zero()];
    for k in 1..=order {
        let pow = |x: &T| (0..k).fold(T::one(), |acc, _| acc * x.clone());
        let sa = alpha.iter().fold(T::zero(), |acc, a| acc + pow(a));
        let sb = beta.iter().fold(T::zero(), |acc, b| acc + pow(b));
        let sign = (0..k - 1).fold(T::one(), |acc, _| acc * (-theta.clone()));
        let mut v = sa + sign * sb;
        if k == 1 {
            v = v + gamma.clone();
        }
        out.push(v);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymBasis {
    /// Power sums `p_μ = ∏ p_{μ_i}`.
    Power,
    /// One-row products `g_μ = ∏ g_{μ_i}`.
    Onerow,
}

/// A symmetric function as a finite combination of `p_μ` or `g_μ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymExpr {
    pub basis: SymBasis,
    pub terms: Vec<(Partition, f64)>,
}

impl SymExpr {
    pub fn p(k: usize) -> Self {
        SymExpr { basis: SymBasis::Power, terms: vec![(Partition::new(vec![k]).unwrap(), 1.0)] }
    }

    pub fn g(k: usize) -> Self {
        SymExpr { basis: SymBasis::Onerow, terms: vec![(Partition::new(vec![k]).unwrap(), 1.0)] }
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.weight()).max().unwrap_or(0)
    }

    fn evaluate(&self, g: &FormalSeries<f64>, theta: f64) -> Result<f64> {
        let images = match self.basis {
            SymBasis::Power => power_sums_from_g(g, &theta)?,
            SymBasis::Onerow => g.coefs().to_vec(),
        };
        Ok(self
            .terms
            .iter()
            .map(|(mu, c)| c * mu.parts().iter().map(|&k| images[k]).product::<f64>())
            .sum())
    }
}

/// `f(α; β; γ)` under the one-sided extended specialization.
pub fn extended_special(f: &SymExpr, alpha: &[f64], beta: &[f64], gamma: f64, theta: f64) -> Result<f64> {
    let g = extended_g_series(alpha, beta, &gamma, &theta, f.degree().max(1));
    f.evaluate(&g, theta)
}

/// `f(α⁺; β⁺; γ⁺ / α⁻; β⁻; γ⁻)`.
pub fn doubly_extended_special(f: &SymExpr, params: &VkParams, theta: f64) -> Result<f64> {
    params.validate()?;
    let g = doubly_extended_g_series_f64(params, theta, f.degree().max(1));
    f.evaluate(&g, theta)
}
