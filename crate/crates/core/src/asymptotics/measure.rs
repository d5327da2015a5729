//! Discrete measures from normalized Jack functions, links `ω(μ, λ)` and
//! their iterated projections, and the moment-growth estimates.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jack::{interlacing_children, JackEngine};
use crate::partition::{norm_sq_of, Signature};
use crate::poly::Poly;
use crate::scalar::{factorial, format_q, parse_q, q, rising, Scalar, Q};
use crate::shifted::gstar_k_at;

/// Masses on integer points, support strictly increasing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteMeasure<T> {
    support: Vec<i64>,
    masses: Vec<T>,
}

impl<T: Scalar> DiscreteMeasure<T> {
    pub fn new(support: Vec<i64>, masses: Vec<T>) -> Result<Self> {
        if support.len() != masses.len() {
            return Err(Error::InvalidArgument("support and masses differ in length".into()));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("support must be strictly increasing".into()));
        }
        if let Some(m) = masses.iter().find(|m| m.as_f64() < 0.0) {
            return Err(Error::InvalidArgument(format!("negative mass {m:?}")));
        }
        Ok(DiscreteMeasure { support, masses })
    }

    /// Collects `(ξ, mass)` pairs, summing repeated points.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, T)>) -> Result<Self> {
        let mut acc: BTreeMap<i64, T> = BTreeMap::new();
        for (x, m) in pairs {
            let slot = acc.entry(x).or_insert_with(T::zero);
            *slot = slot.clone() + m;
        }
        let (support, masses) = acc.into_iter().unzip();
        Self::new(support, masses)
    }

    pub fn point_mass(x: i64) -> Self {
        DiscreteMeasure { support: vec![x], masses: vec![T::one()] }
    }

    pub fn support(&self) -> &[i64] {
        &self.support
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn total_mass(&self) -> T {
        self.masses.iter().fold(T::zero(), |a, m| a + m.clone())
    }

    /// `∫ ξ^l`.
    pub fn moment(&self, l: u32) -> T {
        self.support.iter().zip(&self.masses).fold(T::zero(), |acc, (&x, m)| {
            acc + T::from_i64(x).pow_u(l) * m.clone()
        })
    }

    /// `∫ ξ(ξ−1)⋯(ξ−k+1)`.
    pub fn factorial_moment(&self, k: u32) -> T {
        self.support.iter().zip(&self.masses).fold(T::zero(), |acc, (&x, m)| {
            let f = (0..k as i64).fold(T::one(), |f, r| f * T::from_i64(x - r));
            acc + f * m.clone()
        })
    }

    /// `∫ z^ξ` on the unit circle.
    pub fn fourier(&self, z: Complex64) -> Complex64 {
        let arg = z.arg();
        self.support
            .iter()
            .zip(&self.masses)
            .map(|(&x, m)| Complex64::from_polar(m.as_f64(), arg * x as f64))
            .sum()
    }
}

trait PowU {
    fn pow_u(self, l: u32) -> Self;
}

impl<T: Scalar> PowU for T {
    fn pow_u(self, l: u32) -> Self {
        (0..l).fold(T::one(), |acc, _| acc * self.clone())
    }
}

impl DiscreteMeasure<Q> {
    /// `{"support": [...], "masses": ["p/q", ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "support": self.support,
            "masses": self.masses.iter().map(format_q).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Raw {
            support: Vec<i64>,
            masses: Vec<String>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let masses = raw.masses.iter().map(|m| parse_q(m)).collect::<Result<Vec<_>>>()?;
        Self::new(raw.support, masses)
    }
}

/// `M_n`: the Laurent coefficients of `Φ_λ(z, 1, …, 1)`.
pub fn measure_from_phi(engine: &mut JackEngine, lambda: &Signature) -> Result<DiscreteMeasure<Q>> {
    let p = engine.phi_laurent(lambda, 1)?;
    DiscreteMeasure::from_pairs(p.terms().iter().map(|(e, c)| (e[0] as i64, c.clone())))
}

/// `(∫ξ² M_n, 𝔑(λ)²/(n(nθ+1)))`.
pub fn second_moment_identity(engine: &mut JackEngine, lambda: &Signature) -> Result<(Q, Q)> {
    let m = measure_from_phi(engine, lambda)?;
    let n = q(lambda.len() as i64);
    let theta = engine.theta().value().clone();
    let rhs = lambda.norm_sq(engine.theta()) / (&n * (&n * &theta + q(1)));
    Ok((m.moment(2), rhs))
}

/// `(∫ξ(ξ−1)⋯(ξ−k+1) M_n, k! g*_k(λ)/(nθ)_k)`.
pub fn factorial_moment_identity(engine: &mut JackEngine, lambda: &Signature, k: u32) -> Result<(Q, Q)> {
    let m = measure_from_phi(engine, lambda)?;
    let theta = engine.theta().clone();
    let n_theta = q(lambda.len() as i64) * theta.value();
    let rhs = factorial(k as usize) * gstar_k_at(k as usize, lambda, &theta) / rising(&n_theta, k as usize);
    Ok((m.factorial_moment(k), rhs))
}

/// `ω(μ, λ) = ψ_{λ/μ} P_μ(1ⁿ⁻¹)/P_λ(1ⁿ)` over all `μ ≺ λ`, `n ≥ 2`.
pub fn link_weights(engine: &mut JackEngine, lambda: &Signature) -> Result<Vec<(Signature, Q)>> {
    if lambda.len() < 2 {
        return Err(Error::InvalidArgument("links need n >= 2".into()));
    }
    let top = engine.principal_special(lambda);
    interlacing_children(lambda.parts(), None)
        .into_iter()
        .map(|mu| {
            let psi = engine.psi(lambda, &mu)?;
            let mu = Signature::new(mu)?;
            let w = psi * engine.principal_special(&mu) / &top;
            Ok((mu, w))
        })
        .collect()
}

/// `Proj^n_k δ_λ` as a distribution over length-`k` signatures.
pub fn project_delta(engine: &mut JackEngine, lambda: &Signature, k: usize) -> Result<BTreeMap<Signature, Q>> {
    if k == 0 || k > lambda.len() {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n = {}", lambda.len())));
    }
    let mut dist = BTreeMap::from([(lambda.clone(), Q::one())]);
    for _ in k..lambda.len() {
        let mut next: BTreeMap<Signature, Q> = BTreeMap::new();
        for (a, w) in &dist {
            for (mu, omega) in link_weights(engine, a)? {
                *next.entry(mu).or_insert_with(Q::zero) += w * omega;
            }
        }
        dist = next;
    }
    Ok(dist)
}

/// `Σ_μ Proj(μ) Φ_μ(z_1, …, z_k) = Φ_λ(z_1, …, z_k, 1, …, 1)` exactly.
pub fn projection_matches_phi(engine: &mut JackEngine, lambda: &Signature, k: usize) -> Result<bool> {
    let dist = project_delta(engine, lambda, k)?;
    let mut acc = Poly::zero(k);
    for (mu, w) in &dist {
        acc = acc + engine.phi_laurent(mu, k)?.scale(w);
    }
    Ok(acc == engine.phi_laurent(lambda, k)?)
}

/// Both sides of `|Σ λ_i (i−1)^m| ≤ |Σλ_i| n^m + 2(λ, 2ρ) n^{m−1}`.
pub fn power_bound_sides(lambda: &[Q], m: u32) -> Result<(Q, Q)> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument("vector must be weakly decreasing".into()));
    }
    let n = lambda.len() as i64;
    let lhs: Q = lambda
        .iter()
        .enumerate()
        .map(|(i, x)| x * q(i as i64).pow_u(m))
        .sum::<Q>()
        .abs();
    let sum: Q = lambda.iter().sum();
    let rho: Q = lambda.iter().enumerate().map(|(i, x)| x * q(n - 1 - 2 * i as i64)).sum();
    let nq = q(n);
    let n_pow = nq.clone().pow_u(m);
    let n_pow_prev = if m == 0 { Q::one() / &nq } else { nq.pow_u(m - 1) };
    Ok((lhs, sum.abs() * n_pow + q(2) * rho * n_pow_prev))
}

pub fn power_bound_check(lambda: &[Q], m: u32) -> Result<bool> {
    let (l, r) = power_bound_sides(lambda, m)?;
    Ok(l <= r)
}

/// `λ^{(k)} = (1/k, …, 1/k, −1/(n−k), …, −1/(n−k))`, `1 ≤ k < n`.
pub fn power_bound_extreme_point(n: usize, k: usize) -> Vec<Q> {
    assert!(k >= 1 && k < n);
    let a = Q::one() / q(k as i64);
    let b = -Q::one() / q((n - k) as i64);
    (0..n).map(|i| if i < k { a.clone() } else { b.clone() }).collect()
}

/// `sup |f(λ)| / max(𝔑(λ), n)^{deg f}` over a family of signatures.
pub fn growth_ratio<F>(f: F, degree: u32, family: &[Signature], theta: &Q) -> f64
where
    F: Fn(&Signature) -> Q,
{
    family
        .iter()
        .map(|lam| {
            let value = f(lam).as_f64().abs();
            let norm = norm_sq_of(&lam.parts().iter().map(|&x| q(x)).collect::<Vec<_>>(), theta)
                .as_f64()
                .sqrt();
            let scale = norm.max(lam.len() as f64).powi(degree as i32);
            value / scale
        })
        .fold(0.0, f64::max)
}
