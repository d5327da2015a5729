//! Floating-point evaluation of `Φ_λ(z, 1, …, 1)` for long signatures,
//! through the one-step links and log-gamma principal specializations.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::asymptotics::measure::DiscreteMeasure;
use crate::error::{Error, Result};

/// `ln P_λ(1ⁿ; θ) = ln (nθ)_λ − ln H′(λ)` after shifting `λ` to a partition.
pub fn ln_principal_special_f64(lambda: &[i64], theta: f64) -> f64 {
    let n = lambda.len();
    if n == 0 {
        return 0.0;
    }
    let c = lambda[n - 1];
    let parts: Vec<i64> = lambda.iter().map(|x| x - c).collect();
    let nt = n as f64 * theta;
    let mut acc = 0.0;
    for (i, &p) in parts.iter().enumerate() {
        if p > 0 {
            let base = nt - theta * i as f64;
            acc += libm::lgamma(base + p as f64) - libm::lgamma(base);
        }
    }
    // column blocks (j0..=j1) of equal column length
    let mut distinct: Vec<i64> = parts.iter().copied().filter(|&p| p > 0).collect();
    distinct.dedup();
    distinct.reverse();
    let mut blocks = Vec::with_capacity(distinct.len());
    let mut prev = 0;
    for &v in &distinct {
        let len = parts.iter().take_while(|&&p| p >= v).count();
        blocks.push((prev + 1, v, len));
        prev = v;
    }
    for (i, &p) in parts.iter().enumerate() {
        let row = i + 1;
        for &(j0, j1, len) in &blocks {
            if j0 > p {
                break;
            }
            // Σ_{j=j0}^{j1} ln(p − j + θ(len − row + 1))
            let shift = theta * (len - row + 1) as f64;
            acc -= libm::lgamma((p - j0 + 1) as f64 + shift) - libm::lgamma((p - j1) as f64 + shift);
        }
    }
    acc
}

/// `ln (x)_len` for `x > 0`.
fn ln_poch(x: f64, len: i64) -> f64 {
    libm::lgamma(x + len as f64) - libm::lgamma(x)
}

/// `ln (d + θk)_θ` with `(x)_θ = Γ(x + θ)/Γ(x)`: the part of the pair
/// `i < j` (`k = j − i`, `d = μ_i − μ_j`) of
/// `ln P_μ(1^m) = Σ_{i<j} ln (d + θk)_θ − ln (θk)_θ` that depends on `μ`.
fn pair_term(d: i64, k: usize, theta: f64) -> f64 {
    let x = d as f64 + theta * k as f64;
    libm::lgamma(x + theta) - libm::lgamma(x)
}

/// Factor of `ln ψ_{λ/μ}` for rows `i ≤ j`, where `len = μ_j − λ_{j+1} > 0`.
fn psi_term(mu_i: i64, lambda_i: i64, mu_j: i64, k: usize, len: i64, theta: f64) -> f64 {
    let d = theta * k as f64;
    let mm = (mu_i - mu_j) as f64 + d;
    let lm = (lambda_i - mu_j) as f64 + d;
    ln_poch(mm + theta, len) - ln_poch(mm + 1.0, len) + ln_poch(lm + 1.0, len) - ln_poch(lm + theta, len)
}

/// `ln ψ_{λ/μ}`: the Pochhammer factors of the branching coefficient as
/// log-gamma differences, so long strips cost O(1) each.
pub fn ln_psi_f64(lambda: &[i64], mu: &[i64], theta: f64) -> f64 {
    let mut acc = 0.0;
    for j in 0..mu.len() {
        let len = mu[j] - lambda[j + 1];
        if len > 0 {
            acc += (0..=j).map(|i| psi_term(mu[i], lambda[i], mu[j], j - i, len, theta)).sum::<f64>();
        }
    }
    acc
}

/// `ln ω(μ, λ) = ln ψ_{λ/μ} + ln P_μ(1^{n−1}) − ln P_λ(1ⁿ)` for all children
/// of one `λ`.
///
/// Only the coordinates with `λ_j > λ_{j+1}` (the free ones) move; the rest
/// are pinned to `μ_j = λ_j`. Pinned rows contribute nothing to `ln ψ`, and a
/// pair of pinned rows has the same distance and difference in `μ` as in
/// `λ`, so it cancels from the ratio of principal specializations. The
/// distance-only factors telescope to `ln Γ(nθ) − ln Γ(θ)`. What remains is
/// a constant, a table per free row against the pinned rows, and O(g²)
/// terms per child for `g` free rows.
struct LinkKernel<'a> {
    lambda: &'a [i64],
    theta: f64,
    free: Vec<usize>,
    base: f64,
    /// `tables[a][v − λ_{j+1}]`: pairs of the free row `j = free[a]` with
    /// the pinned rows at `μ_j = v`, minus the same pairs in `λ`.
    tables: Vec<Vec<f64>>,
}

impl<'a> LinkKernel<'a> {
    fn new(lambda: &'a [i64], theta: f64) -> Self {
        let n = lambda.len();
        let m = n - 1;
        let free: Vec<usize> = (0..m).filter(|&j| lambda[j] > lambda[j + 1]).collect();
        let pinned: Vec<usize> = (0..m).filter(|&j| lambda[j] == lambda[j + 1]).collect();
        // With every row pinned, λ is constant and the distance terms telescope
        // to lgamma(nθ) − lgamma(θ); the lone child then has weight exactly one.
        let mut base = if free.is_empty() {
            0.0
        } else {
            libm::lgamma(n as f64 * theta)
                - libm::lgamma(theta)
                - (0..m).map(|i| pair_term(lambda[i] - lambda[m], m - i, theta)).sum::<f64>()
        };
        for (a, &j) in free.iter().enumerate() {
            for &i in &free[..a] {
                base -= pair_term(lambda[i] - lambda[j], j - i, theta);
            }
        }
        let pair = |i: usize, j: usize, vi: i64, vj: i64| {
            if i < j {
                pair_term(vi - vj, j - i, theta)
            } else {
                pair_term(vj - vi, i - j, theta)
            }
        };
        let tables = free
            .iter()
            .map(|&j| {
                (lambda[j + 1]..=lambda[j])
                    .map(|v| pinned.iter().map(|&i| pair(i, j, lambda[i], v) - pair(i, j, lambda[i], lambda[j])).sum())
                    .collect()
            })
            .collect();
        LinkKernel { lambda, theta, free, base, tables }
    }

    fn ln_weight(&self, mu: &[i64]) -> f64 {
        let (lambda, theta, free) = (self.lambda, self.theta, &self.free);
        let mut acc = self.base;
        for (a, &j) in free.iter().enumerate() {
            acc += self.tables[a][(mu[j] - lambda[j + 1]) as usize];
            for &i in &free[..a] {
                acc += pair_term(mu[i] - mu[j], j - i, theta);
            }
            let len = mu[j] - lambda[j + 1];
            if len > 0 {
                for &i in &free[..=a] {
                    acc += psi_term(mu[i], lambda[i], mu[j], j - i, len, theta);
                }
            }
        }
        acc
    }

    /// Calls `f` on every `μ ≺ λ`, odometer style over the free rows.
    fn for_each_child(&self, mut f: impl FnMut(&[i64])) {
        let lambda = self.lambda;
        let mut mu = lambda[..lambda.len() - 1].to_vec();
        loop {
            f(&mu);
            let mut k = self.free.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                let j = self.free[k];
                if mu[j] > lambda[j + 1] {
                    mu[j] -= 1;
                    break;
                }
                mu[j] = lambda[j];
            }
        }
    }
}

/// `ω(μ, λ)` in floating point for every `μ ≺ λ`.
pub fn link_weights_f64(lambda: &[i64], theta: f64) -> Vec<(Vec<i64>, f64)> {
    if lambda.is_empty() {
        return Vec::new();
    }
    let kernel = LinkKernel::new(lambda, theta);
    let mut out = Vec::new();
    kernel.for_each_child(|mu| out.push((mu.to_vec(), kernel.ln_weight(mu).exp())));
    out
}

/// `M_n` in floating point: the mass at `ξ` is `Σ ω(μ, λ)` over
/// `|λ| − |μ| = ξ`.
pub fn measure_f64(lambda: &[i64], theta: f64) -> Result<DiscreteMeasure<f64>> {
    if lambda.is_empty() {
        return Err(Error::EmptySignature);
    }
    let total: i64 = lambda.iter().sum();
    let kernel = LinkKernel::new(lambda, theta);
    let mut acc: BTreeMap<i64, f64> = BTreeMap::new();
    kernel.for_each_child(|mu| {
        *acc.entry(total - mu.iter().sum::<i64>()).or_insert(0.0) += kernel.ln_weight(mu).exp();
    });
    DiscreteMeasure::from_pairs(acc)
}

/// `Φ_λ(z, 1, …, 1)` through [`measure_f64`].
pub fn phi_one_point_f64(lambda: &[i64], theta: f64, z: Complex64) -> Result<Complex64> {
    Ok(measure_f64(lambda, theta)?.fourier(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jack::JackEngine;
    use crate::partition::{Signature, Theta};
    use crate::scalar::to_f64;

    #[test]
    fn principal_special_matches_exact() {
        for (a, b) in [(1, 3), (1, 1), (5, 2)] {
            let t = Theta::from_ratio(a, b).unwrap();
            let e = JackEngine::new(t.clone());
            for lam in Signature::all_in_box(4, -2, 3) {
                let exact = to_f64(&e.principal_special(&lam)).ln();
                let approx = ln_principal_special_f64(lam.parts(), t.to_f64());
                assert!((exact - approx).abs() < 1e-11, "{lam:?}: {exact} vs {approx}");
            }
        }
    }

    #[test]
    fn links_match_exact_measure() {
        let t = Theta::from_ratio(2, 3).unwrap();
        let mut e = JackEngine::new(t.clone());
        for lam in [vec![3, 1, 0, -2], vec![2, 2, 2], vec![4, 0, 0, 0, -1]] {
            let s = Signature::new(lam.clone()).unwrap();
            let exact = crate::asymptotics::measure_from_phi(&mut e, &s).unwrap();
            let approx = measure_f64(&lam, t.to_f64()).unwrap();
            assert_eq!(exact.support(), approx.support());
            for (x, y) in exact.masses().iter().zip(approx.masses()) {
                assert!((to_f64(x) - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn children_and_psi_match_exact_branching() {
        let t = Theta::from_ratio(3, 5).unwrap();
        let mut e = JackEngine::new(t.clone());
        for lam in Signature::all_in_box(4, -2, 3) {
            let links = link_weights_f64(lam.parts(), t.to_f64());
            let row = e.branching_row(&lam);
            assert_eq!(links.len(), row.len(), "{lam}");
            for (mu, psi) in row {
                assert!(links.iter().any(|(m, _)| *m == mu));
                let approx = ln_psi_f64(lam.parts(), &mu, t.to_f64());
                assert!((to_f64(&psi).ln() - approx).abs() < 1e-12, "{lam} {mu:?}");
            }
            let exact = crate::asymptotics::link_weights(&mut e, &lam).unwrap();
            for ((m1, w1), (m2, w2)) in exact.iter().zip(&links) {
                assert_eq!(m1.parts(), m2.as_slice());
                assert!((to_f64(w1) - w2).abs() < 1e-12, "{lam} {m2:?}");
            }
        }
    }

    #[test]
    fn long_row_mass_is_one() {
        let mut lam = vec![0i64; 200];
        lam[0] = 100;
        lam[199] = -66;
        let m = measure_f64(&lam, 0.5).unwrap();
        assert!((m.total_mass() - 1.0).abs() < 1e-9, "{}", m.total_mass());
    }

    #[test]
    fn long_mixed_signature_keeps_mass_and_mean() {
        let n = 1500;
        let mut lam = vec![0i64; n];
        lam[0] = 375;
        lam[n - 1] = -750;
        for theta in [0.5, 2.0] {
            let m = measure_f64(&lam, theta).unwrap();
            assert!((m.total_mass() - 1.0).abs() < 1e-10, "{}", m.total_mass());
            // E ξ = Σλ_i / n from the first moment identity
            assert!((m.moment(1) - (375.0 - 750.0) / n as f64).abs() < 1e-9);
        }
        assert_eq!(measure_f64(&[4], 1.0).unwrap().support(), &[4]);
    }
}
