//! Jack polynomials via the branching rule, together with their principal
//! specialization, normalized functions `Φ_λ`, the one-row functions `g_k`
//! and the Cauchy identity.

pub mod basis;
pub mod gram_schmidt;
pub mod symfun;

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{hook_h, hook_hprime, jack_norm, shifted_factorial, Partition, Signature, Theta};
use crate::poly::Poly;
use crate::scalar::{factorial, format_q, q, rising, Scalar, Q};

pub use basis::DegreeBasis;
pub use gram_schmidt::gram_schmidt_oracle;
pub use symfun::SymFun;

/// Interlacing test `λ_1 ≥ μ_1 ≥ λ_2 ≥ … ≥ μ_{n-1} ≥ λ_n`.
pub fn interlaces(lambda: &[i64], mu: &[i64]) -> bool {
    mu.len() + 1 == lambda.len()
        && mu
            .iter()
            .enumerate()
            .all(|(j, &m)| lambda[j] >= m && m >= lambda[j + 1])
}

/// Every `μ ≺ λ` (length `n − 1`), optionally with a prescribed `|μ|`.
pub fn interlacing_children(lambda: &[i64], weight: Option<i64>) -> Vec<Vec<i64>> {
    fn rec(lambda: &[i64], j: usize, rem: Option<i64>, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let m = lambda.len() - 1;
        if j == m {
            if rem.is_none_or(|r| r == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let (lo, hi) = (lambda[j + 1], lambda[j]);
        for v in (lo..=hi).rev() {
            if let Some(r) = rem {
                let left = r - v;
                let min_rest: i64 = lambda[j + 2..].iter().sum();
                let max_rest: i64 = lambda[j + 1..m].iter().sum();
                if left < min_rest || left > max_rest {
                    continue;
                }
            }
            cur.push(v);
            rec(lambda, j + 1, rem.map(|r| r - v), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if !lambda.is_empty() {
        rec(lambda, 0, weight, &mut Vec::new(), &mut out);
    }
    out
}

/// Branching coefficient `ψ_{λ/μ}` for `μ ≺ λ`, generic over the scalar.
pub fn psi_generic<T: Scalar>(lambda: &[i64], mu: &[i64], theta: &T) -> T {
    let mut acc = T::one();
    for j in 0..mu.len() {
        let len = (mu[j] - lambda[j + 1]) as usize;
        if len == 0 {
            continue;
        }
        for i in 0..=j {
            let d = theta.clone() * T::from_i64((j - i) as i64);
            let mm = T::from_i64(mu[i] - mu[j]) + d.clone();
            let lm = T::from_i64(lambda[i] - mu[j]) + d;
            let a = mm.clone() + theta.clone();
            let b = mm + T::one();
            let c = lm.clone() + T::one();
            let e = lm + theta.clone();
            // interleave the four Pochhammer symbols to keep magnitudes tame
            for r in 0..len {
                let r = T::from_i64(r as i64);
                acc = acc * (a.clone() + r.clone()) / (b.clone() + r.clone()) * (c.clone() + r.clone())
                    / (e.clone() + r);
            }
        }
    }
    acc
}

/// Result of the Cauchy identity check.
#[derive(Clone, Debug, Serialize)]
pub struct CauchyReport {
    pub holds: bool,
    pub degree: usize,
    pub terms_compared: usize,
    /// First mismatching monomial `(x-exponents, y-exponents, lhs, rhs)`.
    pub counterexample: Option<(Vec<i32>, Vec<i32>, String, String)>,
}

/// Computes Jack polynomials and related quantities for a fixed `θ`,
/// memoizing branching coefficients and monomial coefficients.
pub struct JackEngine {
    theta: Theta,
    psi_cache: HashMap<(Vec<i64>, Vec<i64>), Q>,
    coeff_cache: HashMap<(Vec<i64>, Vec<i64>), Q>,
    chain_cache: HashMap<Vec<i64>, Q>,
}

impl JackEngine {
    pub fn new(theta: Theta) -> Self {
        JackEngine {
            theta,
            psi_cache: HashMap::new(),
            coeff_cache: HashMap::new(),
            chain_cache: HashMap::new(),
        }
    }

    pub fn theta(&self) -> &Theta {
        &self.theta
    }

    /// `ψ_{λ/μ}`; errors unless `μ ≺ λ`.
    pub fn psi(&mut self, lambda: &Signature, mu: &[i64]) -> Result<Q> {
        if !interlaces(lambda.parts(), mu) {
            return Err(Error::NotInterlacing {
                lambda: lambda.to_string(),
                mu: format!("{mu:?}"),
            });
        }
        Ok(self.psi_raw(lambda.parts(), mu))
    }

    pub(crate) fn psi_raw(&mut self, lambda: &[i64], mu: &[i64]) -> Q {
        // ψ depends on differences only; normalize so shifted signatures share entries
        let c = *lambda.last().unwrap();
        let key = (
            lambda.iter().map(|x| x - c).collect::<Vec<_>>(),
            mu.iter().map(|x| x - c).collect::<Vec<_>>(),
        );
        if let Some(v) = self.psi_cache.get(&key) {
            return v.clone();
        }
        let v = psi_generic(&key.0, &key.1, self.theta.value());
        self.psi_cache.insert(key, v.clone());
        v
    }

    /// The full branching row of `λ`.
    pub fn branching_row(&mut self, lambda: &Signature) -> Vec<(Vec<i64>, Q)> {
        interlacing_children(lambda.parts(), None)
            .into_iter()
            .map(|mu| {
                let p = self.psi_raw(lambda.parts(), &mu);
                (mu, p)
            })
            .collect()
    }

    /// Coefficient of `m_ν` in `P_λ` for a partition `λ` padded to length
    /// `n` and a sorted `ν` of the same length, by the branching recursion.
    fn monomial_coeff(&mut self, lambda: &[i64], nu: &[i64]) -> Q {
        if lambda.len() == 1 {
            return if lambda[0] == nu[0] { Q::one() } else { Q::zero() };
        }
        if lambda.iter().sum::<i64>() != nu.iter().sum::<i64>() || !dominates(lambda, nu) {
            return Q::zero();
        }
        let key = (lambda.to_vec(), nu.to_vec());
        if let Some(v) = self.coeff_cache.get(&key) {
            return v.clone();
        }
        let target = lambda.iter().sum::<i64>() - nu[0];
        let mut total = Q::zero();
        for mu in interlacing_children(lambda, Some(target)) {
            let c = self.monomial_coeff(&mu, &nu[1..]);
            if !c.is_zero() {
                total += self.psi_raw(lambda, &mu) * c;
            }
        }
        self.coeff_cache.insert(key, total.clone());
        total
    }

    /// `P_λ(x_1, …, x_n; θ)` with `n = len(λ)`; negative parts go through the
    /// shift relation `P_{λ+1ⁿ} = (∏ x_i) P_λ`.
    pub fn jack_p(&mut self, lambda: &Signature) -> SymFun {
        let n = lambda.len();
        let c = lambda.last();
        let base: Vec<i64> = lambda.parts().iter().map(|x| x - c).collect();
        let weight = base.iter().sum::<i64>() as usize;
        let mut f = SymFun::zero(n);
        for nu in Partition::all_of_weight(weight, n) {
            if nu.part(0) as i64 > base[0] {
                continue;
            }
            let key = nu.padded(n);
            let coeff = self.monomial_coeff(&base, &key);
            f.add_term(key, coeff);
        }
        f.shift(c)
    }

    /// `P_λ` for a partition in `n ≥ ℓ(λ)` variables.
    pub fn jack_p_partition(&mut self, lambda: &Partition, n: usize) -> Result<SymFun> {
        Ok(self.jack_p(&lambda.to_signature(n)?))
    }

    /// `Q_λ = P_λ / (P_λ, P_λ)`.
    pub fn jack_q(&mut self, lambda: &Partition, n: usize) -> Result<SymFun> {
        let norm = jack_norm(lambda, &self.theta);
        Ok(self.jack_p_partition(lambda, n)?.scale(&(Q::one() / norm)))
    }

    /// `P_λ(1ⁿ; θ) = (nθ)_λ / H′(λ)` after shifting `λ` to a partition.
    pub fn principal_special(&self, lambda: &Signature) -> Q {
        principal_special_closed(lambda, &self.theta)
    }

    /// `P_λ(1ⁿ)` as the sum of `ψ`-products over all Gelfand-Tsetlin chains.
    pub fn principal_special_chain(&mut self, lambda: &Signature) -> Q {
        self.chain_sum(lambda.parts())
    }

    fn chain_sum(&mut self, lambda: &[i64]) -> Q {
        if lambda.len() <= 1 {
            return Q::one();
        }
        let c = *lambda.last().unwrap();
        let key: Vec<i64> = lambda.iter().map(|x| x - c).collect();
        if let Some(v) = self.chain_cache.get(&key) {
            return v.clone();
        }
        let mut total = Q::zero();
        for mu in interlacing_children(&key, None) {
            total += self.psi_raw(&key, &mu) * self.chain_sum(&mu);
        }
        self.chain_cache.insert(key, total.clone());
        total
    }

    /// `P_λ(z_1, …, z_k, 1, …, 1)` as an exact Laurent polynomial in `k`
    /// variables, by peeling `k` variables off with the branching rule.
    pub fn restricted_laurent(&mut self, lambda: &Signature, k: usize) -> Result<Poly> {
        let n = lambda.len();
        if k > n {
            return Err(Error::TooManyPoints { given: k, n });
        }
        let mut memo: Vec<HashMap<Vec<i64>, Poly>> = vec![HashMap::new(); k + 1];
        Ok(self.peel(lambda.parts(), 0, k, &mut memo))
    }

    fn peel(&mut self, mu: &[i64], level: usize, k: usize, memo: &mut [HashMap<Vec<i64>, Poly>]) -> Poly {
        if let Some(p) = memo[level].get(mu) {
            return p.clone();
        }
        let out = if level == k {
            let value = if mu.is_empty() {
                Q::one()
            } else {
                principal_special_closed(&Signature::new(mu.to_vec()).unwrap(), &self.theta)
            };
            Poly::constant(k, value)
        } else {
            let mut acc = Poly::zero(k);
            let total: i64 = mu.iter().sum();
            for nu in interlacing_children(mu, None) {
                let weight = total - nu.iter().sum::<i64>();
                let psi = self.psi_raw(mu, &nu);
                let sub = self.peel(&nu, level + 1, k, memo);
                let mut shift = vec![0i32; k];
                shift[level] = weight as i32;
                acc = acc + sub.shift_exponents(&shift).scale(&psi);
            }
            acc
        };
        memo[level].insert(mu.to_vec(), out.clone());
        out
    }

    /// `Φ_λ(z_1, …, z_k, 1, …, 1)` as an exact Laurent polynomial.
    pub fn phi_laurent(&mut self, lambda: &Signature, k: usize) -> Result<Poly> {
        let p = self.restricted_laurent(lambda, k)?;
        let denom = self.principal_special(lambda);
        Ok(p.scale(&(Q::one() / denom)))
    }

    /// `Φ_λ(z_1, …, z_k, 1, …, 1)` at points of the unit circle.
    pub fn phi_eval(&mut self, lambda: &Signature, z: &[Complex64]) -> Result<Complex64> {
        check_torus(z)?;
        let p = self.phi_laurent(lambda, z.len())?;
        Ok(p.eval_complex(z))
    }

    /// `g_k = Q_{(k)}` in `n` variables.
    pub fn g_k(&mut self, k: usize, n: usize) -> SymFun {
        if k == 0 {
            return SymFun::one(n.max(1));
        }
        let row = Partition::new(vec![k]).unwrap();
        self.jack_q(&row, n.max(1)).expect("one row fits")
    }

    /// Cauchy identity `∏(1 − x_i y_j)^{-θ} = Σ_λ P_λ(x) Q_λ(y)` through
    /// degree `d` in `x` (equivalently in `y`).
    pub fn cauchy_check(&mut self, n: usize, m: usize, d: usize) -> CauchyReport {
        let vars = n + m;
        let theta = self.theta.value().clone();
        let cap = 2 * d as i32;
        let mut lhs = Poly::one(vars);
        for i in 0..n {
            for j in 0..m {
                let mut factor = Poly::zero(vars);
                for r in 0..=d {
                    let mut e = vec![0i32; vars];
                    e[i] = r as i32;
                    e[n + j] = r as i32;
                    factor.add_term(e, rising(&theta, r) / factorial(r));
                }
                lhs = lhs.mul_truncated(&factor, cap);
            }
        }
        let mut rhs = Poly::zero(vars);
        for lam in Partition::all_up_to(d, n.min(m)) {
            let p = self.jack_p_partition(&lam, n).unwrap().to_poly().embed(0, vars);
            let qq = self.jack_q(&lam, m).unwrap().to_poly().embed(n, vars);
            rhs = rhs + &p * &qq;
        }
        let diff = &lhs - &rhs;
        let counterexample = diff.terms().iter().next().map(|(e, _)| {
            (
                e[..n].to_vec(),
                e[n..].to_vec(),
                format_q(&lhs.coeff(e)),
                format_q(&rhs.coeff(e)),
            )
        });
        CauchyReport {
            holds: counterexample.is_none(),
            degree: d,
            terms_compared: lhs.len().max(rhs.len()),
            counterexample,
        }
    }
}

/// The explicit multiplicity-weighted form of `g_k`:
/// `Σ_{i_1 ≤ … ≤ i_k} ∏_l (θ)_{m_l}/m_l! x_{i_1} ⋯ x_{i_k}`.
pub fn g_k_explicit(k: usize, n: usize, theta: &Theta) -> SymFun {
    let n = n.max(1);
    let mut f = SymFun::zero(n);
    for nu in Partition::all_of_weight(k, n) {
        let c: Q = nu
            .parts()
            .iter()
            .map(|&m| rising(theta.value(), m) / factorial(m))
            .product();
        f.add_term(nu.padded(n), c);
    }
    f
}

/// `(nθ)_λ / H′(λ)` with `λ` shifted to a partition.
pub fn principal_special_closed(lambda: &Signature, theta: &Theta) -> Q {
    let c = lambda.last();
    let base = lambda.shifted(-c).to_partition().expect("shifted signature is a partition");
    let n_theta = q(lambda.len() as i64) * theta.value();
    shifted_factorial(&n_theta, &base, theta) / hook_hprime(&base, theta)
}

/// `H′(λ)/H(λ)`, the factor turning `P` into `Q`.
pub fn q_factor(lambda: &Partition, theta: &Theta) -> Q {
    hook_hprime(lambda, theta) / hook_h(lambda, theta)
}

pub const TORUS_TOLERANCE: f64 = 1e-12;

pub fn check_torus(z: &[Complex64]) -> Result<()> {
    for (index, zi) in z.iter().enumerate() {
        let modulus = zi.norm();
        if (modulus - 1.0).abs() > TORUS_TOLERANCE {
            return Err(Error::OffTorus { index, modulus });
        }
    }
    Ok(())
}

fn dominates(a: &[i64], b: &[i64]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa < sb {
            return false;
        }
    }
    true
}
