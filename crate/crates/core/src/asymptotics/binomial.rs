//! Expansion of `Φ_λ(z_1, …, z_k, 1, …, 1)` in `P_μ(z − 1)` with
//! coefficients `Q*_μ(λ)/(nθ)_μ`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jack::JackEngine;
use crate::partition::{shifted_factorial, Partition, Signature};
use crate::poly::{one_plus_t_pow, Poly};
use crate::scalar::{q, Q};
use crate::shifted::gstar::to_q;
use crate::shifted::ShiftedEngine;

#[derive(Clone, Debug, PartialEq)]
pub struct BinomialExpansion {
    pub n: usize,
    pub k: usize,
    /// Nonzero coefficients of `P_μ(t_1, …, t_k)`.
    pub coefficients: BTreeMap<Partition, Q>,
}

/// Coefficients `Q*_μ(λ)/(nθ)_μ` for `ℓ(μ) ≤ k`, `|μ| ≤ degree`.
pub fn binomial_expand(
    engine: &mut ShiftedEngine,
    lambda: &Signature,
    k: usize,
    degree: usize,
) -> Result<BinomialExpansion> {
    let n = lambda.len();
    if k > n {
        return Err(Error::TooManyPoints { given: k, n });
    }
    let theta = engine.theta().clone();
    let n_theta = q(n as i64) * theta.value();
    let x = to_q(lambda.parts());
    let mut coefficients = BTreeMap::new();
    for mu in Partition::all_up_to(degree, k) {
        let c = engine.qstar_eval(&mu, &x)?;
        if !c.is_zero() {
            let denom = shifted_factorial(&n_theta, &mu, &theta);
            coefficients.insert(mu, c / denom);
        }
    }
    Ok(BinomialExpansion { n, k, coefficients })
}

impl BinomialExpansion {
    /// `Σ_μ c_μ P_μ(t_1, …, t_k)`.
    pub fn in_t(&self, jack: &mut JackEngine) -> Result<Poly> {
        let mut acc = Poly::zero(self.k);
        for (mu, c) in &self.coefficients {
            let p = if mu.len() == 0 { Poly::one(self.k) } else { jack.jack_p_partition(mu, self.k)?.to_poly() };
            acc = acc + p.scale(c);
        }
        Ok(acc)
    }

    /// The same sum with `t_i = z_i − 1` substituted.
    pub fn in_z(&self, jack: &mut JackEngine) -> Result<Poly> {
        let images: Vec<Poly> = (0..self.k).map(|i| Poly::linear(self.k, i, &q(1))).collect();
        Ok(self.in_t(jack)?.substitute(&images))
    }
}

/// Rebuilds `Φ_λ(z_1, …, z_k, 1, …)` exactly from the expansion of the
/// partition `λ − λ_n`, multiplied back by `(z_1⋯z_k)^{λ_n}`.
pub fn binomial_reconstruct(engine: &mut ShiftedEngine, lambda: &Signature, k: usize) -> Result<Poly> {
    let c = lambda.last();
    let base = lambda.shifted(-c);
    let degree = base.to_partition()?.weight();
    let expansion = binomial_expand(engine, &base, k, degree)?;
    let p = expansion.in_z(engine.jack())?;
    Ok(p.shift_exponents(&vec![c as i32; k]))
}

/// Exact reconstruction equals the branching-rule `Φ_λ`.
pub fn binomial_check(engine: &mut ShiftedEngine, lambda: &Signature, k: usize) -> Result<bool> {
    let rebuilt = binomial_reconstruct(engine, lambda, k)?;
    let direct = engine.jack().phi_laurent(lambda, k)?;
    Ok(rebuilt == direct)
}

/// Taylor expansion of a Laurent polynomial at `z = (1, …, 1)` in
/// `t = z − 1`, truncated at total degree `degree`.
pub fn taylor_at_one(p: &Poly, degree: usize) -> Poly {
    let k = p.nvars();
    let d = degree as i32;
    let mut cache: HashMap<(usize, i32), Poly> = HashMap::new();
    let mut out = Poly::zero(k);
    for (e, c) in p.terms() {
        let mut term = Poly::constant(k, c.clone());
        for (i, &ei) in e.iter().enumerate() {
            let f = cache.entry((i, ei)).or_insert_with(|| {
                let mut f = Poly::zero(k);
                for (r, b) in one_plus_t_pow(ei as i64, d).into_iter().enumerate() {
                    let mut exp = vec![0i32; k];
                    exp[i] = r as i32;
                    f.add_term(exp, b);
                }
                f
            });
            term = term.mul_truncated(f, d);
        }
        out = out + term;
    }
    out
}

/// The expansion of the signature `λ` itself (no shift) agrees with the
/// Taylor series of `Φ_λ` at `1` through total degree `degree`.
pub fn binomial_series_check(engine: &mut ShiftedEngine, lambda: &Signature, k: usize, degree: usize) -> Result<bool> {
    let expansion = binomial_expand(engine, lambda, k, degree)?;
    let series = expansion.in_t(engine.jack())?.truncate(degree as i32);
    let direct = taylor_at_one(&engine.jack().phi_laurent(lambda, k)?, degree);
    Ok(series == direct)
}
