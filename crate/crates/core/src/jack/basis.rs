//! Degree-`d` piece of the ring of symmetric functions: monomial and
//! power-sum bases and the `θ`-deformed Hall inner product
//! `(p_λ, p_μ) = δ_{λμ} z_λ θ^{-ℓ(λ)}`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::jack::SymFun;
use crate::linalg;
use crate::partition::{z_lambda_q, Partition, Theta};
use crate::scalar::{q, Q};

pub struct DegreeBasis {
    degree: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `p_ρ = Σ_ν p_to_m[ρ][ν] m_ν`
    p_to_m: Vec<Vec<Q>>,
    /// `m_ν = Σ_ρ m_to_p[ν][ρ] p_ρ`
    m_to_p: Vec<Vec<Q>>,
}

impl DegreeBasis {
    pub fn new(degree: usize) -> Result<Self> {
        let partitions = Partition::all_of_weight(degree, degree);
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let p_to_m: Vec<Vec<Q>> = partitions
            .iter()
            .map(|rho| partitions.iter().map(|nu| q(power_sum_monomial_count(rho, nu) as i64)).collect())
            .collect();
        let m_to_p = linalg::inverse(&p_to_m)?;
        Ok(DegreeBasis { degree, partitions, index, p_to_m, m_to_p })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Coefficient of `m_ν` in `p_ρ`.
    pub fn p_in_m(&self, rho: &Partition, nu: &Partition) -> Q {
        self.p_to_m[self.index[rho]][self.index[nu]].clone()
    }

    /// Converts a monomial-coefficient vector to power-sum coefficients.
    pub fn m_vec_to_p(&self, m: &[Q]) -> Vec<Q> {
        let k = self.partitions.len();
        (0..k)
            .map(|rho| {
                m.iter()
                    .zip(&self.m_to_p)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, row)| c * &row[rho])
                    .sum()
            })
            .collect()
    }

    /// Monomial coefficients of a homogeneous degree-`d` symmetric function
    /// given with at least `d` variables (so no `m_ν` is lost).
    pub fn m_vec_of(&self, f: &SymFun) -> Vec<Q> {
        assert!(f.n() >= self.degree, "need n >= degree to see every monomial");
        let mut v = vec![Q::zero(); self.partitions.len()];
        for (key, c) in f.terms() {
            let parts: Vec<usize> = key.iter().map(|&x| x as usize).collect();
            let p = Partition::new(parts).expect("sorted key");
            v[self.index[&p]] += c;
        }
        v
    }

    /// `(p_ρ, p_ρ)`.
    pub fn p_norm(&self, rho: &Partition, theta: &Theta) -> Q {
        z_lambda_q(rho) / num_traits::pow(theta.value().clone(), rho.len())
    }

    pub fn inner_m_vecs(&self, f: &[Q], g: &[Q], theta: &Theta) -> Q {
        let fp = self.m_vec_to_p(f);
        let gp = self.m_vec_to_p(g);
        fp.iter()
            .zip(&gp)
            .zip(&self.partitions)
            .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
            .map(|((a, b), rho)| a * b * self.p_norm(rho, theta))
            .sum()
    }

    pub fn inner(&self, f: &SymFun, g: &SymFun, theta: &Theta) -> Q {
        self.inner_m_vecs(&self.m_vec_of(f), &self.m_vec_of(g), theta)
    }

    /// Gram matrix `<m_ν, m_κ>` in the basis order.
    pub fn monomial_gram(&self, theta: &Theta) -> Vec<Vec<Q>> {
        let k = self.partitions.len();
        let w: Vec<Q> = self.partitions.iter().map(|r| self.p_norm(r, theta)).collect();
        (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..k)
                            .map(|r| &self.m_to_p[a][r] * &self.m_to_p[b][r] * &w[r])
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn unit(&self, p: &Partition) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.partitions.len()];
        v[self.index[p]] = Q::one();
        v
    }
}

/// Number of maps from the parts of `rho` onto the rows of `nu` whose row
/// sums equal `nu`: the coefficient of `m_ν` in `p_ρ`.
fn power_sum_monomial_count(rho: &Partition, nu: &Partition) -> u64 {
    fn rec(parts: &[usize], cap: &mut [usize]) -> u64 {
        match parts.split_first() {
            None => u64::from(cap.iter().all(|&c| c == 0)),
            Some((&p, rest)) => {
                let mut total = 0;
                for i in 0..cap.len() {
                    if cap[i] >= p {
                        cap[i] -= p;
                        total += rec(rest, cap);
                        cap[i] += p;
                    }
                }
                total
            }
        }
    }
    let mut cap = nu.parts().to_vec();
    rec(rho.parts(), &mut cap)
}
