//! Shifted (interpolation) Jack polynomials `P*_μ`, built from the shifted
//! branching rule and cross-checked by solving the Newton interpolation
//! problem directly.

pub mod gstar;
pub mod ratfunc;

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jack::{interlacing_children, q_factor, JackEngine, SymFun};
use crate::linalg;
use crate::partition::{hook_h, Partition, Theta};
use crate::poly::Poly;
use crate::scalar::{q, Q};

pub use gstar::*;
pub use ratfunc::LinearProduct;

/// An element of `Λ^θ(n)`: a polynomial in `x_1, …, x_n` symmetric in the
/// shifted variables `x_i − θ i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedPoly {
    theta: Theta,
    poly: Poly,
}

impl ShiftedPoly {
    pub fn new(poly: Poly, theta: Theta) -> Self {
        ShiftedPoly { theta, poly }
    }

    pub fn n(&self) -> usize {
        self.poly.nvars()
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn theta(&self) -> &Theta {
        &self.theta
    }

    pub fn degree(&self) -> i32 {
        self.poly.total_degree().unwrap_or(0)
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.poly.eval(x)
    }

    /// Value at a partition with `ℓ(λ) ≤ n` (padded with zeros).
    pub fn eval_partition(&self, lambda: &Partition) -> Result<Q> {
        if lambda.len() > self.n() {
            return Err(Error::InvalidArgument(format!(
                "{lambda} has more than {} parts",
                self.n()
            )));
        }
        let x: Vec<Q> = lambda.padded(self.n()).into_iter().map(q).collect();
        Ok(self.eval(&x))
    }

    /// Invariance under `x_i − θi ↔ x_{i+1} − θ(i+1)` for every `i < n`.
    pub fn is_shifted_symmetric(&self) -> bool {
        let n = self.n();
        let theta = self.theta.value();
        (0..n.saturating_sub(1)).all(|i| {
            let images: Vec<Poly> = (0..n)
                .map(|j| {
                    if j == i {
                        Poly::linear(n, i + 1, theta)
                    } else if j == i + 1 {
                        Poly::linear(n, i, &-theta.clone())
                    } else {
                        Poly::var(n, j)
                    }
                })
                .collect();
            self.poly.substitute(&images) == self.poly
        })
    }

    /// The homogeneous part of top degree.
    pub fn top_term(&self) -> Poly {
        self.poly.homogeneous_part(self.degree())
    }

    /// Image under `Λ^θ(n) → Λ^θ(n−1)`, `x_n ↦ 0`.
    pub fn drop_last(&self) -> ShiftedPoly {
        ShiftedPoly::new(self.poly.drop_last_at_zero(), self.theta.clone())
    }

    pub fn scale(&self, c: &Q) -> ShiftedPoly {
        ShiftedPoly::new(self.poly.scale(c), self.theta.clone())
    }

    /// The polynomial JSON with an added `"theta"` field.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.poly.to_json();
        v["theta"] = serde_json::Value::String(self.theta.to_string());
        v
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ShiftedPoly> {
        let theta = v
            .get("theta")
            .and_then(|t| t.as_str())
            .ok_or_else(|| Error::Parse("missing theta".into()))?
            .parse()?;
        Ok(ShiftedPoly::new(Poly::from_json(v)?, theta))
    }
}

/// Builds `P*_μ` and evaluates it, memoizing the polynomials per padded
/// partition.
pub struct ShiftedEngine {
    jack: JackEngine,
    poly_cache: HashMap<Vec<i64>, Poly>,
}

impl ShiftedEngine {
    pub fn new(theta: Theta) -> Self {
        ShiftedEngine { jack: JackEngine::new(theta), poly_cache: HashMap::new() }
    }

    pub fn theta(&self) -> &Theta {
        self.jack.theta()
    }

    pub fn jack(&mut self) -> &mut JackEngine {
        &mut self.jack
    }

    /// `P*_μ(x_1, …, x_n; θ)` by the shifted branching rule.
    pub fn pstar(&mut self, mu: &Partition, n: usize) -> Result<ShiftedPoly> {
        if mu.len() > n {
            return Err(Error::InvalidArgument(format!("ℓ({mu}) > n = {n}")));
        }
        let poly = self.pstar_poly(&mu.padded(n));
        Ok(ShiftedPoly::new(poly, self.theta().clone()))
    }

    /// `Q*_μ = P*_μ H′(μ)/H(μ)`.
    pub fn qstar(&mut self, mu: &Partition, n: usize) -> Result<ShiftedPoly> {
        let f = q_factor(mu, self.theta());
        Ok(self.pstar(mu, n)?.scale(&f))
    }

    fn pstar_poly(&mut self, lambda: &[i64]) -> Poly {
        let m = lambda.len();
        if m == 0 {
            return Poly::one(0);
        }
        if let Some(p) = self.poly_cache.get(lambda) {
            return p.clone();
        }
        let theta = self.theta().value().clone();
        let mut acc = Poly::zero(m);
        for mu in interlacing_children(lambda, None) {
            let psi = self.jack.psi_raw(lambda, &mu);
            let mut factor = Poly::constant(m, psi);
            for (row, &len) in lambda.iter().enumerate() {
                let start = mu.get(row).copied().unwrap_or(0);
                for col in start + 1..=len {
                    // x_1 − a′(s) + θ l′(s)
                    let c = q(col - 1) - &theta * q(row as i64);
                    factor = &factor * &Poly::linear(m, 0, &c);
                }
            }
            let tail = self.pstar_poly(&mu).embed(1, m);
            acc = acc + &factor * &tail;
        }
        self.poly_cache.insert(lambda.to_vec(), acc.clone());
        acc
    }

    /// `P*_μ(x)` at a rational point without building the polynomial.
    pub fn pstar_eval(&mut self, mu: &Partition, x: &[Q]) -> Result<Q> {
        if mu.len() > x.len() {
            return Ok(Q::zero());
        }
        let mut memo = HashMap::new();
        Ok(self.eval_rec(&mu.padded(x.len()), x, &mut memo))
    }

    /// `Q*_μ(x)`.
    pub fn qstar_eval(&mut self, mu: &Partition, x: &[Q]) -> Result<Q> {
        Ok(self.pstar_eval(mu, x)? * q_factor(mu, self.theta()))
    }

    fn eval_rec(&mut self, lambda: &[i64], x: &[Q], memo: &mut HashMap<Vec<i64>, Q>) -> Q {
        let m = lambda.len();
        if m == 0 {
            return Q::one();
        }
        if let Some(v) = memo.get(lambda) {
            return v.clone();
        }
        let x1 = &x[x.len() - m];
        let theta = self.theta().value().clone();
        let mut total = Q::zero();
        for mu in interlacing_children(lambda, None) {
            let mut factor = Q::one();
            for (row, &len) in lambda.iter().enumerate() {
                let start = mu.get(row).copied().unwrap_or(0);
                for col in start + 1..=len {
                    factor *= x1 - q(col - 1) + &theta * q(row as i64);
                }
                if factor.is_zero() {
                    break;
                }
            }
            if factor.is_zero() {
                continue;
            }
            let psi = self.jack.psi_raw(lambda, &mu);
            total += psi * factor * self.eval_rec(&mu, x, memo);
        }
        memo.insert(lambda.to_vec(), total.clone());
        total
    }

    /// The degree-`|μ|` part of `P*_μ` as a symmetric function.
    pub fn top_symfun(&mut self, mu: &Partition, n: usize) -> Result<SymFun> {
        let top = self.pstar(mu, n)?.top_term();
        SymFun::from_poly(&top)
    }
}

/// `p*_m(x) = Σ_i ((x_i − θi)^m − (−θi)^m)`.
pub fn shifted_power_sum(m: usize, n: usize, theta: &Theta) -> Poly {
    let mut acc = Poly::zero(n);
    for i in 0..n {
        let shift = theta.value() * q(i as i64 + 1);
        let y = Poly::linear(n, i, &shift);
        let c = num_traits::pow(-shift, m);
        acc = acc + y.pow(m as u32) - Poly::constant(n, c);
    }
    acc
}

/// Solves the Newton interpolation problem for `P*_μ` in `n` variables:
/// an element of `Λ^θ(n)` of degree `≤ |μ|` vanishing on every partition
/// `λ ≠ μ` with `|λ| ≤ |μ|`, `ℓ(λ) ≤ n`, and equal to `H(μ)` at `μ`.
pub fn interpolation_oracle(mu: &Partition, n: usize, theta: &Theta) -> Result<ShiftedPoly> {
    if mu.len() > n {
        return Err(Error::InvalidArgument(format!("ℓ({mu}) > n = {n}")));
    }
    let d = mu.weight();
    // basis: products of p*_1..p*_n, indexed by partitions with parts ≤ n
    let sums: Vec<Poly> = (0..=n.max(1)).map(|m| shifted_power_sum(m, n, theta)).collect();
    let basis: Vec<Poly> = Partition::all_up_to(d, d)
        .into_iter()
        .filter(|rho| rho.part(0) <= n)
        .map(|rho| rho.parts().iter().fold(Poly::one(n), |acc, &m| &acc * &sums[m]))
        .collect();
    // constraints: partitions with ℓ ≤ n, graded-lex
    let points = Partition::all_up_to(d, n);
    if basis.len() != points.len() {
        return Err(Error::DimensionMismatch { basis: basis.len(), constraints: points.len() });
    }
    let xs: Vec<Vec<Q>> = points
        .iter()
        .map(|p| p.padded(n).into_iter().map(q).collect())
        .collect();
    let a: Vec<Vec<Q>> = xs.iter().map(|x| basis.iter().map(|b| b.eval(x)).collect()).collect();
    let rhs: Vec<Q> = points
        .iter()
        .map(|p| if p == mu { hook_h(mu, theta) } else { Q::zero() })
        .collect();
    let c = linalg::solve(&a, &rhs)?;
    let poly = basis
        .iter()
        .zip(&c)
        .fold(Poly::zero(n), |acc, (b, ci)| acc + b.scale(ci));
    Ok(ShiftedPoly::new(poly, theta.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pstar_small_examples() {
        let th = Theta::from_ratio(2, 3).unwrap();
        let mut e = ShiftedEngine::new(th.clone());
        let one = e.pstar(&p(&[]), 3).unwrap();
        assert_eq!(one.poly(), &Poly::one(3));
        let p1 = e.pstar(&p(&[1]), 3).unwrap();
        let sum = (0..3).fold(Poly::zero(3), |a, i| a + Poly::var(3, i));
        assert_eq!(p1.poly(), &sum);
        assert_eq!(p1.eval_partition(&p(&[1])).unwrap(), hook_h(&p(&[1]), &th));
        // P*_(1,1) = (x_1 + θ) x_2 in two variables
        let p11 = e.pstar(&p(&[1, 1]), 2).unwrap();
        let expect = &Poly::linear(2, 0, &-th.value().clone()) * &Poly::var(2, 1);
        assert_eq!(p11.poly(), &expect);
    }

    #[test]
    fn one_variable_is_falling_factorial() {
        let mut e = ShiftedEngine::new(Theta::from_ratio(1, 2).unwrap());
        let f = e.pstar(&p(&[3]), 1).unwrap();
        for x in 0..6i64 {
            let expect = q(x) * q(x - 1) * q(x - 2);
            assert_eq!(f.eval(&[q(x)]), expect);
        }
    }

    #[test]
    fn point_evaluation_matches_polynomial() {
        let mut e = ShiftedEngine::new(Theta::from_ratio(3, 5).unwrap());
        let x = vec![qr(7, 2), q(-1), qr(1, 3)];
        for mu in Partition::all_up_to(4, 3) {
            let poly = e.pstar(&mu, 3).unwrap();
            assert_eq!(e.pstar_eval(&mu, &x).unwrap(), poly.eval(&x), "μ = {mu}");
        }
        assert_eq!(e.pstar_eval(&p(&[1, 1, 1, 1]), &x).unwrap(), Q::zero());
    }

    #[test]
    fn oracle_degree_one() {
        let th = Theta::from_ratio(1, 2).unwrap();
        let mut e = ShiftedEngine::new(th.clone());
        let o = interpolation_oracle(&p(&[1]), 2, &th).unwrap();
        assert_eq!(&o, &e.pstar(&p(&[1]), 2).unwrap());
    }

    #[test]
    fn oracle_matches_shifted_schur_determinant() {
        // θ = 1: s*_μ(x) = det[(x_i + n − i)↓(μ_j + n − j)] / det[(x_i + n − i)↓(n − j)]
        // with falling powers; here n = 2, μ = (2)
        let th = Theta::one();
        let o = interpolation_oracle(&p(&[2]), 2, &th).unwrap();
        let falling = |y: &Q, k: i64| (0..k).fold(Q::one(), |acc, r| acc * (y - q(r)));
        for a in -2..4i64 {
            for b in -2..4i64 {
                let y = [q(a) + q(1), q(b)];
                let mu = [2i64, 0];
                let num = falling(&y[0], mu[0] + 1) * falling(&y[1], mu[1])
                    - falling(&y[0], mu[1]) * falling(&y[1], mu[0] + 1);
                let den = falling(&y[0], 1) * falling(&y[1], 0) - falling(&y[0], 0) * falling(&y[1], 1);
                if den.is_zero() {
                    continue;
                }
                assert_eq!(o.eval(&[q(a), q(b)]), num / den, "at ({a},{b})");
            }
        }
    }

    #[test]
    fn oracle_two_column() {
        let th = Theta::from_ratio(1, 2).unwrap();
        let mut e = ShiftedEngine::new(th.clone());
        let o = interpolation_oracle(&p(&[1, 1]), 3, &th).unwrap();
        assert_eq!(o, e.pstar(&p(&[1, 1]), 3).unwrap());
    }

    #[test]
    fn membership_and_stability() {
        let th = Theta::from_ratio(2, 1).unwrap();
        let mut e = ShiftedEngine::new(th.clone());
        let f = e.pstar(&p(&[2, 1]), 3).unwrap();
        assert!(f.is_shifted_symmetric());
        let g = e.pstar(&p(&[2, 1]), 2).unwrap();
        assert_eq!(f.drop_last(), g);
        let not = ShiftedPoly::new(Poly::var(2, 0), th);
        assert!(!not.is_shifted_symmetric());
    }

    #[test]
    fn shifted_power_sums_are_shifted_symmetric() {
        let th = Theta::from_ratio(1, 3).unwrap();
        for m in 1..4 {
            let f = ShiftedPoly::new(shifted_power_sum(m, 3, &th), th.clone());
            assert!(f.is_shifted_symmetric());
            assert_eq!(f.eval(&[q(0), q(0), q(0)]), Q::zero());
        }
    }
}
