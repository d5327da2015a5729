//! The one-row functions `g*_k = Q*_{(k)}`, the generating functions
//! `G(x; t)` and `G*(x; u)`, and the exact identities relating them.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{Signature, Theta};
use crate::poly::Poly;
use crate::scalar::{factorial, format_q, q, rising, Q};
use crate::series::{FormalSeries, SeriesVar};
use crate::shifted::{LinearProduct, ShiftedPoly};

/// One term of the explicit sum for `g*_k`: a weight and the factors
/// `(x_var − shift)` in order.
pub type GStarTerm = (Q, Vec<(usize, i64)>);

/// Expands `g*_k(x_1..x_n)` as
/// `Σ_{i_1≤…≤i_k} ∏_l (θ)_{m_l}/m_l! (x_{i_1}−k+1)⋯(x_{i_{k−1}}−1) x_{i_k}`.
pub fn gstar_terms(k: usize, n: usize, theta: &Theta) -> Vec<GStarTerm> {
    fn rec(l: usize, n: usize, rem: usize, mult: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if l == n - 1 {
            mult.push(rem);
            out.push(mult.clone());
            mult.pop();
            return;
        }
        for m in (0..=rem).rev() {
            mult.push(m);
            rec(l + 1, n, rem - m, mult, out);
            mult.pop();
        }
    }
    if k == 0 {
        return vec![(Q::one(), Vec::new())];
    }
    if n == 0 {
        return Vec::new();
    }
    let mut mults = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut mults);
    mults
        .into_iter()
        .map(|m| {
            let weight: Q = m.iter().map(|&c| rising(theta.value(), c) / factorial(c)).product();
            let mut factors = Vec::with_capacity(k);
            let mut pos = 1i64;
            for (var, &c) in m.iter().enumerate() {
                for _ in 0..c {
                    factors.push((var, k as i64 - pos));
                    pos += 1;
                }
            }
            (weight, factors)
        })
        .collect()
}

/// `g*_k(x)` by the explicit multiset sum.
pub fn gstar_k(k: usize, x: &[Q], theta: &Theta) -> Q {
    gstar_terms(k, x.len(), theta)
        .iter()
        .map(|(w, fs)| fs.iter().fold(w.clone(), |acc, &(v, s)| acc * (&x[v] - q(s))))
        .sum()
}

pub fn gstar_k_at(k: usize, lambda: &Signature, theta: &Theta) -> Q {
    gstar_k(k, &to_q(lambda.parts()), theta)
}

/// `g*_k` as an element of `Λ^θ(n)`.
pub fn gstar_poly(k: usize, n: usize, theta: &Theta) -> ShiftedPoly {
    let mut acc = Poly::zero(n);
    for (w, fs) in gstar_terms(k, n, theta) {
        let term = fs
            .iter()
            .fold(Poly::constant(n, w), |acc, &(v, s)| &acc * &Poly::linear(n, v, &q(s)));
        acc = acc + term;
    }
    ShiftedPoly::new(acc, theta.clone())
}

/// `g*_0(x), …, g*_K(x)` through the convolution
/// `g*_k(x_1..x_n) = Σ_{p+q=k} g*_p(x_1−q, …, x_{n−1}−q) g*_q(x_n)`;
/// `O(n K³)`, usable at large `n`.
pub fn gstar_all_fast(order: usize, x: &[Q], theta: &Theta) -> Vec<Q> {
    let single = |qq: usize, y: &Q| -> Q {
        let falling = (0..qq as i64).fold(Q::one(), |acc, r| acc * (y - q(r)));
        rising(theta.value(), qq) / factorial(qq) * falling
    };
    // table[s][p] = g*_p(x_1 − s, …, x_j − s) for the current prefix length j
    let mut table: Vec<Vec<Q>> = (0..=order)
        .map(|_| (0..=order).map(|p| if p == 0 { Q::one() } else { Q::zero() }).collect())
        .collect();
    for xj in x {
        let mut next = vec![vec![Q::zero(); order + 1]; order + 1];
        for s in 0..=order {
            let y = xj - q(s as i64);
            let singles: Vec<Q> = (0..=order - s).map(|qq| single(qq, &y)).collect();
            for p in 0..=order - s {
                let mut acc = Q::zero();
                for qq in 0..=p {
                    if s + qq > order {
                        break;
                    }
                    acc += &table[s + qq][p - qq] * &singles[qq];
                }
                next[s][p] = acc;
            }
        }
        table = next;
    }
    table[0].clone()
}

/// `G(x; t) = ∏_i (1 − t x_i)^{−θ}` through `t^order`.
pub fn gen_g(x: &[Q], theta: &Theta, order: usize) -> FormalSeries<Q> {
    x.iter().fold(FormalSeries::one(SeriesVar::T, order), |acc, xi| {
        acc.mul(&FormalSeries::neg_binomial(SeriesVar::T, xi, theta.value(), order))
    })
}

/// `G*(x; u) = Σ_k g*_k(x) / (u(u−1)⋯(u−k+1))`, kept in the falling
/// factorial basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GStarSeries {
    #[serde(serialize_with = "ser_q_vec")]
    pub coefs: Vec<Q>,
}

fn ser_q_vec<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_q))
}

impl GStarSeries {
    pub fn order(&self) -> usize {
        self.coefs.len() - 1
    }

    /// Re-expands in powers of `w = 1/u` using
    /// `1/(u(u−1)⋯(u−k+1)) = w^k ∏_{j<k} (1 − j w)^{−1}`.
    pub fn to_inv_u(&self) -> FormalSeries<Q> {
        let order = self.order();
        let w = FormalSeries::<Q>::gen(SeriesVar::InvU, order);
        let mut basis = FormalSeries::one(SeriesVar::InvU, order);
        let mut acc = FormalSeries::new(SeriesVar::InvU, vec![], order);
        for (k, c) in self.coefs.iter().enumerate() {
            acc = acc.add(&basis.scale(c));
            let geom = FormalSeries::neg_binomial(SeriesVar::InvU, &q(k as i64), &Q::one(), order);
            basis = basis.mul(&w).mul(&geom);
        }
        acc
    }
}

/// `G*(x; u)` from the explicit `g*_k` through order `K`.
pub fn gen_gstar(x: &[Q], theta: &Theta, order: usize) -> GStarSeries {
    GStarSeries { coefs: (0..=order).map(|k| gstar_k(k, x, theta)).collect() }
}

/// Finite rational-function form of
/// `∏_i Γ(x_i−u−θi)/Γ(x_i−u−θi+θ) · Γ(−u−θi+θ)/Γ(−u−θi)` at integer `x`.
pub fn gstar_product_formula(x: &[i64], theta: &Theta) -> LinearProduct {
    let th = theta.value();
    let mut acc = LinearProduct::one();
    for (idx, &xi) in x.iter().enumerate() {
        let i = q(idx as i64 + 1);
        let prev = &i - q(1);
        if xi > 0 {
            for j in 0..xi {
                acc = acc.mul(&LinearProduct::factor(q(j) - th * &i, 1));
                acc = acc.mul(&LinearProduct::factor(q(j) - th * &prev, -1));
            }
        } else {
            for j in xi..0 {
                acc = acc.mul(&LinearProduct::factor(q(j) - th * &prev, 1));
                acc = acc.mul(&LinearProduct::factor(q(j) - th * &i, -1));
            }
        }
    }
    acc
}

/// Product formula at a rational point; every coordinate must be an integer.
pub fn gstar_product_formula_q(x: &[Q], theta: &Theta) -> Result<LinearProduct> {
    let ints = x
        .iter()
        .map(|v| {
            if v.is_integer() {
                i64::try_from(v.to_integer()).map_err(|_| Error::NonIntegerPoint(format_q(v)))
            } else {
                Err(Error::NonIntegerPoint(format_q(v)))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(gstar_product_formula(&ints, theta))
}

/// The product formula expanded in `1/u` through `order`.
pub fn gstar_product_series(x: &[i64], theta: &Theta, order: usize) -> FormalSeries<Q> {
    gstar_product_formula(x, theta)
        .to_inv_u_series(order)
        .expect("each coordinate contributes net degree zero")
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub holds: bool,
    /// `G*(λ⁺; u) G*(λ⁻; −u−θn−1)` equals the product formula at `λ` as a
    /// rational function (not only as a truncated series).
    pub rational_identity: bool,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
}

/// Checks `G*(λ; u) = G*(λ⁺; u) G*(λ⁻; −u−θn−1)` through `order`, with the
/// left side from the explicit `g*_k` and the right from the finite
/// rational-function forms.
pub fn gstar_signature_split(lambda: &Signature, theta: &Theta, order: usize) -> SplitReport {
    let n = lambda.len() as i64;
    let (plus, minus) = lambda.split();
    let lhs = gen_gstar(&to_q(lambda.parts()), theta, order).to_inv_u();
    let plus_rf = gstar_product_formula(&plus.padded(plus.len()), theta);
    let shift = -(theta.value() * q(n)) - q(1);
    let minus_rf = gstar_product_formula(&minus.padded(minus.len()), theta).substitute(true, &shift);
    let rhs_rf = plus_rf.mul(&minus_rf);
    let rhs = rhs_rf.to_inv_u_series(order).expect("degree zero");
    let rational_identity = rhs_rf == gstar_product_formula(lambda.parts(), theta);
    SplitReport {
        holds: lhs == rhs,
        rational_identity,
        lhs: lhs.to_json(),
        rhs: rhs.to_json(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvolutionReport {
    pub holds: bool,
    /// `k` values where the coefficient convolution failed.
    pub convolution_failures: Vec<usize>,
    /// `q` values where the ratio identity failed.
    pub ratio_failures: Vec<usize>,
}

/// Checks, for `k, q ≤ order`:
/// `g*_k(x) = Σ_{p+q=k} g*_p(x_1−q, …, x_{n−1}−q) g*_q(x_n)` and
/// `G*_{n−1}(x′−q; u−q)/G*_{n−1}(x′; u) = ∏_i (−u−θi+θ)_q/(−u−θi)_q
///  = u⋯(u−q+1) / ((u+θ(n−1))⋯(u+θ(n−1)−q+1))` with `x′ = (x_1..x_{n−1})`.
pub fn convolution_recursion_check(x: &[i64], theta: &Theta, order: usize) -> Result<ConvolutionReport> {
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidArgument("convolution check needs n >= 2".into()));
    }
    let xq = to_q(x);
    let (head, last) = xq.split_at(n - 1);
    let mut convolution_failures = Vec::new();
    for k in 0..=order {
        let lhs = gstar_k(k, &xq, theta);
        let rhs: Q = (0..=k)
            .map(|qq| {
                let shifted: Vec<Q> = head.iter().map(|v| v - q(qq as i64)).collect();
                gstar_k(k - qq, &shifted, theta) * gstar_k(qq, last, theta)
            })
            .sum();
        if lhs != rhs {
            convolution_failures.push(k);
        }
    }
    let th = theta.value();
    let xh = &x[..n - 1];
    let base = gstar_product_formula(xh, theta);
    let mut ratio_failures = Vec::new();
    for qq in 0..=order {
        let qi = qq as i64;
        let moved: Vec<i64> = xh.iter().map(|v| v - qi).collect();
        let lhs = gstar_product_formula(&moved, theta).substitute(false, &q(-qi)).div(&base)?;
        let mut middle = LinearProduct::one();
        for i in 1..n as i64 {
            for r in 0..qi {
                // (−u−θi+θ+r)/(−u−θi+r): the −1 signs cancel
                middle = middle.mul(&LinearProduct::factor(th - th * q(i) + q(r), 1));
                middle = middle.mul(&LinearProduct::factor(-(th * q(i)) + q(r), -1));
            }
        }
        let mut closed = LinearProduct::one();
        let top = th * q(n as i64 - 1);
        for r in 0..qi {
            closed = closed.mul(&LinearProduct::factor(q(r), 1));
            closed = closed.mul(&LinearProduct::factor(q(r) - &top, -1));
        }
        if lhs != middle || middle != closed {
            ratio_failures.push(qq);
        }
    }
    Ok(ConvolutionReport {
        holds: convolution_failures.is_empty() && ratio_failures.is_empty(),
        convolution_failures,
        ratio_failures,
    })
}

/// Top coefficient in `a` of `g*_k(a x)`, as a polynomial identity in `a`.
pub fn gstar_scaling_top(k: usize, x: &[Q], theta: &Theta) -> Q {
    let mut acc = Poly::zero(1);
    for (w, fs) in gstar_terms(k, x.len(), theta) {
        let term = fs.iter().fold(Poly::constant(1, w), |acc, &(v, s)| {
            let lin = Poly::var(1, 0).scale(&x[v]) - Poly::constant(1, q(s));
            &acc * &lin
        });
        acc = acc + term;
    }
    acc.coeff(&[k as i32])
}

pub(crate) fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Memoized `g*_k` evaluations keyed by point, for repeated sweeps.
#[derive(Default)]
pub struct GStarCache {
    map: HashMap<(Vec<i64>, usize), Q>,
}

impl GStarCache {
    pub fn get(&mut self, k: usize, x: &[i64], theta: &Theta) -> Q {
        self.map
            .entry((x.to_vec(), k))
            .or_insert_with(|| gstar_k(k, &to_q(x), theta))
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jack::{q_factor, JackEngine};
    use crate::partition::Partition;
    use crate::scalar::qr;
    use crate::shifted::ShiftedEngine;

    fn th(a: i64, b: i64) -> Theta {
        Theta::from_ratio(a, b).unwrap()
    }

    #[test]
    fn low_order_closed_forms() {
        let t = th(2, 5);
        let theta = t.value().clone();
        let lam = [q(3), q(1), q(-2)];
        assert_eq!(gstar_k(0, &lam, &t), q(1));
        // g*_1 = θ Σλ_i (weight (θ)_1/1!)
        assert_eq!(gstar_k(1, &lam, &t), &theta * q(2));
        // g*_2 = θ² Σ_{i<j}(λ_i−1)λ_j + θ(1+θ)/2 Σ(λ_i−1)λ_i
        let mut pair = Q::zero();
        for i in 0..3 {
            for j in i + 1..3 {
                pair += (&lam[i] - q(1)) * &lam[j];
            }
        }
        let diag: Q = lam.iter().map(|l| (l - q(1)) * l).sum();
        let expect = &theta * &theta * pair + &theta * (q(1) + &theta) / q(2) * diag;
        assert_eq!(gstar_k(2, &lam, &t), expect);
    }

    #[test]
    fn g1_is_plain_sum_at_theta_one() {
        assert_eq!(gstar_k(1, &[q(4), q(2), q(-1)], &Theta::one()), q(5));
    }

    #[test]
    fn g2_at_one_one_vanishes() {
        // (2) ⊄ (1,1)
        assert_eq!(gstar_k(1, &[q(1), q(1)], &Theta::one()), q(2));
        assert_eq!(gstar_k(2, &[q(1), q(1)], &Theta::one()), q(0));
    }

    #[test]
    fn explicit_sum_is_qstar_of_one_row() {
        for t in [th(1, 2), th(1, 1), th(2, 1)] {
            let mut e = ShiftedEngine::new(t.clone());
            for n in 1..=3 {
                for k in 0..=4 {
                    let row = Partition::new(vec![k]).unwrap();
                    let qs = e.qstar(&row, n).unwrap();
                    assert_eq!(gstar_poly(k, n, &t), qs, "k={k} n={n} θ={t}");
                }
            }
        }
    }

    #[test]
    fn fast_convolution_matches_explicit() {
        let t = th(3, 4);
        let x = vec![q(5), qr(1, 2), q(0), q(-3)];
        let fast = gstar_all_fast(5, &x, &t);
        for (k, v) in fast.iter().enumerate() {
            assert_eq!(v, &gstar_k(k, &x, &t), "k = {k}");
        }
    }

    #[test]
    fn gen_g_examples() {
        let t = th(2, 7);
        let theta = t.value().clone();
        let s = gen_g(&[q(1)], &t, 2);
        assert_eq!(s.coefs(), &[q(1), theta.clone(), &theta * (&theta + q(1)) / q(2)]);
        assert_eq!(gen_g(&[], &t, 3), FormalSeries::one(SeriesVar::T, 3));
        let s = gen_g(&[q(1), q(1)], &Theta::one(), 2);
        assert_eq!(s.coefs(), &[q(1), q(2), q(3)]);
    }

    #[test]
    fn gen_g_coefficients_are_g_k() {
        let t = th(1, 3);
        let mut e = JackEngine::new(t.clone());
        let x = [qr(1, 2), q(2), q(-1)];
        let s = gen_g(&x, &t, 4);
        for k in 0..=4 {
            let g = e.g_k(k, 3).to_poly();
            assert_eq!(s.coef(k), g.eval(&x), "k = {k}");
        }
    }

    #[test]
    fn gstar_at_zero_is_one() {
        let t = th(1, 2);
        let s = gen_gstar(&[q(0), q(0), q(0)], &t, 4);
        assert_eq!(s.to_inv_u(), FormalSeries::one(SeriesVar::InvU, 4));
        assert_eq!(gstar_product_formula(&[0, 0, 0], &t), LinearProduct::one());
    }

    #[test]
    fn one_variable_product_formula() {
        // x = (1): (u + θ)/u = 1 + θ/u
        let t = th(3, 5);
        let s = gstar_product_series(&[1], &t, 3);
        assert_eq!(s.coefs(), &[q(1), t.value().clone(), q(0), q(0)]);
        assert_eq!(gen_gstar(&[q(1)], &t, 3).to_inv_u(), s);
    }

    #[test]
    fn gauss_summation_one_variable() {
        // Σ_k (θ)_k/k! x↓k / u↓k against the Γ-ratio closed form
        for t in [th(1, 2), th(2, 1), th(5, 3)] {
            for m in -3..=4i64 {
                let lhs = gen_gstar(&[q(m)], &t, 6).to_inv_u();
                let rhs = gstar_product_series(&[m], &t, 6);
                assert_eq!(lhs, rhs, "x = {m}, θ = {t}");
            }
        }
    }

    #[test]
    fn product_formula_rejects_fractions() {
        assert!(gstar_product_formula_q(&[qr(1, 2)], &Theta::one()).is_err());
        assert!(gstar_product_formula_q(&[q(2), q(-1)], &Theta::one()).is_ok());
    }

    #[test]
    fn split_examples() {
        let r = gstar_signature_split(&Signature::new(vec![2, 1, 0]).unwrap(), &th(1, 2), 4);
        assert!(r.holds && r.rational_identity);
        let r = gstar_signature_split(&Signature::new(vec![1, -1]).unwrap(), &Theta::one(), 4);
        assert!(r.holds && r.rational_identity, "{r:?}");
        let r = gstar_signature_split(&Signature::new(vec![2, 0, -1]).unwrap(), &th(1, 2), 4);
        assert!(r.holds && r.rational_identity, "{r:?}");
    }

    #[test]
    fn convolution_examples() {
        let r = convolution_recursion_check(&[2, 1], &Theta::one(), 2).unwrap();
        assert!(r.holds, "{r:?}");
        let r = convolution_recursion_check(&[3, 1, 0], &th(1, 2), 3).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(convolution_recursion_check(&[3], &Theta::one(), 2).is_err());
    }

    #[test]
    fn scaling_limit_top_coefficient() {
        let t = th(2, 3);
        let mut e = JackEngine::new(t.clone());
        let x = [qr(1, 2), q(3), q(-2)];
        for k in 0..=4 {
            let g = e.g_k(k, 3).to_poly().eval(&x);
            assert_eq!(gstar_scaling_top(k, &x, &t), g, "k = {k}");
        }
    }

    #[test]
    fn qfactor_of_one_row() {
        // H′/H for (k) is (θ)_k / k!
        let t = th(3, 2);
        for k in 0..5 {
            let row = Partition::new(vec![k]).unwrap();
            assert_eq!(q_factor(&row, &t), rising(t.value(), k) / factorial(k));
        }
    }
}
