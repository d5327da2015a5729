//! Sparse multivariate Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_q, parse_q, q, to_f64, Q};

pub type Exponent = Vec<i32>;

/// Polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Q::one())
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Q::one())
    }

    pub fn monomial(exp: Exponent, c: Q) -> Self {
        let mut p = Poly::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// `x_i - c`.
    pub fn linear(nvars: usize, i: usize, c: &Q) -> Self {
        let mut p = Poly::var(nvars, i);
        p.add_term(vec![0; nvars], -c.clone());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, c: Q) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift_exponents(&self, shift: &[i32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_exponent(&self) -> i32 {
        self.terms.keys().flat_map(|e| e.iter().copied()).min().unwrap_or(0)
    }

    pub fn homogeneous_part(&self, d: i32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<i32>() == d)
                .map(|(e, v)| (e.clone(), v.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate(&self, d: i32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<i32>() <= d)
                .map(|(e, v)| (e.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn mul_truncated(&self, other: &Poly, d: i32) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            let d1: i32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                if d1 + e2.iter().sum::<i32>() > d {
                    continue;
                }
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.nvars);
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k >= 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                } else {
                    t /= num_traits::pow(xi.clone(), (-k) as usize);
                }
            }
            total += t;
        }
        total
    }

    pub fn eval_complex(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = Complex64::new(to_f64(c), 0.0);
                for (zi, &k) in z.iter().zip(e) {
                    t *= zi.powi(k);
                }
                t
            })
            .sum()
    }

    /// Substitutes `x_i ↦ images[i]`. Requires nonnegative exponents.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                assert!(k >= 0, "substitution into a Laurent monomial");
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            out = out + t;
        }
        out
    }

    /// Embeds into `total` variables, placing variable `i` at `offset + i`.
    pub fn embed(&self, offset: usize, total: usize) -> Poly {
        assert!(offset + self.nvars <= total);
        Poly {
            nvars: total,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = vec![0; total];
                    ne[offset..offset + self.nvars].copy_from_slice(e);
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// Sets the last variable to zero and drops it.
    pub fn drop_last_at_zero(&self) -> Poly {
        assert!(self.nvars > 0);
        let m = self.nvars - 1;
        let mut out = Poly::zero(m);
        for (e, c) in &self.terms {
            if e[m] == 0 {
                out.add_term(e[..m].to_vec(), c.clone());
            }
        }
        out
    }

    /// Sets variables `k..` to one and keeps the first `k`.
    pub fn restrict_to_first(&self, k: usize) -> Poly {
        let mut out = Poly::zero(k);
        for (e, c) in &self.terms {
            out.add_term(e[..k].to_vec(), c.clone());
        }
        out
    }

    /// `{"nvars": n, "terms": [{"exp": [...], "coef": "p/q"}, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| PolyTermJson { exp: e.clone(), coef: format_q(c) })
            .collect();
        serde_json::to_value(PolyJson { nvars: self.nvars, terms }).expect("poly serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Poly> {
        let raw: PolyJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut p = Poly::zero(raw.nvars);
        for t in raw.terms {
            if t.exp.len() != raw.nvars {
                return Err(Error::Parse(format!("exponent {:?} has the wrong length", t.exp)));
            }
            p.add_term(t.exp, parse_q(&t.coef)?);
        }
        Ok(p)
    }

    /// Sum of all coefficients, i.e. the value at `(1, …, 1)`.
    pub fn coefficient_sum(&self) -> Q {
        self.terms.values().sum()
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.clone() + rhs.clone()
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.clone() - rhs.clone()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", format_q(c))?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyTermJson {
    exp: Vec<i32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    terms: Vec<PolyTermJson>,
}

/// `(1 + t)^{c}` for integer `c`, as a truncated series in one variable.
pub fn one_plus_t_pow(c: i64, d: i32) -> Vec<Q> {
    let top = q(c);
    (0..=d.max(0) as usize).map(|r| crate::scalar::binomial_q(&top, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.coeff(&[1, 1]), q(2));
        assert_eq!(sq.len(), 3);
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.eval(&[q(1), qr(1, 2)]), qr(9, 4));
        assert_eq!(sq.homogeneous_part(2), sq);
        assert_eq!(sq.truncate(1), Poly::zero(2));
    }

    #[test]
    fn substitution_and_embedding() {
        let x = Poly::var(1, 0);
        let p = &x * &x;
        let img = Poly::linear(1, 0, &q(-1)); // x + 1
        let r = p.substitute(&[img]);
        assert_eq!(r.coeff(&[1]), q(2));
        assert_eq!(r.coeff(&[0]), q(1));
        let e = r.embed(1, 3);
        assert_eq!(e.coeff(&[0, 2, 0]), q(1));
        assert_eq!(e.drop_last_at_zero().nvars(), 2);
    }

    #[test]
    fn laurent_eval() {
        let p = Poly::monomial(vec![-1], q(3));
        assert_eq!(p.eval(&[q(2)]), qr(3, 2));
        let z = Complex64::new(0.0, 1.0);
        assert!((p.eval_complex(&[z]) - Complex64::new(0.0, -3.0)).norm() < 1e-15);
    }

    #[test]
    fn negative_binomial_series() {
        assert_eq!(one_plus_t_pow(-1, 3), vec![q(1), q(-1), q(1), q(-1)]);
        assert_eq!(one_plus_t_pow(2, 3), vec![q(1), q(2), q(1), q(0)]);
    }
}
