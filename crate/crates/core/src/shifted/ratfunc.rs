//! Rational functions of `u` stored as `c ∏ (u − a)^{e_a}`, enough to hold
//! the finite forms of the Γ-ratios in the `G*` product formula exactly.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{q, Q};
use crate::series::{FormalSeries, SeriesVar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProduct {
    constant: Q,
    /// root `a` ↦ exponent of `(u − a)`; zero exponents are never stored
    factors: BTreeMap<Q, i64>,
}

impl LinearProduct {
    pub fn constant(c: Q) -> Self {
        LinearProduct { constant: c, factors: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LinearProduct::constant(Q::one())
    }

    /// `(u − a)^e`.
    pub fn factor(a: Q, e: i64) -> Self {
        let mut p = LinearProduct::one();
        p.push(a, e);
        p
    }

    pub fn constant_factor(&self) -> &Q {
        &self.constant
    }

    pub fn factors(&self) -> &BTreeMap<Q, i64> {
        &self.factors
    }

    /// Net degree `Σ e_a` in `u`.
    pub fn degree(&self) -> i64 {
        self.factors.values().sum()
    }

    fn push(&mut self, a: Q, e: i64) {
        if e == 0 {
            return;
        }
        let v = self.factors.entry(a.clone()).or_insert(0);
        *v += e;
        if *v == 0 {
            self.factors.remove(&a);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant *= &other.constant;
        for (a, &e) in &other.factors {
            out.push(a.clone(), e);
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.constant.is_zero() {
            return Err(Error::InvalidArgument("zero rational function".into()));
        }
        Ok(LinearProduct {
            constant: Q::one() / &self.constant,
            factors: self.factors.iter().map(|(a, e)| (a.clone(), -e)).collect(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Substitutes `u ↦ s u + c` with `s = ±1`.
    pub fn substitute(&self, sign_negative: bool, c: &Q) -> Self {
        let mut out = LinearProduct::constant(self.constant.clone());
        for (a, &e) in &self.factors {
            if sign_negative {
                // −u + c − a = −(u − (c − a))
                if e % 2 != 0 {
                    out.constant = -out.constant;
                }
                out.push(c - a, e);
            } else {
                out.push(a - c, e);
            }
        }
        out
    }

    pub fn eval(&self, u: &Q) -> Result<Q> {
        let mut acc = self.constant.clone();
        for (a, &e) in &self.factors {
            let base = u - a;
            if base.is_zero() {
                if e < 0 {
                    return Err(Error::InvalidArgument("pole".into()));
                }
                return Ok(Q::zero());
            }
            acc *= if e >= 0 {
                num_traits::pow(base, e as usize)
            } else {
                Q::one() / num_traits::pow(base, (-e) as usize)
            };
        }
        Ok(acc)
    }

    /// Expansion in `w = 1/u` through `w^order`; requires net degree zero,
    /// using `(u − a) = u (1 − a w)`.
    pub fn to_inv_u_series(&self, order: usize) -> Result<FormalSeries<Q>> {
        if self.degree() != 0 {
            return Err(Error::InvalidArgument(format!(
                "net degree {} is not a power series in 1/u",
                self.degree()
            )));
        }
        let mut acc = FormalSeries::constant(SeriesVar::InvU, self.constant.clone(), order);
        for (a, &e) in &self.factors {
            let f = if e > 0 {
                let lin = FormalSeries::new(SeriesVar::InvU, vec![Q::one(), -a.clone()], order);
                (0..e).fold(FormalSeries::one(SeriesVar::InvU, order), |p, _| p.mul(&lin))
            } else {
                FormalSeries::neg_binomial(SeriesVar::InvU, a, &q(-e), order)
            };
            acc = acc.mul(&f);
        }
        Ok(acc)
    }
}
