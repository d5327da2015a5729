//! Truncated formal power series in one indeterminate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_q, parse_q, Scalar, Q};

/// Which indeterminate a series is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesVar {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "1/u")]
    InvU,
}

impl fmt::Display for SeriesVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesVar::T => "t",
            SeriesVar::InvU => "1/u",
        })
    }
}

/// `c_0 + c_1 s + … + c_K s^K + O(s^{K+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<T> {
    var: SeriesVar,
    coefs: Vec<T>,
}

impl<T: Scalar> FormalSeries<T> {
    /// Pads or truncates `coefs` to exactly `order + 1` entries.
    pub fn new(var: SeriesVar, mut coefs: Vec<T>, order: usize) -> Self {
        coefs.resize(order + 1, T::zero());
        FormalSeries { var, coefs }
    }

    pub fn constant(var: SeriesVar, c: T, order: usize) -> Self {
        FormalSeries::new(var, vec![c], order)
    }

    pub fn one(var: SeriesVar, order: usize) -> Self {
        FormalSeries::constant(var, T::one(), order)
    }

    /// The indeterminate itself (`order ≥ 1`), or zero at order 0.
    pub fn gen(var: SeriesVar, order: usize) -> Self {
        FormalSeries::new(var, vec![T::zero(), T::one()], order)
    }

    pub fn var(&self) -> SeriesVar {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coefs.len() - 1
    }

    pub fn coefs(&self) -> &[T] {
        &self.coefs
    }

    pub fn coef(&self, k: usize) -> T {
        self.coefs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let coefs = (0..=k).map(|i| self.coefs[i].clone() + other.coefs[i].clone()).collect();
        FormalSeries { var: self.var, coefs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&(-T::one())))
    }

    pub fn scale(&self, c: &T) -> Self {
        FormalSeries {
            var: self.var,
            coefs: self.coefs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let mut coefs = vec![T::zero(); k + 1];
        for (i, a) in self.coefs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefs.iter().enumerate().take(k + 1 - i) {
                coefs[i + j] = coefs[i + j].clone() + a.clone() * b.clone();
            }
        }
        FormalSeries { var: self.var, coefs }
    }

    /// Multiplicative inverse; requires `c_0 ≠ 0`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coefs[0].clone();
        if c0.is_zero() {
            return Err(Error::InvalidArgument("series inverse needs c0 != 0".into()));
        }
        let k = self.order();
        let mut inv = vec![T::zero(); k + 1];
        inv[0] = T::one() / c0.clone();
        for n in 1..=k {
            let mut s = T::zero();
            for i in 1..=n {
                s = s + self.coefs[i].clone() * inv[n - i].clone();
            }
            inv[n] = -s / c0.clone();
        }
        Ok(FormalSeries { var: self.var, coefs: inv })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    fn derivative(&self) -> Vec<T> {
        (1..self.coefs.len())
            .map(|i| self.coefs[i].clone() * T::from_i64(i as i64))
            .collect()
    }

    /// Logarithm; requires `c_0 = 1`.
    pub fn ln(&self) -> Result<Self> {
        if self.coefs[0] != T::one() {
            return Err(Error::InvalidArgument("series log needs c0 = 1".into()));
        }
        let k = self.order();
        let d = FormalSeries::new(self.var, self.derivative(), k);
        let q = d.mul(&self.inverse()?);
        let mut coefs = vec![T::zero(); k + 1];
        for i in 1..=k {
            coefs[i] = q.coefs[i - 1].clone() / T::from_i64(i as i64);
        }
        Ok(FormalSeries { var: self.var, coefs })
    }

    /// Exponential; requires `c_0 = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coefs[0].is_zero() {
            return Err(Error::InvalidArgument("series exp needs c0 = 0".into()));
        }
        let k = self.order();
        let mut e = vec![T::zero(); k + 1];
        e[0] = T::one();
        // n e_n = Σ_{i=1}^n i a_i e_{n-i}
        for n in 1..=k {
            let mut s = T::zero();
            for i in 1..=n {
                s = s + T::from_i64(i as i64) * self.coefs[i].clone() * e[n - i].clone();
            }
            e[n] = s / T::from_i64(n as i64);
        }
        Ok(FormalSeries { var: self.var, coefs: e })
    }

    /// `self^e` for arbitrary exponent `e`; requires `c_0 = 1`.
    pub fn powf(&self, e: &T) -> Result<Self> {
        self.ln()?.scale(e).exp()
    }

    /// `self(inner(s))`; requires `inner` to have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coefs[0].is_zero() {
            return Err(Error::InvalidArgument("composition needs inner c0 = 0".into()));
        }
        let k = self.order().min(inner.order());
        let mut out = FormalSeries::new(inner.var, vec![], k);
        let mut power = FormalSeries::one(inner.var, k);
        for i in 0..=k {
            out = out.add(&power.scale(&self.coefs[i]));
            power = power.mul(inner);
        }
        Ok(out)
    }

    /// `(1 - a s)^{-e}` as the binomial series `Σ (e)_r/r! a^r s^r`.
    pub fn neg_binomial(var: SeriesVar, a: &T, e: &T, order: usize) -> Self {
        let mut coefs = Vec::with_capacity(order + 1);
        let mut c = T::one();
        for r in 0..=order {
            coefs.push(c.clone());
            c = c * (e.clone() + T::from_i64(r as i64)) * a.clone() / T::from_i64(r as i64 + 1);
        }
        FormalSeries { var, coefs }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let k = self.order().min(other.order());
        (0..=k)
            .map(|i| (self.coefs[i].clone() - other.coefs[i].clone()).abs_f64())
            .fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    var: SeriesVar,
    #[serde(rename = "K")]
    k: usize,
    coefs: Vec<String>,
}

impl FormalSeries<Q> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SeriesJson {
            var: self.var,
            k: self.order(),
            coefs: self.coefs.iter().map(format_q).collect(),
        })
        .expect("series serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: SeriesJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.coefs.len() != raw.k + 1 {
            return Err(Error::Parse(format!(
                "series with K = {} needs {} coefficients, got {}",
                raw.k,
                raw.k + 1,
                raw.coefs.len()
            )));
        }
        let coefs = raw.coefs.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
        Ok(FormalSeries::new(raw.var, coefs, raw.k))
    }
}

impl fmt::Display for FormalSeries<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coefs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "{}", format_q(c))?,
                1 => write!(f, "({})*{}", format_q(c), self.var)?,
                _ => write!(f, "({})*({})^{}", format_q(c), self.var, i)?,
            }
        }
        write!(f, " + O(({})^{})", self.var, self.order() + 1)
    }
}
