//! Scalar types: exact rationals and the small numeric trait shared by the
//! exact and floating code paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator/denominator may each overflow f64 while the ratio is fine
        let n = x.numer().bits() as i64;
        let d = x.denom().bits() as i64;
        let shift = (n.max(d) - 900).max(0) as u64;
        let num = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let den = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

/// Parses `"p/q"`, `"p"`, or a finite decimal like `"0.25"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let num: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let v = Q::new(num, den);
        return Ok(if neg { -v } else { v });
    }
    s.parse::<Q>()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rising factorial `(t)_m = t (t+1) ... (t+m-1)`.
pub fn rising<T: Scalar>(t: &T, m: usize) -> T {
    let mut acc = T::one();
    for r in 0..m {
        acc = acc * (t.clone() + T::from_i64(r as i64));
    }
    acc
}

pub fn factorial(m: usize) -> Q {
    (1..=m as i64).fold(Q::one(), |acc, k| acc * q(k))
}

pub fn binomial_q(top: &Q, k: usize) -> Q {
    let mut acc = Q::one();
    for r in 0..k {
        acc = acc * (top - q(r as i64)) / q(r as i64 + 1);
    }
    acc
}

/// Field operations needed by the generic series code.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;
    fn abs_f64(&self) -> f64;
    fn as_f64(&self) -> f64;
}

impl Scalar for Q {
    fn from_i64(n: i64) -> Self {
        q(n)
    }
    fn abs_f64(&self) -> f64 {
        to_f64(&self.abs())
    }
    fn as_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}
