//! Symmetric (Laurent) polynomials in the monomial-symmetric basis.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{format_q, parse_q, to_f64, Q};

/// `Σ_ν c_ν m_ν(x_1, …, x_n)`, keys are weakly decreasing length-`n` vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFun {
    n: usize,
    terms: BTreeMap<Vec<i64>, Q>,
}

impl SymFun {
    pub fn zero(n: usize) -> Self {
        SymFun { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        let mut f = SymFun::zero(n);
        f.add_term(vec![0; n], Q::from_integer(1.into()));
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[i64]) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c m_key`; panics on an unsorted or wrong-length key.
    pub fn add_term(&mut self, key: Vec<i64>, c: Q) {
        assert_eq!(key.len(), self.n, "key length must equal n");
        assert!(key.windows(2).all(|w| w[0] >= w[1]), "key must be weakly decreasing");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> SymFun {
        let mut out = SymFun::zero(self.n);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Multiplies by `(x_1 ⋯ x_n)^c`.
    pub fn shift(&self, c: i64) -> SymFun {
        SymFun {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().map(|x| x + c).collect(), v.clone()))
                .collect(),
        }
    }

    /// The top key in reverse-lexicographic order (largest first).
    pub fn leading(&self) -> Option<(&Vec<i64>, &Q)> {
        self.terms.iter().next_back()
    }

    /// Expands every monomial orbit into an ordinary Laurent polynomial.
    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero(self.n);
        for (k, c) in &self.terms {
            for perm in distinct_permutations(k) {
                p.add_term(perm.iter().map(|&x| x as i32).collect(), c.clone());
            }
        }
        p
    }

    /// Reads the sorted-exponent coefficients off a symmetric polynomial.
    pub fn from_poly(p: &Poly) -> Result<SymFun> {
        let mut f = SymFun::zero(p.nvars());
        for (e, c) in p.terms() {
            if e.windows(2).all(|w| w[0] >= w[1]) {
                f.add_term(e.iter().map(|&x| x as i64).collect(), c.clone());
            }
        }
        if f.to_poly() != *p {
            return Err(Error::InvalidArgument("polynomial is not symmetric".into()));
        }
        Ok(f)
    }

    /// Restricts to `m ≤ n` variables by setting the rest to zero.
    pub fn restrict(&self, m: usize) -> SymFun {
        let mut out = SymFun::zero(m);
        for (k, c) in &self.terms {
            if k[m..].iter().all(|&x| x == 0) {
                out.add_term(k[..m].to_vec(), c.clone());
            }
        }
        out
    }

    pub fn eval_complex(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.n);
        let mut total = Complex64::zero();
        for (k, c) in &self.terms {
            let orbit: Complex64 = distinct_permutations(k)
                .iter()
                .map(|perm| perm.iter().zip(z).map(|(&e, zi)| zi.powi(e as i32)).product::<Complex64>())
                .sum();
            total += orbit * to_f64(c);
        }
        total
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| TermJson { exp: k.clone(), coef: format_q(c) })
            .collect();
        serde_json::to_value(SymFunJson { n: self.n, terms }).expect("symfun serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SymFun> {
        let raw: SymFunJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut f = SymFun::zero(raw.n);
        for t in raw.terms {
            if t.exp.len() != raw.n || t.exp.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Parse(format!("bad exponent key {:?}", t.exp)));
            }
            f.add_term(t.exp, parse_q(&t.coef)?);
        }
        Ok(f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i64>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct SymFunJson {
    n: usize,
    terms: Vec<TermJson>,
}

/// Distinct permutations of a multiset, in lexicographic order.
pub fn distinct_permutations(v: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        // next_permutation
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
