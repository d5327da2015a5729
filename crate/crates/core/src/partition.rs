//! Partitions, signatures and the combinatorial scalars attached to Young
//! diagrams.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_q, parse_q, q, Q};

/// A partition with trailing zeros stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts.iter().map(|&p| p as i64).collect()));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let cols = (1..=width)
            .map(|j| self.0.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition(cols)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Cells `(i, j)`, 1-based, row by row.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Cell { row: i + 1, col: j }))
    }

    /// Parts padded with zeros to length `n` (`n ≥ ℓ(λ)` is the caller's job).
    pub fn padded(&self, n: usize) -> Vec<i64> {
        (0..n).map(|i| self.part(i) as i64).collect()
    }

    pub fn to_signature(&self, n: usize) -> Result<Signature> {
        if self.len() > n {
            return Err(Error::InvalidArgument(format!(
                "partition {self} does not fit in {n} parts"
            )));
        }
        Signature::new(self.padded(n))
    }

    /// All partitions of `d` with at most `max_len` parts, in decreasing
    /// lexicographic order.
    pub fn all_of_weight(d: usize, max_len: usize) -> Vec<Partition> {
        fn rec(rem: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=max_part.min(rem)).rev() {
                cur.push(p);
                rec(rem - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, max_len, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions with weight at most `d` and at most `max_len` parts,
    /// graded (by weight), decreasing lexicographic within each weight.
    pub fn all_up_to(d: usize, max_len: usize) -> Vec<Partition> {
        (0..=d).flat_map(|w| Partition::all_of_weight(w, max_len)).collect()
    }

    /// Dominance order `self ≥ other` (same weight assumed by callers).
    pub fn dominates(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        if v.iter().any(|&x| x < 0) {
            return Err(Error::NegativePart(v));
        }
        if v.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(v));
        }
        Partition::new(v.into_iter().map(|x| x as usize).collect())
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Self {
        p.0.into_iter().map(|x| x as i64).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, self.0.iter().map(|x| *x as i64))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::try_from(parse_bracketed(s)?)
    }
}

/// A weakly decreasing integer vector of explicit length `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Signature(Vec<i64>);

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptySignature);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        Ok(Signature(parts))
    }

    pub fn zeros(n: usize) -> Self {
        Signature(vec![0; n.max(1)])
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    /// The length `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn first(&self) -> i64 {
        self.0[0]
    }

    pub fn last(&self) -> i64 {
        *self.0.last().unwrap()
    }

    pub fn shifted(&self, c: i64) -> Signature {
        Signature(self.0.iter().map(|x| x + c).collect())
    }

    pub fn is_partition(&self) -> bool {
        self.last() >= 0
    }

    pub fn to_partition(&self) -> Result<Partition> {
        Partition::try_from(self.0.clone())
    }

    /// `(λ⁺, λ⁻)`: the positive parts, and the negated reversed negative tail.
    pub fn split(&self) -> (Partition, Partition) {
        let plus = self.0.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect();
        let minus = self.0.iter().rev().filter(|&&x| x < 0).map(|&x| (-x) as usize).collect();
        (Partition(plus), Partition(minus))
    }

    /// Inverse of [`Signature::split`] for a given length.
    pub fn from_split(plus: &Partition, minus: &Partition, n: usize) -> Result<Signature> {
        if plus.len() + minus.len() > n {
            return Err(Error::InvalidArgument(format!(
                "{plus} and {minus} do not fit in length {n}"
            )));
        }
        let mut v = plus.padded(n - minus.len());
        v.extend(minus.parts().iter().rev().map(|&x| -(x as i64)));
        Signature::new(v)
    }

    /// `𝔑(λ)² = Σλ_i² + θ(Σλ_i)² + θ(λ, 2ρ)`.
    pub fn norm_sq(&self, theta: &Theta) -> Q {
        norm_sq_of(&self.0.iter().map(|&x| q(x)).collect::<Vec<_>>(), theta.value())
    }

    /// `(λ, 2ρ) = Σ_{i<j} (λ_i − λ_j)`.
    pub fn rho_pairing(&self) -> i64 {
        let n = self.len() as i64;
        self.0
            .iter()
            .enumerate()
            .map(|(i, &x)| x * (n - 1 - 2 * i as i64))
            .sum()
    }

    /// All signatures of length `n` with entries in `[lo, hi]`.
    pub fn all_in_box(n: usize, lo: i64, hi: i64) -> Vec<Signature> {
        fn rec(n: usize, lo: i64, top: i64, cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
            if cur.len() == n {
                out.push(Signature(cur.clone()));
                return;
            }
            for v in (lo..=top).rev() {
                cur.push(v);
                rec(n, lo, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 && lo <= hi {
            rec(n, lo, hi, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// `𝔑²` of a real (here rational) weakly decreasing vector.
pub fn norm_sq_of(lambda: &[Q], theta: &Q) -> Q {
    let n = lambda.len() as i64;
    let sum_sq: Q = lambda.iter().map(|x| x * x).sum();
    let sum: Q = lambda.iter().sum();
    let rho: Q = lambda
        .iter()
        .enumerate()
        .map(|(i, x)| x * q(n - 1 - 2 * i as i64))
        .sum();
    sum_sq + theta * &sum * &sum + theta * rho
}

impl TryFrom<Vec<i64>> for Signature {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Signature::new(v)
    }
}

impl From<Signature> for Vec<i64> {
    fn from(s: Signature) -> Self {
        s.0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, self.0.iter().copied())
    }
}

impl FromStr for Signature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Signature::new(parse_bracketed(s)?)
    }
}

fn write_bracketed(f: &mut fmt::Formatter<'_>, it: impl Iterator<Item = i64>) -> fmt::Result {
    let parts: Vec<String> = it.map(|x| x.to_string()).collect();
    write!(f, "[{}]", parts.join(","))
}

/// Parses `"[3,1,-2]"`; brackets optional, whitespace ignored.
pub fn parse_bracketed(s: &str) -> Result<Vec<i64>> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in {s:?}")))
        })
        .collect()
}

/// A box `(row, col)` of a Young diagram, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// Arm, arm-colength, leg and leg-colength of a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellStats {
    pub arm: usize,
    pub coarm: usize,
    pub leg: usize,
    pub coleg: usize,
}

pub fn cell_stats(lambda: &Partition, s: Cell) -> Result<CellStats> {
    if s.row == 0 || s.col == 0 || s.col > lambda.part(s.row - 1) {
        return Err(Error::CellOutsideDiagram {
            row: s.row,
            col: s.col,
            partition: lambda.to_string(),
        });
    }
    let col_len = lambda.parts().iter().take_while(|&&p| p >= s.col).count();
    Ok(CellStats {
        arm: lambda.part(s.row - 1) - s.col,
        coarm: s.col - 1,
        leg: col_len - s.row,
        coleg: s.row - 1,
    })
}

fn stats_iter(lambda: &Partition) -> impl Iterator<Item = CellStats> + '_ {
    let conj = lambda.conjugate();
    lambda.cells().map(move |s| CellStats {
        arm: lambda.part(s.row - 1) - s.col,
        coarm: s.col - 1,
        leg: conj.part(s.col - 1) - s.row,
        coleg: s.row - 1,
    })
}

/// The coupling parameter `θ > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Theta(Q);

impl Theta {
    pub fn new(value: Q) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::NonPositiveTheta(format_q(&value)));
        }
        Ok(Theta(value))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::NonPositiveTheta(format!("{num}/0")));
        }
        Theta::new(Q::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn one() -> Self {
        Theta(Q::one())
    }

    pub fn value(&self) -> &Q {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        crate::scalar::to_f64(&self.0)
    }
}

impl FromStr for Theta {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theta::new(parse_q(s)?)
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_q(&self.0))
    }
}

/// `H(λ) = ∏_{s∈λ} (a(s) + θ l(s) + 1)`.
pub fn hook_h(lambda: &Partition, theta: &Theta) -> Q {
    stats_iter(lambda)
        .map(|c| q(c.arm as i64 + 1) + theta.value() * q(c.leg as i64))
        .product()
}

/// `H′(λ) = ∏_{s∈λ} (a(s) + θ l(s) + θ)`.
pub fn hook_hprime(lambda: &Partition, theta: &Theta) -> Q {
    stats_iter(lambda)
        .map(|c| q(c.arm as i64) + theta.value() * q(c.leg as i64 + 1))
        .product()
}

/// Generalized shifted factorial `(t)_μ = ∏_{s∈μ} (t + a′(s) − θ l′(s))`.
pub fn shifted_factorial(t: &Q, mu: &Partition, theta: &Theta) -> Q {
    mu.cells()
        .map(|s| t + q(s.col as i64 - 1) - theta.value() * q(s.row as i64 - 1))
        .product()
}

/// `(t)_μ` in floating point.
pub fn shifted_factorial_f64(t: f64, mu: &Partition, theta: f64) -> f64 {
    mu.cells()
        .map(|s| t + (s.col - 1) as f64 - theta * (s.row - 1) as f64)
        .product()
}

/// `z_λ = ∏_k k^{m_k} m_k!`.
pub fn z_lambda(lambda: &Partition) -> BigInt {
    let mut acc = BigInt::one();
    let parts = lambda.parts();
    let mut i = 0;
    while i < parts.len() {
        let k = parts[i];
        let m = parts[i..].iter().take_while(|&&p| p == k).count();
        for r in 1..=m {
            acc *= BigInt::from(k) * BigInt::from(r);
        }
        i += m;
    }
    acc
}

pub fn z_lambda_q(lambda: &Partition) -> Q {
    Q::from_integer(z_lambda(lambda))
}

/// `(P_λ, P_λ) = H(λ) / H′(λ)`.
pub fn jack_norm(lambda: &Partition, theta: &Theta) -> Q {
    let hp = hook_hprime(lambda, theta);
    debug_assert!(!hp.is_zero());
    hook_h(lambda, theta) / hp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn brute_conjugate(l: &Partition) -> Partition {
        let mut cols = vec![0usize; l.part(0)];
        for s in l.cells() {
            cols[s.col - 1] += 1;
        }
        Partition::new(cols).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[]).conjugate(), p(&[]));
        let l = p(&[5, 5, 2]);
        assert_eq!(brute_conjugate(&l), p(&[3, 3, 2, 2, 2]));
        assert_eq!(l.conjugate(), p(&[3, 3, 2, 2, 2]));
    }

    #[test]
    fn trailing_zeros_stripped() {
        assert_eq!(p(&[2, 1, 0, 0]).parts(), &[2, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!("[1,-1]".parse::<Partition>().is_err());
    }

    #[test]
    fn split_examples() {
        let s: Signature = "[3,1,0,-2]".parse().unwrap();
        assert_eq!(s.split(), (p(&[3, 1]), p(&[2])));
        assert_eq!(Signature::zeros(3).split(), (p(&[]), p(&[])));
        let s = Signature::new(vec![-1, -4]).unwrap();
        assert_eq!(s.split(), (p(&[]), p(&[4, 1])));
    }

    #[test]
    fn cell_stats_examples() {
        let l = p(&[3, 2]);
        let c = cell_stats(&l, Cell::new(1, 1)).unwrap();
        assert_eq!((c.arm, c.coarm, c.leg, c.coleg), (2, 0, 1, 0));
        let c = cell_stats(&l, Cell::new(2, 2)).unwrap();
        assert_eq!((c.arm, c.coarm, c.leg, c.coleg), (0, 1, 0, 1));
        let l = p(&[4, 4, 2]);
        let c = cell_stats(&l, Cell::new(1, 3)).unwrap();
        // column 3 of (4,4,2) has length 2
        let col3 = brute_conjugate(&l).part(2);
        assert_eq!(col3, 2);
        assert_eq!((c.arm, c.coarm, c.leg, c.coleg), (1, 2, col3 - 1, 0));
        assert!(cell_stats(&l, Cell::new(3, 3)).is_err());
        assert!(cell_stats(&l, Cell::new(0, 1)).is_err());
    }

    #[test]
    fn hook_examples() {
        let half = Theta::from_ratio(1, 2).unwrap();
        let two = Theta::from_ratio(2, 1).unwrap();
        assert_eq!(hook_h(&p(&[1]), &half), q(1));
        assert_eq!(hook_h(&p(&[2]), &Theta::one()), q(2));
        assert_eq!(hook_h(&p(&[2, 1]), &half), qr(5, 2));
        assert_eq!(hook_h(&p(&[]), &half), q(1));
        assert_eq!(hook_hprime(&p(&[1]), &half), qr(1, 2));
        assert_eq!(jack_norm(&p(&[1]), &two), qr(1, 2));
        // cells (1,1),(1,2),(2,1): (1+2+2)(0+0+2)(0+0+2)
        assert_eq!(hook_hprime(&p(&[2, 1]), &two), q(20));
    }

    #[test]
    fn shifted_factorial_examples() {
        let half = Theta::from_ratio(1, 2).unwrap();
        assert_eq!(shifted_factorial(&q(3), &p(&[2, 1]), &half), q(30));
        assert_eq!(shifted_factorial(&q(7), &p(&[]), &half), q(1));
        let t = qr(2, 3);
        let rising = &t * (&t + q(1)) * (&t + q(2));
        assert_eq!(shifted_factorial(&t, &p(&[3]), &half), rising);
    }

    #[test]
    fn norm_examples() {
        let one = Theta::one();
        let half = Theta::from_ratio(1, 2).unwrap();
        assert_eq!(Signature::zeros(4).norm_sq(&one), q(0));
        assert_eq!(Signature::new(vec![1, 0]).unwrap().norm_sq(&one), q(3));
        assert_eq!(Signature::new(vec![2, -2]).unwrap().norm_sq(&half), q(10));
    }

    #[test]
    fn z_lambda_examples() {
        assert_eq!(z_lambda(&p(&[1])), BigInt::from(1));
        assert_eq!(z_lambda(&p(&[1, 1])), BigInt::from(2));
        assert_eq!(z_lambda(&p(&[3, 1, 1])), BigInt::from(6));
    }

    #[test]
    fn enumeration_counts() {
        // p(0..=8) = 1 1 2 3 5 7 11 15 22
        let counts: Vec<usize> = (0..=8).map(|d| Partition::all_of_weight(d, d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(Partition::all_of_weight(6, 2).len(), 4);
        assert_eq!(Signature::all_in_box(2, -1, 1).len(), 6);
    }

    #[test]
    fn text_roundtrip() {
        let s: Signature = " [3, 1,-2] ".parse().unwrap();
        assert_eq!(s.to_string(), "[3,1,-2]");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<Signature>(&json).unwrap(), s);
        assert!(serde_json::from_str::<Signature>("[1,2]").is_err());
    }

    #[test]
    fn theta_must_be_positive() {
        assert!(Theta::new(q(0)).is_err());
        assert!("-1/2".parse::<Theta>().is_err());
        assert_eq!("3/7".parse::<Theta>().unwrap().value(), &qr(3, 7));
    }

    fn small_partition() -> impl Strategy<Value = Partition> {
        (0usize..=12).prop_flat_map(|d| {
            let all = Partition::all_of_weight(d, d);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    fn small_signature() -> impl Strategy<Value = Signature> {
        prop::collection::vec(-6i64..=6, 1..=7).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Signature::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(l in small_partition()) {
            prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            prop_assert_eq!(l.conjugate(), brute_conjugate(&l));
        }

        #[test]
        fn arm_leg_symmetry(l in small_partition()) {
            let st: Vec<CellStats> = stats_iter(&l).collect();
            let a: usize = st.iter().map(|c| c.arm).sum();
            let ap: usize = st.iter().map(|c| c.coarm).sum();
            let lg: usize = st.iter().map(|c| c.leg).sum();
            let lp: usize = st.iter().map(|c| c.coleg).sum();
            prop_assert_eq!(a, ap);
            prop_assert_eq!(lg, lp);
        }

        #[test]
        fn hooks_coincide_at_theta_one(l in small_partition()) {
            prop_assume!(l.weight() <= 10);
            prop_assert_eq!(hook_h(&l, &Theta::one()), hook_hprime(&l, &Theta::one()));
        }

        #[test]
        fn split_round_trip(s in small_signature()) {
            let (plus, minus) = s.split();
            prop_assert_eq!(Signature::from_split(&plus, &minus, s.len()).unwrap(), s.clone());
            prop_assert_eq!(plus.weight() as i64 - minus.weight() as i64, s.sum());
        }

        #[test]
        fn norm_bounds(s in small_signature(), num in 1i64..8, den in 1i64..8) {
            let theta = Theta::from_ratio(num, den).unwrap();
            let n2 = s.norm_sq(&theta);
            let sq: i64 = s.parts().iter().map(|x| x * x).sum();
            prop_assert!(n2 >= q(sq));
            prop_assert!(s.rho_pairing() >= 0);
        }
    }
}
