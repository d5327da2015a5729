//! Exact identity suites over finite families of partitions and
//! signatures. Each suite stops at its first counterexample.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::asymptotics::{
    binomial_check, binomial_series_check, factorial_moment_identity, power_bound_sides, link_weights,
    project_delta, second_moment_identity,
};
use crate::error::{Error, Result};
use crate::jack::gram_schmidt::MAX_ORACLE_DEGREE;
use crate::jack::{gram_schmidt_oracle, DegreeBasis, JackEngine};
use crate::partition::{hook_h, jack_norm, Partition, Signature, Theta};
use crate::scalar::{format_q, q, Q};
use crate::shifted::{
    convolution_recursion_check, gen_gstar, gstar_product_series, gstar_signature_split, interpolation_oracle,
    ShiftedEngine,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Cauchy,
    Oracle,
    Norm,
    Pstar,
    Binomial,
    Gstar,
    Split,
    Convolution,
    Moments,
    Links,
    PowerBound,
    All,
}

impl Suite {
    pub const EACH: [Suite; 11] = [
        Suite::Cauchy,
        Suite::Oracle,
        Suite::Norm,
        Suite::Pstar,
        Suite::Binomial,
        Suite::Gstar,
        Suite::Split,
        Suite::Convolution,
        Suite::Moments,
        Suite::Links,
        Suite::PowerBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cauchy => "cauchy",
            Suite::Oracle => "oracle",
            Suite::Norm => "norm",
            Suite::Pstar => "pstar",
            Suite::Binomial => "binomial",
            Suite::Gstar => "gstar",
            Suite::Split => "split",
            Suite::Convolution => "convolution",
            Suite::Moments => "moments",
            Suite::Links => "links",
            Suite::PowerBound => "power-bound",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Family sizes shared by the suites.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    /// Number of variables (signature length).
    pub n: usize,
    /// Second variable count (Cauchy identity).
    pub m: usize,
    pub theta: Theta,
    /// Degree / weight cap / series order.
    pub degree: usize,
    /// Signature entries range over `[-bound, bound]`.
    pub bound: i64,
    /// Random samples for the power-moment bound.
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub holds: bool,
    pub cases: usize,
    pub counterexample: Option<Value>,
}

struct Tally {
    suite: Suite,
    cases: usize,
    counterexample: Option<Value>,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Tally { suite, cases: 0, counterexample: None }
    }

    /// Records one case; returns `false` once a counterexample is stored.
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> Value) -> bool {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(detail());
        }
        self.counterexample.is_none()
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite.name().to_string(),
            holds: self.counterexample.is_none(),
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

fn box_signatures(p: &SuiteParams) -> Vec<Signature> {
    Signature::all_in_box(p.n, -p.bound, p.bound)
}

pub fn run_suite(suite: Suite, p: &SuiteParams) -> Result<Vec<SuiteReport>> {
    if suite == Suite::All {
        return Suite::EACH.iter().map(|&s| run_one(s, p)).collect();
    }
    Ok(vec![run_one(suite, p)?])
}

fn run_one(suite: Suite, p: &SuiteParams) -> Result<SuiteReport> {
    let mut t = Tally::new(suite);
    let theta = &p.theta;
    match suite {
        Suite::Cauchy => {
            let r = JackEngine::new(theta.clone()).cauchy_check(p.n, p.m, p.degree);
            t.cases = r.terms_compared;
            t.counterexample = r.counterexample.map(|c| json!({"x_exp": c.0, "y_exp": c.1, "lhs": c.2, "rhs": c.3}));
        }
        Suite::Oracle => {
            if p.degree > MAX_ORACLE_DEGREE {
                return Err(Error::OutOfRange(format!("oracle degree {} > {MAX_ORACLE_DEGREE}", p.degree)));
            }
            let mut e = JackEngine::new(theta.clone());
            'outer: for d in 0..=p.degree {
                for lam in Partition::all_of_weight(d, p.n) {
                    let a = e.jack_p_partition(&lam, p.n)?;
                    let b = gram_schmidt_oracle(&lam, p.n, theta)?;
                    if !t.check(a == b, || json!({"lambda": lam.parts(), "branching": a.to_json(), "oracle": b.to_json()})) {
                        break 'outer;
                    }
                }
            }
        }
        Suite::Norm => {
            let mut e = JackEngine::new(theta.clone());
            'outer: for d in 1..=p.degree {
                let basis = DegreeBasis::new(d)?;
                for lam in Partition::all_of_weight(d, d) {
                    let f = e.jack_p_partition(&lam, d)?;
                    let lhs = basis.inner(&f, &f, theta);
                    let rhs = jack_norm(&lam, theta);
                    if !t.check(lhs == rhs, || json!({"lambda": lam.parts(), "inner": format_q(&lhs), "h_over_hprime": format_q(&rhs)})) {
                        break 'outer;
                    }
                }
            }
        }
        Suite::Pstar => pstar_suite(&mut t, p)?,
        Suite::Binomial => {
            let mut e = ShiftedEngine::new(theta.clone());
            'outer: for lam in box_signatures(p) {
                for k in 1..=p.n {
                    let exact = binomial_check(&mut e, &lam, k)?;
                    let series = binomial_series_check(&mut e, &lam, k, p.degree)?;
                    if !t.check(exact && series, || json!({"lambda": lam.parts(), "k": k, "exact": exact, "series": series})) {
                        break 'outer;
                    }
                }
            }
        }
        Suite::Gstar => {
            for d in 0..=p.degree {
                for lam in Partition::all_of_weight(d, p.n) {
                    let x = lam.padded(p.n);
                    let xq: Vec<Q> = x.iter().map(|&v| q(v)).collect();
                    let lhs = gen_gstar(&xq, theta, p.degree).to_inv_u();
                    let rhs = gstar_product_series(&x, theta, p.degree);
                    if !t.check(lhs == rhs, || json!({"lambda": x, "series": lhs.to_json(), "product": rhs.to_json()})) {
                        return Ok(t.finish());
                    }
                }
            }
        }
        Suite::Split => {
            for lam in box_signatures(p) {
                let r = gstar_signature_split(&lam, theta, p.degree);
                if !t.check(r.holds && r.rational_identity, || json!({"lambda": lam.parts(), "report": r})) {
                    break;
                }
            }
        }
        Suite::Convolution => {
            if p.n < 2 {
                return Err(Error::InvalidArgument("convolution suite needs n >= 2".into()));
            }
            for lam in box_signatures(p) {
                let r = convolution_recursion_check(lam.parts(), theta, p.degree)?;
                if !t.check(r.holds, || json!({"x": lam.parts(), "report": r})) {
                    break;
                }
            }
        }
        Suite::Moments => {
            let mut e = JackEngine::new(theta.clone());
            'outer: for lam in box_signatures(p) {
                let (a, b) = second_moment_identity(&mut e, &lam)?;
                if !t.check(a == b, || json!({"lambda": lam.parts(), "moment": 2, "lhs": format_q(&a), "rhs": format_q(&b)})) {
                    break;
                }
                for k in 1..=3 {
                    let (a, b) = factorial_moment_identity(&mut e, &lam, k)?;
                    if !t.check(a == b, || json!({"lambda": lam.parts(), "factorial_moment": k, "lhs": format_q(&a), "rhs": format_q(&b)})) {
                        break 'outer;
                    }
                }
            }
        }
        Suite::Links => {
            if p.n < 2 {
                return Err(Error::InvalidArgument("links suite needs n >= 2".into()));
            }
            let mut e = JackEngine::new(theta.clone());
            'outer: for lam in box_signatures(p) {
                let w = link_weights(&mut e, &lam)?;
                let total: Q = w.iter().map(|(_, x)| x).sum();
                let in_range = w.iter().all(|(_, x)| *x >= Q::zero() && *x <= Q::one());
                if !t.check(total.is_one() && in_range, || json!({"lambda": lam.parts(), "sum": format_q(&total)})) {
                    break;
                }
                for k in 1..p.n {
                    let d = project_delta(&mut e, &lam, k)?;
                    let mass: Q = d.values().sum();
                    if !t.check(mass.is_one(), || json!({"lambda": lam.parts(), "k": k, "mass": format_q(&mass)})) {
                        break 'outer;
                    }
                }
            }
        }
        Suite::PowerBound => {
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
            'outer: for _ in 0..p.samples {
                let v = random_decreasing_rationals(&mut rng, p.n.max(1), 20, 6);
                for m in 0..=4 {
                    let (l, r) = power_bound_sides(&v, m)?;
                    if !t.check(l <= r, || json!({"lambda": v.iter().map(format_q).collect::<Vec<_>>(), "m": m})) {
                        break 'outer;
                    }
                }
            }
        }
        Suite::All => unreachable!(),
    }
    Ok(t.finish())
}

fn pstar_suite(t: &mut Tally, p: &SuiteParams) -> Result<()> {
    let theta = &p.theta;
    let mut e = ShiftedEngine::new(theta.clone());
    let targets = Partition::all_up_to(p.degree + 1, p.n);
    for mu in Partition::all_up_to(p.degree, p.n) {
        let f = e.pstar(&mu, p.n)?;
        let fail = |what: &str| json!({"mu": mu.parts(), "n": p.n, "failed": what});
        if !t.check(f.is_shifted_symmetric(), || fail("shifted symmetry")) {
            return Ok(());
        }
        if !t.check(f.degree() == mu.weight() as i32, || fail("degree")) {
            return Ok(());
        }
        for lam in &targets {
            let v = f.eval_partition(lam)?;
            let ok = if lam == &mu {
                v == hook_h(&mu, theta)
            } else if !lam.contains(&mu) {
                v.is_zero()
            } else {
                true
            };
            if !t.check(ok, || json!({"mu": mu.parts(), "at": lam.parts(), "value": format_q(&v)})) {
                return Ok(());
            }
        }
        let top = e.jack().jack_p_partition(&mu, p.n)?.to_poly();
        if !t.check(f.top_term() == top, || fail("top homogeneous term")) {
            return Ok(());
        }
        if mu.weight() <= 6 && p.n <= 4 {
            let oracle = interpolation_oracle(&mu, p.n, theta)?;
            if !t.check(oracle == f, || fail("interpolation oracle")) {
                return Ok(());
            }
        }
        let bigger = e.pstar(&mu, p.n + 1)?.drop_last();
        if !t.check(bigger == f, || fail("stability under x_{n+1} = 0")) {
            return Ok(());
        }
    }
    Ok(())
}

/// A weakly decreasing vector of `n` rationals `a/b` with `|a| ≤ num`,
/// `1 ≤ b ≤ den`.
pub fn random_decreasing_rationals(rng: &mut impl Rng, n: usize, num: i64, den: i64) -> Vec<Q> {
    let mut v: Vec<Q> = (0..n)
        .map(|_| Q::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into()))
        .collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, theta: Theta, degree: usize, bound: i64) -> SuiteParams {
        SuiteParams { n, m: 2, theta, degree, bound, samples: 50, seed: 1 }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_hold() {
        let p = params(2, Theta::from_ratio(1, 2).unwrap(), 3, 1);
        for r in run_suite(Suite::All, &p).unwrap() {
            assert!(r.holds, "{r:?}");
            assert!(r.cases > 0, "{r:?}");
        }
    }
}
