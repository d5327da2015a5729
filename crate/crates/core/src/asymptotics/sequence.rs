//! Parametric VK sequences and finite-`n` extraction of their parameters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::asymptotics::params::VkParams;
use crate::error::{Error, Result};
use crate::partition::Signature;

/// A rule producing a length-`n` signature `λ(n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum VkSequence {
    /// `λ(n) = 0ⁿ`.
    Zero,
    /// `(⌊cn⌋, 0, …, 0)`, limit `α⁺ = (c)`.
    Row { c: f64 },
    /// `(1^{⌊bn⌋}, 0, …, 0)`, limit `β⁺ = (b)`.
    Column { b: f64 },
    /// `(⌊a⁺n⌋, 0, …, 0, −⌊a⁻n⌋)`, limits `α⁺ = (a⁺)`, `α⁻ = (a⁻)`.
    Mixed { alpha_plus: f64, alpha_minus: f64 },
    /// `⌊γn⌋` boxes arranged as a staircase with `O(√n)` rows and columns,
    /// limit `γ⁺ = γ`.
    Staircase { gamma: f64 },
    /// Explicit signatures keyed by `n`.
    Explicit { signatures: BTreeMap<usize, Vec<i64>> },
}

fn floor_scaled(x: f64, n: usize) -> Result<i64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::InvalidArgument(format!("sequence parameter {x} must be finite and nonnegative")));
    }
    Ok((x * n as f64).floor() as i64)
}

impl VkSequence {
    pub fn signature(&self, n: usize) -> Result<Signature> {
        if n == 0 {
            return Err(Error::EmptySignature);
        }
        let mut v = vec![0i64; n];
        match self {
            VkSequence::Zero => {}
            VkSequence::Row { c } => v[0] = floor_scaled(*c, n)?,
            VkSequence::Column { b } => {
                let m = floor_scaled(*b, n)? as usize;
                if m > n {
                    return Err(Error::InvalidArgument(format!("column height {m} exceeds n = {n}")));
                }
                v[..m].fill(1);
            }
            VkSequence::Mixed { alpha_plus, alpha_minus } => {
                if n < 2 {
                    return Err(Error::InvalidArgument("mixed sequence needs n >= 2".into()));
                }
                v[0] = floor_scaled(*alpha_plus, n)?;
                v[n - 1] = -floor_scaled(*alpha_minus, n)?;
            }
            VkSequence::Staircase { gamma } => {
                let boxes = floor_scaled(*gamma, n)?;
                let mut k = ((2.0 * boxes as f64).sqrt()) as i64;
                while k * (k + 1) / 2 > boxes {
                    k -= 1;
                }
                while (k + 1) * (k + 2) / 2 <= boxes {
                    k += 1;
                }
                if k as usize > n {
                    return Err(Error::InvalidArgument(format!("staircase needs {k} rows but n = {n}")));
                }
                let rem = boxes - k * (k + 1) / 2;
                for i in 0..k as usize {
                    v[i] = k - i as i64 + i64::from((i as i64) < rem);
                }
            }
            VkSequence::Explicit { signatures } => {
                let s = signatures
                    .get(&n)
                    .ok_or_else(|| Error::InvalidArgument(format!("no signature given for n = {n}")))?;
                if s.len() != n {
                    return Err(Error::LengthConvention { n, len: s.len() });
                }
                v = s.clone();
            }
        }
        Signature::new(v)
    }

    /// All lengths `n ≤ n_max` the rule is defined for.
    pub fn admissible(&self, n_max: usize) -> Vec<usize> {
        match self {
            VkSequence::Explicit { signatures } => signatures.keys().copied().filter(|&n| n <= n_max).collect(),
            VkSequence::Mixed { .. } => (2..=n_max).collect(),
            _ => (1..=n_max).collect(),
        }
    }

    /// Parameters known by construction, when there are any.
    pub fn expected_params(&self) -> Option<VkParams> {
        let p = match *self {
            VkSequence::Zero => VkParams::zero(),
            VkSequence::Row { c } => VkParams { alpha_plus: vec![c], ..Default::default() },
            VkSequence::Column { b } => VkParams { beta_plus: vec![b], ..Default::default() },
            VkSequence::Mixed { alpha_plus, alpha_minus } => VkParams {
                alpha_plus: vec![alpha_plus],
                alpha_minus: vec![alpha_minus],
                ..Default::default()
            },
            VkSequence::Staircase { gamma } => VkParams { gamma_plus: gamma, ..Default::default() },
            VkSequence::Explicit { .. } => return None,
        };
        Some(p)
    }

    /// Checks every explicit entry against the length convention.
    pub fn validate(&self) -> Result<()> {
        if let VkSequence::Explicit { signatures } = self {
            for (&n, s) in signatures {
                if s.len() != n {
                    return Err(Error::LengthConvention { n, len: s.len() });
                }
                Signature::new(s.clone())?;
            }
        }
        Ok(())
    }
}

/// Estimates below this are reported as zero; residuals above it flag
/// non-convergence.
pub const RESIDUAL_THRESHOLD: f64 = 1e-3;
pub const DEFAULT_EXTRACT_N_MAX: usize = 12_000;
pub const DEFAULT_EXTRACT_DEPTH: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct ParamEstimate {
    /// `alpha+`, `beta-`, `delta+`, …
    pub name: String,
    /// 1-based index within the list; 0 for `delta`.
    pub index: usize,
    /// `(n, raw ratio)` at the sampled lengths, largest `n` first.
    pub samples: Vec<(usize, f64)>,
    pub extrapolated: f64,
    pub residual: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VkExtraction {
    pub params: VkParams,
    pub estimates: Vec<ParamEstimate>,
    /// `δ± − Σ(α± + β±)` before clamping at zero.
    pub gamma_raw: (f64, f64),
    pub converged: bool,
    pub warnings: Vec<String>,
}

struct SideRatios {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    delta: f64,
}

fn side_ratios(parts: &[i64], n: usize, depth: usize) -> SideRatios {
    // parts: nonnegative, weakly decreasing
    let nf = n as f64;
    let alpha = (0..depth).map(|i| *parts.get(i).unwrap_or(&0) as f64 / nf).collect();
    let beta = (1..=depth as i64)
        .map(|j| parts.iter().take_while(|&&p| p >= j).count() as f64 / nf)
        .collect();
    let delta = parts.iter().sum::<i64>() as f64 / nf;
    SideRatios { alpha, beta, delta }
}

fn sides(lambda: &Signature, depth: usize) -> (SideRatios, SideRatios) {
    let n = lambda.len();
    let plus: Vec<i64> = lambda.parts().iter().copied().filter(|&x| x > 0).collect();
    let minus: Vec<i64> = lambda.parts().iter().rev().copied().filter(|&x| x < 0).map(|x| -x).collect();
    (side_ratios(&plus, n, depth), side_ratios(&minus, n, depth))
}

fn side_of(r: &(SideRatios, SideRatios), pick: usize) -> &SideRatios {
    if pick == 0 {
        &r.0
    } else {
        &r.1
    }
}

/// Limit of `a(n) = L + c/n` from two samples.
fn richardson(n1: usize, a1: f64, n2: usize, a2: f64) -> f64 {
    let (n1, n2) = (n1 as f64, n2 as f64);
    (n1 * a1 - n2 * a2) / (n1 - n2)
}

fn nearest(adm: &[usize], target: usize) -> Option<usize> {
    adm.iter().copied().min_by_key(|&n| (n as i64 - target as i64).abs())
}

/// Finite-`n` estimates of the VK parameters to depth `d`, extrapolated in
/// `1/n` from samples at `n_max`, `n_max/2` and `n_max/4`.
pub fn vk_extract(seq: &VkSequence, depth: usize, n_max: usize) -> Result<VkExtraction> {
    seq.validate()?;
    let adm = seq.admissible(n_max);
    let n1 = *adm.last().ok_or_else(|| Error::InvalidArgument("no admissible n".into()))?;
    let mut ns = vec![n1];
    for div in [2, 4] {
        if let Some(m) = nearest(&adm, n1 / div) {
            if m < *ns.last().unwrap() {
                ns.push(m);
            }
        }
    }
    let samples: Vec<(usize, (SideRatios, SideRatios))> = ns
        .iter()
        .map(|&n| {
            let s = seq.signature(n)?;
            if s.len() != n {
                return Err(Error::LengthConvention { n, len: s.len() });
            }
            Ok((n, sides(&s, depth)))
        })
        .collect::<Result<_>>()?;

    let mut estimates = Vec::new();
    let mut warnings = Vec::new();
    let mut extract = |name: &str, index: usize, get: &dyn Fn(&(SideRatios, SideRatios)) -> f64| -> f64 {
        let vals: Vec<(usize, f64)> = samples.iter().map(|(n, r)| (*n, get(r))).collect();
        let (extrapolated, residual) = match vals.as_slice() {
            [(n1, a1), (n2, a2), (n3, a3)] => {
                let r1 = richardson(*n1, *a1, *n2, *a2);
                let r2 = richardson(*n2, *a2, *n3, *a3);
                (r1, (r1 - r2).abs())
            }
            [(n1, a1), (n2, a2)] => (richardson(*n1, *a1, *n2, *a2), (a1 - a2).abs()),
            [(_, a1)] => (*a1, f64::INFINITY),
            _ => unreachable!(),
        };
        let converged = residual < RESIDUAL_THRESHOLD;
        if !converged {
            warnings.push(format!("{name}[{index}] residual {residual:.3e}"));
        }
        estimates.push(ParamEstimate {
            name: name.to_string(),
            index,
            samples: vals,
            extrapolated,
            residual,
            converged,
        });
        extrapolated
    };

    let mut side_params = Vec::new();
    for (label, pick) in [("+", 0usize), ("-", 1usize)] {
        let alpha: Vec<f64> = (0..depth)
            .map(|i| extract(&format!("alpha{label}"), i + 1, &|r| side_of(r, pick).alpha[i]))
            .collect();
        let beta: Vec<f64> = (0..depth)
            .map(|i| extract(&format!("beta{label}"), i + 1, &|r| side_of(r, pick).beta[i]))
            .collect();
        let delta = extract(&format!("delta{label}"), 0, &|r| side_of(r, pick).delta);
        side_params.push((alpha, beta, delta));
    }
    drop(extract);

    let clean = |v: &[f64]| -> Vec<f64> {
        let mut out: Vec<f64> = v.iter().copied().filter(|&x| x >= RESIDUAL_THRESHOLD).collect();
        out.sort_by(|a, b| b.total_cmp(a));
        out
    };
    let mut gamma_raw = [0.0; 2];
    for (g, (alpha, beta, delta)) in gamma_raw.iter_mut().zip(&side_params) {
        *g = delta - clean(alpha).iter().sum::<f64>() - clean(beta).iter().sum::<f64>();
    }
    for (label, g) in ["+", "-"].iter().zip(gamma_raw) {
        if g < -RESIDUAL_THRESHOLD {
            warnings.push(format!("gamma{label} = {g:.3e} is negative beyond tolerance; reported as 0"));
        }
    }
    let gamma = |g: f64| if g < RESIDUAL_THRESHOLD { 0.0 } else { g };
    let params = VkParams {
        alpha_plus: clean(&side_params[0].0),
        beta_plus: clean(&side_params[0].1),
        gamma_plus: gamma(gamma_raw[0]),
        alpha_minus: clean(&side_params[1].0),
        beta_minus: clean(&side_params[1].1),
        gamma_minus: gamma(gamma_raw[1]),
    };
    let converged = estimates.iter().all(|e| e.converged) && gamma_raw.iter().all(|&g| g >= -RESIDUAL_THRESHOLD);
    Ok(VkExtraction { params, estimates, gamma_raw: (gamma_raw[0], gamma_raw[1]), converged, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn generators_respect_length() {
        let seqs = [
            VkSequence::Zero,
            VkSequence::Row { c: 0.5 },
            VkSequence::Column { b: 0.5 },
            VkSequence::Mixed { alpha_plus: 0.5, alpha_minus: 1.0 / 3.0 },
            VkSequence::Staircase { gamma: 0.5 },
        ];
        for s in &seqs {
            for n in [7, 50, 123] {
                assert_eq!(s.signature(n).unwrap().len(), n);
            }
        }
        assert_eq!(VkSequence::Mixed { alpha_plus: 0.5, alpha_minus: 1.0 / 3.0 }.signature(6).unwrap().parts(), &[3, 0, 0, 0, 0, -2]);
        assert_eq!(VkSequence::Staircase { gamma: 1.0 }.signature(8).unwrap().parts(), &[4, 3, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn explicit_length_violation() {
        let mut m = BTreeMap::new();
        m.insert(3, vec![2, 1]);
        let s = VkSequence::Explicit { signatures: m };
        assert!(matches!(s.signature(3), Err(Error::LengthConvention { n: 3, len: 2 })));
        assert!(matches!(vk_extract(&s, 2, 10), Err(Error::LengthConvention { .. })));
    }

    #[test]
    fn single_row_and_column() {
        let mut rows = BTreeMap::new();
        let mut cols = BTreeMap::new();
        for n in [1000usize, 2000, 4000] {
            let mut r = vec![0i64; n];
            r[0] = n as i64;
            rows.insert(n, r);
            cols.insert(n, vec![1i64; n]);
        }
        let e = vk_extract(&VkSequence::Explicit { signatures: rows }, 3, 4000).unwrap();
        assert!(e.converged, "{:?}", e.warnings);
        assert!(close(&e.params.alpha_plus, &[1.0], 1e-9));
        assert!(e.params.beta_plus.is_empty() && e.params.gamma_plus == 0.0);
        assert!(e.params.alpha_minus.is_empty() && e.params.beta_minus.is_empty());
        let e = vk_extract(&VkSequence::Explicit { signatures: cols }, 3, 4000).unwrap();
        assert!(close(&e.params.beta_plus, &[1.0], 1e-9));
        assert!(e.params.alpha_plus.is_empty() && e.params.gamma_plus == 0.0);
    }

    #[test]
    fn mixed_sequence() {
        let s = VkSequence::Mixed { alpha_plus: 0.5, alpha_minus: 1.0 / 3.0 };
        let e = vk_extract(&s, 3, DEFAULT_EXTRACT_N_MAX).unwrap();
        assert!(e.converged);
        assert!(close(&e.params.alpha_plus, &[0.5], 1e-3));
        assert!(close(&e.params.alpha_minus, &[1.0 / 3.0], 1e-3));
        assert!(e.params.gamma_plus == 0.0 && e.params.gamma_minus == 0.0);
    }

    #[test]
    fn catalog_matches_expected() {
        let seqs = [
            (VkSequence::Zero, DEFAULT_EXTRACT_N_MAX),
            (VkSequence::Row { c: 0.5 }, DEFAULT_EXTRACT_N_MAX),
            (VkSequence::Column { b: 0.5 }, DEFAULT_EXTRACT_N_MAX),
            (VkSequence::Staircase { gamma: 0.5 }, 2_000_000),
        ];
        for (s, n_max) in seqs {
            let e = vk_extract(&s, 3, n_max).unwrap();
            let want = s.expected_params().unwrap();
            assert!(e.converged, "{s:?}: {:?}", e.warnings);
            assert!(close(&e.params.alpha_plus, &want.alpha_plus, 2e-3), "{s:?}: {:?}", e.params);
            assert!(close(&e.params.beta_plus, &want.beta_plus, 2e-3), "{s:?}: {:?}", e.params);
            assert!((e.params.gamma_plus - want.gamma_plus).abs() < 5e-3, "{s:?}: {:?}", e.params);
        }
    }

    #[test]
    fn divergent_sequence_is_flagged() {
        // λ(n)_1 alternates between 0 and n/2
        let mut m = BTreeMap::new();
        for n in [250usize, 500, 1000] {
            let mut v = vec![0i64; n];
            if n != 500 {
                v[0] = (n / 2) as i64;
            }
            m.insert(n, v);
        }
        let e = vk_extract(&VkSequence::Explicit { signatures: m }, 2, 1000).unwrap();
        assert!(!e.converged);
    }

    #[test]
    fn sequence_json_round_trip() {
        let s = VkSequence::Mixed { alpha_plus: 0.5, alpha_minus: 0.25 };
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"type":"mixed","alpha_plus":0.5,"alpha_minus":0.25}"#);
        assert_eq!(serde_json::from_str::<VkSequence>(&j).unwrap(), s);
    }
}
