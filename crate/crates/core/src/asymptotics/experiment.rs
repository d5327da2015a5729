//! Finite-`n` convergence of `Φ_{λ(n)}` and of the scaled `g*_k` towards
//! their limits, on a sampled torus grid.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::asymptotics::floating::measure_f64;
use crate::asymptotics::params::{limit_phi_multi, VkParams};
use crate::asymptotics::sequence::{vk_extract, VkExtraction, VkSequence, DEFAULT_EXTRACT_DEPTH, DEFAULT_EXTRACT_N_MAX};
use crate::asymptotics::special::limit_moments;
use crate::error::{Error, Result};
use crate::jack::JackEngine;
use crate::par::{self, ExecMode};
use crate::partition::Theta;
use crate::scalar::to_f64;
use crate::shifted::gstar::{gstar_all_fast, to_q};

pub const MAX_GRID_POINTS: usize = 1 << 16;

fn default_roots() -> usize {
    64
}

fn default_random() -> usize {
    32
}

/// Roots of unity of order `roots` in every coordinate plus `random`
/// uniformly drawn tuples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(default = "default_roots")]
    pub roots: usize,
    #[serde(default = "default_random")]
    pub random: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { roots: default_roots(), random: default_random(), seed: 0 }
    }
}

pub fn torus_grid(k: usize, spec: &GridSpec) -> Result<Vec<Vec<Complex64>>> {
    if k == 0 {
        return Err(Error::InvalidArgument("torus dimension must be at least 1".into()));
    }
    let lattice = (spec.roots as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if lattice + spec.random as u128 > MAX_GRID_POINTS as u128 {
        return Err(Error::OutOfRange(format!("grid of {lattice} lattice points exceeds {MAX_GRID_POINTS}")));
    }
    let root = |j: usize| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / spec.roots as f64);
    let mut out = Vec::new();
    if spec.roots > 0 {
        let mut idx = vec![0usize; k];
        loop {
            out.push(idx.iter().map(|&j| root(j)).collect());
            let mut pos = 0;
            while pos < k {
                idx[pos] += 1;
                if idx[pos] < spec.roots {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.random {
        out.push((0..k).map(|_| Complex64::from_polar(1.0, 2.0 * PI * rng.gen::<f64>())).collect());
    }
    Ok(out)
}

fn default_k() -> usize {
    1
}

fn default_moments() -> usize {
    4
}

fn default_extract_n_max() -> usize {
    DEFAULT_EXTRACT_N_MAX
}

fn default_extract_depth() -> usize {
    DEFAULT_EXTRACT_DEPTH
}

/// Experiment description, read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Positive rational, `"p/q"` or decimal.
    pub theta: String,
    pub sequence: VkSequence,
    /// Torus dimension; `k = 1` uses the floating link path, larger `k`
    /// the exact Laurent expansion.
    #[serde(default = "default_k")]
    pub k: usize,
    pub n_list: Vec<usize>,
    #[serde(default)]
    pub grid: GridSpec,
    /// Highest `k` in the moment comparison.
    #[serde(default = "default_moments")]
    pub moments: usize,
    /// Limit parameters; extracted from the sequence when absent.
    #[serde(default)]
    pub params: Option<VkParams>,
    #[serde(default = "default_extract_n_max")]
    pub extract_n_max: usize,
    #[serde(default = "default_extract_depth")]
    pub extract_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub sup_error: f64,
    /// `|g*_k(λ(n))/n^k − g(k)|` for `k = 1, …, moments`.
    pub moment_errors: Vec<f64>,
    /// `|Σ M_n − 1|` of the floating measure (0 on the exact path).
    pub mass_defect: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub theta: String,
    pub seed: u64,
    pub sequence: VkSequence,
    pub k: usize,
    pub grid_size: usize,
    pub params: VkParams,
    pub extraction: Option<VkExtraction>,
    pub limit_moments: Vec<f64>,
    pub rows: Vec<ExperimentRow>,
}

pub fn convergence_experiment(cfg: &ExperimentConfig, mode: ExecMode) -> Result<ExperimentReport> {
    let theta: Theta = cfg.theta.parse()?;
    let th = theta.to_f64();
    cfg.sequence.validate()?;
    let (params, extraction) = match &cfg.params {
        Some(p) => (p.clone(), None),
        None => {
            let e = vk_extract(&cfg.sequence, cfg.extract_depth, cfg.extract_n_max)?;
            if !e.converged {
                return Err(Error::InvalidParams(format!("sequence is not VK: {}", e.warnings.join("; "))));
            }
            (e.params.clone(), Some(e))
        }
    };
    params.validate()?;
    let grid = torus_grid(cfg.k, &cfg.grid)?;
    let limits = limit_moments(&params, th, cfg.moments)?;
    let targets = grid.iter().map(|z| limit_phi_multi(&params, th, z)).collect::<Result<Vec<_>>>()?;

    let mut ns = cfg.n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    let rows = par::map(mode, ns, |n| -> Result<ExperimentRow> {
        let lambda = cfg.sequence.signature(n)?;
        if cfg.k > n {
            return Err(Error::TooManyPoints { given: cfg.k, n });
        }
        let (values, mass_defect): (Vec<Complex64>, f64) = if cfg.k == 1 {
            let m = measure_f64(lambda.parts(), th)?;
            (grid.iter().map(|z| m.fourier(z[0])).collect(), (m.total_mass() - 1.0).abs())
        } else {
            let mut engine = JackEngine::new(theta.clone());
            let p = engine.phi_laurent(&lambda, cfg.k)?;
            (grid.iter().map(|z| p.eval_complex(z)).collect(), 0.0)
        };
        let sup_error = values.iter().zip(&targets).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let g = gstar_all_fast(cfg.moments, &to_q(lambda.parts()), &theta);
        let moment_errors = (1..=cfg.moments)
            .map(|k| (to_f64(&g[k]) / (n as f64).powi(k as i32) - limits[k]).abs())
            .collect();
        Ok(ExperimentRow { n, sup_error, moment_errors, mass_defect })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    Ok(ExperimentReport {
        theta: theta.to_string(),
        seed: cfg.grid.seed,
        sequence: cfg.sequence.clone(),
        k: cfg.k,
        grid_size: grid.len(),
        params,
        extraction,
        limit_moments: limits,
        rows,
    })
}

impl ExperimentReport {
    /// CSV with a `#` header line recording θ, `k` and the grid seed.
    pub fn to_csv(&self) -> String {
        let moments = self.rows.first().map_or(0, |r| r.moment_errors.len());
        let mut out = format!("# theta={} k={} seed={} grid_size={}\n", self.theta, self.k, self.seed, self.grid_size);
        out.push_str("n,sup_error");
        for k in 1..=moments {
            let _ = write!(out, ",moment_error_{k}");
        }
        out.push_str(",mass_defect\n");
        for r in &self.rows {
            let _ = write!(out, "{},{:.6e}", r.n, r.sup_error);
            for e in &r.moment_errors {
                let _ = write!(out, ",{e:.6e}");
            }
            let _ = writeln!(out, ",{:.6e}", r.mass_defect);
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn row(&self, n: usize) -> Option<&ExperimentRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Least-squares `c` in `e(n) ≈ c/n`.
pub fn fit_inverse_n(points: &[(usize, f64)]) -> f64 {
    let num: f64 = points.iter().map(|&(n, e)| e / n as f64).sum();
    let den: f64 = points.iter().map(|&(n, _)| 1.0 / (n as f64 * n as f64)).sum();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(seq: VkSequence, theta: &str, ns: Vec<usize>) -> ExperimentConfig {
        ExperimentConfig {
            theta: theta.into(),
            sequence: seq,
            k: 1,
            n_list: ns,
            grid: GridSpec::default(),
            moments: 4,
            params: None,
            extract_n_max: DEFAULT_EXTRACT_N_MAX,
            extract_depth: DEFAULT_EXTRACT_DEPTH,
        }
    }

    #[test]
    fn grid_shape_and_determinism() {
        let g = torus_grid(1, &GridSpec::default()).unwrap();
        assert_eq!(g.len(), 96);
        assert!(g.iter().all(|z| (z[0].norm() - 1.0).abs() < 1e-15));
        assert_eq!(g, torus_grid(1, &GridSpec::default()).unwrap());
        let g2 = torus_grid(2, &GridSpec { roots: 8, random: 3, seed: 1 }).unwrap();
        assert_eq!(g2.len(), 67);
        assert!(torus_grid(5, &GridSpec::default()).is_err());
    }

    #[test]
    fn zero_sequence_has_no_error() {
        let r = convergence_experiment(&config(VkSequence::Zero, "1/2", vec![5, 20]), ExecMode::Sequential).unwrap();
        for row in &r.rows {
            assert!(row.sup_error < 1e-15);
            assert!(row.moment_errors.iter().all(|&e| e == 0.0));
        }
    }

    #[test]
    fn column_sequence_converges() {
        let r = convergence_experiment(&config(VkSequence::Column { b: 1.0 }, "2", vec![10, 40]), ExecMode::Sequential)
            .unwrap();
        // Φ = z exactly when λ = 1ⁿ
        assert!(r.rows.iter().all(|row| row.sup_error < 1e-12));
    }

    #[test]
    fn exact_path_agrees_with_floating() {
        let mut a = config(VkSequence::Mixed { alpha_plus: 0.5, alpha_minus: 0.25 }, "1/2", vec![8]);
        let fl = convergence_experiment(&a, ExecMode::Sequential).unwrap();
        a.k = 2;
        a.grid = GridSpec { roots: 4, random: 0, seed: 0 };
        let ex = convergence_experiment(&a, ExecMode::Sequential).unwrap();
        assert_eq!(fl.rows[0].moment_errors, ex.rows[0].moment_errors);
        assert!(ex.rows[0].sup_error.is_finite());
    }

    #[test]
    fn csv_shape() {
        let r = convergence_experiment(&config(VkSequence::Row { c: 0.5 }, "1", vec![20, 10]), ExecMode::Parallel).unwrap();
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# theta=1 k=1 seed=0"));
        assert_eq!(lines[1], "n,sup_error,moment_error_1,moment_error_2,moment_error_3,moment_error_4,mass_defect");
        assert!(lines[2].starts_with("10,") && lines[3].starts_with("20,"));
    }

    #[test]
    fn config_json_defaults() {
        let cfg: ExperimentConfig =
            serde_json::from_str(r#"{"theta": "1/2", "sequence": {"type": "row", "c": 0.5}, "n_list": [50, 200]}"#).unwrap();
        assert_eq!(cfg.k, 1);
        assert_eq!(cfg.grid, GridSpec::default());
        assert_eq!(cfg.moments, 4);
    }

    #[test]
    fn inverse_fit() {
        let pts = [(10, 0.3), (20, 0.15), (40, 0.075)];
        assert!((fit_inverse_n(&pts) - 3.0).abs() < 1e-12);
    }
}
