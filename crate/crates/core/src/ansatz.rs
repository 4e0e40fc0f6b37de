//! Compact trial functions `R(r) = r^ℓ e^{-φ(κ r)}` with
//! `φ(r) = (a + b r²)/√(1 + r²) + s ln(1 + r²)`, and Rayleigh–Ritz
//! superpositions of several such configurations.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{generalized_lowest, Matrix};
use crate::math;
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::quadrature::QuadratureRule;
use crate::spectrum::WellSpec;

/// Largest overlap condition number accepted for a superposition.
pub const MAX_OVERLAP_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzConfig {
    pub a: f64,
    pub b: f64,
    pub s: f64,
}

impl AnsatzConfig {
    pub const fn new(a: f64, b: f64, s: f64) -> Self {
        AnsatzConfig { a, b, s }
    }

    /// Square integrability of `r^ℓ e^{-φ}` against `r^{d-1} dr`.
    pub fn is_normalizable(&self, well: &WellSpec) -> bool {
        let finite = self.a.is_finite() && self.b.is_finite() && self.s.is_finite();
        finite && self.b >= 0.0 && self.b + self.s > 0.0 && (self.b > 0.0 || 4.0 * self.s > (well.d + 2 * well.ell) as f64)
    }

    fn distance(&self, other: &AnsatzConfig) -> f64 {
        math::abs(self.a - other.a).max(math::abs(self.b - other.b)).max(math::abs(self.s - other.s))
    }
}

pub fn phi(r: f64, c: &AnsatzConfig) -> f64 {
    let q = 1.0 + r * r;
    (c.a + c.b * r * r) / math::sqrt(q) + c.s * math::ln_1p(r * r)
}

/// `dφ/dr`.
pub fn phi_derivative(r: f64, c: &AnsatzConfig) -> f64 {
    let q = 1.0 + r * r;
    r * (2.0 * c.b + c.b * r * r - c.a) / (q * math::sqrt(q)) + 2.0 * c.s * r / q
}

pub fn trial_radial(r: f64, config: &AnsatzConfig, well: &WellSpec) -> f64 {
    trial_radial_scaled(r, config, well, 1.0)
}

/// `r^ℓ e^{-φ(κ r)}`.
pub fn trial_radial_scaled(r: f64, config: &AnsatzConfig, well: &WellSpec, kappa: f64) -> f64 {
    math::powi(r, well.ell as i32) * math::exp(-phi(kappa * r, config))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionState {
    pub configs: Vec<AnsatzConfig>,
    pub linear_coeffs: Vec<f64>,
    pub well: WellSpec,
    pub energy: f64,
    /// Argument scale `κ` of every configuration.
    pub kappa: f64,
    /// Which Rayleigh–Ritz root the state represents (0 = lowest).
    pub root: usize,
    pub overlap_condition: f64,
    /// Set when no restart met the simplex convergence tolerance.
    pub flagged: bool,
}

/// Rayleigh–Ritz problem over a fixed set of configurations.
#[derive(Debug, Clone)]
pub struct RitzProblem<'a> {
    pub well: WellSpec,
    pub rule: &'a QuadratureRule,
    pub kappa: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RitzSolution {
    pub energy: f64,
    pub coeffs: Vec<f64>,
    pub overlap_condition: f64,
}

impl<'a> RitzProblem<'a> {
    /// `H_ij`, `S_ij` with the gradient form of the kinetic energy.
    pub fn matrices(&self, configs: &[AnsatzConfig]) -> (Matrix, Matrix) {
        let k = configs.len();
        let d = self.well.d;
        let ell = self.well.ell as f64;
        let cent = 0.5 * ell * (ell + d as f64 - 2.0);
        let mut h = Matrix::zeros(k, k);
        let mut s = Matrix::zeros(k, k);
        let mut val = vec![0.0; k];
        let mut der = vec![0.0; k];
        for (&r, &w) in self.rule.nodes.iter().zip(&self.rule.weights) {
            let w = w * math::powi(r, d as i32 - 1);
            let pref = math::powi(r, self.well.ell as i32);
            let x = self.kappa * r;
            for (i, c) in configs.iter().enumerate() {
                let e = math::exp(-phi(x, c));
                val[i] = pref * e;
                der[i] = val[i] * (ell / r - self.kappa * phi_derivative(x, c));
            }
            let pot = w * (-self.well.v0 * math::exp(-r * r) + cent / (r * r));
            for i in 0..k {
                for j in 0..=i {
                    let sv = w * val[i] * val[j];
                    let hv = 0.5 * w * der[i] * der[j] + pot * val[i] * val[j];
                    s[(i, j)] += sv;
                    h[(i, j)] += hv;
                }
            }
        }
        for i in 0..k {
            for j in 0..i {
                s[(j, i)] = s[(i, j)];
                h[(j, i)] = h[(i, j)];
            }
        }
        (h, s)
    }

    pub fn solve(&self, configs: &[AnsatzConfig], root: usize) -> Result<RitzSolution> {
        if configs.is_empty() || root >= configs.len() {
            return Err(Error::InvalidInput("root index must be below the number of configurations"));
        }
        for c in configs {
            if !c.is_normalizable(&self.well) {
                return Err(Error::InvalidInput("configuration is not normalizable"));
            }
        }
        for i in 0..configs.len() {
            for j in 0..i {
                if configs[i].distance(&configs[j]) <= 1e-6 {
                    return Err(Error::DegenerateSuperposition(f64::INFINITY));
                }
            }
        }
        let (h, s) = self.matrices(configs);
        let (energy, coeffs, cond) = generalized_lowest(&h, &s, root)?;
        if cond > MAX_OVERLAP_CONDITION {
            return Err(Error::DegenerateSuperposition(cond));
        }
        Ok(RitzSolution { energy, coeffs, overlap_condition: cond })
    }
}

/// Lowest Rayleigh–Ritz energy and coefficients (`cᵀ S c = 1`) at `κ = 1`.
pub fn variational_energy(
    well: &WellSpec,
    configs: &[AnsatzConfig],
    rule: &QuadratureRule,
) -> Result<(f64, Vec<f64>)> {
    let sol = RitzProblem { well: *well, rule, kappa: 1.0 }.solve(configs, 0)?;
    Ok((sol.energy, sol.coeffs))
}

#[derive(Debug, Clone)]
pub struct OptimizeOptions {
    pub restarts: usize,
    pub seed: u64,
    pub kappa: f64,
    pub root: usize,
    /// Nodes per octave of the default rule.
    pub points_per_panel: usize,
    pub simplex: NelderMeadOptions,
    /// Starting point of the first configuration.
    pub start: AnsatzConfig,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            restarts: 8,
            seed: 0,
            kappa: 1.0,
            root: 0,
            points_per_panel: 24,
            simplex: NelderMeadOptions::default(),
            start: AnsatzConfig::new(1.0, 0.1, 0.5),
        }
    }
}

fn unpack(x: &[f64]) -> Vec<AnsatzConfig> {
    x.chunks(3).map(|c| AnsatzConfig::new(c[0], c[1], c[2])).collect()
}

fn pack(configs: &[AnsatzConfig]) -> Vec<f64> {
    configs.iter().flat_map(|c| [c.a, c.b, c.s]).collect()
}

fn perturb(rng: &mut ChaCha8Rng, c: &AnsatzConfig) -> AnsatzConfig {
    let mut f = |x: f64| x * math::exp(rng.random_range(-1.0..1.0));
    AnsatzConfig::new(f(c.a), f(c.b), f(c.s))
}

fn random_config(rng: &mut ChaCha8Rng) -> AnsatzConfig {
    AnsatzConfig::new(
        math::exp(rng.random_range(-1.5..4.5)),
        math::exp(rng.random_range(-4.5..1.0)),
        rng.random_range(0.0..1.5),
    )
}

/// Minimizes the chosen Ritz root over all `3K` nonlinear parameters.
///
/// Terms are added one at a time: the `K`-term search starts from the
/// `(K-1)`-term optimum plus a new configuration, so the energy never rises
/// with `K`.
pub fn optimize_with(well: &WellSpec, k: usize, opts: &OptimizeOptions) -> Result<SuperpositionState> {
    well.validate()?;
    if k == 0 || opts.root >= k || opts.restarts == 0 {
        return Err(Error::InvalidInput("need K >= 1, a root below K and at least one restart"));
    }
    let rule = QuadratureRule::half_line(opts.points_per_panel)?;
    let problem = RitzProblem { well: *well, rule: &rule, kappa: opts.kappa };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let objective = |root: usize| {
        let problem = problem.clone();
        move |x: &[f64]| problem.solve(&unpack(x), root).map(|s| s.energy).unwrap_or(f64::INFINITY)
    };
    let polish = |x: Vec<f64>, root: usize| {
        // A second simplex from the best point removes premature collapse.
        let first = nelder_mead(objective(root), &x, opts.simplex);
        let second = nelder_mead(objective(root), &first.x, opts.simplex);
        if second.value <= first.value {
            second
        } else {
            first
        }
    };

    let min_terms = opts.root + 1;
    let mut best: Option<(Vec<f64>, f64, bool)> = None;
    for terms in 1..=k {
        let root = if terms >= min_terms { opts.root } else { terms - 1 };
        let mut starts: Vec<Vec<f64>> = Vec::new();
        match &best {
            None => {
                starts.push(pack(&[opts.start]));
                while starts.len() < opts.restarts {
                    starts.push(pack(&[perturb(&mut rng, &opts.start)]));
                }
            }
            Some((prev, _, _)) => {
                let prev_cfg = unpack(prev);
                // Screen candidate additions and keep the most promising.
                let mut cands: Vec<(f64, Vec<f64>)> = (0..8 * opts.restarts)
                    .map(|i| {
                        let extra = if i % 2 == 0 {
                            random_config(&mut rng)
                        } else {
                            perturb(&mut rng, &prev_cfg[i / 2 % prev_cfg.len()])
                        };
                        let mut cfg = prev_cfg.clone();
                        cfg.push(extra);
                        let e = problem.solve(&cfg, root).map(|s| s.energy).unwrap_or(f64::INFINITY);
                        (e, pack(&cfg))
                    })
                    .filter(|(e, _)| e.is_finite())
                    .collect();
                cands.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(core::cmp::Ordering::Equal));
                starts.extend(cands.into_iter().take(opts.restarts).map(|c| c.1));
                if starts.is_empty() {
                    return Err(Error::DegenerateSuperposition(f64::INFINITY));
                }
            }
        }
        let mut stage: Option<(Vec<f64>, f64, bool)> = None;
        for x0 in starts {
            let m = polish(x0, root);
            if stage.as_ref().is_none_or(|s| m.value < s.1) {
                stage = Some((m.x, m.value, m.converged));
            }
        }
        best = stage;
    }
    let (x, _, converged) = best.ok_or(Error::InvalidInput("no restart produced a finite energy"))?;
    let configs = unpack(&x);
    let sol = problem.solve(&configs, opts.root.min(k - 1))?;
    Ok(SuperpositionState {
        configs,
        linear_coeffs: sol.coeffs,
        well: *well,
        energy: sol.energy,
        kappa: opts.kappa,
        root: opts.root,
        overlap_condition: sol.overlap_condition,
        flagged: !converged,
    })
}

/// Seeded optimization of the lowest root with default options.
pub fn optimize(well: &WellSpec, k: usize, restarts: usize, seed: u64) -> Result<SuperpositionState> {
    optimize_with(well, k, &OptimizeOptions { restarts, seed, ..Default::default() })
}

/// Energy of an existing superposition under a different quadrature rule.
pub fn reevaluate(state: &SuperpositionState, rule: &QuadratureRule) -> Result<f64> {
    RitzProblem { well: state.well, rule, kappa: state.kappa }
        .solve(&state.configs, state.root)
        .map(|s| s.energy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0.0, &AnsatzConfig::new(3.7, 2.0, 9.0)), 3.7);
        assert!((phi(1.0, &AnsatzConfig::new(0.0, 0.0, 1.0)) - 2f64.ln()).abs() < 1e-15);
        let want = 9.0 / 5f64.sqrt() + 0.5 * 5f64.ln();
        assert!((phi(2.0, &AnsatzConfig::new(1.0, 2.0, 0.5)) - want).abs() < 1e-14);
        assert!((want - 4.8296414).abs() < 1e-7);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let c = AnsatzConfig::new(1.3, 0.4, 0.7);
        for r in [0.1, 0.9, 3.0, 20.0] {
            let h = 1e-6 * r;
            let fd = (phi(r + h, &c) - phi(r - h, &c)) / (2.0 * h);
            assert!((fd - phi_derivative(r, &c)).abs() < 1e-7 * (1.0 + fd.abs()));
        }
    }

    #[test]
    fn radial_examples() {
        let s = WellSpec::new(1.0, 3, 0).unwrap();
        let p = WellSpec::new(1.0, 3, 1).unwrap();
        let c = AnsatzConfig::new(0.8, 0.3, 0.2);
        assert!((trial_radial(0.0, &c, &s) - (-0.8f64).exp()).abs() < 1e-15);
        assert_eq!(trial_radial(0.0, &c, &p), 0.0);
        let c = AnsatzConfig::new(0.0, 1.0, 0.0);
        let want = (-9.0 / 10f64.sqrt()).exp();
        assert!((trial_radial(3.0, &c, &s) - want).abs() < 1e-15);
        assert!((want - 0.0580733).abs() < 1e-7);
    }

    #[test]
    fn normalizability_rules() {
        let w = WellSpec::new(1.0, 3, 0).unwrap();
        assert!(AnsatzConfig::new(1.0, 0.1, 0.0).is_normalizable(&w));
        assert!(!AnsatzConfig::new(1.0, -0.1, 2.0).is_normalizable(&w));
        assert!(!AnsatzConfig::new(1.0, 0.0, 0.5).is_normalizable(&w));
        assert!(AnsatzConfig::new(1.0, 0.0, 0.9).is_normalizable(&w));
    }

    #[test]
    fn coincident_configs_rejected() {
        let w = WellSpec::new(5.0, 3, 0).unwrap();
        let rule = QuadratureRule::half_line(16).unwrap();
        let c = AnsatzConfig::new(1.0, 0.5, 0.5);
        assert!(matches!(
            variational_energy(&w, &[c, c], &rule),
            Err(Error::DegenerateSuperposition(_))
        ));
    }

    #[test]
    fn coefficients_are_s_normalized() {
        let w = WellSpec::new(5.0, 3, 0).unwrap();
        let rule = QuadratureRule::half_line(16).unwrap();
        let cfg = [AnsatzConfig::new(0.2, 0.9, 0.3), AnsatzConfig::new(2.0, 1.5, 0.1)];
        let (_, c) = variational_energy(&w, &cfg, &rule).unwrap();
        let (_, s) = RitzProblem { well: w, rule: &rule, kappa: 1.0 }.matrices(&cfg);
        let norm: f64 = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| c[i] * s[(i, j)] * c[j]).sum();
        assert!((norm - 1.0).abs() < 1e-10);
    }
}
