//! Two electrons in a three-dimensional Gaussian dot,
//! `H = Σ_i [-½∇_i² - V0 e^{-λ r_i²}] + 1/r12`.
//!
//! In `x = √λ r` the Hamiltonian is `λ [Σ_i (-½∇_i² - v0 e^{-x_i²}) + 1/(√λ x12)]`
//! with `v0 = V0/λ`. The trial state is a product of two frozen one-particle
//! orbitals with stretched arguments times a cusp-respecting Jastrow factor;
//! integrals run over `(x1, x2, x12)` with measure `x1 x2 x12`.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ansatz::{optimize, phi, phi_derivative, AnsatzConfig};
use crate::error::{Error, Result};
use crate::math;
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::quadrature::{gauss_legendre, QuadratureRule};
use crate::spectrum::WellSpec;

const GAMMA_GRID: f64 = 281_474_976_710_656.0; // 2^48
const MAX_GAMMA: f64 = 16.0;

/// Critical one-body depth of the 3D s-wave ground state.
pub const GROUND_CRITICAL_DEPTH: f64 = 1.342002;

// Radial panels cover [0, 2^RADIAL_HI] in scaled units.
const RADIAL_LO: i32 = -7;
const RADIAL_HI: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QDotModel {
    /// Gaussian width λ.
    pub lambda: f64,
    /// Depth V0 in Hartree.
    pub depth: f64,
    /// Electron–electron repulsion switch (off only for separable-limit checks).
    pub coulomb: bool,
}

impl QDotModel {
    pub fn new(lambda: f64, depth: f64) -> Self {
        QDotModel { lambda, depth, coulomb: true }
    }

    /// One-body depth in scaled units.
    pub fn v0(&self) -> f64 {
        self.depth / self.lambda
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(Error::InvalidInput("dot width must be positive"));
        }
        if !(self.depth > 0.0) || !self.depth.is_finite() {
            return Err(Error::InvalidInput("dot depth must be positive"));
        }
        if !(self.v0() > GROUND_CRITICAL_DEPTH) {
            return Err(Error::InvalidInput("V0/lambda does not bind a one-particle orbital"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QDotTrial {
    pub chi0: AnsatzConfig,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta1: f64,
    pub delta2: f64,
}

impl QDotTrial {
    /// Unit scalers and no exponential correlation; the linear cusp factor remains.
    pub fn new(chi0: AnsatzConfig) -> Self {
        QDotTrial { chi0, alpha: 1.0, beta: 1.0, gamma: 0.0, delta1: 0.0, delta2: 0.0 }
    }

    /// `γ` rounded to a multiple of `2^-48`. For `|γ| < 16` both `½ - γ` and
    /// `(½ - γ) + γ` are then exact, so the cusp holds to the last bit.
    pub fn gamma_effective(&self) -> f64 {
        math::round(self.gamma * GAMMA_GRID) / GAMMA_GRID
    }

    /// Linear Jastrow coefficient, tied to the cusp.
    pub fn c(&self) -> f64 {
        0.5 - self.gamma_effective()
    }

    fn params(&self) -> [f64; 5] {
        [self.alpha, self.beta, self.gamma, self.delta1, self.delta2]
    }

    fn with_params(&self, p: &[f64]) -> Self {
        QDotTrial { chi0: self.chi0, alpha: p[0], beta: p[1], gamma: p[2], delta1: p[3], delta2: p[4] }
    }

    /// Square integrability: the correlation exponent may grow at most
    /// linearly in `r12`, slower than either orbital decays.
    pub fn is_normalizable(&self) -> bool {
        let p = self.params();
        if p.iter().any(|x| !x.is_finite()) || self.delta2 < 0.0 || self.alpha == 0.0 || self.beta == 0.0 {
            return false;
        }
        if !(math::abs(self.gamma) < MAX_GAMMA) {
            return false;
        }
        let gamma = self.gamma_effective();
        let growth = if self.delta2 > 0.0 {
            gamma * self.delta1 / self.delta2
        } else if gamma * self.delta1 > 0.0 {
            return false;
        } else if self.delta1 == 0.0 {
            gamma
        } else {
            f64::NEG_INFINITY
        };
        let a2 = self.alpha * self.alpha;
        let b2 = self.beta * self.beta;
        let decay = self.chi0.b * a2.min(b2);
        if self.chi0.b > 0.0 {
            growth < decay
        } else {
            growth <= 0.0
        }
    }

    fn jastrow_exponent(&self, r12: f64) -> f64 {
        self.gamma_effective() * r12 * (1.0 + self.delta1 * r12) / (1.0 + self.delta2 * r12)
    }

    /// `∂ log Ψ / ∂ r12`.
    fn jastrow_log_derivative(&self, r12: f64) -> f64 {
        let den = 1.0 + self.delta2 * r12;
        let q = (1.0 + self.delta1 * r12) / den;
        let dq = (self.delta1 - self.delta2) / (den * den);
        let c = self.c();
        c / (1.0 + c * r12) + self.gamma_effective() * (q + r12 * dq)
    }
}

/// `Ψ(r1, r2, r12)`; the three distances must form a triangle.
pub fn trial_value(r1: f64, r2: f64, r12: f64, trial: &QDotTrial) -> Result<f64> {
    let slack = 1e-12 * (r1 + r2).max(1.0);
    if !(r1 >= 0.0 && r2 >= 0.0 && r12 >= 0.0) || r12 + slack < math::abs(r1 - r2) || r12 > r1 + r2 + slack {
        return Err(Error::InvalidInput("distances violate the triangle inequality"));
    }
    let a2 = trial.alpha * trial.alpha;
    let b2 = trial.beta * trial.beta;
    let orbital = -phi(a2 * r1, &trial.chi0) - phi(b2 * r2, &trial.chi0);
    Ok(math::exp(orbital + trial.jastrow_exponent(r12)) * (1.0 + trial.c() * r12))
}

/// `∂ log Ψ / ∂ r12` at coalescence: `c + γ`.
pub fn cusp_log_derivative(trial: &QDotTrial) -> f64 {
    trial.jastrow_log_derivative(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QDotOrders {
    /// Gauss–Legendre nodes per radial octave.
    pub radial: usize,
    /// Gauss–Legendre nodes in `t`, with `r12 = |r1 - r2| + 2 t min(r1, r2)`.
    pub angular: usize,
}

impl QDotOrders {
    pub const DEFAULT: QDotOrders = QDotOrders { radial: 8, angular: 24 };
    /// Coarser grid used inside the optimizer.
    pub const SEARCH: QDotOrders = QDotOrders { radial: 6, angular: 12 };

    pub fn doubled(&self) -> Self {
        QDotOrders { radial: 2 * self.radial, angular: 2 * self.angular }
    }
}

impl Default for QDotOrders {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QDotResult {
    pub model: QDotModel,
    /// Hartree, unscaled.
    pub energy: f64,
    /// `⟨1/r12⟩` in the original units.
    pub inv_r12: f64,
    /// `⟨1/x12⟩` in the scaled coordinates `x = √λ r`.
    pub inv_x12: f64,
    pub trial: QDotTrial,
    pub orders: QDotOrders,
    /// `|E(orders) - E(doubled orders)|`, when computed.
    pub doubling_shift: Option<f64>,
    pub flagged: bool,
}

impl QDotResult {
    /// `λ⟨1/x12⟩ = √λ⟨1/r12⟩`: the scaled expectation carried through the same
    /// factor `λ` as the energy. This is the convention of the tabulated dot data.
    pub fn inv_r12_tabulated(&self) -> f64 {
        self.model.lambda * self.inv_x12
    }
}

/// Largest order-doubling shift accepted without flagging.
pub const DOUBLING_TOLERANCE: f64 = 1e-4;

/// Quadrature grid with the wave-function-independent factors precomputed.
///
/// The `(r1, r2)` quadrant is split along `r1 = r2` and each half is mapped
/// to `(ρ, u)` with the smaller radius `ρu`, so `|r1 - r2|` never crosses a
/// panel interior.
#[derive(Debug, Clone)]
pub struct QDotGrid {
    orders: QDotOrders,
    rho: Vec<f64>,
    w_rho: Vec<f64>,
    u: Vec<f64>,
    wu: Vec<f64>,
    t: Vec<f64>,
    wt: Vec<f64>,
}

fn unit_interval(m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x, w) = gauss_legendre(m)?;
    Ok((x.iter().map(|x| 0.5 * (x + 1.0)).collect(), w.iter().map(|w| 0.5 * w).collect()))
}

impl QDotGrid {
    pub fn new(orders: QDotOrders) -> Result<Self> {
        if orders.radial == 0 || orders.angular == 0 {
            return Err(Error::InvalidInput("quadrature orders must be positive"));
        }
        let rule = QuadratureRule::geometric(orders.radial, RADIAL_LO, RADIAL_HI)?;
        let (u, wu) = unit_interval(orders.angular)?;
        let (t, wt) = unit_interval(orders.angular)?;
        Ok(QDotGrid { orders, rho: rule.nodes, w_rho: rule.weights, u, wu, t, wt })
    }

    pub fn orders(&self) -> QDotOrders {
        self.orders
    }
}

#[derive(Default)]
struct Sums {
    norm: f64,
    kinetic: f64,
    well: f64,
    inv_r12: f64,
}

struct Orbital {
    log: f64,
    grad: f64,
}

fn orbital(r: f64, scale2: f64, chi: &AnsatzConfig) -> Orbital {
    Orbital { log: -phi(scale2 * r, chi), grad: -scale2 * phi_derivative(scale2 * r, chi) }
}

/// Adds the `r12` line integral at fixed `(r1, r2)` with weight `w`.
fn add_pair(s: &mut Sums, grid: &QDotGrid, trial: &QDotTrial, r1: f64, r2: f64, w: f64) {
    let a = orbital(r1, trial.alpha * trial.alpha, &trial.chi0);
    let b = orbital(r2, trial.beta * trial.beta, &trial.chi0);
    let base = a.log + b.log + 2.0 * trial.chi0.a;
    let lo = math::abs(r1 - r2);
    let span = 2.0 * r1.min(r2);
    let w = w * span * r1 * r2;
    let c = trial.c();
    let (mut n, mut k, mut inv) = (0.0, 0.0, 0.0);
    for (&t, &wt) in grid.t.iter().zip(&grid.wt) {
        let r12 = lo + t * span;
        let lin = 1.0 + c * r12;
        let amp = math::exp(base + trial.jastrow_exponent(r12));
        let rho = amp * amp * lin * lin * wt * r12;
        let g12 = trial.jastrow_log_derivative(r12);
        let cos1 = (r1 * r1 - r2 * r2 + r12 * r12) / (2.0 * r1 * r12);
        let cos2 = (r2 * r2 - r1 * r1 + r12 * r12) / (2.0 * r2 * r12);
        let kin = 0.5 * (a.grad * a.grad + b.grad * b.grad) + g12 * g12 + g12 * (a.grad * cos1 + b.grad * cos2);
        n += rho;
        k += rho * kin;
        inv += rho / r12;
    }
    s.norm += w * n;
    s.kinetic += w * k;
    s.well += w * n * (math::exp(-r1 * r1) + math::exp(-r2 * r2));
    s.inv_r12 += w * inv;
}

fn accumulate(grid: &QDotGrid, trial: &QDotTrial) -> Sums {
    let mut s = Sums::default();
    for (&rho, &w_rho) in grid.rho.iter().zip(&grid.w_rho) {
        for (&u, &wu) in grid.u.iter().zip(&grid.wu) {
            let w = w_rho * wu * rho;
            add_pair(&mut s, grid, trial, rho, rho * u, w);
            add_pair(&mut s, grid, trial, rho * u, rho, w);
        }
    }
    s
}

/// Energy and `⟨1/r12⟩` on a single grid, without the doubling check.
pub fn qdot_energy_on(model: &QDotModel, trial: &QDotTrial, grid: &QDotGrid) -> Result<QDotResult> {
    model.validate()?;
    if !trial.is_normalizable() {
        return Err(Error::InvalidInput("trial state is not square integrable"));
    }
    let s = accumulate(grid, trial);
    if !(s.norm > 0.0) || !s.norm.is_finite() {
        return Err(Error::NotNormalized(s.norm));
    }
    let sqrt_lambda = math::sqrt(model.lambda);
    let inv_scaled = s.inv_r12 / s.norm;
    let coulomb = if model.coulomb { inv_scaled / sqrt_lambda } else { 0.0 };
    let scaled = s.kinetic / s.norm - model.v0() * s.well / s.norm + coulomb;
    let energy = model.lambda * scaled;
    if !energy.is_finite() {
        return Err(Error::NotNormalized(s.norm));
    }
    Ok(QDotResult {
        model: *model,
        energy,
        inv_r12: sqrt_lambda * inv_scaled,
        inv_x12: inv_scaled,
        trial: *trial,
        orders: grid.orders,
        doubling_shift: None,
        flagged: false,
    })
}

/// Energy at `orders`, flagged when doubling the orders moves it by more than [`DOUBLING_TOLERANCE`].
pub fn qdot_energy(model: &QDotModel, trial: &QDotTrial, orders: QDotOrders) -> Result<QDotResult> {
    let mut r = qdot_energy_on(model, trial, &QDotGrid::new(orders)?)?;
    let fine = qdot_energy_on(model, trial, &QDotGrid::new(orders.doubled())?)?;
    let shift = math::abs(fine.energy - r.energy);
    r.doubling_shift = Some(shift);
    r.flagged = !(shift <= DOUBLING_TOLERANCE);
    Ok(r)
}

/// One-particle K = 1 orbital for `v0 = V0/λ`.
pub fn freeze_orbital(model: &QDotModel) -> Result<AnsatzConfig> {
    freeze_orbital_seeded(model, 4, 0)
}

pub fn freeze_orbital_seeded(model: &QDotModel, restarts: usize, seed: u64) -> Result<AnsatzConfig> {
    model.validate()?;
    let well = WellSpec::new(model.v0(), 3, 0)?;
    Ok(optimize(&well, 1, restarts, seed)?.configs[0])
}

#[derive(Debug, Clone, Copy)]
pub struct QDotOptimizeOptions {
    pub restarts: usize,
    pub seed: u64,
    pub search: QDotOrders,
    pub report: QDotOrders,
    pub simplex: NelderMeadOptions,
}

impl Default for QDotOptimizeOptions {
    fn default() -> Self {
        QDotOptimizeOptions {
            restarts: 6,
            seed: 0,
            search: QDotOrders::SEARCH,
            report: QDotOrders::DEFAULT,
            simplex: NelderMeadOptions { max_evals: 3000, f_tol: 1e-10, x_tol: 1e-7, initial_step: 0.2 },
        }
    }
}

pub fn optimize_qdot(model: &QDotModel, restarts: usize, seed: u64) -> Result<QDotResult> {
    optimize_qdot_with(model, &QDotOptimizeOptions { restarts, seed, ..Default::default() })
}

/// Simplex search over `(α, β, γ, δ1, δ2)` with the orbital frozen and `c = ½ - γ`.
///
/// The first start has equal scalers and a weak correlation; the rest are
/// drawn at random, alternating symmetric and asymmetric scalers. The winner is re-evaluated at the report orders.
pub fn optimize_qdot_with(model: &QDotModel, opts: &QDotOptimizeOptions) -> Result<QDotResult> {
    model.validate()?;
    if opts.restarts == 0 {
        return Err(Error::InvalidInput("need at least one restart"));
    }
    let chi0 = freeze_orbital(model)?;
    let base = QDotTrial { delta2: 0.1, ..QDotTrial::new(chi0) };
    let grid = QDotGrid::new(opts.search)?;
    let objective = |p: &[f64]| {
        qdot_energy_on(model, &base.with_params(p), &grid).map(|r| r.energy).unwrap_or(f64::INFINITY)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for k in 0..opts.restarts {
        let mut x0 = base.params();
        if k > 0 {
            let a = rng.random_range(0.8..1.2);
            let asym = if k % 2 == 0 { 1.0 } else { rng.random_range(0.9..1.1) };
            x0 = [
                a,
                a * asym,
                rng.random_range(-1.0..1.5),
                rng.random_range(-2.0..2.0),
                rng.random_range(0.0..3.0),
            ];
        }
        let first = nelder_mead(objective, &x0, opts.simplex);
        let m = nelder_mead(objective, &first.x, opts.simplex);
        let m = if m.value <= first.value { m } else { first };
        if best.as_ref().is_none_or(|b| m.value < b.1) {
            best = Some((m.x, m.value));
        }
    }
    let (x, _) = best.ok_or(Error::InvalidInput("no restart produced a finite energy"))?;
    qdot_energy(model, &base.with_params(&x), opts.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi() -> AnsatzConfig {
        AnsatzConfig::new(8.9208, 4.5340, 2.7478)
    }

    #[test]
    fn coalescence_reduces_to_orbitals() {
        let t = QDotTrial { gamma: 0.3, delta1: 0.2, delta2: 0.4, ..QDotTrial::new(chi()) };
        let v = trial_value(0.7, 0.7, 0.0, &t).unwrap();
        let want = (-2.0 * phi(0.7, &chi())).exp();
        assert!((v - want).abs() <= 1e-15 * want);
    }

    #[test]
    fn exchange_symmetry_for_equal_scalers() {
        let t = QDotTrial { alpha: 0.9, beta: 0.9, gamma: -0.1, delta1: 0.3, delta2: 0.2, chi0: chi() };
        let a = trial_value(0.3, 1.1, 0.95, &t).unwrap();
        let b = trial_value(1.1, 0.3, 0.95, &t).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn triangle_violation_rejected() {
        let t = QDotTrial::new(chi());
        assert!(trial_value(1.0, 0.2, 0.5, &t).is_err());
        assert!(trial_value(1.0, 0.2, 1.5, &t).is_err());
    }

    #[test]
    fn cusp_matches_difference_quotient() {
        let t = QDotTrial { gamma: 0.2, delta1: 0.4, delta2: 0.7, ..QDotTrial::new(chi()) };
        assert_eq!(cusp_log_derivative(&t), 0.5);
        let h = 1e-6;
        let f = |x: f64| trial_value(0.8, 0.8, x, &t).unwrap().ln();
        assert!(((f(h) - f(0.0)) / h - 0.5).abs() < 1e-5);
    }

    #[test]
    fn runaway_correlation_rejected() {
        let mut t = QDotTrial::new(chi());
        t.gamma = 0.5;
        t.delta1 = 0.5;
        assert!(!t.is_normalizable());
        t.delta2 = -0.1;
        assert!(!t.is_normalizable());
        t.delta2 = 1.0;
        assert!(t.is_normalizable());
    }

    #[test]
    fn subcritical_dot_rejected() {
        assert!(QDotModel::new(1.0, 1.0).validate().is_err());
        assert!(QDotModel::new(0.5, 10.0).validate().is_ok());
    }
}
