//! Critical depths, their large-`h` extrapolation and near-threshold fits.
//!
//! With `A = T + C` (kinetic plus centrifugal, positive definite) and
//! `G = diag(e^{-(h r_i)²})`, the mesh Hamiltonian is `A - v0 G`. Its number of
//! negative eigenvalues equals the number of pencil eigenvalues `A x = μ G x`
//! below `v0`, so the mesh critical depths are exactly the `μ_k`. They are
//! computed from the Schur complement of `A` on the rows where `G` is not
//! negligible. A bisection on level existence is kept as an independent route.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{cholesky, dot, forward_substitute, least_squares, Matrix, SymmetricEigen};
use crate::math;
use crate::mesh::{build_mesh, centrifugal_vector, kinetic_matrix, MeshSpec};
use crate::spectrum::{bound_energies, solve_well, BoundState, WellSpec};

/// Gaussian weights below this are treated as zero in the pencil.
const WEIGHT_CUTOFF: f64 = 1e-40;

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalQuery {
    pub d: u32,
    pub ell: u32,
    pub n: usize,
    pub mesh_sizes: Vec<usize>,
    pub h_grid: Vec<f64>,
    /// Bisection tolerance on `v0`.
    pub tolerance: f64,
}

impl CriticalQuery {
    /// Defaults: meshes of 1000 and 2000 points, `h = 1.5^k` for `k < 8`.
    pub fn new(d: u32, ell: u32, n: usize) -> Self {
        CriticalQuery {
            d,
            ell,
            n,
            mesh_sizes: vec![1000, 2000],
            h_grid: geometric_grid(1.0, 1.5, 8),
            tolerance: if ell == 0 { 1e-6 } else { 1e-8 },
        }
    }

    pub fn nu(&self) -> u32 {
        self.d + 2 * self.ell
    }

    /// Zero-based position of the level among those of the same `ℓ`.
    pub fn level_index(&self) -> Result<usize> {
        if self.n < self.ell as usize + 1 {
            return Err(Error::InvalidInput("principal label must exceed l"));
        }
        Ok(self.n - self.ell as usize - 1)
    }

    pub fn validate(&self) -> Result<()> {
        WellSpec::new(0.0, self.d, self.ell)?;
        self.level_index()?;
        if self.h_grid.iter().any(|h| !(*h > 0.0)) || self.h_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("h grid must be positive and strictly ascending"));
        }
        if !(self.tolerance > 0.0 && self.tolerance <= 1e-6) {
            return Err(Error::InvalidInput("tolerance must lie in (0, 1e-6]"));
        }
        Ok(())
    }
}

pub fn geometric_grid(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start * math::powi(ratio, k as i32)).collect()
}

/// Lowest `count` mesh critical depths for levels with index `nu`.
pub fn critical_depths(nu: u32, spec: MeshSpec, count: usize) -> Result<Vec<f64>> {
    if nu < 2 {
        return Err(Error::InvalidInput("nu must be at least 2"));
    }
    let mesh = build_mesh(spec)?;
    let n = mesh.len();
    let mut a = kinetic_matrix(&mesh);
    a.add_diagonal(&centrifugal_vector(&mesh, nu));
    let g: Vec<f64> = mesh.scaled_points.iter().map(|r| math::exp(-r * r)).collect();
    let m = g.iter().take_while(|w| **w >= WEIGHT_CUTOFF).count();
    if m == 0 {
        return Err(Error::InvalidInput("no mesh point inside the well"));
    }
    // Reverse the ordering so the rows that carry weight come last; the
    // trailing block of the Cholesky factor then factors the Schur complement.
    let rev = Matrix::from_fn(n, n, |p, q| a[(n - 1 - p, n - 1 - q)]);
    let l = cholesky(&rev)?;
    let off = n - m;
    let lss = Matrix::from_fn(m, m, |i, j| if j <= i { l[(off + i, off + j)] } else { 0.0 });
    // Columns of W = L_SS⁻¹ G_S^{1/2}; position s maps to original index m-1-s.
    let mut w = Matrix::zeros(m, m);
    for s in 0..m {
        let mut col = vec![0.0; m];
        col[s] = math::sqrt(g[m - 1 - s]);
        forward_substitute(&lss, &mut col);
        for i in 0..m {
            w[(i, s)] = col[i];
        }
    }
    let wt = w.transpose();
    let gram = Matrix::from_fn(m, m, |i, j| dot(wt.row(i), wt.row(j)));
    let theta = SymmetricEigen::values(&gram)?;
    let mut mu: Vec<f64> = theta.iter().rev().filter(|t| **t > 0.0).map(|t| 1.0 / t).take(count).collect();
    mu.truncate(count);
    Ok(mu)
}

/// Mesh critical depth of the query's level at `(N, h)`.
pub fn find_critical(query: &CriticalQuery, n_mesh: usize, h: f64) -> Result<f64> {
    query.validate()?;
    let k = query.level_index()?;
    let spec = MeshSpec::for_nu(query.nu(), n_mesh, h);
    let mu = critical_depths(query.nu(), spec, k + 1)?;
    mu.get(k).copied().ok_or(Error::MissingLevel { n: query.n, ell: query.ell })
}

/// Whether the query's level is bound at depth `v0`.
pub fn level_is_bound(query: &CriticalQuery, v0: f64, spec: MeshSpec) -> Result<bool> {
    let well = WellSpec::new(v0, query.d, query.ell)?;
    Ok(bound_energies(&well, spec)?.len() > query.level_index()?)
}

/// Bisection on existence of the level inside `[lo, hi]`; independent of the pencil.
pub fn find_critical_bisection(
    query: &CriticalQuery,
    n_mesh: usize,
    h: f64,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    query.validate()?;
    let spec = MeshSpec::for_nu(query.nu(), n_mesh, h);
    if level_is_bound(query, lo, spec)? || !level_is_bound(query, hi, spec)? {
        return Err(Error::Bracketing { lo, hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > query.tolerance {
        let mid = 0.5 * (lo + hi);
        if level_is_bound(query, mid, spec)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub h: f64,
    pub v0c: f64,
}

/// `v0^c(h)` over the query's grid at one mesh size.
pub fn critical_curve(query: &CriticalQuery, n_mesh: usize) -> Result<Vec<CurvePoint>> {
    query.validate()?;
    query
        .h_grid
        .iter()
        .map(|&h| Ok(CurvePoint { h, v0c: find_critical(query, n_mesh, h)? }))
        .collect()
}

/// Number of leading curve points before the mesh loses the state.
///
/// A healthy curve decreases with geometrically shrinking steps. The cap is
/// placed at the first step that rises, that is larger than the previous one
/// by more than `1e-3`, or whose step ratio departs from the running ratio.
pub fn usable_prefix(curve: &[CurvePoint]) -> usize {
    if curve.len() < 3 {
        return curve.len();
    }
    let steps: Vec<f64> = curve.windows(2).map(|w| w[0].v0c - w[1].v0c).collect();
    let mut keep = 2;
    let mut last_ratio: Option<f64> = None;
    for k in 1..steps.len() {
        let (prev, cur) = (steps[k - 1], steps[k]);
        if cur < -1e-5 || cur - prev > 1e-3 {
            break;
        }
        if prev > 1e-9 {
            let q = cur / prev;
            if !(q > 0.0 && q < 1.0) {
                break;
            }
            if let Some(lq) = last_ratio {
                if math::abs(q - lq) > 0.1 {
                    break;
                }
            }
            last_ratio = Some(q);
        }
        keep = k + 2;
    }
    keep
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalFit {
    pub beta: [f64; 4],
    pub tau: f64,
    /// RMS deviation of the fitted curve over the samples used.
    pub residual: f64,
    pub samples: Vec<(f64, f64)>,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolation {
    /// Fit at the largest mesh size.
    pub fit: CriticalFit,
    /// `(N, fit)` for every mesh size, ascending in `N`.
    pub per_mesh: Vec<(usize, CriticalFit)>,
    /// Decimal places on which the two largest meshes agree.
    pub stable_decimals: u32,
}

impl Extrapolation {
    pub fn value(&self) -> f64 {
        self.fit.beta[0]
    }
}

const TAU_RANGE: (f64, f64) = (0.5, 2.0);

fn series_design(samples: &[(f64, f64)], tau: f64) -> Matrix {
    Matrix::from_fn(samples.len(), 4, |i, n| math::powf(samples[i].0, -(n as f64) * tau))
}

fn series_fit(samples: &[(f64, f64)], tau: f64) -> Result<([f64; 4], f64)> {
    let x = series_design(samples, tau);
    let y: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let (b, _) = least_squares(&x, &y)?;
    let fitted = x.mul_vec(&b);
    let rss: f64 = fitted.iter().zip(&y).map(|(f, y)| (f - y) * (f - y)).sum();
    Ok(([b[0], b[1], b[2], b[3]], math::sqrt(rss / samples.len() as f64)))
}

/// Fits `Σ_{n<4} β_n h^{-nτ}` by variable projection: linear in `β`, a bounded
/// one-dimensional search in `τ` started from `τ = 1`.
pub fn fit_h_series(samples: &[(f64, f64)]) -> Result<CriticalFit> {
    if samples.len() < 5 {
        return Err(Error::InvalidInput("h-series fit needs at least five samples"));
    }
    let objective = |t: f64| series_fit(samples, t).map(|r| r.1).unwrap_or(f64::INFINITY);
    let (lo, hi) = TAU_RANGE;
    let steps = 60;
    let grid: Vec<f64> = (0..=steps).map(|k| lo + (hi - lo) * k as f64 / steps as f64).collect();
    let mut best_t = 1.0;
    let mut best = objective(1.0);
    for &t in &grid {
        let v = objective(t);
        if v < best * (1.0 - 1e-9) {
            best = v;
            best_t = t;
        }
    }
    let dt = (hi - lo) / steps as f64;
    let (mut a, mut b) = ((best_t - dt).max(lo), (best_t + dt).min(hi));
    let phi = 0.5 * (math::sqrt(5.0) - 1.0);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (objective(c), objective(d));
    while b - a > 1e-10 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = objective(d);
        }
    }
    let t_golden = 0.5 * (a + b);
    let tau = if objective(t_golden) < best { t_golden } else { best_t };
    let (beta, residual) = series_fit(samples, tau)?;
    let at_bound = tau - lo < 1e-6 || hi - tau < 1e-6;
    Ok(CriticalFit {
        beta,
        tau,
        residual,
        samples: samples.to_vec(),
        flagged: residual > 1e-4 || at_bound || samples.len() < 6,
    })
}

/// Critical depth in the `h → ∞` limit from the curves at every mesh size.
pub fn extrapolate_critical(query: &CriticalQuery) -> Result<Extrapolation> {
    query.validate()?;
    let mut sizes = query.mesh_sizes.clone();
    sizes.sort_unstable();
    if sizes.is_empty() {
        return Err(Error::InvalidInput("at least one mesh size is required"));
    }
    let mut per_mesh = Vec::with_capacity(sizes.len());
    for &n in &sizes {
        let curve = critical_curve(query, n)?;
        let keep = usable_prefix(&curve).max(5.min(curve.len()));
        let samples: Vec<(f64, f64)> = curve[..keep].iter().map(|p| (p.h, p.v0c)).collect();
        per_mesh.push((n, fit_h_series(&samples)?));
    }
    let fit = per_mesh.last().map(|p| p.1.clone()).ok_or(Error::InvalidInput("no fit"))?;
    let stable_decimals = match per_mesh.len() {
        0 | 1 => 0,
        k => agreeing_decimals(per_mesh[k - 2].1.beta[0], per_mesh[k - 1].1.beta[0]),
    };
    Ok(Extrapolation { fit, per_mesh, stable_decimals })
}

/// Largest `k ≤ 12` with `|a - b| < 0.5·10^{-k}`.
pub fn agreeing_decimals(a: f64, b: f64) -> u32 {
    let diff = math::abs(a - b);
    (0..=12u32).take_while(|k| diff < 0.5 * math::powi(10.0, -(*k as i32))).last().unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdKind {
    /// `E ≈ Σ_{n=2..4} γ_n δ^n`.
    SWave3D,
    /// `E ≈ ξ_2 δ + ξ_3 δ^{3/2} + ξ_4 δ²`.
    NonZeroL3D,
    /// `ln|E| ≈ ln|η_1| + η_2 / δ` with `δ = v0` (no finite critical depth).
    TwoDGround,
    /// `E ≈ η_1 δ / ln δ`.
    TwoDLog,
    /// `E ≈ η_1 δ`.
    TwoDLinear,
}

impl ThresholdKind {
    pub fn for_level(d: u32, ell: u32, n: usize) -> Result<Self> {
        match (d, ell) {
            (3, 0) => Ok(ThresholdKind::SWave3D),
            (3, _) => Ok(ThresholdKind::NonZeroL3D),
            (2, 0) if n == 1 => Ok(ThresholdKind::TwoDGround),
            (2, 0) => Ok(ThresholdKind::TwoDLog),
            (2, _) => Ok(ThresholdKind::TwoDLinear),
            _ => Err(Error::InvalidInput("threshold expansions exist for d = 2, 3 only")),
        }
    }

    /// Default sampling window in `v0 - v0_c`.
    pub fn default_window(&self) -> (f64, f64) {
        match self {
            ThresholdKind::TwoDGround => (0.5, 2.0),
            _ => (1e-3, 0.3),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdCoefficients {
    pub kind: ThresholdKind,
    pub values: Vec<f64>,
    pub v0_c: f64,
    pub window: (f64, f64),
    pub residual: f64,
    /// Residual of the alternative grouping `ln|E| = c + η_2/v0 - v0_c` (two-dimensional ground state only).
    pub alt_residual: Option<f64>,
}

/// Log-spaced samples `(v0, E)` of the level with `v0 - v0_c` spanning `window`.
pub fn threshold_samples(
    d: u32,
    ell: u32,
    n: usize,
    v0_c: f64,
    window: (f64, f64),
    count: usize,
    n_mesh: usize,
    h: f64,
) -> Result<Vec<(f64, f64)>> {
    if count < 2 || !(window.0 > 0.0 && window.1 > window.0) {
        return Err(Error::InvalidInput("sampling window must be positive and ordered"));
    }
    let k = n.checked_sub(ell as usize + 1).ok_or(Error::InvalidInput("principal label must exceed l"))?;
    let (l0, l1) = (math::ln(window.0), math::ln(window.1));
    (0..count)
        .map(|i| {
            let delta = math::exp(l0 + (l1 - l0) * i as f64 / (count - 1) as f64);
            let well = WellSpec::new(v0_c + delta, d, ell)?;
            let e = bound_energies(&well, MeshSpec::for_well(&well, n_mesh, h))?;
            e.get(k).map(|e| (v0_c + delta, *e)).ok_or(Error::MissingLevel { n, ell })
        })
        .collect()
}

fn rms(v: impl Iterator<Item = f64>) -> f64 {
    let (mut s, mut k) = (0.0, 0usize);
    for x in v {
        s += x * x;
        k += 1;
    }
    math::sqrt(s / k.max(1) as f64)
}

pub fn fit_threshold(
    d: u32,
    ell: u32,
    n: usize,
    v0_c: f64,
    samples: &[(f64, f64)],
) -> Result<ThresholdCoefficients> {
    let kind = ThresholdKind::for_level(d, ell, n)?;
    if samples.iter().any(|(v, _)| *v <= v0_c) {
        return Err(Error::InvalidInput("threshold samples must lie above the critical depth"));
    }
    if samples.len() < 3 {
        return Err(Error::InvalidInput("at least three threshold samples are required"));
    }
    let deltas: Vec<f64> = samples.iter().map(|(v, _)| v - v0_c).collect();
    let energies: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let window = deltas.iter().fold((f64::INFINITY, 0.0f64), |(a, b), x| (a.min(*x), b.max(*x)));
    let linear = |powers: [f64; 3]| -> Result<(Vec<f64>, f64)> {
        let x = Matrix::from_fn(deltas.len(), 3, |i, j| math::powf(deltas[i], powers[j]));
        let (b, cond) = least_squares(&x, &energies)?;
        if cond > 1e10 {
            return Err(Error::IllConditioned(cond));
        }
        let fitted = x.mul_vec(&b);
        Ok((b, rms(fitted.iter().zip(&energies).map(|(f, e)| f - e))))
    };
    let (values, residual, alt_residual) = match kind {
        ThresholdKind::SWave3D => {
            let (b, r) = linear([2.0, 3.0, 4.0])?;
            (b, r, None)
        }
        ThresholdKind::NonZeroL3D => {
            let (b, r) = linear([1.0, 1.5, 2.0])?;
            (b, r, None)
        }
        ThresholdKind::TwoDGround => {
            if energies.iter().any(|e| *e >= 0.0) {
                return Err(Error::InvalidInput("log fit needs negative energies"));
            }
            let y: Vec<f64> = energies.iter().map(|e| math::ln(-e)).collect();
            let line = |inv: &dyn Fn(usize) -> f64, shift: f64| -> Result<(Vec<f64>, f64)> {
                let x = Matrix::from_fn(y.len(), 2, |i, j| if j == 0 { 1.0 } else { inv(i) });
                let yy: Vec<f64> = y.iter().map(|v| v + shift).collect();
                let (b, cond) = least_squares(&x, &yy)?;
                if cond > 1e10 {
                    return Err(Error::IllConditioned(cond));
                }
                let f = x.mul_vec(&b);
                Ok((b, rms(f.iter().zip(&yy).map(|(a, b)| a - b))))
            };
            let (a, ra) = line(&|i| 1.0 / deltas[i], 0.0)?;
            let (_, rb) = line(&|i| 1.0 / samples[i].0, v0_c)?;
            (alloc::vec![-math::exp(a[0]), a[1]], ra, Some(rb))
        }
        ThresholdKind::TwoDLog | ThresholdKind::TwoDLinear => {
            let ratio: Vec<f64> = deltas
                .iter()
                .zip(&energies)
                .map(|(dl, e)| match kind {
                    ThresholdKind::TwoDLog => e * math::ln(*dl) / dl,
                    _ => e / dl,
                })
                .collect();
            let mean = ratio.iter().sum::<f64>() / ratio.len() as f64;
            (alloc::vec![mean], rms(ratio.iter().map(|r| r - mean)), None)
        }
    };
    Ok(ThresholdCoefficients { kind, values, v0_c, window, residual, alt_residual })
}

/// `∂E/∂v0 = -Σ c_i² e^{-(h r_i)²}`.
pub fn hellmann_feynman_slope(state: &BoundState) -> f64 {
    -state
        .coefficients
        .iter()
        .zip(&state.mesh.scaled_points)
        .map(|(c, r)| c * c * math::exp(-r * r))
        .sum::<f64>()
}

/// The level just above its critical depth, at `v0_c + offset`.
pub fn threshold_state(
    d: u32,
    ell: u32,
    n: usize,
    v0_c: f64,
    offset: f64,
    n_mesh: usize,
    h: f64,
) -> Result<BoundState> {
    let well = WellSpec::new(v0_c + offset, d, ell)?;
    let spectrum = solve_well(&well, MeshSpec::for_well(&well, n_mesh, h))?;
    spectrum.state(n).cloned().ok_or(Error::MissingLevel { n, ell })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Mesh;
    use alloc::sync::Arc;

    #[test]
    fn pencil_agrees_with_bisection() {
        for (d, ell, n, lo, hi) in [(3, 1, 2, 5.5, 6.5), (3, 0, 2, 8.0, 9.5), (2, 1, 3, 12.0, 13.5)] {
            let q = CriticalQuery { tolerance: 1e-9, ..CriticalQuery::new(d, ell, n) };
            let a = find_critical(&q, 120, 1.0).unwrap();
            let b = find_critical_bisection(&q, 120, 1.0, lo, hi).unwrap();
            assert!((a - b).abs() < 2e-9, "{d} {ell} {n}: {a} vs {b}");
        }
    }

    #[test]
    fn bisection_rejects_bad_bracket() {
        let q = CriticalQuery::new(3, 1, 2);
        assert!(matches!(find_critical_bisection(&q, 80, 1.0, 7.0, 8.0), Err(Error::Bracketing { .. })));
    }

    #[test]
    fn constant_samples_fit_exactly() {
        let s: Vec<(f64, f64)> = geometric_grid(1.0, 1.5, 7).into_iter().map(|h| (h, 5.0)).collect();
        let f = fit_h_series(&s).unwrap();
        assert!((f.beta[0] - 5.0).abs() < 1e-12);
        for b in &f.beta[1..] {
            assert!(b.abs() < 1e-10);
        }
        assert!(f.residual < 1e-12);
    }

    #[test]
    fn synthetic_series_recovered() {
        let s: Vec<(f64, f64)> = geometric_grid(1.0, 1.5, 8)
            .into_iter()
            .map(|h: f64| (h, 2.0 + 0.3 * h.powf(-1.2) - 0.1 * h.powf(-2.4) + 0.05 * h.powf(-3.6)))
            .collect();
        let f = fit_h_series(&s).unwrap();
        assert!((f.tau - 1.2).abs() < 1e-5, "{}", f.tau);
        assert!((f.beta[0] - 2.0).abs() < 1e-7);
    }

    #[test]
    fn square_law_recovered_exactly() {
        let samples: Vec<(f64, f64)> = (0..30)
            .map(|i| {
                let dl = 1e-3 * (300f64).powf(i as f64 / 29.0);
                (1.0 + dl, -dl * dl)
            })
            .collect();
        let c = fit_threshold(3, 0, 1, 1.0, &samples).unwrap();
        assert!((c.values[0] + 1.0).abs() < 1e-10);
        assert!(c.values[1].abs() < 1e-9 && c.values[2].abs() < 1e-8);
    }

    #[test]
    fn prefix_stops_at_breakdown() {
        let v = [10.0, 9.0, 8.5, 8.25, 8.125, 9.0, 3.0];
        let curve: Vec<CurvePoint> = v.iter().enumerate().map(|(i, v)| CurvePoint { h: i as f64 + 1.0, v0c: *v }).collect();
        assert_eq!(usable_prefix(&curve), 5);
    }

    #[test]
    fn slope_of_distant_state_vanishes() {
        let mesh = Mesh { spec: MeshSpec::laguerre(2, 1.0), points: vec![1.0, 50.0], scaled_points: vec![1.0, 50.0] };
        let s = BoundState { n: 1, ell: 0, energy: -1.0, coefficients: vec![0.0, 1.0], mesh: Arc::new(mesh) };
        assert_eq!(hellmann_feynman_slope(&s), 0.0);
    }

    #[test]
    fn decimals_agreement() {
        assert_eq!(agreeing_decimals(1.3420021, 1.3420024), 6);
        assert_eq!(agreeing_decimals(1.0, 1.3), 0);
    }
}
