//! Laguerre-type Lagrange meshes on the half line.
//!
//! Points are zeros of `L_N^α`, found from the Jacobi matrix of the three-term
//! recurrence and polished with Newton steps. Kinetic matrices are the closed
//! forms for the regularized Lagrange basis; every matrix represents
//! `-½ d²/dr²` (plus `α(α-2)/(8r²)` for the generalized family), so the
//! Hamiltonian is simply `T + diag(U)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{tridiagonal_eigenvalues, Matrix};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshFamily {
    Laguerre,
    GeneralizedLaguerre { alpha: f64 },
}

impl MeshFamily {
    pub fn alpha(&self) -> f64 {
        match *self {
            MeshFamily::Laguerre => 0.0,
            MeshFamily::GeneralizedLaguerre { alpha } => alpha,
        }
    }

    /// Centrifugal strength `α(α-2)` already carried by the kinetic matrix.
    fn built_in_centrifugal(&self) -> f64 {
        match *self {
            MeshFamily::Laguerre => 0.0,
            MeshFamily::GeneralizedLaguerre { alpha } => alpha * (alpha - 2.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshSpec {
    pub family: MeshFamily,
    pub n: usize,
    pub h: f64,
}

impl MeshSpec {
    pub fn laguerre(n: usize, h: f64) -> Self {
        MeshSpec { family: MeshFamily::Laguerre, n, h }
    }

    pub fn generalized(n: usize, h: f64, alpha: f64) -> Self {
        MeshSpec { family: MeshFamily::GeneralizedLaguerre { alpha }, n, h }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("mesh size must be at least 1"));
        }
        if !(self.h > 0.0) || !self.h.is_finite() {
            return Err(Error::InvalidInput("mesh scaling must be positive"));
        }
        if !(self.family.alpha() >= 0.0) {
            return Err(Error::InvalidInput("generalized Laguerre exponent must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub spec: MeshSpec,
    /// Unscaled roots, ascending.
    pub points: Vec<f64>,
    /// `h · points`.
    pub scaled_points: Vec<f64>,
}

impl Mesh {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn h(&self) -> f64 {
        self.spec.h
    }
}

/// `(L_n, L_{n-1})` at `x`, both divided by `2^log2_scale`.
struct ScaledLaguerre {
    p: f64,
    q: f64,
    log2_scale: i32,
}

const TWO_500: f64 = 3.273390607896142e150;

fn laguerre_pair(n: usize, alpha: f64, x: f64) -> ScaledLaguerre {
    let mut q = 1.0;
    let mut p = 1.0 + alpha - x;
    let mut log2_scale = 0i32;
    if n == 0 {
        return ScaledLaguerre { p: 1.0, q: 0.0, log2_scale: 0 };
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * p - (kf + alpha) * q) / (kf + 1.0);
        q = p;
        p = next;
        let m = math::abs(p).max(math::abs(q));
        if m > TWO_500 {
            p /= TWO_500;
            q /= TWO_500;
            log2_scale += 500;
        } else if m < 1.0 / TWO_500 && m > 0.0 {
            p *= TWO_500;
            q *= TWO_500;
            log2_scale -= 500;
        }
    }
    ScaledLaguerre { p, q, log2_scale }
}

/// Newton correction `L_N / L_N'` using `x L_N' = N L_N - (N+α) L_{N-1}`.
fn newton_step(n: usize, alpha: f64, x: f64) -> f64 {
    let s = laguerre_pair(n, alpha, x);
    let nf = n as f64;
    let denom = nf * s.p - (nf + alpha) * s.q;
    x * s.p / denom
}

fn polynomial_roots(n: usize, alpha: f64) -> Result<Vec<f64>> {
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| math::sqrt(k as f64 * (k as f64 + alpha))).collect();
    let mut roots = tridiagonal_eigenvalues(&diag, &off)?;
    for (i, r) in roots.iter_mut().enumerate() {
        // Near the origin the recurrence is only accurate to ~1e-12 relative,
        // so a couple of steps reach the noise floor.
        for _ in 0..3 {
            let step = newton_step(n, alpha, *r);
            if !step.is_finite() {
                return Err(Error::RootRefinement { index: i });
            }
            *r -= step;
            if math::abs(step) <= 1e-15 * *r {
                break;
            }
        }
        let converged = math::abs(newton_step(n, alpha, *r)) <= 1e-10 * *r;
        if !converged || !(*r > 0.0) {
            return Err(Error::RootRefinement { index: i });
        }
    }
    for i in 1..n {
        if !(roots[i] - roots[i - 1] > 1e-12 * roots[i]) {
            return Err(Error::RootRefinement { index: i });
        }
    }
    Ok(roots)
}

pub fn build_mesh(spec: MeshSpec) -> Result<Mesh> {
    spec.validate()?;
    let points = polynomial_roots(spec.n, spec.family.alpha())?;
    let scaled_points = points.iter().map(|r| spec.h * r).collect();
    Ok(Mesh { spec, points, scaled_points })
}

/// Relative residual `|L_N(x)| / |(N+α) L_{N-1}(x)|` at a point.
pub fn root_residual(mesh: &Mesh, i: usize) -> f64 {
    let a = mesh.spec.family.alpha();
    let n = mesh.spec.n;
    let s = laguerre_pair(n, a, mesh.points[i]);
    math::abs(s.p) / math::abs((n as f64 + a) * s.q)
}

pub fn kinetic_matrix(mesh: &Mesh) -> Matrix {
    let n = mesh.len();
    let x = &mesh.points;
    let nf = n as f64;
    let inv_h2 = 1.0 / (mesh.spec.h * mesh.spec.h);
    let mut t = Matrix::zeros(n, n);
    match mesh.spec.family {
        MeshFamily::Laguerre => {
            for i in 0..n {
                let xi = x[i];
                t[(i, i)] = (4.0 + (4.0 * nf + 2.0) * xi - xi * xi) / (24.0 * xi * xi) * inv_h2;
                for j in 0..i {
                    let xj = x[j];
                    let sign = if (i - j) % 2 == 0 { 1.0 } else { -1.0 };
                    let d = xi - xj;
                    let v = sign * (xi + xj) / (2.0 * math::sqrt(xi * xj) * d * d) * inv_h2;
                    t[(i, j)] = v;
                    t[(j, i)] = v;
                }
            }
        }
        MeshFamily::GeneralizedLaguerre { alpha: a } => {
            for i in 0..n {
                let xi = x[i];
                let diag = -1.0 / 12.0
                    + (2.0 * nf + a + 1.0) * (a + 4.0) / (6.0 * (a + 1.0) * xi)
                    + (a + 2.0) * (a - 5.0) / (6.0 * xi * xi);
                t[(i, i)] = 0.5 * diag * inv_h2;
                for j in 0..i {
                    let xj = x[j];
                    let sign = if (i - j) % 2 == 0 { 1.0 } else { -1.0 };
                    let d = xi - xj;
                    let bracket = nf / (a + 1.0) + 0.5 - (1.0 / xi + 1.0 / xj) + (xi + xj) / (d * d);
                    let v = 0.5 * sign * bracket / math::sqrt(xi * xj) * inv_h2;
                    t[(i, j)] = v;
                    t[(j, i)] = v;
                }
            }
        }
    }
    t
}

/// Centrifugal part of `U` not already represented by the kinetic matrix.
pub fn centrifugal_vector(mesh: &Mesh, nu: u32) -> Vec<f64> {
    let nu = nu as f64;
    let strength = (nu - 1.0) * (nu - 3.0) - mesh.spec.family.built_in_centrifugal();
    mesh.scaled_points.iter().map(|r| strength / (8.0 * r * r)).collect()
}

/// Diagonal potential `-v0 e^{-(h r_i)^2}` plus the centrifugal term for `nu = d + 2ℓ`.
pub fn potential_vector(mesh: &Mesh, v0: f64, nu: u32) -> Result<Vec<f64>> {
    if nu < 2 {
        return Err(Error::InvalidInput("nu = d + 2l must be at least 2"));
    }
    if !(v0 >= 0.0) {
        return Err(Error::InvalidInput("well depth must be non-negative"));
    }
    let c = centrifugal_vector(mesh, nu);
    Ok(mesh
        .scaled_points
        .iter()
        .zip(c)
        .map(|(r, c)| -v0 * math::exp(-r * r) + c)
        .collect())
}

/// `Σ c_i² g(h r_i)` for a normalized coefficient vector.
pub fn mesh_expectation(coefficients: &[f64], g: impl Fn(f64) -> f64, mesh: &Mesh) -> Result<f64> {
    if coefficients.len() != mesh.len() {
        return Err(Error::InvalidInput("coefficient vector does not match mesh size"));
    }
    let norm: f64 = coefficients.iter().map(|c| c * c).sum();
    if math::abs(norm - 1.0) > 1e-10 {
        return Err(Error::NotNormalized(norm));
    }
    Ok(coefficients
        .iter()
        .zip(&mesh.scaled_points)
        .map(|(c, r)| c * c * g(*r))
        .sum())
}

/// Gauss weights for `∫ x^α e^{-x} f(x) dx` at the unscaled mesh points.
pub fn quadrature_weights(mesh: &Mesh) -> Vec<f64> {
    let a = mesh.spec.family.alpha();
    let n = mesh.spec.n;
    let ln_prefactor = math::lgamma(n as f64 + a + 1.0) - math::lgamma(n as f64 + 1.0);
    mesh.points
        .iter()
        .map(|&x| {
            // (N+1) L_{N+1}(x_i) = -(N+α+1)... evaluated through the pair at degree N+1.
            let s = laguerre_pair(n + 1, a, x);
            let ln_l = math::ln(math::abs(s.p)) + s.log2_scale as f64 * core::f64::consts::LN_2;
            let nf1 = n as f64 + 1.0;
            math::exp(ln_prefactor + math::ln(x) - 2.0 * (math::ln(nf1) + ln_l))
        })
        .collect()
}

/// Regularized Lagrange function `f̂_i` at unscaled `x`.
pub fn lagrange_function(mesh: &Mesh, i: usize, x: f64) -> f64 {
    let n = mesh.spec.n;
    let a = mesh.spec.family.alpha();
    let xi = mesh.points[i];
    let sign = if (i + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let s = laguerre_pair(n, a, x);
    let ln2 = core::f64::consts::LN_2;
    // L_N(x) / (x - x_i), using L_N'(x_i) at the node itself.
    let ratio_mantissa = if math::abs(x - xi) <= 1e-13 * xi.max(1.0) {
        let nf = n as f64;
        (nf * s.p - (nf + a) * s.q) / x
    } else {
        s.p / (x - xi)
    };
    if ratio_mantissa == 0.0 || x <= 0.0 {
        return 0.0;
    }
    let ln_mag = math::ln(math::abs(ratio_mantissa)) + s.log2_scale as f64 * ln2 - 0.5 * x;
    let rsign = if ratio_mantissa < 0.0 { -sign } else { sign };
    match mesh.spec.family {
        MeshFamily::Laguerre => rsign * math::exp(ln_mag + math::ln(x) - 0.5 * math::ln(xi)),
        MeshFamily::GeneralizedLaguerre { alpha } => {
            let ln_nu = math::lgamma(n as f64 + alpha + 1.0) - math::lgamma(n as f64 + 1.0);
            rsign
                * math::exp(ln_mag + 0.5 * math::ln(xi) - 0.5 * ln_nu + 0.5 * alpha * math::ln(x))
        }
    }
}

/// Reduced radial function `u(r) = Σ c_i f̂_i(r/h) / √h` at physical `r`.
pub fn reduced_wavefunction(mesh: &Mesh, coefficients: &[f64], r: f64) -> f64 {
    let h = mesh.spec.h;
    let x = r / h;
    coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| c * lagrange_function(mesh, i, x))
        .sum::<f64>()
        / math::sqrt(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn laguerre_one_point() {
        let m = build_mesh(MeshSpec::laguerre(1, 1.0)).unwrap();
        assert_relative_eq!(m.points[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn laguerre_two_points_match_quadratic_roots() {
        // L_2(x) = 1 - 2x + x²/2 has roots 2 ∓ √2.
        let oracle = [2.0 - 2f64.sqrt(), 2.0 + 2f64.sqrt()];
        let m = build_mesh(MeshSpec::laguerre(2, 1.0)).unwrap();
        for (p, o) in m.points.iter().zip(oracle) {
            assert_relative_eq!(*p, o, epsilon = 1e-14);
        }
    }

    #[test]
    fn generalized_one_point() {
        let m = build_mesh(MeshSpec::generalized(1, 1.0, 1.0)).unwrap();
        assert_relative_eq!(m.points[0], 2.0, epsilon = 1e-15);
    }

    #[test]
    fn kinetic_single_point_values() {
        let t = kinetic_matrix(&build_mesh(MeshSpec::laguerre(1, 1.0)).unwrap());
        assert_relative_eq!(t[(0, 0)], 0.375, epsilon = 1e-15);
        let t = kinetic_matrix(&build_mesh(MeshSpec::laguerre(1, 2.0)).unwrap());
        assert_relative_eq!(t[(0, 0)], 0.09375, epsilon = 1e-15);
        // Printed closed form gives 0.25 for -d²/dr²; the matrix holds half of it.
        let t = kinetic_matrix(&build_mesh(MeshSpec::generalized(1, 1.0, 1.0)).unwrap());
        let full = -1.0 / 12.0 + 4.0 * 5.0 / (6.0 * 2.0 * 2.0) + 3.0 * -4.0 / (6.0 * 4.0);
        assert_relative_eq!(full, 0.25, epsilon = 1e-15);
        assert_relative_eq!(t[(0, 0)], 0.125, epsilon = 1e-15);
    }

    #[test]
    fn potential_examples() {
        let mut m = build_mesh(MeshSpec::laguerre(1, 1.0)).unwrap();
        assert_relative_eq!(potential_vector(&m, 1.0, 3).unwrap()[0], -(-1f64).exp(), epsilon = 1e-15);
        assert_relative_eq!(potential_vector(&m, 0.0, 5).unwrap()[0], 1.0, epsilon = 1e-15);
        m.scaled_points[0] = 2.0;
        assert_relative_eq!(potential_vector(&m, 10.0, 3).unwrap()[0], -0.1831564, epsilon = 1e-7);
        assert!(potential_vector(&m, 1.0, 1).is_err());
    }

    #[test]
    fn residuals_small_at_large_n() {
        for spec in [MeshSpec::laguerre(2000, 1.0), MeshSpec::generalized(1500, 1.0, 3.0)] {
            let m = build_mesh(spec).unwrap();
            assert_eq!(m.len(), spec.n);
            for i in (0..m.len()).step_by(37) {
                assert!(root_residual(&m, i) < 1e-10, "{i}");
            }
        }
    }

    #[test]
    fn quadrature_integrates_low_moments() {
        for alpha in [0.0, 1.0, 2.5] {
            let spec = if alpha == 0.0 {
                MeshSpec::laguerre(24, 1.0)
            } else {
                MeshSpec::generalized(24, 1.0, alpha)
            };
            let m = build_mesh(spec).unwrap();
            let w = quadrature_weights(&m);
            for k in 0..=5 {
                let got: f64 = w.iter().zip(&m.points).map(|(w, x)| w * x.powi(k)).sum();
                let exact = libm::tgamma(k as f64 + alpha + 1.0);
                assert!((got / exact - 1.0).abs() < 1e-10, "alpha {alpha} k {k}");
            }
        }
    }

    #[test]
    fn lagrange_functions_are_cardinal() {
        for spec in [MeshSpec::laguerre(12, 1.0), MeshSpec::generalized(12, 1.0, 1.0)] {
            let m = build_mesh(spec).unwrap();
            let w = quadrature_weights(&m);
            for i in 0..m.len() {
                for j in 0..m.len() {
                    let v = lagrange_function(&m, i, m.points[j]);
                    if i == j {
                        let x = m.points[i];
                        let lam = w[i] * x.exp() * x.powf(-spec.family.alpha());
                        assert!((lam * v * v - 1.0).abs() < 1e-11, "{i} {}", lam * v * v);
                    } else {
                        assert!(v.abs() < 1e-8, "{i} {j} {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn expectation_checks_normalization() {
        let m = build_mesh(MeshSpec::laguerre(3, 2.0)).unwrap();
        let c = [1.0, 0.0, 0.0];
        assert_relative_eq!(mesh_expectation(&c, |r| r, &m).unwrap(), 2.0 * m.points[0]);
        assert_relative_eq!(mesh_expectation(&c, |_| 1.0, &m).unwrap(), 1.0);
        assert!(matches!(mesh_expectation(&[1.0, 1.0, 0.0], |_| 1.0, &m), Err(Error::NotNormalized(_))));
    }
}
