//! Quadrature rules on the half line.

use alloc::vec::Vec;

use crate::error::Result;
use crate::linalg::tridiagonal_eigenvalues;
use crate::math;
use crate::mesh::{build_mesh, quadrature_weights, MeshSpec};

/// Nodes and weights for `∫_0^∞ f(r) w(r) dr`, where `w` is whatever measure
/// the constructor folded in.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let diag = alloc::vec![0.0; m];
    let off: Vec<f64> = (1..m)
        .map(|k| {
            let k = k as f64;
            k / math::sqrt(4.0 * k * k - 1.0)
        })
        .collect();
    let mut x = tridiagonal_eigenvalues(&diag, &off)?;
    let mut w = Vec::with_capacity(m);
    for xi in &mut x {
        for _ in 0..3 {
            let (p, dp) = legendre(m, *xi);
            *xi -= p / dp;
        }
        let (_, dp) = legendre(m, *xi);
        w.push(2.0 / ((1.0 - *xi * *xi) * dp * dp));
    }
    Ok((x, w))
}

fn legendre(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let mf = m as f64;
    (p1, mf * (x * p1 - p0) / (x * x - 1.0))
}

impl QuadratureRule {
    /// Composite Gauss–Legendre on `[0, 2^lo]` and the octaves `[2^k, 2^{k+1}]`
    /// up to `2^hi`, with `points` nodes per panel.
    pub fn geometric(points: usize, lo: i32, hi: i32) -> Result<Self> {
        let (x, w) = gauss_legendre(points)?;
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut push_panel = |a: f64, b: f64| {
            let (c, half) = (0.5 * (a + b), 0.5 * (b - a));
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(c + half * xi);
                weights.push(half * wi);
            }
        };
        push_panel(0.0, math::powi(2.0, lo));
        for k in lo..hi {
            push_panel(math::powi(2.0, k), math::powi(2.0, k + 1));
        }
        Ok(QuadratureRule { nodes, weights })
    }

    /// Default rule for trial functions: 24 nodes per octave from `2^-8` to `2^14`.
    pub fn half_line(points_per_panel: usize) -> Result<Self> {
        Self::geometric(points_per_panel, -8, 14)
    }

    /// Gauss–Laguerre rule for `∫ f(r) dr` on decay scale `1/scale`.
    pub fn gauss_laguerre(m: usize, scale: f64) -> Result<Self> {
        let mesh = build_mesh(MeshSpec::laguerre(m, 1.0))?;
        let w = quadrature_weights(&mesh);
        Ok(QuadratureRule {
            nodes: mesh.points.iter().map(|x| x / scale).collect(),
            weights: mesh.points.iter().zip(w).map(|(x, w)| w * math::exp(*x) / scale).collect(),
        })
    }

    /// Folds the radial measure `r^{d-1}` into the weights.
    pub fn with_radial_measure(mut self, d: u32) -> Self {
        for (w, r) in self.weights.iter_mut().zip(&self.nodes) {
            *w *= math::powi(*r, d as i32 - 1);
        }
        self
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(r, w)| w * f(*r)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(k: u32) -> f64 {
        (1..=k).map(|x| x as f64).product()
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(6).unwrap();
        for k in 0..12 {
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((got - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn radial_moments_exact() {
        for d in [2u32, 3] {
            let rules = [
                QuadratureRule::half_line(20).unwrap().with_radial_measure(d),
                QuadratureRule::gauss_laguerre(20, 1.0).unwrap().with_radial_measure(d),
            ];
            for rule in &rules {
                for k in 0..=5u32 {
                    let got = rule.integrate(|r| (-r).exp() * r.powi(k as i32));
                    let exact = factorial(k + d - 1);
                    assert!((got / exact - 1.0).abs() < 1e-10, "d {d} k {k}: {got}");
                }
            }
        }
    }
}
