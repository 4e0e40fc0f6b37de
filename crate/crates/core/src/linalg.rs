//! Dense linear algebra sized for mesh problems (N up to a few thousand).
//!
//! Symmetric eigenproblems go through Householder tridiagonalization, implicit
//! QL for the eigenvalues and inverse iteration for the requested vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::math;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let t = other.transpose();
        Matrix::from_fn(self.rows, other.cols, |i, j| dot(self.row(i), t.row(j)))
    }

    /// Largest `|A_ij - A_ji|` relative to the largest entry.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                scale = scale.max(math::abs(self[(i, j)]));
                if j < i {
                    worst = worst.max(math::abs(self[(i, j)] - self[(j, i)]));
                }
            }
        }
        if scale == 0.0 {
            0.0
        } else {
            worst / scale
        }
    }

    pub fn add_diagonal(&mut self, diag: &[f64]) {
        for (i, d) in diag.iter().enumerate() {
            self[(i, i)] += d;
        }
    }

    pub fn scale(&mut self, factor: f64) {
        for x in &mut self.data {
            *x *= factor;
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Dot product with four independent accumulators.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    let (a, b) = (&a[..n], &b[..n]);
    let mut acc = [0.0f64; 4];
    let chunks = n / 4;
    for k in 0..chunks {
        let i = 4 * k;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut tail = 0.0;
    for i in 4 * chunks..n {
        tail += a[i] * b[i];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

pub fn norm(a: &[f64]) -> f64 {
    math::sqrt(dot(a, a))
}

/// Symmetric tridiagonal form `A = Q T Qᵀ` with `Q` kept as Householder reflectors.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    reflectors: Vec<(f64, Vec<f64>)>,
}

impl Tridiagonal {
    /// Reduces a symmetric matrix. Only the lower triangle of `a` is trusted.
    pub fn new(a: &Matrix) -> Self {
        let n = a.rows();
        assert_eq!(n, a.cols());
        let mut w = Matrix::from_fn(n, n, |i, j| if j <= i { a[(i, j)] } else { a[(j, i)] });
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n.saturating_sub(1)];
        let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
        for k in 0..n.saturating_sub(2) {
            let m = n - k - 1;
            let mut v: Vec<f64> = (0..m).map(|i| w[(k + 1 + i, k)]).collect();
            let tail: f64 = v[1..].iter().map(|x| x * x).sum();
            diag[k] = w[(k, k)];
            if tail == 0.0 {
                off[k] = v[0];
                reflectors.push((0.0, Vec::new()));
                continue;
            }
            let xnorm = math::sqrt(v[0] * v[0] + tail);
            let alpha = -math::copysign(xnorm, v[0]);
            v[0] -= alpha;
            let beta = 2.0 / (v[0] * v[0] + tail);
            let mut p: Vec<f64> = (0..m)
                .map(|i| beta * dot(&w.row(k + 1 + i)[k + 1..], &v))
                .collect();
            let kk = 0.5 * beta * dot(&v, &p);
            for (pi, vi) in p.iter_mut().zip(&v) {
                *pi -= kk * vi;
            }
            for i in 0..m {
                let (vi, pi) = (v[i], p[i]);
                let row = &mut w.row_mut(k + 1 + i)[k + 1..];
                for ((x, vj), pj) in row.iter_mut().zip(&v).zip(&p) {
                    *x -= vi * pj + pi * vj;
                }
            }
            off[k] = alpha;
            reflectors.push((beta, v));
        }
        if n >= 2 {
            diag[n - 2] = w[(n - 2, n - 2)];
            off[n - 2] = w[(n - 1, n - 2)];
        }
        if n >= 1 {
            diag[n - 1] = w[(n - 1, n - 1)];
        }
        Tridiagonal { diag, off, reflectors }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Maps a vector from the tridiagonal basis back to the original one.
    pub fn back_transform(&self, y: &mut [f64]) {
        for (k, (beta, v)) in self.reflectors.iter().enumerate().rev() {
            if *beta == 0.0 {
                continue;
            }
            let seg = &mut y[k + 1..];
            let s = beta * dot(v, seg);
            for (x, vi) in seg.iter_mut().zip(v) {
                *x -= s * vi;
            }
        }
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        tridiagonal_eigenvalues(&self.diag, &self.off)
    }

    fn norm_estimate(&self) -> f64 {
        let n = self.dim();
        let mut best: f64 = 0.0;
        for i in 0..n {
            let mut s = math::abs(self.diag[i]);
            if i > 0 {
                s += math::abs(self.off[i - 1]);
            }
            if i + 1 < n {
                s += math::abs(self.off[i]);
            }
            best = best.max(s);
        }
        best
    }

    /// Unit eigenvectors (original basis) for the given eigenvalue indices.
    ///
    /// `values` must be the ascending output of [`Tridiagonal::eigenvalues`].
    pub fn eigenvectors(&self, values: &[f64], indices: &[usize]) -> Vec<Vec<f64>> {
        let scale = self.norm_estimate().max(f64::MIN_POSITIVE);
        let cluster = 1e-10 * scale;
        let mut basis: Vec<(f64, Vec<f64>)> = Vec::with_capacity(indices.len());
        let mut out = Vec::with_capacity(indices.len());
        for &k in indices {
            let lambda = values[k];
            let neighbours: Vec<&Vec<f64>> = basis
                .iter()
                .filter(|(l, _)| math::abs(l - lambda) < cluster)
                .map(|(_, v)| v)
                .collect();
            let y = inverse_iteration(&self.diag, &self.off, lambda, scale, k, &neighbours);
            let mut x = y.clone();
            self.back_transform(&mut x);
            let nx = norm(&x);
            for xi in &mut x {
                *xi /= nx;
            }
            basis.push((lambda, y));
            out.push(x);
        }
        out
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix (`off[i]` couples i and i+1).
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&off[..n.saturating_sub(1)]);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = math::abs(d[m]) + math::abs(d[m + 1]);
                if math::abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Eigensolver { spec: None });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = math::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + math::copysign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = math::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    Ok(d)
}

/// LU factors of a shifted tridiagonal matrix with partial pivoting.
struct TridiagLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn new(diag: &[f64], off: &[f64], shift: f64, tiny: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
        let mut dl = off[..n - 1].to_vec();
        let mut du = off[..n - 1].to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if math::abs(d[i]) >= math::abs(dl[i]) {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        for x in &mut d {
            if *x == 0.0 {
                *x = tiny;
            }
        }
        TridiagLu { dl, d, du, du2, swapped }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let t = b[i];
                b[i] = b[i + 1];
                b[i + 1] = t - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn inverse_iteration(
    diag: &[f64],
    off: &[f64],
    lambda: f64,
    scale: f64,
    seed: usize,
    against: &[&Vec<f64>],
) -> Vec<f64> {
    let n = diag.len();
    if n == 1 {
        return vec![1.0];
    }
    let tiny = f64::EPSILON * scale;
    let lu = TridiagLu::new(diag, off, lambda, tiny);
    // Deterministic pseudo-random start so no eigenvector is missed by symmetry.
    let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ (seed as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    let mut x: Vec<f64> = (0..n)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            0.5 + (state >> 11) as f64 / (1u64 << 53) as f64
        })
        .collect();
    for _ in 0..4 {
        lu.solve(&mut x);
        for v in against {
            let p = dot(v, &x);
            for (xi, vi) in x.iter_mut().zip(v.iter()) {
                *xi -= p * vi;
            }
        }
        let nx = norm(&x);
        for xi in &mut x {
            *xi /= nx;
        }
    }
    x
}

/// Eigen-decomposition of a symmetric matrix restricted to selected eigenvalues.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// All eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Indices into `values` for which vectors were computed.
    pub indices: Vec<usize>,
    /// Unit eigenvectors matching `indices`.
    pub vectors: Vec<Vec<f64>>,
}

impl SymmetricEigen {
    /// Eigenvalues only.
    pub fn values(a: &Matrix) -> Result<Vec<f64>> {
        Tridiagonal::new(a).eigenvalues()
    }

    /// All eigenvalues plus vectors for those accepted by `select`.
    pub fn selected(a: &Matrix, select: impl Fn(usize, f64) -> bool) -> Result<Self> {
        let tri = Tridiagonal::new(a);
        let values = tri.eigenvalues()?;
        let indices: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(k, v)| select(*k, **v))
            .map(|(k, _)| k)
            .collect();
        let vectors = tri.eigenvectors(&values, &indices);
        Ok(SymmetricEigen { values, indices, vectors })
    }

    /// Full decomposition.
    pub fn full(a: &Matrix) -> Result<Self> {
        Self::selected(a, |_, _| true)
    }
}

/// Lower Cholesky factor `A = L Lᵀ` of a symmetric positive definite matrix.
pub fn cholesky(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let s = a[(i, j)] - dot(&l.row(i)[..j], &l.row(j)[..j]);
            if i == j {
                if !(s > 0.0) {
                    return Err(Error::NotPositiveDefinite { pivot: i });
                }
                l[(i, i)] = math::sqrt(s);
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    Ok(l)
}

/// Solves `L x = b` in place for lower-triangular `L`.
pub fn forward_substitute(l: &Matrix, b: &mut [f64]) {
    for i in 0..b.len() {
        let s = dot(&l.row(i)[..i], &b[..i]);
        b[i] = (b[i] - s) / l[(i, i)];
    }
}

/// Solves `Lᵀ x = b` in place for lower-triangular `L`.
pub fn backward_substitute_transposed(l: &Matrix, b: &mut [f64]) {
    let n = b.len();
    for i in (0..n).rev() {
        b[i] /= l[(i, i)];
        let bi = b[i];
        for (k, bk) in b.iter_mut().enumerate().take(i) {
            *bk -= l[(i, k)] * bi;
        }
    }
}

/// Lowest eigenpair of `H c = E S c` with `cᵀ S c = 1`, plus the condition number
/// of the diagonally normalized overlap matrix.
pub fn generalized_lowest(h: &Matrix, s: &Matrix, which: usize) -> Result<(f64, Vec<f64>, f64)> {
    let n = h.rows();
    let scale: Vec<f64> = (0..n).map(|i| 1.0 / math::sqrt(s[(i, i)])).collect();
    if scale.iter().any(|x| !x.is_finite()) {
        return Err(Error::DegenerateSuperposition(f64::INFINITY));
    }
    let sn = Matrix::from_fn(n, n, |i, j| s[(i, j)] * scale[i] * scale[j]);
    let hn = Matrix::from_fn(n, n, |i, j| h[(i, j)] * scale[i] * scale[j]);
    let sv = SymmetricEigen::values(&sn)?;
    let cond = if sv[0] > 0.0 { sv[n - 1] / sv[0] } else { f64::INFINITY };
    let l = cholesky(&sn).map_err(|_| Error::DegenerateSuperposition(cond))?;
    // C = L⁻¹ H L⁻ᵀ
    let mut tmp = Matrix::zeros(n, n);
    for j in 0..n {
        let mut col = hn.column(j);
        forward_substitute(&l, &mut col);
        for i in 0..n {
            tmp[(i, j)] = col[i];
        }
    }
    let mut c = Matrix::zeros(n, n);
    for i in 0..n {
        let mut row = tmp.row(i).to_vec();
        forward_substitute(&l, &mut row);
        for j in 0..n {
            c[(i, j)] = row[j];
        }
    }
    let sym = Matrix::from_fn(n, n, |i, j| 0.5 * (c[(i, j)] + c[(j, i)]));
    let eig = SymmetricEigen::selected(&sym, |k, _| k == which)?;
    if eig.vectors.is_empty() {
        return Err(Error::InvalidInput("requested root beyond basis size"));
    }
    let mut y = eig.vectors[0].clone();
    backward_substitute_transposed(&l, &mut y);
    for (yi, si) in y.iter_mut().zip(&scale) {
        *yi *= si;
    }
    Ok((eig.values[which], y, cond))
}

/// Least-squares solution of `X β ≈ y` via Householder QR with column scaling.
///
/// Returns the coefficients and the condition estimate of the scaled design.
pub fn least_squares(x: &Matrix, y: &[f64]) -> Result<(Vec<f64>, f64)> {
    let (m, p) = (x.rows(), x.cols());
    if m < p || y.len() != m {
        return Err(Error::InvalidInput("least squares needs at least as many rows as columns"));
    }
    let colnorm: Vec<f64> = (0..p).map(|j| norm(&x.column(j))).collect();
    if colnorm.iter().any(|c| *c == 0.0) {
        return Err(Error::IllConditioned(f64::INFINITY));
    }
    let mut a = Matrix::from_fn(m, p, |i, j| x[(i, j)] / colnorm[j]);
    let mut b = y.to_vec();
    for k in 0..p {
        let mut v: Vec<f64> = (k..m).map(|i| a[(i, k)]).collect();
        let xn = norm(&v);
        if xn == 0.0 {
            return Err(Error::IllConditioned(f64::INFINITY));
        }
        let alpha = -math::copysign(xn, v[0]);
        v[0] -= alpha;
        let beta = 2.0 / dot(&v, &v);
        for j in k..p {
            let s: f64 = (k..m).map(|i| v[i - k] * a[(i, j)]).sum::<f64>() * beta;
            for i in k..m {
                a[(i, j)] -= s * v[i - k];
            }
        }
        let s: f64 = (k..m).map(|i| v[i - k] * b[i]).sum::<f64>() * beta;
        for i in k..m {
            b[i] -= s * v[i - k];
        }
    }
    let r = Matrix::from_fn(p, p, |i, j| if j >= i { a[(i, j)] } else { 0.0 });
    let rtr = r.transpose().mul(&r);
    let ev = SymmetricEigen::values(&rtr)?;
    let cond = if ev[0] > 0.0 { math::sqrt(ev[p - 1] / ev[0]) } else { f64::INFINITY };
    let mut beta = vec![0.0; p];
    for i in (0..p).rev() {
        let mut s = b[i];
        for j in i + 1..p {
            s -= r[(i, j)] * beta[j];
        }
        beta[i] = s / r[(i, i)];
    }
    for (bj, cj) in beta.iter_mut().zip(&colnorm) {
        *bj /= cj;
    }
    Ok((beta, cond))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_matrix(n: usize) -> Matrix {
        Matrix::from_fn(n, n, |i, j| {
            let (i, j) = (i as f64, j as f64);
            1.0 / (1.0 + i + j) + if i == j { i } else { 0.0 }
        })
    }

    #[test]
    fn two_by_two_eigenvalues() {
        let a = Matrix::from_fn(2, 2, |i, j| [[2.0, 1.0], [1.0, 2.0]][i][j]);
        let v = SymmetricEigen::values(&a).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn decomposition_reconstructs() {
        let a = test_matrix(40);
        let eig = SymmetricEigen::full(&a).unwrap();
        for (k, v) in eig.indices.iter().zip(&eig.vectors) {
            let av = a.mul_vec(v);
            for i in 0..40 {
                assert!((av[i] - eig.values[*k] * v[i]).abs() < 1e-12);
            }
        }
        for i in 0..40 {
            for j in 0..40 {
                let d = dot(&eig.vectors[i], &eig.vectors[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-12, "{i} {j} {d}");
            }
        }
    }

    #[test]
    fn trace_is_preserved() {
        let a = test_matrix(25);
        let v = SymmetricEigen::values(&a).unwrap();
        let trace: f64 = (0..25).map(|i| a[(i, i)]).sum();
        assert!((v.iter().sum::<f64>() - trace).abs() < 1e-11);
    }

    #[test]
    fn cholesky_round_trip() {
        let a = test_matrix(12);
        let l = cholesky(&a).unwrap();
        let back = l.mul(&l.transpose());
        for i in 0..12 {
            for j in 0..12 {
                assert!((back[(i, j)] - a[(i, j)]).abs() < 1e-13);
            }
        }
        let b: Vec<f64> = (0..12).map(|i| i as f64).collect();
        let mut x = b.clone();
        forward_substitute(&l, &mut x);
        backward_substitute_transposed(&l, &mut x);
        let ax = a.mul_vec(&x);
        for i in 0..12 {
            assert!((ax[i] - b[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = Matrix::from_fn(2, 2, |i, j| [[1.0, 2.0], [2.0, 1.0]][i][j]);
        assert_eq!(cholesky(&a), Err(Error::NotPositiveDefinite { pivot: 1 }));
    }

    #[test]
    fn generalized_matches_direct() {
        let h = Matrix::from_fn(3, 3, |i, j| [[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]][i][j]);
        let s = Matrix::identity(3);
        let (e, c, cond) = generalized_lowest(&h, &s, 0).unwrap();
        assert!((e - (2.0 - 2f64.sqrt())).abs() < 1e-13);
        assert!((dot(&c, &c) - 1.0).abs() < 1e-13);
        assert!((cond - 1.0).abs() < 1e-12);
    }

    #[test]
    fn least_squares_exact_line() {
        let x = Matrix::from_fn(5, 2, |i, j| if j == 0 { 1.0 } else { i as f64 });
        let y: Vec<f64> = (0..5).map(|i| 3.0 - 0.5 * i as f64).collect();
        let (b, _) = least_squares(&x, &y).unwrap();
        assert!((b[0] - 3.0).abs() < 1e-13 && (b[1] + 0.5).abs() < 1e-13);
    }
}
