//! Bound states of a single Gaussian well on a Lagrange mesh.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymmetricEigen};
use crate::math;
use crate::mesh::{build_mesh, kinetic_matrix, potential_vector, Mesh, MeshSpec};

/// Radial problem for depth `v0` (in units where the well is `e^{-r²}`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellSpec {
    pub v0: f64,
    pub d: u32,
    pub ell: u32,
}

impl WellSpec {
    pub fn new(v0: f64, d: u32, ell: u32) -> Result<Self> {
        let w = WellSpec { v0, d, ell };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v0 >= 0.0) || !self.v0.is_finite() {
            return Err(Error::InvalidInput("well depth must be finite and non-negative"));
        }
        if self.d == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1"));
        }
        if self.nu() < 2 {
            return Err(Error::InvalidInput("d + 2l must be at least 2"));
        }
        Ok(())
    }

    /// Effective centrifugal index `d + 2ℓ`.
    pub fn nu(&self) -> u32 {
        self.d + 2 * self.ell
    }
}

impl MeshSpec {
    /// Mesh family suited to `nu`: odd `nu` has an integer power `r^{(nu-1)/2}`
    /// at the origin and uses the Laguerre mesh; even `nu` uses the generalized
    /// mesh with `α = nu - 1`, whose basis carries the half-integer power.
    pub fn for_nu(nu: u32, n: usize, h: f64) -> MeshSpec {
        if nu % 2 == 1 {
            MeshSpec::laguerre(n, h)
        } else {
            MeshSpec::generalized(n, h, nu as f64 - 1.0)
        }
    }

    pub fn for_well(well: &WellSpec, n: usize, h: f64) -> MeshSpec {
        MeshSpec::for_nu(well.nu(), n, h)
    }
}

#[derive(Debug, Clone)]
pub struct BoundState {
    /// Principal label `n = n_r + ℓ + 1`.
    pub n: usize,
    pub ell: u32,
    pub energy: f64,
    /// Unit-norm mesh coefficients.
    pub coefficients: Vec<f64>,
    pub mesh: Arc<Mesh>,
}

impl BoundState {
    pub fn mesh_spec(&self) -> MeshSpec {
        self.mesh.spec
    }

    /// Number of radial nodes.
    pub fn radial_index(&self) -> usize {
        self.n - self.ell as usize - 1
    }
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub well: WellSpec,
    pub mesh_spec: MeshSpec,
    /// Ascending in energy.
    pub states: Vec<BoundState>,
}

impl Spectrum {
    pub fn state(&self, n: usize) -> Option<&BoundState> {
        self.states.iter().find(|s| s.n == n)
    }

    pub fn ground(&self) -> Option<&BoundState> {
        self.states.first()
    }
}

/// `T + diag(U)` for the well on the given mesh.
pub fn hamiltonian(mesh: &Mesh, well: &WellSpec) -> Result<Matrix> {
    let mut h = kinetic_matrix(mesh);
    h.add_diagonal(&potential_vector(mesh, well.v0, well.nu())?);
    Ok(h)
}

/// All eigenvalues of the mesh Hamiltonian, ascending (bound and discretized continuum).
pub fn mesh_eigenvalues(well: &WellSpec, mesh_spec: MeshSpec) -> Result<Vec<f64>> {
    well.validate()?;
    let mesh = build_mesh(mesh_spec)?;
    let h = hamiltonian(&mesh, well)?;
    SymmetricEigen::values(&h).map_err(|_| Error::Eigensolver { spec: Some(mesh_spec) })
}

/// Negative eigenvalues only.
pub fn bound_energies(well: &WellSpec, mesh_spec: MeshSpec) -> Result<Vec<f64>> {
    let mut v = mesh_eigenvalues(well, mesh_spec)?;
    v.retain(|e| *e < 0.0);
    Ok(v)
}

pub fn solve_well(well: &WellSpec, mesh_spec: MeshSpec) -> Result<Spectrum> {
    well.validate()?;
    let mesh = Arc::new(build_mesh(mesh_spec)?);
    let h = hamiltonian(&mesh, well)?;
    let eig = SymmetricEigen::selected(&h, |_, e| e < 0.0)
        .map_err(|_| Error::Eigensolver { spec: Some(mesh_spec) })?;
    let states = eig
        .indices
        .iter()
        .zip(eig.vectors)
        .map(|(&k, c)| BoundState {
            n: k + well.ell as usize + 1,
            ell: well.ell,
            energy: eig.values[k],
            coefficients: c,
            mesh: Arc::clone(&mesh),
        })
        .collect();
    Ok(Spectrum { well: *well, mesh_spec, states })
}

/// `(⟨r⟩, σ_r)` from the mesh quadrature.
pub fn radial_moments(state: &BoundState) -> Result<(f64, f64)> {
    radial_moments_of(&state.coefficients, &state.mesh.scaled_points)
}

pub fn radial_moments_of(c: &[f64], r: &[f64]) -> Result<(f64, f64)> {
    let norm: f64 = c.iter().map(|x| x * x).sum();
    if math::abs(norm - 1.0) > 1e-10 {
        return Err(Error::NotNormalized(norm));
    }
    let mean: f64 = c.iter().zip(r).map(|(c, r)| c * c * r).sum();
    let second: f64 = c.iter().zip(r).map(|(c, r)| c * c * r * r).sum();
    let var = second - mean * mean;
    if var < -1e-12 {
        return Err(Error::NegativeVariance(var));
    }
    Ok((mean, math::sqrt(var.max(0.0))))
}

/// Largest `|E - E'|` over levels bound in both problems; the two wells share `d + 2ℓ`.
pub fn degeneracy_check(
    d: u32,
    ell: u32,
    d_prime: u32,
    ell_prime: u32,
    v0: f64,
    n: usize,
    h: f64,
) -> Result<f64> {
    let a = WellSpec::new(v0, d, ell)?;
    let b = WellSpec::new(v0, d_prime, ell_prime)?;
    if a.nu() != b.nu() {
        return Err(Error::InvalidInput("degeneracy check needs equal d + 2l"));
    }
    let ea = bound_energies(&a, MeshSpec::for_well(&a, n, h))?;
    let eb = bound_energies(&b, MeshSpec::for_well(&b, n, h))?;
    Ok(ea
        .iter()
        .zip(&eb)
        .map(|(x, y)| math::abs(x - y))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deep_s_well_matches_tabulated_ground_state() {
        let w = WellSpec::new(100.0, 3, 0).unwrap();
        let s = solve_well(&w, MeshSpec::for_well(&w, 300, 1.0)).unwrap();
        let g = s.ground().unwrap();
        assert!((g.energy + 79.738800).abs() < 1e-6, "{}", g.energy);
        let (m, sd) = radial_moments(g).unwrap();
        assert!((m - 0.314).abs() < 1e-3 && (sd - 0.135).abs() < 1e-3);
        assert_eq!((g.n, g.ell), (1, 0));
    }

    #[test]
    fn planar_ground_state() {
        let w = WellSpec::new(10.0, 2, 0).unwrap();
        let s = solve_well(&w, MeshSpec::for_well(&w, 300, 1.0)).unwrap();
        assert!((s.states[0].energy + 6.042272).abs() < 1e-6, "{}", s.states[0].energy);
    }

    #[test]
    fn empty_well_has_no_states() {
        let w = WellSpec::new(0.0, 3, 0).unwrap();
        assert!(solve_well(&w, MeshSpec::laguerre(50, 1.0)).unwrap().states.is_empty());
    }

    #[test]
    fn single_point_has_zero_width() {
        let (_, s) = radial_moments_of(&[1.0, 0.0, 0.0], &[0.5, 1.0, 2.0]).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn labels_count_from_angular_momentum() {
        let w = WellSpec::new(50.0, 3, 1).unwrap();
        let s = solve_well(&w, MeshSpec::for_well(&w, 200, 1.0)).unwrap();
        assert_eq!(s.states[0].n, 2);
        assert!((s.states[0].energy + 27.282428).abs() < 1e-6);
        let (m, sd) = radial_moments(&s.states[0]).unwrap();
        assert!((m - 0.526).abs() < 1e-3 && (sd - 0.178).abs() < 1e-3);
    }

    #[test]
    fn degeneracy_examples() {
        assert!(degeneracy_check(3, 1, 5, 0, 10.0, 120, 1.0).unwrap() < 1e-10);
        assert!(degeneracy_check(2, 2, 4, 1, 10.0, 120, 1.0).unwrap() < 1e-10);
        assert!(degeneracy_check(3, 0, 1, 1, 5.0, 120, 1.0).unwrap() < 1e-10);
        assert!(degeneracy_check(3, 0, 2, 1, 5.0, 120, 1.0).is_err());
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let w = WellSpec::new(100.0, 3, 0).unwrap();
        let s = solve_well(&w, MeshSpec::laguerre(300, 1.0)).unwrap();
        for a in &s.states {
            for b in &s.states {
                let d: f64 = a.coefficients.iter().zip(&b.coefficients).map(|(x, y)| x * y).sum();
                let want = if a.n == b.n { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-10);
            }
        }
    }
}
