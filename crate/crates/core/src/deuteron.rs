//! Two nucleons bound by a Gaussian contact interaction, mapped onto the
//! dimensionless well `-½∇² - v0 e^{-r²}`.
//!
//! With `λ = Λ²/4` the energy unit is `(ħ²/μ) λ` and the depth is
//! `v0 = -(C1 + C2) / ((ħ²/μ) λ)`. All solves are dimensionless; MeV only
//! appears in [`DeuteronResult::energy`].

use alloc::vec::Vec;

use crate::ansatz::{optimize_with, AnsatzConfig, OptimizeOptions};
use crate::error::{Error, Result};
use crate::math;
use crate::mesh::MeshSpec;
use crate::spectrum::{solve_well, WellSpec};

/// ħ²/μ in MeV·fm² for the neutron-proton reduced mass.
pub const HBAR2_OVER_MU: f64 = 82.9;

/// Argument scale of the ansatz in dimensionless units (`r → Λ r` with `r` in units of `1/√λ`).
pub const ANSATZ_KAPPA: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinChannel {
    /// σ1·σ2 = +1, coupling `C1 + C2`.
    Triplet,
    /// σ1·σ2 = −3, coupling `C1 − 3 C2`.
    Singlet,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeuteronModel {
    /// Range parameter Λ in fm⁻¹.
    pub lambda: f64,
    /// Contact couplings in MeV.
    pub c1: f64,
    pub c2: f64,
    /// ħ²/μ in MeV·fm².
    pub hbar2_over_mu: f64,
    pub channel: SpinChannel,
}

impl DeuteronModel {
    pub fn new(lambda: f64, c1: f64, c2: f64) -> Self {
        DeuteronModel { lambda, c1, c2, hbar2_over_mu: HBAR2_OVER_MU, channel: SpinChannel::Triplet }
    }

    /// Λ = 4 fm⁻¹ couplings.
    pub fn lambda4() -> Self {
        DeuteronModel::new(4.0, -487.5, -17.5)
    }

    /// Λ = 6 fm⁻¹ couplings.
    pub fn lambda6() -> Self {
        DeuteronModel::new(6.0, -1064.0, -26.0)
    }

    pub fn coupling(&self) -> f64 {
        match self.channel {
            SpinChannel::Triplet => self.c1 + self.c2,
            SpinChannel::Singlet => self.c1 - 3.0 * self.c2,
        }
    }

    /// `(ħ²/μ) Λ²/4` in MeV.
    pub fn energy_unit(&self) -> f64 {
        self.hbar2_over_mu * self.lambda * self.lambda / 4.0
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(Error::InvalidInput("range parameter must be positive"));
        }
        if !(self.hbar2_over_mu > 0.0) || !self.hbar2_over_mu.is_finite() {
            return Err(Error::InvalidInput("hbar^2/mu must be positive"));
        }
        if !self.c1.is_finite() || !self.c2.is_finite() {
            return Err(Error::InvalidInput("couplings must be finite"));
        }
        if !(self.coupling() < 0.0) {
            return Err(Error::InvalidInput("channel coupling is not attractive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeuteronMethod {
    Lmm,
    Ansatz(usize),
    ThresholdFormula,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeuteronResult {
    pub method: DeuteronMethod,
    /// MeV.
    pub energy: f64,
    pub v0_effective: f64,
    /// Optimal configurations (ansatz only), in dimensionless units with scale [`ANSATZ_KAPPA`].
    pub configs: Vec<AnsatzConfig>,
    pub linear_coeffs: Vec<f64>,
}

pub fn effective_v0(model: &DeuteronModel) -> Result<f64> {
    model.validate()?;
    Ok(-4.0 * model.coupling() / (model.hbar2_over_mu * model.lambda * model.lambda))
}

fn s_wave(model: &DeuteronModel) -> Result<(WellSpec, f64)> {
    let v0 = effective_v0(model)?;
    Ok((WellSpec::new(v0, 3, 0)?, v0))
}

/// Mesh solve; the default `(N, h) = (300, 4)` suits the weakly bound state.
pub fn binding_energy_lmm(model: &DeuteronModel) -> Result<DeuteronResult> {
    binding_energy_lmm_with(model, MeshSpec::laguerre(300, 4.0))
}

pub fn binding_energy_lmm_with(model: &DeuteronModel, mesh: MeshSpec) -> Result<DeuteronResult> {
    let (well, v0) = s_wave(model)?;
    let spectrum = solve_well(&well, mesh)?;
    let ground = spectrum.ground().ok_or(Error::MissingLevel { n: 1, ell: 0 })?;
    Ok(DeuteronResult {
        method: DeuteronMethod::Lmm,
        energy: ground.energy * model.energy_unit(),
        v0_effective: v0,
        configs: Vec::new(),
        linear_coeffs: Vec::new(),
    })
}

pub fn binding_energy_ansatz(model: &DeuteronModel, k: usize) -> Result<DeuteronResult> {
    binding_energy_ansatz_with(model, k, &OptimizeOptions { kappa: ANSATZ_KAPPA, ..Default::default() })
}

pub fn binding_energy_ansatz_with(
    model: &DeuteronModel,
    k: usize,
    opts: &OptimizeOptions,
) -> Result<DeuteronResult> {
    let (well, v0) = s_wave(model)?;
    let state = optimize_with(&well, k, opts)?;
    if !(state.energy < 0.0) {
        return Err(Error::MissingLevel { n: 1, ell: 0 });
    }
    Ok(DeuteronResult {
        method: DeuteronMethod::Ansatz(k),
        energy: state.energy * model.energy_unit(),
        v0_effective: v0,
        configs: state.configs,
        linear_coeffs: state.linear_coeffs,
    })
}

/// `E = unit · Σ γ_n (v0 − v0_c)^n` with `gammas = [γ_2, γ_3, γ_4]`.
pub fn binding_energy_threshold_formula(
    model: &DeuteronModel,
    gammas: &[f64; 3],
    v0_c: f64,
) -> Result<DeuteronResult> {
    let v0 = effective_v0(model)?;
    if !v0_c.is_finite() || v0 < v0_c {
        return Err(Error::InvalidInput("effective depth must not be below the critical depth"));
    }
    let delta = v0 - v0_c;
    let e: f64 = gammas.iter().zip(2..).map(|(g, n)| g * math::powi(delta, n)).sum();
    Ok(DeuteronResult {
        method: DeuteronMethod::ThresholdFormula,
        energy: e * model.energy_unit(),
        v0_effective: v0,
        configs: Vec::new(),
        linear_coeffs: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn effective_depths() {
        assert!((effective_v0(&DeuteronModel::lambda4()).unwrap() - 505.0 / 331.6).abs() < 1e-12);
        assert!((effective_v0(&DeuteronModel::lambda6()).unwrap() - 1090.0 / 746.1).abs() < 1e-12);
    }

    #[test]
    fn repulsive_channel_rejected() {
        assert!(effective_v0(&DeuteronModel::new(4.0, 10.0, -5.0)).is_err());
        let mut m = DeuteronModel::lambda4();
        m.channel = SpinChannel::Singlet;
        // -487.5 + 52.5 stays attractive.
        assert!(effective_v0(&m).unwrap() > 0.0);
    }

    #[test]
    fn formula_vanishes_at_threshold() {
        let m = DeuteronModel::lambda4();
        let v0 = effective_v0(&m).unwrap();
        let r = binding_energy_threshold_formula(&m, &[-0.2212, 0.0966, -0.0682], v0).unwrap();
        assert_eq!(r.energy, 0.0);
        assert!(binding_energy_threshold_formula(&m, &[-0.2, 0.0, 0.0], v0 + 0.1).is_err());
    }

    #[test]
    fn subcritical_model_has_no_bound_state() {
        let m = DeuteronModel::new(4.0, -487.5 / 2.0, -17.5 / 2.0);
        assert!(matches!(binding_energy_lmm(&m), Err(Error::MissingLevel { .. })));
    }

    #[test]
    fn doubling_the_range_quadruples_the_energy() {
        let a = DeuteronModel::lambda4();
        let b = DeuteronModel::new(8.0, 4.0 * a.c1, 4.0 * a.c2);
        let ea = binding_energy_lmm(&a).unwrap().energy;
        let eb = binding_energy_lmm(&b).unwrap().energy;
        assert_eq!(eb, 4.0 * ea);
    }
}
