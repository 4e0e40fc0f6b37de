//! Published reference values used by `reproduce`.

/// A bound-state row: `(dim, n, ell, v0, energy, ⟨r⟩, σ_r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelRow {
    pub dim: u32,
    pub n: usize,
    pub ell: u32,
    pub v0: f64,
    pub energy: f64,
    pub mean_r: f64,
    pub sigma_r: f64,
}

const fn level(dim: u32, n: usize, ell: u32, v0: f64, energy: f64, mean_r: f64, sigma_r: f64) -> LevelRow {
    LevelRow { dim, n, ell, v0, energy, mean_r, sigma_r }
}

/// Energies are printed to six decimals, moments to three.
pub const TABLE1: [LevelRow; 27] = [
    level(3, 1, 0, 100.0, -79.738800, 0.314, 0.135),
    level(3, 1, 0, 50.0, -35.958446, 0.381, 0.165),
    level(3, 1, 0, 10.0, -4.280602, 0.637, 0.291),
    level(3, 1, 0, 5.0, -1.271701, 0.858, 0.423),
    level(3, 1, 0, 2.0, -0.075432, 1.950, 1.335),
    level(3, 1, 0, 1.4, -0.000726, 13.834, 13.128),
    level(3, 2, 0, 100.0, -55.388745, 0.506, 0.233),
    level(3, 2, 0, 50.0, -19.987486, 0.641, 0.292),
    level(3, 2, 0, 15.0, -1.214669, 1.192, 0.537),
    level(3, 2, 0, 12.5, -0.506521, 1.451, 0.681),
    level(3, 2, 0, 10.0, -0.061198, 2.525, 1.520),
    level(3, 2, 0, 9.0, -0.000608, 15.527, 14.344),
    level(3, 2, 1, 100.0, -66.896220, 0.428, 0.142),
    level(3, 2, 1, 50.0, -27.282428, 0.526, 0.178),
    level(3, 2, 1, 10.0, -1.282861, 0.997, 0.398),
    level(3, 2, 1, 7.5, -0.361014, 1.258, 0.588),
    level(3, 2, 1, 6.5, -0.089254, 1.602, 0.945),
    level(3, 2, 1, 6.1, -0.008031, 2.357, 2.164),
    level(2, 1, 0, 100.0, -86.362354, 0.244, 0.129),
    level(2, 1, 0, 10.0, -6.042272, 0.476, 0.261),
    level(2, 1, 0, 1.0, -0.115386, 1.581, 1.137),
    level(2, 2, 0, 100.0, -61.196987, 0.456, 0.222),
    level(2, 2, 0, 10.0, -0.635548, 1.318, 0.640),
    level(2, 2, 0, 7.0, -0.041781, 2.903, 1.873),
    level(2, 2, 1, 100.0, -73.249069, 0.374, 0.139),
    level(2, 2, 1, 10.0, -2.684722, 0.801, 0.330),
    level(2, 2, 1, 5.0, -0.391199, 1.230, 0.618),
];

/// Rows close enough to threshold that they are solved with `h = 4`.
pub fn near_critical(row: &LevelRow) -> bool {
    row.dim == 3 && ((row.n, row.ell, row.v0) == (1, 0, 1.4) || (row.n, row.ell, row.v0) == (2, 0, 9.0))
}

/// Decimals of the energy reproduced by a single compact configuration
/// (two-term second root for the `n = 2, ℓ = 0` column).
pub const TABLE1_COMPACT_DECIMALS: [u32; 27] =
    [6, 5, 4, 4, 3, 3, 4, 4, 4, 3, 2, 1, 5, 5, 4, 3, 2, 1, 6, 5, 3, 6, 4, 2, 4, 3, 1];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalRow {
    pub dim: u32,
    pub ell: u32,
    pub n: usize,
    pub v0c: f64,
    /// Acceptance tolerance at the printed precision.
    pub tolerance: f64,
}

const fn crit(dim: u32, ell: u32, n: usize, v0c: f64, tolerance: f64) -> CriticalRow {
    CriticalRow { dim, ell, n, v0c, tolerance }
}

pub const TABLE2_S: [CriticalRow; 6] = [
    crit(3, 0, 1, 1.342002, 1e-3),
    crit(3, 0, 2, 8.897850, 1e-3),
    crit(3, 0, 3, 22.786740, 1e-3),
    crit(3, 0, 4, 42.981700, 1e-3),
    crit(2, 0, 2, 5.66, 1e-2),
    crit(2, 0, 3, 17.7, 1e-1),
];

pub const TABLE2_L: [CriticalRow; 9] = [
    crit(3, 1, 2, 6.049655, 1e-6),
    crit(3, 1, 3, 17.544889, 1e-6),
    crit(3, 1, 4, 35.241429, 1e-6),
    crit(3, 2, 3, 13.450538800, 1e-6),
    crit(3, 2, 4, 28.837886068, 1e-6),
    crit(3, 3, 4, 23.553939852, 1e-6),
    crit(2, 1, 2, 3.35962, 1e-5),
    crit(2, 1, 3, 12.89453, 1e-5),
    crit(2, 2, 3, 9.41285, 1e-5),
];

/// `(n, [γ_2, γ_3, γ_4])` for three-dimensional s-states.
pub const TABLE3_S: [(usize, [f64; 3]); 4] = [
    (1, [-0.2212, 0.0966, -0.0682]),
    (2, [-0.0593, 0.0101, -0.0002]),
    (3, [-0.0285, 0.0029, -0.0006]),
    (4, [-0.0171, 0.0013, -0.0003]),
];

/// `(n, ℓ, [ξ_2, ξ_3, ξ_4], ∂E/∂v0)` for three-dimensional ℓ > 0 states.
/// The printed rows labelled (3,2) and (4,1) are exchanged here: their
/// slopes identify them.
pub const TABLE3_L: [(usize, u32, [f64; 3], f64); 6] = [
    (2, 1, [-0.1422, -0.0734, -0.0081], -0.1423),
    (3, 1, [-0.0794, -0.0408, -0.0048], -0.0795),
    (4, 1, [-0.0548, -0.0274, -0.0027], -0.0549),
    (3, 2, [-0.2438, -0.0103, -0.0093], -0.2442),
    (4, 2, [-0.1644, -0.0033, -0.0089], -0.1646),
    (4, 3, [-0.2846, -0.0010, -0.0058], -0.2847),
];

/// Two-dimensional leading coefficients `(n, ℓ, values)`.
pub const TABLE3_2D: [(usize, u32, &[f64]); 3] =
    [(1, 0, &[-4.4e-4, 0.2995]), (2, 0, &[0.2712]), (2, 1, &[-0.2091])];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeuteronRow {
    pub lambda: f64,
    pub c1: f64,
    pub c2: f64,
    /// Superposition energies for K = 1, 2, 3 (MeV).
    pub ansatz: [f64; 3],
    pub lmm: f64,
    /// Near-threshold formula value.
    pub formula: f64,
}

pub const TABLE4: [DeuteronRow; 2] = [
    DeuteronRow { lambda: 4.0, c1: -487.5, c2: -17.5, ansatz: [-2.1639, -2.2238, -2.2242], lmm: -2.2242, formula: -2.2300 },
    DeuteronRow { lambda: 6.0, c1: -1064.0, c2: -26.0, ansatz: [-2.1064, -2.2232, -2.2244], lmm: -2.2244, formula: -2.2263 },
];

/// `(λ, V0, E, ⟨1/r12⟩)`.
pub const TABLE5: [(f64, f64, f64, f64); 11] = [
    (0.05, 10.0, -16.380161, 0.152650),
    (0.05, 8.0, -12.740711, 0.143053),
    (0.05, 6.0, -9.155680, 0.131107),
    (0.1, 10.0, -15.110462, 0.252596),
    (0.1, 8.0, -11.611217, 0.237427),
    (0.1, 6.0, -8.186968, 0.215436),
    (0.2, 10.0, -13.406999, 0.415227),
    (0.2, 8.0, -10.108105, 0.384509),
    (0.2, 6.0, -6.909523, 0.348081),
    (0.5, 10.0, -10.3079923, 0.781601),
    (0.5, 8.0, -7.402543, 0.719914),
];

/// Mesh sizes of the ground-state critical-depth curves.
pub const FIGURE1_MESHES: [usize; 3] = [500, 700, 1000];
