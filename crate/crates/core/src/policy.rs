//! Numeric tolerance policy shared by all modules.
//!
//! Every tolerance that appears in a validation check or a numerical guard
//! lives here, so a caller can tighten or relax the whole stack from one
//! record. The defaults are the contract values used throughout the tests.

/// Numeric policy record. Construct with [`Tolerances::default`] and
/// override individual fields as needed.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Hermiticity: max-abs entry of `A - A†` relative to max-abs entry of `A`.
    pub hermitian_rel: f64,
    /// Unitarity: operator norm of `U†U - I`.
    pub unitary: f64,
    /// Positive semidefiniteness: eigenvalue floor relative to the operator norm.
    pub psd_rel: f64,
    /// Eigenvalues below this are treated as exact zeros in entropies.
    pub entropy_clip: f64,
    /// Spectral clip defining the numerical support of a reduced state
    /// when taking matrix logarithms.
    pub support_clip: f64,
    /// Density operators must have unit trace within this.
    pub state_trace: f64,
    /// Pure state vectors must have unit 2-norm within this.
    pub state_norm: f64,
    /// Residual allowed in `exp(-iH) = U` when recovering a principal
    /// Hermitian generator.
    pub log_unitary_residual: f64,
    /// Phases within this of ±π are resolved to +π.
    pub phase_tie: f64,
    /// Relative disagreement between the two finite-difference levels
    /// entering a Richardson extrapolation before the step is rejected.
    pub richardson_rel: f64,
    /// Absolute floor for the Richardson disagreement check, so that
    /// near-zero rates are not rejected on relative grounds.
    pub richardson_abs: f64,
    /// Matrix exponential inputs with norm estimate above this are rejected.
    pub exp_norm_cap: f64,
    /// Symplectic eigenvalues may undershoot 1 by this much before the
    /// uncertainty relation counts as violated.
    pub uncertainty: f64,
    /// Purity: all global symplectic eigenvalues must be 1 within this.
    pub pure_sympl: f64,
    /// Symplecticity: `S σ Sᵀ = σ` within this in operator norm.
    pub symplectic_check: f64,
    /// The analytic Gaussian rate requires every reduced symplectic
    /// eigenvalue to exceed 1 by at least this much.
    pub near_singular_nu: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian_rel: 1e-10,
            unitary: 1e-9,
            psd_rel: 1e-10,
            entropy_clip: 1e-14,
            support_clip: 1e-12,
            state_trace: 1e-8,
            state_norm: 1e-10,
            log_unitary_residual: 1e-8,
            phase_tie: 1e-8,
            richardson_rel: 1e-3,
            richardson_abs: 1e-6,
            exp_norm_cap: 500.0,
            uncertainty: 1e-6,
            pure_sympl: 1e-6,
            symplectic_check: 1e-8,
            near_singular_nu: 1e-8,
        }
    }
}
