//! Named numerical tolerances shared by every invariant check.

/// Tolerance record. Every validation in the crate reads from
/// [`Tolerances::DEFAULT`] unless a caller passes its own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max-entry deviation allowed in `M - M^dagger`.
    pub hermiticity: f64,
    /// Smallest eigenvalue accepted as positive semidefinite is `-psd`.
    pub psd: f64,
    /// Allowed `|Tr rho - 1|`.
    pub trace: f64,
    /// Allowed `| |v|^2 - 1 |` for pure states and normalized parameters.
    pub normalization: f64,
    /// Agreement between two routes to the same norm.
    pub norm_agreement: f64,
    /// Relative threshold below which a negative radicand or eigenvalue is
    /// treated as rounding noise and clamped to zero.
    pub clamp: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermiticity: 1e-10,
        psd: 1e-10,
        trace: 1e-10,
        normalization: 1e-9,
        norm_agreement: 1e-9,
        clamp: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Jacobi eigensolver stopping rule: off-diagonal Frobenius norm relative to
/// the full Frobenius norm.
pub const JACOBI_REL_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
