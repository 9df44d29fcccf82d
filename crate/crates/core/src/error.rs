use thiserror::Error;

/// Errors raised by the kinematics, spin and entanglement routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("velocity magnitude {speed} is not below the speed of light")]
    VelocityNotSubluminal { speed: f64 },

    #[error("mass must be positive and finite, got {0}")]
    InvalidMass(f64),

    #[error("four-momentum is off shell: p² = {norm_sq}, m² = {mass_sq}")]
    OffShellMomentum { norm_sq: f64, mass_sq: f64 },

    #[error("matrix is not a proper orthochronous Lorentz transformation (defect {defect:e})")]
    NotLorentz { defect: f64 },

    #[error("matrix is not a proper rotation (defect {defect:e})")]
    NotARotation { defect: f64 },

    #[error("composed transformation keeps a boost component of {residual:e} (limit {limit:e})")]
    NotALittleGroupElement { residual: f64, limit: f64 },

    #[error("rotation axis is not parallel to the requested axis (misalignment {misalignment:e})")]
    AxisMismatch { misalignment: f64 },

    #[error("axis vector has zero length")]
    ZeroAxis,

    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("Jacobi iteration did not converge (off-diagonal norm {off_norm:e})")]
    EigenNoConvergence { off_norm: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid spin vector: {0}")]
    InvalidSpinVector(String),

    #[error("invalid two-particle state: {0}")]
    InvalidState(String),

    #[error("operation needs exactly two momentum branches, state has {0}")]
    BranchCountNotTwo(usize),

    #[error("momentum geometry mismatch: {0}")]
    GeometryMismatch(String),

    #[error("target angle {target} is unreachable (supremum {limit})")]
    AngleUnreachable { target: f64, limit: f64 },

    #[error("momentum ratio range [{min}, {max}] is invalid: need 1 < min <= max")]
    RatioRangeInvalid { min: f64, max: f64 },

    #[error("invalid scenario configuration: {0}")]
    InvalidConfig(String),

    #[error("closed-form cross-check failed for {quantity}: deviation {deviation:e}")]
    ClosedFormMismatch {
        quantity: &'static str,
        deviation: f64,
    },
}

impl Error {
    /// True for errors that indicate a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotALittleGroupElement { .. }
                | Error::EigenNoConvergence { .. }
                | Error::ClosedFormMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
