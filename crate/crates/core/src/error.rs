use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range for {len} basis elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("matrix is not antihermitian (‖a + a†‖_max = {defect:.3e})")]
    NotAntihermitian { defect: f64 },

    /// `[D_i, D_j]` does not lie in the span of the basis (0-based indices).
    #[error("basis is not closed under brackets: [D_{i}, D_{j}] leaves the span (residual {residual:.3e})")]
    ClosureViolation { i: usize, j: usize, residual: f64 },

    #[error("structure constants violate {identity} (residual {residual:.3e})")]
    InvalidStructureConstants {
        identity: &'static str,
        residual: f64,
    },

    #[error("center (dim {center}) and derived subalgebra (dim {derived}) do not split an algebra of dim {n}")]
    SplitInconsistent {
        center: usize,
        derived: usize,
        n: usize,
    },

    #[error("constructed witness failed verification: {0}")]
    WitnessVerificationFailed(String),

    #[error("generators are not generating: Σ X_k Y^k X_i differs from X_i by {residual:.3e}")]
    NotGenerating { residual: f64 },

    #[error("projective calculus data violates {identity} (residual {residual:.3e})")]
    InvariantViolation {
        identity: &'static str,
        residual: f64,
    },

    #[error("Levi-Civita condition fails (max residual {residual:.3e})")]
    ConditionFails { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
