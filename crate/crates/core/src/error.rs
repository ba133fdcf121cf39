use thiserror::Error;

/// Errors raised by the numerical and combinatorial routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e}, matrix norm {norm:e})")]
    NonConvergence { sweeps: usize, off_norm: f64, norm: f64 },

    #[error("closure scaling stalled after {iterations} iterations (defect {defect:e})")]
    ScalingFailed { iterations: usize, defect: f64 },

    #[error("eigenvalue {index} is not simple: gap {gap:e} below tolerance {tol:e}")]
    DegenerateEigenvalue { index: usize, gap: f64, tol: f64 },

    #[error("matrix is not a projection: |E^2 - E| = {defect:e}")]
    NotAProjection { defect: f64 },

    #[error("polygon is not closed: defect {defect:e} exceeds {tol:e}")]
    ClosureViolation { defect: f64, tol: f64 },

    #[error("strong triangle inequalities violated at indices {indices:?} (1-based)")]
    TriangleInequality { indices: Vec<usize> },

    #[error("evaluation point coincides with pole {pole}")]
    PoleEvaluation { pole: f64 },

    #[error("eigenvalue {value} is repeated after cancelling forced coincidences")]
    RepeatedEigenvalue { value: f64 },

    #[error("spectra do not interlace: {detail}")]
    InterlacingViolation { detail: String },

    #[error("interlacing is not strict at ({i}, {j}); angle undefined")]
    StrictInterlacingViolation { i: usize, j: usize },

    #[error("zero vector passed to four-point function")]
    ZeroVector,

    #[error("pattern lies on the boundary of the polytope: {detail}")]
    BoundaryPattern { detail: String },

    #[error("reconstructed edge vector has norm {norm} (expected 1)")]
    NormDefect { norm: f64 },

    #[error("no interior pattern found after {tries} tries")]
    EmptyInterior { tries: usize },

    #[error("{what} exceeds the size limit {limit}")]
    SizeLimit { what: String, limit: usize },

    #[error("index out of range: {detail}")]
    IndexOutOfRange { detail: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable snake_case name of the variant, used in machine-readable
    /// error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonConvergence { .. } => "non_convergence",
            Error::ScalingFailed { .. } => "scaling_failed",
            Error::DegenerateEigenvalue { .. } => "degenerate_eigenvalue",
            Error::NotAProjection { .. } => "not_a_projection",
            Error::ClosureViolation { .. } => "closure_violation",
            Error::TriangleInequality { .. } => "triangle_inequality",
            Error::PoleEvaluation { .. } => "pole_evaluation",
            Error::RepeatedEigenvalue { .. } => "repeated_eigenvalue",
            Error::InterlacingViolation { .. } => "interlacing_violation",
            Error::StrictInterlacingViolation { .. } => "strict_interlacing_violation",
            Error::ZeroVector => "zero_vector",
            Error::BoundaryPattern { .. } => "boundary_pattern",
            Error::NormDefect { .. } => "norm_defect",
            Error::EmptyInterior { .. } => "empty_interior",
            Error::SizeLimit { .. } => "size_limit",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
