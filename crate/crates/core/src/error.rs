use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not unitary: max |U†U - 1| = {defect:.3e} exceeds {tolerance:.1e}")]
    NotUnitary { defect: f64, tolerance: f64 },

    #[error("matrix of size {size} is not a bipartite N²×N² operator")]
    NotBipartite { size: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("Pauli index {0} out of range 1..=3")]
    PauliIndex(usize),

    #[error("gate is not a local product: second Schmidt coefficient {0:.3e}")]
    NotLocal(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search budget of {attempts} attempts exhausted: {reason}")]
    SearchExhausted { attempts: usize, reason: String },

    #[error("linear algebra backend failed: {0}")]
    Linalg(#[from] ndarray_linalg::error::LinalgError),

    #[error("eigendecomposition did not reconstruct the input: residual {0:.3e}")]
    Eigendecomposition(f64),
}
