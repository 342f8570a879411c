use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the solvers and their supporting plumbing.
///
/// Pivot and block indices are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order must be at least 1")]
    EmptyOrder,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scalar pivot {0} vanished; use the 2x2 block solver")]
    ZeroPivot(usize),
    #[error("2x2 pivot block {0} is singular")]
    SingularPivotBlock(usize),
    #[error("matrix is singular to working precision")]
    SingularMatrix,
    #[error("capacitance matrix is singular")]
    CapacitanceSingular,
    #[error("right-hand side has zero norm")]
    DegenerateRhs,
    #[error("dense assembly of order {order} exceeds the limit of {limit}")]
    SizeGuard { order: usize, limit: usize },
}

impl Error {
    /// Short variant name, used on the CLI diagnostic stream and in
    /// `FAIL(<name>)` benchmark cells.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyOrder => "EmptyOrder",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ZeroPivot(_) => "ZeroPivot",
            Error::SingularPivotBlock(_) => "SingularPivotBlock",
            Error::SingularMatrix => "SingularMatrix",
            Error::CapacitanceSingular => "CapacitanceSingular",
            Error::DegenerateRhs => "DegenerateRhs",
            Error::SizeGuard { .. } => "SizeGuard",
        }
    }

    /// True for numerical breakdowns (as opposed to malformed input).
    pub fn is_breakdown(&self) -> bool {
        matches!(
            self,
            Error::ZeroPivot(_)
                | Error::SingularPivotBlock(_)
                | Error::SingularMatrix
                | Error::CapacitanceSingular
        )
    }
}
