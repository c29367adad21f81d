use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("degenerate polygon: {0}")]
    Degenerate(String),
    #[error("not a strictly convex vertex cycle: {0}")]
    NotConvex(String),
    #[error("requires lattice polygon")]
    NotLattice,
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),
    #[error("zero dual vector")]
    ZeroDirection,
    #[error("not a lattice width direction")]
    NotWidthDirection,
    #[error("twelve-check requires reflexive polygon")]
    NotReflexive,
    #[error("identity requires k >= 1")]
    NoInteriorPoints,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}
