//! Exact Kauffman bracket state sums on the disk, annulus and torus, and the
//! order-by-order expansion of the bracket into deformation operators.

pub mod corpus;
pub mod diagram;
pub mod exactalg;
pub mod exec;
pub mod report;
pub mod starprod;
pub mod statesum;
pub mod surface;
pub mod verify;

pub use exec::Exec;
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("malformed polynomial table: {0}")]
    MalformedTable(String),
    #[error("polynomial {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("state marks a crossing outside the marked set")]
    StateOutsideMarkedSet,
    #[error("essential components are not parallel: {0}")]
    NonParallelComponents(String),
    #[error("bad braid generator {0}")]
    BadGenerator(i32),
    #[error("class ({0}, {1}) is not primitive")]
    NonPrimitiveClass(i64, i64),
    #[error("surfaces do not match")]
    SurfaceMismatch,
    #[error("unsupported superposition: {0}")]
    UnsupportedSuperposition(String),
    #[error("matrix is not in SL(2, Z)")]
    NotUnimodular,
    #[error("operation needs a diagram with every crossing marked")]
    NotRealDiagram,
    #[error("linear system for the deformation polynomial is singular at k = {0}")]
    SingularSystem(usize),
    #[error("identity check failed: {0}")]
    TheoremViolation(String),
    #[error("unknown verification suite {0}")]
    UnknownSuite(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
