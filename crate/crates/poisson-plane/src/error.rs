//! Crate-wide error type with stable, documented messages.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },

    #[error("generator {index} has degree {degree}, above the working cap {cap}")]
    GeneratorAboveCap { index: usize, degree: u32, cap: u32 },

    #[error("degree cap {cap} is below p + q = {min}")]
    CapBelowGenerators { cap: u32, min: u32 },

    #[error("report degree {report} exceeds the basis degree cap {cap}")]
    ReportAboveCap { report: u32, cap: u32 },

    #[error("tuple is empty")]
    EmptyTuple,

    #[error("point {index} is the origin")]
    OriginPoint { index: usize },

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("interpolation needs at least one node")]
    NoNodes,

    #[error("last interpolation node is zero")]
    ZeroLastNode,

    #[error("node {index} has the same {power}-th power as the last node")]
    CoincidentPower { index: usize, power: u32 },

    #[error("surface relation needs deg p >= 2, got {degree}")]
    SurfaceDegreeTooLow { degree: i64 },

    #[error("images do not define a derivation of the surface ring")]
    NotADerivation,

    #[error("parse error: {0}")]
    Parse(String),
}
