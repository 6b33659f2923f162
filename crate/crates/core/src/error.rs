//! Crate-wide error type.

use crate::dynamics::Trajectory;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Evaluation point violates the declared clearance from a singular locus.
    #[error("point ({x:?}) is {clearance:.3e} from a declared singular locus (minimum clearance {required:.3e})")]
    SingularLocus {
        x: [f64; 3],
        clearance: f64,
        required: f64,
    },

    /// A finite-difference stencil point fell inside the clearance band.
    #[error("finite-difference stencil around ({x:?}) crosses a declared singular locus")]
    StencilCrossesLocus { x: [f64; 3] },

    #[error("matrix is numerically singular (det {det:.3e}, condition estimate {cond:.3e})")]
    SingularMatrix { det: f64, cond: f64 },

    #[error("radius must be positive (got {0})")]
    NonPositiveRadius(f64),

    #[error("radial profile vanishes at r = {0}")]
    ProfileZero(f64),

    #[error("refractive index must be positive (n({x:?}) = {n:.3e})")]
    NonPositiveIndex { x: [f64; 3], n: f64 },

    #[error("torsion input is not antisymmetric in its lower index pair (max violation {0:.3e})")]
    NotAntisymmetric(f64),

    #[error("empty sample set")]
    EmptySamples,

    /// Integration hit a non-finite state; the partial trajectory up to the
    /// last valid sample is attached.
    #[error("non-finite state encountered at s = {s:.6}")]
    NonFiniteState { s: f64, partial: Box<Trajectory> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by domain violations (singular loci, singular
    /// matrices, non-finite states) rather than bad configuration.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::SingularLocus { .. }
                | Error::StencilCrossesLocus { .. }
                | Error::SingularMatrix { .. }
                | Error::NonPositiveRadius(_)
                | Error::ProfileZero(_)
                | Error::NonPositiveIndex { .. }
                | Error::NonFiniteState { .. }
        )
    }
}
