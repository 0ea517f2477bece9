use thiserror::Error;

/// Errors reported by construction, enumeration and statistics routines.
#[derive(Debug, Error)]
pub enum GeoError {
    #[error("point ({x}, {y}) is not in the upper half-plane (need y > 0)")]
    InvalidUhpPoint { x: f64, y: f64 },

    #[error("point ({u}, {v}) is not inside the unit disk")]
    InvalidDiskPoint { u: f64, v: f64 },

    #[error("matrix [[{a}, {b}], [{c}, {d}]] has determinant {det}, want 1")]
    InvalidIsometry {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        det: f64,
    },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("genus {got} outside supported range {min}..={max}")]
    GenusOutOfRange { got: u32, min: u32, max: u32 },

    #[error("ball radius {0} is below the minimum sqrt(2)")]
    RadiusTooSmall(f64),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("integer overflow in exact matrix arithmetic")]
    IntegerOverflow,

    #[error("fundamental-domain reduction did not terminate within {0} steps")]
    ReductionStalled(usize),

    #[error("construction self-check failed: {0}")]
    ConstructionCheck(String),

    #[error("surface mismatch: {0} vs {1}")]
    SurfaceMismatch(String, String),

    #[error("point set too small: need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("dedup gap guard tripped: distinct elements {0:.3e} apart")]
    DedupGap(f64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GeoError>;
