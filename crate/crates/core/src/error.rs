use thiserror::Error;

/// Errors raised by the analysis pipeline.
///
/// Every variant has a stable machine-readable code (see [`Error::code`])
/// so front ends can report failures without string matching.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group closure exceeded the bound {bound} (reached {reached} elements)")]
    ClosureExceedsBound { bound: usize, reached: usize },

    #[error("element {element} fixes a curve pointwise; the action is not free in codimension 1")]
    NotCodimOneFree { element: String },

    #[error("non-node singularity at {point}: {detail}")]
    NonNodeSingularity { point: String, detail: String },

    #[error("inconsistent Euler data: {detail}")]
    NonIntegralChi { detail: String },

    #[error("pullback intersection {n1}*{n2} is not divisible by the group order {order}")]
    NonIntegralIntersection { n1: usize, n2: usize, order: usize },

    #[error("code dimension {dim} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("discriminant {delta} is not a power of two")]
    NonPowerOfTwoDiscriminant { delta: u64 },

    #[error("k = {k} and discriminant {delta} admit no integral code dimension")]
    NonIntegralDimension { k: u32, delta: u64 },

    #[error("cover invariants are not integral: {detail}")]
    NonIntegralInvariant { detail: String },

    #[error("out of scope: {detail}")]
    OutOfScope { detail: String },
}

impl Error {
    /// Stable identifier for machine-readable error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ClosureExceedsBound { .. } => "ClosureExceedsBound",
            Error::NotCodimOneFree { .. } => "NotCodimOneFree",
            Error::NonNodeSingularity { .. } => "NonNodeSingularity",
            Error::NonIntegralChi { .. } => "NonIntegralChi",
            Error::NonIntegralIntersection { .. } => "NonIntegralIntersection",
            Error::DimensionTooLarge { .. } => "DimensionTooLarge",
            Error::NonPowerOfTwoDiscriminant { .. } => "NonPowerOfTwoDiscriminant",
            Error::NonIntegralDimension { .. } => "NonIntegralDimension",
            Error::NonIntegralInvariant { .. } => "NonIntegralInvariant",
            Error::OutOfScope { .. } => "OutOfScope",
        }
    }
}
