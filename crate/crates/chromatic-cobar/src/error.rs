use thiserror::Error;

/// Errors shared by all modules of the engine.
#[derive(Error, Debug)]
pub enum Error {
    /// A coefficient with negative 2-adic valuation appeared where a
    /// 2-locally integral value was required.
    #[error("non-integral coefficient: {0}")]
    NonIntegral(String),

    /// Series composition requires the inner series to have zero constant
    /// term.
    #[error("inner series has a non-zero constant term")]
    ConstantTerm,

    /// Series reversion requires a unit leading coefficient on `x`.
    #[error("series does not start with a unit multiple of x")]
    BadLeadingTerm,

    /// An operation needed coefficients beyond the recorded truncation
    /// order.
    #[error("truncation order exceeded: {0}")]
    TruncationExceeded(String),

    /// An exported series or structure constant failed the integrality
    /// contract. This signals an implementation bug, never expected data.
    #[error("integrality failure: {0}")]
    IntegralityFailure(String),

    /// A cell shift left the bottom of a stunted window.
    #[error("window underflow: {0}")]
    WindowUnderflow(String),

    /// A cobar or coaction computation needed cells outside the stored
    /// window.
    #[error("window exceeded: {0}")]
    WindowExceeded(String),

    /// A monomial basis enumeration went past the configured size limit.
    #[error("degree too large: {0}")]
    DegreeTooLarge(String),

    /// No correction makes the requested Greek-letter representative
    /// divisible; the index is beyond the existence bound.
    #[error("no correction achieves the requested divisibility for ({i}/{j})")]
    NotDivisible { i: u64, j: u32 },

    /// A propagated spectral sequence class is zero in Ext.
    #[error("propagated class vanishes: {0}")]
    VanishingProduct(String),

    /// Indeterminacy table lookup outside the tabulated range.
    #[error("outside tabulated range: {0}")]
    OutOfTable(String),

    /// The engine's recomputation disagrees with the reference table.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// A spectral sequence target is not in the named-class dictionary.
    /// Surfaced for review, never silently dropped.
    #[error("unidentified class: {0}")]
    Unidentified(String),

    /// Input that should be a cocycle is not one.
    #[error("not a cocycle")]
    NotACocycle,

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
