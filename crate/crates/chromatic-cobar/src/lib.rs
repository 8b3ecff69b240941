//! Exact symbolic computation for 2-primary chromatic homotopy theory.
//!
//! The crate computes, over exact rational arithmetic:
//!
//! * the universal 2-typical formal group law over `BP_*` with Hazewinkel
//!   generators (logarithm, exponential, 2-series, universal isomorphism,
//!   right unit, coproduct),
//! * finitely presented `BP_*BP`-comodules for Moore spectra and stunted
//!   projective spectra, together with their coactions,
//! * reduced cobar differentials in cohomological degree `s <= 2` and
//!   degree-bounded Ext groups by integer linear algebra,
//! * differentials and indeterminacy tables of the modified algebraic
//!   Atiyah-Hirzebruch spectral sequence,
//! * validation and SVG rendering of Adams-Novikov chart documents and
//!   filtered-root-invariant traces.
//!
//! Everything is deterministic and side-effect free; all values are
//! immutable after construction and safe to share across threads.

pub mod algebra;
pub mod error;
pub mod linalg;
pub mod fgl;
pub mod comodule;
pub mod cobar;
pub mod aahss;
pub mod chart;
pub mod cli;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
