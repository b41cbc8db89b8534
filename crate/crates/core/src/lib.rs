//! Exact-to-tolerance computation in spaces of analytic functions on the
//! unit disc: truncated Taylor arithmetic, Duhamel products, Hardy /
//! Bergman / Bloch / Besov norms, and multiplicativity instruments for
//! composition operators, together with a verification suite that pins
//! every identity to an explicit tolerance.

pub mod duhamel;
pub mod error;
pub mod io;
pub mod operators;
pub mod quadrature;
pub mod series;
pub mod spaces;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use series::{TruncatedSeries, DEFAULT_WORKING_DEGREE, MAX_WORKING_DEGREE};
pub use spaces::{NormMethod, NormResult, SpaceSpec};
