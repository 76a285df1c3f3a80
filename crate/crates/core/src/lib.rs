//! Exact computation of binomial Eulerian polynomials over s-inversion
//! sequences, their refinements, and the permutation, colored-permutation and
//! edgewise-subdivision families built from them, together with exact
//! certificates for real-rootedness and interlacing.

pub mod checks;
pub mod colored;
pub mod error;
pub mod invseq;
pub mod perms;
pub mod poly;
pub mod realroot;
pub mod recurrence;
pub mod subdivision;

pub use error::{Error, Result};
pub use invseq::{InvSeq, SVec};
pub use poly::IntPoly;
pub use realroot::{InterlacingVerdict, Reason};
