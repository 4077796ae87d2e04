//! Exact and numeric tools for separation of variables in the two-variable
//! Macdonald and relativistic Calogero–Moser (Ruijsenaars) systems.

pub mod error;
pub mod laurent;
pub mod linalg;
pub mod macdonald;
pub mod numkernel;
pub mod pair;
pub mod qpoly;
pub mod ruijsenaars;
pub mod scalar;
pub mod sov;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::{Laurent1, Laurent2};
pub use pair::Pair;
pub use scalar::{QContext, Q};
