//! Finite-scale workbench for ordered universal algebra: posets and monotone
//! maps, coinserters and the colimits built from them, continuous algebras,
//! extended terms with formal ω-joins, and monads presented by finite-arity
//! Kleisli data.
//!
//! Every structure is finite, so all the universal properties and closure
//! theorems are checked exhaustively up to a size bound; see [`verify`].

pub mod algebra;
pub mod colimit;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod monad;
pub mod poset;
pub mod report;
pub mod term;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use report::Report;
