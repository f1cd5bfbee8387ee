//! Toolkit for a projector-twisted deformation of the full Fock space: exact
//! symbolic normal ordering of creator/annihilator/projector words, the
//! scalar q-Wick expansion, the diagram statistics that weight both, and a
//! finite-dimensional matrix model for numeric verification.
//!
//! The crate is organized around double-entry bookkeeping: every nontrivial
//! computation has a second, independent implementation (closed-form engine
//! vs rewrite engine, diagram weight π vs block statistic c, symbolic normal
//! form vs direct matrix application), and the verification suites assert
//! that the routes agree.

pub mod combinatorics;
mod error;
pub mod fock;
pub mod guide;
pub mod qwick;
mod report;
pub mod symbolic;

pub use error::{Error, Result};
pub use report::VerifyReport;
