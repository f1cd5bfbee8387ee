//! The user guide, rendered by mdbook from `book/` at the repository root.
//! Including the chapters here compiles their code samples as doc-tests, so
//! the guide cannot drift from the API.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/normal-ordering.md")]
pub mod normal_ordering {}

#[doc = include_str!("../../../book/src/diagrams.md")]
pub mod diagrams {}

#[doc = include_str!("../../../book/src/fock-space.md")]
pub mod fock_space {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
