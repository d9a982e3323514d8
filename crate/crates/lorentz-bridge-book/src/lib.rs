//! mdbook cannot run a book's code blocks as tests against a local crate,
//! so each chapter is included here as a doc comment and `cargo test --doc`
//! does the work. One module per chapter keeps failures attributable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/four-vectors.md")]
pub mod four_vectors {}

#[doc = include_str!("../../../book/src/matter-waves.md")]
pub mod matter_waves {}

#[doc = include_str!("../../../book/src/proportionality.md")]
pub mod proportionality {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
