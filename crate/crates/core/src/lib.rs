pub mod basis;
pub mod classify;
pub mod corpus;
pub mod equivalence;
pub mod error;
pub mod format;
pub mod hochschild;
pub mod linalg;
pub mod monomial;
pub mod presentation;
pub mod quiver;
pub mod relext;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    pub mod presentations {}
    #[doc = include_str!("../../../book/src/bases.md")]
    pub mod bases {}
    #[doc = include_str!("../../../book/src/hochschild.md")]
    pub mod hochschild {}
    #[doc = include_str!("../../../book/src/relation_extensions.md")]
    pub mod relation_extensions {}
    #[doc = include_str!("../../../book/src/arrow_equivalence.md")]
    pub mod arrow_equivalence {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
