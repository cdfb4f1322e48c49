//! Exact integer verification of low-degree symmetric cohomology of finite
//! abelian groups and of Picard computations over cusp-like rings. See the
//! book under `book/` for a guided tour.

pub mod bd_formal;
pub mod exact_linalg;
pub mod finab;
pub mod polyring;
pub mod semigroup;
pub mod cusp_pic;
pub mod report;
pub mod cli;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/linalg.md")]
    mod linalg {}
    #[doc = include_str!("../../../book/src/breen_deligne.md")]
    mod breen_deligne {}
    #[doc = include_str!("../../../book/src/symmetric.md")]
    mod symmetric {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/cusp.md")]
    mod cusp {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
