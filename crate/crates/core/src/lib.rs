//! Exact counting, singularity analysis and random generation of closed
//! lambda terms and Motzkin trees under structural restrictions.

pub mod counting;
pub mod family;
pub mod radicals;
pub mod sampling;
pub mod terms;

pub use family::Family;
pub use terms::{Binder, Node, Term};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/terms.md")]
    mod terms {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/singularities.md")]
    mod singularities {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
}
