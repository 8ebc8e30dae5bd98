pub mod calculus;
pub mod derham;
pub mod error;
pub mod exactla;
pub mod exterior;
pub mod functions;
pub mod graph;
pub mod group;
pub mod knots;
pub mod metric_hodge;
pub mod report;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups-and-calculi.md")]
    mod groups_and_calculi {}
    #[doc = include_str!("../../../book/src/exterior-algebra.md")]
    mod exterior_algebra {}
    #[doc = include_str!("../../../book/src/de-rham.md")]
    mod de_rham {}
    #[doc = include_str!("../../../book/src/hodge.md")]
    mod hodge {}
    #[doc = include_str!("../../../book/src/knots.md")]
    mod knots {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
