//! Point counts over finite fields, Weil zeta functions, p-adic measures and
//! McKay checks for small explicit varieties and birational pairs.

pub mod counting;
pub mod error;
pub mod fields;
pub mod harness;
pub mod mckay;
pub mod padic;
pub mod polynomials;
pub mod schemes;
pub mod zeta;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/counting.md")]
mod book_counting {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/zeta.md")]
mod book_zeta {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/padic.md")]
mod book_padic {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/pairs.md")]
mod book_pairs {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/mckay.md")]
mod book_mckay {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
