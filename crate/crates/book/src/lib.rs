//! The chapters of the guide in `book/src`, included here so that every
//! code block runs as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/degree-conditions.md")]
pub mod degree_conditions {}

#[doc = include_str!("../../../book/src/packing.md")]
pub mod packing {}

#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}

#[doc = include_str!("../../../book/src/exchange.md")]
pub mod exchange {}

#[doc = include_str!("../../../book/src/absorbing.md")]
pub mod absorbing {}

#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}
