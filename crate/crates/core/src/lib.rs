//! Dual groups of covering groups, local Hilbert symbols, metaplectic tori and
//! real-group parameter combinatorics, computed exactly over the integers.

pub mod error;
pub mod json;
pub mod lattice;
pub mod rootdata;
pub mod covers;
pub mod localarith;
pub mod parse;
pub mod realforms;
pub mod torus;

pub use error::{Error, Result};
