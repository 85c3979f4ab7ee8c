//! Primitive disks and Goeritz groups of genus-2 Heegaard splittings of
//! lens spaces, computed from words in the free group of rank 2.

pub mod classify;
pub mod error;
pub mod farey;
pub mod parse;
pub mod presentation;
pub mod primitivity;
pub mod report;
pub mod sequence;
pub mod shell;
pub mod snf;
pub mod word;

pub use error::{Error, Result};
pub use word::{CyclicWord, Gen, Letter, Word};
