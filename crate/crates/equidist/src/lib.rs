pub mod bounds;
pub mod codes;
pub mod constructions;
pub mod delta;
pub mod embeddings;
pub mod error;
pub mod fields;
pub mod search;

pub use error::{Error, Result};
