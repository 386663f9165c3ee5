pub mod analysis;
pub mod cli;
pub mod continued_fractions;
pub mod cycle_integral;
pub mod error;
pub mod markov_tree;
pub mod modular_j;
pub mod numeric;
pub mod quadrature;
pub mod tree_path;

pub use error::{Error, Result};
