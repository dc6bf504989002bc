pub mod characters;
pub mod cli;
pub mod covariant;
pub mod diagram;
pub mod error;
pub mod generating;
pub mod hypergeo;
pub mod lemma;
pub mod omega;
pub mod poly;
pub mod scalar;
pub mod ternary;

pub use error::{Error, Result};
pub use poly::{apply_diff_operator, SparsePoly, VarTable};
pub use scalar::Scalar;
