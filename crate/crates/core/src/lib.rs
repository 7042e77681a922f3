//! Exact toric residues, Jeffrey-Kirwan residues, residue mirror series and
//! mixed volumes for lattice polytopes with a coherent triangulation.

pub mod arith;
pub mod artinian;
pub mod cayley;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod jk;
pub mod lattice;
pub mod lp;
pub mod mirror;
pub mod mixed;
pub mod mp;
pub mod poly;

pub use arith::{Int, IntVec, Rat};
pub use error::{Error, Result};
pub use poly::Polynomial;
