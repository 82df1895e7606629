//! Exact computation of lower central series quotients `B_i = L_i / L_{i+1}`
//! of free associative algebras modulo one homogeneous relation, together
//! with the Kähler-differential quotient `Ω¹/dΩ⁰` of the abelianization.
//!
//! All arithmetic is over the rationals; there is no floating point anywhere.

pub mod error;
pub mod exactla;
pub mod hseries;
pub mod kahler;
pub mod lcs;
pub mod ncpoly;

pub use error::{Error, Result};
