//! Exact symbolic engine for decorated rooted trees and decorated polygons,
//! their differentials, the translation of forests into admissible algebraic
//! cycles in cubical coordinates, bar-construction coproducts on polygons,
//! a formal iterated-integral algebra with coproduct and cobracket, and a
//! floating-point layer for cross-checking against multiple polylogarithm
//! values.
//!
//! Everything symbolic is computed over exact rationals; linear algebra is
//! carried by [`LinComb`], formal sums over canonically ordered basis types.

pub mod atom;
pub mod bar;
pub mod checks;
pub mod cycle;
pub mod cycling;
pub mod dissect;
pub mod exec;
pub mod gen;
pub mod iterint;
pub mod lincomb;
pub mod numeric;
pub mod polygon;
pub mod psi;
pub mod scalar;
pub mod tree;

pub use atom::{Atom, AtomKind};
pub use lincomb::{shuffle, Graded, LinComb, TensorWord, WedgeWord};
pub use scalar::Scalar;
