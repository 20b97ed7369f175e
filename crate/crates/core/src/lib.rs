//! Nilpotent Lie algebras of differential operators attached to weighted
//! rooted trees, their abelian ideals, and exact and spectral solutions of the
//! evolution equations they govern.

pub mod bch;
pub mod cli;
pub mod expr;
pub mod first_order;
pub mod heat;
pub mod ideals;
pub mod lie;
pub mod poly;
pub mod tree;

pub use poly::{GaussianRational, Monomial, MultiPoly, Rational, Var};
pub use tree::{build_tree, NodeClassification, TreeDiagram, TreeError, TreeSpec};
