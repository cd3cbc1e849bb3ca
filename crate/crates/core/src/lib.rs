//! Uniform hypergraphs, degree cleaning, and independent-set bounds.
//!
//! The central routine is [`cleaning::run_cleaning`]: starting from an
//! `(r+1)`-uniform hypergraph it repeatedly deletes a vertex whose degree
//! exceeds `(1+η)` times the current average degree, until the average degree
//! collapses, enough vertices are gone, or the maximum degree is within a
//! `(1+η)` factor of the average. [`independent::transfer_alpha`] turns that
//! run into an independent set by handing the final subhypergraph either to the
//! randomized-deletion construction or to a pluggable maximum-degree solver.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cleaning;
pub mod harness;
pub mod hypergraph;
pub mod independent;
pub mod nearly_log;
pub mod numeric;
pub mod registry;
pub mod weighted;

pub use hypergraph::{DegreeProfile, HypergraphError, Induced, UniformHypergraph, Vertex};
pub use nearly_log::CandidateFunction;
pub use numeric::Rational;
