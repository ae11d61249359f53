//! Exact algorithms for the irredundance numbers of a graph.
//!
//! An irredundant set is one where every member either has no neighbor in the
//! set or privately dominates some outside vertex. This crate computes the
//! lower and upper irredundance numbers ir(G) and IR(G) exactly via
//! parameterized search: kernelizations for the co-parameterized decision
//! problems, two branch-and-reduce solvers (a plain one and a
//! measure-weighted one), and an analysis toolkit that certifies the
//! branching factors behind their running-time guarantees.

pub mod analysis;
pub mod graph;
pub mod harness;
pub mod kernel;
pub mod labeling;
pub mod oracle;
pub mod solver;
