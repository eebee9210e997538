//! Exact combinatorics of sliced planar grid diagrams.
//!
//! A planar grid diagram carries a bigraded chain complex over
//! `F2[U1,...,UN]` whose differential counts empty rectangles. Cutting the
//! diagram along vertical lines produces slabs; the interface between two
//! slabs carries a differential graded algebra of strand diagrams, the slabs
//! carry one-sided modules or bimodules over it, and gluing corresponds to
//! tensoring over the interface algebra, on the nose. This crate implements
//! the whole structure with exact `F2` arithmetic, together with per-bidegree
//! homology and a command-line front end for running and verifying the
//! constructions.
//!
//! Start with the runnable examples (`cargo run --example two_unknots`) or
//! the `gridslice` binary.

pub mod bordered;
pub mod cli;
pub mod coeffs;
pub mod complexes;
pub mod grid;
pub mod homology;
pub mod strands;
