//! Exact toric combinatorics of reflexive Gorenstein cones and their Clifford
//! double mirrors: lattices, cones, decompositions of the degree element,
//! central fans, quotient polytopes and the Clifford data on top of them.

pub mod arith;
pub mod convex;
pub mod lattice;
pub mod decomposition;
pub mod gorenstein;
pub mod lp;
pub mod poly;
pub mod quotient;
pub mod fans;
pub mod clifford;
pub mod corpus;
pub mod io;
