//! Exact computation of automorphism groups of K3 surfaces whose Picard
//! lattice has rank two.
//!
//! Given the even hyperbolic lattice with Gram matrix `((2a, b), (b, 2c))`,
//! [`aut::classify`] decides whether the automorphism group is finite,
//! infinite cyclic or infinite dihedral, and produces the generators together
//! with their symplectic tag and topological entropy.
//!
//! - [`pell`]: Pell and generalized Pell equations, orbit decomposition.
//! - [`lattice`]: lattice construction, isometries, discriminant-group action.
//! - [`divisors`]: classes of prescribed square and orbit ratio sequences.
//! - [`aut`]: the rotation `h`, generators, involutions, classification.
//! - [`cli`]: command-line front end and JSON records.
//!
//! All arithmetic is exact; floating point only appears in reported entropy
//! and ratio values.

pub mod aut;
pub mod cli;
pub mod divisors;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod pell;
pub mod record;

pub use aut::{classify, AutClassification, GeneratorReport, InvolutionPair};
pub use divisors::DivisorClass;
pub use error::{Error, Result};
pub use lattice::{make_lattice, DiscAction, Isometry2, Rank2Lattice};
pub use matrix::Mat2;
pub use pell::{OrbitSet, PellSolution};
