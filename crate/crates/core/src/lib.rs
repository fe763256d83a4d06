//! Exact engine for finite-group-graded rings and modules over prime
//! fields, built to check graded Morita theory on concrete instances:
//! context axioms, trace surjectivity, the equivalence functors between
//! categories of unital torsion-free graded modules, and the induced
//! submodule/ideal lattice correspondences.
//!
//! Everything is exact F_p arithmetic on structure constants; validators
//! return witness-carrying reports rather than booleans, and all operations
//! are pure, so batch checks parallelize freely (see [`par`]).

pub mod context;
pub mod corpus;
pub mod error;
pub mod field;
pub mod graded;
pub mod group;
pub mod linalg;
pub mod par;

pub use error::{Error, Result};
pub use field::{Fp, Scalar};
pub use group::{FiniteGroup, GroupElem};
pub use linalg::{Matrix, Subspace};
