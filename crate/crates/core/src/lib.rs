//! A small finite-domain constraint solver built around value-symmetry
//! breaking.
//!
//! Static methods post constraints before search: lex-leader constraints for
//! every element of a (variable/value) symmetry group, the `Precedence`
//! global constraint for interchangeable values, or first-occurrence
//! channeling with an ordering chain. The dynamic method restricts branching
//! to one value per orbit of the stabilizer of the current partial assignment
//! (GE-tree search). Every method can be checked against an orbit oracle
//! computed from a full enumeration.

pub mod domain;
pub mod engine;
pub mod error;
pub mod model;
pub mod models;
pub mod propagators;
pub mod search;
pub mod symmetry;
pub mod witness;

pub use domain::{remove_value, Assignment, DomainSet, VarId};
pub use engine::{propagate_to_fixpoint, Engine, PropagationOutcome, Store};
pub use error::{Error, Inconsistency, PropResult, Result};
pub use model::{Model, ModelBuilder};
pub use propagators::Constraint;
pub use search::{
    compare_methods, getree_allowed_values, solve, ModeRun, SearchConfig, SearchStats, Solution,
    SymmetryMode, ValOrder, VarOrder,
};
pub use symmetry::{
    apply_symmetry, close_group, exact_valsym_prune, full_symmetric_group, orbit_partition, Orbit,
    SymmetrySpec, ValuePermutation, VarValueSymmetry,
};
