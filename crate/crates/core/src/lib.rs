//! Finite relation algebras and group actions.
//!
//! The crate computes the algebra of relations compatible with a finite
//! permutation action, works with abstract relation algebras given by atom
//! structures, and decides whether an abstract algebra arises from an action
//! of the two-element group: exactly when it is simple, pair-dense, and each
//! atom or its converse is a function. Accepted algebras come with the
//! action and an explicit atom isomorphism.

pub mod atom_structure;
pub mod catalog;
pub mod concrete;
pub mod decision;
pub mod format;
pub mod group;
pub mod iso;
pub mod structure;

pub use atom_structure::{AtomId, AtomStructure, Element, ElementFlags, ValidationReport, Violation, Z2Axioms};
pub use concrete::{ConcreteAlgebra, Relation};
pub use decision::{
    check_action_represents, decide_z2, verify_decision, ConditionFailure, DecideOptions,
    Z2Condition, Z2Decision, Z2Representation,
};
pub use group::{GroupAction, OrbitPartition, Permutation};
pub use iso::{find_isomorphism, IsoWitness};
pub use structure::{classify, classify_atoms, AtomClassification, AtomShape, BasePartition};
