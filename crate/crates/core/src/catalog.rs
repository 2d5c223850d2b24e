//! Small algebras and actions bundled with the crate.

use crate::atom_structure::AtomStructure;
use crate::concrete::ConcreteAlgebra;
use crate::format::{parse_action, parse_atom_structure, parse_concrete};
use crate::group::GroupAction;

pub const TWO_THREE: &str = include_str!("../data/two_three.ra");
pub const FIVE_SEVEN: &str = include_str!("../data/five_seven.ra");
pub const Z3_ACTION: &str = include_str!("../data/z3.act");
pub const D5_ACTION: &str = include_str!("../data/d5.act");
pub const Z2_SWAP_ACTION: &str = include_str!("../data/z2_swap.act");
pub const TWO_TWINS: &str = include_str!("../data/two_twins.rel");

/// `2_3`: atoms `1'`, `r`, `r^`, the cycle `r r r` forbidden.
pub fn two_three() -> AtomStructure {
    parse_atom_structure(TWO_THREE).expect("bundled file parses")
}

/// `5_7`: symmetric atoms `1'`, `a`, `b`, the cycles `a a a` and `b b b`
/// forbidden.
pub fn five_seven() -> AtomStructure {
    parse_atom_structure(FIVE_SEVEN).expect("bundled file parses")
}

pub fn z3_action() -> GroupAction {
    parse_action(Z3_ACTION).expect("bundled file parses")
}

pub fn d5_action() -> GroupAction {
    parse_action(D5_ACTION).expect("bundled file parses")
}

pub fn z2_swap_action() -> GroupAction {
    parse_action(Z2_SWAP_ACTION).expect("bundled file parses")
}

/// Two twins `{0,1}`, `{2,3}` with the block between them left whole.
pub fn two_twins_concrete() -> ConcreteAlgebra {
    parse_concrete(TWO_TWINS).expect("bundled file parses")
}

/// Direct product of two atom structures: the disjoint union of the atoms,
/// with cycles only inside each factor. Names are prefixed `l.` and `r.`.
pub fn direct_product(left: &AtomStructure, right: &AtomStructure) -> AtomStructure {
    let off = left.atom_count();
    let names = left
        .names()
        .iter()
        .map(|n| format!("l.{n}"))
        .chain(right.names().iter().map(|n| format!("r.{n}")))
        .collect();
    let converse = left
        .converse_map()
        .iter()
        .copied()
        .chain(right.converse_map().iter().map(|&c| c + off))
        .collect();
    let identity = left
        .identity_atoms()
        .chain(right.identity_atoms().map(|e| e + off));
    let cycles = left
        .cycles()
        .iter()
        .copied()
        .chain(right.cycles().iter().map(|&(x, y, z)| (x + off, y + off, z + off)));
    AtomStructure::new(names, converse, identity, cycles).expect("ids shifted into range")
}

pub fn two_three_squared() -> AtomStructure {
    direct_product(&two_three(), &two_three())
}
