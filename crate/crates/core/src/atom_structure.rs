//! Finite relation algebras given by their atom structures.
//!
//! An [`AtomStructure`] lists its atoms by name, a converse involution, the
//! atoms below the identity `1'`, and the set of cycles `(x, y, z)`, each
//! meaning `z <= x ; y`. Every element of the (finite, hence atomic) algebra
//! is a set of atoms, so the Boolean operations are set operations and
//! composition is read off the cycle table.

use std::collections::BTreeSet;
use std::fmt;
use std::ptr;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Dense index of an atom, in declaration order.
pub type AtomId = usize;

/// `(x, y, z)` with `z <= x ; y`.
pub type Cycle = (AtomId, AtomId, AtomId);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("converse map has {found} entries for {expected} atoms")]
    ConverseLength { expected: usize, found: usize },
    #[error("atom id {id} out of range for {count} atoms")]
    AtomOutOfRange { id: AtomId, count: usize },
    #[error("elements belong to different atom structures")]
    MismatchedStructures,
    #[error("classification undefined on zero")]
    ZeroElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomStructure {
    names: Vec<String>,
    converse: Vec<AtomId>,
    identity: FixedBitSet,
    cycles: BTreeSet<Cycle>,
    /// `products[x * n + y]` is the set of atoms below `x ; y`.
    products: Vec<FixedBitSet>,
}

/// The six Peircean transforms of a cycle, starting with the cycle itself.
pub fn peircean_transforms(converse: &[AtomId], (x, y, z): Cycle) -> [Cycle; 6] {
    let c = |a: AtomId| converse[a];
    [
        (x, y, z),
        (c(x), z, y),
        (z, c(y), x),
        (y, c(z), c(x)),
        (c(z), x, c(y)),
        (c(y), c(x), c(z)),
    ]
}

impl AtomStructure {
    /// Builds a structure exactly as given. Cycles are taken verbatim; use
    /// [`AtomStructure::close_cycles`] to add the missing Peircean transforms.
    pub fn new(
        names: Vec<String>,
        converse: Vec<AtomId>,
        identity: impl IntoIterator<Item = AtomId>,
        cycles: impl IntoIterator<Item = Cycle>,
    ) -> Result<Self, AlgebraError> {
        let n = names.len();
        if converse.len() != n {
            return Err(AlgebraError::ConverseLength {
                expected: n,
                found: converse.len(),
            });
        }
        let check = |id: AtomId| {
            if id < n {
                Ok(id)
            } else {
                Err(AlgebraError::AtomOutOfRange { id, count: n })
            }
        };
        for &c in &converse {
            check(c)?;
        }
        let mut id_set = FixedBitSet::with_capacity(n);
        for e in identity {
            id_set.insert(check(e)?);
        }
        let mut cycle_set = BTreeSet::new();
        for (x, y, z) in cycles {
            cycle_set.insert((check(x)?, check(y)?, check(z)?));
        }
        Ok(Self::assemble(names, converse, id_set, cycle_set))
    }

    fn assemble(
        names: Vec<String>,
        converse: Vec<AtomId>,
        identity: FixedBitSet,
        cycles: BTreeSet<Cycle>,
    ) -> Self {
        let n = names.len();
        let mut products = vec![FixedBitSet::with_capacity(n); n * n];
        for &(x, y, z) in &cycles {
            products[x * n + y].insert(z);
        }
        AtomStructure {
            names,
            converse,
            identity,
            cycles,
            products,
        }
    }

    /// Returns the structure with its cycle set closed under the Peircean
    /// transforms.
    pub fn close_cycles(self) -> Self {
        let mut closed = BTreeSet::new();
        for &c in &self.cycles {
            closed.extend(peircean_transforms(&self.converse, c));
        }
        Self::assemble(self.names, self.converse, self.identity, closed)
    }

    pub fn atom_count(&self) -> usize {
        self.names.len()
    }

    pub fn atoms(&self) -> std::ops::Range<AtomId> {
        0..self.names.len()
    }

    pub fn name(&self, atom: AtomId) -> &str {
        &self.names[atom]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn atom_by_name(&self, name: &str) -> Option<AtomId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn converse_of(&self, atom: AtomId) -> AtomId {
        self.converse[atom]
    }

    pub fn converse_map(&self) -> &[AtomId] {
        &self.converse
    }

    pub fn is_identity_atom(&self, atom: AtomId) -> bool {
        self.identity.contains(atom)
    }

    pub fn identity_atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.identity.ones()
    }

    pub fn cycles(&self) -> &BTreeSet<Cycle> {
        &self.cycles
    }

    pub fn has_cycle(&self, x: AtomId, y: AtomId, z: AtomId) -> bool {
        self.products[x * self.atom_count() + y].contains(z)
    }

    /// Atoms below `x ; y` for atoms `x`, `y`.
    pub fn atom_product(&self, x: AtomId, y: AtomId) -> &FixedBitSet {
        &self.products[x * self.atom_count() + y]
    }

    // Set-level operations. Sets are bitsets of capacity `atom_count()`.

    pub(crate) fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.atom_count())
    }

    pub(crate) fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub(crate) fn diversity_set(&self) -> FixedBitSet {
        let mut s = self.full_set();
        s.difference_with(&self.identity);
        s
    }

    pub(crate) fn singleton(&self, atom: AtomId) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert(atom);
        s
    }

    pub(crate) fn compose_sets(&self, x: &FixedBitSet, y: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_set();
        for a in x.ones() {
            for b in y.ones() {
                out.union_with(self.atom_product(a, b));
            }
        }
        out
    }

    pub(crate) fn converse_set(&self, x: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_set();
        for a in x.ones() {
            out.insert(self.converse[a]);
        }
        out
    }

    fn compose_chain(&self, parts: &[&FixedBitSet]) -> FixedBitSet {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = self.compose_sets(&acc, p);
        }
        acc
    }

    pub(crate) fn set_is_point(&self, x: &FixedBitSet) -> bool {
        let one = self.full_set();
        self.compose_chain(&[x, &one, x]).is_subset(&self.identity)
    }

    pub(crate) fn set_is_pair(&self, x: &FixedBitSet) -> bool {
        let div = self.diversity_set();
        self.compose_chain(&[x, &div, x, &div, x])
            .is_subset(&self.identity)
    }

    pub(crate) fn set_is_function(&self, x: &FixedBitSet) -> bool {
        self.compose_sets(&self.converse_set(x), x)
            .is_subset(&self.identity)
    }

    pub fn atom_is_point(&self, atom: AtomId) -> bool {
        self.set_is_point(&self.singleton(atom))
    }

    pub fn atom_is_pair(&self, atom: AtomId) -> bool {
        self.set_is_pair(&self.singleton(atom))
    }

    pub fn atom_is_function(&self, atom: AtomId) -> bool {
        self.set_is_function(&self.singleton(atom))
    }

    // Elements.

    pub fn element(&self, atoms: impl IntoIterator<Item = AtomId>) -> Result<Element<'_>, AlgebraError> {
        let mut set = self.empty_set();
        for a in atoms {
            if a >= self.atom_count() {
                return Err(AlgebraError::AtomOutOfRange {
                    id: a,
                    count: self.atom_count(),
                });
            }
            set.insert(a);
        }
        Ok(self.wrap(set))
    }

    fn wrap(&self, atoms: FixedBitSet) -> Element<'_> {
        Element {
            structure: self,
            atoms,
        }
    }

    pub fn atom(&self, atom: AtomId) -> Element<'_> {
        self.wrap(self.singleton(atom))
    }

    pub fn zero(&self) -> Element<'_> {
        self.wrap(self.empty_set())
    }

    pub fn one(&self) -> Element<'_> {
        self.wrap(self.full_set())
    }

    pub fn identity(&self) -> Element<'_> {
        self.wrap(self.identity.clone())
    }

    pub fn diversity(&self) -> Element<'_> {
        self.wrap(self.diversity_set())
    }

    /// Every element of the algebra, by enumerating atom subsets. Only
    /// sensible for small atom counts.
    pub fn all_elements(&self) -> impl Iterator<Item = Element<'_>> + '_ {
        let n = self.atom_count();
        assert!(n < 32, "element enumeration needs fewer than 32 atoms");
        (0u32..(1u32 << n)).map(move |mask| {
            let mut s = self.empty_set();
            for a in 0..n {
                if mask >> a & 1 == 1 {
                    s.insert(a);
                }
            }
            self.wrap(s)
        })
    }

    // Predicates used by the Z2 characterisation.

    /// First atom `a` with `1 ; a ; 1 != 1`.
    pub fn simplicity_counterexample(&self) -> Option<AtomId> {
        let one = self.full_set();
        self.atoms().find(|&a| {
            let a = self.singleton(a);
            self.compose_chain(&[&one, &a, &one]) != one
        })
    }

    pub fn is_simple(&self) -> bool {
        self.simplicity_counterexample().is_none()
    }

    /// First identity atom that is not a pair. In a finite algebra every
    /// nonzero element below `1'` contains an identity atom, and the only
    /// nonzero element below an atom is the atom itself, so this decides
    /// pair-density.
    pub fn pair_density_counterexample(&self) -> Option<AtomId> {
        self.identity_atoms().find(|&e| !self.atom_is_pair(e))
    }

    pub fn is_pair_dense(&self) -> bool {
        self.pair_density_counterexample().is_none()
    }

    /// First atom such that neither it nor its converse is a function.
    pub fn functionality_counterexample(&self) -> Option<AtomId> {
        self.atoms()
            .find(|&a| !self.atom_is_function(a) && !self.atom_is_function(self.converse[a]))
    }

    pub fn atoms_functional(&self) -> bool {
        self.functionality_counterexample().is_none()
    }

    pub fn check_z2_axioms(&self) -> Z2Axioms {
        Z2Axioms {
            simplicity: self.simplicity_counterexample(),
            pair_density: self.pair_density_counterexample(),
            functionality: self.functionality_counterexample(),
        }
    }

    /// The join of `x˘ ; y` over all pairs of functional atoms.
    pub fn functional_cover(&self) -> Element<'_> {
        let functional: Vec<AtomId> = self.atoms().filter(|&a| self.atom_is_function(a)).collect();
        let mut cover = self.empty_set();
        for &x in &functional {
            for &y in &functional {
                cover.union_with(self.atom_product(self.converse[x], y));
            }
        }
        self.wrap(cover)
    }

    /// Whether the functional atoms cover the unit: `sum { x˘ ; y } = 1`.
    pub fn check_functional_density(&self) -> bool {
        self.functional_cover().atoms == self.full_set()
    }

    // Validation.

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let n = self.atom_count();
        let name = |a: AtomId| self.names[a].clone();
        let names3 = |(x, y, z): Cycle| [name(x), name(y), name(z)];

        if n == 0 {
            v.push(Violation::Degenerate);
            return ValidationReport { violations: v };
        }

        let mut seen = BTreeSet::new();
        for (i, nm) in self.names.iter().enumerate() {
            if nm.is_empty() || nm.chars().any(char::is_whitespace) {
                v.push(Violation::BadName { position: i });
            } else if !seen.insert(nm.as_str()) {
                v.push(Violation::DuplicateName { name: nm.clone() });
            }
        }

        let mut involutive = true;
        for a in self.atoms() {
            if self.converse[self.converse[a]] != a {
                involutive = false;
                v.push(Violation::ConverseNotInvolution { atom: name(a) });
            }
        }
        if self.identity.count_ones(..) == 0 {
            v.push(Violation::NoIdentityAtoms);
        }
        for e in self.identity_atoms() {
            if self.converse[e] != e {
                v.push(Violation::IdentityNotSelfConverse { atom: name(e) });
            }
        }

        if involutive {
            let mut reported = BTreeSet::new();
            for &c in &self.cycles {
                for t in peircean_transforms(&self.converse, c) {
                    if !self.cycles.contains(&t) && reported.insert(t) {
                        v.push(Violation::CycleLaw {
                            present: names3(c),
                            missing: names3(t),
                        });
                    }
                }
            }
        }

        for a in self.atoms() {
            let domain = self
                .identity_atoms()
                .filter(|&e| self.has_cycle(e, a, a))
                .count();
            if domain != 1 {
                v.push(Violation::DomainAtom {
                    atom: name(a),
                    found: domain,
                });
            }
            let range = self
                .identity_atoms()
                .filter(|&f| self.has_cycle(a, f, a))
                .count();
            if range != 1 {
                v.push(Violation::RangeAtom {
                    atom: name(a),
                    found: range,
                });
            }
        }
        for &(x, y, z) in &self.cycles {
            if (self.is_identity_atom(x) && y != z) || (self.is_identity_atom(y) && x != z) {
                v.push(Violation::IdentityCycle {
                    cycle: names3((x, y, z)),
                });
            }
        }

        if v.is_empty() {
            if let Some(triple) = self.associativity_counterexample() {
                v.push(Violation::Associativity {
                    atoms: names3(triple),
                });
            }
        }
        ValidationReport { violations: v }
    }

    /// First atom triple with `(a ; b) ; c != a ; (b ; c)`.
    pub fn associativity_counterexample(&self) -> Option<Cycle> {
        for a in self.atoms() {
            for b in self.atoms() {
                let ab = self.atom_product(a, b);
                for c in self.atoms() {
                    let bc = self.atom_product(b, c);
                    let mut left = self.empty_set();
                    for z in ab.ones() {
                        left.union_with(self.atom_product(z, c));
                    }
                    let mut right = self.empty_set();
                    for w in bc.ones() {
                        right.union_with(self.atom_product(a, w));
                    }
                    if left != right {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// Counterexample atoms for the three first-order conditions characterising
/// algebras of compatible relations of a two-element group action:
/// (1) simplicity, (2) pair-density, (3) every atom or its converse is a
/// function. `None` means the condition holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Z2Axioms {
    pub simplicity: Option<AtomId>,
    pub pair_density: Option<AtomId>,
    pub functionality: Option<AtomId>,
}

impl Z2Axioms {
    pub fn as_bools(&self) -> (bool, bool, bool) {
        (
            self.simplicity.is_none(),
            self.pair_density.is_none(),
            self.functionality.is_none(),
        )
    }

    pub fn all_hold(&self) -> bool {
        self.as_bools() == (true, true, true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Degenerate,
    BadName { position: usize },
    DuplicateName { name: String },
    ConverseNotInvolution { atom: String },
    NoIdentityAtoms,
    IdentityNotSelfConverse { atom: String },
    CycleLaw { present: [String; 3], missing: [String; 3] },
    DomainAtom { atom: String, found: usize },
    RangeAtom { atom: String, found: usize },
    IdentityCycle { cycle: [String; 3] },
    Associativity { atoms: [String; 3] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degenerate => write!(f, "degenerate algebra: no atoms (1 = 0)"),
            Violation::BadName { position } => {
                write!(f, "atom name at position {position} is empty or contains whitespace")
            }
            Violation::DuplicateName { name } => write!(f, "duplicate atom name {name}"),
            Violation::ConverseNotInvolution { atom } => {
                write!(f, "converse is not an involution at atom {atom}")
            }
            Violation::NoIdentityAtoms => write!(f, "identity element is empty"),
            Violation::IdentityNotSelfConverse { atom } => {
                write!(f, "identity atom {atom} is not self-converse")
            }
            Violation::CycleLaw { present, missing } => write!(
                f,
                "cycle law: ({} {} {}) present but ({} {} {}) missing",
                present[0], present[1], present[2], missing[0], missing[1], missing[2]
            ),
            Violation::DomainAtom { atom, found } => write!(
                f,
                "atom {atom} has {found} domain identity atoms (expected exactly 1)"
            ),
            Violation::RangeAtom { atom, found } => write!(
                f,
                "atom {atom} has {found} range identity atoms (expected exactly 1)"
            ),
            Violation::IdentityCycle { cycle } => write!(
                f,
                "identity law: cycle ({} {} {}) relates distinct atoms through an identity atom",
                cycle[0], cycle[1], cycle[2]
            ),
            Violation::Associativity { atoms } => write!(
                f,
                "associativity fails at ({} ; {}) ; {}",
                atoms[0], atoms[1], atoms[2]
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid: {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Classification flags of a nonzero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementFlags {
    pub is_point: bool,
    pub is_pair: bool,
    pub is_twin: bool,
    pub is_function: bool,
}

/// An element of a finite relation algebra: a set of atoms of one structure.
#[derive(Clone)]
pub struct Element<'s> {
    structure: &'s AtomStructure,
    atoms: FixedBitSet,
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        ptr::eq(self.structure, other.structure) && self.atoms == other.atoms
    }
}

impl Eq for Element<'_> {}

impl fmt::Debug for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.atoms.ones().map(|a| self.structure.name(a)))
            .finish()
    }
}

impl<'s> Element<'s> {
    pub fn structure(&self) -> &'s AtomStructure {
        self.structure
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.atoms.ones()
    }

    pub fn contains(&self, atom: AtomId) -> bool {
        self.atoms.contains(atom)
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_clear()
    }

    fn same(&self, other: &Element<'_>) -> Result<(), AlgebraError> {
        if ptr::eq(self.structure, other.structure) {
            Ok(())
        } else {
            Err(AlgebraError::MismatchedStructures)
        }
    }

    pub fn le(&self, other: &Element<'_>) -> Result<bool, AlgebraError> {
        self.same(other)?;
        Ok(self.atoms.is_subset(&other.atoms))
    }

    pub fn join(&self, other: &Element<'_>) -> Result<Element<'s>, AlgebraError> {
        self.same(other)?;
        let mut s = self.atoms.clone();
        s.union_with(&other.atoms);
        Ok(self.structure.wrap(s))
    }

    pub fn meet(&self, other: &Element<'_>) -> Result<Element<'s>, AlgebraError> {
        self.same(other)?;
        let mut s = self.atoms.clone();
        s.intersect_with(&other.atoms);
        Ok(self.structure.wrap(s))
    }

    pub fn complement(&self) -> Element<'s> {
        let mut s = self.structure.full_set();
        s.difference_with(&self.atoms);
        self.structure.wrap(s)
    }

    pub fn compose(&self, other: &Element<'_>) -> Result<Element<'s>, AlgebraError> {
        self.same(other)?;
        Ok(self
            .structure
            .wrap(self.structure.compose_sets(&self.atoms, &other.atoms)))
    }

    pub fn converse(&self) -> Element<'s> {
        self.structure.wrap(self.structure.converse_set(&self.atoms))
    }

    /// Point, pair, twin and function flags. A nonzero element below `x`
    /// that is a point contains an atom that is a point, so the twin test
    /// only inspects the atoms of `x`.
    pub fn classify(&self) -> Result<ElementFlags, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        let s = self.structure;
        let is_pair = s.set_is_pair(&self.atoms);
        Ok(ElementFlags {
            is_point: s.set_is_point(&self.atoms),
            is_pair,
            is_twin: is_pair && !self.atoms.ones().any(|a| s.atom_is_point(a)),
            is_function: s.set_is_function(&self.atoms),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ids(s: &AtomStructure, names: &[&str]) -> Vec<AtomId> {
        names.iter().map(|n| s.atom_by_name(n).unwrap()).collect()
    }

    #[test]
    fn two_three_products() {
        let s = catalog::two_three();
        let [r, rc] = ids(&s, &["r", "r^"])[..] else { unreachable!() };
        let r_el = s.atom(r);
        assert_eq!(r_el.compose(&r_el).unwrap(), s.atom(rc));
        assert_eq!(r_el.converse(), s.atom(rc));
        for x in s.all_elements() {
            assert_eq!(s.identity().compose(&x).unwrap(), x);
            assert_eq!(x.compose(&s.identity()).unwrap(), x);
        }
        let mixed = s.element(ids(&s, &["r", "1'"])).unwrap();
        assert_eq!(mixed.converse(), s.element(ids(&s, &["r^", "1'"])).unwrap());
        assert_eq!(s.identity().converse(), s.identity());
    }

    #[test]
    fn five_seven_products() {
        let s = catalog::five_seven();
        let a = s.atom_by_name("a").unwrap();
        let prod = s.atom(a).compose(&s.atom(a)).unwrap();
        assert_eq!(prod, s.element(ids(&s, &["1'", "b"])).unwrap());
    }

    #[test]
    fn mismatched_structures_rejected() {
        let s = catalog::two_three();
        let t = catalog::five_seven();
        assert_eq!(
            s.one().compose(&t.one()),
            Err(AlgebraError::MismatchedStructures)
        );
    }

    #[test]
    fn classification_of_identity_in_two_three() {
        let s = catalog::two_three();
        let flags = s.identity().classify().unwrap();
        assert!(!flags.is_point);
        assert!(!flags.is_pair);
        assert!(flags.is_function);
        let r = s.atom_by_name("r").unwrap();
        let flags = s.atom(r).classify().unwrap();
        assert!(flags.is_function);
        assert!(!flags.is_point);
        assert_eq!(s.zero().classify(), Err(AlgebraError::ZeroElement));
    }

    #[test]
    fn one_atom_algebra_identity_is_point() {
        let s = AtomStructure::new(vec!["1'".into()], vec![0], [0], [(0, 0, 0)]).unwrap();
        assert!(s.validate().is_valid());
        let flags = s.identity().classify().unwrap();
        assert!(flags.is_point && flags.is_pair && !flags.is_twin && flags.is_function);
    }

    #[test]
    fn simplicity_and_product_algebra() {
        assert!(catalog::two_three().is_simple());
        assert!(catalog::five_seven().is_simple());
        let p = catalog::two_three_squared();
        assert!(p.validate().is_valid(), "{}", p.validate());
        let w = p.simplicity_counterexample().unwrap();
        assert!(p.is_identity_atom(w));
    }

    #[test]
    fn z2_axioms_on_catalog() {
        assert_eq!(catalog::two_three().check_z2_axioms().as_bools(), (true, false, true));
        let five = catalog::five_seven();
        let ax = five.check_z2_axioms();
        assert_eq!(ax.as_bools(), (true, false, false));
        assert_eq!(five.name(ax.functionality.unwrap()), "a");
        assert_eq!(five.name(ax.pair_density.unwrap()), "1'");
    }

    #[test]
    fn functional_density_on_catalog() {
        assert!(catalog::two_three().check_functional_density());
        let five = catalog::five_seven();
        assert!(!five.check_functional_density());
        assert_eq!(five.functional_cover(), five.identity());
    }

    #[test]
    fn validation_reports_witnesses() {
        let s = catalog::two_three();
        assert!(s.validate().is_valid());

        // converse map not an involution
        let bad = AtomStructure::new(
            s.names().to_vec(),
            vec![0, 2, 2],
            s.identity_atoms(),
            s.cycles().iter().copied(),
        )
        .unwrap();
        let rep = bad.validate();
        assert!(rep
            .violations
            .contains(&Violation::ConverseNotInvolution { atom: "r".into() }));

        // one rotation of a cycle removed
        let [r, rc] = ids(&s, &["r", "r^"])[..] else { unreachable!() };
        let bad = AtomStructure::new(
            s.names().to_vec(),
            s.converse_map().to_vec(),
            s.identity_atoms(),
            s.cycles().iter().copied().filter(|&c| c != (r, r, rc)),
        )
        .unwrap();
        assert!(bad.cycles().contains(&(rc, rc, r)));
        let rep = bad.validate();
        assert!(rep.violations.iter().any(|v| matches!(
            v,
            Violation::CycleLaw { missing, .. } if missing == &["r", "r", "r^"]
        )));
    }

    #[test]
    fn degenerate_and_duplicate_names() {
        let empty = AtomStructure::new(vec![], vec![], [], []).unwrap();
        assert_eq!(empty.validate().violations, vec![Violation::Degenerate]);
        let dup = AtomStructure::new(
            vec!["e".into(), "e".into()],
            vec![0, 1],
            [0, 1],
            [(0, 0, 0), (1, 1, 1)],
        )
        .unwrap();
        assert!(dup
            .validate()
            .violations
            .contains(&Violation::DuplicateName { name: "e".into() }));
    }

    #[test]
    fn out_of_range_input_is_an_error() {
        assert_eq!(
            AtomStructure::new(vec!["e".into()], vec![1], [0], []),
            Err(AlgebraError::AtomOutOfRange { id: 1, count: 1 })
        );
        assert!(matches!(
            AtomStructure::new(vec!["e".into()], vec![], [0], []),
            Err(AlgebraError::ConverseLength { .. })
        ));
    }
}
