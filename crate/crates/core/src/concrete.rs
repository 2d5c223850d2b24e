//! Binary relations on a finite base set `{0..n-1}` and proper relation
//! algebras given by a partition of `U x U` into atom relations.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::atom_structure::{AtomId, AtomStructure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConcreteError {
    #[error("base set must be nonempty")]
    EmptyBase,
    #[error("pair ({0},{1}) out of range for base size {2}")]
    PairOutOfRange(usize, usize, usize),
    #[error("base sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("atom {0} is empty")]
    EmptyAtom(String),
    #[error("duplicate atom name {0}")]
    DuplicateName(String),
    #[error("atoms {0} and {1} both contain the pair ({2},{3})")]
    Overlap(String, String, usize, usize),
    #[error("pair ({0},{1}) is not covered by any atom")]
    Uncovered(usize, usize),
    #[error("converse of atom {0} is not an atom")]
    ConverseNotAtom(String),
    #[error("atom {0} meets the identity without being contained in it")]
    IdentityNotUnion(String),
    #[error("{0} ; {1} meets atom {2} without containing it")]
    CompositionNotUnion(String, String, String),
}

/// A binary relation on `{0..n-1}`, stored as one bitset row per element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    rows: Vec<FixedBitSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            r.rows[x].insert(x);
        }
        r
    }

    pub fn universal(n: usize) -> Self {
        let mut r = Self::empty(n);
        for row in &mut r.rows {
            row.insert_range(..);
        }
        r
    }

    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ConcreteError> {
        let mut r = Self::empty(n);
        for (x, y) in pairs {
            if x >= n || y >= n {
                return Err(ConcreteError::PairOutOfRange(x, y, n));
            }
            r.rows[x].insert(y);
        }
        Ok(r)
    }

    pub fn base_size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows.get(x).is_some_and(|row| row.contains(y))
    }

    pub(crate) fn insert(&mut self, x: usize, y: usize) {
        self.rows[x].insert(y);
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.ones().map(move |y| (x, y)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(FixedBitSet::is_clear)
    }

    fn check_size(&self, other: &Relation) -> Result<(), ConcreteError> {
        if self.base_size() == other.base_size() {
            Ok(())
        } else {
            Err(ConcreteError::SizeMismatch(self.base_size(), other.base_size()))
        }
    }

    /// `{(x,z) : (x,y) in self, (y,z) in other}`.
    pub fn compose(&self, other: &Relation) -> Result<Relation, ConcreteError> {
        self.check_size(other)?;
        let n = self.base_size();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = FixedBitSet::with_capacity(n);
                for y in row.ones() {
                    out.union_with(&other.rows[y]);
                }
                out
            })
            .collect();
        Ok(Relation { rows })
    }

    pub fn converse(&self) -> Relation {
        let mut out = Relation::empty(self.base_size());
        for (x, y) in self.pairs() {
            out.rows[y].insert(x);
        }
        out
    }

    pub fn complement(&self) -> Relation {
        let mut out = self.clone();
        for row in &mut out.rows {
            row.toggle_range(..);
        }
        out
    }

    pub fn union(&self, other: &Relation) -> Result<Relation, ConcreteError> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.union_with(b);
        }
        Ok(out)
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation, ConcreteError> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.intersect_with(b);
        }
        Ok(out)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.base_size() == other.base_size()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn is_disjoint(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_disjoint(b))
    }

    /// Each first coordinate has at most one image.
    pub fn is_function(&self) -> bool {
        self.rows.iter().all(|r| r.count_ones(..) <= 1)
    }

    /// Image of every pair under the relabeling `x -> perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Relation {
        let mut out = Relation::empty(self.base_size());
        for (x, y) in self.pairs() {
            out.rows[perm[x]].insert(perm[y]);
        }
        out
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, y) in self.pairs() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "({x},{y})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation[{}]{{{self}}}", self.base_size())
    }
}

/// A proper relation algebra on `{0..n-1}`, given by its atom relations.
///
/// Construction checks that the atoms partition `U x U` and that converse,
/// identity and composition all stay unions of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteAlgebra {
    base_size: usize,
    names: Vec<String>,
    atoms: Vec<Relation>,
    /// `owner[x * n + y]` is the atom containing `(x, y)`.
    owner: Vec<AtomId>,
}

impl ConcreteAlgebra {
    pub fn new(
        base_size: usize,
        atoms: impl IntoIterator<Item = (String, Relation)>,
    ) -> Result<Self, ConcreteError> {
        if base_size == 0 {
            return Err(ConcreteError::EmptyBase);
        }
        let (names, atoms): (Vec<_>, Vec<_>) = atoms.into_iter().unzip();
        let owner = Self::partition(base_size, &names, &atoms)?;
        let alg = ConcreteAlgebra {
            base_size,
            names,
            atoms,
            owner,
        };
        alg.check_closure()?;
        Ok(alg)
    }

    /// Names identity atoms `e<k>` and the others `a<k>`, `k` the atom index.
    pub fn from_relations(
        base_size: usize,
        atoms: impl IntoIterator<Item = Relation>,
    ) -> Result<Self, ConcreteError> {
        let id = Relation::identity(base_size);
        let named = atoms.into_iter().enumerate().map(|(k, r)| {
            let prefix = if !r.is_empty() && r.is_subset(&id) { 'e' } else { 'a' };
            (format!("{prefix}{k}"), r)
        });
        Self::new(base_size, named)
    }

    fn partition(
        n: usize,
        names: &[String],
        atoms: &[Relation],
    ) -> Result<Vec<AtomId>, ConcreteError> {
        let mut owner: Vec<Option<AtomId>> = vec![None; n * n];
        let mut seen = HashSet::new();
        for (i, (name, rel)) in names.iter().zip(atoms).enumerate() {
            if rel.base_size() != n {
                return Err(ConcreteError::SizeMismatch(n, rel.base_size()));
            }
            if rel.is_empty() {
                return Err(ConcreteError::EmptyAtom(name.clone()));
            }
            if !seen.insert(name) {
                return Err(ConcreteError::DuplicateName(name.clone()));
            }
            for (x, y) in rel.pairs() {
                if let Some(j) = owner[x * n + y] {
                    return Err(ConcreteError::Overlap(names[j].clone(), name.clone(), x, y));
                }
                owner[x * n + y] = Some(i);
            }
        }
        owner
            .iter()
            .enumerate()
            .map(|(p, o)| o.ok_or(ConcreteError::Uncovered(p / n, p % n)))
            .collect()
    }

    fn check_closure(&self) -> Result<(), ConcreteError> {
        let id = Relation::identity(self.base_size);
        for (name, rel) in self.names.iter().zip(&self.atoms) {
            if !self.is_atom(&rel.converse()) {
                return Err(ConcreteError::ConverseNotAtom(name.clone()));
            }
            if !rel.is_disjoint(&id) && !rel.is_subset(&id) {
                return Err(ConcreteError::IdentityNotUnion(name.clone()));
            }
        }
        for x in 0..self.atoms.len() {
            for y in 0..self.atoms.len() {
                if let Some(z) = self.split_atom(x, y) {
                    return Err(ConcreteError::CompositionNotUnion(
                        self.names[x].clone(),
                        self.names[y].clone(),
                        self.names[z].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn is_atom(&self, r: &Relation) -> bool {
        r.pairs()
            .next()
            .is_some_and(|(x, y)| &self.atoms[self.owner[x * self.base_size + y]] == r)
    }

    /// Counts, per atom, the pairs of `x ; y` it owns.
    fn product_hits(&self, x: AtomId, y: AtomId) -> Vec<(AtomId, usize)> {
        let xy = self.atoms[x]
            .compose(&self.atoms[y])
            .expect("atoms share the base size");
        let mut hits: HashMap<AtomId, usize> = HashMap::new();
        for (u, v) in xy.pairs() {
            *hits.entry(self.owner[u * self.base_size + v]).or_default() += 1;
        }
        let mut hits: Vec<_> = hits.into_iter().collect();
        hits.sort_unstable();
        hits
    }

    /// An atom that `x ; y` meets without containing.
    fn split_atom(&self, x: AtomId, y: AtomId) -> Option<AtomId> {
        self.product_hits(x, y)
            .into_iter()
            .find(|&(z, count)| count != self.atoms[z].len())
            .map(|(z, _)| z)
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.names.iter().map(String::as_str).zip(&self.atoms)
    }

    pub fn relation(&self, atom: AtomId) -> &Relation {
        &self.atoms[atom]
    }

    pub fn name(&self, atom: AtomId) -> &str {
        &self.names[atom]
    }

    pub fn atom_containing(&self, x: usize, y: usize) -> Option<AtomId> {
        let n = self.base_size;
        (x < n && y < n).then(|| self.owner[x * n + y])
    }

    pub fn is_identity_atom(&self, atom: AtomId) -> bool {
        self.atoms[atom].is_subset(&Relation::identity(self.base_size))
    }

    /// The relation denoted by a set of atoms.
    pub fn relation_of(&self, atoms: impl IntoIterator<Item = AtomId>) -> Relation {
        let mut out = Relation::empty(self.base_size);
        for a in atoms {
            for (x, y) in self.atoms[a].pairs() {
                out.insert(x, y);
            }
        }
        out
    }

    /// Conjugates the algebra by a permutation of the base set.
    pub fn relabel(&self, perm: &[usize]) -> ConcreteAlgebra {
        let n = self.base_size;
        let mut owner = vec![0; n * n];
        for (p, &a) in self.owner.iter().enumerate() {
            owner[perm[p / n] * n + perm[p % n]] = a;
        }
        ConcreteAlgebra {
            base_size: n,
            names: self.names.clone(),
            atoms: self.atoms.iter().map(|r| r.relabel(perm)).collect(),
            owner,
        }
    }

    /// Abstract atom structure: converse read off relation converses, identity
    /// atoms those inside the identity relation, and `(x, y, z)` a cycle when
    /// `z` meets `x ; y`.
    pub fn extract_atom_structure(&self) -> AtomStructure {
        let k = self.atoms.len();
        let n = self.base_size;
        let converse: Vec<AtomId> = self
            .atoms
            .iter()
            .map(|r| {
                let (x, y) = r.pairs().next().expect("atoms are nonempty");
                self.owner[y * n + x]
            })
            .collect();
        let identity = (0..k).filter(|&a| self.is_identity_atom(a));
        let mut cycles = Vec::new();
        for x in 0..k {
            for y in 0..k {
                cycles.extend(self.product_hits(x, y).into_iter().map(|(z, _)| (x, y, z)));
            }
        }
        AtomStructure::new(self.names.clone(), converse, identity, cycles)
            .expect("ids are in range by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    fn d5_atoms() -> [Relation; 3] {
        [
            Relation::identity(5),
            rel(
                5,
                &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 0), (2, 1), (3, 2), (4, 3), (0, 4)],
            ),
            rel(
                5,
                &[(0, 2), (1, 3), (2, 4), (3, 0), (4, 1), (2, 0), (3, 1), (4, 2), (0, 3), (1, 4)],
            ),
        ]
    }

    #[test]
    fn compose_and_converse_on_z3() {
        let r = rel(3, &[(0, 1), (1, 2), (2, 0)]);
        let rr = rel(3, &[(0, 2), (1, 0), (2, 1)]);
        assert_eq!(r.compose(&r).unwrap(), rr);
        assert_eq!(r.converse(), rel(3, &[(1, 0), (2, 1), (0, 2)]));
        assert_eq!(Relation::identity(3).compose(&r).unwrap(), r);
    }

    #[test]
    fn d5_second_atom_squared() {
        let [id, a, b] = d5_atoms();
        assert_eq!(a.compose(&a).unwrap(), id.union(&b).unwrap());
    }

    #[test]
    fn complement_of_identity_is_diversity() {
        assert_eq!(
            Relation::identity(2).complement(),
            rel(2, &[(0, 1), (1, 0)])
        );
    }

    #[test]
    fn size_mismatch() {
        assert_eq!(
            Relation::identity(2).compose(&Relation::identity(3)),
            Err(ConcreteError::SizeMismatch(2, 3))
        );
        assert!(Relation::from_pairs(2, [(0, 2)]).is_err());
    }

    #[test]
    fn partition_errors() {
        let id = Relation::identity(2);
        let div = id.complement();
        assert!(ConcreteAlgebra::from_relations(2, [id.clone(), div.clone()]).is_ok());
        assert_eq!(
            ConcreteAlgebra::from_relations(2, [id.clone()]),
            Err(ConcreteError::Uncovered(0, 1))
        );
        assert!(matches!(
            ConcreteAlgebra::from_relations(2, [id.clone(), Relation::universal(2)]),
            Err(ConcreteError::Overlap(..))
        ));
        // {(0,1)} has converse {(1,0)} which is not an atom here
        let r01 = rel(2, &[(0, 1)]);
        let rest = rel(2, &[(0, 0), (1, 1), (1, 0)]);
        assert!(matches!(
            ConcreteAlgebra::from_relations(2, [r01, rest]),
            Err(ConcreteError::ConverseNotAtom(_))
        ));
        // {(0,0)} alone as an identity atom with (1,1) lumped with diversity
        let a = rel(2, &[(0, 0)]);
        let b = rel(2, &[(1, 1), (0, 1), (1, 0)]);
        assert!(matches!(
            ConcreteAlgebra::from_relations(2, [a, b]),
            Err(ConcreteError::IdentityNotUnion(_))
        ));
    }

    #[test]
    fn composition_closure_error() {
        // Three points, identity plus two halves of the diversity that are
        // each symmetric but whose products cut across atoms.
        let id = Relation::identity(3);
        let p = rel(3, &[(0, 1), (1, 0)]);
        let q = rel(3, &[(0, 2), (2, 0), (1, 2), (2, 1)]);
        assert!(matches!(
            ConcreteAlgebra::from_relations(3, [id, p, q]),
            Err(ConcreteError::CompositionNotUnion(..))
        ));
    }

    #[test]
    fn full_algebra_extracts_validly() {
        let n = 3;
        let singles = (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
        let alg = ConcreteAlgebra::from_relations(
            n,
            singles.map(|(x, y)| rel(n, &[(x, y)])),
        )
        .unwrap();
        let s = alg.extract_atom_structure();
        assert_eq!(s.atom_count(), 9);
        assert_eq!(s.identity_atoms().count(), 3);
        assert!(s.validate().is_valid());
    }

    #[test]
    fn abstract_operations_match_concrete() {
        let alg = ConcreteAlgebra::from_relations(5, d5_atoms()).unwrap();
        let s = alg.extract_atom_structure();
        for x in s.all_elements() {
            let rx = alg.relation_of(x.atoms());
            assert_eq!(alg.relation_of(x.converse().atoms()), rx.converse());
            assert_eq!(alg.relation_of(x.complement().atoms()), rx.complement());
            for y in s.all_elements() {
                let ry = alg.relation_of(y.atoms());
                let xy = x.compose(&y).unwrap();
                assert_eq!(alg.relation_of(xy.atoms()), rx.compose(&ry).unwrap());
            }
        }
    }
}
