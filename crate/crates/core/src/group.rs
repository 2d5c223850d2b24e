//! Permutation groups acting on `{0..n-1}` and their algebras of compatible
//! relations.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::concrete::{ConcreteAlgebra, ConcreteError, Relation};

pub const DEFAULT_MAX_ORDER: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("base set must be nonempty")]
    EmptyBase,
    #[error("generator {index} has {found} images, expected {expected}")]
    WrongLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator {index} is not a bijection: image {image} is repeated or out of range")]
    NotBijection { index: usize, image: usize },
    #[error("group order exceeds the limit of {0}")]
    OrderLimit(usize),
    #[error("base sizes differ: action on {0} points, relation on {1}")]
    SizeMismatch(usize, usize),
    #[error("internal error: orbit algebra failed its closure check: {0}")]
    ClosureFailure(ConcreteError),
}

/// A permutation of `{0..n-1}` in one-line notation: `x -> images[x]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = FixedBitSet::with_capacity(n);
        for &y in &images {
            if y >= n || seen.put(y) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(x, &y)| x == y).count()
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.after(&p);
            k += 1;
        }
        k
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// A finite group acting on `{0..n-1}`, given by generators. The group
/// elements are materialised by breadth-first closure.
#[derive(Debug, Clone)]
pub struct GroupAction {
    base_size: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl GroupAction {
    pub fn new(base_size: usize, generators: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::with_max_order(base_size, generators, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(
        base_size: usize,
        generators: Vec<Vec<usize>>,
        max_order: usize,
    ) -> Result<Self, GroupError> {
        if base_size == 0 {
            return Err(GroupError::EmptyBase);
        }
        let mut gens = Vec::with_capacity(generators.len());
        for (index, images) in generators.into_iter().enumerate() {
            if images.len() != base_size {
                return Err(GroupError::WrongLength {
                    index,
                    expected: base_size,
                    found: images.len(),
                });
            }
            let mut seen = FixedBitSet::with_capacity(base_size);
            for &y in &images {
                if y >= base_size || seen.put(y) {
                    return Err(GroupError::NotBijection { index, image: y });
                }
            }
            gens.push(Permutation(images));
        }

        let id = Permutation::identity(base_size);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = g.after(&p);
                if seen.insert(q.clone()) {
                    if seen.len() > max_order {
                        return Err(GroupError::OrderLimit(max_order));
                    }
                    elements.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Ok(GroupAction {
            base_size,
            generators: gens,
            elements,
        })
    }

    /// The two-element group generated by an involution (or the trivial
    /// group when `g` is the identity).
    pub fn from_permutation(g: &Permutation) -> Self {
        Self::new(g.degree(), vec![g.images().to_vec()]).expect("valid permutation")
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_z2(&self) -> bool {
        self.order() == 2
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements.iter().any(|g| g.order() == n)
    }

    /// Groups of prime order are cyclic.
    pub fn is_prime_cyclic(&self) -> bool {
        let n = self.order();
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    /// Orbits of the diagonal action on `U x U`, each started from the
    /// lexicographically least pair not yet claimed.
    pub fn pair_orbits(&self) -> OrbitPartition {
        let n = self.base_size;
        let mut claimed = FixedBitSet::with_capacity(n * n);
        let mut orbits = Vec::new();
        for start in 0..n * n {
            if claimed.contains(start) {
                continue;
            }
            let mut orbit = Relation::empty(n);
            let mut queue = vec![(start / n, start % n)];
            claimed.insert(start);
            while let Some((x, y)) = queue.pop() {
                orbit.insert(x, y);
                for g in &self.generators {
                    let (gx, gy) = (g.apply(x), g.apply(y));
                    if !claimed.put(gx * n + gy) {
                        queue.push((gx, gy));
                    }
                }
            }
            orbits.push(orbit);
        }
        OrbitPartition {
            base_size: n,
            orbits,
        }
    }

    /// The algebra of compatible relations: its atoms are the pair orbits.
    pub fn rel_algebra(&self) -> Result<ConcreteAlgebra, GroupError> {
        ConcreteAlgebra::from_relations(self.base_size, self.pair_orbits().orbits)
            .map_err(GroupError::ClosureFailure)
    }

    /// Closed under every generator, hence under the whole group.
    pub fn is_compatible(&self, r: &Relation) -> Result<bool, GroupError> {
        if r.base_size() != self.base_size {
            return Err(GroupError::SizeMismatch(self.base_size, r.base_size()));
        }
        Ok(r.pairs().all(|(x, y)| {
            self.generators
                .iter()
                .all(|g| r.contains(g.apply(x), g.apply(y)))
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub base_size: usize,
    pub orbits: Vec<Relation>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let z3 = GroupAction::new(3, vec![vec![1, 2, 0]]).unwrap();
        assert_eq!(z3.order(), 3);
        assert!(z3.is_cyclic() && z3.is_prime_cyclic());

        let d5 = GroupAction::new(5, vec![vec![1, 2, 3, 4, 0], vec![0, 4, 3, 2, 1]]).unwrap();
        assert_eq!(d5.order(), 10);
        assert!(!d5.is_cyclic());

        let trivial = GroupAction::new(4, vec![]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert!(!trivial.is_prime_cyclic());
    }

    #[test]
    fn build_errors() {
        assert_eq!(GroupAction::new(0, vec![]).unwrap_err(), GroupError::EmptyBase);
        assert_eq!(
            GroupAction::new(3, vec![vec![0, 0, 1]]).unwrap_err(),
            GroupError::NotBijection { index: 0, image: 0 }
        );
        assert!(matches!(
            GroupAction::new(3, vec![vec![0, 1]]),
            Err(GroupError::WrongLength { .. })
        ));
        // S5 has order 120
        assert_eq!(
            GroupAction::with_max_order(5, vec![vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]], 100)
                .unwrap_err(),
            GroupError::OrderLimit(100)
        );
    }

    #[test]
    fn z3_orbits_in_order() {
        let z3 = GroupAction::new(3, vec![vec![1, 2, 0]]).unwrap();
        let orbits = z3.pair_orbits().orbits;
        let expect = |p: &[(usize, usize)]| Relation::from_pairs(3, p.iter().copied()).unwrap();
        assert_eq!(
            orbits,
            vec![
                expect(&[(0, 0), (1, 1), (2, 2)]),
                expect(&[(0, 1), (1, 2), (2, 0)]),
                expect(&[(1, 0), (2, 1), (0, 2)]),
            ]
        );
    }

    #[test]
    fn trivial_group_gives_singletons() {
        let t = GroupAction::new(2, vec![]).unwrap();
        let orbits = t.pair_orbits().orbits;
        assert_eq!(orbits.len(), 4);
        assert!(orbits.iter().all(|o| o.len() == 1));
        assert_eq!(t.rel_algebra().unwrap().atom_count(), 4);
    }

    #[test]
    fn swap_algebra() {
        let swap = GroupAction::new(2, vec![vec![1, 0]]).unwrap();
        let alg = swap.rel_algebra().unwrap();
        assert_eq!(alg.atom_count(), 2);
        assert_eq!(alg.relation(0), &Relation::identity(2));
        assert_eq!(alg.name(0), "e0");
        assert_eq!(alg.name(1), "a1");
    }

    #[test]
    fn compatibility() {
        let swap = GroupAction::new(2, vec![vec![1, 0]]).unwrap();
        assert!(swap.is_compatible(&Relation::identity(2)).unwrap());
        assert!(swap.is_compatible(&Relation::universal(2)).unwrap());
        let r = Relation::from_pairs(2, [(0, 1)]).unwrap();
        assert!(!swap.is_compatible(&r).unwrap());
        assert!(swap.is_compatible(&Relation::identity(3)).is_err());

        let d5 = GroupAction::new(5, vec![vec![1, 2, 3, 4, 0], vec![0, 4, 3, 2, 1]]).unwrap();
        let orbits = d5.pair_orbits().orbits;
        for a in &orbits {
            for b in &orbits {
                assert!(d5.is_compatible(&a.union(b).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.order(), 3);
        assert!(p.after(&p.inverse()).is_identity());
        assert!(Permutation::new(vec![0, 0]).is_none());
        assert_eq!(Permutation::new(vec![1, 0, 2]).unwrap().fixed_points(), 1);
    }
}
