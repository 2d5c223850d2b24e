//! Structure of simple pair-dense proper relation algebras.
//!
//! The identity atoms of such an algebra split the base set into points
//! (singletons) and twins (two-element blocks). Every atom then has one of
//! six shapes, and an equivalence on twins decides whether the block between
//! two twins splits into two matchings (type 5) or stays whole (type 6).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::atom_structure::AtomId;
use crate::concrete::ConcreteAlgebra;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("identity atom {atom} has {size} diagonal pairs; not pair-dense in the structural sense")]
    LargeIdentityAtom { atom: String, size: usize },
    #[error("atom {0} matches none of the six pair-dense shapes")]
    Unclassifiable(String),
    #[error("twins {0:?} and {1:?} carry both matching and whole-block atoms")]
    MixedBlock((usize, usize), (usize, usize)),
    #[error("twin relation is not transitive: {0:?} ~ {1:?} ~ {2:?}")]
    NotTransitive((usize, usize), (usize, usize), (usize, usize)),
}

/// Points and twins covering the base set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePartition {
    pub base_size: usize,
    pub points: Vec<usize>,
    /// Each twin as `(a, b)` with `a < b`.
    pub twins: Vec<(usize, usize)>,
}

impl BasePartition {
    /// Reads points and twins off the identity atoms.
    pub fn derive(c: &ConcreteAlgebra) -> Result<Self, StructureError> {
        let mut points = Vec::new();
        let mut twins = Vec::new();
        for (atom, (name, rel)) in c.atoms().enumerate() {
            if !c.is_identity_atom(atom) {
                continue;
            }
            let diag: Vec<usize> = rel.pairs().map(|(x, _)| x).collect();
            match diag[..] {
                [a] => points.push(a),
                [a, b] => twins.push((a, b)),
                _ => {
                    return Err(StructureError::LargeIdentityAtom {
                        atom: name.to_string(),
                        size: diag.len(),
                    })
                }
            }
        }
        points.sort_unstable();
        twins.sort_unstable();
        Ok(BasePartition {
            base_size: c.base_size(),
            points,
            twins,
        })
    }

    fn block_of(&self) -> Vec<Block> {
        let mut blocks = vec![Block::Point; self.base_size];
        for (i, &(a, b)) in self.twins.iter().enumerate() {
            blocks[a] = Block::Twin(i);
            blocks[b] = Block::Twin(i);
        }
        blocks
    }
}

impl fmt::Display for BasePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let points: Vec<String> = self.points.iter().map(|p| format!("{{{p}}}")).collect();
        let twins: Vec<String> = self.twins.iter().map(|&(a, b)| format!("{{{a},{b}}}")).collect();
        writeln!(f, "points:{}", points.iter().map(|p| format!(" {p}")).collect::<String>())?;
        writeln!(f, "twins:{}", twins.iter().map(|t| format!(" {t}")).collect::<String>())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Point,
    Twin(usize),
}

/// Shape of one atom relation, with the base elements that witness it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomShape {
    /// `{(a,a)}` for a point `a`.
    PointIdentity { point: usize },
    /// `{(a,a),(b,b)}` for a twin `{a,b}`.
    TwinIdentity { twin: (usize, usize) },
    /// `{(a,b),(b,a)}` for a twin `{a,b}`.
    TwinSwap { twin: (usize, usize) },
    /// `{(a,b)}` between distinct points.
    PointToPoint { from: usize, to: usize },
    /// `{(a,c),(b,c)}` from a twin to a point.
    TwinToPoint { twin: (usize, usize), point: usize },
    /// `{(c,a),(c,b)}` from a point to a twin.
    PointToTwin { point: usize, twin: (usize, usize) },
    /// `{(a,c),(b,d)}` between distinct twins `{a,b}` and `{c,d}`.
    TwinMatching { from: (usize, usize), to: (usize, usize) },
    /// All four pairs between distinct twins.
    TwinBlock { from: (usize, usize), to: (usize, usize) },
}

impl AtomShape {
    pub fn type_number(&self) -> u8 {
        match self {
            AtomShape::PointIdentity { .. } => 1,
            AtomShape::TwinIdentity { .. } | AtomShape::TwinSwap { .. } => 2,
            AtomShape::PointToPoint { .. } => 3,
            AtomShape::TwinToPoint { .. } | AtomShape::PointToTwin { .. } => 4,
            AtomShape::TwinMatching { .. } => 5,
            AtomShape::TwinBlock { .. } => 6,
        }
    }

    fn witness(&self) -> String {
        let t = |(a, b): (usize, usize)| format!("{{{a},{b}}}");
        match *self {
            AtomShape::PointIdentity { point } => format!("{{{point}}}"),
            AtomShape::TwinIdentity { twin } | AtomShape::TwinSwap { twin } => t(twin),
            AtomShape::PointToPoint { from, to } => format!("{{{from}}} -> {{{to}}}"),
            AtomShape::TwinToPoint { twin, point } => format!("{} -> {{{point}}}", t(twin)),
            AtomShape::PointToTwin { point, twin } => format!("{{{point}}} -> {}", t(twin)),
            AtomShape::TwinMatching { from, to } | AtomShape::TwinBlock { from, to } => {
                format!("{} -> {}", t(from), t(to))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomClassification {
    pub partition: BasePartition,
    /// One entry per atom, in atom order.
    pub shapes: Vec<(String, AtomShape)>,
    /// Pairs of distinct twin indices `i < j` with `twins[i] ~ twins[j]`.
    /// The relation is reflexive on all twins.
    pub tilde: BTreeSet<(usize, usize)>,
}

impl AtomClassification {
    pub fn type_counts(&self) -> [usize; 6] {
        let mut counts = [0; 6];
        for (_, s) in &self.shapes {
            counts[usize::from(s.type_number()) - 1] += 1;
        }
        counts
    }

    pub fn has_type(&self, k: u8) -> bool {
        self.shapes.iter().any(|(_, s)| s.type_number() == k)
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        i == j || self.tilde.contains(&(i.min(j), i.max(j)))
    }
}

impl fmt::Display for AtomClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)?;
        for (name, shape) in &self.shapes {
            writeln!(f, "atom {name} type {} [{}]", shape.type_number(), shape.witness())?;
        }
        for &(i, j) in &self.tilde {
            let (a, b) = self.partition.twins[i];
            let (c, d) = self.partition.twins[j];
            writeln!(f, "tilde: {{{a},{b}}} ~ {{{c},{d}}}")?;
        }
        Ok(())
    }
}

fn shape_of(
    pairs: &[(usize, usize)],
    blocks: &[Block],
    twins: &[(usize, usize)],
) -> Option<AtomShape> {
    let (x0, y0) = *pairs.first()?;
    let all_in = |bx: Block, by: Block| {
        pairs
            .iter()
            .all(|&(x, y)| blocks[x] == bx && blocks[y] == by)
    };
    let shape = match (blocks[x0], blocks[y0]) {
        (Block::Point, Block::Point) => match pairs {
            [(a, b)] if a == b => AtomShape::PointIdentity { point: *a },
            [(a, b)] => AtomShape::PointToPoint { from: *a, to: *b },
            _ => return None,
        },
        (Block::Twin(i), Block::Twin(j)) if i == j => {
            let twin = twins[i];
            let (a, b) = twin;
            match pairs {
                [p, q] if (*p, *q) == ((a, a), (b, b)) => AtomShape::TwinIdentity { twin },
                [p, q] if (*p, *q) == ((a, b), (b, a)) => AtomShape::TwinSwap { twin },
                _ => return None,
            }
        }
        (Block::Twin(i), Block::Point) => {
            if pairs.len() != 2 || !all_in(Block::Twin(i), Block::Point) || pairs[1].1 != y0 {
                return None;
            }
            AtomShape::TwinToPoint {
                twin: twins[i],
                point: y0,
            }
        }
        (Block::Point, Block::Twin(j)) => {
            if pairs.len() != 2 || !all_in(Block::Point, Block::Twin(j)) || pairs[1].0 != x0 {
                return None;
            }
            AtomShape::PointToTwin {
                point: x0,
                twin: twins[j],
            }
        }
        (Block::Twin(i), Block::Twin(j)) => {
            if !all_in(Block::Twin(i), Block::Twin(j)) {
                return None;
            }
            let (from, to) = (twins[i], twins[j]);
            match pairs.len() {
                4 => AtomShape::TwinBlock { from, to },
                2 => {
                    // a matching: the two first coordinates differ and so do
                    // the two second coordinates
                    if pairs[0].0 == pairs[1].0 || pairs[0].1 == pairs[1].1 {
                        return None;
                    }
                    AtomShape::TwinMatching { from, to }
                }
                _ => return None,
            }
        }
    };
    Some(shape)
}

/// Assigns each atom of `c` its shape relative to `bp` and collects the
/// twin equivalence.
pub fn classify_atoms(
    c: &ConcreteAlgebra,
    bp: &BasePartition,
) -> Result<AtomClassification, StructureError> {
    let blocks = bp.block_of();
    let mut shapes = Vec::with_capacity(c.atom_count());
    let mut matching = BTreeSet::new();
    let mut whole = BTreeSet::new();
    let twin_index = |t: (usize, usize)| bp.twins.iter().position(|&u| u == t).unwrap();
    for (name, rel) in c.atoms() {
        let pairs: Vec<(usize, usize)> = rel.pairs().collect();
        let shape = shape_of(&pairs, &blocks, &bp.twins)
            .ok_or_else(|| StructureError::Unclassifiable(name.to_string()))?;
        match shape {
            AtomShape::TwinMatching { from, to } => {
                let (i, j) = (twin_index(from), twin_index(to));
                matching.insert((i.min(j), i.max(j)));
            }
            AtomShape::TwinBlock { from, to } => {
                let (i, j) = (twin_index(from), twin_index(to));
                whole.insert((i.min(j), i.max(j)));
            }
            _ => {}
        }
        shapes.push((name.to_string(), shape));
    }
    if let Some(&(i, j)) = matching.intersection(&whole).next() {
        return Err(StructureError::MixedBlock(bp.twins[i], bp.twins[j]));
    }
    let out = AtomClassification {
        partition: bp.clone(),
        shapes,
        tilde: matching,
    };
    let t = bp.twins.len();
    for i in 0..t {
        for j in 0..t {
            for k in 0..t {
                if out.related(i, j) && out.related(j, k) && !out.related(i, k) {
                    return Err(StructureError::NotTransitive(
                        bp.twins[i],
                        bp.twins[j],
                        bp.twins[k],
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Convenience: derive the base partition and classify.
pub fn classify(c: &ConcreteAlgebra) -> Result<AtomClassification, StructureError> {
    classify_atoms(c, &BasePartition::derive(c)?)
}

/// Atom ids of `c` with the given type number.
pub fn atoms_of_type(cls: &AtomClassification, k: u8) -> Vec<AtomId> {
    cls.shapes
        .iter()
        .enumerate()
        .filter(|(_, (_, s))| s.type_number() == k)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::GroupAction;

    #[test]
    fn swap_on_two_points() {
        let c = GroupAction::new(2, vec![vec![1, 0]]).unwrap().rel_algebra().unwrap();
        let bp = BasePartition::derive(&c).unwrap();
        assert!(bp.points.is_empty());
        assert_eq!(bp.twins, vec![(0, 1)]);
        let cls = classify_atoms(&c, &bp).unwrap();
        assert_eq!(cls.shapes[0].1, AtomShape::TwinIdentity { twin: (0, 1) });
        assert_eq!(cls.shapes[1].1, AtomShape::TwinSwap { twin: (0, 1) });
    }

    #[test]
    fn full_algebra_on_two_points() {
        let c = GroupAction::new(2, vec![]).unwrap().rel_algebra().unwrap();
        let bp = BasePartition::derive(&c).unwrap();
        assert_eq!(bp.points, vec![0, 1]);
        assert!(bp.twins.is_empty());
        let cls = classify_atoms(&c, &bp).unwrap();
        let k = c.atom_containing(0, 1).unwrap();
        assert_eq!(cls.shapes[k].1, AtomShape::PointToPoint { from: 0, to: 1 });
    }

    #[test]
    fn one_fixed_point_and_one_twin() {
        let c = GroupAction::new(3, vec![vec![1, 0, 2]]).unwrap().rel_algebra().unwrap();
        let bp = BasePartition::derive(&c).unwrap();
        assert_eq!(bp.points, vec![2]);
        assert_eq!(bp.twins, vec![(0, 1)]);
        let cls = classify_atoms(&c, &bp).unwrap();
        assert_eq!(cls.type_counts(), [1, 2, 0, 2, 0, 0]);
    }

    #[test]
    fn unrelated_twins_give_type_six() {
        let c = catalog::two_twins_concrete();
        let cls = classify(&c).unwrap();
        let k = c.atom_containing(0, 2).unwrap();
        assert_eq!(
            cls.shapes[k].1,
            AtomShape::TwinBlock {
                from: (0, 1),
                to: (2, 3)
            }
        );
        assert!(cls.tilde.is_empty());
        assert_eq!(cls.type_counts(), [0, 4, 0, 0, 0, 2]);
    }

    #[test]
    fn z3_identity_is_too_large() {
        let c = GroupAction::new(3, vec![vec![1, 2, 0]]).unwrap().rel_algebra().unwrap();
        assert!(matches!(
            BasePartition::derive(&c),
            Err(StructureError::LargeIdentityAtom { size: 3, .. })
        ));
    }

    #[test]
    fn twins_related_by_matchings() {
        // g = (0 1)(2 3): blocks between the twins split into matchings
        let c = GroupAction::new(4, vec![vec![1, 0, 3, 2]]).unwrap().rel_algebra().unwrap();
        let cls = classify(&c).unwrap();
        assert_eq!(cls.tilde, BTreeSet::from([(0, 1)]));
        assert_eq!(cls.type_counts(), [0, 4, 0, 0, 4, 0]);
        let report = cls.to_string();
        assert!(report.contains("tilde: {0,1} ~ {2,3}"), "{report}");
    }

    #[test]
    fn unclassifiable_atom() {
        // D5 orbits: identity atom has five diagonal pairs
        let c = GroupAction::new(5, vec![vec![1, 2, 3, 4, 0], vec![0, 4, 3, 2, 1]])
            .unwrap()
            .rel_algebra()
            .unwrap();
        assert!(BasePartition::derive(&c).is_err());
        // a hand-made partition that disagrees with the algebra
        let bp = BasePartition {
            base_size: 5,
            points: vec![0, 1, 2, 3, 4],
            twins: vec![],
        };
        assert!(matches!(
            classify_atoms(&c, &bp),
            Err(StructureError::Unclassifiable(_))
        ));
    }
}
