//! Deciding whether an abstract finite relation algebra is the algebra of
//! compatible relations of an action of a two-element group, with an
//! explicit witness when it is.

use std::fmt;

use thiserror::Error;

use crate::atom_structure::{AtomId, AtomStructure, Element, ValidationReport};
use crate::concrete::ConcreteAlgebra;
use crate::group::{GroupAction, GroupError, Permutation};
use crate::iso::{find_isomorphism, IsoWitness, SearchError, DEFAULT_BUDGET};

#[derive(Debug, Error)]
pub enum DecisionError {
    #[error("input is not a relation algebra atom structure:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// The three conditions, numbered as axioms 1 to 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Z2Condition {
    Simplicity,
    PairDensity,
    Functionality,
}

impl Z2Condition {
    pub fn axiom(self) -> u8 {
        match self {
            Z2Condition::Simplicity => 1,
            Z2Condition::PairDensity => 2,
            Z2Condition::Functionality => 3,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Z2Condition::Simplicity => "simple",
            Z2Condition::PairDensity => "pair-dense",
            Z2Condition::Functionality => "atom or converse is a function",
        }
    }
}

/// A failed condition together with the atom that violates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionFailure {
    pub condition: Z2Condition,
    pub atom: AtomId,
}

impl ConditionFailure {
    /// Re-checks the violated inequality at the witness atom only, through
    /// the element operations.
    pub fn recheck(&self, s: &AtomStructure) -> bool {
        fn c<'s>(x: &Element<'s>, y: &Element<'_>) -> Element<'s> {
            x.compose(y).expect("same structure")
        }
        let below_id = |x: &Element<'_>| x.le(&s.identity()).expect("same structure");
        let a = s.atom(self.atom);
        match self.condition {
            Z2Condition::Simplicity => c(&c(&s.one(), &a), &s.one()) != s.one(),
            Z2Condition::PairDensity => {
                let d = s.diversity();
                s.is_identity_atom(self.atom) && !below_id(&c(&c(&c(&c(&a, &d), &a), &d), &a))
            }
            Z2Condition::Functionality => {
                let ac = a.converse();
                !below_id(&c(&ac, &a)) && !below_id(&c(&a, &ac))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Z2Representation {
    pub action: GroupAction,
    pub algebra: ConcreteAlgebra,
    /// From the input structure to the structure extracted from `algebra`.
    pub iso: IsoWitness,
}

#[derive(Debug, Clone)]
pub enum Z2Decision {
    Accepted(Box<Z2Representation>),
    /// Every failed condition, in axiom order.
    Rejected(Vec<ConditionFailure>),
}

impl Z2Decision {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Z2Decision::Accepted(_))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DecideOptions {
    pub budget: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

/// The two-element action read off the identity atoms: one base element per
/// point atom and two swapped elements per twin atom, in identity-atom order.
pub fn canonical_involution(s: &AtomStructure) -> Permutation {
    let mut images = Vec::new();
    for e in s.identity_atoms() {
        let k = images.len();
        if s.atom_is_point(e) {
            images.push(k);
        } else {
            images.extend([k + 1, k]);
        }
    }
    Permutation::new(images).expect("fixed points and transpositions")
}

pub fn decide_z2(s: &AtomStructure, opts: DecideOptions) -> Result<Z2Decision, DecisionError> {
    let report = s.validate();
    if !report.is_valid() {
        return Err(DecisionError::Invalid(report));
    }
    let ax = s.check_z2_axioms();
    let failures: Vec<ConditionFailure> = [
        (Z2Condition::Simplicity, ax.simplicity),
        (Z2Condition::PairDensity, ax.pair_density),
        (Z2Condition::Functionality, ax.functionality),
    ]
    .into_iter()
    .filter_map(|(condition, w)| w.map(|atom| ConditionFailure { condition, atom }))
    .collect();
    if !failures.is_empty() {
        return Ok(Z2Decision::Rejected(failures));
    }

    let g = canonical_involution(s);
    let action = GroupAction::from_permutation(&g);
    let algebra = action.rel_algebra()?;
    let extracted = algebra.extract_atom_structure();
    match find_isomorphism(s, &extracted, opts.budget)? {
        Some(iso) => Ok(Z2Decision::Accepted(Box::new(Z2Representation {
            action,
            algebra,
            iso,
        }))),
        None => Err(DecisionError::Internal(format!(
            "no isomorphism between the input and the algebra of the constructed action\n\
             input:\n{}\nconstructed:\n{}",
            crate::format::write_atom_structure(s),
            crate::format::write_atom_structure(&extracted)
        ))),
    }
}

/// Whether `s` is isomorphic to the algebra of compatible relations of `a`.
pub fn check_action_represents(
    s: &AtomStructure,
    a: &GroupAction,
    budget: u64,
) -> Result<Option<IsoWitness>, DecisionError> {
    let extracted = a.rel_algebra()?.extract_atom_structure();
    Ok(find_isomorphism(s, &extracted, budget)?)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub problems: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Independent end-to-end check of an accepted decision.
pub fn verify_decision(rep: &Z2Representation) -> VerificationReport {
    let mut problems = Vec::new();
    if rep.action.order() > 2 {
        problems.push(format!("action has order {}", rep.action.order()));
    }
    match rep.action.rel_algebra() {
        Ok(c) if c == rep.algebra => {}
        Ok(_) => problems.push("concrete algebra differs from the orbits of the action".into()),
        Err(e) => problems.push(e.to_string()),
    }
    if rep.iso.target != rep.algebra.extract_atom_structure() {
        problems.push("witness target is not the structure of the concrete algebra".into());
    }
    if !rep.iso.source.validate().is_valid() {
        problems.push("witness source fails validation".into());
    }
    if let Err(m) = rep.iso.check() {
        problems.push(m.to_string());
    }
    VerificationReport { problems }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "verified");
        }
        for p in &self.problems {
            writeln!(f, "verification failed: {p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn accepted(d: Z2Decision) -> Z2Representation {
        match d {
            Z2Decision::Accepted(r) => *r,
            Z2Decision::Rejected(f) => panic!("rejected: {f:?}"),
        }
    }

    #[test]
    fn swap_structure_is_accepted() {
        let s = GroupAction::new(2, vec![vec![1, 0]])
            .unwrap()
            .rel_algebra()
            .unwrap()
            .extract_atom_structure();
        let rep = accepted(decide_z2(&s, DecideOptions::default()).unwrap());
        assert_eq!(rep.action.base_size(), 2);
        assert_eq!(rep.action.generators()[0].images(), &[1, 0]);
        assert!(verify_decision(&rep).passed());
    }

    #[test]
    fn full_algebra_on_two_points_is_accepted() {
        let s = GroupAction::new(2, vec![])
            .unwrap()
            .rel_algebra()
            .unwrap()
            .extract_atom_structure();
        let rep = accepted(decide_z2(&s, DecideOptions::default()).unwrap());
        assert!(rep.action.generators()[0].is_identity());
        assert_eq!(rep.action.order(), 1);
        assert!(verify_decision(&rep).passed());
    }

    #[test]
    fn full_algebra_on_three_points_verifies() {
        let s = GroupAction::new(3, vec![])
            .unwrap()
            .rel_algebra()
            .unwrap()
            .extract_atom_structure();
        let rep = accepted(decide_z2(&s, DecideOptions::default()).unwrap());
        assert!(verify_decision(&rep).passed());
    }

    #[test]
    fn catalog_rejections() {
        let two = catalog::two_three();
        let Z2Decision::Rejected(f) = decide_z2(&two, DecideOptions::default()).unwrap() else {
            panic!("2_3 accepted")
        };
        assert_eq!(
            f,
            vec![ConditionFailure {
                condition: Z2Condition::PairDensity,
                atom: two.atom_by_name("1'").unwrap()
            }]
        );
        assert!(f.iter().all(|c| c.recheck(&two)));

        let five = catalog::five_seven();
        let Z2Decision::Rejected(f) = decide_z2(&five, DecideOptions::default()).unwrap() else {
            panic!("5_7 accepted")
        };
        assert!(f.contains(&ConditionFailure {
            condition: Z2Condition::Functionality,
            atom: five.atom_by_name("a").unwrap()
        }));
        assert!(f.iter().all(|c| c.recheck(&five)));
    }

    #[test]
    fn recheck_rejects_wrong_witness() {
        let five = catalog::five_seven();
        let bogus = ConditionFailure {
            condition: Z2Condition::Functionality,
            atom: five.atom_by_name("1'").unwrap(),
        };
        assert!(!bogus.recheck(&five));
    }

    #[test]
    fn tampered_decision_fails_verification() {
        let s = GroupAction::new(3, vec![vec![1, 0, 2]])
            .unwrap()
            .rel_algebra()
            .unwrap()
            .extract_atom_structure();
        let mut rep = accepted(decide_z2(&s, DecideOptions::default()).unwrap());
        // swap the images of two non-identity atoms with different shapes
        let m = &mut rep.iso.map;
        let i = s.atoms().find(|&a| !s.is_identity_atom(a) && s.converse_of(a) == a).unwrap();
        let j = s.atoms().find(|&a| s.converse_of(a) != a).unwrap();
        m.swap(i, j);
        let v = verify_decision(&rep);
        assert!(!v.passed());
    }

    #[test]
    fn invalid_input_is_an_error() {
        let s = AtomStructure::new(vec!["e".into()], vec![0], [0], []).unwrap();
        assert!(matches!(
            decide_z2(&s, DecideOptions::default()),
            Err(DecisionError::Invalid(_))
        ));
    }

    #[test]
    fn action_representation_checks() {
        let d5 = catalog::d5_action();
        assert!(check_action_represents(&catalog::five_seven(), &d5, DEFAULT_BUDGET)
            .unwrap()
            .is_some());
        let swap = GroupAction::new(2, vec![vec![1, 0]]).unwrap();
        assert!(check_action_represents(&catalog::five_seven(), &swap, DEFAULT_BUDGET)
            .unwrap()
            .is_none());
    }
}
