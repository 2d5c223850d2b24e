//! Browser bindings: orbit grids of group actions, two-element
//! representability decisions, and atom type classification.
//!
//! Each export takes file-format text and returns JSON or a plain report.
//! The `*_impl` functions carry the logic so they can be tested natively.

use garra_core::decision::{DecideOptions, DecisionError};
use garra_core::format::{decision_report, parse_action, parse_atom_structure, write_atom_structure};
use garra_core::{classify, decide_z2};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct OrbitGrid {
    pub size: usize,
    pub order: usize,
    pub is_z2: bool,
    /// `cells[x][y]` is the index of the atom containing `(x, y)`.
    pub cells: Vec<Vec<usize>>,
    pub atoms: Vec<GridAtom>,
    pub structure: String,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct GridAtom {
    pub name: String,
    pub identity: bool,
    /// Structure type 1-6, when the action has order at most two.
    pub shape: Option<u8>,
}

pub fn orbit_grid_impl(action: &str) -> Result<OrbitGrid, String> {
    let a = parse_action(action).map_err(|e| e.to_string())?;
    let c = a.rel_algebra().map_err(|e| e.to_string())?;
    let n = c.base_size();
    let cells = (0..n)
        .map(|x| (0..n).map(|y| c.atom_containing(x, y).expect("atoms cover U x U")).collect())
        .collect();
    let shapes = if a.order() <= 2 {
        classify(&c).ok().map(|cls| cls.shapes)
    } else {
        None
    };
    let atoms = c
        .atoms()
        .enumerate()
        .map(|(i, (name, _))| GridAtom {
            name: name.to_string(),
            identity: c.is_identity_atom(i),
            shape: shapes.as_ref().map(|s| s[i].1.type_number()),
        })
        .collect();
    Ok(OrbitGrid {
        size: n,
        order: a.order(),
        is_z2: a.is_z2(),
        cells,
        atoms,
        structure: write_atom_structure(&c.extract_atom_structure()),
    })
}

pub fn decide_impl(structure: &str) -> Result<String, String> {
    let s = parse_atom_structure(structure).map_err(|e| e.to_string())?;
    match decide_z2(&s, DecideOptions::default()) {
        Ok(d) => Ok(decision_report(&s, &d)),
        Err(DecisionError::Invalid(r)) => Ok(r.to_string()),
        Err(e) => Err(e.to_string()),
    }
}

pub fn axioms_impl(structure: &str) -> Result<String, String> {
    let s = parse_atom_structure(structure).map_err(|e| e.to_string())?;
    Ok(garra_core::format::axioms_report(&s))
}

/// JSON orbit grid for an action given in the action text format.
#[wasm_bindgen]
pub fn orbit_grid(action: &str) -> Result<String, JsError> {
    let grid = orbit_grid_impl(action).map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&grid).map_err(|e| JsError::new(&e.to_string()))
}

/// Decision report for an atom structure.
#[wasm_bindgen]
pub fn decide(structure: &str) -> Result<String, JsError> {
    decide_impl(structure).map_err(|e| JsError::new(&e))
}

/// Three-line axiom report for an atom structure.
#[wasm_bindgen]
pub fn axioms(structure: &str) -> Result<String, JsError> {
    axioms_impl(structure).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use garra_core::catalog;

    #[test]
    fn z3_grid_is_a_latin_square_of_three_atoms() {
        let g = orbit_grid_impl(catalog::Z3_ACTION).unwrap();
        assert_eq!((g.size, g.order, g.is_z2), (3, 3, false));
        assert_eq!(g.cells, vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]);
        assert!(g.atoms.iter().all(|a| a.shape.is_none()));
        assert!(parse_atom_structure(&g.structure).is_ok());
    }

    #[test]
    fn swap_grid_has_shapes() {
        let g = orbit_grid_impl(catalog::Z2_SWAP_ACTION).unwrap();
        assert!(g.is_z2);
        assert_eq!(g.atoms.len(), 2);
        assert!(g.atoms.iter().all(|a| a.shape == Some(2)));
        let json = serde_json::to_value(&g).unwrap();
        assert_eq!(json["cells"][0][1], 1);
    }

    #[test]
    fn reports() {
        assert!(decide_impl(catalog::FIVE_SEVEN).unwrap().contains("axiom 3 fails at atom a"));
        assert_eq!(axioms_impl(catalog::TWO_THREE).unwrap().lines().count(), 3);
        let e = decide_impl("atoms e\nidentity q\n").unwrap_err();
        assert!(e.contains("line 2"));
        assert!(orbit_grid_impl("set 2\ngen 0 0\n").is_err());
    }
}
