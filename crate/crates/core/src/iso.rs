//! Isomorphisms between atom structures, found by backtracking over atom
//! bijections with invariant-based pruning.

use std::fmt;

use thiserror::Error;

use crate::atom_structure::{AtomId, AtomStructure};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("isomorphism search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),
}

/// An atom bijection `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub source: AtomStructure,
    pub target: AtomStructure,
    pub map: Vec<AtomId>,
}

impl IsoWitness {
    /// The map is checked by [`IsoWitness::check`], not here.
    pub fn new(source: AtomStructure, target: AtomStructure, map: Vec<AtomId>) -> Self {
        IsoWitness {
            source,
            target,
            map,
        }
    }

    /// First violated isomorphism condition, if any.
    pub fn check(&self) -> Result<(), IsoMismatch> {
        let (s, t, f) = (&self.source, &self.target, &self.map);
        if s.atom_count() != t.atom_count() || f.len() != s.atom_count() {
            return Err(IsoMismatch::Size {
                source_atoms: s.atom_count(),
                target_atoms: t.atom_count(),
                map: f.len(),
            });
        }
        let mut hit = vec![false; t.atom_count()];
        for (a, &b) in f.iter().enumerate() {
            if b >= t.atom_count() || std::mem::replace(&mut hit[b], true) {
                return Err(IsoMismatch::NotBijective {
                    atom: s.name(a).to_string(),
                });
            }
        }
        for a in s.atoms() {
            if s.is_identity_atom(a) != t.is_identity_atom(f[a]) {
                return Err(IsoMismatch::Identity {
                    atom: s.name(a).to_string(),
                });
            }
            if f[s.converse_of(a)] != t.converse_of(f[a]) {
                return Err(IsoMismatch::Converse {
                    atom: s.name(a).to_string(),
                });
            }
        }
        for x in s.atoms() {
            for y in s.atoms() {
                for z in s.atoms() {
                    if s.has_cycle(x, y, z) != t.has_cycle(f[x], f[y], f[z]) {
                        return Err(IsoMismatch::Cycle {
                            atoms: [
                                s.name(x).to_string(),
                                s.name(y).to_string(),
                                s.name(z).to_string(),
                            ],
                            in_source: s.has_cycle(x, y, z),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> IsoWitness {
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        IsoWitness::new(self.target.clone(), self.source.clone(), inv)
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, &b) in self.map.iter().enumerate() {
            writeln!(f, "map {} -> {}", self.source.name(a), self.target.name(b))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoMismatch {
    #[error("size mismatch: source {source_atoms} atoms, target {target_atoms} atoms, map {map} entries")]
    Size {
        source_atoms: usize,
        target_atoms: usize,
        map: usize,
    },
    #[error("map is not a bijection at atom {atom}")]
    NotBijective { atom: String },
    #[error("identity status differs at atom {atom}")]
    Identity { atom: String },
    #[error("map does not commute with converse at atom {atom}")]
    Converse { atom: String },
    #[error(
        "cycle mismatch: ({} {} {}) is {} source cycle but its image is {}",
        atoms[0], atoms[1], atoms[2],
        if *in_source { "a" } else { "not a" },
        if *in_source { "not" } else { "one" }
    )]
    Cycle { atoms: [String; 3], in_source: bool },
}

/// Isomorphism-invariant data for one atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    identity: bool,
    self_converse: bool,
    point: bool,
    pair: bool,
    function: bool,
    converse_function: bool,
    left_sizes: Vec<usize>,
    right_sizes: Vec<usize>,
    appears_in: usize,
}

fn signatures(s: &AtomStructure) -> Vec<Signature> {
    let n = s.atom_count();
    let mut appears = vec![0; n];
    for &(_, _, z) in s.cycles() {
        appears[z] += 1;
    }
    s.atoms()
        .map(|a| {
            let mut left: Vec<usize> = s.atoms().map(|b| s.atom_product(a, b).count_ones(..)).collect();
            let mut right: Vec<usize> = s.atoms().map(|b| s.atom_product(b, a).count_ones(..)).collect();
            left.sort_unstable();
            right.sort_unstable();
            Signature {
                identity: s.is_identity_atom(a),
                self_converse: s.converse_of(a) == a,
                point: s.atom_is_point(a),
                pair: s.atom_is_pair(a),
                function: s.atom_is_function(a),
                converse_function: s.atom_is_function(s.converse_of(a)),
                left_sizes: left,
                right_sizes: right,
                appears_in: appears[a],
            }
        })
        .collect()
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    a: &'a AtomStructure,
    b: &'a AtomStructure,
    sig_a: Vec<Signature>,
    sig_b: Vec<Signature>,
    order: Vec<AtomId>,
    fwd: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<AtomId>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn consistent(&self, new: &[AtomId]) -> bool {
        let (a, b, f) = (self.a, self.b, &self.fwd);
        for &x in new {
            for &u in &self.assigned {
                for &v in &self.assigned {
                    let (fx, fu, fv) = (f[x], f[u], f[v]);
                    if a.has_cycle(x, u, v) != b.has_cycle(fx, fu, fv)
                        || a.has_cycle(u, x, v) != b.has_cycle(fu, fx, fv)
                        || a.has_cycle(u, v, x) != b.has_cycle(fu, fv, fx)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, x: AtomId, y: AtomId) -> Vec<AtomId> {
        let mut new = vec![x];
        self.fwd[x] = y;
        self.used[y] = true;
        let xc = self.a.converse_of(x);
        if xc != x {
            self.fwd[xc] = self.b.converse_of(y);
            self.used[self.b.converse_of(y)] = true;
            new.push(xc);
        }
        self.assigned.extend(&new);
        new
    }

    fn unassign(&mut self, new: &[AtomId]) {
        for &x in new {
            self.used[self.fwd[x]] = false;
            self.fwd[x] = UNSET;
        }
        self.assigned.truncate(self.assigned.len() - new.len());
    }

    fn run(&mut self, depth: usize) -> Result<bool, SearchError> {
        let Some(&x) = self.order[depth..].iter().find(|&&x| self.fwd[x] == UNSET) else {
            return Ok(true);
        };
        let next = depth + 1;
        let xc = self.a.converse_of(x);
        for y in self.b.atoms() {
            if self.used[y] || self.sig_a[x] != self.sig_b[y] {
                continue;
            }
            let yc = self.b.converse_of(y);
            if (xc != x) && self.used[yc] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(SearchError::BudgetExceeded(self.budget));
            }
            let new = self.assign(x, y);
            if self.consistent(&new) && self.run(next)? {
                return Ok(true);
            }
            self.unassign(&new);
        }
        Ok(false)
    }
}

/// Searches for an isomorphism `a -> b`. Candidates are tried in atom order,
/// so the witness returned is deterministic. `Ok(None)` means the exhaustive
/// search found no isomorphism.
pub fn find_isomorphism(
    a: &AtomStructure,
    b: &AtomStructure,
    budget: u64,
) -> Result<Option<IsoWitness>, SearchError> {
    let n = a.atom_count();
    if n != b.atom_count()
        || a.identity_atoms().count() != b.identity_atoms().count()
        || a.cycles().len() != b.cycles().len()
    {
        return Ok(None);
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let mut ms_a = sig_a.clone();
    let mut ms_b = sig_b.clone();
    ms_a.sort();
    ms_b.sort();
    if ms_a != ms_b {
        return Ok(None);
    }

    // Identity atoms first, then rarer signatures first.
    let class_size = |x: AtomId| sig_a.iter().filter(|s| **s == sig_a[x]).count();
    let mut order: Vec<AtomId> = a.atoms().collect();
    order.sort_by_key(|&x| (!a.is_identity_atom(x), class_size(x), x));

    let mut search = Search {
        a,
        b,
        sig_a,
        sig_b,
        order,
        fwd: vec![UNSET; n],
        used: vec![false; n],
        assigned: Vec::with_capacity(n),
        nodes: 0,
        budget,
    };
    if search.run(0)? {
        Ok(Some(IsoWitness::new(a.clone(), b.clone(), search.fwd)))
    } else {
        Ok(None)
    }
}
