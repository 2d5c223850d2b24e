#![allow(dead_code)]

use garra_core::{AtomStructure, GroupAction, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every involution of `{0..n-1}`, identity included.
pub fn involutions(n: usize) -> Vec<Permutation> {
    fn go(images: &mut Vec<Option<usize>>, out: &mut Vec<Permutation>) {
        let Some(x) = images.iter().position(Option::is_none) else {
            let p = images.iter().map(|i| i.unwrap()).collect();
            out.push(Permutation::new(p).unwrap());
            return;
        };
        images[x] = Some(x);
        go(images, out);
        for y in x + 1..images.len() {
            if images[y].is_none() {
                images[x] = Some(y);
                images[y] = Some(x);
                go(images, out);
                images[y] = None;
            }
        }
        images[x] = None;
    }
    let mut out = Vec::new();
    go(&mut vec![None; n], &mut out);
    out
}

/// A random action of the cyclic group of order `p` on `n` points: a
/// generator made of disjoint `p`-cycles (possibly none).
pub fn random_cyclic_action<R: Rng>(rng: &mut R, p: usize, n: usize) -> GroupAction {
    let cycles = rng.gen_range(0..=n / p);
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    let mut images: Vec<usize> = (0..n).collect();
    for c in 0..cycles {
        let cyc = &pts[c * p..(c + 1) * p];
        for i in 0..p {
            images[cyc[i]] = cyc[(i + 1) % p];
        }
    }
    GroupAction::new(n, vec![images]).unwrap()
}

/// The same structure with atom `i` renamed to position `perm[i]`.
pub fn relabel_structure(s: &AtomStructure, perm: &[usize]) -> AtomStructure {
    let n = s.atom_count();
    let mut names = vec![String::new(); n];
    let mut converse = vec![0; n];
    for a in s.atoms() {
        names[perm[a]] = s.name(a).to_string();
        converse[perm[a]] = perm[s.converse_of(a)];
    }
    AtomStructure::new(
        names,
        converse,
        s.identity_atoms().map(|e| perm[e]),
        s.cycles().iter().map(|&(x, y, z)| (perm[x], perm[y], perm[z])),
    )
    .unwrap()
}

/// Rebuilds `s` with a different cycle set.
pub fn with_cycles(
    s: &AtomStructure,
    cycles: impl IntoIterator<Item = (usize, usize, usize)>,
) -> AtomStructure {
    AtomStructure::new(
        s.names().to_vec(),
        s.converse_map().to_vec(),
        s.identity_atoms(),
        cycles,
    )
    .unwrap()
}

pub fn count_fixed(g: &Permutation) -> usize {
    g.fixed_points()
}
