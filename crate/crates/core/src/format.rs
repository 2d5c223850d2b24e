//! Line-oriented text formats for atom structures, concrete algebras and
//! group actions, plus the plain-text reports built on them.
//!
//! All formats ignore blank lines and `#` comments and split on whitespace.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use thiserror::Error;

use crate::atom_structure::{peircean_transforms, AtomId, AtomStructure};
use crate::concrete::{ConcreteAlgebra, Relation};
use crate::decision::{Z2Condition, Z2Decision};
use crate::group::{GroupAction, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message} (at `{token}`)")]
pub struct ParseError {
    pub line: usize,
    pub token: String,
    pub message: String,
}

fn err(line: usize, token: &str, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        token: token.to_string(),
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| err(line, tok, "expected a non-negative integer"))
}

/// Parses an atom structure. Cycles may be given up to Peircean transforms;
/// the result carries the closed cycle set.
pub fn parse_atom_structure(text: &str) -> Result<AtomStructure, ParseError> {
    let mut names: Option<Vec<String>> = None;
    let mut index: HashMap<String, AtomId> = HashMap::new();
    let mut identity: Option<Vec<AtomId>> = None;
    let mut converse: Vec<Option<AtomId>> = Vec::new();
    let mut cycles = Vec::new();
    let mut last_line = 0;

    for (ln, l) in lines(text) {
        last_line = ln;
        let mut toks = l.split_whitespace();
        let kw = toks.next().unwrap_or_default();
        let rest: Vec<&str> = toks.collect();
        if kw != "atoms" && names.is_none() {
            return Err(err(ln, kw, "the `atoms` line must come first"));
        }
        let lookup = |t: &str| {
            index
                .get(t)
                .copied()
                .ok_or_else(|| err(ln, t, "unknown atom"))
        };
        match kw {
            "atoms" => {
                if names.is_some() {
                    return Err(err(ln, kw, "duplicate `atoms` line"));
                }
                if rest.is_empty() {
                    return Err(err(ln, kw, "no atoms declared"));
                }
                for (i, &t) in rest.iter().enumerate() {
                    if index.insert(t.to_string(), i).is_some() {
                        return Err(err(ln, t, "duplicate atom name"));
                    }
                }
                converse = vec![None; rest.len()];
                names = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "identity" => {
                if identity.is_some() {
                    return Err(err(ln, kw, "duplicate `identity` line"));
                }
                if rest.is_empty() {
                    return Err(err(ln, kw, "identity must list at least one atom"));
                }
                identity = Some(rest.iter().map(|t| lookup(t)).collect::<Result<_, _>>()?);
            }
            "converse" => {
                for &t in &rest {
                    let (a, b) = t
                        .split_once(':')
                        .ok_or_else(|| err(ln, t, "expected <atom>:<atom>"))?;
                    let (a, b) = (lookup(a)?, lookup(b)?);
                    for (x, y) in [(a, b), (b, a)] {
                        if converse[x].replace(y).is_some() {
                            return Err(err(ln, t, "atom given a converse twice"));
                        }
                        if a == b {
                            break;
                        }
                    }
                }
            }
            "cycle" => {
                let [x, y, z] = rest[..] else {
                    return Err(err(ln, l, "expected `cycle <x> <y> <z>`"));
                };
                cycles.push((lookup(x)?, lookup(y)?, lookup(z)?));
            }
            other => return Err(err(ln, other, "unknown directive")),
        }
    }

    let names = names.ok_or_else(|| err(last_line, "", "missing `atoms` line"))?;
    let identity = identity.ok_or_else(|| err(last_line, "", "missing `identity` line"))?;
    let converse = converse
        .iter()
        .enumerate()
        .map(|(a, c)| c.ok_or_else(|| err(last_line, &names[a], "atom has no converse")))
        .collect::<Result<Vec<_>, _>>()?;
    let s = AtomStructure::new(names, converse, identity, cycles)
        .expect("ids come from the name table");
    Ok(s.close_cycles())
}

/// Writes one representative (the least transform) per Peircean class.
pub fn write_atom_structure(s: &AtomStructure) -> String {
    let mut out = String::new();
    writeln!(out, "atoms {}", s.names().join(" ")).unwrap();
    let ids: Vec<&str> = s.identity_atoms().map(|e| s.name(e)).collect();
    writeln!(out, "identity {}", ids.join(" ")).unwrap();
    let pairs: Vec<String> = s
        .atoms()
        .filter(|&a| a <= s.converse_of(a))
        .map(|a| format!("{}:{}", s.name(a), s.name(s.converse_of(a))))
        .collect();
    writeln!(out, "converse {}", pairs.join(" ")).unwrap();
    let reps: BTreeSet<_> = s
        .cycles()
        .iter()
        .map(|&c| {
            peircean_transforms(s.converse_map(), c)
                .into_iter()
                .min()
                .unwrap()
        })
        .collect();
    for (x, y, z) in reps {
        writeln!(out, "cycle {} {} {}", s.name(x), s.name(y), s.name(z)).unwrap();
    }
    out
}

fn parse_set_line(ln: usize, l: &str) -> Result<usize, ParseError> {
    let toks: Vec<&str> = l.split_whitespace().collect();
    match toks[..] {
        ["set", n] => {
            let n = parse_usize(ln, n)?;
            if n == 0 {
                return Err(err(ln, "0", "base set must be nonempty"));
            }
            Ok(n)
        }
        _ => Err(err(ln, toks[0], "expected `set <n>` first")),
    }
}

fn parse_pair(ln: usize, tok: &str, n: usize) -> Result<(usize, usize), ParseError> {
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err(ln, tok, "expected (i,j)"))?;
    let (i, j) = inner
        .split_once(',')
        .ok_or_else(|| err(ln, tok, "expected (i,j)"))?;
    let (i, j) = (parse_usize(ln, i.trim())?, parse_usize(ln, j.trim())?);
    if i >= n || j >= n {
        return Err(err(ln, tok, format!("pair out of range for base size {n}")));
    }
    Ok((i, j))
}

/// Parses a concrete algebra and checks its partition and closure
/// conditions.
pub fn parse_concrete(text: &str) -> Result<ConcreteAlgebra, ParseError> {
    let mut it = lines(text);
    let (ln0, first) = it.next().ok_or_else(|| err(0, "", "empty input"))?;
    let n = parse_set_line(ln0, first)?;
    let mut atoms = Vec::new();
    let mut last = ln0;
    for (ln, l) in it {
        last = ln;
        let body = l
            .strip_prefix("atom")
            .filter(|b| b.starts_with(char::is_whitespace))
            .ok_or_else(|| err(ln, l.split_whitespace().next().unwrap_or(l), "expected `atom`"))?;
        let (name, pairs) = body
            .split_once('=')
            .ok_or_else(|| err(ln, l, "expected `atom <name> = (i,j) ...`"))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(err(ln, name, "atom name must be one token"));
        }
        let compact: String = pairs.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rel = Vec::new();
        for piece in compact.split_inclusive(')') {
            rel.push(parse_pair(ln, piece, n)?);
        }
        if rel.is_empty() {
            return Err(err(ln, name, "atom has no pairs"));
        }
        let rel = Relation::from_pairs(n, rel).expect("pairs checked in range");
        atoms.push((name.to_string(), rel));
    }
    ConcreteAlgebra::new(n, atoms).map_err(|e| err(last, "", e.to_string()))
}

pub fn write_concrete(c: &ConcreteAlgebra) -> String {
    let mut out = format!("set {}\n", c.base_size());
    for (name, rel) in c.atoms() {
        writeln!(out, "atom {name} = {rel}").unwrap();
    }
    out
}

pub fn parse_action(text: &str) -> Result<GroupAction, ParseError> {
    parse_action_with_max_order(text, crate::group::DEFAULT_MAX_ORDER)
}

pub fn parse_action_with_max_order(text: &str, max_order: usize) -> Result<GroupAction, ParseError> {
    let mut it = lines(text);
    let (ln0, first) = it.next().ok_or_else(|| err(0, "", "empty input"))?;
    let n = parse_set_line(ln0, first)?;
    let mut gens = Vec::new();
    let mut gen_lines = Vec::new();
    let mut last = ln0;
    for (ln, l) in it {
        last = ln;
        gen_lines.push(ln);
        let mut toks = l.split_whitespace();
        let kw = toks.next().unwrap_or_default();
        if kw != "gen" {
            return Err(err(ln, kw, "expected `gen`"));
        }
        let images = toks.map(|t| parse_usize(ln, t)).collect::<Result<Vec<_>, _>>()?;
        if images.len() != n {
            return Err(err(ln, l, format!("expected {n} images, found {}", images.len())));
        }
        gens.push(images);
    }
    GroupAction::with_max_order(n, gens, max_order).map_err(|e| match e {
        GroupError::NotBijection { index, image } => {
            err(gen_lines[index], &image.to_string(), e.to_string())
        }
        _ => err(last, "", e.to_string()),
    })
}

pub fn write_action(a: &GroupAction) -> String {
    let mut out = format!("set {}\n", a.base_size());
    for g in a.generators() {
        writeln!(out, "gen {g}").unwrap();
    }
    out
}

/// Three lines, one per condition.
pub fn axioms_report(s: &AtomStructure) -> String {
    let ax = s.check_z2_axioms();
    let mut out = String::new();
    for (cond, w) in [
        (Z2Condition::Simplicity, ax.simplicity),
        (Z2Condition::PairDensity, ax.pair_density),
        (Z2Condition::Functionality, ax.functionality),
    ] {
        let status = match w {
            None => "holds".to_string(),
            Some(a) => format!("fails at atom {}", s.name(a)),
        };
        writeln!(out, "axiom {} ({}): {status}", cond.axiom(), cond.describe()).unwrap();
    }
    out
}

pub fn decision_report(s: &AtomStructure, d: &Z2Decision) -> String {
    let mut out = String::new();
    match d {
        Z2Decision::Rejected(failures) => {
            out.push_str("verdict: rejected\n");
            for f in failures {
                writeln!(
                    out,
                    "axiom {} fails at atom {} (not {})",
                    f.condition.axiom(),
                    s.name(f.atom),
                    f.condition.describe()
                )
                .unwrap();
            }
        }
        Z2Decision::Accepted(rep) => {
            out.push_str("verdict: accepted\n");
            out.push_str("# action\n");
            out.push_str(&write_action(&rep.action));
            out.push_str("# concrete algebra\n");
            out.push_str(&write_concrete(&rep.algebra));
            out.push_str("# isomorphism\n");
            out.push_str(&rep.iso.to_string());
        }
    }
    out
}
