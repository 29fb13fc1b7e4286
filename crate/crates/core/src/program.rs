//! Propositional disjunctive programs and interpretations.
//!
//! Atoms are interned by name and ordered lexicographically. Rules and
//! programs use set semantics: duplicate rules collapse and atom order
//! inside a rule is irrelevant.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Prefix reserved for atoms generated internally (padding atoms).
pub const RESERVED_PREFIX: char = '_';

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Creates a user-level atom. The name must start with a lowercase
    /// letter and continue with letters, digits, `_` or `'`.
    pub fn new(name: &str) -> Result<Self> {
        if is_valid_name(name) && name != "not" {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    /// Creates an atom in the reserved namespace. The parser never
    /// produces these, so they are fresh with respect to any parsed input.
    pub(crate) fn reserved(suffix: &str) -> Self {
        Atom(Arc::from(format!("{RESERVED_PREFIX}{suffix}")))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_reserved(&self) -> bool {
        self.0.starts_with(RESERVED_PREFIX)
    }
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => chars.all(is_ident_char),
        _ => false,
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// Builds a set of atoms from names, panicking on invalid names.
/// Intended for tests and literals in code.
pub fn atoms<'a>(names: impl IntoIterator<Item = &'a str>) -> BTreeSet<Atom> {
    names
        .into_iter()
        .map(|n| Atom::new(n).unwrap_or_else(|e| panic!("{e}")))
        .collect()
}

/// A finite set of atoms.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Interpretation(BTreeSet<Atom>);

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        Interpretation(atoms(names))
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains(atom)
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        self.0.insert(atom)
    }

    pub fn remove(&mut self, atom: &Atom) -> bool {
        self.0.remove(atom)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.0.iter()
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    pub fn into_atoms(self) -> BTreeSet<Atom> {
        self.0
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_superset(&self, other: &Interpretation) -> bool {
        self.0.is_superset(&other.0)
    }

    pub fn union(&self, other: &Interpretation) -> Interpretation {
        Interpretation(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &BTreeSet<Atom>) -> Interpretation {
        Interpretation(self.0.intersection(other).cloned().collect())
    }

    pub fn difference(&self, other: &Interpretation) -> Interpretation {
        Interpretation(self.0.difference(&other.0).cloned().collect())
    }

    pub fn without(&self, atom: &Atom) -> Interpretation {
        let mut out = self.clone();
        out.remove(atom);
        out
    }

    pub fn with(&self, atom: Atom) -> Interpretation {
        let mut out = self.clone();
        out.insert(atom);
        out
    }

    /// Sorted atom names.
    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|a| a.name().to_string()).collect()
    }
}

/// Orders interpretations by size, then lexicographically on sorted names.
pub fn size_lex_cmp(a: &Interpretation, b: &Interpretation) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

impl From<BTreeSet<Atom>> for Interpretation {
    fn from(set: BTreeSet<Atom>) -> Self {
        Interpretation(set)
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// `a1 | ... | ak :- b1, ..., bm, not c1, ..., not cn.`
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    head: BTreeSet<Atom>,
    pos_body: BTreeSet<Atom>,
    neg_body: BTreeSet<Atom>,
}

impl Rule {
    pub fn new(
        head: impl IntoIterator<Item = Atom>,
        pos_body: impl IntoIterator<Item = Atom>,
        neg_body: impl IntoIterator<Item = Atom>,
    ) -> Self {
        Rule {
            head: head.into_iter().collect(),
            pos_body: pos_body.into_iter().collect(),
            neg_body: neg_body.into_iter().collect(),
        }
    }

    pub fn fact(atom: Atom) -> Self {
        Rule::new([atom], [], [])
    }

    pub fn head(&self) -> &BTreeSet<Atom> {
        &self.head
    }

    pub fn pos_body(&self) -> &BTreeSet<Atom> {
        &self.pos_body
    }

    pub fn neg_body(&self) -> &BTreeSet<Atom> {
        &self.neg_body
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.head.len() <= 1
    }

    pub fn is_positive(&self) -> bool {
        self.neg_body.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.head
            .iter()
            .chain(self.pos_body.iter())
            .chain(self.neg_body.iter())
    }

    pub fn body_atoms(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.pos_body.iter().chain(self.neg_body.iter())
    }

    pub fn body_satisfied_by(&self, m: &Interpretation) -> bool {
        self.pos_body.iter().all(|a| m.contains(a)) && !self.neg_body.iter().any(|a| m.contains(a))
    }

    pub fn head_satisfied_by(&self, m: &Interpretation) -> bool {
        self.head.iter().any(|a| m.contains(a))
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        !self.body_satisfied_by(m) || self.head_satisfied_by(m)
    }

    pub fn rename(&self, f: &impl Fn(&Atom) -> Atom) -> Rule {
        Rule {
            head: self.head.iter().map(f).collect(),
            pos_body: self.pos_body.iter().map(f).collect(),
            neg_body: self.neg_body.iter().map(f).collect(),
        }
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.head.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{a}")?;
        }
        let has_body = !self.pos_body.is_empty() || !self.neg_body.is_empty();
        if has_body || self.head.is_empty() {
            if !self.head.is_empty() {
                f.write_str(" ")?;
            }
            f.write_str(":-")?;
            let lits = self
                .pos_body
                .iter()
                .map(|a| a.to_string())
                .chain(self.neg_body.iter().map(|a| format!("not {a}")));
            for (i, lit) in lits.enumerate() {
                f.write_str(if i == 0 { " " } else { ", " })?;
                f.write_str(&lit)?;
            }
            if !has_body {
                f.write_str(" ")?;
            }
        }
        f.write_str(".")
    }
}

/// A finite set of rules, kept in first-seen order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Program {
    rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        let mut seen = HashSet::new();
        let rules = rules
            .into_iter()
            .filter(|r| seen.insert(r.clone()))
            .collect();
        Program { rules }
    }

    pub fn empty() -> Self {
        Program::default()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.rules.iter().all(Rule::is_normal)
    }

    pub fn is_horn(&self) -> bool {
        self.rules.iter().all(|r| r.is_normal() && r.is_positive())
    }

    /// H(P)
    pub fn head_atoms(&self) -> BTreeSet<Atom> {
        self.rules.iter().flat_map(|r| r.head.iter().cloned()).collect()
    }

    /// B±(P)
    pub fn body_atoms(&self) -> BTreeSet<Atom> {
        self.rules.iter().flat_map(|r| r.body_atoms().cloned()).collect()
    }

    /// At(P)
    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.rules.iter().flat_map(|r| r.atoms().cloned()).collect()
    }

    pub fn union(&self, other: &Program) -> Program {
        Program::new(self.rules.iter().chain(other.rules.iter()).cloned())
    }

    pub fn with_rule(&self, rule: Rule) -> Program {
        Program::new(self.rules.iter().cloned().chain(std::iter::once(rule)))
    }

    pub fn rename(&self, f: impl Fn(&Atom) -> Atom) -> Program {
        Program::new(self.rules.iter().map(|r| r.rename(&f)))
    }

    /// Rule sets are equal regardless of order.
    pub fn same_rules(&self, other: &Program) -> bool {
        let a: BTreeSet<&Rule> = self.rules.iter().collect();
        let b: BTreeSet<&Rule> = other.rules.iter().collect();
        a == b
    }

    pub(crate) fn require_normal(&self) -> Result<()> {
        match self.rules.iter().find(|r| !r.is_normal()) {
            Some(r) => Err(Error::NotNormal {
                head_size: r.head.len(),
            }),
            None => Ok(()),
        }
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Serialized as the list of printed rules.
impl Serialize for Program {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(&self.rules)
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        Program::new(iter)
    }
}

impl fmt::Debug for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Program[")?;
        for (i, r) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Atom {
        Atom::new(n).unwrap()
    }

    #[test]
    fn atom_names() {
        assert!(Atom::new("y'").is_ok());
        assert!(Atom::new("x_1'").is_ok());
        assert!(Atom::new("X").is_err());
        assert!(Atom::new("_hx").is_err());
        assert!(Atom::new("1a").is_err());
        assert!(Atom::new("not").is_err());
        assert!(Atom::new("").is_err());
        assert!(Atom::reserved("hx_p1").is_reserved());
    }

    #[test]
    fn rule_display() {
        let r = Rule::new([a("a"), a("b")], [a("c")], [a("d")]);
        assert_eq!(r.to_string(), "a | b :- c, not d.");
        assert_eq!(Rule::fact(a("f")).to_string(), "f.");
        assert_eq!(Rule::new([], [a("y"), a("y'")], []).to_string(), ":- y, y'.");
        assert_eq!(Rule::new([], [], []).to_string(), ":- .");
        assert_eq!(Rule::new([], [], [a("g")]).to_string(), ":- not g.");
    }

    #[test]
    fn program_dedups_in_first_seen_order() {
        let p = Program::new([Rule::fact(a("b")), Rule::fact(a("a")), Rule::fact(a("b"))]);
        assert_eq!(p.len(), 2);
        assert_eq!(p.rules()[0], Rule::fact(a("b")));
    }

    #[test]
    fn head_and_body_in_same_rule() {
        let r = Rule::new([a("a")], [a("a")], []);
        let m = Interpretation::from_names(["a"]);
        assert!(r.satisfied_by(&m));
        assert!(r.satisfied_by(&Interpretation::new()));
    }

    #[test]
    fn size_lex_order() {
        let x = Interpretation::from_names(["b"]);
        let y = Interpretation::from_names(["a", "c"]);
        let z = Interpretation::from_names(["a", "b"]);
        assert_eq!(size_lex_cmp(&x, &y), std::cmp::Ordering::Less);
        assert_eq!(size_lex_cmp(&z, &y), std::cmp::Ordering::Less);
    }
}
