//! Labeled instance generators built from CNF formulas and 2-block QBFs,
//! together with truth-table evaluators that supply the labels.

mod dimacs;
mod generators;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::program::Atom;

pub use dimacs::{parse_dimacs, parse_qdimacs};
pub use generators::{
    gen_stable_cd, gen_stable_dc, gen_supp_cnf, gen_suppmin_cd, gen_suppmin_dc, rename_apart, LabeledInstance,
    Provenance,
};

/// Largest number of variables the truth-table evaluators accept.
pub const MAX_EVAL_VARIABLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, positive: true }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, positive: false }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "-{}", self.atom)
        }
    }
}

pub type Clause = Vec<Literal>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub variables: Vec<Atom>,
    pub clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Builds a formula; clause atoms missing from `variables` are added.
    /// Empty clauses are rejected.
    pub fn new(variables: impl IntoIterator<Item = Atom>, clauses: Vec<Clause>) -> Result<Self> {
        if clauses.iter().any(Vec::is_empty) {
            return Err(Error::Precondition("empty clause".into()));
        }
        let mut vars: Vec<Atom> = variables.into_iter().collect();
        let mut seen: BTreeSet<Atom> = vars.iter().cloned().collect();
        for lit in clauses.iter().flatten() {
            if seen.insert(lit.atom.clone()) {
                vars.push(lit.atom.clone());
            }
        }
        vars.dedup();
        Ok(CnfFormula {
            variables: vars,
            clauses,
        })
    }

    pub fn satisfied_by(&self, truth: &BTreeSet<Atom>) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| truth.contains(&l.atom) == l.positive))
    }

    pub fn rename(&self, map: &BTreeMap<Atom, Atom>) -> CnfFormula {
        let r = |a: &Atom| map.get(a).cloned().unwrap_or_else(|| a.clone());
        CnfFormula {
            variables: self.variables.iter().map(r).collect(),
            clauses: self
                .clauses
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|l| Literal {
                            atom: r(&l.atom),
                            positive: l.positive,
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("true");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            f.write_str("(")?;
            for (j, l) in c.iter().enumerate() {
                if j > 0 {
                    f.write_str(" | ")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl Serialize for CnfFormula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `∀ universals ∃ existentials . matrix`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qbf2 {
    pub universals: Vec<Atom>,
    pub existentials: Vec<Atom>,
    pub matrix: CnfFormula,
}

impl Qbf2 {
    /// Builds a QBF; matrix variables quantified nowhere are rejected.
    pub fn new(universals: Vec<Atom>, existentials: Vec<Atom>, clauses: Vec<Clause>) -> Result<Self> {
        let ys: BTreeSet<&Atom> = universals.iter().collect();
        if let Some(a) = existentials.iter().find(|a| ys.contains(a)) {
            return Err(Error::Precondition(format!("`{a}` is quantified twice")));
        }
        let vars: Vec<Atom> = universals.iter().chain(existentials.iter()).cloned().collect();
        let matrix = CnfFormula::new(vars.clone(), clauses)?;
        if let Some(a) = matrix.variables.iter().find(|a| !vars.contains(a)) {
            return Err(Error::Precondition(format!("`{a}` is not quantified")));
        }
        Ok(Qbf2 {
            universals,
            existentials,
            matrix,
        })
    }

    pub fn rename(&self, map: &BTreeMap<Atom, Atom>) -> Qbf2 {
        let r = |a: &Atom| map.get(a).cloned().unwrap_or_else(|| a.clone());
        Qbf2 {
            universals: self.universals.iter().map(r).collect(),
            existentials: self.existentials.iter().map(r).collect(),
            matrix: self.matrix.rename(map),
        }
    }
}

impl fmt::Display for Qbf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |v: &[Atom]| v.iter().map(Atom::name).collect::<Vec<_>>().join(",");
        write!(f, "forall {{{}}} exists {{{}}} . {}", names(&self.universals), names(&self.existentials), self.matrix)
    }
}

impl Serialize for Qbf2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_EVAL_VARIABLES {
        Err(Error::TooManyVariables {
            size: n,
            limit: MAX_EVAL_VARIABLES,
        })
    } else {
        Ok(())
    }
}

/// Every subset of `vars`, as a set of true atoms.
fn assignments(vars: &[Atom]) -> impl Iterator<Item = BTreeSet<Atom>> + '_ {
    (0..1u32 << vars.len()).map(move |bits| {
        vars.iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    })
}

/// Truth-table satisfiability.
pub fn eval_cnf_satisfiable(phi: &CnfFormula) -> Result<bool> {
    guard(phi.variables.len())?;
    Ok(assignments(&phi.variables).any(|t| phi.satisfied_by(&t)))
}

/// Truth-table evaluation of `∀Y ∃X φ`.
pub fn eval_qbf(q: &Qbf2) -> Result<bool> {
    guard(q.universals.len() + q.existentials.len())?;
    Ok(assignments(&q.universals).all(|i| {
        assignments(&q.existentials).any(|j| {
            let t: BTreeSet<Atom> = i.union(&j).cloned().collect();
            q.matrix.satisfied_by(&t)
        })
    }))
}

/// `ĉ`: primed atoms of the positive literals, then the atoms of the
/// negative literals.
pub fn hat_clause(c: &[Literal], priming: &BTreeMap<Atom, Atom>) -> Vec<Atom> {
    let prime = |a: &Atom| {
        priming
            .get(a)
            .cloned()
            .unwrap_or_else(|| panic!("no primed counterpart for `{a}`"))
    };
    c.iter()
        .filter(|l| l.positive)
        .map(|l| prime(&l.atom))
        .chain(c.iter().filter(|l| !l.positive).map(|l| l.atom.clone()))
        .collect()
}

/// Assigns each variable its primed counterpart: the name followed by one
/// apostrophe, or more when that name is already taken. `taken` grows with
/// every assigned name.
pub fn prime_atoms(vars: &[Atom], taken: &mut BTreeSet<Atom>) -> BTreeMap<Atom, Atom> {
    let mut out = BTreeMap::new();
    for v in vars {
        let mut name = format!("{}'", v.name());
        let mut atom = Atom::new(&name).expect("primed names are valid");
        while taken.contains(&atom) {
            name.push('\'');
            atom = Atom::new(&name).expect("primed names are valid");
        }
        taken.insert(atom.clone());
        out.insert(v.clone(), atom);
    }
    out
}

/// `base` followed by the least positive integer giving a name outside
/// `taken`.
pub fn fresh_atom(base: &str, taken: &BTreeSet<Atom>) -> Atom {
    (1..)
        .map(|i| Atom::new(&format!("{base}{i}")).expect("suffixed names are valid"))
        .find(|a| !taken.contains(a))
        .expect("unbounded search")
}

/// `base` itself when free, otherwise [`fresh_atom`].
pub(crate) fn free_or_fresh(base: &str, taken: &BTreeSet<Atom>) -> Atom {
    let a = Atom::new(base).expect("valid base name");
    if taken.contains(&a) {
        fresh_atom(base, taken)
    } else {
        a
    }
}
