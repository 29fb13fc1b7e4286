use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use super::{eval_cnf_satisfiable, eval_qbf, fresh_atom, free_or_fresh, hat_clause, prime_atoms, CnfFormula, Literal, Qbf2};
use crate::alphabets::{AlphabetSpec, ProblemSpec, Semantics};
use crate::error::{Error, Result};
use crate::program::{Atom, Program, Rule};
use crate::semantics::stable_models;

/// Where an instance came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub generator: String,
    /// The input formula or program, printed.
    pub source: String,
    /// Input atoms renamed away from the alphabets, old name to new name.
    pub renaming: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledInstance {
    pub p: Program,
    pub q: Program,
    pub spec: ProblemSpec,
    pub expected_equivalent: bool,
    pub provenance: Provenance,
}

impl LabeledInstance {
    /// Writes `p.lp`, `q.lp`, `spec.json` and `label.json` into `dir`,
    /// creating it if needed.
    pub fn write_dir(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("p.lp"), self.p.to_string())?;
        fs::write(dir.join("q.lp"), self.q.to_string())?;
        let spec = serde_json::to_string_pretty(&self.spec)?;
        fs::write(dir.join("spec.json"), spec + "\n")?;
        let label = serde_json::json!({
            "expected_equivalent": self.expected_equivalent,
            "provenance": self.provenance,
        });
        fs::write(dir.join("label.json"), serde_json::to_string_pretty(&label)? + "\n")?;
        Ok(())
    }
}

fn rule<'a>(
    head: impl IntoIterator<Item = &'a Atom>,
    pos: impl IntoIterator<Item = &'a Atom>,
    neg: impl IntoIterator<Item = &'a Atom>,
) -> Rule {
    Rule::new(head.into_iter().cloned(), pos.into_iter().cloned(), neg.into_iter().cloned())
}

fn renaming_names(map: &BTreeMap<Atom, Atom>) -> BTreeMap<String, String> {
    map.iter().map(|(k, v)| (k.name().to_string(), v.name().to_string())).collect()
}

/// Renames the atoms of `vars` that lie in `forbidden` to fresh names
/// outside `vars ∪ forbidden`.
fn rename_vars(vars: &[Atom], forbidden: &BTreeSet<Atom>) -> BTreeMap<Atom, Atom> {
    let mut taken: BTreeSet<Atom> = vars.iter().chain(forbidden).cloned().collect();
    let mut map = BTreeMap::new();
    for v in vars.iter().filter(|v| forbidden.contains(v)) {
        let fresh = fresh_atom(v.name(), &taken);
        taken.insert(fresh.clone());
        map.insert(v.clone(), fresh);
    }
    map
}

fn sorted(v: &[Atom]) -> Vec<Atom> {
    v.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
}

/// `{y :- not y'. y' :- not y. :- y, y' | y∈Y} ∪ {:- ĉ | c∈φ}`
fn supp_cnf_program(phi: &CnfFormula, pr: &BTreeMap<Atom, Atom>) -> Program {
    let mut rules = Vec::new();
    for y in sorted(&phi.variables) {
        let y1 = &pr[&y];
        rules.push(rule([&y], [], [y1]));
        rules.push(rule([y1], [], [&y]));
        rules.push(rule([], [&y, y1], []));
    }
    for c in &phi.clauses {
        rules.push(rule([], &hat_clause(c, pr), []));
    }
    Program::new(rules)
}

fn contradiction(f: &Atom) -> Program {
    Program::new([rule([f], [], []), rule([], [f], [])])
}

/// Supported-model equivalence instance that holds exactly when `phi` is
/// unsatisfiable. Heads range over the complement of `a`.
pub fn gen_supp_cnf(phi: &CnfFormula, a: &BTreeSet<Atom>) -> Result<LabeledInstance> {
    let f = Atom::new("f").expect("valid");
    if phi.variables.contains(&f) {
        return Err(Error::AtomCollision(f.to_string()));
    }
    let mut taken: BTreeSet<Atom> = phi.variables.iter().cloned().chain([f.clone()]).collect();
    let pr = prime_atoms(&sorted(&phi.variables), &mut taken);
    let p = supp_cnf_program(phi, &pr);
    if let Some(x) = p.atoms().intersection(a).next() {
        return Err(Error::AtomCollision(x.to_string()));
    }
    Ok(LabeledInstance {
        p,
        q: contradiction(&f),
        spec: ProblemSpec::new(Semantics::Supp, AlphabetSpec::complement(a.iter().cloned()), AlphabetSpec::all()),
        expected_equivalent: !eval_cnf_satisfiable(phi)?,
        provenance: Provenance {
            generator: "supp-cnf".into(),
            source: phi.to_string(),
            renaming: BTreeMap::new(),
        },
    })
}

/// Supp-minimal equivalence instance, heads over `a` and bodies over the
/// complement of the construction atoms, that holds exactly when the QBF
/// is true. Existentials in `a` are renamed; atoms of `a` that are not
/// universals become universals with a tautological clause.
pub fn gen_suppmin_dc(qbf: &Qbf2, a: &BTreeSet<Atom>) -> Result<LabeledInstance> {
    let map = rename_vars(&qbf.existentials, a);
    let mut q = qbf.rename(&map);
    let missing: Vec<Atom> = a.iter().filter(|v| !q.universals.contains(v)).cloned().collect();
    for v in missing {
        q.universals.push(v.clone());
        q.matrix.variables.push(v.clone());
        q.matrix.clauses.push(vec![Literal::pos(v.clone()), Literal::neg(v)]);
    }
    let xs = sorted(&q.existentials);
    let ys = sorted(&q.universals);
    let zs = sorted(&[xs.clone(), ys.clone()].concat());

    let mut taken: BTreeSet<Atom> = zs.iter().chain(a).cloned().collect();
    let pr = prime_atoms(&zs, &mut taken);

    let mut p = Vec::new();
    for z in &zs {
        p.push(rule([z], [], [&pr[z]]));
        p.push(rule([&pr[z]], [], [z]));
    }
    for y in &ys {
        p.push(rule([], [y, &pr[y]], []));
    }
    for x in &xs {
        for u in &xs {
            p.push(rule([x], [u, &pr[u]], []));
            p.push(rule([&pr[x]], [u, &pr[u]], []));
        }
    }
    for x in &xs {
        for c in &q.matrix.clauses {
            let hat = hat_clause(c, &pr);
            p.push(rule([x], &hat, []));
            p.push(rule([&pr[x]], &hat, []));
        }
    }

    let mut qr = Vec::new();
    for z in &zs {
        qr.push(rule([z], [], [&pr[z]]));
        qr.push(rule([&pr[z]], [], [z]));
    }
    for z in &zs {
        qr.push(rule([], [z, &pr[z]], []));
    }
    for c in &q.matrix.clauses {
        qr.push(rule([], &hat_clause(c, &pr), []));
    }

    let b: BTreeSet<Atom> = zs.iter().chain(pr.values()).cloned().collect();
    Ok(LabeledInstance {
        p: Program::new(p),
        q: Program::new(qr),
        spec: ProblemSpec::new(
            Semantics::Suppmin,
            AlphabetSpec::direct(a.iter().cloned()),
            AlphabetSpec::complement(b),
        ),
        expected_equivalent: eval_qbf(&q)?,
        provenance: Provenance {
            generator: "suppmin-dc".into(),
            source: qbf.to_string(),
            renaming: renaming_names(&map),
        },
    })
}

/// Supp-minimal equivalence instance, heads over the complement of `a`
/// and bodies over `b`, that holds exactly when the QBF is true. `a`
/// must be nonempty; its least atom plays the role of `g`.
pub fn gen_suppmin_cd(qbf: &Qbf2, a: &BTreeSet<Atom>, b: &BTreeSet<Atom>) -> Result<LabeledInstance> {
    let g = a
        .first()
        .cloned()
        .ok_or_else(|| Error::Precondition("the head alphabet base must be nonempty".into()))?;
    if qbf.existentials.is_empty() || qbf.universals.is_empty() {
        return Err(Error::Precondition("both quantifier blocks must be nonempty".into()));
    }
    let forbidden: BTreeSet<Atom> = a.union(b).cloned().collect();
    let vars = [qbf.universals.clone(), qbf.existentials.clone()].concat();
    let map = rename_vars(&vars, &forbidden);
    let q = qbf.rename(&map);
    let xs = sorted(&q.existentials);
    let ys = sorted(&q.universals);
    let zs = sorted(&[xs.clone(), ys.clone()].concat());
    let mut taken: BTreeSet<Atom> = zs.iter().chain(&forbidden).cloned().collect();
    let pr = prime_atoms(&zs, &mut taken);
    let x0 = &xs[0];
    let x0p = &pr[x0];

    let mut p = Vec::new();
    for y in &ys {
        p.push(rule([], [], [y, &pr[y]]));
        p.push(rule([], [y, &pr[y]], []));
    }
    for u in &xs {
        for v in &xs {
            let (up, vp) = (&pr[u], &pr[v]);
            p.push(rule([], [u], [v, vp]));
            p.push(rule([], [up], [v, vp]));
            p.push(rule([], [v, vp], [u]));
            p.push(rule([], [v, vp], [up]));
        }
    }
    for c in &q.matrix.clauses {
        let hat = hat_clause(c, &pr);
        p.push(rule([], hat.iter().chain([x0]), [x0p]));
        p.push(rule([], hat.iter().chain([x0p]), [x0]));
    }
    p.push(rule([], [], [&g]));
    let w: BTreeSet<Atom> = zs.iter().chain(pr.values()).chain([&g]).cloned().collect();
    for u in &w {
        p.push(rule([u], [x0, x0p, u], []));
    }
    let p = Program::new(p);
    let qp = p.with_rule(rule([], [], [x0, x0p]));

    Ok(LabeledInstance {
        p,
        q: qp,
        spec: ProblemSpec::new(
            Semantics::Suppmin,
            AlphabetSpec::complement(a.iter().cloned()),
            AlphabetSpec::direct(b.iter().cloned()),
        ),
        expected_equivalent: eval_qbf(&q)?,
        provenance: Provenance {
            generator: "suppmin-cd".into(),
            source: qbf.to_string(),
            renaming: renaming_names(&map),
        },
    })
}

/// Stable equivalence instance, heads over the complement of `a` and
/// bodies over `b`, that holds exactly when the QBF is true. A clause
/// without existential literals is split on the least existential, which
/// preserves the truth value.
pub fn gen_stable_cd(qbf: &Qbf2, a: &BTreeSet<Atom>, b: &BTreeSet<Atom>) -> Result<LabeledInstance> {
    let forbidden: BTreeSet<Atom> = a.union(b).cloned().collect();
    let vars = [qbf.universals.clone(), qbf.existentials.clone()].concat();
    let map = rename_vars(&vars, &forbidden);
    let q = qbf.rename(&map);
    let xs = sorted(&q.existentials);
    let ys = sorted(&q.universals);
    let zs = sorted(&[xs.clone(), ys.clone()].concat());

    let mut clauses = Vec::new();
    for c in &q.matrix.clauses {
        if c.iter().any(|l| q.existentials.contains(&l.atom)) {
            clauses.push(c.clone());
            continue;
        }
        let x0 = xs.first().ok_or_else(|| {
            Error::Precondition("a clause has no existential literal and there are no existentials".into())
        })?;
        for lit in [Literal::pos(x0.clone()), Literal::neg(x0.clone())] {
            let mut split = c.clone();
            split.push(lit);
            clauses.push(split);
        }
    }

    let mut taken: BTreeSet<Atom> = zs.iter().chain(&forbidden).cloned().collect();
    let pr = prime_atoms(&zs, &mut taken);
    let fa = free_or_fresh("a", &taken);

    let mut r = Vec::new();
    for x in &xs {
        r.push(rule([&fa], [x, &pr[x]], []));
        r.push(rule([x], [&fa], []));
        r.push(rule([&pr[x]], [&fa], []));
    }
    for y in &ys {
        r.push(rule([y, &pr[y]], [], []));
        r.push(rule([], [y, &pr[y]], []));
    }
    for c in &clauses {
        r.push(rule([&fa], &hat_clause(c, &pr), []));
    }
    r.push(rule([], [], [&fa]));

    let mut p: Vec<Rule> = xs.iter().map(|x| rule([x, &pr[x]], [], [])).collect();
    p.extend(r.iter().cloned());
    let mut qr = Vec::new();
    for x in &xs {
        let us = std::iter::once(&fa).chain(xs.iter()).chain(xs.iter().map(|x| &pr[x]));
        for u in us {
            qr.push(rule([x, &pr[x]], [u], []));
        }
    }
    qr.extend(r);

    let matrix = CnfFormula::new(q.matrix.variables.clone(), clauses)?;
    let repaired = Qbf2 {
        matrix,
        ..q
    };
    Ok(LabeledInstance {
        p: Program::new(p),
        q: Program::new(qr),
        spec: ProblemSpec::new(
            Semantics::Stable,
            AlphabetSpec::complement(a.iter().cloned()),
            AlphabetSpec::direct(b.iter().cloned()),
        ),
        expected_equivalent: eval_qbf(&repaired)?,
        provenance: Provenance {
            generator: "stable-cd".into(),
            source: qbf.to_string(),
            renaming: renaming_names(&map),
        },
    })
}

/// Stable equivalence instance `(P, {f. :- f.})` with heads over `a`,
/// which holds exactly when `P` has no stable models. Atoms of `P` in `a`
/// are renamed first. `bodies` is used as given.
pub fn gen_stable_dc(p: &Program, a: &BTreeSet<Atom>, bodies: AlphabetSpec) -> Result<LabeledInstance> {
    let (p1, _, map) = rename_apart(p, &Program::empty(), a);
    let taken: BTreeSet<Atom> = p1.atoms().into_iter().chain(a.iter().cloned()).collect();
    let f = free_or_fresh("f", &taken);
    let expected_equivalent = stable_models(&p1).is_empty();
    Ok(LabeledInstance {
        q: contradiction(&f),
        spec: ProblemSpec::new(Semantics::Stable, AlphabetSpec::direct(a.iter().cloned()), bodies),
        expected_equivalent,
        provenance: Provenance {
            generator: "stable-dc".into(),
            source: p.to_string().trim_end().replace('\n', " "),
            renaming: renaming_names(&map),
        },
        p: p1,
    })
}

/// Renames the atoms of `P ∪ Q` lying in `forbidden` to fresh atoms outside
/// `At(P∪Q) ∪ forbidden`, consistently in both programs.
pub fn rename_apart(p: &Program, q: &Program, forbidden: &BTreeSet<Atom>) -> (Program, Program, BTreeMap<Atom, Atom>) {
    let atoms: Vec<Atom> = p.atoms().union(&q.atoms()).cloned().collect();
    let map = rename_vars(&atoms, forbidden);
    let f = |x: &Atom| map.get(x).cloned().unwrap_or_else(|| x.clone());
    (p.rename(f), q.rename(f), map)
}
