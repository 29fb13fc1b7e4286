//! Shared test support: seeded generators, a set-based reference
//! implementation of the characterizations, and a DPLL solver.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hyperequiv::{AlphabetSpec, Atom, CnfFormula, Literal, Program, ProblemSpec, Qbf2, Rule, Semantics};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Set = BTreeSet<Atom>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn atom(n: &str) -> Atom {
    Atom::new(n).unwrap()
}

pub fn pool(names: &[&str]) -> Vec<Atom> {
    names.iter().map(|n| atom(n)).collect()
}

pub fn set(names: &[&str]) -> Set {
    names.iter().map(|n| atom(n)).collect()
}

fn pick(rng: &mut ChaCha8Rng, pool: &[Atom], max: usize) -> Vec<Atom> {
    let k = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, k).cloned().collect()
}

pub fn random_rule(rng: &mut ChaCha8Rng, pool: &[Atom], max_head: usize, max_body: usize) -> Rule {
    let head = pick(rng, pool, max_head);
    let body = pick(rng, pool, max_body);
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for a in body {
        if rng.gen_bool(0.5) {
            pos.push(a);
        } else {
            neg.push(a);
        }
    }
    Rule::new(head, pos, neg)
}

pub fn random_program(rng: &mut ChaCha8Rng, pool: &[Atom], max_rules: usize, max_head: usize, max_body: usize) -> Program {
    let n = rng.gen_range(0..=max_rules);
    Program::new((0..n).map(|_| random_rule(rng, pool, max_head, max_body)))
}

/// Direct or complement alphabet with a base of at most `max` atoms.
pub fn random_alphabet(rng: &mut ChaCha8Rng, pool: &[Atom], max: usize) -> AlphabetSpec {
    let base = pick(rng, pool, max);
    if rng.gen_bool(0.5) {
        AlphabetSpec::direct(base)
    } else {
        AlphabetSpec::complement(base)
    }
}

pub fn random_clause(rng: &mut ChaCha8Rng, vars: &[Atom], max_len: usize) -> Vec<Literal> {
    let k = rng.gen_range(1..=max_len.min(vars.len()));
    vars.choose_multiple(rng, k)
        .map(|v| Literal {
            atom: v.clone(),
            positive: rng.gen_bool(0.5),
        })
        .collect()
}

pub fn random_cnf(rng: &mut ChaCha8Rng, nvars: usize, max_clauses: usize) -> CnfFormula {
    let vars: Vec<Atom> = (1..=nvars).map(|i| atom(&format!("y{i}"))).collect();
    let n = rng.gen_range(0..=max_clauses);
    let clauses = (0..n).map(|_| random_clause(rng, &vars, 3)).collect();
    CnfFormula::new(vars, clauses).unwrap()
}

pub fn random_qbf(rng: &mut ChaCha8Rng, ny: usize, nx: usize, max_clauses: usize) -> Qbf2 {
    let ys: Vec<Atom> = (1..=ny).map(|i| atom(&format!("y{i}"))).collect();
    let xs: Vec<Atom> = (1..=nx).map(|i| atom(&format!("x{i}"))).collect();
    let all: Vec<Atom> = ys.iter().chain(&xs).cloned().collect();
    let n = rng.gen_range(1..=max_clauses);
    let clauses = (0..n).map(|_| random_clause(rng, &all, 3)).collect();
    Qbf2::new(ys, xs, clauses).unwrap()
}

// ---------------------------------------------------------------------------
// Reference implementation over explicit sets, following the definitions
// word for word.

pub fn subsets(s: &Set) -> Vec<Set> {
    let v: Vec<&Atom> = s.iter().collect();
    (0..1u64 << v.len())
        .map(|bits| {
            v.iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, a)| (*a).clone())
                .collect()
        })
        .collect()
}

pub fn proper_subsets(s: &Set) -> Vec<Set> {
    subsets(s).into_iter().filter(|z| z != s).collect()
}

pub fn restrict(s: &Set, alpha: &AlphabetSpec) -> Set {
    s.iter().filter(|a| alpha.contains(a)).cloned().collect()
}

pub fn restrict2(s: &Set, a: &AlphabetSpec, b: &AlphabetSpec) -> Set {
    s.iter().filter(|x| a.contains(x) || b.contains(x)).cloned().collect()
}

fn body_true(r: &Rule, m: &Set) -> bool {
    r.pos_body().is_subset(m) && r.neg_body().is_disjoint(m)
}

pub fn is_model(p: &Program, m: &Set) -> bool {
    p.rules()
        .iter()
        .all(|r| !body_true(r, m) || !r.head().is_disjoint(m))
}

/// `M ⊨ P^Y`
pub fn is_reduct_model(p: &Program, y: &Set, m: &Set) -> bool {
    p.rules()
        .iter()
        .filter(|r| r.neg_body().is_disjoint(y))
        .all(|r| !r.pos_body().is_subset(m) || !r.head().is_disjoint(m))
}

/// Heads of rules whose bodies hold; only meaningful for models.
pub fn tp(p: &Program, m: &Set) -> Set {
    p.rules()
        .iter()
        .filter(|r| body_true(r, m))
        .flat_map(|r| r.head().iter().cloned())
        .collect()
}

pub fn in_mod_a(p: &Program, y: &Set, a: &AlphabetSpec) -> bool {
    is_model(p, y) && y.difference(&tp(p, y)).all(|v| a.contains(v))
}

pub fn in_mod_ab(p: &Program, x: &Set, y: &Set, a: &AlphabetSpec, b: &AlphabetSpec) -> bool {
    let yab = restrict2(y, a, b);
    let (xa, xb) = (restrict(x, a), restrict(x, b));
    let c1 = in_mod_a(p, y, a);
    let c2 = x.is_subset(&yab);
    let c3 = proper_subsets(y)
        .iter()
        .all(|z| restrict2(z, a, b) != yab || !is_model(p, z));
    let c4 = proper_subsets(y)
        .iter()
        .all(|z| !(restrict(z, b) == xb && restrict(z, a).is_superset(&xa)) || !is_model(p, z));
    let c5 = restrict(x, b) != restrict(y, b) || y.difference(&tp(p, y)).all(|v| x.contains(v));
    c1 && c2 && c3 && c4 && c5
}

pub fn in_se(p: &Program, x: &Set, y: &Set, a: &AlphabetSpec, b: &AlphabetSpec) -> bool {
    let yab = restrict2(y, a, b);
    let (xa, xb, ya) = (restrict(x, a), restrict(x, b), restrict(y, a));
    let c1 = is_model(p, y);
    let c2 = x == y || (x.is_subset(&yab) && xa.is_subset(&ya) && xa != ya);
    let c3 = proper_subsets(y)
        .iter()
        .all(|z| restrict(z, a) != ya || !is_reduct_model(p, y, z));
    let c4 = proper_subsets(y).iter().all(|z| {
        let (za, zb) = (restrict(z, a), restrict(z, b));
        let hit = (zb.is_subset(&xb) && za.is_superset(&xa) && za != xa)
            || (zb.is_subset(&xb) && zb != xb && za.is_superset(&xa));
        !hit || !is_reduct_model(p, y, z)
    });
    let xab = restrict2(x, a, b);
    let c5 = subsets(y)
        .iter()
        .any(|z| restrict2(z, a, b) == xab && is_reduct_model(p, y, z));
    c1 && c2 && c3 && c4 && c5
}

/// Atoms outside everything in sight, used to stand in for the rest of
/// the infinite atom set.
pub fn fresh_atoms(p: &Program, q: &Program, spec: &ProblemSpec, k: usize) -> Set {
    let mut taken: Set = p.atoms().union(&q.atoms()).cloned().collect();
    taken.extend(spec.heads().base.iter().cloned());
    taken.extend(spec.bodies().base.iter().cloned());
    (1..)
        .map(|i| atom(&format!("zz{i}")))
        .filter(|a| !taken.contains(a))
        .take(k)
        .collect()
}

/// `At(P∪Q) ∪ base(A) ∪ base(B)` plus `k` fresh atoms.
pub fn reference_universe(p: &Program, q: &Program, spec: &ProblemSpec, k: usize) -> Set {
    let mut u: Set = p.atoms().union(&q.atoms()).cloned().collect();
    u.extend(spec.heads().base.iter().cloned());
    u.extend(spec.bodies().base.iter().cloned());
    u.extend(fresh_atoms(p, q, spec, k));
    u
}

/// Characterization-based equivalence over a finite universe. Supported
/// and supp-minimal semantics expect normal programs.
pub fn reference_equivalent(p: &Program, q: &Program, spec: &ProblemSpec, universe: &Set) -> bool {
    let (a, b) = (spec.heads(), spec.bodies());
    let ys = subsets(universe);
    match spec.semantics {
        Semantics::Supp => ys.iter().all(|y| {
            let (mp, mq) = (in_mod_a(p, y, a), in_mod_a(q, y, a));
            mp == mq && (!mp || tp(p, y) == tp(q, y))
        }),
        Semantics::Suppmin => ys.iter().all(|y| {
            subsets(y).iter().all(|x| {
                let (mp, mq) = (in_mod_ab(p, x, y, a, b), in_mod_ab(q, x, y, a, b));
                mp == mq && (!mp || restrict(&tp(p, y), b) == restrict(&tp(q, y), b))
            })
        }),
        Semantics::Stable | Semantics::StableNormal => ys
            .iter()
            .all(|y| subsets(y).iter().all(|x| in_se(p, x, y, a, b) == in_se(q, x, y, a, b))),
    }
}

pub fn reference_stable_models(p: &Program, universe: &Set) -> Vec<Set> {
    subsets(universe)
        .into_iter()
        .filter(|m| is_model(p, m) && proper_subsets(m).iter().all(|z| !is_reduct_model(p, m, z)))
        .collect()
}

// ---------------------------------------------------------------------------
// DPLL over integer literals.

fn dpll_rec(clauses: Vec<Vec<i32>>) -> bool {
    let mut clauses = clauses;
    loop {
        if clauses.is_empty() {
            return true;
        }
        if clauses.iter().any(Vec::is_empty) {
            return false;
        }
        let Some(unit) = clauses.iter().find(|c| c.len() == 1).map(|c| c[0]) else {
            break;
        };
        clauses = assign(&clauses, unit);
    }
    let lit = clauses[0][0];
    dpll_rec(assign(&clauses, lit)) || dpll_rec(assign(&clauses, -lit))
}

fn assign(clauses: &[Vec<i32>], lit: i32) -> Vec<Vec<i32>> {
    clauses
        .iter()
        .filter(|c| !c.contains(&lit))
        .map(|c| c.iter().copied().filter(|&l| l != -lit).collect())
        .collect()
}

fn encode(phi: &CnfFormula) -> (Vec<Atom>, Vec<Vec<i32>>) {
    let vars = phi.variables.clone();
    let idx = |a: &Atom| vars.iter().position(|v| v == a).unwrap() as i32 + 1;
    let clauses = phi
        .clauses
        .iter()
        .map(|c| c.iter().map(|l| if l.positive { idx(&l.atom) } else { -idx(&l.atom) }).collect())
        .collect();
    (vars, clauses)
}

pub fn dpll_satisfiable(phi: &CnfFormula) -> bool {
    dpll_rec(encode(phi).1)
}

/// `∀Y∃X φ` by DPLL on every universal assignment.
pub fn dpll_qbf(q: &Qbf2) -> bool {
    let (vars, clauses) = encode(&q.matrix);
    let ys: Vec<i32> = q
        .universals
        .iter()
        .map(|y| vars.iter().position(|v| v == y).unwrap() as i32 + 1)
        .collect();
    (0..1u32 << ys.len()).all(|bits| {
        let mut cs = clauses.clone();
        for (i, &y) in ys.iter().enumerate() {
            cs = assign(&cs, if bits >> i & 1 == 1 { y } else { -y });
        }
        dpll_rec(cs)
    })
}
