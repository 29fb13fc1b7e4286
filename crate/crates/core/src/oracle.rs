//! Brute-force ground truth: enumerate context programs `R ∈ HB(A', B')`
//! within bounds and compare the models of `P ∪ R` and `Q ∪ R`.
//!
//! Finding no distinguishing context only means the programs agree on the
//! contexts that were tried.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use itertools::Itertools;
use serde::Serialize;

use crate::alphabets::{ProblemSpec, Semantics};
use crate::bits::{ones, submasks, subset, BProgram, BRule, Mask, Universe};
use crate::decide::{Side, Witness};
use crate::error::{Error, Result};
use crate::exec;
use crate::program::{Atom, Program, Rule};
use crate::semantics::{shift, stable_models, supported_models, suppmin_models, tp};

/// Largest `At(P∪Q) ∪ universe` the context enumeration accepts.
pub const MAX_ORACLE_ATOMS: usize = 12;

/// Contexts examined per parallel batch.
const BATCH: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextBounds {
    pub universe: BTreeSet<Atom>,
    pub max_rules: usize,
    pub max_head: usize,
    pub max_body: usize,
    /// Only atomic facts.
    pub facts_only: bool,
}

impl ContextBounds {
    pub fn new(universe: BTreeSet<Atom>, max_rules: usize, max_head: usize, max_body: usize) -> Self {
        ContextBounds {
            universe,
            max_rules,
            max_head,
            max_body,
            facts_only: false,
        }
    }

    pub fn facts(universe: BTreeSet<Atom>) -> Self {
        let n = universe.len();
        ContextBounds {
            universe,
            max_rules: n,
            max_head: 1,
            max_body: 0,
            facts_only: true,
        }
    }

    /// Checks the size limits and membership of `r` in `HB(A', B')`.
    pub fn admits(&self, spec: &ProblemSpec, r: &Program) -> bool {
        r.len() <= self.max_rules
            && spec.context.contains(r)
            && r.atoms().is_subset(&self.universe)
            && r.rules().iter().all(|rule| {
                rule.head().len() <= self.max_head
                    && rule.pos_body().len() + rule.neg_body().len() <= self.max_body
                    && (!self.facts_only || (rule.head().len() == 1 && rule.body_atoms().next().is_none()))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    /// No context within the bounds distinguishes the programs. This is not
    /// a proof of equivalence.
    pub bounded_equivalent: bool,
    pub context: Option<Program>,
    pub contexts_checked: u64,
    pub rule_candidates: usize,
}

/// Models of a program under `sem`, in (size, lexicographic) order.
pub fn semantic_models(p: &Program, sem: Semantics) -> Vec<crate::program::Interpretation> {
    match sem {
        Semantics::Supp => supported_models(p),
        Semantics::Suppmin => suppmin_models(p),
        Semantics::Stable | Semantics::StableNormal => stable_models(p),
    }
}

/// Whether `R` separates `P` and `Q`, by direct model computation.
pub fn distinguishes(p: &Program, q: &Program, r: &Program, sem: Semantics) -> bool {
    semantic_models(&p.union(r), sem) != semantic_models(&q.union(r), sem)
}

pub fn oracle_equiv(p: &Program, q: &Program, spec: &ProblemSpec, bounds: &ContextBounds) -> Result<OracleReport> {
    oracle_equiv_jobs(p, q, spec, bounds, 1)
}

/// [`oracle_equiv`] with a worker count as in [`crate::DecideOptions`].
pub fn oracle_equiv_jobs(
    p: &Program,
    q: &Program,
    spec: &ProblemSpec,
    bounds: &ContextBounds,
    jobs: usize,
) -> Result<OracleReport> {
    let engine = Engine::new(p, q, spec, bounds)?;
    let checked = AtomicU64::new(0);
    let found = exec::run(jobs, |par| {
        (0..=bounds.max_rules.min(engine.rules.len())).find_map(|k| {
            (0..engine.rules.len() as u32)
                .combinations(k)
                .chunks(BATCH)
                .into_iter()
                .find_map(|chunk| {
                    let chunk: Vec<Vec<u32>> = chunk.collect();
                    exec::find_first(par, &chunk, |ctx| {
                        checked.fetch_add(1, Ordering::Relaxed);
                        engine.differs(ctx).then(|| ctx.clone())
                    })
                })
        })
    });
    let context = match found {
        Some(ctx) => {
            let r = engine.program(&ctx);
            assert!(
                distinguishes(p, q, &r, spec.semantics),
                "oracle context {r:?} failed direct re-verification"
            );
            Some(r)
        }
        None => None,
    };
    Ok(OracleReport {
        bounded_equivalent: context.is_none(),
        context,
        contexts_checked: checked.into_inner(),
        rule_candidates: engine.rules.len(),
    })
}

/// Turns a witness into a concrete distinguishing context.
///
/// For supported semantics the fact set `Y ∖ T(Y)` of the program owning
/// the witness is tried first; otherwise (and as a fallback) contexts over
/// the witness atoms and `bounds.universe` are enumerated.
pub fn witness_to_context(
    p: &Program,
    q: &Program,
    witness: Option<&Witness>,
    spec: &ProblemSpec,
    bounds: &ContextBounds,
) -> Result<Program> {
    let w = witness.ok_or(Error::NoWitness)?;
    let sem = spec.semantics;
    let mut universe = bounds.universe.clone();
    if sem == Semantics::Supp {
        let (sp, sq) = (shift(p), shift(q));
        let owners: &[&Program] = match w.side {
            Side::POnly => &[&sp],
            Side::QOnly => &[&sq],
            Side::TMismatch => &[&sp, &sq],
        };
        for owner in owners {
            if let Some(t) = tp(owner, &w.y)? {
                let facts: Program = w
                    .y
                    .difference(&t)
                    .iter()
                    .filter(|a| spec.heads().contains(a))
                    .cloned()
                    .map(Rule::fact)
                    .collect();
                if distinguishes(p, q, &facts, sem) {
                    return Ok(facts);
                }
            }
        }
        universe = crate::decide::witness_atoms(w);
    }
    universe.retain(|a| !a.is_reserved() || bounds.universe.contains(a));
    let seeded = ContextBounds {
        universe,
        ..bounds.clone()
    };
    oracle_equiv(p, q, spec, &seeded)?
        .context
        .ok_or(Error::ContextNotFound)
}

type Bits = Vec<u64>;

fn bit_get(b: &[u64], i: Mask) -> bool {
    b[(i / 64) as usize] >> (i % 64) & 1 == 1
}

struct Part {
    bp: BProgram,
    /// Per `M`: `{Z ⊆ M : Z ⊨ P^M}`.
    reduct_sub: Vec<Bits>,
    /// Per `M`: `{Z ⊆ M : Z ⊨ P}`.
    model_sub: Vec<Bits>,
}

struct CRule {
    r: BRule,
    /// Models of the positive rule `H ← B+`.
    pos_models: Bits,
    /// Classical models of the rule.
    models: Bits,
}

struct Engine {
    u: Universe,
    sem: Semantics,
    words: usize,
    sides: [Part; 2],
    rules: Vec<CRule>,
}

fn bits_where(n_masks: usize, words: usize, f: impl Fn(Mask) -> bool) -> Bits {
    let mut b = vec![0u64; words];
    for z in 0..n_masks as Mask {
        if f(z) {
            b[(z / 64) as usize] |= 1 << (z % 64);
        }
    }
    b
}

fn sub_bits(words: usize, m: Mask, f: impl Fn(Mask) -> bool) -> Bits {
    let mut b = vec![0u64; words];
    for z in submasks(m) {
        if f(z) {
            b[(z / 64) as usize] |= 1 << (z % 64);
        }
    }
    b
}

impl Engine {
    fn new(p: &Program, q: &Program, spec: &ProblemSpec, bounds: &ContextBounds) -> Result<Engine> {
        let u = Universe::new(p.atoms().into_iter().chain(q.atoms()).chain(bounds.universe.iter().cloned()));
        if u.len() > MAX_ORACLE_ATOMS {
            return Err(Error::UniverseTooLarge {
                size: u.len(),
                limit: MAX_ORACLE_ATOMS,
            });
        }
        let n_masks = 1usize << u.len();
        let words = n_masks.div_ceil(64);
        let sem = spec.semantics;
        let part = |prog: &Program| {
            let bp = u.compile(prog);
            let mut reduct_sub = Vec::new();
            let mut model_sub = Vec::new();
            for m in 0..n_masks as Mask {
                if sem.is_stable() {
                    let r = bp.reduct(m);
                    reduct_sub.push(sub_bits(words, m, |z| r.satisfied_by(z)));
                }
                if sem == Semantics::Suppmin {
                    model_sub.push(sub_bits(words, m, |z| bp.satisfied_by(z)));
                }
            }
            Part {
                bp,
                reduct_sub,
                model_sub,
            }
        };
        let sides = [part(p), part(q)];
        let rules = candidate_rules(&u, spec, bounds)
            .into_iter()
            .map(|r| CRule {
                r,
                pos_models: bits_where(n_masks, words, |z| !subset(r.pos, z) || r.head & z != 0),
                models: bits_where(n_masks, words, |z| !r.body_sat(z) || r.head & z != 0),
            })
            .collect();
        Ok(Engine {
            u,
            sem,
            words,
            sides,
            rules,
        })
    }

    fn program(&self, ctx: &[u32]) -> Program {
        ctx.iter().map(|&i| rule_of(&self.u, &self.rules[i as usize].r)).collect()
    }

    fn differs(&self, ctx: &[u32]) -> bool {
        let rules: Vec<&CRule> = ctx.iter().map(|&i| &self.rules[i as usize]).collect();
        (0..1 << self.u.len()).any(|m| self.accepts(&self.sides[0], &rules, m) != self.accepts(&self.sides[1], &rules, m))
    }

    /// Whether `m` is a model of `side ∪ rules` under the semantics.
    fn accepts(&self, side: &Part, rules: &[&CRule], m: Mask) -> bool {
        match self.sem {
            Semantics::Supp => supported(side, rules, m),
            Semantics::Suppmin => {
                supported(side, rules, m) && self.only_m(&side.model_sub[m as usize], rules.iter().map(|r| &r.models), m)
            }
            Semantics::Stable | Semantics::StableNormal => {
                side.bp.satisfied_by(m)
                    && rules.iter().all(|r| !r.r.body_sat(m) || r.r.head & m != 0)
                    && self.only_m(
                        &side.reduct_sub[m as usize],
                        rules.iter().filter(|r| r.r.neg & m == 0).map(|r| &r.pos_models),
                        m,
                    )
            }
        }
    }

    /// `base ∩ ⋂ extra = {m}`, given that `base` only holds subsets of `m`.
    fn only_m<'b>(&self, base: &Bits, extra: impl Iterator<Item = &'b Bits> + Clone, m: Mask) -> bool {
        if !bit_get(base, m) || !extra.clone().all(|b| bit_get(b, m)) {
            return false;
        }
        let mw = (m / 64) as usize;
        (0..self.words).all(|w| {
            let v = extra.clone().fold(base[w], |acc, b| acc & b[w]);
            v == if w == mw { 1 << (m % 64) } else { 0 }
        })
    }
}

fn supported(side: &Part, rules: &[&CRule], m: Mask) -> bool {
    let mut needed = 0;
    for r in side.bp.rules.iter().chain(rules.iter().map(|c| &c.r)) {
        if r.body_sat(m) {
            let hit = r.head & m;
            if hit == 0 {
                return false;
            }
            if hit.count_ones() == 1 {
                needed |= hit;
            }
        }
    }
    needed == m
}

fn rule_of(u: &Universe, r: &BRule) -> Rule {
    let atoms = |m: Mask| ones(m).map(|i| u.atoms()[i].clone()).collect::<Vec<_>>();
    Rule::new(atoms(r.head), atoms(r.pos), atoms(r.neg))
}

/// Canonical candidate rules, sorted by printed form.
fn candidate_rules(u: &Universe, spec: &ProblemSpec, bounds: &ContextBounds) -> Vec<BRule> {
    let within = u.mask(bounds.universe.iter());
    let h = spec.heads().mask(u) & within;
    let b = spec.bodies().mask(u) & within;
    let mut out = Vec::new();
    if bounds.facts_only {
        out.extend(ones(h).map(|i| BRule {
            head: 1 << i,
            pos: 0,
            neg: 0,
        }));
    } else {
        for head in submasks(h).filter(|m| m.count_ones() as usize <= bounds.max_head) {
            for pos in submasks(b).filter(|m| m.count_ones() as usize <= bounds.max_body) {
                if spec.semantics.is_stable() && head & pos != 0 {
                    continue;
                }
                let room = bounds.max_body - pos.count_ones() as usize;
                for neg in submasks(b & !pos).filter(|m| m.count_ones() as usize <= room) {
                    if head == 0 && pos == 0 && neg == 0 {
                        continue;
                    }
                    out.push(BRule { head, pos, neg });
                }
            }
        }
    }
    let mut keyed: Vec<(String, BRule)> = out.into_iter().map(|r| (rule_of(u, &r).to_string(), r)).collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    keyed.into_iter().map(|(_, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabets::AlphabetSpec;
    use crate::decide::{decide, DecideOptions};
    use crate::parse::parse_program;
    use crate::program::atoms;

    fn p(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    const EX_P: &str = "a :- c, not b.\nb :- d, not a.";
    const EX_Q: &str = "a :- c, d, not b.\nb :- c, d, not a.\na :- c, not d.\nb :- d, not c.";

    fn example_spec() -> ProblemSpec {
        ProblemSpec::new(
            Semantics::Stable,
            "complement:a,b".parse().unwrap(),
            AlphabetSpec::all(),
        )
    }

    #[test]
    fn example_one_context() {
        let (pp, qq) = (p(EX_P), p(EX_Q));
        let bounds = ContextBounds::new(atoms(["a", "b", "c", "d"]), 2, 2, 2);
        let rep = oracle_equiv(&pp, &qq, &example_spec(), &bounds).unwrap();
        let r = rep.context.unwrap();
        assert!(r.len() <= 2);
        assert!(bounds.admits(&example_spec(), &r));
        assert!(distinguishes(&pp, &qq, &r, Semantics::Stable));
        assert!(distinguishes(&pp, &qq, &p("c. d :- a."), Semantics::Stable));
    }

    #[test]
    fn identical_programs_agree() {
        let pp = p(EX_P);
        let bounds = ContextBounds::new(atoms(["a", "b", "c", "d"]), 1, 1, 1);
        for sem in [Semantics::Supp, Semantics::Suppmin, Semantics::Stable] {
            let spec = ProblemSpec::new(sem, AlphabetSpec::all(), AlphabetSpec::all());
            assert!(oracle_equiv(&pp, &pp, &spec, &bounds).unwrap().bounded_equivalent);
        }
    }

    #[test]
    fn witness_contexts() {
        let (pp, qq) = (p(EX_P), p(EX_Q));
        let spec = example_spec();
        let v = decide(&pp, &qq, &spec, &DecideOptions::default()).unwrap();
        let bounds = ContextBounds::new(atoms(["a", "b", "c", "d"]), 2, 2, 2);
        let r = witness_to_context(&pp, &qq, v.witness.as_ref(), &spec, &bounds).unwrap();
        assert!(distinguishes(&pp, &qq, &r, Semantics::Stable));
        assert_eq!(witness_to_context(&pp, &pp, None, &spec, &bounds), Err(Error::NoWitness));

        let cnf = p("y :- not y'. y' :- not y. :- y, y'. :- y'.");
        let f = p("f. :- f.");
        let spec = ProblemSpec::new(Semantics::Supp, "complement:z".parse().unwrap(), AlphabetSpec::all());
        let v = decide(&cnf, &f, &spec, &DecideOptions::default()).unwrap();
        let r = witness_to_context(&cnf, &f, v.witness.as_ref(), &spec, &ContextBounds::facts(BTreeSet::new())).unwrap();
        assert!(r.rules().iter().all(|rule| rule.body_atoms().next().is_none()));
        assert!(distinguishes(&cnf, &f, &r, Semantics::Supp));
    }

    #[test]
    fn self_loops_are_kept_only_for_supported_semantics() {
        let u = Universe::new(atoms(["a"]));
        let bounds = ContextBounds::new(atoms(["a"]), 1, 1, 1);
        let printed = |sem| -> Vec<String> {
            let spec = ProblemSpec::new(sem, AlphabetSpec::all(), AlphabetSpec::all());
            candidate_rules(&u, &spec, &bounds).iter().map(|r| rule_of(&u, r).to_string()).collect()
        };
        assert_eq!(printed(Semantics::Supp), [":- a.", ":- not a.", "a :- a.", "a :- not a.", "a."]);
        assert_eq!(printed(Semantics::Stable), [":- a.", ":- not a.", "a :- not a.", "a."]);
        let spec = ProblemSpec::new(Semantics::Supp, AlphabetSpec::all(), AlphabetSpec::all());
        let rep = oracle_equiv(&p("b."), &p("b. a :- a."), &spec, &bounds).unwrap();
        assert_eq!(rep.context, Some(Program::empty()));
    }

    #[test]
    fn parallel_matches_sequential() {
        let (pp, qq) = (p(EX_P), p(EX_Q));
        let bounds = ContextBounds::new(atoms(["a", "b", "c", "d"]), 2, 2, 2);
        let seq = oracle_equiv_jobs(&pp, &qq, &example_spec(), &bounds, 1).unwrap();
        let par = oracle_equiv_jobs(&pp, &qq, &example_spec(), &bounds, 3).unwrap();
        assert_eq!(seq.context, par.context);
    }
}
