//! Base semantics: models, the one-step provability operator, reducts,
//! shifting, and model enumeration.
//!
//! Enumerations run over subsets of `At(P)` (or `H(P)`), so they are only
//! meant for small programs. They panic above 63 atoms.

use crate::bits::{proper_submasks, submasks, Mask, Universe};
use crate::error::{Error, Result};
use crate::program::{size_lex_cmp, Interpretation, Program, Rule};

pub fn satisfies(m: &Interpretation, p: &Program) -> bool {
    p.rules().iter().all(|r| r.satisfied_by(m))
}

/// One-step provability. `Ok(None)` means undefined: some constraint body
/// holds in `m`.
pub fn tp(p: &Program, m: &Interpretation) -> Result<Option<Interpretation>> {
    p.require_normal()?;
    let mut out = Interpretation::new();
    for r in p.rules() {
        if r.body_satisfied_by(m) {
            match r.head().iter().next() {
                Some(h) => {
                    out.insert(h.clone());
                }
                None => return Ok(None),
            }
        }
    }
    Ok(Some(out))
}

pub fn reduct(p: &Program, m: &Interpretation) -> Program {
    p.rules()
        .iter()
        .filter(|r| !r.neg_body().iter().any(|a| m.contains(a)))
        .map(|r| Rule::new(r.head().iter().cloned(), r.pos_body().iter().cloned(), []))
        .collect()
}

pub fn shift(p: &Program) -> Program {
    p.rules()
        .iter()
        .flat_map(|r| {
            if r.is_normal() {
                vec![r.clone()]
            } else {
                r.head()
                    .iter()
                    .map(|h| {
                        let others = r.head().iter().filter(|o| *o != h).cloned();
                        Rule::new(
                            [h.clone()],
                            r.pos_body().iter().cloned(),
                            r.neg_body().iter().cloned().chain(others),
                        )
                    })
                    .collect()
            }
        })
        .collect()
}

pub fn is_minimal_model(p: &Program, m: &Interpretation) -> bool {
    let u = Universe::new(p.atoms().into_iter().chain(m.iter().cloned()));
    u.compile(p).is_minimal_model(u.mask_of(m))
}

fn sorted(u: &Universe, masks: impl Iterator<Item = Mask>) -> Vec<Interpretation> {
    let mut out: Vec<Interpretation> = masks.map(|m| u.interp(m)).collect();
    out.sort_by(size_lex_cmp);
    out
}

/// Stable models in (size, lexicographic) order.
pub fn stable_models(p: &Program) -> Vec<Interpretation> {
    let u = Universe::new(p.atoms());
    let bp = u.compile(p);
    let normal = bp.is_normal();
    sorted(
        &u,
        (0..=u.full()).filter(|&m| {
            let r = bp.reduct(m);
            if normal {
                r.least_model(0) == Some(m)
            } else {
                r.satisfied_by(m) && !proper_submasks(m).any(|z| r.satisfied_by(z))
            }
        }),
    )
}

/// Supported models in (size, lexicographic) order.
pub fn supported_models(p: &Program) -> Vec<Interpretation> {
    let u = Universe::new(p.atoms());
    let bp = u.compile(p);
    let heads = u.mask(p.head_atoms().iter());
    sorted(
        &u,
        submasks(heads).filter(|&m| bp.is_supported(m)),
    )
}

/// Supported models that are also minimal models, in (size, lexicographic)
/// order.
pub fn suppmin_models(p: &Program) -> Vec<Interpretation> {
    let u = Universe::new(p.atoms());
    let bp = u.compile(p);
    supported_models(p)
        .into_iter()
        .filter(|m| bp.is_minimal_model(u.mask_of(m)))
        .collect()
}

/// Least model of a Horn program, `Ok(None)` if a constraint is violated.
pub fn horn_least_model(p: &Program) -> Result<Option<Interpretation>> {
    if !p.is_horn() {
        return Err(Error::NotHorn);
    }
    let u = Universe::new(p.atoms());
    let bp = u.compile(p);
    Ok(bp.reduct(0).least_model(0).map(|m| u.interp(m)))
}

/// Classical models over `At(P)`, in (size, lexicographic) order.
pub fn models(p: &Program) -> Vec<Interpretation> {
    let u = Universe::new(p.atoms());
    let bp = u.compile(p);
    sorted(&u, (0..=u.full()).filter(|&m| bp.satisfied_by(m)))
}

/// Minimal models over `At(P)`, in (size, lexicographic) order.
pub fn minimal_models(p: &Program) -> Vec<Interpretation> {
    let u = Universe::new(p.atoms());
    let bp = u.compile(p);
    sorted(&u, (0..=u.full()).filter(|&m| bp.is_minimal_model(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn p(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    fn i(names: &[&str]) -> Interpretation {
        Interpretation::from_names(names.iter().copied())
    }

    const EX_P: &str = "a :- c, not b.\nb :- d, not a.";
    const EX_Q: &str = "a :- c, d, not b.\nb :- c, d, not a.\na :- c, not d.\nb :- d, not c.";
    const CHOICE: &str = "a :- not b.\nb :- not a.";

    #[test]
    fn satisfaction() {
        let prog = p(EX_P).union(&p("c. d :- a."));
        assert!(satisfies(&i(&["a", "c", "d"]), &prog));
        assert!(satisfies(&i(&[]), &Program::empty()));
        assert!(!satisfies(&i(&["y", "y'"]), &p(":- y, y'. a.")));
    }

    #[test]
    fn one_step_provability() {
        assert_eq!(tp(&p(EX_P), &i(&["a", "c", "d"])).unwrap(), Some(i(&["a"])));
        assert_eq!(tp(&Program::empty(), &i(&["q"])).unwrap(), Some(i(&[])));
        assert_eq!(tp(&p(":- f."), &i(&["f"])).unwrap(), None);
        assert!(matches!(tp(&p("a | b."), &i(&[])), Err(Error::NotNormal { head_size: 2 })));
    }

    #[test]
    fn reducts() {
        assert!(reduct(&p(EX_P), &i(&["a", "c", "d"])).same_rules(&p("a :- c.")));
        let pos = p("a :- b. c | d.");
        assert_eq!(reduct(&pos, &i(&["a"])), pos);
        assert!(reduct(&p("x :- not x."), &i(&["x"])).is_empty());
    }

    #[test]
    fn shifting() {
        assert!(shift(&p("a | b :- c.")).same_rules(&p("a :- c, not b. b :- c, not a.")));
        assert_eq!(shift(&p(EX_P)), p(EX_P));
        assert_eq!(shift(&p("a | b. a | b :- c.")).len(), 4);
        assert!(shift(&p("a | b | c.")).same_rules(&p("a :- not b, not c. b :- not a, not c. c :- not a, not b.")));
    }

    #[test]
    fn minimality() {
        assert!(is_minimal_model(&p("a | b."), &i(&["a"])));
        assert!(!is_minimal_model(&p("a | b."), &i(&["a", "b"])));
        assert!(is_minimal_model(&Program::empty(), &i(&[])));
        assert!(is_minimal_model(&p("a. b :- a."), &i(&["a", "b"])));
    }

    #[test]
    fn stable() {
        assert_eq!(stable_models(&p(EX_P).union(&p("c."))), vec![i(&["a", "c"])]);
        assert_eq!(
            stable_models(&p(EX_P).union(&p("c :- not d. d :- a, not c."))),
            vec![i(&["a", "c"])]
        );
        assert!(stable_models(&p(EX_Q).union(&p("c. d :- a."))).is_empty());
        assert!(stable_models(&p("f. :- f.")).is_empty());
        assert_eq!(stable_models(&p("a | b.")), vec![i(&["a"]), i(&["b"])]);
        assert_eq!(stable_models(&Program::empty()), vec![i(&[])]);
    }

    #[test]
    fn supported() {
        assert_eq!(supported_models(&p(CHOICE)), vec![i(&["a"]), i(&["b"])]);
        assert_eq!(supported_models(&Program::empty()), vec![i(&[])]);
        assert_eq!(supported_models(&p("a | b.")), vec![i(&["a"]), i(&["b"])]);
        assert_eq!(supported_models(&p("a :- a.")), vec![i(&[]), i(&["a"])]);
        assert!(supported_models(&p("f. :- f.")).is_empty());
    }

    #[test]
    fn supported_minimal() {
        assert_eq!(suppmin_models(&p("a :- a.")), vec![i(&[])]);
        assert_eq!(suppmin_models(&Program::empty()), vec![i(&[])]);
        assert_eq!(suppmin_models(&p(CHOICE)), vec![i(&["a"]), i(&["b"])]);
    }

    #[test]
    fn horn() {
        assert_eq!(horn_least_model(&p("a. b :- a.")).unwrap(), Some(i(&["a", "b"])));
        assert_eq!(horn_least_model(&p("a. :- a.")).unwrap(), None);
        assert_eq!(horn_least_model(&Program::empty()).unwrap(), Some(i(&[])));
        assert_eq!(horn_least_model(&p("a :- not b.")), Err(Error::NotHorn));
        assert_eq!(horn_least_model(&p("a | b.")), Err(Error::NotHorn));
    }
}
