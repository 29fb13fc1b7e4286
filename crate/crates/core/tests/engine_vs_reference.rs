mod common;

use std::collections::BTreeSet;

use common::*;
use hyperequiv::{
    decide, in_se_ab, in_se_ab_normal, mod_ab_pairs, mod_a_members, se_ab_pairs, verify_witness, AlphabetSpec,
    DecideOptions, Interpretation, ProblemSpec, SearchUniverse, Semantics,
};

fn interp(s: &Set) -> Interpretation {
    Interpretation::from_names(s.iter().map(|a| a.name()))
}

fn as_set(i: &Interpretation) -> Set {
    i.atoms().clone()
}

#[test]
fn mod_sets_match_reference() {
    let mut rng = rng(11);
    let atoms = pool(&["a", "b", "c"]);
    let bases = pool(&["a", "b", "c", "d"]);
    for _ in 0..150 {
        let p = random_program(&mut rng, &atoms, 4, 1, 2);
        let a = random_alphabet(&mut rng, &bases, 2);
        let b = random_alphabet(&mut rng, &bases, 2);
        let u: Set = atoms.iter().chain(&a.base).chain(&b.base).cloned().collect();

        let got: BTreeSet<Set> = mod_a_members(&p, &a, &u).unwrap().iter().map(as_set).collect();
        let want: BTreeSet<Set> = subsets(&u).into_iter().filter(|y| in_mod_a(&p, y, &a)).collect();
        assert_eq!(got, want, "Mod_A mismatch for\n{p}A'={a}");

        let got: BTreeSet<(Set, Set)> = mod_ab_pairs(&p, &a, &b, &u)
            .unwrap()
            .iter()
            .map(|c| (as_set(&c.x), as_set(&c.y)))
            .collect();
        let want: BTreeSet<(Set, Set)> = subsets(&u)
            .into_iter()
            .flat_map(|y| subsets(&y).into_iter().map(move |x| (x, y.clone())))
            .filter(|(x, y)| in_mod_ab(&p, x, y, &a, &b))
            .collect();
        assert_eq!(got, want, "Mod_A^B mismatch for\n{p}A'={a} B'={b}");
    }
}

#[test]
fn se_sets_match_reference() {
    let mut rng = rng(12);
    let atoms = pool(&["a", "b", "c"]);
    let bases = pool(&["a", "b", "c", "d"]);
    for _ in 0..150 {
        let p = random_program(&mut rng, &atoms, 4, 2, 2);
        let a = random_alphabet(&mut rng, &bases, 2);
        let b = random_alphabet(&mut rng, &bases, 2);
        let u: Set = atoms.iter().chain(&a.base).chain(&b.base).cloned().collect();
        let su = SearchUniverse {
            atoms: u.clone(),
            padding: BTreeSet::new(),
        };
        let got: BTreeSet<(Set, Set)> = se_ab_pairs(&p, &a, &b, &su, 0)
            .iter()
            .map(|c| (as_set(&c.x), as_set(&c.y)))
            .collect();
        let want: BTreeSet<(Set, Set)> = subsets(&u)
            .into_iter()
            .flat_map(|y| subsets(&y).into_iter().map(move |x| (x, y.clone())))
            .filter(|(x, y)| in_se(&p, x, y, &a, &b))
            .collect();
        assert_eq!(got, want, "SE mismatch for\n{p}A'={a} B'={b}");
        for (x, y) in &got {
            assert!(x.is_subset(y));
            assert!(y.iter().all(|v| p.atoms().contains(v) || a.contains(v)), "member outside At(P) ∪ A'");
        }
    }
}

#[test]
fn horn_path_matches_general_test() {
    let mut rng = rng(13);
    let atoms = pool(&["a", "b", "c"]);
    let bases = pool(&["a", "b", "c", "d"]);
    for _ in 0..300 {
        let p = random_program(&mut rng, &atoms, 4, 1, 3);
        let a = random_alphabet(&mut rng, &bases, 2);
        let b = random_alphabet(&mut rng, &bases, 2);
        let u = set(&["a", "b", "c", "d"]);
        for y in subsets(&u) {
            for x in subsets(&y) {
                let g = in_se_ab(&p, &interp(&x), &interp(&y), &a, &b);
                let h = in_se_ab_normal(&p, &interp(&x), &interp(&y), &a, &b).unwrap();
                assert_eq!(g.is_member(), h.is_member(), "{p}X={x:?} Y={y:?}");
                assert_eq!(g.is_member(), in_se(&p, &x, &y, &a, &b));
            }
        }
    }
}

fn random_spec(rng: &mut rand_chacha::ChaCha8Rng, sem: Semantics) -> ProblemSpec {
    let bases = pool(&["a", "b", "c", "d"]);
    ProblemSpec::new(sem, random_alphabet(rng, &bases, 2), random_alphabet(rng, &bases, 2))
}

fn decide_vs_reference(sem: Semantics, seed: u64, n: usize, max_head: usize) {
    let mut rng = rng(seed);
    let atoms = pool(&["a", "b", "c"]);
    let mut disagreements = Vec::new();
    let mut inequivalent = 0;
    for _ in 0..n {
        let p = random_program(&mut rng, &atoms, 3, max_head, 2);
        let q = if rand::Rng::gen_bool(&mut rng, 0.3) {
            p.with_rule(random_rule(&mut rng, &atoms, max_head, 2))
        } else {
            random_program(&mut rng, &atoms, 3, max_head, 2)
        };
        let spec = random_spec(&mut rng, sem);
        let v = decide(&p, &q, &spec, &DecideOptions::default()).unwrap();
        let u = reference_universe(&p, &q, &spec, 2);
        let want = reference_equivalent(&p, &q, &spec, &u);
        if v.equivalent != want {
            disagreements.push(format!("{p}---\n{q}spec={}", serde_json::to_string(&spec).unwrap()));
        }
        if let Some(w) = &v.witness {
            inequivalent += 1;
            assert!(verify_witness(&p, &q, &spec, w).unwrap(), "witness does not re-verify");
        }
    }
    assert!(disagreements.is_empty(), "{} disagreements, first:\n{}", disagreements.len(), disagreements[0]);
    assert!(inequivalent > 0 && inequivalent < n, "degenerate sample: {inequivalent}/{n}");
}

#[test]
fn supp_decider_matches_reference() {
    decide_vs_reference(Semantics::Supp, 21, 300, 1);
}

#[test]
fn suppmin_decider_matches_reference() {
    decide_vs_reference(Semantics::Suppmin, 22, 200, 1);
}

#[test]
fn stable_decider_matches_reference() {
    decide_vs_reference(Semantics::Stable, 23, 200, 2);
}

#[test]
fn stable_normal_decider_matches_reference() {
    decide_vs_reference(Semantics::StableNormal, 24, 200, 1);
}

/// Complement head alphabets with three stand-in atoms instead of two.
#[test]
fn stable_padding_bound_holds_with_more_fresh_atoms() {
    let mut rng = rng(25);
    let atoms = pool(&["a", "b"]);
    for _ in 0..40 {
        let p = random_program(&mut rng, &atoms, 3, 2, 2);
        let q = random_program(&mut rng, &atoms, 3, 2, 2);
        let bodies = random_alphabet(&mut rng, &pool(&["a", "c"]), 1);
        let spec = ProblemSpec::new(Semantics::Stable, AlphabetSpec::complement([]), bodies);
        let v = decide(&p, &q, &spec, &DecideOptions::default()).unwrap();
        let u = reference_universe(&p, &q, &spec, 3);
        assert_eq!(v.equivalent, reference_equivalent(&p, &q, &spec, &u), "{p}---\n{q}");
    }
}

#[test]
fn verdicts_do_not_depend_on_jobs() {
    let mut rng = rng(26);
    let atoms = pool(&["a", "b", "c"]);
    for sem in [Semantics::Supp, Semantics::Suppmin, Semantics::Stable] {
        for _ in 0..30 {
            let p = random_program(&mut rng, &atoms, 3, 2, 2);
            let q = random_program(&mut rng, &atoms, 3, 2, 2);
            let spec = random_spec(&mut rng, sem);
            let run = |jobs| {
                let v = decide(&p, &q, &spec, &DecideOptions { jobs, ..Default::default() }).unwrap();
                (v.equivalent, v.witness)
            };
            let base = run(1);
            assert_eq!(base, run(2));
            assert_eq!(base, run(0));
        }
    }
}
