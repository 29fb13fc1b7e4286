use std::collections::BTreeSet;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperequiv::{decide, gen_stable_cd, gen_suppmin_cd, Atom, DecideOptions, LabeledInstance, Literal, Qbf2};

fn atom(n: &str) -> Atom {
    Atom::new(n).unwrap()
}

/// `∀y1 y2 ∃x1 x2 . (x1 | y1) & (-x1 | y2 | x2) & (-x2 | -y1)`, which is true,
/// so the deciders search the whole candidate space.
fn qbf() -> Qbf2 {
    let lit = |n: &str, pos: bool| Literal { atom: atom(n), positive: pos };
    Qbf2::new(
        vec![atom("y1"), atom("y2")],
        vec![atom("x1"), atom("x2")],
        vec![
            vec![lit("x1", true), lit("y1", true)],
            vec![lit("x1", false), lit("y2", true), lit("x2", true)],
            vec![lit("x2", false), lit("y1", false)],
        ],
    )
    .unwrap()
}

fn instances() -> Vec<(&'static str, LabeledInstance)> {
    let g: BTreeSet<Atom> = [atom("g")].into();
    let m: BTreeSet<Atom> = [atom("m"), atom("n")].into();
    vec![
        ("stable-cd", gen_stable_cd(&qbf(), &BTreeSet::new(), &m).unwrap()),
        ("suppmin-cd", gen_suppmin_cd(&qbf(), &g, &g).unwrap()),
    ]
}

fn bench_decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    for (name, inst) in instances() {
        for (mode, jobs) in [("sequential", 1), ("parallel", 0)] {
            let opts = DecideOptions {
                jobs,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, mode), &inst, |b, inst| {
                b.iter(|| decide(&inst.p, &inst.q, &inst.spec, &opts).unwrap().equivalent)
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_decide);
criterion_main!(benches);
