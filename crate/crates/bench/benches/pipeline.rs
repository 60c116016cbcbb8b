use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use conres_core::casebook::{self, RunOptions};
use conres_core::cohring::{self, presets};
use conres_core::hodgepoly::{self, MHPolynomial};
use conres_core::specseq::{self, Constraint, DifferentialFact, Status};

fn rings(c: &mut Criterion) {
    c.bench_function("build pair-n3", |b| {
        b.iter(|| presets::preset(black_box("pair-n3")).unwrap())
    });
    c.bench_function("chern_theta(6, 2)", |b| {
        b.iter(|| cohring::chern_theta(black_box(6), 2).unwrap())
    });
    c.bench_function("chern_xi_eta", |b| {
        b.iter(|| cohring::chern_xi_eta().unwrap())
    });
}

fn sequences(c: &mut Criterion) {
    let e1 = casebook::quartic_e1();
    let facts = casebook::quartic_facts();
    c.bench_function("run quartic E1", |b| {
        b.iter(|| specseq::run(black_box(&e1), &facts).unwrap())
    });

    let grid = casebook::quartic_grid();
    let unknown: Vec<_> = [(1, 2, 1), (1, 2, 3), (1, 3, 5)]
        .iter()
        .map(|&(r, p, q)| DifferentialFact::new(r, p, q, Status::Unknown))
        .collect();
    let vanish = [Constraint::ForbiddenTotalDegrees {
        degrees: (1..=7).collect(),
        p_range: None,
    }];
    c.bench_function("infer lastcolq", |b| {
        b.iter(|| {
            specseq::infer(
                black_box(&grid),
                &unknown,
                &vanish,
                specseq::DEFAULT_SEARCH_BOUND,
            )
            .unwrap()
        })
    });
}

fn cases(c: &mut Criterion) {
    let opts = RunOptions::default();
    for name in ["quartic-p2", "cubic-p2"] {
        let case = casebook::builtin(name).unwrap();
        c.bench_function(&format!("case {name}"), |b| {
            b.iter(|| casebook::run_case(black_box(&case), &opts))
        });
    }
    let p: MHPolynomial = hodgepoly::QUARTIC_P2.parse().unwrap();
    let m: MHPolynomial = hodgepoly::MODULI.parse().unwrap();
    c.bench_function("divide quartic by moduli", |b| {
        b.iter(|| hodgepoly::divide_exact(black_box(&p), &m).unwrap())
    });
}

criterion_group!(benches, rings, sequences, cases);
criterion_main!(benches);
