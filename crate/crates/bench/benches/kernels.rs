use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use polyrep::chartab::character_table;
use polyrep::constructions::{heisenberg_verify, HeisenbergOptions};
use polyrep::lattice::{build_lattice, orbits_mod, symrank};

fn e6_closure(c: &mut Criterion) {
    let l = build_lattice("E6", None).unwrap();
    c.bench_function("W(E6) closure", |b| b.iter(|| black_box(l.closure_order(60_000).unwrap())));
}

fn heisenberg_p3(c: &mut Criterion) {
    c.bench_function("heisenberg p=3 with table", |b| {
        b.iter(|| {
            let data = heisenberg_verify(3, HeisenbergOptions::default()).unwrap();
            black_box(character_table(&data.image).unwrap())
        })
    });
}

fn b7_orbits(c: &mut Criterion) {
    let l = build_lattice("B", Some(7)).unwrap();
    c.bench_function("B7 orbits mod 4", |b| b.iter(|| black_box(symrank(&orbits_mod(&l, 4).unwrap()).unwrap())));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = e6_closure, heisenberg_p3, b7_orbits
}
criterion_main!(benches);
