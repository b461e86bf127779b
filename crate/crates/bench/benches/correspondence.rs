use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use llc_bench::{class_pairs, division_algebra, registry, witt_pairs};
use llc_core::factors::{gl_pair_l_inductive, wd_eps, wd_pair_l};
use llc_core::langlands::{dictionary_report, rec_forward};
use llc_core::{CoeffRing, DieudonneModule, UnramifiedContext, WittContext};

fn pair_l(c: &mut Criterion) {
    let reg = registry();
    let pairs = class_pairs(&reg, 32);
    c.bench_function("pair L, inductive", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(gl_pair_l_inductive(x, y, &reg).unwrap());
            }
        })
    });
    let recs: Vec<_> = pairs.iter().map(|(x, y)| (rec_forward(x).unwrap(), rec_forward(y).unwrap())).collect();
    c.bench_function("pair L, Weil-Deligne", |b| {
        b.iter(|| {
            for (x, y) in &recs {
                black_box(wd_pair_l(x, y, &reg).unwrap());
            }
        })
    });
}

fn epsilon_and_dictionary(c: &mut Criterion) {
    let reg = registry();
    let pairs = class_pairs(&reg, 32);
    let recs: Vec<_> = pairs.iter().map(|(x, _)| rec_forward(x).unwrap()).collect();
    c.bench_function("epsilon", |b| {
        b.iter(|| {
            for rho in &recs {
                black_box(wd_eps(rho, &reg).unwrap());
            }
        })
    });
    c.bench_function("dictionary", |b| {
        b.iter(|| {
            for (x, _) in &pairs {
                black_box(dictionary_report(x, &reg).unwrap());
            }
        })
    });
}

fn witt(c: &mut Criterion) {
    let mut group = c.benchmark_group("witt mul");
    for (name, p, ring) in [("Q", 2, CoeffRing::Rationals), ("F9", 3, CoeffRing::finite_field(3, 2).unwrap())] {
        let ctx = WittContext::new(p, 4, ring).unwrap();
        let pairs = witt_pairs(&ctx, 16);
        group.bench_function(name, |b| {
            b.iter(|| {
                for (x, y) in &pairs {
                    black_box(ctx.mul(x, y).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn skewfield(c: &mut Criterion) {
    let (alg, elems) = division_algebra(3, 3, 4, 8);
    c.bench_function("reduced norm, D_3/4", |b| {
        b.iter(|| {
            for x in &elems {
                black_box(alg.reduced_norm_val(x).ok());
            }
        })
    });
    c.bench_function("product, D_3/4", |b| {
        b.iter(|| {
            for w in elems.windows(2) {
                black_box(alg.mul(&w[0], &w[1]));
            }
        })
    });
}

fn dieudonne(c: &mut Criterion) {
    let ctx = UnramifiedContext::new(2, 1, 1, 6).unwrap();
    let m = DieudonneModule::standard(5, 2, ctx).unwrap();
    c.bench_function("etale height, rank 5", |b| b.iter(|| black_box(m.etale_inf_height().unwrap())));
}

criterion_group!(benches, pair_l, epsilon_and_dictionary, witt, skewfield, dieudonne);
criterion_main!(benches);
