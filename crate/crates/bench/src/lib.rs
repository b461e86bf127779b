//! Fixtures shared by the benchmarks: seeded random inputs so every run
//! measures the same work.

use llc_core::sample;
use llc_core::{ClassData, CyclicAlgebra, CyclicElement, LabelRegistry, LocalFieldContext, UnramifiedContext};
use llc_core::{WittContext, WittVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A symbolic registry over `Q_3` with eight labels.
pub fn registry() -> LabelRegistry {
    sample::symbolic_registry(LocalFieldContext::new(3, 1, 0, 0).expect("valid field"), 8)
}

pub fn class_pairs(reg: &LabelRegistry, count: usize) -> Vec<(ClassData, ClassData)> {
    let mut r = rng(7);
    (0..count).map(|_| (sample::class_q(&mut r, reg, 3, 6, false), sample::class_q(&mut r, reg, 3, 6, false))).collect()
}

pub fn witt_pairs(ctx: &WittContext, count: usize) -> Vec<(WittVector, WittVector)> {
    let mut r = rng(11);
    (0..count).map(|_| (ctx.random(&mut r), ctx.random(&mut r))).collect()
}

/// `D_{r/s}` over `Q_p` at precision 6 and some random elements.
pub fn division_algebra(p: u64, r: i64, s: u32, count: usize) -> (CyclicAlgebra, Vec<CyclicElement>) {
    let ctx = UnramifiedContext::new(p, 1, s, 6).expect("valid context");
    let alg = CyclicAlgebra::new(ctx, r).expect("gcd(r, s) = 1");
    let mut g = rng(13);
    let elems = (0..count).map(|_| alg.random(&mut g, 2)).collect();
    (alg, elems)
}
