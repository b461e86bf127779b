//! Random data generators for property tests, the acceptance suite and
//! benchmarks. All generators are driven by a caller-supplied RNG so runs are
//! reproducible from a seed.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bzclass::{Atom, ClassData, Form, InertialLabel, LabelKind, LabelRegistry, Segment};
use crate::qexact::{gauss, rat, ExactScalar, Half, LocalFieldContext};
use crate::weildeligne::{WDBlock, WDRep};

/// A registry with `count` symbolic labels of degree 1–3 and the trivial
/// character `1`. Labels come in self-dual singletons and dual pairs; torsion
/// divides the degree.
pub fn symbolic_registry(ctx: LocalFieldContext, count: usize) -> LabelRegistry {
    let mut entries = vec![trivial_label()];
    let mut i = 0;
    while i < count {
        let degree = (i % 3) as u32 + 1;
        let torsion = if degree == 2 && i % 2 == 0 { 2 } else { 1 };
        let conductor = degree + (i % 2) as u32;
        let paired = i % 4 == 3 && i + 1 < count;
        let name = format!("tau{i}");
        let dual = if paired { format!("tau{}", i + 1) } else { name.clone() };
        entries.push(symbolic(&name, &dual, degree, torsion, conductor));
        if paired {
            entries.push(symbolic(&dual, &name, degree, torsion, conductor));
            i += 1;
        }
        i += 1;
    }
    LabelRegistry::new(ctx, entries).expect("generated registry is valid")
}

fn trivial_label() -> InertialLabel {
    InertialLabel {
        name: "1".into(),
        kind: LabelKind::UnramifiedChar,
        degree: 1,
        torsion: 1,
        conductor: 0,
        dual: "1".into(),
        omega: ExactScalar::one(),
        unit_class: "1".into(),
        products: BTreeMap::new(),
    }
}

fn symbolic(name: &str, dual: &str, degree: u32, torsion: u32, conductor: u32) -> InertialLabel {
    InertialLabel {
        name: name.into(),
        kind: LabelKind::Symbolic,
        degree,
        torsion,
        conductor,
        dual: dual.into(),
        omega: ExactScalar::one(),
        // dual labels share a unit class name up to inversion: `u` and `u^-1`
        unit_class: if name <= dual { format!("u[{name}]") } else { format!("u[{dual}]^-1") },
        products: BTreeMap::new(),
    }
}

/// A nonzero value `c q^(k/2)` from a small pool including unitary and
/// non-unitary coefficients.
pub fn unram_value<R: Rng>(rng: &mut R) -> ExactScalar {
    let pool = [(1, 1, 0, 1), (-1, 1, 0, 1), (0, 1, 1, 1), (2, 1, 0, 1), (1, 2, 0, 1), (3, 5, 4, 5), (1, 1, 1, 1)];
    let (a, b, c, d) = *pool.choose(rng).unwrap();
    ExactScalar::new(gauss(rat(a, b), rat(c, d)), rng.gen_range(-3..=3))
}

/// A unitary unramified value `c q^(k/2)` with `|c| = 1` and `k = 0`.
pub fn unitary_value<R: Rng>(rng: &mut R) -> ExactScalar {
    let pool = [(1, 1, 0, 1), (-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, -1, 1), (3, 5, 4, 5)];
    let (a, b, c, d) = *pool.choose(rng).unwrap();
    ExactScalar::new(gauss(rat(a, b), rat(c, d)), 0)
}

pub fn half<R: Rng>(rng: &mut R, max_abs_twice: i64) -> Half {
    Half::from_twice(rng.gen_range(-max_abs_twice..=max_abs_twice))
}

/// A supercuspidal atom of degree at most `max_degree`; `unram_only`
/// restricts to unramified characters.
pub fn atom<R: Rng>(rng: &mut R, reg: &LabelRegistry, max_degree: u32, unram_only: bool) -> Atom {
    let symbolic: Vec<&InertialLabel> =
        reg.declared().filter(|l| l.kind == LabelKind::Symbolic && l.degree <= max_degree).collect();
    if unram_only || symbolic.is_empty() || rng.gen_bool(0.5) {
        let value = if rng.gen_bool(0.5) { ExactScalar::q_half_power(rng.gen_range(-3..=3)) } else { unram_value(rng) };
        reg.unramified_atom(&value).expect("nonzero value")
    } else {
        let l = symbolic.choose(rng).unwrap();
        Atom::new(l.name.clone(), half(rng, 4))
    }
}

/// Q-form class data with `1..=max_segs` segments and total degree at most
/// `max_degree`. With `reuse` most segments share a base atom, which makes
/// linked configurations and poles common.
pub fn class_q<R: Rng>(
    rng: &mut R,
    reg: &LabelRegistry,
    max_segs: usize,
    max_degree: u32,
    unram_only: bool,
) -> ClassData {
    let nsegs = rng.gen_range(1..=max_segs);
    let mut segs: Vec<Segment> = Vec::new();
    let mut budget = max_degree;
    let anchor = atom(rng, reg, max_degree, unram_only);
    for _ in 0..nsegs {
        let a =
            if rng.gen_bool(0.6) { anchor.twist(half(rng, 2).scale(2)) } else { atom(rng, reg, budget, unram_only) };
        let deg = reg.degree(&a).unwrap();
        if deg > budget {
            continue;
        }
        let m = rng.gen_range(1..=(budget / deg).min(4));
        budget -= deg * m;
        segs.push(Segment::new(a, m).unwrap());
        if budget == 0 {
            break;
        }
    }
    if segs.is_empty() {
        segs.push(Segment::singleton(reg.trivial_atom()));
    }
    ClassData::new(Form::Q, segs).unwrap()
}

/// Weil–Deligne representation with `1..=max_blocks` blocks of length at
/// most `max_m`.
pub fn wd_rep<R: Rng>(rng: &mut R, reg: &LabelRegistry, max_blocks: usize, max_m: u32, unram_only: bool) -> WDRep {
    let n = rng.gen_range(1..=max_blocks);
    let blocks = (0..n).map(|_| WDBlock { atom: atom(rng, reg, 3, unram_only), m: rng.gen_range(1..=max_m) }).collect();
    WDRep::new(blocks).unwrap()
}
