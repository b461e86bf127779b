use super::*;
use crate::bzclass::{InertialLabel, Segment};
use crate::qexact::{gauss, gauss_int, rat, Gauss, LocalFieldContext};
use crate::sample;
use crate::weildeligne::{clebsch_gordan, direct_sum, sp_block, UnramMatrixRep};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn ctx(p: u64, d: i64, n_psi: i64) -> LocalFieldContext {
    LocalFieldContext::new(p, 1, d, n_psi).unwrap()
}

fn label(name: &str, kind: LabelKind, degree: u32, torsion: u32, conductor: u32, dual: &str) -> InertialLabel {
    InertialLabel {
        name: name.into(),
        kind,
        degree,
        torsion,
        conductor,
        dual: dual.into(),
        omega: ExactScalar::one(),
        unit_class: name.into(),
        products: BTreeMap::new(),
    }
}

fn registry(c: LocalFieldContext) -> LabelRegistry {
    LabelRegistry::new(
        c,
        vec![
            label("1", LabelKind::UnramifiedChar, 1, 1, 0, "1"),
            label("eta", LabelKind::RamifiedChar, 1, 1, 2, "eta"),
            label("tau", LabelKind::Symbolic, 2, 1, 3, "tau"),
            label("tau2", LabelKind::Symbolic, 2, 2, 2, "tau2"),
            label("tau4", LabelKind::Symbolic, 4, 4, 4, "tau4"),
            label("sigma", LabelKind::Symbolic, 2, 1, 3, "sigmad"),
            label("sigmad", LabelKind::Symbolic, 2, 1, 3, "sigma"),
        ],
    )
    .unwrap()
}

fn triv(x2: i64) -> Atom {
    Atom::new("1", Half::from_twice(x2))
}

fn sp(a: Atom, m: u32) -> WDRep {
    WDRep::single(sp_block(a, m).unwrap())
}

fn st(n: u32) -> WDRep {
    sp(triv(1 - n as i64), n)
}

fn lf(pairs: &[(i64, u32)]) -> LFactor {
    let mut l = LFactor::one();
    for &(k, t) in pairs {
        l.push(ExactScalar::q_half_power(k), t).unwrap();
    }
    l
}

#[test]
fn tate_examples() {
    let r = registry(ctx(3, 0, 0));
    let (l, e) = tate_char(&triv(0), &r).unwrap();
    assert!(l.same_as(&lf(&[(0, 1)]), r.ctx()));
    assert!(e.eval(Half::ZERO).unwrap().equals_one(r.ctx()));
    // |.| has value q^-1 at a uniformizer
    let (l, _) = tate_char(&triv(2), &r).unwrap();
    assert!(l.same_as(&lf(&[(-2, 1)]), r.ctx()));
    let (l, e) = tate_char(&Atom::new("eta", Half::ZERO), &r).unwrap();
    assert!(l.is_one());
    assert_eq!(e.s_slope, Half::int(2));
    assert_eq!(e.units.get("g(eta)"), Some(&1));
    assert!(tate_char(&Atom::new("tau", Half::ZERO), &r).is_err());
}

/// `prod_{zeta^t = 1} (1 - zeta a T)` expanded as a polynomial in `T`, for
/// the roots of unity available in `Q(i)`.
fn chi_set_polynomial(a: &BigRat, t: u32) -> Vec<Gauss> {
    let roots: Vec<Gauss> = match t {
        1 => vec![gauss_int(1, 0)],
        2 => vec![gauss_int(1, 0), gauss_int(-1, 0)],
        4 => vec![gauss_int(1, 0), gauss_int(-1, 0), gauss_int(0, 1), gauss_int(0, -1)],
        _ => unreachable!(),
    };
    let mut poly = vec![Gauss::one()];
    for z in roots {
        let root_term = -(z * gauss(a.clone(), rat(0, 1)));
        let mut next = vec![Gauss::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] = &next[i] + c;
            next[i + 1] = &next[i + 1] + c * &root_term;
        }
        poly = next;
    }
    poly
}

type BigRat = num_rational::BigRational;

#[test]
fn pair_l_matches_chi_set_enumeration() {
    let r = registry(ctx(3, 0, 0));
    for name in ["tau", "tau2", "tau4"] {
        let t = r.label(name).unwrap().torsion;
        for x in -2..=2 {
            for x2 in -2..=2 {
                let a = Atom::new(name, Half::int(x));
                let b = Atom::new(name, Half::int(x2));
                let l = pair_l_supercuspidal(&a, &b, &r).unwrap();
                assert_eq!(l.factors.len(), 1);
                // chi-set: q^-(x+x') times the t-torsion characters
                let a0 = r.ctx().q_pow(-(x + x2));
                let poly = chi_set_polynomial(&a0, t);
                let f = &l.factors[0];
                assert_eq!(f.t, t);
                for (i, c) in poly.iter().enumerate() {
                    if i == 0 {
                        assert!(c.is_one());
                    } else if i == t as usize {
                        assert_eq!(f.a.k % 2, 0);
                        let value = f.a.c.scale(r.ctx().q_pow(f.a.k / 2));
                        assert_eq!(-c.clone(), value);
                    } else {
                        assert!(c.is_zero(), "coefficient {i} for {name}");
                    }
                }
            }
        }
    }
}

#[test]
fn pair_l_examples() {
    let r = registry(ctx(5, 0, 0));
    let tau = Atom::new("tau", Half::ZERO);
    assert!(pair_l_supercuspidal(&tau, &tau, &r).unwrap().same_as(&lf(&[(0, 1)]), r.ctx()));
    assert!(pair_l_supercuspidal(&tau, &triv(0), &r).unwrap().is_one());
    assert!(pair_l_supercuspidal(&triv(0), &triv(0), &r).unwrap().same_as(&lf(&[(0, 1)]), r.ctx()));
    let sigma = Atom::new("sigma", Half::ZERO);
    assert!(pair_l_supercuspidal(&sigma, &sigma, &r).unwrap().is_one());
    assert!(!pair_l_supercuspidal(&sigma, &Atom::new("sigmad", Half::int(1)), &r).unwrap().is_one());
}

#[test]
fn wd_l_examples() {
    let r = registry(ctx(3, 0, 0));
    for m in 1..7u32 {
        let l = wd_l_factor(&sp(triv(0), m), &r).unwrap();
        assert!(l.same_as(&lf(&[(2 * (1 - m as i64), 1)]), r.ctx()));
    }
    assert!(wd_l_factor(&sp(Atom::new("tau", Half::ZERO), 2), &r).unwrap().is_one());
    // alpha = q^-1/2 on the last basis vector of Sp(2): q^-1/2 q^-1 ... taken at e_1
    let l = wd_l_factor(&st(2), &r).unwrap();
    assert!(l.same_as(&lf(&[(-1, 1)]), r.ctx()));
    let m = UnramMatrixRep::from_wd(&st(2), &r).unwrap().matrix_l().unwrap();
    assert!(l.same_as(&m, r.ctx()));
}

#[test]
fn wd_l_matches_matrix_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [2, 3, 5] {
        let r = registry(ctx(p, 0, 0));
        for _ in 0..60 {
            let rho = sample::wd_rep(&mut rng, &r, 3, 4, true);
            if rho.dimension(&r).unwrap() > 8 {
                continue;
            }
            let mat = UnramMatrixRep::from_wd(&rho, &r).unwrap();
            assert!(mat.satisfies_wd_relation());
            assert!(wd_l_factor(&rho, &r).unwrap().same_as(&mat.matrix_l().unwrap(), r.ctx()), "{rho}");
        }
    }
}

#[test]
fn pair_l_examples_wd() {
    let r = registry(ctx(3, 0, 0));
    let s2 = sp(triv(0), 2);
    assert!(wd_pair_l(&s2, &s2, &r).unwrap().same_as(&lf(&[(-2, 1), (-4, 1)]), r.ctx()));
    let st2 = st(2);
    let st2d = wd_dual(&st2, &r).unwrap();
    assert!(wd_pair_l(&st2, &st2d, &r).unwrap().same_as(&lf(&[(0, 1), (-2, 1)]), r.ctx()));
    let tau = sp(Atom::new("tau", Half::ZERO), 1);
    let sigma = sp(Atom::new("sigma", Half::ZERO), 1);
    assert!(wd_pair_l(&tau, &sigma, &r).unwrap().is_one());
}

#[test]
fn clebsch_gordan_matches_kronecker_oracle() {
    let r = registry(ctx(3, 0, 0));
    for m1 in 1..=4 {
        for m2 in 1..=4 {
            let a = UnramMatrixRep::from_wd(&sp(triv(0), m1), &r).unwrap();
            let b = UnramMatrixRep::from_wd(&sp(triv(0), m2), &r).unwrap();
            let k = a.tensor(&b);
            assert!(k.satisfies_wd_relation());
            let structural = wd_pair_l(&sp(triv(0), m1), &sp(triv(0), m2), &r).unwrap();
            assert!(structural.same_as(&k.matrix_l().unwrap(), r.ctx()), "{m1} x {m2}");
            let cg: Vec<WDBlock> =
                clebsch_gordan(m1, m2).into_iter().map(|(j, m)| sp_block(triv(2 * j as i64), m).unwrap()).collect();
            let cg_rep = WDRep::new(cg).unwrap();
            assert!(wd_l_factor(&cg_rep, &r).unwrap().same_as(&k.matrix_l().unwrap(), r.ctx()));
            assert!(wd_eps(&cg_rep, &r)
                .unwrap()
                .eval(Half::ZERO)
                .unwrap()
                .same_as(&per_char_eps_times_det(&k, &r), r.ctx()));
        }
    }
}

fn per_char_eps_times_det(m: &UnramMatrixRep, r: &LabelRegistry) -> ExactScalar {
    let mut v = m.matrix_eps_det().unwrap();
    for alpha in m.frobenius_eigenvalues().unwrap() {
        v = v.mul(&unramified_eps(&alpha, r).unwrap().eval(Half::ZERO).unwrap());
    }
    v
}

#[test]
fn gl_inductive_examples() {
    let r = registry(ctx(3, 0, 0));
    let st2 = ClassData::q(vec![Segment::new(triv(-1), 2).unwrap()]).unwrap();
    let l = gl_pair_l_inductive(&st2, &st2, &r).unwrap();
    assert!(l.same_as(&lf(&[(0, 1), (-2, 1)]), r.ctx()));
    let a = Atom::new("tau", Half::int(1));
    let s1 = ClassData::q(vec![Segment::singleton(a.clone())]).unwrap();
    let s2 = ClassData::q(vec![Segment::singleton(Atom::new("tau", Half::ZERO))]).unwrap();
    assert!(gl_pair_l_inductive(&s1, &s2, &r)
        .unwrap()
        .same_as(&pair_l_supercuspidal(&a, &Atom::new("tau", Half::ZERO), &r).unwrap(), r.ctx()));
}

fn rec(c: &ClassData) -> WDRep {
    WDRep::new(c.segments().iter().map(|s| sp_block(s.start.clone(), s.m).unwrap()).collect()).unwrap()
}

#[test]
fn gl_inductive_is_symmetric_and_matches_wd() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = sample::symbolic_registry(ctx(3, 0, 0), 6);
    for _ in 0..200 {
        let c1 = sample::class_q(&mut rng, &r, 3, 6, false);
        let c2 = sample::class_q(&mut rng, &r, 3, 6, false);
        let l12 = gl_pair_l_inductive(&c1, &c2, &r).unwrap();
        let l21 = gl_pair_l_inductive(&c2, &c1, &r).unwrap();
        assert!(l12.same_as(&l21, r.ctx()));
        assert!(l12.same_as(&wd_pair_l(&rec(&c1), &rec(&c2), &r).unwrap(), r.ctx()), "{c1} x {c2}");
    }
}

#[test]
fn sp_epsilon_closed_form() {
    for p in [2u64, 3, 5] {
        for d in 0..=2 {
            let r = registry(ctx(p, d, 0));
            for m in 1..=6i64 {
                let e = wd_eps(&sp(triv(0), m as u32), &r).unwrap();
                let sign = if (m - 1) % 2 == 0 { ExactScalar::one() } else { ExactScalar::one().neg() };
                let expect = sign.mul(&ExactScalar::q_half_power(-(m * d + (m - 2) * (m - 1))));
                assert!(e.eval(Half::ZERO).unwrap().same_as(&expect, r.ctx()), "p={p} d={d} m={m}");
                assert_eq!(e.s_slope, Half::ZERO);
            }
        }
    }
    let r = registry(ctx(3, 0, 0));
    let e = wd_eps(&sp(triv(0), 3), &r).unwrap();
    assert!(e.eval(Half::ZERO).unwrap().same_as(&ExactScalar::q_half_power(-2), r.ctx()));
}

#[test]
fn symbolic_eps_slope() {
    let r = registry(ctx(3, 0, 2));
    for m in 1..4u32 {
        let e = wd_eps(&sp(Atom::new("tau", Half::ZERO), m), &r).unwrap();
        assert_eq!(e.s_slope, Half::int(m as i64 * (3 + 2 * 2)));
        assert_eq!(e.units.get("g(tau)"), Some(&(m as i64)));
    }
}

#[test]
fn eps_is_additive_and_matches_matrix_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (p, d, n_psi) in [(2, 0, 0), (3, 1, 2), (5, 2, -1)] {
        let r = registry(ctx(p, d, n_psi));
        for _ in 0..40 {
            let a = sample::wd_rep(&mut rng, &r, 2, 3, true);
            let b = sample::wd_rep(&mut rng, &r, 2, 3, true);
            let sum = direct_sum(&a, &b);
            let lhs = wd_eps(&sum, &r).unwrap();
            let rhs = wd_eps(&a, &r).unwrap().mul(&wd_eps(&b, &r).unwrap());
            assert!(lhs.same_as(&rhs, r.ctx()));
            assert!(wd_l_factor(&sum, &r)
                .unwrap()
                .same_as(&wd_l_factor(&a, &r).unwrap().mul(&wd_l_factor(&b, &r).unwrap()), r.ctx()));
            let mat = UnramMatrixRep::from_wd(&sum, &r).unwrap();
            let normalized = eps_normalize(&lhs, &r).unwrap();
            assert!(normalized.mono.same_as(&per_char_eps_times_det(&mat, &r), r.ctx()));
        }
    }
}

#[test]
fn normalize_examples() {
    let r = registry(ctx(3, 0, 0));
    let mono = EpsValue::monomial(ExactScalar::q_half_power(3), Half::int(1));
    assert!(eps_normalize(&mono, &r).unwrap().same_as(&mono, r.ctx()));
    let mut e = EpsValue::one();
    e.num = lf(&[(0, 1)]);
    e.den = lf(&[(0, 1)]);
    assert!(eps_normalize(&e, &r).unwrap().same_as(&EpsValue::one(), r.ctx()));
    e.den = lf(&[(2, 1)]);
    assert_eq!(eps_normalize(&e, &r).unwrap_err(), Error::NotMonomial);
}

#[test]
fn conductor_examples() {
    let r = registry(ctx(3, 0, 1));
    let chi = sp(triv(0), 1);
    assert_eq!(conductor(&chi, &r, ConductorMode::Artin).unwrap(), Half::ZERO);
    assert_eq!(conductor(&chi, &r, ConductorMode::EpsDegree).unwrap(), Half::ZERO);
    for m in 1..6u32 {
        let s = sp(triv(0), m);
        assert_eq!(conductor(&s, &r, ConductorMode::Artin).unwrap(), Half::int(m as i64 - 1));
        assert_eq!(conductor(&s, &r, ConductorMode::EpsDegree).unwrap(), Half::ZERO);
    }
    let tau = sp(Atom::new("tau", Half::int(2)), 1);
    assert_eq!(conductor(&tau, &r, ConductorMode::Artin).unwrap(), Half::int(3));
    assert_eq!(conductor(&tau, &r, ConductorMode::EpsDegree).unwrap(), Half::int(3));
}

#[test]
fn conductor_additive_and_modes_agree_on_irreducible_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let r = sample::symbolic_registry(ctx(2, 1, 1), 5);
    for _ in 0..100 {
        let a = sample::wd_rep(&mut rng, &r, 3, 3, false);
        let b = sample::wd_rep(&mut rng, &r, 3, 3, false);
        for mode in [ConductorMode::Artin, ConductorMode::EpsDegree] {
            let s = conductor(&direct_sum(&a, &b), &r, mode).unwrap();
            assert_eq!(s, conductor(&a, &r, mode).unwrap() + conductor(&b, &r, mode).unwrap());
        }
        let irr = sample::wd_rep(&mut rng, &r, 3, 1, false);
        assert_eq!(
            conductor(&irr, &r, ConductorMode::Artin).unwrap(),
            conductor(&irr, &r, ConductorMode::EpsDegree).unwrap()
        );
    }
}

#[test]
fn adjoint_examples() {
    let r = registry(ctx(3, 0, 0));
    assert!(adjoint_no_pole_at_one(&st(2), &r).unwrap());
    let pair = WDRep::new(vec![sp_block(triv(0), 1).unwrap(), sp_block(triv(2), 1).unwrap()]).unwrap();
    assert!(!adjoint_no_pole_at_one(&pair, &r).unwrap());
    assert!(adjoint_no_pole_at_one(&sp(Atom::new("tau", Half::int(3)), 1), &r).unwrap());
}

#[test]
fn epsilon_of_pi_times_dual_at_one_half() {
    // n = 1 unramified, self-dual measure (d = n(psi)): eps(chi chi^-1, 1/2) = 1
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n_psi in 0..4 {
        let r = registry(ctx(3, n_psi, n_psi));
        for _ in 0..10 {
            let chi = r.unramified_atom(&sample::unram_value(&mut rng)).unwrap();
            let rho = sp(chi.clone(), 1);
            let prod = wd_tensor(&rho, &wd_dual(&rho, &r).unwrap(), &r).unwrap();
            let v = wd_eps(&prod, &r).unwrap().eval(Half::from_twice(1)).unwrap();
            assert!(v.equals_one(r.ctx()), "{chi}");
        }
    }
}

#[test]
fn wd_tensor_matches_pair_l() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let r = sample::symbolic_registry(ctx(3, 0, 0), 4);
    for _ in 0..50 {
        let a = sample::wd_rep(&mut rng, &r, 2, 3, false);
        // unramified twists by powers of |.| act on every label
        let b = WDRep::new(
            (0..rng.gen_range(1..=2))
                .map(|_| sp_block(triv(rng.gen_range(-3..=3)), rng.gen_range(1..=3)).unwrap())
                .collect(),
        )
        .unwrap();
        let t = wd_tensor(&a, &b, &r).unwrap();
        let trivial = sp(r.trivial_atom(), 1);
        assert!(wd_pair_l(&t, &trivial, &r).unwrap().same_as(&wd_pair_l(&a, &b, &r).unwrap(), r.ctx()));
        assert!(wd_l_factor(&t, &r).unwrap().same_as(&wd_pair_l(&a, &b, &r).unwrap(), r.ctx()));
    }
}

#[test]
fn printed_eps_relation_is_off_by_t_on_unramified_data() {
    let r = registry(ctx(3, 0, 0));
    let seg = |x2: i64, m: u32| ClassData::q(vec![Segment::new(triv(x2), m).unwrap()]).unwrap();
    // (pair, number of L-quotients in the printed product = expected extra T power)
    for (c1, c2, extra) in
        [(seg(-1, 2), seg(0, 1), 1), (seg(-1, 2), seg(-1, 2), 2), (seg(-2, 3), seg(0, 1), 2), (seg(2, 1), seg(0, 1), 0)]
    {
        let printed = eps_normalize(&gl_pair_eps_printed(&c1, &c2, &r).unwrap(), &r).unwrap();
        let wd = wd_eps(&wd_tensor(&rec(&c1), &rec(&c2), &r).unwrap(), &r).unwrap();
        assert!(printed.mono.same_as(&wd.mono, r.ctx()), "{c1} x {c2}");
        assert_eq!(printed.s_slope - wd.s_slope, Half::int(extra), "{c1} x {c2}");
    }
}
