//! Exact scalars `c * q^(k/2)` with Gaussian-rational `c`, and the algebra of
//! local L-factors `prod (1 - a T^t)^-1` with `T = q^-s`.
//!
//! The prime power `q` is concrete and lives in a [`LocalFieldContext`]. A
//! scalar on its own is not canonical (`(1/3) * q^(2/2)` and `1` agree when
//! `q = 3`); every comparison goes through the context.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Gaussian rationals, the coefficient field of every scalar.
pub type Gauss = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn gauss(re: BigRational, im: BigRational) -> Gauss {
    Complex::new(re, im)
}

pub fn gauss_int(re: i64, im: i64) -> Gauss {
    Complex::new(rat(re, 1), rat(im, 1))
}

/// p-adic valuation of a nonzero rational.
pub fn rat_valuation(x: &BigRational, p: u64) -> i64 {
    assert!(!x.is_zero(), "valuation of zero");
    int_valuation(x.numer(), p) - int_valuation(x.denom(), p)
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Minimum of the p-adic valuations of the real and imaginary parts.
fn gauss_valuation(c: &Gauss, p: u64) -> i64 {
    [&c.re, &c.im].into_iter().filter(|x| !x.is_zero()).map(|x| rat_valuation(x, p)).min().expect("valuation of zero")
}

fn render_rat(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Renders a Gaussian rational as `a`, `bi`, `a+bi`, `a-bi` (with `i`, `-i`
/// for unit imaginary parts).
pub fn render_gauss(c: &Gauss) -> String {
    let im_str = |im: &BigRational| -> String {
        if im.is_one() {
            "i".to_string()
        } else if (-im).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", render_rat(im))
        }
    };
    match (c.re.is_zero(), c.im.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => render_rat(&c.re),
        (true, false) => im_str(&c.im),
        (false, false) => {
            let im = im_str(&c.im);
            if im.starts_with('-') {
                format!("{}{}", render_rat(&c.re), im)
            } else {
                format!("{}+{}", render_rat(&c.re), im)
            }
        }
    }
}

/// Parses the output of [`render_gauss`].
pub fn parse_gauss(s: &str) -> Option<Gauss> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some(body) = s.strip_suffix('i') {
        // Split off a real part at the last sign that is not leading.
        let split =
            body.char_indices().filter(|&(i, ch)| i > 0 && (ch == '+' || ch == '-')).map(|(i, _)| i).next_back();
        let (re, im) = match split {
            Some(i) => (Some(&body[..i]), &body[i..]),
            None => (None, body),
        };
        let im = im.strip_prefix('+').unwrap_or(im);
        let im = match im {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rat(other)?,
        };
        let re = match re {
            Some(r) => parse_rat(r)?,
            None => BigRational::zero(),
        };
        Some(gauss(re, im))
    } else {
        Some(gauss(parse_rat(s)?, BigRational::zero()))
    }
}

fn parse_rat(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// A half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);

    pub fn from_twice(twice: i64) -> Half {
        Half(twice)
    }

    pub fn int(n: i64) -> Half {
        Half(2 * n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn to_rational(self) -> BigRational {
        rat(self.0, 2)
    }

    pub fn scale(self, n: i64) -> Half {
        Half(self.0 * n)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Numerical data of the base field: residue cardinality `q = p^f`, the
/// valuation `d` of the absolute different and the exponent `n(psi)` of the
/// additive character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFieldContext {
    p: u64,
    f: u32,
    q: BigInt,
    d: i64,
    n_psi: i64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl LocalFieldContext {
    pub fn new(p: u64, f: u32, d: i64, n_psi: i64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidContext(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidContext("f must be positive".into()));
        }
        if d < 0 {
            return Err(Error::InvalidContext("d must be non-negative".into()));
        }
        let q = num_traits::pow(BigInt::from(p), f as usize);
        Ok(LocalFieldContext { p, f, q, d, n_psi })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn n_psi(&self) -> i64 {
        self.n_psi
    }

    /// `q^n` as a rational, for any integer `n`.
    pub fn q_pow(&self, n: i64) -> BigRational {
        let m = num_traits::pow(self.q.clone(), n.unsigned_abs() as usize);
        if n >= 0 {
            BigRational::from_integer(m)
        } else {
            BigRational::new(BigInt::one(), m)
        }
    }

    fn p_pow(&self, n: i64) -> BigRational {
        let m = num_traits::pow(BigInt::from(self.p), n.unsigned_abs() as usize);
        if n >= 0 {
            BigRational::from_integer(m)
        } else {
            BigRational::new(BigInt::one(), m)
        }
    }
}

/// `c * q^(k/2)`.
#[derive(Debug, Clone, Hash)]
pub struct ExactScalar {
    pub c: Gauss,
    pub k: i64,
}

impl ExactScalar {
    pub fn new(c: Gauss, k: i64) -> Self {
        ExactScalar { c, k }
    }

    pub fn one() -> Self {
        ExactScalar::new(gauss_int(1, 0), 0)
    }

    pub fn zero() -> Self {
        ExactScalar::new(gauss_int(0, 0), 0)
    }

    /// `q^(k/2)`.
    pub fn q_half_power(k: i64) -> Self {
        ExactScalar::new(gauss_int(1, 0), k)
    }

    /// `q^(-x)`, the value of `|.|^x` at a uniformizer.
    pub fn abs_char_value(x: Half) -> Self {
        ExactScalar::q_half_power(-x.twice())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn mul(&self, o: &ExactScalar) -> ExactScalar {
        ExactScalar::new(&self.c * &o.c, self.k + o.k)
    }

    pub fn inv(&self) -> Result<ExactScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar::new(self.c.inv(), -self.k))
    }

    pub fn div(&self, o: &ExactScalar) -> Result<ExactScalar> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<ExactScalar> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut c = gauss_int(1, 0);
        for _ in 0..n.unsigned_abs() {
            c = &c * &base.c;
        }
        Ok(ExactScalar::new(c, base.k * n.abs()))
    }

    pub fn neg(&self) -> ExactScalar {
        ExactScalar::new(-self.c.clone(), self.k)
    }

    /// `|x|^2` as a positive monomial.
    pub fn norm_sq(&self) -> PosQMonomial {
        PosQMonomial { a: self.c.norm_sqr(), k: 2 * self.k }
    }

    /// True iff the scalar denotes 1 for the concrete `q`.
    pub fn equals_one(&self, ctx: &LocalFieldContext) -> bool {
        if !self.c.im.is_zero() || !self.c.re.is_positive() {
            return false;
        }
        &self.c.re * &self.c.re == ctx.q_pow(-self.k)
    }

    pub fn same_as(&self, o: &ExactScalar, ctx: &LocalFieldContext) -> bool {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => true,
            (false, false) => self.div(o).map(|r| r.equals_one(ctx)).unwrap_or(false),
            _ => false,
        }
    }

    /// Canonical representative. Write `u = q^(1/2) = p^(f/2)` when `f` is
    /// even and `u = q` when `f` is odd; the canonical form has the
    /// p-valuation of `c` in `[0, v_p(u))`. Two scalars are equal iff their
    /// canonical forms are field-wise equal, and two canonical `c` agree iff
    /// the scalars differ by a power of `q^(1/2)`.
    pub fn canonical(&self, ctx: &LocalFieldContext) -> ExactScalar {
        if self.is_zero() {
            return ExactScalar::zero();
        }
        let f = ctx.f() as i64;
        let (step_val, k_step) = if f % 2 == 0 { (f / 2, 1) } else { (f, 2) };
        let j = Integer::div_floor(&gauss_valuation(&self.c, ctx.p()), &step_val);
        let c = self.c.unscale(ctx.p_pow(j * step_val));
        ExactScalar::new(c, self.k + k_step * j)
    }

    /// The `c * q^(k/2)` text form, with `c` in lowest terms after
    /// canonicalisation, compacted (`q^-2`, `-q^(1/2)`, `(2+i) * q^-1`).
    pub fn render(&self, ctx: &LocalFieldContext) -> String {
        let s = self.canonical(ctx);
        let exp = match s.k {
            0 => None,
            k if k % 2 == 0 => Some(format!("q^{}", k / 2)),
            k => Some(format!("q^({k}/2)")),
        };
        let c = render_gauss(&s.c);
        match exp {
            None => c,
            Some(e) => match c.as_str() {
                "1" => e,
                "-1" => format!("-{e}"),
                _ if c.contains(['+', 'i', '/']) || c[1..].contains('-') => format!("({c}) * {e}"),
                _ => format!("{c} * {e}"),
            },
        }
    }
}

/// `a * q^(k/2)` with `a > 0` rational; used for squared absolute values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosQMonomial {
    pub a: BigRational,
    pub k: i64,
}

impl PosQMonomial {
    pub fn new(a: BigRational, k: i64) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::Invalid("monomial coefficient must be positive".into()));
        }
        Ok(PosQMonomial { a, k })
    }

    pub fn one() -> Self {
        PosQMonomial { a: BigRational::one(), k: 0 }
    }

    /// Exact comparison of `a1 q^(k1/2)` and `a2 q^(k2/2)`, done by squaring
    /// and clearing the q-exponent into the rationals.
    pub fn compare(&self, o: &PosQMonomial, ctx: &LocalFieldContext) -> Ordering {
        let lhs = &self.a * &self.a * ctx.q_pow(self.k - o.k);
        let rhs = &o.a * &o.a;
        lhs.cmp(&rhs)
    }

    pub fn is_one(&self, ctx: &LocalFieldContext) -> bool {
        self.compare(&PosQMonomial::one(), ctx) == Ordering::Equal
    }
}

/// One inverse factor `(1 - a T^t)^-1`.
#[derive(Debug, Clone)]
pub struct InverseFactor {
    pub a: ExactScalar,
    pub t: u32,
}

/// `prod (1 - a T^t)^-1` with `T = q^-s`; the empty product is 1.
#[derive(Debug, Clone, Default)]
pub struct LFactor {
    pub factors: Vec<InverseFactor>,
}

impl LFactor {
    pub fn one() -> Self {
        LFactor::default()
    }

    pub fn single(a: ExactScalar, t: u32) -> Result<Self> {
        let mut l = LFactor::one();
        l.push(a, t)?;
        Ok(l)
    }

    pub fn push(&mut self, a: ExactScalar, t: u32) -> Result<()> {
        if a.is_zero() {
            return Err(Error::Invalid("inverse factor with zero coefficient".into()));
        }
        if t == 0 {
            return Err(Error::Invalid("inverse factor with t = 0".into()));
        }
        self.factors.push(InverseFactor { a, t });
        Ok(())
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.t).sum()
    }

    /// Multiset union of the inverse factors.
    pub fn mul(&self, o: &LFactor) -> LFactor {
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().cloned());
        LFactor { factors }
    }

    /// `L(s + y)`: every coefficient picks up `q^(-t y)`.
    pub fn shift(&self, y: Half) -> LFactor {
        LFactor {
            factors: self
                .factors
                .iter()
                .map(|f| InverseFactor { a: f.a.mul(&ExactScalar::q_half_power(-(f.t as i64) * y.twice())), t: f.t })
                .collect(),
        }
    }

    /// Order of the pole at the half-integer `s0`.
    pub fn pole_order(&self, s0: Half, ctx: &LocalFieldContext) -> usize {
        self.factors
            .iter()
            .filter(|f| f.a.mul(&ExactScalar::q_half_power(-(f.t as i64) * s0.twice())).equals_one(ctx))
            .count()
    }

    pub fn pole_at(&self, s0: Half, ctx: &LocalFieldContext) -> (bool, usize) {
        let order = self.pole_order(s0, ctx);
        (order > 0, order)
    }

    /// Factors with canonical coefficients, sorted by `(t, rendering)`.
    pub fn canonical(&self, ctx: &LocalFieldContext) -> Vec<(u32, ExactScalar)> {
        let mut out: Vec<(u32, String, ExactScalar)> = self
            .factors
            .iter()
            .map(|f| {
                let a = f.a.canonical(ctx);
                (f.t, a.render(ctx), a)
            })
            .collect();
        out.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
        out.into_iter().map(|(t, _, a)| (t, a)).collect()
    }

    /// Multiset equality of inverse factors under the concrete `q`.
    pub fn same_as(&self, o: &LFactor, ctx: &LocalFieldContext) -> bool {
        if self.factors.len() != o.factors.len() {
            return false;
        }
        let mut used = vec![false; o.factors.len()];
        'outer: for f in &self.factors {
            for (j, g) in o.factors.iter().enumerate() {
                if !used[j] && f.t == g.t && f.a.same_as(&g.a, ctx) {
                    used[j] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// Removes one matching factor; used when cancelling numerator against
    /// denominator.
    pub(crate) fn take_matching(&mut self, f: &InverseFactor, ctx: &LocalFieldContext) -> bool {
        match self.factors.iter().position(|g| g.t == f.t && g.a.same_as(&f.a, ctx)) {
            Some(i) => {
                self.factors.remove(i);
                true
            }
            None => false,
        }
    }

    /// Sorted product of `(1 - a T^t)^-1`, or `1`.
    pub fn render(&self, ctx: &LocalFieldContext) -> String {
        let parts: Vec<String> = self
            .canonical(ctx)
            .into_iter()
            .map(|(t, a)| {
                let tpow = if t == 1 { "T".to_string() } else { format!("T^{t}") };
                let a_str = a.render(ctx);
                let term = if a_str == "1" {
                    tpow
                } else if a_str.starts_with('-') && !a_str.contains(' ') {
                    format!("({a_str}) {tpow}")
                } else {
                    format!("{a_str} {tpow}")
                };
                format!("(1 - {term})^-1")
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Converts a small rational to `(num, den)` machine integers.
pub fn rat_to_pair(x: &BigRational) -> Result<(i64, i64)> {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Invalid(format!("rational {x} out of range"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(p: u64, f: u32) -> LocalFieldContext {
        LocalFieldContext::new(p, f, 0, 0).unwrap()
    }

    fn sc(re: (i64, i64), im: (i64, i64), k: i64) -> ExactScalar {
        ExactScalar::new(gauss(rat(re.0, re.1), rat(im.0, im.1)), k)
    }

    #[test]
    fn scalar_arith_examples() {
        let c = ctx(3, 1);
        let q = ExactScalar::q_half_power(2);
        let q_inv = ExactScalar::q_half_power(-2);
        let prod = q.mul(&q_inv);
        assert_eq!(prod.k, 0);
        assert!(prod.c.is_one());

        let i = sc((0, 1), (1, 1), 0);
        let sq = i.pow(2).unwrap();
        assert_eq!(sq.c, gauss_int(-1, 0));
        assert_eq!(sq.k, 0);

        let x = sc((1, 2), (0, 1), 1);
        let r = x.div(&x).unwrap();
        assert!(r.c.is_one() && r.k == 0);
        assert!(r.equals_one(&c));

        assert_eq!(x.div(&ExactScalar::zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn equals_one_examples() {
        assert!(sc((1, 3), (0, 1), 2).equals_one(&ctx(3, 1)));
        assert!(!sc((1, 1), (0, 1), 1).equals_one(&ctx(3, 1)));
        assert!(!sc((0, 1), (1, 1), 0).equals_one(&ctx(5, 1)));
        assert!(!sc((-1, 3), (0, 1), 2).equals_one(&ctx(3, 1)));
    }

    #[test]
    fn norm_compare_examples() {
        let c3 = ctx(3, 1);
        let one = PosQMonomial::one();
        assert_eq!(one.compare(&one, &c3), Ordering::Equal);
        let a = PosQMonomial::new(rat(1, 1), 2).unwrap();
        let b = PosQMonomial::new(rat(2, 1), 0).unwrap();
        assert_eq!(a.compare(&b, &c3), Ordering::Greater);
        // q = 9: 3 against 9^(1/2); squaring oracle 3^2 = 9 = (9^(1/2))^2.
        let c9 = ctx(3, 2);
        let x = PosQMonomial::new(rat(3, 1), 0).unwrap();
        let y = PosQMonomial::new(rat(1, 1), 1).unwrap();
        assert_eq!(rat(3, 1) * rat(3, 1), rat(9, 1));
        assert_eq!(x.compare(&y, &c9), Ordering::Equal);
        assert!(PosQMonomial::new(rat(0, 1), 0).is_err());
    }

    #[test]
    fn lfactor_examples() {
        let c = ctx(3, 1);
        assert!(LFactor::one().mul(&LFactor::one()).is_one());
        let one = LFactor::single(ExactScalar::one(), 1).unwrap();
        assert_eq!(one.mul(&one).factors.len(), 2);
        // L(Sp(2)) L(Sp(3)): a = q^(1-m)
        let sp2 = LFactor::single(ExactScalar::q_half_power(-2), 1).unwrap();
        let sp3 = LFactor::single(ExactScalar::q_half_power(-4), 1).unwrap();
        let prod = sp2.mul(&sp3);
        assert_eq!(prod.render(&c), "(1 - q^-1 T)^-1 (1 - q^-2 T)^-1");

        assert_eq!(one.pole_at(Half::ZERO, &c), (true, 1));
        assert_eq!(one.pole_at(Half::int(1), &c), (false, 0));
        let lq = LFactor::single(ExactScalar::q_half_power(2), 1).unwrap();
        assert!(ExactScalar::q_half_power(2).mul(&ExactScalar::q_half_power(-2)).equals_one(&c));
        assert_eq!(lq.pole_at(Half::int(1), &c), (true, 1));
        assert!(LFactor::single(ExactScalar::zero(), 1).is_err());
        assert!(LFactor::single(ExactScalar::one(), 0).is_err());
    }

    #[test]
    fn canonical_forms() {
        let c3 = ctx(3, 1);
        let a = sc((1, 3), (0, 1), 2).canonical(&c3);
        assert!(a.c.is_one() && a.k == 0);
        // q = 9: 3 = q^(1/2)
        let c9 = ctx(3, 2);
        let x = sc((3, 1), (0, 1), 0).canonical(&c9);
        let y = sc((1, 1), (0, 1), 1).canonical(&c9);
        assert_eq!((x.c.clone(), x.k), (y.c.clone(), y.k));
        // q = 8: 1/2 = 4 * q^-1
        let c8 = ctx(2, 3);
        let h = sc((1, 2), (0, 1), 0).canonical(&c8);
        assert_eq!(h.c, gauss_int(4, 0));
        assert_eq!(h.k, -2);
        assert_eq!(sc((-1, 1), (0, 1), -1).render(&c3), "-q^(-1/2)");
        assert_eq!(sc((2, 1), (1, 1), -2).render(&ctx(5, 1)), "(2+i) * q^-1");
    }

    #[test]
    fn gauss_text_round_trip() {
        for (re, im) in [(0, 1), (0, -1), (3, 0), (-2, 5), (1, -1), (0, 0)] {
            let g = gauss_int(re, im);
            assert_eq!(parse_gauss(&render_gauss(&g)), Some(g));
        }
        let g = gauss(rat(-1, 2), rat(-3, 7));
        assert_eq!(parse_gauss(&render_gauss(&g)), Some(g));
        assert_eq!(parse_gauss("x"), None);
    }

    fn arb_scalar() -> impl Strategy<Value = ExactScalar> {
        (-6i64..7, 1i64..5, -6i64..7, 1i64..5, -6i64..7)
            .prop_filter("nonzero", |(a, _, b, _, _)| *a != 0 || *b != 0)
            .prop_map(|(a, b, c, d, k)| sc((a, b), (c, d), k))
    }

    fn arb_ctx() -> impl Strategy<Value = LocalFieldContext> {
        prop_oneof![Just(ctx(2, 1)), Just(ctx(3, 1)), Just(ctx(3, 2)), Just(ctx(5, 1)), Just(ctx(2, 3))]
    }

    proptest! {
        #[test]
        fn mul_group_laws(x in arb_scalar(), y in arb_scalar(), z in arb_scalar(), c in arb_ctx()) {
            prop_assert!(x.mul(&y).same_as(&y.mul(&x), &c));
            prop_assert!(x.mul(&y).mul(&z).same_as(&x.mul(&y.mul(&z)), &c));
            prop_assert!(x.mul(&ExactScalar::one()).same_as(&x, &c));
            prop_assert!(x.mul(&x.inv().unwrap()).equals_one(&c));
            prop_assert!(x.inv().unwrap().mul(&x).equals_one(&c));
        }

        #[test]
        fn equals_one_cancels(x in arb_scalar(), y in arb_scalar(), c in arb_ctx()) {
            let xy = x.mul(&y);
            if xy.equals_one(&c) && x.equals_one(&c) {
                prop_assert!(y.equals_one(&c));
            }
            // the canonical form is a valid representative and is idempotent
            let cx = x.canonical(&c);
            prop_assert!(cx.same_as(&x, &c));
            let ccx = cx.canonical(&c);
            prop_assert_eq!((cx.c, cx.k), (ccx.c, ccx.k));
        }

        #[test]
        fn canonical_decides_equality(x in arb_scalar(), j in -3i64..4, c in arb_ctx()) {
            // x * q^(j/2) written two ways
            let y = ExactScalar::new(x.c.clone(), x.k + j);
            let qj = if j % 2 == 0 || c.f() % 2 == 0 {
                // q^(j/2) is rational here
                let r = if j % 2 == 0 { c.q_pow(j / 2) } else {
                    let s = c.p_pow(c.f() as i64 / 2);
                    if j > 0 { num_traits::pow(s, j as usize) } else { num_traits::pow(s.recip(), (-j) as usize) }
                };
                Some(ExactScalar::new(x.c.scale(r), x.k))
            } else { None };
            if let Some(z) = qj {
                let a = y.canonical(&c);
                let b = z.canonical(&c);
                prop_assert_eq!((a.c, a.k), (b.c, b.k));
            }
        }

        #[test]
        fn norm_compare_total_order(a in 1i64..20, b in 1i64..20, ka in -4i64..5, kb in -4i64..5,
                                    e in 1i64..20, ke in -4i64..5, c in arb_ctx()) {
            let x = PosQMonomial::new(rat(a, 3), ka).unwrap();
            let y = PosQMonomial::new(rat(b, 2), kb).unwrap();
            let z = PosQMonomial::new(rat(e, 5), ke).unwrap();
            prop_assert_eq!(x.compare(&y, &c), y.compare(&x, &c).reverse());
            if x.compare(&y, &c) != Ordering::Greater && y.compare(&z, &c) != Ordering::Greater {
                prop_assert_ne!(x.compare(&z, &c), Ordering::Greater);
            }
        }

        #[test]
        fn pole_order_additive(xs in proptest::collection::vec((arb_scalar(), 1u32..3), 0..4),
                               ys in proptest::collection::vec((arb_scalar(), 1u32..3), 0..4),
                               s0 in -4i64..5, c in arb_ctx()) {
            let mk = |v: &Vec<(ExactScalar, u32)>| {
                let mut l = LFactor::one();
                for (a, t) in v { l.push(a.clone(), *t).unwrap(); }
                l
            };
            let (l1, l2) = (mk(&xs), mk(&ys));
            let s0 = Half::from_twice(s0);
            prop_assert_eq!(l1.mul(&l2).pole_order(s0, &c), l1.pole_order(s0, &c) + l2.pole_order(s0, &c));
        }
    }
}
