//! Truncated unramified extensions of `Q_p`.
//!
//! The ring of integers of the unramified extension of degree `f·s`, taken
//! modulo `p^N`, is the Galois ring `(Z/p^N)[θ]/(g)` where `g` is any monic
//! lift of the irreducible polynomial defining `F_{p^{fs}}`. It is isomorphic
//! to `W_N(F_{p^{fs}})`; [`UnramifiedContext::from_witt`] realises that
//! isomorphism so the two models can be checked against each other.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::wittring::{CoeffRing, Elem, FiniteField, WittContext, WittVector};

/// Coefficients `c_0 + c_1 θ + … + c_{r-1} θ^{r-1}`, each reduced mod `p^N`.
pub type Coeffs = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnramifiedContext {
    p: u64,
    f: u32,
    s: u32,
    n: u32,
    residue: FiniteField,
    /// Monic lift of the residue modulus, low degree first.
    modulus: Coeffs,
    pn: BigInt,
    sigma_theta: Coeffs,
    sigma_inv_theta: Coeffs,
}

impl UnramifiedContext {
    /// The ring of integers of `K_s` modulo `p^N`, where `K` is unramified of
    /// residue degree `f` over `Q_p` and `K_s / K` is unramified of degree `s`.
    pub fn new(p: u64, f: u32, s: u32, n: u32) -> Result<Self> {
        if f == 0 || s == 0 || n == 0 {
            return Err(Error::InvalidContext("f, s and the precision must be at least 1".into()));
        }
        let residue = FiniteField::new(p, f * s).map_err(|e| Error::InvalidContext(e.to_string()))?;
        let modulus: Coeffs = residue.modulus().iter().map(|&c| BigInt::from(c)).collect();
        let pn = BigInt::from(p).pow(n);
        let mut ctx = UnramifiedContext {
            p,
            f,
            s,
            n,
            residue,
            modulus,
            pn,
            sigma_theta: Vec::new(),
            sigma_inv_theta: Vec::new(),
        };
        let theta = ctx.theta();
        let approx = ctx.pow(&theta, &BigInt::from(p).pow(f));
        ctx.sigma_theta = ctx.hensel_root(&ctx.modulus.clone(), approx)?;
        let mut image = theta.clone();
        for j in 1..=s {
            image = ctx.compose(&image, &ctx.sigma_theta);
            if (j == s) != (image == theta) {
                return Err(Error::Invalid(format!("Frobenius lift does not have order {s}")));
            }
            if j + 1 == s {
                ctx.sigma_inv_theta = image.clone();
            }
        }
        if s == 1 {
            ctx.sigma_inv_theta = theta;
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// Degree of `K_s` over `K`, i.e. the order of `σ_K`.
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// Degree of the carrier over `Z/p^N`.
    pub fn degree(&self) -> usize {
        (self.f * self.s) as usize
    }

    pub fn residue_field(&self) -> &FiniteField {
        &self.residue
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// `σ_K(θ)`, the image of the generator under the Frobenius lift.
    pub fn sigma_generator(&self) -> &Coeffs {
        &self.sigma_theta
    }

    fn reduce_mod(&self, c: &BigInt) -> BigInt {
        c.mod_floor(&self.pn)
    }

    fn reduce_poly(&self, mut a: Vec<BigInt>) -> Coeffs {
        let r = self.degree();
        while a.len() > r {
            let lead = a.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = a.len() - r;
            for (i, c) in self.modulus[..r].iter().enumerate() {
                a[i + shift] -= &lead * c;
            }
        }
        a.resize(r, BigInt::zero());
        a.iter().map(|c| self.reduce_mod(c)).collect()
    }

    pub fn zero(&self) -> Coeffs {
        vec![BigInt::zero(); self.degree()]
    }

    pub fn one(&self) -> Coeffs {
        self.from_int(&BigInt::one())
    }

    pub fn theta(&self) -> Coeffs {
        self.reduce_poly(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_int(&self, k: &BigInt) -> Coeffs {
        let mut c = self.zero();
        c[0] = self.reduce_mod(k);
        c
    }

    /// Reduces arbitrary integer coefficients into the carrier.
    pub fn from_coeffs(&self, c: &[BigInt]) -> Coeffs {
        self.reduce_poly(c.to_vec())
    }

    pub fn add(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        a.iter().zip(b).map(|(x, y)| self.reduce_mod(&(x + y))).collect()
    }

    pub fn sub(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        a.iter().zip(b).map(|(x, y)| self.reduce_mod(&(x - y))).collect()
    }

    pub fn neg(&self, a: &Coeffs) -> Coeffs {
        a.iter().map(|x| self.reduce_mod(&-x)).collect()
    }

    pub fn mul(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let mut prod = vec![BigInt::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce_poly(prod)
    }

    pub fn pow(&self, a: &Coeffs, e: &BigInt) -> Coeffs {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn is_zero(&self, a: &Coeffs) -> bool {
        a.iter().all(Zero::is_zero)
    }

    /// `p`-adic valuation; `N` for zero.
    pub fn valuation(&self, a: &Coeffs) -> u32 {
        let p = BigInt::from(self.p);
        a.iter()
            .filter(|c| !c.is_zero())
            .map(|c| {
                let mut c = c.clone();
                let mut v = 0;
                while c.is_multiple_of(&p) {
                    c /= &p;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(self.n)
            .min(self.n)
    }

    /// Divides the integer representatives by `p^k`; the result is only
    /// meaningful modulo `p^{N-k}`.
    pub fn div_p_pow(&self, a: &Coeffs, k: u32) -> Coeffs {
        let pk = BigInt::from(self.p).pow(k);
        a.iter().map(|c| c / &pk).collect()
    }

    pub fn mul_p_pow(&self, a: &Coeffs, k: u32) -> Coeffs {
        let pk = BigInt::from(self.p).pow(k);
        a.iter().map(|c| self.reduce_mod(&(c * &pk))).collect()
    }

    /// Reduction to `F_{p^{fs}}`.
    pub fn residue_of(&self, a: &Coeffs) -> Elem {
        Elem::Poly(a.iter().map(|c| c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()).collect())
    }

    /// The lift with coefficients in `[0, p)`.
    pub fn lift(&self, e: &Elem) -> Coeffs {
        match e {
            Elem::Poly(v) => self.from_coeffs(&v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()),
            other => panic!("not a residue field element: {other:?}"),
        }
    }

    /// Inverse of a unit, by Newton iteration from the residue field inverse.
    pub fn unit_inverse(&self, a: &Coeffs) -> Result<Coeffs> {
        let field = CoeffRing::Finite(self.residue.clone());
        let r = field.inv(&self.residue_of(a)).map_err(|_| Error::DivisionByZero)?;
        let mut y = self.lift(&r);
        let two = self.from_int(&BigInt::from(2));
        let mut good = 1;
        while good < self.n {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            good *= 2;
        }
        Ok(y)
    }

    /// `a(image)`: the ring endomorphism sending `θ` to `image`, applied to `a`.
    pub fn compose(&self, a: &Coeffs, image: &Coeffs) -> Coeffs {
        let mut acc = self.zero();
        for c in a.iter().rev() {
            acc = self.mul(&acc, image);
            acc[0] = self.reduce_mod(&(&acc[0] + c));
        }
        acc
    }

    /// Evaluates the polynomial `poly` (integer coefficients, low degree first)
    /// at `x`.
    fn eval_int_poly(&self, poly: &[BigInt], x: &Coeffs) -> Coeffs {
        let mut acc = self.zero();
        for c in poly.iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = self.reduce_mod(&(&acc[0] + c));
        }
        acc
    }

    /// Lifts an approximate root of `poly` (simple modulo `p`) to a root mod `p^N`.
    fn hensel_root(&self, poly: &[BigInt], mut y: Coeffs) -> Result<Coeffs> {
        let deriv: Vec<BigInt> = poly.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        if !self.is_zero(&self.residue_of_coeffs(&self.eval_int_poly(poly, &y))) {
            return Err(Error::Invalid("not a root modulo p".into()));
        }
        let mut good = 1;
        while good < self.n {
            let d = self.unit_inverse(&self.eval_int_poly(&deriv, &y))?;
            y = self.sub(&y, &self.mul(&self.eval_int_poly(poly, &y), &d));
            good *= 2;
        }
        debug_assert!(self.is_zero(&self.eval_int_poly(poly, &y)));
        Ok(y)
    }

    fn residue_of_coeffs(&self, a: &Coeffs) -> Coeffs {
        a.iter().map(|c| c.mod_floor(&BigInt::from(self.p))).collect()
    }

    /// `σ_K^k(a)` for any integer `k`.
    pub fn sigma_pow(&self, a: &Coeffs, k: i64) -> Coeffs {
        let k = k.rem_euclid(self.s as i64);
        let mut out = a.clone();
        for _ in 0..k {
            out = self.compose(&out, &self.sigma_theta);
        }
        out
    }

    pub fn sigma(&self, a: &Coeffs) -> Coeffs {
        self.compose(a, &self.sigma_theta)
    }

    pub fn sigma_inv(&self, a: &Coeffs) -> Coeffs {
        self.compose(a, &self.sigma_inv_theta)
    }

    /// Teichmüller representative of a residue class.
    pub fn teichmuller(&self, e: &Elem) -> Coeffs {
        let r = self.degree() as u32;
        let e_exp = BigInt::from(self.p).pow(r * (self.n - 1));
        self.pow(&self.lift(e), &e_exp)
    }

    /// Witt vectors over the residue field, with the same modulus.
    pub fn witt_context(&self) -> Result<WittContext> {
        WittContext::new(self.p, self.n as usize, CoeffRing::Finite(self.residue.clone()))
    }

    /// The isomorphism `W_N(F) → carrier`, `(x_0, x_1, …) ↦ Σ p^i [x_i^{p^{-i}}]`.
    pub fn from_witt(&self, w: &WittVector) -> Result<Coeffs> {
        if w.len() > self.n as usize {
            return Err(Error::Invalid("Witt vector longer than the precision".into()));
        }
        let field = CoeffRing::Finite(self.residue.clone());
        let r = self.degree() as u64;
        let mut acc = self.zero();
        for (i, x) in w.coords.iter().enumerate() {
            let root_steps = (r - (i as u64 % r)) % r;
            let mut y = x.clone();
            for _ in 0..root_steps {
                y = field.pow(&y, self.p);
            }
            acc = self.add(&acc, &self.mul_p_pow(&self.teichmuller(&y), i as u32));
        }
        Ok(acc)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Coeffs {
        let pn = self.pn.to_u64().unwrap_or(u64::MAX);
        (0..self.degree()).map(|_| BigInt::from(rng.gen_range(0..pn))).collect()
    }

    /// All carrier elements, for exhaustive checks on small carriers.
    pub fn elements(&self) -> Option<Vec<Coeffs>> {
        let pn = self.pn.to_u64()?;
        let total = pn.checked_pow(self.degree() as u32)?;
        if total > 1 << 16 {
            return None;
        }
        Some(
            (0..total)
                .map(|mut code| {
                    (0..self.degree())
                        .map(|_| {
                            let d = code % pn;
                            code /= pn;
                            BigInt::from(d)
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Image of this context's generator in a larger context whose residue
    /// field contains this one, lifted by Hensel's lemma.
    pub fn embedding_into(&self, big: &UnramifiedContext) -> Result<Coeffs> {
        if big.p != self.p || big.n != self.n || !big.degree().is_multiple_of(self.degree()) {
            return Err(Error::InvalidContext("no embedding between these carriers".into()));
        }
        let field = CoeffRing::Finite(big.residue.clone());
        let elems = field.elements().ok_or_else(|| Error::Invalid("residue field too large to search".into()))?;
        for e in elems {
            let x = big.lift(&e);
            let v = big.eval_int_poly(&self.modulus, &x);
            if big.is_zero(&big.residue_of_coeffs(&v)) {
                return big.hensel_root(&self.modulus, x);
            }
        }
        Err(Error::Invalid("no root of the modulus in the larger field".into()))
    }

    pub fn render(&self, a: &Coeffs) -> String {
        let parts: Vec<String> = a.iter().map(ToString::to_string).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Element `p^val · u` of `K_s`, with `u` a unit known modulo `p^prec`.
///
/// When `prec == 0` the element is zero to the available precision and
/// `val` records the absolute precision (it is known modulo `p^val`); exact
/// zero uses the sentinel [`EXACT`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsElem {
    val: i64,
    prec: u32,
    unit: Coeffs,
}

/// Absolute precision of exact zero.
pub const EXACT: i64 = i64::MAX / 4;

fn cap(x: i64) -> i64 {
    x.min(EXACT)
}

impl KsElem {
    fn normalize(v: i64, c: Coeffs, m: u32, ctx: &UnramifiedContext) -> KsElem {
        let m = m.min(ctx.n);
        let pm = BigInt::from(ctx.p).pow(m);
        let c: Coeffs = c.iter().map(|x| x.mod_floor(&pm)).collect();
        let w = ctx.valuation(&c).min(m);
        if w >= m {
            return KsElem::zero_to(v + m as i64, ctx);
        }
        let pr = BigInt::from(ctx.p).pow(m - w);
        let unit = ctx.div_p_pow(&c, w).iter().map(|x| x.mod_floor(&pr)).collect();
        KsElem { val: v + w as i64, prec: m - w, unit }
    }

    /// Zero known modulo `p^abs`.
    pub fn zero_to(abs: i64, ctx: &UnramifiedContext) -> KsElem {
        KsElem { val: cap(abs), prec: 0, unit: ctx.zero() }
    }

    /// Exact zero.
    pub fn zero(ctx: &UnramifiedContext) -> KsElem {
        KsElem::zero_to(EXACT, ctx)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.val >= EXACT
    }

    /// An integral carrier element, with full precision `N`.
    pub fn from_coeffs(c: Coeffs, ctx: &UnramifiedContext) -> KsElem {
        KsElem::normalize(0, c, ctx.n, ctx)
    }

    /// `p^v · c`, with `c` known modulo `p^N`.
    pub fn scaled(v: i64, c: Coeffs, ctx: &UnramifiedContext) -> KsElem {
        KsElem::normalize(v, c, ctx.n, ctx)
    }

    /// `p^v · c`, with `c` known modulo `p^prec`.
    pub fn from_parts(v: i64, c: Coeffs, prec: u32, ctx: &UnramifiedContext) -> KsElem {
        KsElem::normalize(v, c, prec, ctx)
    }

    pub fn from_int(k: i64, ctx: &UnramifiedContext) -> KsElem {
        KsElem::from_coeffs(ctx.from_int(&BigInt::from(k)), ctx)
    }

    pub fn one(ctx: &UnramifiedContext) -> KsElem {
        KsElem::from_int(1, ctx)
    }

    /// `p^e` for any integer `e`.
    pub fn p_power(e: i64, ctx: &UnramifiedContext) -> KsElem {
        KsElem { val: e, prec: ctx.n, unit: ctx.one() }
    }

    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    /// `None` when the element is zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Absolute precision: the element is known modulo `p^precision`.
    pub fn precision(&self) -> i64 {
        cap(self.val.saturating_add(self.prec as i64))
    }

    pub fn relative_precision(&self) -> u32 {
        self.prec
    }

    pub fn unit(&self) -> &Coeffs {
        &self.unit
    }

    pub fn add(&self, o: &KsElem, ctx: &UnramifiedContext) -> KsElem {
        let v = self.val.min(o.val);
        let abs = self.precision().min(o.precision());
        if abs <= v {
            return KsElem::zero_to(abs, ctx);
        }
        let m = (abs - v).min(ctx.n as i64) as u32;
        let part = |x: &KsElem| {
            if x.is_zero() || x.val - v >= m as i64 {
                ctx.zero()
            } else {
                ctx.mul_p_pow(&x.unit, (x.val - v) as u32)
            }
        };
        KsElem::normalize(v, ctx.add(&part(self), &part(o)), m, ctx)
    }

    pub fn neg(&self, ctx: &UnramifiedContext) -> KsElem {
        if self.is_zero() {
            return self.clone();
        }
        KsElem::normalize(self.val, ctx.neg(&self.unit), self.prec, ctx)
    }

    pub fn sub(&self, o: &KsElem, ctx: &UnramifiedContext) -> KsElem {
        self.add(&o.neg(ctx), ctx)
    }

    pub fn mul(&self, o: &KsElem, ctx: &UnramifiedContext) -> KsElem {
        if self.is_zero() || o.is_zero() {
            let abs = self.val.saturating_add(o.precision()).min(o.val.saturating_add(self.precision()));
            return KsElem::zero_to(abs, ctx);
        }
        KsElem::normalize(self.val + o.val, ctx.mul(&self.unit, &o.unit), self.prec.min(o.prec), ctx)
    }

    pub fn inv(&self, ctx: &UnramifiedContext) -> Result<KsElem> {
        if self.is_zero() {
            return Err(Error::InsufficientPrecision(format!("element is zero modulo p^{}; cannot invert", self.val)));
        }
        Ok(KsElem::normalize(-self.val, ctx.unit_inverse(&self.unit)?, self.prec, ctx))
    }

    pub fn div(&self, o: &KsElem, ctx: &UnramifiedContext) -> Result<KsElem> {
        Ok(self.mul(&o.inv(ctx)?, ctx))
    }

    pub fn sigma_pow(&self, k: i64, ctx: &UnramifiedContext) -> KsElem {
        if self.is_zero() {
            return self.clone();
        }
        KsElem::normalize(self.val, ctx.sigma_pow(&self.unit, k), self.prec, ctx)
    }

    /// Equality modulo the smaller of the two precisions.
    pub fn eq_to_precision(&self, o: &KsElem, ctx: &UnramifiedContext) -> bool {
        self.sub(o, ctx).is_zero()
    }

    /// The carrier element `p^val · u` modulo `p^N`; requires `val ≥ 0`.
    pub fn to_integral(&self, ctx: &UnramifiedContext) -> Result<Coeffs> {
        if self.is_zero() {
            return Ok(ctx.zero());
        }
        if self.val < 0 {
            return Err(Error::Invalid(format!("element has valuation {} < 0", self.val)));
        }
        if self.val >= ctx.n as i64 {
            return Ok(ctx.zero());
        }
        Ok(ctx.mul_p_pow(&self.unit, self.val as u32))
    }

    /// `p^v*u + O(p^abs)` in compact form (`1`, `p`, `3*p^2`, `[1,2]*p^-1`),
    /// `O(p^abs)` for zero to precision and `0` for exact zero.
    pub fn render(&self, ctx: &UnramifiedContext) -> String {
        if self.is_exact_zero() {
            return "0".into();
        }
        if self.is_zero() {
            return format!("O(p^{})", self.val);
        }
        let unit = if self.unit[1..].iter().all(Zero::is_zero) {
            if self.unit[0].is_one() {
                None
            } else {
                Some(self.unit[0].to_string())
            }
        } else {
            Some(ctx.render(&self.unit))
        };
        let pv = match self.val {
            0 => None,
            1 => Some("p".to_string()),
            v => Some(format!("p^{v}")),
        };
        let body = match (unit, pv) {
            (None, None) => "1".to_string(),
            (Some(u), None) => u,
            (None, Some(p)) => p,
            (Some(u), Some(p)) => format!("{u}*{p}"),
        };
        format!("{body} + O(p^{})", self.precision())
    }
}

/// Square matrices over `K_s`.
pub type KsMatrix = Vec<Vec<KsElem>>;

pub fn mat_identity(n: usize, ctx: &UnramifiedContext) -> KsMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { KsElem::one(ctx) } else { KsElem::zero(ctx) }).collect()).collect()
}

pub fn mat_scalar(n: usize, a: &KsElem, ctx: &UnramifiedContext) -> KsMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { a.clone() } else { KsElem::zero(ctx) }).collect()).collect()
}

pub fn mat_mul(a: &KsMatrix, b: &KsMatrix, ctx: &UnramifiedContext) -> KsMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(KsElem::zero(ctx), |acc, k| acc.add(&a[i][k].mul(&b[k][j], ctx), ctx)))
                .collect()
        })
        .collect()
}

pub fn mat_add(a: &KsMatrix, b: &KsMatrix, ctx: &UnramifiedContext) -> KsMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y, ctx)).collect()).collect()
}

pub fn mat_sigma_pow(a: &KsMatrix, k: i64, ctx: &UnramifiedContext) -> KsMatrix {
    a.iter().map(|r| r.iter().map(|x| x.sigma_pow(k, ctx)).collect()).collect()
}

pub fn mat_eq(a: &KsMatrix, b: &KsMatrix, ctx: &UnramifiedContext) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(x, y)| x.eq_to_precision(y, ctx)))
}

/// Determinant by the Leibniz expansion over all permutations.
pub fn det_leibniz(a: &KsMatrix, ctx: &UnramifiedContext) -> KsElem {
    fn rec(
        a: &KsMatrix,
        row: usize,
        used: &mut Vec<bool>,
        sign: bool,
        acc: &KsElem,
        ctx: &UnramifiedContext,
        out: &mut KsElem,
    ) {
        let n = a.len();
        if row == n {
            let term = if sign { acc.neg(ctx) } else { acc.clone() };
            *out = out.add(&term, ctx);
            return;
        }
        for col in 0..n {
            if used[col] {
                continue;
            }
            // parity of the permutation: count already-used columns to the right
            let inversions = used[col + 1..].iter().filter(|&&u| u).count();
            used[col] = true;
            rec(a, row + 1, used, sign ^ (inversions % 2 == 1), &acc.mul(&a[row][col], ctx), ctx, out);
            used[col] = false;
        }
    }
    let mut out = KsElem::zero(ctx);
    rec(a, 0, &mut vec![false; a.len()], false, &KsElem::one(ctx), ctx, &mut out);
    out
}

/// Inverse by Gauss–Jordan elimination with pivots of least valuation.
pub fn mat_inverse(a: &KsMatrix, ctx: &UnramifiedContext) -> Result<KsMatrix> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = mat_identity(n, ctx);
    for col in 0..n {
        let pivot = (col..n)
            .filter_map(|r| m[r][col].valuation().map(|v| (v, r)))
            .min()
            .map(|(_, r)| r)
            .ok_or_else(|| Error::InsufficientPrecision("matrix is singular to the working precision".into()))?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = m[col][col].inv(ctx)?;
        for j in 0..n {
            m[col][j] = m[col][j].mul(&pinv, ctx);
            inv[col][j] = inv[col][j].mul(&pinv, ctx);
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in 0..n {
                let (mc, ic) = (m[col][j].clone(), inv[col][j].clone());
                m[r][j] = m[r][j].sub(&factor.mul(&mc, ctx), ctx);
                inv[r][j] = inv[r][j].sub(&factor.mul(&ic, ctx), ctx);
            }
        }
    }
    Ok(inv)
}

/// Valuations of the elementary divisors of an integral matrix modulo `p^N`
/// (`N` stands for a zero divisor), sorted ascending.
pub fn elementary_divisors(a: &[Vec<Coeffs>], ctx: &UnramifiedContext) -> Result<Vec<u32>> {
    let mut m: Vec<Vec<Coeffs>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 0..rows.min(cols) {
        let best =
            (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j))).map(|(i, j)| (ctx.valuation(&m[i][j]), i, j)).min();
        let Some((v, pi, pj)) = best else { break };
        if v >= ctx.n {
            out.extend(std::iter::repeat_n(ctx.n, rows.min(cols) - k));
            break;
        }
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        let unit_inv = ctx.unit_inverse(&ctx.div_p_pow(&m[k][k], v))?;
        for i in k + 1..rows {
            let factor = ctx.mul(&ctx.div_p_pow(&m[i][k], v), &unit_inv);
            for j in k..cols {
                let t = ctx.mul(&factor, &m[k][j]);
                m[i][j] = ctx.sub(&m[i][j], &t);
            }
        }
        for j in k + 1..cols {
            let factor = ctx.mul(&ctx.div_p_pow(&m[k][j], v), &unit_inv);
            for i in k..rows {
                let t = ctx.mul(&factor, &m[i][k]);
                m[i][j] = ctx.sub(&m[i][j], &t);
            }
        }
        out.push(v);
    }
    out.sort_unstable();
    Ok(out)
}
