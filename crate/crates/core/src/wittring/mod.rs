//! Truncated `p`-typical Witt vectors `W_N(R)` over exact coefficient rings.
//!
//! Ring operations use the ghost map when `p` is invertible in `R`, go
//! through `Q` for `R = Z`, and otherwise specialise the universal integral
//! sum/product polynomials. Truncation is compatible with every operation, so
//! vectors of different lengths are compared and combined at their common
//! length.

mod ring;
mod universal;

pub use ring::{CoeffRing, Elem, FiniteField};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qexact::is_prime;
use universal::{universal, PowerTable};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittVector {
    pub coords: Vec<Elem>,
}

impl WittVector {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn truncate(&self, n: usize) -> WittVector {
        WittVector { coords: self.coords[..n.min(self.len())].to_vec() }
    }
}

#[derive(Debug, Clone)]
pub struct WittContext {
    p: u64,
    n: usize,
    ring: CoeffRing,
}

/// How ring operations are carried out for a given coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    Ghost,
    ViaRationals,
    Universal,
}

/// `w_n(x) = x_0^(p^n) + p x_1^(p^(n-1)) + ... + p^n x_n` in `R`.
pub fn witt_polynomial(ring: &CoeffRing, p: u64, n: usize, x: &[Elem]) -> Result<Elem> {
    if n >= x.len() {
        return Err(Error::Invalid(format!("w_{n} needs {} coordinates", n + 1)));
    }
    let mut acc = ring.zero();
    for (i, xi) in x.iter().enumerate().take(n + 1) {
        let pi = ring.from_int(&BigInt::from(p).pow(i as u32));
        acc = ring.add(&acc, &ring.mul(&pi, &ring.pow(xi, p.pow((n - i) as u32))));
    }
    Ok(acc)
}

impl WittContext {
    pub fn new(p: u64, n: usize, ring: CoeffRing) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::Invalid("Witt length must be at least 1".into()));
        }
        Ok(WittContext { p, n, ring })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    fn route(&self) -> Route {
        if self.ring.is_invertible_int(self.p) {
            Route::Ghost
        } else if self.ring == CoeffRing::Integers {
            Route::ViaRationals
        } else {
            Route::Universal
        }
    }

    /// Whether `R` has characteristic exactly `p`.
    pub fn char_p(&self) -> bool {
        self.ring.characteristic() == BigInt::from(self.p)
    }

    pub fn vector(&self, coords: Vec<Elem>) -> Result<WittVector> {
        if coords.len() != self.n {
            return Err(Error::Invalid(format!("expected {} coordinates, got {}", self.n, coords.len())));
        }
        Ok(WittVector { coords })
    }

    pub fn parse_vector(&self, coords: &[String]) -> Result<WittVector> {
        self.vector(coords.iter().map(|c| self.ring.parse(c)).collect::<Result<_>>()?)
    }

    pub fn render(&self, x: &WittVector) -> Vec<String> {
        x.coords.iter().map(|c| self.ring.render(c)).collect()
    }

    pub fn zero(&self) -> WittVector {
        WittVector { coords: vec![self.ring.zero(); self.n] }
    }

    pub fn one(&self) -> WittVector {
        self.teichmuller(&self.ring.one())
    }

    /// `[a] = (a, 0, 0, ...)`.
    pub fn teichmuller(&self, a: &Elem) -> WittVector {
        let mut coords = vec![self.ring.zero(); self.n];
        coords[0] = a.clone();
        WittVector { coords }
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> WittVector {
        WittVector { coords: (0..self.n).map(|_| self.ring.random(rng)).collect() }
    }

    pub fn ghost(&self, x: &WittVector) -> Vec<Elem> {
        (0..x.len()).map(|k| witt_polynomial(&self.ring, self.p, k, &x.coords).expect("index in range")).collect()
    }

    /// Solves the ghost equations triangularly; needs `p` invertible.
    pub fn ghost_inverse(&self, g: &[Elem]) -> Result<WittVector> {
        if !self.ring.is_invertible_int(self.p) {
            return Err(Error::PNotInvertible(format!("{} is not invertible in {}", self.p, self.ring.name())));
        }
        let r = &self.ring;
        let mut coords: Vec<Elem> = Vec::with_capacity(g.len());
        for (n, gn) in g.iter().enumerate() {
            let mut rest = gn.clone();
            for (i, xi) in coords.iter().enumerate() {
                let pi = r.from_int(&BigInt::from(self.p).pow(i as u32));
                rest = r.sub(&rest, &r.mul(&pi, &r.pow(xi, self.p.pow((n - i) as u32))));
            }
            let pn = r.from_int(&BigInt::from(self.p).pow(n as u32));
            coords.push(r.mul(&rest, &r.inv(&pn)?));
        }
        Ok(WittVector { coords })
    }

    fn rational_twin(&self) -> WittContext {
        WittContext { p: self.p, n: self.n, ring: CoeffRing::Rationals }
    }

    fn to_rationals(x: &WittVector) -> WittVector {
        WittVector {
            coords: x
                .coords
                .iter()
                .map(|c| match c {
                    Elem::Int(v) => Elem::Rat(BigRational::from_integer(v.clone())),
                    other => other.clone(),
                })
                .collect(),
        }
    }

    fn from_rationals(x: &WittVector) -> Result<WittVector> {
        let coords = x
            .coords
            .iter()
            .map(|c| match c {
                Elem::Rat(v) if v.is_integer() => Ok(Elem::Int(v.to_integer())),
                other => Err(Error::Invalid(format!("non-integral Witt coordinate {other:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(WittVector { coords })
    }

    fn ghost_binary(&self, x: &WittVector, y: &WittVector, f: impl Fn(&Elem, &Elem) -> Elem) -> Result<WittVector> {
        let gx = self.ghost(x);
        let gy = self.ghost(y);
        let g: Vec<Elem> = gx.iter().zip(&gy).map(|(a, b)| f(a, b)).collect();
        self.ghost_inverse(&g)
    }

    fn universal_eval(&self, polys: &[universal::IntPoly], vars: Vec<Elem>) -> WittVector {
        let mut table = PowerTable::new(&self.ring, &vars);
        WittVector { coords: polys.iter().map(|poly| poly.eval(&self.ring, &mut table)).collect() }
    }

    pub fn add(&self, x: &WittVector, y: &WittVector) -> Result<WittVector> {
        let l = x.len().min(y.len());
        let (x, y) = (x.truncate(l), y.truncate(l));
        match self.route() {
            Route::Ghost => self.ghost_binary(&x, &y, |a, b| self.ring.add(a, b)),
            Route::ViaRationals => {
                Self::from_rationals(&self.rational_twin().add(&Self::to_rationals(&x), &Self::to_rationals(&y))?)
            }
            Route::Universal => {
                let u = universal(self.p, l)?;
                Ok(self.universal_eval(&u.sum, [x.coords, y.coords].concat()))
            }
        }
    }

    pub fn mul(&self, x: &WittVector, y: &WittVector) -> Result<WittVector> {
        let l = x.len().min(y.len());
        let (x, y) = (x.truncate(l), y.truncate(l));
        match self.route() {
            Route::Ghost => self.ghost_binary(&x, &y, |a, b| self.ring.mul(a, b)),
            Route::ViaRationals => {
                Self::from_rationals(&self.rational_twin().mul(&Self::to_rationals(&x), &Self::to_rationals(&y))?)
            }
            Route::Universal => {
                let u = universal(self.p, l)?;
                Ok(self.universal_eval(&u.prod, [x.coords, y.coords].concat()))
            }
        }
    }

    pub fn neg(&self, x: &WittVector) -> Result<WittVector> {
        match self.route() {
            Route::Ghost => {
                let g: Vec<Elem> = self.ghost(x).iter().map(|a| self.ring.neg(a)).collect();
                self.ghost_inverse(&g)
            }
            Route::ViaRationals => Self::from_rationals(&self.rational_twin().neg(&Self::to_rationals(x))?),
            Route::Universal => {
                let u = universal(self.p, x.len())?;
                Ok(self.universal_eval(&u.neg, x.coords.clone()))
            }
        }
    }

    pub fn sub(&self, x: &WittVector, y: &WittVector) -> Result<WittVector> {
        self.add(x, &self.neg(y)?)
    }

    /// The ring operations through the universal polynomials regardless of
    /// the ring; used to cross-check the ghost route.
    pub fn add_universal(&self, x: &WittVector, y: &WittVector) -> Result<WittVector> {
        let l = x.len().min(y.len());
        let u = universal(self.p, l)?;
        Ok(self.universal_eval(&u.sum, [x.truncate(l).coords, y.truncate(l).coords].concat()))
    }

    pub fn mul_universal(&self, x: &WittVector, y: &WittVector) -> Result<WittVector> {
        let l = x.len().min(y.len());
        let u = universal(self.p, l)?;
        Ok(self.universal_eval(&u.prod, [x.truncate(l).coords, y.truncate(l).coords].concat()))
    }

    /// `k * 1` by double-and-add.
    pub fn from_int(&self, k: i64) -> Result<WittVector> {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.add(&base, &base)?;
            }
        }
        if k < 0 {
            acc = self.neg(&acc)?;
        }
        Ok(acc)
    }

    /// `tau(x_0, x_1, ...) = (0, x_0, x_1, ...)`, dropping the top coordinate.
    pub fn verschiebung(&self, x: &WittVector) -> WittVector {
        let mut coords = vec![self.ring.zero()];
        coords.extend(x.coords.iter().take(x.len().saturating_sub(1)).cloned());
        WittVector { coords }
    }

    /// Frobenius. In characteristic `p` it is `x_i -> x_i^p` at full length;
    /// when `p` is invertible (or `R = Z`, through `Q`) it is the ghost shift
    /// `(w_0, w_1, ...) -> (w_1, w_2, ...)`, which loses one coordinate.
    pub fn frobenius(&self, x: &WittVector) -> Result<WittVector> {
        if self.char_p() {
            return Ok(WittVector { coords: x.coords.iter().map(|c| self.ring.pow(c, self.p)).collect() });
        }
        match self.route() {
            Route::Ghost => {
                let g = self.ghost(x);
                self.ghost_inverse(&g[1..])
            }
            Route::ViaRationals => Self::from_rationals(&self.rational_twin().frobenius(&Self::to_rationals(x))?),
            Route::Universal => Err(Error::UnsupportedRing(format!(
                "Frobenius on W({}) with p = {}: p divides the characteristic but the ring is not of characteristic p",
                self.ring.name(),
                self.p
            ))),
        }
    }

    /// `w_0`, the projection to the first coordinate.
    pub fn w0(&self, x: &WittVector) -> Elem {
        x.coords[0].clone()
    }

    pub fn eq_common(x: &WittVector, y: &WittVector) -> bool {
        let l = x.len().min(y.len());
        x.truncate(l) == y.truncate(l)
    }

    pub fn is_zero(&self, x: &WittVector) -> bool {
        x.coords.iter().all(|c| self.ring.is_zero(c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WittRelationReport {
    pub sigma_tau_is_p: bool,
    pub tau_x_sigma_y: bool,
    pub tau_tau_is_p_tau: bool,
    pub tau_sigma_is_tau1_times: bool,
    pub tau1_is_p: Option<bool>,
}

impl WittRelationReport {
    pub fn all(&self) -> bool {
        self.sigma_tau_is_p
            && self.tau_x_sigma_y
            && self.tau_tau_is_p_tau
            && self.tau_sigma_is_tau1_times
            && self.tau1_is_p.unwrap_or(true)
    }
}

/// The Frobenius/Verschiebung relations on a pair of vectors, compared at
/// the common length of both sides.
pub fn check_relations(ctx: &WittContext, x: &WittVector, y: &WittVector) -> Result<WittRelationReport> {
    let p = ctx.from_int(ctx.p() as i64)?;
    let eq = WittContext::eq_common;
    let sigma_tau_is_p = eq(&ctx.frobenius(&ctx.verschiebung(x))?, &ctx.mul(&p, x)?);
    let tau_x_sigma_y = eq(&ctx.verschiebung(&ctx.mul(x, &ctx.frobenius(y)?)?), &ctx.mul(&ctx.verschiebung(x), y)?);
    let tau_tau_is_p_tau =
        eq(&ctx.mul(&ctx.verschiebung(x), &ctx.verschiebung(y))?, &ctx.mul(&p, &ctx.verschiebung(&ctx.mul(x, y)?))?);
    let tau1 = ctx.verschiebung(&ctx.one());
    let tau_sigma_is_tau1_times = eq(&ctx.verschiebung(&ctx.frobenius(x)?), &ctx.mul(&tau1, x)?);
    let tau1_is_p = ctx.char_p().then(|| tau1 == p);
    Ok(WittRelationReport { sigma_tau_is_p, tau_x_sigma_y, tau_tau_is_p_tau, tau_sigma_is_tau1_times, tau1_is_p })
}

/// Ring axioms on a triple, as a list of `(name, holds)`.
pub fn check_ring_axioms(
    ctx: &WittContext,
    x: &WittVector,
    y: &WittVector,
    z: &WittVector,
) -> Result<Vec<(&'static str, bool)>> {
    let add = |a: &WittVector, b: &WittVector| ctx.add(a, b);
    let mul = |a: &WittVector, b: &WittVector| ctx.mul(a, b);
    Ok(vec![
        ("add-commutative", add(x, y)? == add(y, x)?),
        ("add-associative", add(&add(x, y)?, z)? == add(x, &add(y, z)?)?),
        ("add-identity", add(x, &ctx.zero())? == *x),
        ("add-inverse", ctx.is_zero(&add(x, &ctx.neg(x)?)?)),
        ("mul-commutative", mul(x, y)? == mul(y, x)?),
        ("mul-associative", mul(&mul(x, y)?, z)? == mul(x, &mul(y, z)?)?),
        ("mul-identity", mul(x, &ctx.one())? == *x),
        ("distributive", mul(x, &add(y, z)?)? == add(&mul(x, y)?, &mul(x, z)?)?),
    ])
}

/// Whether `k -> k * 1` identifies `Z/p^N` with `W_N(F_p)`: the images of
/// `0..p^N` are distinct, `p^N * 1 = 0`, and the map is multiplicative.
pub fn integers_mod_pn_consistent(p: u64, n: usize) -> Result<bool> {
    let ctx = WittContext::new(p, n, CoeffRing::finite_field(p, 1)?)?;
    let size = p.pow(n as u32);
    let mut images = Vec::with_capacity(size as usize);
    let mut acc = ctx.zero();
    for _ in 0..size {
        images.push(acc.clone());
        acc = ctx.add(&acc, &ctx.one())?;
    }
    if !ctx.is_zero(&acc) {
        return Ok(false);
    }
    let mut sorted = images.clone();
    sorted.sort_by_key(|v| format!("{v:?}"));
    sorted.dedup();
    if sorted.len() as u64 != size {
        return Ok(false);
    }
    for a in 0..size {
        for b in 0..size {
            if ctx.mul(&images[a as usize], &images[b as usize])? != images[((a * b) % size) as usize] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
