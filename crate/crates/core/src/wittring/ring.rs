//! Exact coefficient rings for Witt vectors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::qexact::is_prime;

/// `F_p[a] / (modulus)`, with the modulus the first monic irreducible
/// polynomial of degree `r` in lexicographic order of its coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    r: u32,
    /// Monic, low degree first, length `r + 1`.
    modulus: Vec<u64>,
}

fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    // b monic
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                let idx = i + shift;
                a[idx] = (a[idx] + p - (lead * c) % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn monic_polys(p: u64, deg: u32) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg);
    (0..count).map(move |mut code| {
        let mut v = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            v.push(code % p);
            code /= p;
        }
        v.push(1);
        v
    })
}

impl FiniteField {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::Invalid("field degree must be at least 1".into()));
        }
        if (p as f64).powi(r as i32) > 1.0e6 {
            return Err(Error::Invalid(format!("F_{{{p}^{r}}} is too large for the exact model")));
        }
        let modulus = monic_polys(p, r)
            .find(|f| {
                (1..=r / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(f.clone(), &g, p).iter().any(|&c| c != 0)))
            })
            .expect("irreducible polynomials exist in every degree");
        Ok(FiniteField { p, r, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.r)
    }

    fn reduce(&self, a: Vec<u64>) -> Vec<u64> {
        let mut v = poly_rem(a, &self.modulus, self.p);
        v.resize(self.r as usize, 0);
        v
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.reduce(prod)
    }

    /// Element with index `code` in base-`p` digit order.
    pub fn element(&self, mut code: u64) -> Vec<u64> {
        (0..self.r)
            .map(|_| {
                let d = code % self.p;
                code /= self.p;
                d
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffRing {
    Rationals,
    Integers,
    IntegersMod(BigInt),
    Finite(FiniteField),
}

/// Elements of a [`CoeffRing`], always kept reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    Int(BigInt),
    Poly(Vec<u64>),
}

impl CoeffRing {
    pub fn integers_mod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Invalid("modulus must be at least 2".into()));
        }
        Ok(CoeffRing::IntegersMod(BigInt::from(m)))
    }

    pub fn finite_field(p: u64, r: u32) -> Result<Self> {
        Ok(CoeffRing::Finite(FiniteField::new(p, r)?))
    }

    /// Characteristic, with 0 for `Q` and `Z`.
    pub fn characteristic(&self) -> BigInt {
        match self {
            CoeffRing::Rationals | CoeffRing::Integers => BigInt::zero(),
            CoeffRing::IntegersMod(m) => m.clone(),
            CoeffRing::Finite(f) => BigInt::from(f.p),
        }
    }

    pub fn is_invertible_int(&self, n: u64) -> bool {
        match self {
            CoeffRing::Rationals => n != 0,
            CoeffRing::Integers => n == 1,
            CoeffRing::IntegersMod(m) => m.gcd(&BigInt::from(n)).is_one(),
            CoeffRing::Finite(f) => !n.is_multiple_of(f.p),
        }
    }

    pub fn name(&self) -> String {
        match self {
            CoeffRing::Rationals => "Q".into(),
            CoeffRing::Integers => "Z".into(),
            CoeffRing::IntegersMod(m) => format!("Z/{m}"),
            CoeffRing::Finite(f) if f.r == 1 => format!("F{}", f.p),
            CoeffRing::Finite(f) => format!("F{}^{}", f.p, f.r),
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_int(&BigInt::zero())
    }

    pub fn one(&self) -> Elem {
        self.from_int(&BigInt::one())
    }

    pub fn from_int(&self, n: &BigInt) -> Elem {
        match self {
            CoeffRing::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            CoeffRing::Integers => Elem::Int(n.clone()),
            CoeffRing::IntegersMod(m) => Elem::Int(n.mod_floor(m)),
            CoeffRing::Finite(f) => {
                let c = n.mod_floor(&BigInt::from(f.p)).to_u64().unwrap();
                let mut v = vec![0; f.r as usize];
                v[0] = c;
                Elem::Poly(v)
            }
        }
    }

    /// Image of a rational number, when its denominator is invertible.
    pub fn from_rational(&self, x: &BigRational) -> Result<Elem> {
        let num = self.from_int(x.numer());
        if x.denom().is_one() {
            return Ok(num);
        }
        let den = self.from_int(x.denom());
        Ok(self.mul(&num, &self.inv(&den)?))
    }

    fn check(&self, e: &Elem) {
        let ok = matches!(
            (self, e),
            (CoeffRing::Rationals, Elem::Rat(_))
                | (CoeffRing::Integers, Elem::Int(_))
                | (CoeffRing::IntegersMod(_), Elem::Int(_))
                | (CoeffRing::Finite(_), Elem::Poly(_))
        );
        debug_assert!(ok, "element {e:?} does not belong to {}", self.name());
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.check(a);
        match (self, a, b) {
            (CoeffRing::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (CoeffRing::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (CoeffRing::IntegersMod(m), Elem::Int(x), Elem::Int(y)) => Elem::Int((x + y).mod_floor(m)),
            (CoeffRing::Finite(f), Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(x.iter().zip(y).map(|(a, b)| (a + b) % f.p).collect())
            }
            _ => panic!("mixed coefficient rings"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (CoeffRing::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (CoeffRing::Integers, Elem::Int(x)) => Elem::Int(-x),
            (CoeffRing::IntegersMod(m), Elem::Int(x)) => Elem::Int((-x).mod_floor(m)),
            (CoeffRing::Finite(f), Elem::Poly(x)) => Elem::Poly(x.iter().map(|a| (f.p - a) % f.p).collect()),
            _ => panic!("mixed coefficient rings"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (CoeffRing::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (CoeffRing::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (CoeffRing::IntegersMod(m), Elem::Int(x), Elem::Int(y)) => Elem::Int((x * y).mod_floor(m)),
            (CoeffRing::Finite(f), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(f.mul(x, y)),
            _ => panic!("mixed coefficient rings"),
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        *a == self.zero()
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        match (self, a) {
            (CoeffRing::Rationals, Elem::Rat(x)) if !x.is_zero() => Ok(Elem::Rat(x.recip())),
            (CoeffRing::Integers, Elem::Int(x)) if x.abs().is_one() => Ok(Elem::Int(x.clone())),
            (CoeffRing::IntegersMod(m), Elem::Int(x)) => {
                let g = x.extended_gcd(m);
                if !g.gcd.is_one() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Elem::Int(g.x.mod_floor(m)))
            }
            (CoeffRing::Finite(f), Elem::Poly(_)) if !self.is_zero(a) => Ok(self.pow(a, f.size() - 2)),
            _ => Err(Error::DivisionByZero),
        }
    }

    /// A random element; rationals and integers are kept small.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Elem {
        match self {
            CoeffRing::Rationals => Elem::Rat(BigRational::new(
                BigInt::from(rng.gen_range(-9i64..=9)),
                BigInt::from(rng.gen_range(1i64..=4)),
            )),
            CoeffRing::Integers => Elem::Int(BigInt::from(rng.gen_range(-9i64..=9))),
            CoeffRing::IntegersMod(m) => {
                let mm = m.to_u64().unwrap_or(u64::MAX);
                self.from_int(&BigInt::from(rng.gen_range(0..mm)))
            }
            CoeffRing::Finite(f) => Elem::Poly((0..f.r).map(|_| rng.gen_range(0..f.p)).collect()),
        }
    }

    /// All elements, for finite rings of manageable size.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            CoeffRing::IntegersMod(m) => {
                let mm = m.to_u64()?;
                Some((0..mm).map(|k| self.from_int(&BigInt::from(k))).collect())
            }
            CoeffRing::Finite(f) => Some((0..f.size()).map(|c| Elem::Poly(f.element(c))).collect()),
            _ => None,
        }
    }

    /// Parses `3`, `-2/5`, or for `F_{p^r}` a coefficient list `[c0,c1,...]`.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("cannot read `{s}` as an element of {}", self.name()));
        match self {
            CoeffRing::Finite(f) => {
                let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']'));
                let coeffs: Vec<u64> = match inner {
                    Some(body) if body.trim().is_empty() => vec![],
                    Some(body) => body
                        .split(',')
                        .map(|c| c.trim().parse::<i64>().map(|v| v.rem_euclid(f.p as i64) as u64))
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad())?,
                    None => vec![s.parse::<i64>().map_err(|_| bad())?.rem_euclid(f.p as i64) as u64],
                };
                if coeffs.len() > f.r as usize {
                    return Err(bad());
                }
                Ok(Elem::Poly(f.reduce(coeffs)))
            }
            _ => {
                let x: BigRational = s.parse().map_err(|_| bad())?;
                match self {
                    CoeffRing::Rationals => Ok(Elem::Rat(x)),
                    _ if !x.denom().is_one() => Err(bad()),
                    _ => Ok(self.from_int(x.numer())),
                }
            }
        }
    }

    pub fn render(&self, e: &Elem) -> String {
        ElemDisplay(e).to_string()
    }
}

struct ElemDisplay<'a>(&'a Elem);

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Elem::Rat(x) => write!(f, "{x}"),
            Elem::Int(x) => write!(f, "{x}"),
            Elem::Poly(v) => {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}
