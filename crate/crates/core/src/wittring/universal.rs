//! Universal Witt polynomials for sum, product and negation, solved from the
//! ghost equations over `Q` and checked to have integer coefficients.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::{CoeffRing, Elem};
use crate::error::{Error, Result};

type Monomial = Vec<u32>;

/// Polynomial over `Q` in a fixed number of variables.
#[derive(Debug, Clone, Default, PartialEq)]
struct MPoly {
    terms: HashMap<Monomial, BigRational>,
}

impl MPoly {
    fn var(nvars: usize, i: usize) -> MPoly {
        let mut m = vec![0; nvars];
        m[i] = 1;
        MPoly { terms: HashMap::from([(m, BigRational::one())]) }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn scale(&self, s: &BigRational) -> MPoly {
        if s.is_zero() {
            return MPoly::default();
        }
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    fn mul(&self, o: &MPoly) -> MPoly {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { terms: acc }
    }

    fn pow(&self, mut e: u64) -> MPoly {
        let nvars = self.terms.keys().next().map_or(0, |m| m.len());
        let mut acc = MPoly { terms: HashMap::from([(vec![0; nvars], BigRational::one())]) };
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// `w_n` in the variables `offset .. offset + n`.
fn witt_poly(p: u64, n: usize, nvars: usize, offset: usize) -> MPoly {
    let mut out = MPoly::default();
    for i in 0..=n {
        let term = MPoly::var(nvars, offset + i).pow(p.pow((n - i) as u32));
        out = out.add(&term.scale(&BigRational::from_integer(BigInt::from(p).pow(i as u32))));
    }
    out
}

/// Solves `w_n(Z) = g_n` for `n = 0, 1, ...`.
fn solve_ghost(p: u64, targets: &[MPoly]) -> Vec<MPoly> {
    let mut z: Vec<MPoly> = Vec::new();
    for (n, g) in targets.iter().enumerate() {
        let mut rest = g.clone();
        for (i, zi) in z.iter().enumerate() {
            let pi = BigRational::from_integer(BigInt::from(p).pow(i as u32));
            rest = rest.add(&zi.pow(p.pow((n - i) as u32)).scale(&-pi));
        }
        let pn = BigRational::from_integer(BigInt::from(p).pow(n as u32));
        z.push(rest.scale(&pn.recip()));
    }
    z
}

/// Polynomial with integer coefficients, ready to be specialised.
#[derive(Debug, Clone)]
pub(crate) struct IntPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    fn from_rational(p: &MPoly) -> Result<IntPoly> {
        let mut terms = Vec::with_capacity(p.terms.len());
        for (m, c) in &p.terms {
            if !c.is_integer() {
                return Err(Error::Invalid(format!("universal Witt polynomial has coefficient {c}")));
            }
            terms.push((m.clone(), c.to_integer()));
        }
        terms.sort();
        Ok(IntPoly { terms })
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }

    /// Evaluates with `vars[i]` substituted for the `i`-th variable, using a
    /// shared table of powers.
    pub(crate) fn eval(&self, ring: &CoeffRing, powers: &mut PowerTable<'_>) -> Elem {
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let coeff = ring.from_int(c);
            if ring.is_zero(&coeff) {
                continue;
            }
            let mut term = coeff;
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = ring.mul(&term, &powers.get(i, e));
                }
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }
}

pub(crate) struct PowerTable<'a> {
    ring: &'a CoeffRing,
    table: Vec<Vec<Elem>>,
}

impl<'a> PowerTable<'a> {
    pub(crate) fn new(ring: &'a CoeffRing, vars: &[Elem]) -> Self {
        PowerTable { ring, table: vars.iter().map(|v| vec![ring.one(), v.clone()]).collect() }
    }

    fn get(&mut self, i: usize, e: u32) -> Elem {
        let row = &mut self.table[i];
        while row.len() <= e as usize {
            let next = self.ring.mul(row.last().unwrap(), &row[1]);
            row.push(next);
        }
        row[e as usize].clone()
    }
}

/// Sum, product and negation polynomials for Witt vectors of length `n`.
/// Sum and product use `X_0..X_{n-1}, Y_0..Y_{n-1}`; negation uses `X` only.
#[derive(Debug)]
pub(crate) struct Universal {
    pub(crate) sum: Vec<IntPoly>,
    pub(crate) prod: Vec<IntPoly>,
    pub(crate) neg: Vec<IntPoly>,
}

impl Universal {
    fn compute(p: u64, n: usize) -> Result<Universal> {
        let nv = 2 * n;
        let wx: Vec<MPoly> = (0..n).map(|k| witt_poly(p, k, nv, 0)).collect();
        let wy: Vec<MPoly> = (0..n).map(|k| witt_poly(p, k, nv, n)).collect();
        let sum_t: Vec<MPoly> = wx.iter().zip(&wy).map(|(a, b)| a.add(b)).collect();
        let prod_t: Vec<MPoly> = wx.iter().zip(&wy).map(|(a, b)| a.mul(b)).collect();
        let wn: Vec<MPoly> = (0..n).map(|k| witt_poly(p, k, n, 0).scale(&-BigRational::one())).collect();
        let conv = |v: Vec<MPoly>| v.iter().map(IntPoly::from_rational).collect::<Result<Vec<_>>>();
        Ok(Universal {
            sum: conv(solve_ghost(p, &sum_t))?,
            prod: conv(solve_ghost(p, &prod_t))?,
            neg: conv(solve_ghost(p, &wn))?,
        })
    }
}

type Cache = Mutex<HashMap<(u64, usize), Arc<Universal>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached universal polynomials for `(p, n)`.
pub(crate) fn universal(p: u64, n: usize) -> Result<Arc<Universal>> {
    if let Some(u) = cache().lock().expect("cache lock").get(&(p, n)) {
        return Ok(u.clone());
    }
    let u = Arc::new(Universal::compute(p, n)?);
    cache().lock().expect("cache lock").entry((p, n)).or_insert_with(|| u.clone());
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_formulas() {
        // S_1 = X1 + Y1 - sum_{0<i<p} binom(p,i)/p X0^i Y0^(p-i); for p = 2: X1 + Y1 - X0 Y0
        let u = universal(2, 2).unwrap();
        let s1 = &u.sum[1];
        assert_eq!(s1.len(), 3);
        assert!(s1.terms.contains(&(vec![1, 0, 1, 0], BigInt::from(-1))));
        // P_1 = X0^2 Y1 + X1 Y0^2 + 2 X1 Y1 for p = 2
        let p1 = &u.prod[1];
        assert!(p1.terms.contains(&(vec![0, 1, 0, 1], BigInt::from(2))));
        assert_eq!(p1.len(), 3);
        // p odd: negation is coordinatewise
        let u3 = universal(3, 3).unwrap();
        for (k, poly) in u3.neg.iter().enumerate() {
            assert_eq!(poly.len(), 1);
            let mut m = vec![0; 3];
            m[k] = 1;
            assert_eq!(poly.terms[0], (m, BigInt::from(-1)));
        }
    }

    #[test]
    fn polynomials_for_p3_n4_are_integral() {
        let u = universal(3, 4).unwrap();
        assert_eq!(u.prod.len(), 4);
        assert!(u.prod[3].len() > 0);
    }
}
