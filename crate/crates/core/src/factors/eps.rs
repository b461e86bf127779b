use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qexact::{ExactScalar, Half, LFactor, LocalFieldContext};

/// `units * mono * T^s_slope * num / den`, `T = q^-s`.
#[derive(Debug, Clone)]
pub struct EpsValue {
    /// Opaque Gauss-sum symbols with exponents; zero exponents are dropped.
    pub units: BTreeMap<String, i64>,
    pub mono: ExactScalar,
    pub s_slope: Half,
    pub num: LFactor,
    pub den: LFactor,
}

/// `q^(-a b)` for half-integers with a half-integral product.
fn q_neg_product(a: Half, b: Half) -> Result<ExactScalar> {
    let four = a.twice() * b.twice();
    if four % 2 != 0 {
        return Err(Error::Invalid(format!("q^-({a} * {b}) is not a half-integer power")));
    }
    Ok(ExactScalar::q_half_power(-four / 2))
}

impl EpsValue {
    pub fn one() -> Self {
        EpsValue::monomial(ExactScalar::one(), Half::ZERO)
    }

    pub fn monomial(mono: ExactScalar, s_slope: Half) -> Self {
        EpsValue { units: BTreeMap::new(), mono, s_slope, num: LFactor::one(), den: LFactor::one() }
    }

    pub fn add_unit(&mut self, sym: &str, exp: i64) {
        let e = self.units.entry(sym.to_string()).or_insert(0);
        *e += exp;
        if *e == 0 {
            self.units.remove(sym);
        }
    }

    pub fn mul(&self, o: &EpsValue) -> EpsValue {
        let mut out = EpsValue {
            units: self.units.clone(),
            mono: self.mono.mul(&o.mono),
            s_slope: self.s_slope + o.s_slope,
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        };
        for (sym, exp) in &o.units {
            out.add_unit(sym, *exp);
        }
        out
    }

    /// `e(s + y)`.
    pub fn shift(&self, y: Half) -> Result<EpsValue> {
        Ok(EpsValue {
            units: self.units.clone(),
            mono: self.mono.mul(&q_neg_product(y, self.s_slope)?),
            s_slope: self.s_slope,
            num: self.num.shift(y),
            den: self.den.shift(y),
        })
    }

    /// Divides by the L-factor `l(s)`.
    pub fn div_l(&self, l: &LFactor) -> EpsValue {
        let mut out = self.clone();
        out.den = out.den.mul(l);
        out
    }

    /// `L(1 - s + c)` rewritten in `T = q^-s`: each `(1 - b T^-t)^-1` equals
    /// `(-b)^-1 T^t (1 - b^-1 T^t)^-1` with `b = a q^(-t(1+c))`.
    pub fn reflected_l(l: &LFactor, c: Half) -> Result<EpsValue> {
        let mut out = EpsValue::one();
        for f in &l.factors {
            let t = f.t as i64;
            let b = f.a.mul(&ExactScalar::q_half_power(-t * (Half::int(1) + c).twice()));
            let mut part = EpsValue::monomial(b.neg().inv()?, Half::int(t));
            part.num.push(b.inv()?, f.t)?;
            out = out.mul(&part);
        }
        Ok(out)
    }

    pub fn is_monomial(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Cancels `num` against `den` as multisets of inverse factors.
    pub fn normalize(&self, ctx: &LocalFieldContext) -> Result<EpsValue> {
        let mut den = self.den.clone();
        let mut rest = LFactor::one();
        for f in &self.num.factors {
            if !den.take_matching(f, ctx) {
                rest.factors.push(f.clone());
            }
        }
        if !rest.is_one() || !den.is_one() {
            return Err(Error::NotMonomial);
        }
        Ok(EpsValue::monomial(self.mono.clone(), self.s_slope).with_units(self.units.clone()))
    }

    fn with_units(mut self, units: BTreeMap<String, i64>) -> Self {
        self.units = units;
        self
    }

    /// Equality of normalized values.
    pub fn same_as(&self, o: &EpsValue, ctx: &LocalFieldContext) -> bool {
        self.units == o.units
            && self.s_slope == o.s_slope
            && self.mono.same_as(&o.mono, ctx)
            && self.num.same_as(&o.num, ctx)
            && self.den.same_as(&o.den, ctx)
    }

    /// Value at a half-integer `s`, defined when there are no opaque units
    /// and no rational part.
    pub fn eval(&self, s: Half) -> Result<ExactScalar> {
        if !self.units.is_empty() {
            return Err(Error::OracleUndefined("epsilon carries opaque Gauss-sum units".into()));
        }
        if !self.is_monomial() {
            return Err(Error::NotMonomial);
        }
        Ok(self.mono.mul(&q_neg_product(s, self.s_slope)?))
    }

    pub fn render(&self, ctx: &LocalFieldContext) -> String {
        let mut parts: Vec<String> =
            self.units.iter().map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") }).collect();
        let mono = self.mono.canonical(ctx).render(ctx);
        if mono != "1" || parts.is_empty() {
            parts.push(mono);
        }
        if self.s_slope != Half::ZERO {
            parts.push(format!("T^{}", self.s_slope));
        }
        if !self.num.is_one() {
            parts.push(self.num.render(ctx));
        }
        let body = parts.join(" ");
        if self.den.is_one() {
            body
        } else {
            format!("{body} / [{}]", self.den.render(ctx))
        }
    }
}
