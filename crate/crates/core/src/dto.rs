//! JSON documents for registries, classification data, Weil–Deligne
//! representations and local factors.
//!
//! Half-integers travel as `[num, den]` with `den` 1 or 2 (output always uses
//! `[twice, 2]`); scalars `c * q^(k/2)` as `{re: [n, d], im: [n, d], k}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bzclass::{Atom, ClassData, Form, InertialLabel, LabelKind, LabelRegistry, Segment};
use crate::error::{Error, Result};
use crate::factors::EpsValue;
use crate::qexact::{gauss, rat_to_pair, ExactScalar, Half, LFactor, LocalFieldContext};
use crate::weildeligne::{WDBlock, WDRep};

fn zero_pair() -> [i64; 2] {
    [0, 1]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarDoc {
    pub re: [i64; 2],
    #[serde(default = "zero_pair")]
    pub im: [i64; 2],
    #[serde(default)]
    pub k: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LabelDoc {
    pub name: String,
    pub kind: LabelKind,
    pub degree: u32,
    pub torsion: u32,
    pub conductor: u32,
    pub dual: String,
    pub omega_at_uniformizer: ScalarDoc,
    pub unit_class: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub products: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub label: String,
    pub x: [i64; 2],
}

/// A segment `(label, x, m)`, also used for Weil–Deligne blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentDoc {
    pub label: String,
    pub x: [i64; 2],
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    pub form: String,
    pub segments: Vec<SegmentDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WDRepDoc {
    pub blocks: Vec<SegmentDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDoc {
    pub a: ScalarDoc,
    pub t: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitDoc {
    pub sym: String,
    pub exp: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EpsDoc {
    pub units: Vec<UnitDoc>,
    pub mono: ScalarDoc,
    pub s_slope: [i64; 2],
    pub num: Vec<FactorDoc>,
    pub den: Vec<FactorDoc>,
}

pub fn half_from_pair(x: [i64; 2]) -> Result<Half> {
    let [n, d] = x;
    if d == 0 || (2 * n) % d != 0 {
        return Err(Error::Invalid(format!("{n}/{d} is not a half-integer")));
    }
    Ok(Half::from_twice(2 * n / d))
}

pub fn half_to_pair(h: Half) -> [i64; 2] {
    [h.twice(), 2]
}

fn rat_from_pair(x: [i64; 2]) -> Result<BigRational> {
    if x[1] == 0 {
        return Err(Error::Invalid("zero denominator".into()));
    }
    Ok(BigRational::new(BigInt::from(x[0]), BigInt::from(x[1])))
}

fn pair_from_rat(x: &BigRational) -> Result<[i64; 2]> {
    let (n, d) = rat_to_pair(x)?;
    Ok([n, d])
}

pub fn scalar_from_doc(d: &ScalarDoc) -> Result<ExactScalar> {
    Ok(ExactScalar::new(gauss(rat_from_pair(d.re)?, rat_from_pair(d.im)?), d.k))
}

/// Canonical form of the scalar, so equal scalars give equal documents.
pub fn scalar_to_doc(s: &ExactScalar, ctx: &LocalFieldContext) -> Result<ScalarDoc> {
    let c = s.canonical(ctx);
    Ok(ScalarDoc { re: pair_from_rat(&c.c.re)?, im: pair_from_rat(&c.c.im)?, k: c.k })
}

pub fn label_from_doc(d: LabelDoc) -> Result<InertialLabel> {
    Ok(InertialLabel {
        name: d.name,
        kind: d.kind,
        degree: d.degree,
        torsion: d.torsion,
        conductor: d.conductor,
        dual: d.dual,
        omega: scalar_from_doc(&d.omega_at_uniformizer)?,
        unit_class: d.unit_class,
        products: d.products,
    })
}

pub fn label_to_doc(l: &InertialLabel, ctx: &LocalFieldContext) -> Result<LabelDoc> {
    Ok(LabelDoc {
        name: l.name.clone(),
        kind: l.kind,
        degree: l.degree,
        torsion: l.torsion,
        conductor: l.conductor,
        dual: l.dual.clone(),
        omega_at_uniformizer: scalar_to_doc(&l.omega, ctx)?,
        unit_class: l.unit_class.clone(),
        products: l.products.clone(),
    })
}

pub fn registry_from_docs(ctx: LocalFieldContext, docs: Vec<LabelDoc>) -> Result<LabelRegistry> {
    let labels = docs.into_iter().map(label_from_doc).collect::<Result<Vec<_>>>()?;
    LabelRegistry::new(ctx, labels)
}

pub fn registry_to_docs(reg: &LabelRegistry) -> Result<Vec<LabelDoc>> {
    reg.declared().map(|l| label_to_doc(l, reg.ctx())).collect()
}

pub fn atom_from_doc(d: &AtomDoc) -> Result<Atom> {
    Ok(Atom::new(d.label.clone(), half_from_pair(d.x)?))
}

pub fn atom_to_doc(a: &Atom) -> AtomDoc {
    AtomDoc { label: a.label.clone(), x: half_to_pair(a.x) }
}

fn segment_from_doc(d: &SegmentDoc) -> Result<Segment> {
    Segment::new(Atom::new(d.label.clone(), half_from_pair(d.x)?), d.m)
}

pub fn class_from_doc(d: &ClassDoc) -> Result<ClassData> {
    let form = match d.form.as_str() {
        "Q" => Form::Q,
        "Z" => Form::Z,
        other => return Err(Error::Invalid(format!("unknown form `{other}`, expected Q or Z"))),
    };
    ClassData::new(form, d.segments.iter().map(segment_from_doc).collect::<Result<_>>()?)
}

pub fn class_to_doc(c: &ClassData) -> ClassDoc {
    ClassDoc {
        form: match c.form() {
            Form::Q => "Q".into(),
            Form::Z => "Z".into(),
        },
        segments: c
            .segments()
            .iter()
            .map(|s| SegmentDoc { label: s.start.label.clone(), x: half_to_pair(s.start.x), m: s.m })
            .collect(),
    }
}

pub fn wd_from_doc(d: &WDRepDoc) -> Result<WDRep> {
    WDRep::new(
        d.blocks
            .iter()
            .map(|b| Ok(WDBlock { atom: Atom::new(b.label.clone(), half_from_pair(b.x)?), m: b.m }))
            .collect::<Result<_>>()?,
    )
}

pub fn wd_to_doc(r: &WDRep) -> WDRepDoc {
    WDRepDoc {
        blocks: r
            .blocks()
            .iter()
            .map(|b| SegmentDoc { label: b.atom.label.clone(), x: half_to_pair(b.atom.x), m: b.m })
            .collect(),
    }
}

/// Canonical, sorted factor list.
pub fn lfactor_to_doc(l: &LFactor, ctx: &LocalFieldContext) -> Result<Vec<FactorDoc>> {
    l.canonical(ctx).iter().map(|(t, a)| Ok(FactorDoc { a: scalar_to_doc(a, ctx)?, t: *t })).collect()
}

pub fn lfactor_from_doc(d: &[FactorDoc]) -> Result<LFactor> {
    let mut l = LFactor::one();
    for f in d {
        l.push(scalar_from_doc(&f.a)?, f.t)?;
    }
    Ok(l)
}

pub fn eps_to_doc(e: &EpsValue, ctx: &LocalFieldContext) -> Result<EpsDoc> {
    Ok(EpsDoc {
        units: e.units.iter().map(|(sym, &exp)| UnitDoc { sym: sym.clone(), exp }).collect(),
        mono: scalar_to_doc(&e.mono, ctx)?,
        s_slope: half_to_pair(e.s_slope),
        num: lfactor_to_doc(&e.num, ctx)?,
        den: lfactor_to_doc(&e.den, ctx)?,
    })
}
