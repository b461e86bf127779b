//! Supercuspidal atoms, segments and classification data for irreducible
//! admissible representations of `GL_n`, with the combinatorial predicates
//! that live on this side of the correspondence.

mod registry;

pub use registry::{InertialLabel, LabelKind, LabelRegistry};

use std::fmt;

use crate::error::{Error, Result};
use crate::qexact::{ExactScalar, Half};

/// `pi_0 (x)`: a supercuspidal base point twisted by `|det|^x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub label: String,
    pub x: Half,
}

impl Atom {
    pub fn new(label: impl Into<String>, x: Half) -> Self {
        Atom { label: label.into(), x }
    }

    pub fn twist(&self, y: Half) -> Atom {
        Atom { label: self.label.clone(), x: self.x + y }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.label, self.x)
    }
}

/// `[pi, pi(1), ..., pi(m-1)]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub start: Atom,
    pub m: u32,
}

impl Segment {
    pub fn new(start: Atom, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("segment length must be at least 1".into()));
        }
        Ok(Segment { start, m })
    }

    pub fn singleton(start: Atom) -> Self {
        Segment { start, m: 1 }
    }

    pub fn end(&self) -> Atom {
        self.start.twist(Half::int(self.m as i64 - 1))
    }

    /// `start.x + (m - 1)/2`.
    pub fn center(&self) -> Half {
        self.start.x + Half::from_twice(self.m as i64 - 1)
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        (0..self.m as i64).map(move |j| self.start.twist(Half::int(j)))
    }

    pub fn twist(&self, y: Half) -> Segment {
        Segment { start: self.start.twist(y), m: self.m }
    }

    pub fn degree(&self, reg: &LabelRegistry) -> Result<u32> {
        Ok(reg.degree(&self.start)? * self.m)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "[{}]", self.start)
        } else {
            write!(f, "[{}..{}]", self.start, self.end())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Form {
    Q,
    Z,
}

/// `Q(segs)` or `Z(segs)`. Segments are kept sorted, so derived equality is
/// multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassData {
    form: Form,
    segs: Vec<Segment>,
}

impl ClassData {
    pub fn new(form: Form, mut segs: Vec<Segment>) -> Result<Self> {
        if segs.is_empty() {
            return Err(Error::Invalid("classification data needs at least one segment".into()));
        }
        segs.sort();
        Ok(ClassData { form, segs })
    }

    pub fn q(segs: Vec<Segment>) -> Result<Self> {
        ClassData::new(Form::Q, segs)
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn degree(&self, reg: &LabelRegistry) -> Result<u32> {
        self.segs.iter().map(|s| s.degree(reg)).sum()
    }

    /// Twists every segment by `|det|^y`.
    pub fn twist(&self, y: Half) -> ClassData {
        ClassData { form: self.form, segs: self.segs.iter().map(|s| s.twist(y)).collect() }
    }

    pub(crate) fn require_q(&self, what: &str) -> Result<()> {
        match self.form {
            Form::Q => Ok(()),
            Form::Z => Err(Error::ZFormRejected(format!("{what} needs Q-form data"))),
        }
    }
}

impl fmt::Display for ClassData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.form {
            Form::Q => "Q",
            Form::Z => "Z",
        };
        let parts: Vec<String> = self.segs.iter().map(|s| s.to_string()).collect();
        write!(f, "{tag}{{{}}}", parts.join(", "))
    }
}

pub fn atom_twist(a: &Atom, y: Half) -> Atom {
    a.twist(y)
}

pub fn dualize_atom(a: &Atom, reg: &LabelRegistry) -> Result<Atom> {
    reg.dual_atom(a)
}

/// `[pi, ..., pi(m-1)]^v = [pi(m-1)^v, ..., pi^v]`.
pub fn dualize_segment(s: &Segment, reg: &LabelRegistry) -> Result<Segment> {
    Ok(Segment { start: reg.dual_atom(&s.end())?, m: s.m })
}

pub fn dualize(c: &ClassData, reg: &LabelRegistry) -> Result<ClassData> {
    let segs = c.segs.iter().map(|s| dualize_segment(s, reg)).collect::<Result<_>>()?;
    ClassData::new(c.form, segs)
}

/// `a <= b` iff `b = a(n)` for some integer `n >= 0`.
pub fn atom_leq(a: &Atom, b: &Atom) -> bool {
    let off = b.x - a.x;
    a.label == b.label && off.is_integer() && off >= Half::ZERO
}

pub fn linked(d1: &Segment, d2: &Segment) -> bool {
    if d1.start.label != d2.start.label || !(d2.start.x - d1.start.x).is_integer() {
        return false;
    }
    let (a1, b1) = (d1.start.x, d1.end().x);
    let (a2, b2) = (d2.start.x, d2.end().x);
    let one = Half::int(1);
    let contains = (a1 <= a2 && b2 <= b1) || (a2 <= a1 && b1 <= b2);
    let union_is_interval = a2 <= b1 + one && a1 <= b2 + one;
    !contains && union_is_interval
}

pub fn precedes(d1: &Segment, d2: &Segment) -> bool {
    linked(d1, d2) && d1.start.x < d2.start.x
}

/// An ordering in which no segment precedes a later one: label name, then
/// descending start twist, then descending length.
pub fn standard_order(segs: &[Segment]) -> Vec<Segment> {
    let mut out = segs.to_vec();
    out.sort_by(|a, b| a.start.label.cmp(&b.start.label).then(b.start.x.cmp(&a.start.x)).then(b.m.cmp(&a.m)));
    out
}

/// Swaps the form tag: `t(Q(segs)) = Z(segs)`.
pub fn involution_t(c: &ClassData) -> ClassData {
    let form = match c.form {
        Form::Q => Form::Z,
        Form::Z => Form::Q,
    };
    ClassData { form, segs: c.segs.clone() }
}

/// Rewrites Z-form data in Q-form where that is known: `Z(Delta)` is `Q` of
/// the singletons of `Delta`, and `Z` of the singletons of one segment is
/// `Q(Delta)`. Q-form input is returned unchanged.
pub fn resolve_to_q(c: &ClassData) -> Result<ClassData> {
    if c.form == Form::Q {
        return Ok(c.clone());
    }
    if let [seg] = c.segs.as_slice() {
        return ClassData::q(seg.atoms().map(Segment::singleton).collect());
    }
    if c.segs.iter().all(|s| s.m == 1) {
        let mut atoms: Vec<Atom> = c.segs.iter().map(|s| s.start.clone()).collect();
        atoms.sort_by(|a, b| a.label.cmp(&b.label).then(a.x.cmp(&b.x)));
        let start = atoms[0].clone();
        let consecutive = atoms.iter().enumerate().all(|(j, a)| *a == start.twist(Half::int(j as i64)));
        if consecutive {
            return ClassData::q(vec![Segment::new(start, atoms.len() as u32)?]);
        }
    }
    Err(Error::NotResolvable(format!("{c}: no closed form for the involution of multi-segment data")))
}

/// Unrolls every segment into its atoms; sorted.
pub fn supercuspidal_support(c: &ClassData) -> Vec<Atom> {
    let mut out: Vec<Atom> = c.segs.iter().flat_map(|s| s.atoms().collect::<Vec<_>>()).collect();
    out.sort();
    out
}

#[derive(Debug, Clone)]
pub struct CentralCharData {
    /// Sorted multiset of unit-class tags.
    pub unit_classes: Vec<String>,
    pub value: ExactScalar,
}

impl CentralCharData {
    pub fn same_as(&self, o: &CentralCharData, reg: &LabelRegistry) -> bool {
        self.unit_classes == o.unit_classes && self.value.same_as(&o.value, reg.ctx())
    }
}

/// Product of the central characters over the supercuspidal support.
pub fn central_character(c: &ClassData, reg: &LabelRegistry) -> Result<CentralCharData> {
    let mut units = Vec::new();
    let mut value = ExactScalar::one();
    for a in supercuspidal_support(c) {
        units.push(reg.label(&a.label)?.unit_class.clone());
        value = value.mul(&reg.omega_at(&a)?);
    }
    units.sort();
    Ok(CentralCharData { unit_classes: units, value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlPredicates {
    pub supercuspidal: bool,
    pub ess_square_integrable: bool,
    pub square_integrable: bool,
    pub tempered: bool,
    pub generic: bool,
    pub unramified: bool,
    pub iwahori_spherical: bool,
}

/// Whether `Q(Delta)` has unitary central character.
fn segment_unitary(s: &Segment, reg: &LabelRegistry) -> Result<bool> {
    let single = ClassData::q(vec![s.clone()])?;
    Ok(central_character(&single, reg)?.value.norm_sq().is_one(reg.ctx()))
}

pub fn gl_predicates(c: &ClassData, reg: &LabelRegistry) -> Result<GlPredicates> {
    c.require_q("the GL-side predicates")?;
    let one_seg = c.segs.len() == 1;
    let mut all_unitary = true;
    for s in &c.segs {
        all_unitary &= segment_unitary(s, reg)?;
    }
    let mut unramified = true;
    let mut iwahori = true;
    for s in &c.segs {
        let unram_char = reg.kind(&s.start)? == LabelKind::UnramifiedChar;
        unramified &= unram_char && s.m == 1;
        iwahori &= unram_char;
    }
    Ok(GlPredicates {
        supercuspidal: one_seg && c.segs[0].m == 1,
        ess_square_integrable: one_seg,
        square_integrable: one_seg && all_unitary,
        tempered: all_unitary,
        generic: product_irreducible(&c.segs),
        unramified,
        iwahori_spherical: iwahori,
    })
}

/// The product of the `Q(Delta_i)` is irreducible iff no two are linked.
pub fn product_irreducible(segs: &[Segment]) -> bool {
    segs.iter().enumerate().all(|(i, a)| segs[i + 1..].iter().all(|b| !linked(a, b)))
}

/// Groups segments by the exponent `start.x + (m-1)/2`, in strictly
/// decreasing order, each group shifted back to exponent 0.
pub fn langlands_quotient_data(c: &ClassData) -> Result<Vec<(ClassData, Half)>> {
    c.require_q("the Langlands quotient decomposition")?;
    let mut exps: Vec<Half> = c.segs.iter().map(|s| s.center()).collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    exps.into_iter()
        .map(|y| {
            let group = c.segs.iter().filter(|s| s.center() == y).map(|s| s.twist(-y)).collect();
            Ok((ClassData::q(group)?, y))
        })
        .collect()
}
