//! The label registry: the finite catalogue of supercuspidal inertial classes
//! the rest of the crate computes with.
//!
//! Unramified characters need not be declared. Any unramified character is
//! written `chi(c) (x)` with `c` the canonical coefficient of its value at a
//! uniformizer (see [`ExactScalar::canonical`]), and a label named `chi(c)`
//! is synthesised on demand. Declared unramified-character labels shadow the
//! synthesised name for the same `c`.

use std::borrow::Cow;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Atom;
use crate::error::{Error, Result};
use crate::qexact::{parse_gauss, render_gauss, ExactScalar, Half, LocalFieldContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelKind {
    Symbolic,
    UnramifiedChar,
    RamifiedChar,
}

impl LabelKind {
    pub fn is_char(self) -> bool {
        !matches!(self, LabelKind::Symbolic)
    }
}

#[derive(Debug, Clone)]
pub struct InertialLabel {
    pub name: String,
    pub kind: LabelKind,
    pub degree: u32,
    /// Number of unramified characters fixing the base point.
    pub torsion: u32,
    pub conductor: u32,
    pub dual: String,
    /// Central character of the base point at a uniformizer; the value
    /// itself for unramified characters.
    pub omega: ExactScalar,
    pub unit_class: String,
    /// Twist table: character label -> label of the twisted base point.
    pub products: BTreeMap<String, String>,
}

const SYNTH_PREFIX: &str = "chi(";

fn synth_name(c: &crate::qexact::Gauss) -> String {
    format!("{SYNTH_PREFIX}{})", render_gauss(c))
}

#[derive(Debug, Clone)]
pub struct LabelRegistry {
    ctx: LocalFieldContext,
    labels: BTreeMap<String, InertialLabel>,
    /// rendered canonical coefficient -> declared unramified label
    unram: BTreeMap<String, String>,
}

impl LabelRegistry {
    /// Validates and freezes a registry.
    pub fn new(ctx: LocalFieldContext, entries: Vec<InertialLabel>) -> Result<Self> {
        let mut labels = BTreeMap::new();
        let mut unram = BTreeMap::new();
        for l in entries {
            if l.name.starts_with(SYNTH_PREFIX) {
                return Err(Error::Registry(format!("label name `{}` uses the reserved `chi(` prefix", l.name)));
            }
            if l.omega.is_zero() {
                return Err(Error::Registry(format!("label `{}` has zero central value", l.name)));
            }
            if l.degree == 0 || l.torsion == 0 {
                return Err(Error::Registry(format!("label `{}` needs positive degree and torsion", l.name)));
            }
            if l.degree % l.torsion != 0 {
                return Err(Error::Registry(format!(
                    "label `{}`: torsion {} does not divide degree {}",
                    l.name, l.torsion, l.degree
                )));
            }
            match l.kind {
                LabelKind::UnramifiedChar => {
                    if l.degree != 1 || l.torsion != 1 || l.conductor != 0 {
                        return Err(Error::Registry(format!(
                            "unramified character `{}` must have degree 1, torsion 1, conductor 0",
                            l.name
                        )));
                    }
                    let can = l.omega.canonical(&ctx);
                    if can.k != 0 || can.c != l.omega.c || l.omega.k != 0 {
                        return Err(Error::Registry(format!(
                            "unramified character `{}` has a non-canonical base value",
                            l.name
                        )));
                    }
                    let key = render_gauss(&can.c);
                    if let Some(prev) = unram.insert(key, l.name.clone()) {
                        return Err(Error::Registry(format!(
                            "labels `{prev}` and `{}` declare the same unramified character",
                            l.name
                        )));
                    }
                }
                LabelKind::RamifiedChar => {
                    if l.degree != 1 || l.torsion != 1 || l.conductor == 0 {
                        return Err(Error::Registry(format!(
                            "ramified character `{}` must have degree 1, torsion 1, positive conductor",
                            l.name
                        )));
                    }
                }
                LabelKind::Symbolic => {
                    if !l.omega.norm_sq().is_one(&ctx) {
                        return Err(Error::Registry(format!(
                            "symbolic label `{}` has a non-unitary base point",
                            l.name
                        )));
                    }
                }
            }
            if labels.insert(l.name.clone(), l.clone()).is_some() {
                return Err(Error::Registry(format!("duplicate label `{}`", l.name)));
            }
        }
        let reg = LabelRegistry { ctx, labels, unram };
        reg.validate_duals()?;
        Ok(reg)
    }

    fn validate_duals(&self) -> Result<()> {
        for l in self.labels.values() {
            let d = self
                .label(&l.dual)
                .map_err(|_| Error::Registry(format!("label `{}`: unknown dual `{}`", l.name, l.dual)))?;
            if d.dual != l.name {
                return Err(Error::Registry(format!(
                    "dual is not an involution: dual({}) = {} but dual({}) = {}",
                    l.name, l.dual, d.name, d.dual
                )));
            }
            if d.kind != l.kind || d.degree != l.degree || d.torsion != l.torsion || d.conductor != l.conductor {
                return Err(Error::Registry(format!(
                    "labels `{}` and `{}` are declared dual but differ in kind, degree, torsion or conductor",
                    l.name, d.name
                )));
            }
            if !l.omega.mul(&d.omega).equals_one(&self.ctx) {
                return Err(Error::Registry(format!(
                    "central values of `{}` and its dual `{}` are not inverse",
                    l.name, d.name
                )));
            }
            for (chi, res) in &l.products {
                self.label(chi)
                    .map_err(|_| Error::Registry(format!("label `{}`: unknown twist character `{chi}`", l.name)))?;
                self.label(res)
                    .map_err(|_| Error::Registry(format!("label `{}`: unknown twist result `{res}`", l.name)))?;
            }
        }
        Ok(())
    }

    /// Registry holding only the trivial character, named `1`.
    pub fn trivial(ctx: LocalFieldContext) -> Self {
        let one = InertialLabel {
            name: "1".into(),
            kind: LabelKind::UnramifiedChar,
            degree: 1,
            torsion: 1,
            conductor: 0,
            dual: "1".into(),
            omega: ExactScalar::one(),
            unit_class: "1".into(),
            products: BTreeMap::new(),
        };
        LabelRegistry::new(ctx, vec![one]).expect("trivial registry is valid")
    }

    pub fn ctx(&self) -> &LocalFieldContext {
        &self.ctx
    }

    pub fn declared(&self) -> impl Iterator<Item = &InertialLabel> {
        self.labels.values()
    }

    pub fn label(&self, name: &str) -> Result<Cow<'_, InertialLabel>> {
        if let Some(l) = self.labels.get(name) {
            return Ok(Cow::Borrowed(l));
        }
        let inner = name
            .strip_prefix(SYNTH_PREFIX)
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
        let c = parse_gauss(inner).ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
        if c.is_zero() {
            return Err(Error::UnknownLabel(name.to_string()));
        }
        let value = ExactScalar::new(c.clone(), 0);
        let can = value.canonical(&self.ctx);
        if can.k != 0 || can.c != c || self.unram.contains_key(&render_gauss(&c)) {
            // non-canonical spelling, or shadowed by a declared label
            return Err(Error::UnknownLabel(name.to_string()));
        }
        let dual_name = self.unram_name(&value.inv()?.canonical(&self.ctx).c);
        Ok(Cow::Owned(InertialLabel {
            name: name.to_string(),
            kind: LabelKind::UnramifiedChar,
            degree: 1,
            torsion: 1,
            conductor: 0,
            dual: dual_name,
            omega: value,
            unit_class: "1".into(),
            products: BTreeMap::new(),
        }))
    }

    fn unram_name(&self, canonical_c: &crate::qexact::Gauss) -> String {
        self.unram.get(&render_gauss(canonical_c)).cloned().unwrap_or_else(|| synth_name(canonical_c))
    }

    /// The atom `chi(c) (x)` denoting the unramified character with the given
    /// value at a uniformizer.
    pub fn unramified_atom(&self, value: &ExactScalar) -> Result<Atom> {
        if value.is_zero() {
            return Err(Error::Invalid("unramified character with value 0".into()));
        }
        let can = value.canonical(&self.ctx);
        Ok(Atom::new(self.unram_name(&can.c), Half::from_twice(-can.k)))
    }

    pub fn trivial_atom(&self) -> Atom {
        self.unramified_atom(&ExactScalar::one()).expect("1 is nonzero")
    }

    pub fn degree(&self, atom: &Atom) -> Result<u32> {
        Ok(self.label(&atom.label)?.degree)
    }

    pub fn kind(&self, atom: &Atom) -> Result<LabelKind> {
        Ok(self.label(&atom.label)?.kind)
    }

    /// Central character of the atom at a uniformizer:
    /// `omega(label) * q^(-n x)`. For characters this is the value itself.
    pub fn omega_at(&self, atom: &Atom) -> Result<ExactScalar> {
        let l = self.label(&atom.label)?;
        let n = l.degree as i64;
        Ok(l.omega.mul(&ExactScalar::q_half_power(-n * atom.x.twice())))
    }

    pub fn dual_atom(&self, atom: &Atom) -> Result<Atom> {
        let l = self.label(&atom.label)?;
        match l.kind {
            LabelKind::UnramifiedChar => self.unramified_atom(&self.omega_at(atom)?.inv()?),
            _ => Ok(Atom::new(l.dual.clone(), -atom.x)),
        }
    }

    /// Twist of an atom by a character atom.
    pub fn twist_by_char(&self, atom: &Atom, chi: &Atom) -> Result<Atom> {
        let lc = self.label(&chi.label)?;
        if !lc.kind.is_char() {
            return Err(Error::Invalid(format!("`{}` is not a character label", chi.label)));
        }
        let la = self.label(&atom.label)?;
        if lc.kind == LabelKind::UnramifiedChar {
            if la.kind == LabelKind::UnramifiedChar {
                return self.unramified_atom(&self.omega_at(atom)?.mul(&self.omega_at(chi)?));
            }
            let c = &lc.omega;
            if c.c.is_one() || c.pow(la.torsion as i64)?.equals_one(&self.ctx) {
                return Ok(atom.twist(chi.x));
            }
        }
        let via_atom = la.products.get(&chi.label);
        let via_chi = lc.products.get(&atom.label);
        match via_atom.or(via_chi) {
            Some(res) => {
                self.label(res)?;
                Ok(Atom::new(res.clone(), atom.x + chi.x))
            }
            None => Err(Error::RegistryIncomplete(format!(
                "no product label for `{}` twisted by `{}`",
                atom.label, chi.label
            ))),
        }
    }
}
