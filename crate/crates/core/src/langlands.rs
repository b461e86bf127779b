//! The correspondence itself: `rec` between Q-form classification data and
//! Weil–Deligne representations, the unramified (Satake) case, checks of the
//! characterising axioms, and the two-sided dictionary of properties.
//!
//! On supercuspidal atoms `rec` is the identity: the label registry plays the
//! role of the supercuspidal correspondence.

use serde::Serialize;

use crate::bzclass::{
    central_character, dualize, gl_predicates, Atom, ClassData, Form, LabelKind, LabelRegistry, Segment,
};
use crate::error::{Error, Result};
use crate::factors::adjoint_no_pole_at_one;
use crate::qexact::ExactScalar;
use crate::weildeligne::{sp_block, wd_determinant, wd_dual, wd_predicates, wd_tensor_char, WDRep};

/// `Q(Delta_1, ..., Delta_r) -> sum rec(sigma_i) (x) Sp(m_i)`.
pub fn rec_forward(c: &ClassData) -> Result<WDRep> {
    c.require_q("rec")?;
    WDRep::new(c.segments().iter().map(|s| sp_block(s.start.clone(), s.m)).collect::<Result<_>>()?)
}

pub fn rec_inverse(rho: &WDRep) -> Result<ClassData> {
    ClassData::q(rho.blocks().iter().map(|b| Segment::new(b.atom.clone(), b.m)).collect::<Result<_>>()?)
}

/// Satake parameters to unramified classification data:
/// `Q(chi_1, ..., chi_n)` with `chi_i(uniformizer) = alpha_i`.
pub fn satake_to_class(values: &[ExactScalar], reg: &LabelRegistry) -> Result<ClassData> {
    if values.is_empty() {
        return Err(Error::Invalid("need at least one Satake parameter".into()));
    }
    let segs = values
        .iter()
        .map(|v| {
            if v.is_zero() {
                return Err(Error::Invalid("Satake parameter 0".into()));
            }
            Ok(Segment::singleton(reg.unramified_atom(v)?))
        })
        .collect::<Result<_>>()?;
    ClassData::new(Form::Q, segs)
}

/// The multiset `{chi_i(uniformizer)}` of an unramified representation, in
/// the standard order of its segments.
pub fn satake_from_class(c: &ClassData, reg: &LabelRegistry) -> Result<Vec<ExactScalar>> {
    if !gl_predicates(c, reg)?.unramified {
        return Err(Error::Invalid(format!("{c} is not unramified")));
    }
    c.segments().iter().map(|s| Ok(reg.omega_at(&s.start)?.canonical(reg.ctx()))).collect()
}

/// `pi (x) chi` on classification data.
pub fn twist_class_by_char(c: &ClassData, chi: &Atom, reg: &LabelRegistry) -> Result<ClassData> {
    let segs =
        c.segments().iter().map(|s| Segment::new(reg.twist_by_char(&s.start, chi)?, s.m)).collect::<Result<_>>()?;
    ClassData::new(c.form(), segs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecAxiomReport {
    pub twist: bool,
    pub determinant: bool,
    pub contragredient: bool,
}

impl RecAxiomReport {
    pub fn all(&self) -> bool {
        self.twist && self.determinant && self.contragredient
    }
}

/// Compatibility of `rec` with twisting, determinants and contragredients.
pub fn verify_rec_axioms(c: &ClassData, chi: &Atom, reg: &LabelRegistry) -> Result<RecAxiomReport> {
    if !reg.kind(chi)?.is_char() {
        return Err(Error::Invalid(format!("`{}` is not a character", chi.label)));
    }
    let rho = rec_forward(c)?;
    let twist = rec_forward(&twist_class_by_char(c, chi, reg)?)? == wd_tensor_char(&rho, chi, reg)?;
    let determinant = wd_determinant(&rho, reg)?.same_as(&central_character(c, reg)?, reg);
    let contragredient = rec_forward(&dualize(c, reg)?)? == wd_dual(&rho, reg)?;
    Ok(RecAxiomReport { twist, determinant, contragredient })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DictionaryRow {
    pub property: &'static str,
    pub gl_side: bool,
    pub wd_side: bool,
    pub agree: bool,
}

/// GL-side predicates of `c` next to the Weil–Deligne predicates of `rec(c)`.
pub fn dictionary_report(c: &ClassData, reg: &LabelRegistry) -> Result<Vec<DictionaryRow>> {
    let gl = gl_predicates(c, reg)?;
    let rho = rec_forward(c)?;
    let wd = wd_predicates(&rho, reg)?;
    let generic_wd = adjoint_no_pole_at_one(&rho, reg)?;
    let rows = [
        ("supercuspidal<->irreducible", gl.supercuspidal, wd.irreducible),
        ("essSquareIntegrable<->indecomposable", gl.ess_square_integrable, wd.indecomposable),
        ("tempered<->boundedFrobenius", gl.tempered, wd.bounded_frobenius),
        ("generic<->adjointNoPoleAtOne", gl.generic, generic_wd),
        ("unramified<->unramified", gl.unramified, wd.unramified),
        ("iwahoriSpherical<->ikSpherical", gl.iwahori_spherical, wd.ik_spherical),
    ];
    Ok(rows
        .into_iter()
        .map(|(property, gl_side, wd_side)| DictionaryRow { property, gl_side, wd_side, agree: gl_side == wd_side })
        .collect())
}

/// Whether every atom of the classification data is an unramified character.
pub fn is_unramified_support(c: &ClassData, reg: &LabelRegistry) -> Result<bool> {
    c.segments().iter().try_fold(true, |acc, s| Ok(acc && reg.kind(&s.start)? == LabelKind::UnramifiedChar))
}
