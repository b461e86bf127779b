//! Frobenius-semisimple Weil–Deligne representations, stored as multisets of
//! indecomposable blocks `rho_0 (x) Sp(m)`.
//!
//! `Sp(m)` has basis `e_0..e_{m-1}`, Frobenius eigenvalue `q^-i` on `e_i` and
//! `N e_i = e_{i+1}`. Under the SL2 dictionary this is
//! `Sym^(m-1) (x) |.|^((m-1)/2)`, which gives the Clebsch–Gordan rule used for
//! tensor products.

mod matrix;

pub use matrix::{UnramMatrixRep, VPoly};

use std::fmt;

use crate::bzclass::{Atom, CentralCharData, LabelKind, LabelRegistry};
use crate::error::{Error, Result};
use crate::qexact::{ExactScalar, Half};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WDBlock {
    pub atom: Atom,
    pub m: u32,
}

impl WDBlock {
    /// Atoms of the underlying Weil representation: `atom(0), ..., atom(m-1)`.
    pub fn unrolled(&self) -> impl Iterator<Item = Atom> + '_ {
        (0..self.m as i64).map(move |i| self.atom.twist(Half::int(i)))
    }
}

impl fmt::Display for WDBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x) Sp({})", self.atom, self.m)
    }
}

/// Blocks are kept sorted, so derived equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WDRep {
    blocks: Vec<WDBlock>,
}

impl WDRep {
    pub fn new(mut blocks: Vec<WDBlock>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Invalid("a Weil-Deligne representation needs at least one block".into()));
        }
        if blocks.iter().any(|b| b.m == 0) {
            return Err(Error::Invalid("block length must be at least 1".into()));
        }
        blocks.sort();
        Ok(WDRep { blocks })
    }

    pub fn single(block: WDBlock) -> Self {
        WDRep { blocks: vec![block] }
    }

    pub fn blocks(&self) -> &[WDBlock] {
        &self.blocks
    }

    pub fn dimension(&self, reg: &LabelRegistry) -> Result<u32> {
        self.blocks.iter().map(|b| Ok(reg.degree(&b.atom)? * b.m)).sum()
    }
}

impl fmt::Display for WDRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn sp_block(atom: Atom, m: u32) -> Result<WDBlock> {
    if m == 0 {
        return Err(Error::Invalid("Sp(m) needs m >= 1".into()));
    }
    Ok(WDBlock { atom, m })
}

pub fn direct_sum(a: &WDRep, b: &WDRep) -> WDRep {
    let mut blocks = a.blocks.clone();
    blocks.extend(b.blocks.iter().cloned());
    blocks.sort();
    WDRep { blocks }
}

pub fn wd_twist(rho: &WDRep, y: Half) -> WDRep {
    WDRep { blocks: rho.blocks.iter().map(|b| WDBlock { atom: b.atom.twist(y), m: b.m }).collect() }
}

/// `rho (x) chi` for a character atom `chi`.
pub fn wd_tensor_char(rho: &WDRep, chi: &Atom, reg: &LabelRegistry) -> Result<WDRep> {
    let blocks = rho
        .blocks
        .iter()
        .map(|b| Ok(WDBlock { atom: reg.twist_by_char(&b.atom, chi)?, m: b.m }))
        .collect::<Result<_>>()?;
    WDRep::new(blocks)
}

/// `(rho_0 (x) Sp(m))^v = rho_0^v |.|^(1-m) (x) Sp(m)`.
pub fn wd_dual(rho: &WDRep, reg: &LabelRegistry) -> Result<WDRep> {
    let blocks = rho
        .blocks
        .iter()
        .map(|b| Ok(WDBlock { atom: reg.dual_atom(&b.atom)?.twist(Half::int(1 - b.m as i64)), m: b.m }))
        .collect::<Result<_>>()?;
    WDRep::new(blocks)
}

/// Jordan type of `N`: each block contributes `m` with multiplicity `n`.
/// Sorted in decreasing order.
pub fn nilpotent_partition(rho: &WDRep, reg: &LabelRegistry) -> Result<Vec<u32>> {
    let mut parts = Vec::new();
    for b in &rho.blocks {
        for _ in 0..reg.degree(&b.atom)? {
            parts.push(b.m);
        }
    }
    parts.sort_by(|a, b| b.cmp(a));
    Ok(parts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WdPredicates {
    pub irreducible: bool,
    pub indecomposable: bool,
    pub unramified: bool,
    pub ik_spherical: bool,
    pub bounded_frobenius: bool,
}

/// Whether the `eta`-part of a block has Frobenius eigenvalues of absolute
/// value 1, where `rho_0 (x) Sp(m) = (rho_0 |.|^((m-1)/2)) (x) Sym^(m-1)`.
fn block_bounded(b: &WDBlock, reg: &LabelRegistry) -> Result<bool> {
    let shift = Half::from_twice(b.m as i64 - 1);
    match reg.kind(&b.atom)? {
        LabelKind::Symbolic => Ok(b.atom.x + shift == Half::ZERO),
        LabelKind::UnramifiedChar | LabelKind::RamifiedChar => {
            let eta = reg.omega_at(&b.atom)?.mul(&ExactScalar::abs_char_value(shift));
            Ok(eta.norm_sq().is_one(reg.ctx()))
        }
    }
}

pub fn wd_predicates(rho: &WDRep, reg: &LabelRegistry) -> Result<WdPredicates> {
    let single = rho.blocks.len() == 1;
    let mut unramified = true;
    let mut ik = true;
    let mut bounded = true;
    for b in &rho.blocks {
        let unram_char = reg.kind(&b.atom)? == LabelKind::UnramifiedChar;
        unramified &= unram_char && b.m == 1;
        ik &= unram_char;
        bounded &= block_bounded(b, reg)?;
    }
    Ok(WdPredicates {
        irreducible: single && rho.blocks[0].m == 1,
        indecomposable: single,
        unramified,
        ik_spherical: ik,
        bounded_frobenius: bounded,
    })
}

/// `Sp(a) (x) Sp(b) = sum_{j < min(a,b)} |.|^j (x) Sp(a + b - 1 - 2j)`.
pub fn clebsch_gordan(m1: u32, m2: u32) -> Vec<(u32, u32)> {
    (0..m1.min(m2)).map(|j| (j, m1 + m2 - 1 - 2 * j)).collect()
}

/// `det rho`, as unit classes and the value at Frobenius, computed block by
/// block from `det(rho_0 (x) Sp(m)) = det(rho_0)^m * det(Sp(m))^n`.
pub fn wd_determinant(rho: &WDRep, reg: &LabelRegistry) -> Result<CentralCharData> {
    let mut units = Vec::new();
    let mut value = ExactScalar::one();
    for b in &rho.blocks {
        let l = reg.label(&b.atom.label)?;
        let n = l.degree as i64;
        let m = b.m as i64;
        for _ in 0..m {
            units.push(l.unit_class.clone());
        }
        let det_rho0 = reg.omega_at(&b.atom)?;
        // det Sp(m) at Frobenius is q^(-(0 + 1 + ... + (m-1)))
        let det_sp = ExactScalar::q_half_power(-m * (m - 1));
        value = value.mul(&det_rho0.pow(m)?).mul(&det_sp.pow(n)?);
    }
    units.sort();
    Ok(CentralCharData { unit_classes: units, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::LocalFieldContext;
    use std::collections::BTreeMap;

    fn reg() -> LabelRegistry {
        let ctx = LocalFieldContext::new(3, 1, 0, 0).unwrap();
        let tau = crate::bzclass::InertialLabel {
            name: "tau".into(),
            kind: LabelKind::Symbolic,
            degree: 2,
            torsion: 1,
            conductor: 3,
            dual: "tau".into(),
            omega: ExactScalar::one(),
            unit_class: "u".into(),
            products: BTreeMap::new(),
        };
        let one = crate::bzclass::InertialLabel {
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
        LabelRegistry::new(ctx, vec![one, tau]).unwrap()
    }

    fn triv(x2: i64) -> Atom {
        Atom::new("1", Half::from_twice(x2))
    }

    fn rep(blocks: &[(Atom, u32)]) -> WDRep {
        WDRep::new(blocks.iter().map(|(a, m)| sp_block(a.clone(), *m).unwrap()).collect()).unwrap()
    }

    #[test]
    fn sp_block_examples() {
        let r = reg();
        let b = sp_block(triv(0), 1).unwrap();
        assert_eq!(WDRep::single(b).dimension(&r).unwrap(), 1);
        let sp4 = WDRep::single(sp_block(triv(0), 4).unwrap());
        assert_eq!(sp4.dimension(&r).unwrap(), 4);
        let st = wd_twist(&sp4, Half::from_twice(1 - 4));
        assert_eq!(st, rep(&[(triv(-3), 4)]));
        assert!(sp_block(triv(0), 0).is_err());
    }

    #[test]
    fn combine_examples() {
        let r = reg();
        let s2 = rep(&[(triv(0), 2)]);
        let s3 = rep(&[(triv(0), 3)]);
        assert_eq!(direct_sum(&s2, &s3), rep(&[(triv(0), 2), (triv(0), 3)]));
        assert_eq!(wd_tensor_char(&s2, &triv(0), &r).unwrap(), s2);
        assert_eq!(wd_tensor_char(&s2, &triv(2), &r).unwrap(), wd_twist(&s2, Half::int(1)));
    }

    #[test]
    fn dual_examples() {
        let r = reg();
        for n in 1..7 {
            let st = rep(&[(triv(1 - n), n as u32)]);
            assert_eq!(wd_dual(&st, &r).unwrap(), st);
        }
        let alpha = r.unramified_atom(&ExactScalar::new(crate::qexact::gauss_int(2, 0), 0)).unwrap();
        let inv = r
            .unramified_atom(&ExactScalar::new(
                crate::qexact::gauss(crate::qexact::rat(1, 2), crate::qexact::rat(0, 1)),
                0,
            ))
            .unwrap();
        assert_eq!(wd_dual(&rep(&[(alpha.clone(), 1)]), &r).unwrap(), rep(&[(inv, 1)]));
        let x = rep(&[(alpha, 3), (Atom::new("tau", Half::from_twice(3)), 2)]);
        assert_eq!(wd_dual(&wd_dual(&x, &r).unwrap(), &r).unwrap(), x);
    }

    #[test]
    fn partition_examples() {
        let r = reg();
        assert_eq!(nilpotent_partition(&rep(&[(triv(0), 5)]), &r).unwrap(), vec![5]);
        let tau = Atom::new("tau", Half::ZERO);
        assert_eq!(nilpotent_partition(&rep(&[(tau, 3)]), &r).unwrap(), vec![3, 3]);
        assert_eq!(nilpotent_partition(&rep(&[(triv(0), 1), (triv(4), 1), (triv(2), 1)]), &r).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn predicate_examples() {
        let r = reg();
        let st2 = rep(&[(triv(-1), 2)]);
        let p = wd_predicates(&st2, &r).unwrap();
        assert!(p.indecomposable && p.bounded_frobenius && !p.unramified && p.ik_spherical && !p.irreducible);
        let tau = rep(&[(Atom::new("tau", Half::ZERO), 1)]);
        assert!(wd_predicates(&tau, &r).unwrap().irreducible);
        // alpha = q: |q|^2 = q^2 != 1
        let big = r.unramified_atom(&ExactScalar::q_half_power(2)).unwrap();
        assert!(!wd_predicates(&rep(&[(big, 1)]), &r).unwrap().bounded_frobenius);
    }

    #[test]
    fn clebsch_gordan_examples() {
        assert_eq!(clebsch_gordan(1, 5), vec![(0, 5)]);
        assert_eq!(clebsch_gordan(2, 2), vec![(0, 3), (1, 1)]);
        assert_eq!(clebsch_gordan(2, 3), vec![(0, 4), (1, 2)]);
        for a in 1..7 {
            for b in 1..7 {
                let total: u32 = clebsch_gordan(a, b).iter().map(|&(_, m)| m).sum();
                assert_eq!(total, a * b);
            }
        }
    }

    #[test]
    fn determinant_of_steinberg_is_trivial() {
        let r = reg();
        for n in 1..8i64 {
            let st = rep(&[(triv(1 - n), n as u32)]);
            let det = wd_determinant(&st, &r).unwrap();
            assert!(det.value.equals_one(r.ctx()), "n = {n}");
        }
    }
}
