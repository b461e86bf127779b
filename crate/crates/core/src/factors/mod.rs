//! L-factors, epsilon factors and conductors on both sides of the
//! correspondence.
//!
//! Epsilon factors are kept as
//! `units * mono * T^slope * num / den` with `T = q^-s`, where `units` are
//! opaque Gauss-sum symbols for ramified data and `num`, `den` are L-factors.

mod eps;

pub use eps::EpsValue;

use crate::bzclass::{Atom, ClassData, LabelKind, LabelRegistry, Segment};
use crate::error::{Error, Result};
use crate::qexact::{ExactScalar, Half, LFactor};
use crate::weildeligne::{clebsch_gordan, wd_dual, WDBlock, WDRep};

/// Tate's local factors of a character atom.
pub fn tate_char(chi: &Atom, reg: &LabelRegistry) -> Result<(LFactor, EpsValue)> {
    let l = reg.label(&chi.label)?;
    match l.kind {
        LabelKind::UnramifiedChar => {
            let alpha = reg.omega_at(chi)?;
            Ok((LFactor::single(alpha.clone(), 1)?, unramified_eps(&alpha, reg)?))
        }
        LabelKind::RamifiedChar => Ok((LFactor::one(), ramified_eps(chi, reg)?)),
        LabelKind::Symbolic => Err(Error::Invalid(format!("`{}` is not a character", chi.label))),
    }
}

/// `alpha^n(psi) q^n(psi) q^(-d/2)`, slope `n(psi)`.
fn unramified_eps(alpha: &ExactScalar, reg: &LabelRegistry) -> Result<EpsValue> {
    let ctx = reg.ctx();
    let n_psi = ctx.n_psi();
    let mono = alpha.pow(n_psi)?.mul(&ExactScalar::q_half_power(2 * n_psi - ctx.d()));
    Ok(EpsValue::monomial(mono, Half::int(n_psi)))
}

/// Opaque unit `g(label)` with slope `f + n n(psi)`; a twist `|.|^x` moves
/// `s` to `s + x`.
fn ramified_eps(atom: &Atom, reg: &LabelRegistry) -> Result<EpsValue> {
    let l = reg.label(&atom.label)?;
    let slope = l.conductor as i64 + l.degree as i64 * reg.ctx().n_psi();
    let mut e = EpsValue::monomial(ExactScalar::q_half_power(-atom.x.twice() * slope), Half::int(slope));
    e.add_unit(&format!("g({})", atom.label), 1);
    Ok(e)
}

/// `L(pi x pi', s)` for supercuspidal atoms: the product of `L(chi, s)` over
/// unramified `chi` with `chi pi'^v = pi`.
pub fn pair_l_supercuspidal(a: &Atom, b: &Atom, reg: &LabelRegistry) -> Result<LFactor> {
    let la = reg.label(&a.label)?;
    let lb = reg.label(&b.label)?;
    if la.kind == LabelKind::UnramifiedChar && lb.kind == LabelKind::UnramifiedChar {
        return LFactor::single(reg.omega_at(a)?.mul(&reg.omega_at(b)?), 1);
    }
    if lb.dual != la.name || la.kind == LabelKind::UnramifiedChar || lb.kind == LabelKind::UnramifiedChar {
        return Ok(LFactor::one());
    }
    let t = la.torsion;
    LFactor::single(ExactScalar::q_half_power(-(t as i64) * (a.x + b.x).twice()), t)
}

/// `det(1 - T Phi | V^I_N)^-1`.
pub fn wd_l_factor(rho: &WDRep, reg: &LabelRegistry) -> Result<LFactor> {
    let mut l = LFactor::one();
    for b in rho.blocks() {
        if reg.kind(&b.atom)? == LabelKind::UnramifiedChar {
            let top = b.atom.twist(Half::int(b.m as i64 - 1));
            l.push(reg.omega_at(&top)?, 1)?;
        }
    }
    Ok(l)
}

/// `L(rho1 (x) rho2, s)` via Clebsch–Gordan on every pair of blocks.
pub fn wd_pair_l(r1: &WDRep, r2: &WDRep, reg: &LabelRegistry) -> Result<LFactor> {
    let mut l = LFactor::one();
    for b1 in r1.blocks() {
        for b2 in r2.blocks() {
            let base = pair_l_supercuspidal(&b1.atom, &b2.atom, reg)?;
            if base.is_one() {
                continue;
            }
            for (j, big_m) in clebsch_gordan(b1.m, b2.m) {
                l = l.mul(&base.shift(Half::int(j as i64 + big_m as i64 - 1)));
            }
        }
    }
    Ok(l)
}

fn ordered_pair<'a>(d1: &'a Segment, d2: &'a Segment) -> (&'a Segment, &'a Segment) {
    if d1.m <= d2.m {
        (d1, d2)
    } else {
        (d2, d1)
    }
}

/// GL-side pair L-factor from the inductive relations: symmetry, additivity
/// over segments, and for segments of lengths `r <= r'`
/// `prod_{i=1}^r L(sigma x sigma', s + r + r' - 1 - i)`.
pub fn gl_pair_l_inductive(c1: &ClassData, c2: &ClassData, reg: &LabelRegistry) -> Result<LFactor> {
    c1.require_q("pair factors")?;
    c2.require_q("pair factors")?;
    let mut l = LFactor::one();
    for d1 in c1.segments() {
        for d2 in c2.segments() {
            let (short, long) = ordered_pair(d1, d2);
            let base = pair_l_supercuspidal(&short.start, &long.start, reg)?;
            if base.is_one() {
                continue;
            }
            let (r, r2) = (short.m as i64, long.m as i64);
            for i in 1..=r {
                l = l.mul(&base.shift(Half::int(r + r2 - 1 - i)));
            }
        }
    }
    Ok(l)
}

/// `eps(rho, psi, s)`: the epsilon factor of the Weil part `prod_i eps(atom(i))`
/// times `det(-Phi | V^I / V^I_N)`.
pub fn wd_eps(rho: &WDRep, reg: &LabelRegistry) -> Result<EpsValue> {
    let mut e = EpsValue::one();
    for b in rho.blocks() {
        e = e.mul(&block_eps(b, reg)?);
    }
    Ok(e)
}

fn block_eps(b: &WDBlock, reg: &LabelRegistry) -> Result<EpsValue> {
    let mut e = EpsValue::one();
    let unram = reg.kind(&b.atom)? == LabelKind::UnramifiedChar;
    for a in b.unrolled() {
        let part = if unram { unramified_eps(&reg.omega_at(&a)?, reg)? } else { ramified_eps(&a, reg)? };
        e = e.mul(&part);
    }
    if unram {
        let mut det = ExactScalar::one();
        for a in b.unrolled().take(b.m as usize - 1) {
            det = det.mul(&reg.omega_at(&a)?.neg());
        }
        e = e.mul(&EpsValue::monomial(det, Half::ZERO));
    }
    Ok(e)
}

/// Cancels numerator against denominator; fails unless everything cancels.
pub fn eps_normalize(e: &EpsValue, reg: &LabelRegistry) -> Result<EpsValue> {
    e.normalize(reg.ctx())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConductorMode {
    Artin,
    EpsDegree,
}

/// Conductor of a Weil–Deligne representation. `Artin` counts
/// `dim V/V^I + dim V^I/V^I_N`; `EpsDegree` reads it off the `s`-slope of
/// `wd_eps`. The two agree on sums of irreducibles.
pub fn conductor(rho: &WDRep, reg: &LabelRegistry, mode: ConductorMode) -> Result<Half> {
    match mode {
        ConductorMode::Artin => {
            let mut f = 0i64;
            for b in rho.blocks() {
                let l = reg.label(&b.atom.label)?;
                let m = b.m as i64;
                let d_i = if l.kind == LabelKind::UnramifiedChar { 1 } else { 0 };
                f += m * l.conductor as i64 + (m - 1) * d_i;
            }
            Ok(Half::int(f))
        }
        ConductorMode::EpsDegree => {
            let dim = rho.dimension(reg)? as i64;
            Ok(wd_eps(rho, reg)?.s_slope - Half::int(dim * reg.ctx().n_psi()))
        }
    }
}

/// Whether `L(s, Ad o rho) = L(rho (x) rho^v, s)` is regular at `s = 1`.
pub fn adjoint_no_pole_at_one(rho: &WDRep, reg: &LabelRegistry) -> Result<bool> {
    let l = wd_pair_l(rho, &wd_dual(rho, reg)?, reg)?;
    Ok(!l.pole_at(Half::int(1), reg.ctx()).0)
}

/// `rho1 (x) rho2` when one side consists of character blocks, via
/// Clebsch–Gordan. Other tensor products are not modelled as blocks.
pub fn wd_tensor(r1: &WDRep, r2: &WDRep, reg: &LabelRegistry) -> Result<WDRep> {
    let chars = |r: &WDRep| -> Result<bool> {
        r.blocks().iter().try_fold(true, |acc, b| Ok(acc && reg.kind(&b.atom)?.is_char()))
    };
    let (big, small) = if chars(r2)? {
        (r1, r2)
    } else if chars(r1)? {
        (r2, r1)
    } else {
        return Err(Error::OracleUndefined("tensor product of two non-character representations".into()));
    };
    let mut blocks = Vec::new();
    for b in big.blocks() {
        for c in small.blocks() {
            let base = reg.twist_by_char(&b.atom, &c.atom)?;
            for (j, big_m) in clebsch_gordan(b.m, c.m) {
                blocks.push(WDBlock { atom: base.twist(Half::int(j as i64)), m: big_m });
            }
        }
    }
    WDRep::new(blocks)
}

/// The inductive epsilon relation for segment pairs exactly as printed,
/// evaluated for unramified-character segments. This is a diagnostic: it is
/// compared with the Weil–Deligne side, not trusted.
pub fn gl_pair_eps_printed(c1: &ClassData, c2: &ClassData, reg: &LabelRegistry) -> Result<EpsValue> {
    c1.require_q("pair factors")?;
    c2.require_q("pair factors")?;
    let mut e = EpsValue::one();
    for d1 in c1.segments() {
        for d2 in c2.segments() {
            e = e.mul(&segment_pair_eps_printed(d1, d2, reg)?);
        }
    }
    Ok(e)
}

fn segment_pair_eps_printed(d1: &Segment, d2: &Segment, reg: &LabelRegistry) -> Result<EpsValue> {
    let (short, long) = ordered_pair(d1, d2);
    let (sigma, sigma2) = (&short.start, &long.start);
    for a in [sigma, sigma2] {
        if reg.kind(a)? != LabelKind::UnramifiedChar {
            return Err(Error::OracleUndefined(
                "printed epsilon relation is only evaluated on unramified characters".into(),
            ));
        }
    }
    let prod = reg.omega_at(sigma)?.mul(&reg.omega_at(sigma2)?);
    let base_eps = unramified_eps(&prod, reg)?;
    let base_l = pair_l_supercuspidal(sigma, sigma2, reg)?;
    let dual_l = pair_l_supercuspidal(&reg.dual_atom(sigma)?, &reg.dual_atom(sigma2)?, reg)?;
    let (r, r2) = (short.m as i64, long.m as i64);
    let mut e = EpsValue::one();
    for i in 1..=r {
        for j in 0..=(r + r2 - 2 * i) {
            e = e.mul(&base_eps.shift(Half::int(i + j - 1))?);
        }
        for j in 0..=(r + r2 - 2 * i - 1) {
            e = e.mul(&EpsValue::reflected_l(&dual_l, Half::int(-i - j))?);
            e = e.div_l(&base_l.shift(Half::int(i + j - 1)));
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests;
