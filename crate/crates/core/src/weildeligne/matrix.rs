//! Explicit matrices for Weil–Deligne representations with unramified
//! Weil part. Entries of the Frobenius are Laurent polynomials in a formal
//! `v` standing for `q^(1/2)`, so half-integral twists stay exact; `N` is
//! rational. This is an independent route to L- and epsilon-data used to
//! check the structural formulas.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::WDRep;
use crate::bzclass::{LabelKind, LabelRegistry};
use crate::error::{Error, Result};
use crate::qexact::{render_gauss, ExactScalar, Gauss, LFactor};

/// Laurent polynomial in `v` with Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VPoly {
    terms: BTreeMap<i64, Gauss>,
}

impl VPoly {
    pub fn zero() -> Self {
        VPoly::default()
    }

    pub fn monomial(c: Gauss, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        VPoly { terms }
    }

    pub fn from_scalar(s: &ExactScalar) -> Self {
        VPoly::monomial(s.c.clone(), s.k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &VPoly) -> VPoly {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let e = terms.entry(*k).or_insert_with(Gauss::zero);
            *e = &*e + c;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        VPoly { terms }
    }

    pub fn mul(&self, o: &VPoly) -> VPoly {
        let mut out = VPoly::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                out = out.add(&VPoly::monomial(c1 * c2, k1 + k2));
            }
        }
        out
    }

    pub fn scale(&self, r: &BigRational) -> VPoly {
        if r.is_zero() {
            return VPoly::zero();
        }
        VPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.scale(r.clone()))).collect() }
    }

    pub fn shift(&self, dk: i64) -> VPoly {
        VPoly { terms: self.terms.iter().map(|(k, c)| (k + dk, c.clone())).collect() }
    }

    pub fn as_monomial(&self) -> Option<ExactScalar> {
        match self.terms.iter().collect::<Vec<_>>().as_slice() {
            [(k, c)] => Some(ExactScalar::new((*c).clone(), **k)),
            _ => None,
        }
    }
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => render_gauss(c),
                _ => format!("({})v^{k}", render_gauss(c)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone)]
pub struct UnramMatrixRep {
    pub frobenius: Vec<Vec<VPoly>>,
    pub nilpotent: Vec<Vec<BigRational>>,
}

impl UnramMatrixRep {
    pub fn dim(&self) -> usize {
        self.frobenius.len()
    }

    /// Block-diagonal assembly: `Phi e_i = alpha q^-i e_i`, `N e_i = e_{i+1}`.
    pub fn from_wd(rho: &WDRep, reg: &LabelRegistry) -> Result<Self> {
        let mut diag = Vec::new();
        let mut shifts = Vec::new();
        for b in rho.blocks() {
            if reg.kind(&b.atom)? != LabelKind::UnramifiedChar {
                return Err(Error::OracleUndefined(format!("`{}` is not an unramified character", b.atom.label)));
            }
            let alpha = reg.omega_at(&b.atom)?;
            let base = diag.len();
            for i in 0..b.m as i64 {
                diag.push(VPoly::from_scalar(&alpha).shift(-2 * i));
                if i + 1 < b.m as i64 {
                    shifts.push((base + i as usize + 1, base + i as usize));
                }
            }
        }
        let n = diag.len();
        let mut frobenius = vec![vec![VPoly::zero(); n]; n];
        for (i, d) in diag.into_iter().enumerate() {
            frobenius[i][i] = d;
        }
        let mut nilpotent = vec![vec![BigRational::zero(); n]; n];
        for (row, col) in shifts {
            nilpotent[row][col] = BigRational::one();
        }
        Ok(UnramMatrixRep { frobenius, nilpotent })
    }

    /// Kronecker product, `N = N1 (x) 1 + 1 (x) N2`.
    pub fn tensor(&self, o: &UnramMatrixRep) -> UnramMatrixRep {
        let (n1, n2) = (self.dim(), o.dim());
        let n = n1 * n2;
        let mut frobenius = vec![vec![VPoly::zero(); n]; n];
        let mut nilpotent = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n1 {
            for j in 0..n2 {
                for k in 0..n1 {
                    for l in 0..n2 {
                        let (r, c) = (i * n2 + j, k * n2 + l);
                        frobenius[r][c] = self.frobenius[i][k].mul(&o.frobenius[j][l]);
                        let mut v = BigRational::zero();
                        if j == l {
                            v += &self.nilpotent[i][k];
                        }
                        if i == k {
                            v += &o.nilpotent[j][l];
                        }
                        nilpotent[r][c] = v;
                    }
                }
            }
        }
        UnramMatrixRep { frobenius, nilpotent }
    }

    fn mat_mul_phi_n(&self, phi_left: bool) -> Vec<Vec<VPoly>> {
        let n = self.dim();
        let mut out = vec![vec![VPoly::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = VPoly::zero();
                for k in 0..n {
                    let term = if phi_left {
                        self.frobenius[i][k].scale(&self.nilpotent[k][j])
                    } else {
                        self.frobenius[k][j].scale(&self.nilpotent[i][k])
                    };
                    acc = acc.add(&term);
                }
                out[i][j] = acc;
            }
        }
        out
    }

    /// The Weil–Deligne relation at a geometric Frobenius:
    /// `Phi N Phi^-1 = q^-1 N`, checked as `q Phi N = N Phi` with `q = v^2`.
    pub fn satisfies_wd_relation(&self) -> bool {
        let lhs = self.mat_mul_phi_n(true);
        let rhs = self.mat_mul_phi_n(false);
        lhs.iter().zip(&rhs).all(|(a, b)| a.iter().zip(b).all(|(x, y)| x.shift(2) == *y))
    }

    /// Nullspace of `N`: the free columns of its reduced echelon form, and
    /// one basis vector per free column (1 there, 0 on other free columns).
    fn kernel(&self) -> (Vec<usize>, Vec<Vec<BigRational>>) {
        let n = self.dim();
        let mut a = self.nilpotent.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(row, p);
            let inv = a[row][col].recip();
            for c in 0..n {
                a[row][c] = &a[row][c] * &inv;
            }
            for r in 0..n {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in 0..n {
                        let sub = &factor * &a[row][c];
                        a[r][c] -= sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); n];
                v[f] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[r][f].clone();
                }
                v
            })
            .collect();
        (free, basis)
    }

    /// Matrix of `Phi` on `ker N` in the echelon basis.
    fn frobenius_on_kernel(&self) -> Vec<Vec<VPoly>> {
        let (free, basis) = self.kernel();
        let n = self.dim();
        let k = free.len();
        let mut out = vec![vec![VPoly::zero(); k]; k];
        for (j, b) in basis.iter().enumerate() {
            // Phi b is again in ker N, so its free coordinates determine it.
            for (i, &g) in free.iter().enumerate() {
                let mut acc = VPoly::zero();
                for c in 0..n {
                    acc = acc.add(&self.frobenius[g][c].scale(&b[c]));
                }
                out[i][j] = acc;
            }
        }
        out
    }

    fn triangular_eigenvalues(m: &[Vec<VPoly>]) -> Result<Vec<ExactScalar>> {
        let n = m.len();
        let upper = (0..n).all(|i| (0..i).all(|j| m[i][j].is_zero()));
        let lower = (0..n).all(|i| (i + 1..n).all(|j| m[i][j].is_zero()));
        if !upper && !lower {
            return Err(Error::OracleUndefined("Frobenius is not triangular".into()));
        }
        (0..n)
            .map(|i| {
                m[i][i]
                    .as_monomial()
                    .ok_or_else(|| Error::OracleUndefined("eigenvalue outside the scalar model".into()))
            })
            .collect()
    }

    pub fn frobenius_eigenvalues(&self) -> Result<Vec<ExactScalar>> {
        Self::triangular_eigenvalues(&self.frobenius)
    }

    /// `det(1 - T Phi | ker N)^-1`.
    pub fn matrix_l(&self) -> Result<LFactor> {
        let mut l = LFactor::one();
        for a in Self::triangular_eigenvalues(&self.frobenius_on_kernel())? {
            l.push(a, 1)?;
        }
        Ok(l)
    }

    /// `det(-Phi | V / ker N)`.
    pub fn matrix_eps_det(&self) -> Result<ExactScalar> {
        let all = self.frobenius_eigenvalues()?;
        let ker = Self::triangular_eigenvalues(&self.frobenius_on_kernel())?;
        let mut det = ExactScalar::one();
        for a in &all {
            det = det.mul(&a.neg());
        }
        for a in &ker {
            det = det.div(&a.neg())?;
        }
        Ok(det)
    }

    pub fn render_frobenius(&self) -> Vec<Vec<String>> {
        self.frobenius.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
    }

    pub fn render_nilpotent(&self) -> Vec<Vec<String>> {
        self.nilpotent.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bzclass::Atom;
    use crate::qexact::{Half, LocalFieldContext};
    use crate::weildeligne::{sp_block, WDRep};

    fn reg(p: u64) -> LabelRegistry {
        LabelRegistry::trivial(LocalFieldContext::new(p, 1, 0, 0).unwrap())
    }

    fn sp(m: u32) -> WDRep {
        WDRep::single(sp_block(Atom::new("1", Half::ZERO), m).unwrap())
    }

    #[test]
    fn sp_matrix_l_and_det() {
        let r = reg(3);
        let ctx = r.ctx();
        for m in 1..7u32 {
            let rep = UnramMatrixRep::from_wd(&sp(m), &r).unwrap();
            assert!(rep.satisfies_wd_relation());
            let l = rep.matrix_l().unwrap();
            let expect = LFactor::single(ExactScalar::q_half_power(2 * (1 - m as i64)), 1).unwrap();
            assert!(l.same_as(&expect, ctx), "m = {m}");
        }
        let sp2 = UnramMatrixRep::from_wd(&sp(2), &r).unwrap();
        assert!(sp2.matrix_eps_det().unwrap().same_as(&ExactScalar::one().neg(), ctx));
        let triv = UnramMatrixRep::from_wd(&sp(1), &r).unwrap();
        assert!(triv.matrix_eps_det().unwrap().equals_one(ctx));
        assert!(triv.matrix_l().unwrap().same_as(&LFactor::single(ExactScalar::one(), 1).unwrap(), ctx));
    }

    #[test]
    fn tensor_of_sp2_with_itself() {
        let r = reg(5);
        let a = UnramMatrixRep::from_wd(&sp(2), &r).unwrap();
        let t = a.tensor(&a);
        assert_eq!(t.dim(), 4);
        assert!(t.satisfies_wd_relation());
        let mut expect = LFactor::one();
        expect.push(ExactScalar::q_half_power(-2), 1).unwrap();
        expect.push(ExactScalar::q_half_power(-4), 1).unwrap();
        assert!(t.matrix_l().unwrap().same_as(&expect, r.ctx()));
    }

    #[test]
    fn symbolic_blocks_have_no_matrix_model() {
        let ctx = LocalFieldContext::new(3, 1, 0, 0).unwrap();
        let tau = crate::bzclass::InertialLabel {
            name: "tau".into(),
            kind: LabelKind::Symbolic,
            degree: 2,
            torsion: 1,
            conductor: 1,
            dual: "tau".into(),
            omega: ExactScalar::one(),
            unit_class: "u".into(),
            products: Default::default(),
        };
        let r = LabelRegistry::new(ctx, vec![tau]).unwrap();
        let rho = WDRep::single(sp_block(Atom::new("tau", Half::ZERO), 1).unwrap());
        assert!(matches!(UnramMatrixRep::from_wd(&rho, &r), Err(Error::OracleUndefined(_))));
    }

    #[test]
    fn vpoly_render() {
        let p = VPoly::monomial(crate::qexact::gauss_int(1, 0), -2)
            .add(&VPoly::monomial(crate::qexact::gauss_int(3, 0), 0));
        assert_eq!(p.to_string(), "(1)v^-2 + 3");
        assert!(p.as_monomial().is_none());
    }
}
