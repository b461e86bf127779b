//! Cyclic division algebras `K_s[Π]` with `Π^s = p^r` and `Π a = σ_K(a) Π`.

use num_integer::Integer;
use num_rational::Ratio;

use super::carrier::{det_leibniz, mat_add, mat_mul, KsElem, KsMatrix, UnramifiedContext};
use crate::error::{Error, Result};

/// The algebra with invariant `r/s` over the unramified field `K`, where `s`
/// is the degree of the context's `K_s / K`.
#[derive(Debug, Clone)]
pub struct CyclicAlgebra {
    ctx: UnramifiedContext,
    r: i64,
}

/// `Σ a_i Π^i` with left coefficients `a_i ∈ K_s`.
#[derive(Debug, Clone)]
pub struct CyclicElement {
    pub coeffs: Vec<KsElem>,
}

impl CyclicAlgebra {
    pub fn new(ctx: UnramifiedContext, r: i64) -> Result<Self> {
        let s = ctx.s() as i64;
        if r.gcd(&s) != 1 {
            return Err(Error::Invalid(format!("gcd({r}, {s}) must be 1")));
        }
        Ok(CyclicAlgebra { ctx, r })
    }

    pub fn ctx(&self) -> &UnramifiedContext {
        &self.ctx
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> usize {
        self.ctx.s() as usize
    }

    pub fn element(&self, coeffs: Vec<KsElem>) -> Result<CyclicElement> {
        if coeffs.len() != self.s() {
            return Err(Error::Invalid(format!("expected {} coefficients, got {}", self.s(), coeffs.len())));
        }
        Ok(CyclicElement { coeffs })
    }

    pub fn scalar(&self, a: KsElem) -> CyclicElement {
        let mut coeffs = vec![KsElem::zero(&self.ctx); self.s()];
        coeffs[0] = a;
        CyclicElement { coeffs }
    }

    pub fn one(&self) -> CyclicElement {
        self.scalar(KsElem::one(&self.ctx))
    }

    /// The uniformiser `Π` (equal to `p^r` when `s = 1`).
    pub fn pi(&self) -> CyclicElement {
        if self.s() == 1 {
            return self.scalar(KsElem::p_power(self.r, &self.ctx));
        }
        let mut coeffs = vec![KsElem::zero(&self.ctx); self.s()];
        coeffs[1] = KsElem::one(&self.ctx);
        CyclicElement { coeffs }
    }

    pub fn add(&self, x: &CyclicElement, y: &CyclicElement) -> CyclicElement {
        CyclicElement { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a.add(b, &self.ctx)).collect() }
    }

    pub fn mul(&self, x: &CyclicElement, y: &CyclicElement) -> CyclicElement {
        let s = self.s();
        let ctx = &self.ctx;
        let mut out = vec![KsElem::zero(ctx); s];
        for (i, a) in x.coeffs.iter().enumerate() {
            for (j, b) in y.coeffs.iter().enumerate() {
                // a Π^i b Π^j = a σ^i(b) Π^{i+j}, and Π^s = p^r is central
                let wraps = ((i + j) / s) as i64;
                let term = a.mul(&b.sigma_pow(i as i64, ctx), ctx).mul(&KsElem::p_power(self.r * wraps, ctx), ctx);
                let k = (i + j) % s;
                out[k] = out[k].add(&term, ctx);
            }
        }
        CyclicElement { coeffs: out }
    }

    pub fn pow(&self, x: &CyclicElement, e: u32) -> CyclicElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    pub fn eq_to_precision(&self, x: &CyclicElement, y: &CyclicElement) -> bool {
        x.coeffs.iter().zip(&y.coeffs).all(|(a, b)| a.eq_to_precision(b, &self.ctx))
    }

    fn pi_matrix(&self) -> KsMatrix {
        let s = self.s();
        let ctx = &self.ctx;
        (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| {
                        if i == 0 && j == s - 1 {
                            KsElem::p_power(self.r, ctx)
                        } else if i == j + 1 {
                            KsElem::one(ctx)
                        } else {
                            KsElem::zero(ctx)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `a ↦ diag(σ^{-1}(a), σ^{-2}(a), …, σ^{-s}(a))`.
    fn diag_matrix(&self, a: &KsElem) -> KsMatrix {
        let s = self.s();
        let ctx = &self.ctx;
        (0..s)
            .map(|i| {
                (0..s).map(|j| if i == j { a.sigma_pow(-(i as i64 + 1), ctx) } else { KsElem::zero(ctx) }).collect()
            })
            .collect()
    }

    /// The `s × s` matrix over `K_s` of `x`: `Π` goes to the companion-type
    /// matrix with `p^r` in the corner and `a ∈ K_s` to the diagonal of its
    /// inverse Frobenius conjugates.
    pub fn embed_matrix(&self, x: &CyclicElement) -> KsMatrix {
        let s = self.s();
        let ctx = &self.ctx;
        let pi = self.pi_matrix();
        let mut power = super::carrier::mat_identity(s, ctx);
        let mut acc: KsMatrix = vec![vec![KsElem::zero(ctx); s]; s];
        for a in &x.coeffs {
            acc = mat_add(&acc, &mat_mul(&self.diag_matrix(a), &power, ctx), ctx);
            power = mat_mul(&pi, &power, ctx);
        }
        acc
    }

    /// The four relations cutting out the image inside `M_s(K_s)`, in order:
    /// the corner diagonal entry, the interior shift, the first row and the
    /// first column.
    pub fn check_matrix_relations(&self, u: &KsMatrix) -> [bool; 4] {
        let s = self.s();
        let ctx = &self.ctx;
        let inv = |x: &KsElem| x.sigma_pow(-1, ctx);
        let pr = KsElem::p_power(self.r, ctx);
        let pmr = KsElem::p_power(-self.r, ctx);
        let corner = u[0][0].eq_to_precision(&inv(&u[s - 1][s - 1]), ctx);
        let shift = (0..s - 1).all(|i| (0..s - 1).all(|j| u[i + 1][j + 1].eq_to_precision(&inv(&u[i][j]), ctx)));
        let first_row = (0..s - 1).all(|j| u[0][j + 1].eq_to_precision(&pr.mul(&inv(&u[s - 1][j]), ctx), ctx));
        let first_col = (0..s - 1).all(|i| u[i + 1][0].eq_to_precision(&pmr.mul(&inv(&u[i][s - 1]), ctx), ctx));
        [corner, shift, first_row, first_col]
    }

    /// Reduced norm (the determinant of the matrix model, checked to be fixed
    /// by `σ_K`) and the normalised valuation `v_K(nrd) / s`.
    pub fn reduced_norm_val(&self, x: &CyclicElement) -> Result<(KsElem, Ratio<i64>)> {
        let ctx = &self.ctx;
        let nrd = det_leibniz(&self.embed_matrix(x), ctx);
        let v = nrd.valuation().ok_or_else(|| {
            Error::InsufficientPrecision(format!("reduced norm is zero modulo p^{}", nrd.precision()))
        })?;
        if !nrd.sigma_pow(1, ctx).eq_to_precision(&nrd, ctx) {
            return Err(Error::Invalid("reduced norm is not fixed by the Frobenius".into()));
        }
        Ok((nrd, Ratio::new(v, self.s() as i64)))
    }

    /// `v_D(x)`.
    pub fn valuation(&self, x: &CyclicElement) -> Result<Ratio<i64>> {
        Ok(self.reduced_norm_val(x)?.1)
    }

    pub fn random<R: rand::Rng>(&self, rng: &mut R, max_val: i64) -> CyclicElement {
        let ctx = &self.ctx;
        CyclicElement {
            coeffs: (0..self.s()).map(|_| KsElem::scaled(rng.gen_range(0..=max_val), ctx.random(rng), ctx)).collect(),
        }
    }
}

/// `inv(D) = v_D(Π) mod 1`, computed through the reduced norm of `Π`.
pub fn brauer_invariant(r: i64, s: u32, ctx: &UnramifiedContext) -> Result<Ratio<i64>> {
    let ctx = if ctx.s() == s { ctx.clone() } else { UnramifiedContext::new(ctx.p(), ctx.f(), s, ctx.precision())? };
    let alg = CyclicAlgebra::new(ctx, r)?;
    let v = alg.valuation(&alg.pi())?;
    let frac = v - v.floor();
    Ok(frac)
}
