//! Dieudonné modules of special `p`-divisible modules over an unramified base,
//! with coefficients in truncated Witt vectors of a finite field.

use super::carrier::{
    elementary_divisors, mat_eq, mat_identity, mat_inverse, mat_mul, mat_scalar, mat_sigma_pow, Coeffs, KsElem,
    KsMatrix, UnramifiedContext,
};
use crate::error::{Error, Result};

/// A free module of rank `n` with a `σ^{-1}`-semilinear `V`, given by its
/// matrix on the standard basis: `V(Σ e_j c_j) = Σ_j V(e_j) σ^{-1}(c_j)`.
#[derive(Debug, Clone)]
pub struct DieudonneModule {
    ctx: UnramifiedContext,
    v: KsMatrix,
}

impl DieudonneModule {
    pub fn new(ctx: UnramifiedContext, v: KsMatrix) -> Result<Self> {
        let n = v.len();
        if n == 0 || v.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid("V must be a non-empty square matrix".into()));
        }
        Ok(DieudonneModule { ctx, v })
    }

    /// The module on `(d_1..d_h, e_1..e_{n-h})` with `V d_i = d_i`,
    /// `V e_i = e_{i+1}` and `V e_{n-h} = p e_1`.
    pub fn standard(n: usize, h: usize, ctx: UnramifiedContext) -> Result<Self> {
        if h > n || n == 0 {
            return Err(Error::Invalid(format!("need 0 <= h <= n and n >= 1, got n = {n}, h = {h}")));
        }
        let mut v: KsMatrix = vec![vec![KsElem::zero(&ctx); n]; n];
        for (i, row) in v.iter_mut().enumerate().take(h) {
            row[i] = KsElem::one(&ctx);
        }
        let formal = n - h;
        for i in 0..formal {
            let col = h + i;
            if i + 1 < formal {
                v[h + i + 1][col] = KsElem::one(&ctx);
            } else {
                v[h][col] = KsElem::p_power(1, &ctx);
            }
        }
        Ok(DieudonneModule { ctx, v })
    }

    pub fn ctx(&self) -> &UnramifiedContext {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.v.len()
    }

    pub fn v_matrix(&self) -> &KsMatrix {
        &self.v
    }

    /// `F = V^{-1} p`, as a `σ`-semilinear map: its matrix is `p σ(V^{-1})`.
    pub fn f_matrix(&self) -> Result<KsMatrix> {
        let inv = mat_inverse(&self.v, &self.ctx)?;
        let p = KsElem::p_power(1, &self.ctx);
        Ok(mat_sigma_pow(&inv, 1, &self.ctx)
            .iter()
            .map(|row| row.iter().map(|x| x.mul(&p, &self.ctx)).collect())
            .collect())
    }

    /// Whether `F` preserves the lattice (all matrix entries integral).
    pub fn f_is_integral(&self) -> Result<bool> {
        Ok(self.f_matrix()?.iter().flatten().all(|x| x.valuation().is_none_or(|v| v >= 0)))
    }

    /// `(F∘V == p, V∘F == p)`. The composite `F∘V` has matrix `F σ(V)` and
    /// `V∘F` has matrix `V σ^{-1}(F)`.
    pub fn check_fv_vf(&self) -> Result<(bool, bool)> {
        let ctx = &self.ctx;
        let f = self.f_matrix()?;
        let p = mat_scalar(self.rank(), &KsElem::p_power(1, ctx), ctx);
        let fv = mat_mul(&f, &mat_sigma_pow(&self.v, 1, ctx), ctx);
        let vf = mat_mul(&self.v, &mat_sigma_pow(&f, -1, ctx), ctx);
        Ok((mat_eq(&fv, &p, ctx), mat_eq(&vf, &p, ctx)))
    }

    /// Matrix of `V^k`: `V σ^{-1}(V) ⋯ σ^{-(k-1)}(V)`.
    pub fn v_power(&self, k: usize) -> KsMatrix {
        let ctx = &self.ctx;
        let mut acc = mat_identity(self.rank(), ctx);
        for i in 0..k {
            acc = mat_mul(&acc, &mat_sigma_pow(&self.v, -(i as i64), ctx), ctx);
        }
        acc
    }

    /// Whether `V^{n-h}` acts as `p` on the span of the last `n - h` basis
    /// vectors (the formal summand of a standard module).
    pub fn formal_power_is_p(&self, h: usize) -> bool {
        let n = self.rank();
        if h >= n {
            return true;
        }
        let ctx = &self.ctx;
        let pw = self.v_power(n - h);
        let p = KsElem::p_power(1, ctx);
        (h..n).all(|j| {
            (0..n).all(|i| {
                let want = if i == j { p.clone() } else { KsElem::zero(ctx) };
                pw[i][j].eq_to_precision(&want, ctx)
            })
        })
    }

    fn integral(&self, m: &KsMatrix) -> Result<Vec<Vec<Coeffs>>> {
        m.iter().map(|row| row.iter().map(|x| x.to_integral(&self.ctx)).collect()).collect()
    }

    /// Length of `M / VM` and its dimension over the residue field.
    pub fn cokernel_of_v(&self) -> Result<(u32, usize)> {
        let divs = elementary_divisors(&self.integral(&self.v)?, &self.ctx)?;
        Ok((divs.iter().sum(), divs.iter().filter(|&&d| d > 0).count()))
    }

    /// The étale and formal heights: the image of `V^m` on `M / p^N M` is
    /// iterated until it stops shrinking, and the étale height is the rank of
    /// that stable image.
    pub fn etale_inf_height(&self) -> Result<(usize, usize)> {
        let n = self.rank();
        let bound = n * self.ctx.precision() as usize + 2;
        let mut prev = elementary_divisors(&self.integral(&self.v_power(1))?, &self.ctx)?;
        for m in 2..=bound {
            let cur = elementary_divisors(&self.integral(&self.v_power(m))?, &self.ctx)?;
            if cur == prev {
                let etale = cur.iter().filter(|&&d| d == 0).count();
                if cur.iter().any(|&d| d != 0 && d != self.ctx.precision()) {
                    return Err(Error::InsufficientPrecision("stable image of V is not a direct summand".into()));
                }
                return Ok((etale, n - etale));
            }
            prev = cur;
        }
        Err(Error::InsufficientPrecision("image of V did not stabilise".into()))
    }

    /// The same module after the change of basis `e'_j = Σ e_i g_ij`:
    /// `V' = g^{-1} V σ^{-1}(g)`.
    pub fn change_basis(&self, g: &KsMatrix) -> Result<Self> {
        let ctx = &self.ctx;
        let gi = mat_inverse(g, ctx)?;
        let v = mat_mul(&mat_mul(&gi, &self.v, ctx), &mat_sigma_pow(g, -1, ctx), ctx);
        Ok(DieudonneModule { ctx: ctx.clone(), v })
    }

    /// Extension of scalars to a larger residue field.
    pub fn base_change(&self, big: &UnramifiedContext) -> Result<Self> {
        let image = self.ctx.embedding_into(big)?;
        let v = self
            .v
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        if x.is_zero() {
                            return KsElem::zero_to(x.precision(), big);
                        }
                        let unit = big.compose(x.unit(), &image);
                        KsElem::from_parts(x.valuation().unwrap(), unit, x.relative_precision(), big)
                    })
                    .collect()
            })
            .collect();
        Ok(DieudonneModule { ctx: big.clone(), v })
    }
}
