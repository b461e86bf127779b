use std::io::Read;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use llc_core::bzclass::{dualize, gl_predicates, involution_t, resolve_to_q};
use llc_core::cyclicalg::{brauer_invariant, mat_eq, mat_mul, KsMatrix};
use llc_core::dto::{self, AtomDoc, ClassDoc, LabelDoc, ScalarDoc, WDRepDoc};
use llc_core::factors::{conductor, eps_normalize, gl_pair_l_inductive, wd_eps, wd_l_factor, wd_pair_l};
use llc_core::langlands::{
    dictionary_report, rec_forward, rec_inverse, satake_from_class, satake_to_class, verify_rec_axioms,
};
use llc_core::weildeligne::{wd_dual, wd_predicates};
use llc_core::wittring::check_relations;
use llc_core::{
    ClassData, CoeffRing, ConductorMode, CyclicAlgebra, CyclicElement, DieudonneModule, Error, Form, KsElem,
    LabelRegistry, LocalFieldContext, UnramifiedContext, WDRep, WittContext,
};

use crate::error::{CliError, CliResult};
use crate::{Cli, Command, Direction, Mode};

/// Either side of the correspondence, told apart by its keys.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RepDoc {
    Class(ClassDoc),
    Wd(WDRepDoc),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    left: RepDoc,
    right: RepDoc,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyDoc {
    class: ClassDoc,
    chi: AtomDoc,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WittDoc {
    op: String,
    x: Vec<String>,
    #[serde(default)]
    y: Option<Vec<String>>,
}

/// A coefficient of `K_s`: an integral element as its `θ`-coordinates, or
/// `p^val · unit`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum KsDoc {
    Integral(Vec<i64>),
    Scaled { val: i64, unit: Vec<i64> },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SkewDoc {
    #[serde(default)]
    x: Option<Vec<KsDoc>>,
    #[serde(default)]
    y: Option<Vec<KsDoc>>,
}

pub fn run(cli: &Cli) -> CliResult<Value> {
    match &cli.command {
        Command::Rec => {
            let c = class(&payload::<ClassDoc>(cli)?)?;
            to_value(dto::wd_to_doc(&rec_forward(&c)?))
        }
        Command::RecInverse => {
            let rho = dto::wd_from_doc(&payload::<WDRepDoc>(cli)?)?;
            to_value(dto::class_to_doc(&rec_inverse(&rho)?))
        }
        Command::Satake { direction } => satake(cli, *direction),
        Command::Lfactor => {
            let reg = registry(cli)?;
            let rho = as_wd(&payload::<RepDoc>(cli)?)?;
            factor_doc(&wd_l_factor(&rho, &reg)?, &reg)
        }
        Command::LfactorPair => {
            let reg = registry(cli)?;
            let pair = payload::<PairDoc>(cli)?;
            let l = match (&pair.left, &pair.right) {
                (RepDoc::Class(a), RepDoc::Class(b)) => gl_pair_l_inductive(&class(a)?, &class(b)?, &reg)?,
                (a, b) => wd_pair_l(&as_wd(a)?, &as_wd(b)?, &reg)?,
            };
            factor_doc(&l, &reg)
        }
        Command::Eps => {
            let reg = registry(cli)?;
            let rho = as_wd(&payload::<RepDoc>(cli)?)?;
            let e = wd_eps(&rho, &reg)?;
            let normalized = match eps_normalize(&e, &reg) {
                Ok(n) => to_value(dto::eps_to_doc(&n, reg.ctx())?)?,
                Err(Error::NotMonomial) => Value::Null,
                Err(err) => return Err(err.into()),
            };
            Ok(json!({
                "eps": to_value(dto::eps_to_doc(&e, reg.ctx())?)?,
                "rendered": e.render(reg.ctx()),
                "normalized": normalized,
            }))
        }
        Command::Conductor { mode } => {
            let reg = registry(cli)?;
            let rho = as_wd(&payload::<RepDoc>(cli)?)?;
            let (mode, name) = match mode {
                Mode::Artin => (ConductorMode::Artin, "artin"),
                Mode::EpsDegree => (ConductorMode::EpsDegree, "eps-degree"),
            };
            let a = conductor(&rho, &reg, mode)?;
            Ok(json!({ "mode": name, "conductor": dto::half_to_pair(a) }))
        }
        Command::Dictionary => {
            let reg = registry(cli)?;
            let c = class(&payload::<ClassDoc>(cli)?)?;
            to_value(dictionary_report(&c, &reg)?)
        }
        Command::Involution { resolve } => {
            let c = class(&payload::<ClassDoc>(cli)?)?;
            let t = involution_t(&c);
            let out = if *resolve { resolve_to_q(&t)? } else { t };
            to_value(dto::class_to_doc(&out))
        }
        Command::Dual => {
            let reg = registry(cli)?;
            match payload::<RepDoc>(cli)? {
                RepDoc::Class(d) => to_value(dto::class_to_doc(&dualize(&class(&d)?, &reg)?)),
                RepDoc::Wd(d) => to_value(dto::wd_to_doc(&wd_dual(&dto::wd_from_doc(&d)?, &reg)?)),
            }
        }
        Command::ClassifyPredicates => {
            let reg = registry(cli)?;
            match payload::<RepDoc>(cli)? {
                RepDoc::Class(d) => {
                    let g = gl_predicates(&class(&d)?, &reg)?;
                    Ok(json!({
                        "side": "gl",
                        "supercuspidal": g.supercuspidal,
                        "essSquareIntegrable": g.ess_square_integrable,
                        "squareIntegrable": g.square_integrable,
                        "tempered": g.tempered,
                        "generic": g.generic,
                        "unramified": g.unramified,
                        "iwahoriSpherical": g.iwahori_spherical,
                    }))
                }
                RepDoc::Wd(d) => {
                    let w = wd_predicates(&dto::wd_from_doc(&d)?, &reg)?;
                    Ok(json!({
                        "side": "wd",
                        "irreducible": w.irreducible,
                        "indecomposable": w.indecomposable,
                        "unramified": w.unramified,
                        "ikSpherical": w.ik_spherical,
                        "boundedFrobenius": w.bounded_frobenius,
                    }))
                }
            }
        }
        Command::Verify => {
            let reg = registry(cli)?;
            let doc = payload::<VerifyDoc>(cli)?;
            let report = verify_rec_axioms(&class(&doc.class)?, &dto::atom_from_doc(&doc.chi)?, &reg)?;
            let mut out = to_value(report)?;
            out["all"] = json!(report.all());
            Ok(out)
        }
        Command::Witt { length, ring } => witt(cli, *length, ring),
        Command::Skewfield { r, s } => skewfield(cli, *r, *s),
        Command::Dieudonne { rank, etale_height, degree } => dieudonne(cli, *rank, *etale_height, *degree),
    }
}

fn require_p(cli: &Cli) -> CliResult<u64> {
    cli.p.ok_or_else(|| CliError::Usage("--p is required for this command".into()))
}

fn field(cli: &Cli) -> CliResult<LocalFieldContext> {
    Ok(LocalFieldContext::new(require_p(cli)?, cli.f, cli.d, cli.npsi)?)
}

fn registry(cli: &Cli) -> CliResult<LabelRegistry> {
    let ctx = field(cli)?;
    match &cli.registry {
        None => Ok(LabelRegistry::trivial(ctx)),
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let docs: Vec<LabelDoc> = serde_json::from_str(&text)?;
            Ok(dto::registry_from_docs(ctx, docs)?)
        }
    }
}

fn read_input(cli: &Cli) -> CliResult<String> {
    match cli.input.as_deref() {
        None | Some("-") => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
        Some(path) => Ok(std::fs::read_to_string(path)?),
    }
}

fn payload<T: DeserializeOwned>(cli: &Cli) -> CliResult<T> {
    Ok(serde_json::from_str(&read_input(cli)?)?)
}

fn to_value<T: serde::Serialize>(x: T) -> CliResult<Value> {
    Ok(serde_json::to_value(x)?)
}

fn class(d: &ClassDoc) -> CliResult<ClassData> {
    Ok(dto::class_from_doc(d)?)
}

/// Classification data go through `rec`, resolving Z-form input first.
fn as_wd(d: &RepDoc) -> CliResult<WDRep> {
    match d {
        RepDoc::Wd(w) => Ok(dto::wd_from_doc(w)?),
        RepDoc::Class(c) => {
            let c = class(c)?;
            let c = if c.form() == Form::Z { resolve_to_q(&c)? } else { c };
            Ok(rec_forward(&c)?)
        }
    }
}

fn factor_doc(l: &llc_core::LFactor, reg: &LabelRegistry) -> CliResult<Value> {
    Ok(json!({
        "factors": to_value(dto::lfactor_to_doc(l, reg.ctx())?)?,
        "rendered": l.render(reg.ctx()),
    }))
}

fn satake(cli: &Cli, direction: Direction) -> CliResult<Value> {
    let reg = registry(cli)?;
    match direction {
        Direction::ToWd => {
            let docs = payload::<Vec<ScalarDoc>>(cli)?;
            let values = docs.iter().map(dto::scalar_from_doc).collect::<llc_core::Result<Vec<_>>>()?;
            let c = satake_to_class(&values, &reg)?;
            let rho = rec_forward(&c)?;
            Ok(json!({
                "class": to_value(dto::class_to_doc(&c))?,
                "wd": to_value(dto::wd_to_doc(&rho))?,
            }))
        }
        Direction::FromRep => {
            let c = class(&payload::<ClassDoc>(cli)?)?;
            let values = satake_from_class(&c, &reg)?;
            let docs = values.iter().map(|v| dto::scalar_to_doc(v, reg.ctx())).collect::<llc_core::Result<Vec<_>>>()?;
            let rendered: Vec<String> = values.iter().map(|v| v.render(reg.ctx())).collect();
            Ok(json!({ "parameters": to_value(docs)?, "rendered": rendered }))
        }
    }
}

fn parse_ring(name: &str, p: u64) -> CliResult<CoeffRing> {
    let bad = || CliError::Usage(format!("unknown ring `{name}`; expected Q, Z, Z/m, Fp or Fq:deg"));
    Ok(match name {
        "Q" => CoeffRing::Rationals,
        "Z" => CoeffRing::Integers,
        "Fp" => CoeffRing::finite_field(p, 1)?,
        _ => {
            if let Some(deg) = name.strip_prefix("Fq:") {
                CoeffRing::finite_field(p, deg.parse().map_err(|_| bad())?)?
            } else if let Some(m) = name.strip_prefix("Z/") {
                CoeffRing::integers_mod(m.parse().map_err(|_| bad())?)?
            } else {
                return Err(bad());
            }
        }
    })
}

fn witt(cli: &Cli, length: usize, ring: &str) -> CliResult<Value> {
    let p = require_p(cli)?;
    let ctx = WittContext::new(p, length, parse_ring(ring, p)?)?;
    let doc = payload::<WittDoc>(cli)?;
    let x = || ctx.parse_vector(&doc.x);
    let y = || match &doc.y {
        Some(y) => ctx.parse_vector(y),
        None => Err(Error::Invalid(format!("operation `{}` needs `y`", doc.op))),
    };
    let elems = |v: &[String]| v.iter().map(|s| ctx.ring().parse(s)).collect::<llc_core::Result<Vec<_>>>();
    let result = match doc.op.as_str() {
        "add" => json!(ctx.render(&ctx.add(&x()?, &y()?)?)),
        "sub" => json!(ctx.render(&ctx.sub(&x()?, &y()?)?)),
        "mul" => json!(ctx.render(&ctx.mul(&x()?, &y()?)?)),
        "neg" => json!(ctx.render(&ctx.neg(&x()?)?)),
        "ghost" => {
            let g = ctx.ghost(&x()?);
            json!(g.iter().map(|e| ctx.ring().render(e)).collect::<Vec<_>>())
        }
        "ghost-inverse" => json!(ctx.render(&ctx.ghost_inverse(&elems(&doc.x)?)?)),
        "frobenius" => json!(ctx.render(&ctx.frobenius(&x()?)?)),
        "verschiebung" => json!(ctx.render(&ctx.verschiebung(&x()?))),
        "teichmuller" => {
            let [a] = elems(&doc.x)?
                .try_into()
                .map_err(|_| CliError::Core(Error::Invalid("teichmuller takes a single ring element in `x`".into())))?;
            json!(ctx.render(&ctx.teichmuller(&a)))
        }
        "relations" => {
            let r = check_relations(&ctx, &x()?, &y()?)?;
            json!({
                "sigmaTauIsP": r.sigma_tau_is_p,
                "tauXSigmaY": r.tau_x_sigma_y,
                "tauTauIsPTau": r.tau_tau_is_p_tau,
                "tauSigmaIsTau1Times": r.tau_sigma_is_tau1_times,
                "tau1IsP": r.tau1_is_p,
                "all": r.all(),
            })
        }
        other => return Err(CliError::Usage(format!("unknown witt operation `{other}`"))),
    };
    Ok(json!({
        "p": p,
        "length": length,
        "ring": ctx.ring().name(),
        "op": doc.op,
        "result": result,
    }))
}

fn ratio(x: Ratio<i64>) -> String {
    x.to_string()
}

fn render_matrix(m: &KsMatrix, ctx: &UnramifiedContext) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(|x| x.render(ctx)).collect()).collect()
}

fn ks_from_doc(d: &KsDoc, ctx: &UnramifiedContext) -> CliResult<KsElem> {
    let coeffs = |c: &[i64]| -> CliResult<Vec<BigInt>> {
        if c.len() > ctx.degree() {
            return Err(CliError::Core(Error::Invalid(format!(
                "a coefficient has at most {} coordinates, got {}",
                ctx.degree(),
                c.len()
            ))));
        }
        Ok(ctx.from_coeffs(&c.iter().map(|&k| BigInt::from(k)).collect::<Vec<_>>()))
    };
    Ok(match d {
        KsDoc::Integral(c) => KsElem::from_coeffs(coeffs(c)?, ctx),
        KsDoc::Scaled { val, unit } => KsElem::scaled(*val, coeffs(unit)?, ctx),
    })
}

fn element_from_doc(alg: &CyclicAlgebra, d: &[KsDoc]) -> CliResult<CyclicElement> {
    let coeffs = d.iter().map(|c| ks_from_doc(c, alg.ctx())).collect::<CliResult<Vec<_>>>()?;
    Ok(alg.element(coeffs)?)
}

fn element_info(alg: &CyclicAlgebra, x: &CyclicElement) -> CliResult<Value> {
    let ctx = alg.ctx();
    let m = alg.embed_matrix(x);
    let (nrd, vd) = alg.reduced_norm_val(x)?;
    Ok(json!({
        "coefficients": x.coeffs.iter().map(|c| c.render(ctx)).collect::<Vec<_>>(),
        "matrix": render_matrix(&m, ctx),
        "relations": alg.check_matrix_relations(&m),
        "nrd": nrd.render(ctx),
        "vD": ratio(vd),
    }))
}

fn skewfield(cli: &Cli, r: i64, s: u32) -> CliResult<Value> {
    let p = require_p(cli)?;
    let ctx = UnramifiedContext::new(p, cli.f, s, cli.precision)?;
    let alg = CyclicAlgebra::new(ctx.clone(), r)?;
    let doc = match cli.input {
        Some(_) => payload::<SkewDoc>(cli)?,
        None => SkewDoc::default(),
    };
    let pi = alg.pi();
    let pi_s = alg.pow(&pi, s);
    let mut out = json!({
        "p": p,
        "f": cli.f,
        "r": r,
        "s": s,
        "precision": cli.precision,
        "sigmaGenerator": ctx.render(ctx.sigma_generator()),
        "invariant": ratio(brauer_invariant(r, s, &ctx)?),
        "piPowerSIsPR": alg.eq_to_precision(&pi_s, &alg.scalar(KsElem::p_power(r, &ctx))),
        "pi": element_info(&alg, &pi)?,
    });
    let x = doc.x.as_deref().map(|d| element_from_doc(&alg, d)).transpose()?;
    let y = doc.y.as_deref().map(|d| element_from_doc(&alg, d)).transpose()?;
    if let Some(x) = &x {
        out["x"] = element_info(&alg, x)?;
    }
    if let Some(y) = &y {
        out["y"] = element_info(&alg, y)?;
    }
    if let (Some(x), Some(y)) = (&x, &y) {
        let xy = alg.mul(x, y);
        let product = mat_mul(&alg.embed_matrix(x), &alg.embed_matrix(y), &ctx);
        let mut info = element_info(&alg, &xy)?;
        info["embeddingMultiplicative"] = json!(mat_eq(&alg.embed_matrix(&xy), &product, &ctx));
        out["product"] = info;
    }
    Ok(out)
}

fn dieudonne(cli: &Cli, rank: usize, h: usize, degree: u32) -> CliResult<Value> {
    let p = require_p(cli)?;
    let ctx = UnramifiedContext::new(p, cli.f, degree, cli.precision)?;
    let m = DieudonneModule::standard(rank, h, ctx.clone())?;
    let (fv, vf) = m.check_fv_vf()?;
    let (etale, formal) = m.etale_inf_height()?;
    let (length, dim) = m.cokernel_of_v()?;
    Ok(json!({
        "p": p,
        "f": cli.f,
        "degree": degree,
        "precision": cli.precision,
        "rank": rank,
        "V": render_matrix(m.v_matrix(), &ctx),
        "F": render_matrix(&m.f_matrix()?, &ctx),
        "fIntegral": m.f_is_integral()?,
        "fvIsPi": fv,
        "vfIsPi": vf,
        "etaleHeight": etale,
        "formalHeight": formal,
        "formalPowerIsPi": m.formal_power_is_p(h),
        "cokernelLength": length,
        "lieDimension": dim,
    }))
}
