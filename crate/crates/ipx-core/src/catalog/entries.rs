//! The registry table: every inequality is data — an input sampling plan plus
//! a function computing its ordered chain of real values e0 <= e1 <= ... The
//! chain ordering is the claim under test; two-sided bounds are three-term
//! chains [lower, middle, upper].

use num_complex::Complex64;

use super::case::{Case, ParamPlan, SamplePlan, SetPlan, VecSpec, WeightPlan};
use crate::error::CoreError;
use crate::linalg::{inner, norm, norm_sq, CVector};
use crate::operator::{combine_dim, compose, projection, rank_one, selberg, COperator};
use crate::spectral::spectral_norm;

pub struct EntryDef {
    pub id: &'static str,
    /// Source anchor for the bound (verbatim phrase near its statement).
    pub quote: &'static str,
    pub min_dim: usize,
    pub plan: SamplePlan,
    pub chain_names: &'static [&'static str],
    pub chain: fn(&Case) -> Result<Vec<f64>, CoreError>,
}

fn ip(x: &CVector, y: &CVector) -> Complex64 {
    inner(x, y).expect("case vectors share one ambient dimension")
}

fn re(c: Complex64) -> f64 {
    c.re
}

/// alpha <a,x> x - beta ||x||^2 a, the pivot vector of the section-2 bounds.
fn pivot(alpha: Complex64, beta: Complex64, a: &CVector, x: &CVector) -> CVector {
    x.scale(&(alpha * ip(a, x)))
        .sub(&a.scale(&(beta * Complex64::new(norm_sq(x), 0.0))))
}

/// Gram determinant ||x||^2||y||^2 - |<x,y>|^2, clamped against roundoff so
/// square roots stay real.
fn gram_det(x: &CVector, y: &CVector) -> f64 {
    (norm_sq(x) * norm_sq(y) - ip(x, y).norm_sqr()).max(0.0)
}

/// A(alpha, beta) = (|alpha||<a,x>| sqrt(||x||^2||b||^2 - |<x,b>|^2)
///                   - |beta| ||x||^2 sqrt(||a||^2||b||^2 - |<a,b>|^2))^2.
fn a_term(alpha: Complex64, beta: Complex64, a: &CVector, x: &CVector, b: &CVector) -> f64 {
    let u = alpha.norm() * ip(a, x).norm() * gram_det(x, b).sqrt();
    let v = beta.norm() * norm_sq(x) * gram_det(a, b).sqrt();
    (u - v).powi(2)
}

/// <a,w><w,b>/||w||^2 + <a,z><z,b>/||z||^2 - 2<a,w><w,z><z,b>/(||w||^2||z||^2).
fn two_projection_mix(a: &CVector, b: &CVector, w: &CVector, z: &CVector) -> Complex64 {
    let nw = norm_sq(w);
    let nz = norm_sq(z);
    ip(a, w) * ip(w, b) / nw + ip(a, z) * ip(z, b) / nz
        - 2.0 * ip(a, w) * ip(w, z) * ip(z, b) / (nw * nz)
}

fn op_sandwich(t: &COperator, a: &CVector, b: &CVector) -> Result<Complex64, CoreError> {
    inner(&t.apply(a)?, b)
}

/// z (S_Z - I/2) for one vector set.
fn half_shifted(set: &[CVector], z: Complex64, dim: usize) -> Result<COperator, CoreError> {
    let s = selberg(set)?;
    combine_dim(&[(z, &s)], -z / 2.0, dim)
}

const MAXMOD: fn(Complex64, Complex64) -> f64 =
    |alpha, beta| (alpha - beta).norm().max(beta.norm());

// --- vector signatures -------------------------------------------------

const V_AB_REAL: &[VecSpec] = &[VecSpec::free("a").real(), VecSpec::free("b").real()];
const V_XY: &[VecSpec] = &[VecSpec::free("x"), VecSpec::free("y")];
const V_ABX: &[VecSpec] = &[VecSpec::free("a"), VecSpec::free("b"), VecSpec::free("x")];
const V_ABX_REAL: &[VecSpec] = &[
    VecSpec::free("a").real(),
    VecSpec::free("b").real(),
    VecSpec::free("x").real(),
];
const V_OSTROWSKI: &[VecSpec] = &[
    VecSpec::nonzero("z").real(),
    VecSpec::free("y").real().orth_to(&["z"]),
    VecSpec::free("x").real().inner_one("z").not_prop("y"),
];
const V_ABX_XNZ: &[VecSpec] = &[
    VecSpec::free("a"),
    VecSpec::free("b"),
    VecSpec::nonzero("x"),
];
const V_AX: &[VecSpec] = &[VecSpec::free("a"), VecSpec::free("x")];
const V_AX_XNZ: &[VecSpec] = &[VecSpec::free("a"), VecSpec::nonzero("x")];
const V_ABX_BXNZ: &[VecSpec] = &[
    VecSpec::free("a"),
    VecSpec::nonzero("b"),
    VecSpec::nonzero("x"),
];
const V_DRAGOMIR_GOSA: &[VecSpec] = &[
    VecSpec::free("a"),
    VecSpec::nonzero("b"),
    VecSpec::nonzero("x").orth_to(&["b"]),
];
const V_OSTROWSKI_IP: &[VecSpec] = &[
    VecSpec::nonzero("b"),
    VecSpec::nonzero("x").orth_to(&["b"]),
    VecSpec::free("a").inner_one("b"),
];
const V_TH21: &[VecSpec] = &[
    VecSpec::nonzero("a"),
    VecSpec::free("b"),
    VecSpec::free("x"),
];
const V_ABX_ALLNZ: &[VecSpec] = &[
    VecSpec::nonzero("a"),
    VecSpec::nonzero("b"),
    VecSpec::nonzero("x"),
];
const V_X_UNIT: &[VecSpec] = &[VecSpec::unit("x")];
const V_X: &[VecSpec] = &[VecSpec::free("x")];
const V_AB_NZ: &[VecSpec] = &[VecSpec::nonzero("a"), VecSpec::nonzero("b")];
const V_ABX_XUNIT: &[VecSpec] = &[
    VecSpec::free("a"),
    VecSpec::free("b"),
    VecSpec::unit("x"),
];
const V_AB: &[VecSpec] = &[VecSpec::free("a"), VecSpec::free("b")];
const V_AB_E: &[VecSpec] = &[
    VecSpec::unit("e").orth_to_sets(),
    VecSpec::free("a"),
    VecSpec::free("b"),
];
const V_AB_EUNIT: &[VecSpec] = &[
    VecSpec::unit("e"),
    VecSpec::free("a"),
    VecSpec::free("b"),
];
const V_RICHARD_REF: &[VecSpec] = &[
    VecSpec::unit("x"),
    VecSpec::unit("e").orth_to(&["x"]),
    VecSpec::free("a"),
    VecSpec::free("b"),
];
const V_ABWZ: &[VecSpec] = &[
    VecSpec::nonzero("w"),
    VecSpec::nonzero("z"),
    VecSpec::free("a"),
    VecSpec::free("b"),
];
const V_ABWZ_REAL: &[VecSpec] = &[
    VecSpec::nonzero("w").real(),
    VecSpec::nonzero("z").real(),
    VecSpec::free("a").real(),
    VecSpec::free("b").real(),
];
const V_X_NZ: &[VecSpec] = &[VecSpec::nonzero("x")];

// --- chains -------------------------------------------------------------

fn cs_discrete(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b) = (c.vec("a"), c.vec("b"));
    Ok(vec![re(ip(a, b)).powi(2), norm_sq(a) * norm_sq(b)])
}

fn ostrowski_discrete(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (x, y, z) = (c.vec("x"), c.vec("y"), c.vec("z"));
    Ok(vec![
        norm_sq(y) / norm_sq(z),
        norm_sq(x) * norm_sq(y) - re(ip(x, y)).powi(2),
    ])
}

fn cs(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (x, y) = (c.vec("x"), c.vec("y"));
    Ok(vec![ip(x, y).norm(), norm(x) * norm(y)])
}

fn buzano(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    Ok(vec![
        (ip(a, x) * ip(x, b)).norm(),
        0.5 * norm_sq(x) * (ip(a, b).norm() + norm(a) * norm(b)),
    ])
}

fn richard(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    Ok(vec![
        (ip(a, x) * ip(x, b) - 0.5 * norm_sq(x) * ip(a, b)).norm(),
        0.5 * norm_sq(x) * norm(a) * norm(b),
    ])
}

fn precupanu(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, w, z) = (c.vec("a"), c.vec("b"), c.vec("w"), c.vec("z"));
    let prod = norm(a) * norm(b);
    let mid = re(two_projection_mix(a, b, w, z));
    Ok(vec![
        0.5 * (-prod + re(ip(a, b))),
        mid,
        0.5 * (prod + re(ip(a, b))),
    ])
}

fn popa_rasa(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let lhs = (ip(a, x) * ip(x, b) - 0.5 * norm_sq(x) * ip(a, b)).re.abs();
    let under = (norm_sq(a) * norm_sq(b) - ip(a, b).im.powi(2)).max(0.0);
    Ok(vec![lhs, 0.5 * norm_sq(x) * under.sqrt()])
}

fn lupu(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    Ok(vec![
        norm_sq(a) * ip(b, x).norm_sqr()
            + norm_sq(b) * ip(x, a).norm_sqr()
            + norm_sq(x) * ip(a, b).norm_sqr(),
        norm_sq(a) * norm_sq(b) * norm_sq(x)
            + 2.0 * (ip(a, b) * ip(b, x) * ip(x, a)).norm(),
    ])
}

fn lupu_refinement(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let mid = (norm(a) * ip(b, x).norm() - norm(b) * ip(x, a).norm()).powi(2) / norm_sq(x);
    Ok(vec![0.0, mid, gram_det(a, b)])
}

fn lower_11(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, x) = (c.vec("a"), c.vec("x"));
    let (alpha, beta) = (c.param("alpha"), c.param("beta"));
    Ok(vec![
        norm(x) * ip(a, x).norm() * (beta - alpha).norm(),
        norm(&pivot(alpha, beta, a, x)),
    ])
}

fn upper_14(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, x) = (c.vec("a"), c.vec("x"));
    let (alpha, beta) = (c.param("alpha"), c.param("beta"));
    Ok(vec![
        norm(&pivot(alpha, beta, a, x)),
        MAXMOD(alpha, beta) * norm(a) * norm_sq(x),
    ])
}

fn sandwich_15(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, x) = (c.vec("a"), c.vec("x"));
    let (alpha, beta) = (c.param("alpha"), c.param("beta"));
    let mid = norm(&pivot(alpha, beta, a, x)) / ((alpha - beta).norm() * norm(x));
    Ok(vec![ip(a, x).norm(), mid, norm(a) * norm(x)])
}

fn kdm_16(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let (alpha, beta) = (c.param("alpha"), c.param("beta"));
    Ok(vec![
        (alpha * ip(a, x) * ip(x, b) - beta * norm_sq(x) * ip(a, b)).norm(),
        MAXMOD(alpha, beta) * norm_sq(x) * norm(a) * norm(b),
    ])
}

fn th_18(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let (alpha, beta) = (c.param("alpha"), c.param("beta"));
    let mid = norm_sq(x) / norm_sq(b)
        * (alpha * ip(a, x) * ip(x, b) / norm_sq(x) - beta * ip(a, b)).norm_sqr();
    let rhs = (alpha - beta).norm_sqr() * ip(a, x).norm_sqr()
        + beta.norm_sqr() * (norm_sq(a) * norm_sq(x) - ip(a, x).norm_sqr());
    Ok(vec![0.0, mid, rhs])
}

fn cor_19(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let mid = norm_sq(x) / norm_sq(b)
        * (ip(a, x) * ip(x, b) / norm_sq(x) - ip(a, b)).norm_sqr();
    Ok(vec![0.0, mid, norm_sq(a) * norm_sq(x) - ip(a, x).norm_sqr()])
}

fn dragomir_gosa(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    Ok(vec![
        norm_sq(x) / norm_sq(b) * ip(a, b).norm_sqr(),
        norm_sq(a) * norm_sq(x) - ip(a, x).norm_sqr(),
    ])
}

fn ostrowski_ip(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    Ok(vec![
        norm_sq(x) / norm_sq(b),
        norm_sq(a) * norm_sq(x) - ip(a, x).norm_sqr(),
    ])
}

fn th_21(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let (alpha, beta) = (c.param("alpha"), c.param("beta"));
    let bound = (beta.norm_sqr() - (alpha - beta).norm_sqr()) * norm(b) * ip(a, x).norm_sqr()
        / (2.0 * beta.norm() * norm(a));
    let gap = beta.norm() * norm_sq(x) * norm(a) * norm(b)
        - (alpha * ip(a, x) * ip(x, b) - beta * norm_sq(x) * ip(a, b)).norm();
    Ok(vec![0.0, bound, gap])
}

fn th_22(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let (alpha, beta) = (c.param("alpha"), c.param("beta"));
    let m = MAXMOD(alpha, beta);
    let prod = norm_sq(x) * norm(a) * norm(b);
    let bound = a_term(alpha, beta, a, x, b) / (2.0 * m * prod);
    let gap = m * prod - (alpha * ip(a, x) * ip(x, b) - beta * norm_sq(x) * ip(a, b)).norm();
    Ok(vec![0.0, bound, gap])
}

fn rem_23(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let one = Complex64::new(1.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let prod = norm_sq(x) * norm(a) * norm(b);
    let bound = a_term(one, half, a, x, b) / prod;
    let gap = 0.5 * prod - (ip(a, x) * ip(x, b) - 0.5 * norm_sq(x) * ip(a, b)).norm();
    Ok(vec![0.0, bound, gap])
}

fn cor_24(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let (alpha, beta) = (c.param("alpha"), c.param("beta"));
    let m = MAXMOD(alpha, beta);
    let prod = norm(a) * norm(b);
    let refine = a_term(alpha, beta, a, x, b) / (2.0 * m * norm_sq(x) * prod);
    let lower = norm_sq(x) * (beta.norm() * ip(a, b).norm() - m * prod) + refine;
    let upper = norm_sq(x) * (beta.norm() * ip(a, b).norm() + m * prod) - refine;
    Ok(vec![lower, alpha.norm() * (ip(a, x) * ip(x, b)).norm(), upper])
}

fn prop_25(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let one = Complex64::new(1.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let refine = a_term(one, half, a, x, b).max(0.25 * a_term(two, one, a, x, b));
    Ok(vec![
        (ip(a, x) * ip(x, b)).norm(),
        0.5 * norm_sq(x) * (ip(a, b).norm() + norm(a) * norm(b))
            - refine / (norm_sq(x) * norm(a) * norm(b)),
    ])
}

fn opnorm_26(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let (alpha, beta) = (c.param("alpha"), c.param("beta"));
    let xx = rank_one(x, x)?;
    let t = combine_dim(
        &[(alpha, &xx)],
        -beta * Complex64::new(norm_sq(x), 0.0),
        x.dim(),
    )?;
    Ok(vec![
        op_sandwich(&t, a, b)?.norm(),
        MAXMOD(alpha, beta) * norm_sq(x) * norm(a) * norm(b),
    ])
}

fn fujii_kubo(c: &Case) -> Result<Vec<f64>, CoreError> {
    let x = c.vec("x");
    let p = projection(x)?;
    let t = combine_dim(&[(Complex64::new(2.0, 0.0), &p)], Complex64::new(-1.0, 0.0), x.dim())?;
    Ok(vec![spectral_norm(&t), 1.0])
}

fn selberg_chain(c: &Case) -> Result<Vec<f64>, CoreError> {
    let x = c.vec("x");
    let s = selberg(&c.sets[0])?;
    Ok(vec![inner(&s.apply(x)?, x)?.re, norm_sq(x)])
}

fn selberg_cs_ref(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b) = (c.vec("a"), c.vec("b"));
    let sb = selberg(std::slice::from_ref(b))?;
    let sa = selberg(std::slice::from_ref(a))?;
    let left = norm_sq(a) - inner(&sb.apply(a)?, a)?.re;
    let right = norm_sq(b) - inner(&sa.apply(b)?, b)?.re;
    Ok(vec![0.0, left * right, gram_det(a, b)])
}

fn richard_selberg(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x) = (c.vec("a"), c.vec("b"), c.vec("x"));
    let s = selberg(std::slice::from_ref(x))?;
    Ok(vec![
        (inner(&s.apply(a)?, b)? - 0.5 * ip(a, b)).norm(),
        0.5 * norm(a) * norm(b),
    ])
}

fn lemma_prev_chain(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b) = (c.vec("a"), c.vec("b"));
    let s = selberg(&c.sets[0])?;
    let sab = inner(&s.apply(a)?, b)?;
    let qa = inner(&s.apply(a)?, a)?.re.max(0.0);
    let qb = inner(&s.apply(b)?, b)?.re.max(0.0);
    let cross = (qa * qb).sqrt();
    Ok(vec![
        ip(a, b).norm(),
        ip(a, b).norm() - sab.norm() + cross,
        (ip(a, b) - sab).norm() + cross,
        norm(a) * norm(b),
    ])
}

fn th_gen(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b) = (c.vec("a"), c.vec("b"));
    let s = selberg(&c.sets[0])?;
    Ok(vec![
        (inner(&s.apply(a)?, b)? - 0.5 * ip(a, b)).norm(),
        0.5 * norm(a) * norm(b),
    ])
}

fn prop_eorth(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, e) = (c.vec("a"), c.vec("b"), c.vec("e"));
    let s = selberg(&c.sets[0])?;
    let defect = inner(&s.apply(a)?, b)? - 0.5 * ip(a, b);
    let corr = 0.5 * ip(a, e) * ip(e, b);
    Ok(vec![
        defect.norm(),
        (defect + corr).norm() + corr.norm(),
        0.5 * norm(a) * norm(b),
    ])
}

fn ref_cs_dragomir(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, e) = (c.vec("a"), c.vec("b"), c.vec("e"));
    let cross = ip(a, e) * ip(e, b);
    Ok(vec![
        ip(a, b).norm(),
        (ip(a, b) - cross).norm() + cross.norm(),
        norm(a) * norm(b),
    ])
}

fn cor_richard_ref(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, x, e) = (c.vec("a"), c.vec("b"), c.vec("x"), c.vec("e"));
    let defect = ip(a, x) * ip(x, b) - 0.5 * ip(a, b);
    let corr = 0.5 * ip(a, e) * ip(e, b);
    Ok(vec![
        defect.norm(),
        (defect + corr).norm() + corr.norm(),
        0.5 * norm(a) * norm(b),
    ])
}

fn cor_buzano_selberg(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, e) = (c.vec("a"), c.vec("b"), c.vec("e"));
    let s = selberg(&c.sets[0])?;
    let sab = inner(&s.apply(a)?, b)?;
    let corr = 0.5 * ip(a, e) * ip(e, b);
    Ok(vec![
        sab.norm(),
        (sab - 0.5 * ip(a, b) + corr).norm() + corr.norm() + 0.5 * ip(a, b).norm(),
        0.5 * (ip(a, b).norm() + norm(a) * norm(b)),
    ])
}

fn prec_gen(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, w, z) = (c.vec("a"), c.vec("b"), c.vec("w"), c.vec("z"));
    Ok(vec![
        (two_projection_mix(a, b, w, z) - 0.5 * ip(a, b)).norm(),
        0.5 * norm(a) * norm(b),
    ])
}

fn prec_gen2(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b, w, z) = (c.vec("a"), c.vec("b"), c.vec("w"), c.vec("z"));
    Ok(vec![
        two_projection_mix(a, b, w, z).norm(),
        0.5 * (ip(a, b).norm() + norm(a) * norm(b)),
    ])
}

fn sum_bound(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b) = (c.vec("a"), c.vec("b"));
    let dim = a.dim();
    let mut total = crate::operator::StructuredOperator::zero(dim);
    let mut weight_mass = 0.0;
    for (set, &z) in c.sets.iter().zip(&c.weights) {
        let part = half_shifted(set, z, dim)?;
        total = combine_dim(
            &[(Complex64::new(1.0, 0.0), &total), (Complex64::new(1.0, 0.0), &part)],
            Complex64::new(0.0, 0.0),
            dim,
        )?;
        weight_mass += z.norm();
    }
    Ok(vec![
        op_sandwich(&total, a, b)?.norm(),
        0.5 * weight_mass * norm(a) * norm(b),
    ])
}

fn prod_chain(c: &Case, rhs_factor: Option<f64>) -> Result<Vec<f64>, CoreError> {
    let (a, b) = (c.vec("a"), c.vec("b"));
    let dim = a.dim();
    let mut total = crate::operator::StructuredOperator::identity(dim);
    let mut weight_prod = 1.0;
    for (set, &z) in c.sets.iter().zip(&c.weights) {
        let factor = half_shifted(set, z, dim)?;
        total = compose(&total, &factor)?;
        weight_prod *= z.norm() / 2.0;
    }
    let rhs = rhs_factor.unwrap_or(weight_prod);
    Ok(vec![op_sandwich(&total, a, b)?.norm(), rhs * norm(a) * norm(b)])
}

fn prod_bound(c: &Case) -> Result<Vec<f64>, CoreError> {
    prod_chain(c, None)
}

/// With (-1)^n prod z_k = 2^(n-1), the product of the contraction factors
/// z_k (S_k - I/2) has norm at most prod |z_k| / 2^n = 1/2.
fn prod_richard(c: &Case) -> Result<Vec<f64>, CoreError> {
    prod_chain(c, Some(0.5))
}

fn convex_combination(c: &Case) -> Result<COperator, CoreError> {
    let dim = c.vec("a").dim();
    let mut total = crate::operator::StructuredOperator::zero(dim);
    for (set, &z) in c.sets.iter().zip(&c.weights) {
        let s = selberg(set)?;
        total = combine_dim(
            &[(Complex64::new(1.0, 0.0), &total), (z, &s)],
            Complex64::new(0.0, 0.0),
            dim,
        )?;
    }
    Ok(total)
}

fn cor_convex(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b) = (c.vec("a"), c.vec("b"));
    let t = convex_combination(c)?;
    Ok(vec![
        (op_sandwich(&t, a, b)? - 0.5 * ip(a, b)).norm(),
        0.5 * norm(a) * norm(b),
    ])
}

fn prop_buzano_gen(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (a, b) = (c.vec("a"), c.vec("b"));
    let t = convex_combination(c)?;
    Ok(vec![
        op_sandwich(&t, a, b)?.norm(),
        0.5 * (ip(a, b).norm() + norm(a) * norm(b)),
    ])
}

fn opnorm_16_3(c: &Case) -> Result<Vec<f64>, CoreError> {
    let x = c.vec("x");
    let (alpha, beta) = (c.param("alpha"), c.param("beta"));
    let s = selberg(std::slice::from_ref(x))?;
    let t = combine_dim(&[(alpha, &s)], -beta, x.dim())?;
    Ok(vec![spectral_norm(&t), MAXMOD(alpha, beta)])
}

/// Deliberately false chain (Cauchy-Schwarz reversed); only reachable through
/// the debug lookup, used to exercise failure reporting and exit codes.
fn debug_reversed_cs(c: &Case) -> Result<Vec<f64>, CoreError> {
    let (x, y) = (c.vec("x"), c.vec("y"));
    Ok(vec![norm(x) * norm(y), ip(x, y).norm()])
}

// --- the table -----------------------------------------------------------

macro_rules! entry {
    ($id:literal, $quote:literal, $min_dim:expr, $plan:expr, $names:expr, $chain:expr) => {
        EntryDef {
            id: $id,
            quote: $quote,
            min_dim: $min_dim,
            plan: $plan,
            chain_names: $names,
            chain: $chain,
        }
    };
}

pub static ENTRIES: &[EntryDef] = &[
    entry!(
        "CS_DISCRETE",
        "called the Cauchy-Buniakowski-Schwarz inequality",
        1,
        SamplePlan::vectors(V_AB_REAL),
        &["(sum a_k b_k)^2", "(sum a_k^2)(sum b_k^2)"],
        cs_discrete
    ),
    entry!(
        "OSTROWSKI_DISCRETE",
        "Ostrowski \\cite{11}, showed the following",
        2,
        SamplePlan::vectors(V_OSTROWSKI),
        &["sum y^2 / sum z^2", "sum x^2 sum y^2 - (sum xy)^2"],
        ostrowski_discrete
    ),
    entry!(
        "CS",
        "the Cauchy--Schwarz inequality (C-S)",
        1,
        SamplePlan::vectors(V_XY),
        &["|<x,y>|", "|x||y|"],
        cs
    ),
    entry!(
        "BUZANO",
        "proved an extension of the Cauchy-Schwarz",
        1,
        SamplePlan::vectors(V_ABX),
        &["|<a,x><x,b>|", "(|x|^2/2)(|<a,b>| + |a||b|)"],
        buzano
    ),
    entry!(
        "RICHARD",
        "gave the following inequality",
        1,
        SamplePlan::vectors(V_ABX_REAL),
        &["|<a,x><x,b> - (|x|^2/2)<a,b>|", "(|x|^2/2)|a||b|"],
        richard
    ),
    entry!(
        "PRECUPANU",
        "related to the Richard inequality",
        1,
        SamplePlan::vectors(V_ABWZ_REAL),
        &["(-|a||b| + <a,b>)/2", "projection mix", "(|a||b| + <a,b>)/2"],
        precupanu
    ),
    entry!(
        "POPA_RASA",
        "Popa and Ra\\c{s}a showed",
        1,
        SamplePlan::vectors(V_ABX),
        &["|Re defect|", "(|x|^2/2) sqrt(|a|^2|b|^2 - (Im<a,b>)^2)"],
        popa_rasa
    ),
    entry!(
        "LUPU",
        "Lupu and Schwarz gave",
        1,
        SamplePlan::vectors(V_ABX),
        &["weighted moduli sum", "|a|^2|b|^2|x|^2 + 2|<a,b><b,x><x,a>|"],
        lupu
    ),
    entry!(
        "LUPU_REFINEMENT",
        "another refinement of the (C-S) inequality",
        1,
        SamplePlan::vectors(V_ABX_XNZ),
        &["0", "(|a||<b,x>| - |b||<x,a>|)^2/|x|^2", "|a|^2|b|^2 - |<a,b>|^2"],
        lupu_refinement
    ),
    entry!(
        "LOWER_11",
        "from equality \\eqref{10}, we find",
        1,
        SamplePlan::vectors(V_AX).with_params(ParamPlan::AlphaBetaFree),
        &["|x||<a,x>||beta - alpha|", "|alpha<a,x>x - beta|x|^2 a|"],
        lower_11
    ),
    entry!(
        "UPPER_14",
        "which is equivalent to",
        1,
        SamplePlan::vectors(V_AX).with_params(ParamPlan::AlphaBetaFree),
        &["|alpha<a,x>x - beta|x|^2 a|", "max{|alpha-beta|,|beta|}|a||x|^2"],
        upper_14
    ),
    entry!(
        "SANDWICH_15",
        "improvement of the Cauchy--Schwarz inequality",
        1,
        SamplePlan::vectors(V_AX_XNZ).with_params(ParamPlan::Sandwich),
        &["|<a,x>|", "|pivot|/(|alpha-beta||x|)", "|a||x|"],
        sandwich_15
    ),
    entry!(
        "KDM_16",
        "the inequality of the statement was proven",
        1,
        SamplePlan::vectors(V_ABX).with_params(ParamPlan::AlphaBetaFree),
        &["|alpha<a,x><x,b> - beta|x|^2<a,b>|", "max{|beta|,|alpha-beta|}|x|^2|a||b|"],
        kdm_16
    ),
    entry!(
        "KDM_17",
        "an extension of Buzano's inequality",
        1,
        SamplePlan::vectors(V_ABX).with_params(ParamPlan::AlphaFree),
        &["|alpha<a,x><x,b> - |x|^2<a,b>|", "max{1,|alpha-1|}|x|^2|a||b|"],
        kdm_16
    ),
    entry!(
        "TH_18",
        "we make the following calculations",
        1,
        SamplePlan::vectors(V_ABX_BXNZ).with_params(ParamPlan::AlphaBetaFree),
        &["0", "scaled defect squared", "|alpha-beta|^2|<a,x>|^2 + |beta|^2 residual"],
        th_18
    ),
    entry!(
        "COR_19",
        "the following inequality",
        1,
        SamplePlan::vectors(V_ABX_BXNZ),
        &["0", "scaled defect squared", "|a|^2|x|^2 - |<a,x>|^2"],
        cor_19
    ),
    entry!(
        "DRAGOMIR_GOSA",
        "obtained by Dragomir and Go\\c sa",
        2,
        SamplePlan::vectors(V_DRAGOMIR_GOSA),
        &["(|x|^2/|b|^2)|<a,b>|^2", "|a|^2|x|^2 - |<a,x>|^2"],
        dragomir_gosa
    ),
    entry!(
        "OSTROWSKI_IP",
        "the inequality of Ostrowski",
        2,
        SamplePlan::vectors(V_OSTROWSKI_IP),
        &["|x|^2/|b|^2", "|a|^2|x|^2 - |<a,x>|^2"],
        ostrowski_ip
    ),
    entry!(
        "TH_21",
        "Consequently, the inequality of the statement is true",
        1,
        SamplePlan::vectors(V_TH21).with_params(ParamPlan::ContractionTowardBeta),
        &["0", "(|beta|^2-|alpha-beta|^2)|b||<a,x>|^2/(2|beta||a|)", "bound gap"],
        th_21
    ),
    entry!(
        "TH_22",
        "for any nonzero vectors",
        1,
        SamplePlan::vectors(V_ABX_ALLNZ).with_params(ParamPlan::MaxNonZero),
        &["0", "A(alpha,beta)/(2 max |x|^2|a||b|)", "bound gap"],
        th_22
    ),
    entry!(
        "REM_23",
        "an important inequality given in",
        1,
        SamplePlan::vectors(V_ABX_ALLNZ),
        &["0", "A/(|x|^2|a||b|)", "bound gap"],
        rem_23
    ),
    entry!(
        "COR_24",
        "the continuity property of the modulus",
        1,
        SamplePlan::vectors(V_ABX_ALLNZ).with_params(ParamPlan::BetaNonZero),
        &["lower", "|alpha||<a,x><x,b>|", "upper"],
        cor_24
    ),
    entry!(
        "PROP_25",
        "a refinement of Buzano's inequality",
        1,
        SamplePlan::vectors(V_ABX_ALLNZ),
        &["|<a,x><x,b>|", "Buzano bound minus refinement"],
        prop_25
    ),
    entry!(
        "OPNORM_26",
        "we can rewrite inequality",
        1,
        SamplePlan::vectors(V_ABX).with_params(ParamPlan::AlphaBetaFree),
        &["|<[alpha(x(x)x) - beta|x|^2 I]a, b>|", "max{|beta|,|alpha-beta|}|x|^2|a||b|"],
        opnorm_26
    ),
    entry!(
        "FUJII_KUBO",
        "simpler proof of Buzano's inequality",
        1,
        SamplePlan::vectors(V_X_UNIT),
        &["|2P_x - I|", "1"],
        fujii_kubo
    ),
    entry!(
        "SELBERG",
        "Selberg's inequality, which asserts",
        1,
        SamplePlan::vectors(V_X).with_sets(SetPlan::One { max_size: 4 }),
        &["sum |<x,z_i>|^2/d_i", "|x|^2"],
        selberg_chain
    ),
    entry!(
        "SELBERG_CS_REF",
        "another refinement of the (C-S) inequality",
        1,
        SamplePlan::vectors(V_AB_NZ),
        &["0", "defect product", "|a|^2|b|^2 - |<a,b>|^2"],
        selberg_cs_ref
    ),
    entry!(
        "RICHARD_SELBERG",
        "using an appropiate Selberg operator",
        1,
        SamplePlan::vectors(V_ABX_XUNIT),
        &["|<S_{x}a,b> - <a,b>/2|", "|a||b|/2"],
        richard_selberg
    ),
    entry!(
        "LEMMA_PREV_CHAIN",
        "For any $a, b \\in \\mathcal{X}$",
        1,
        SamplePlan::vectors(V_AB).with_sets(SetPlan::One { max_size: 4 }),
        &[
            "|<a,b>|",
            "|<a,b>| - |<Sa,b>| + sqrt(<Sa,a><Sb,b>)",
            "|<a,b> - <Sa,b>| + sqrt(<Sa,a><Sb,b>)",
            "|a||b|",
        ],
        lemma_prev_chain
    ),
    entry!(
        "TH_GEN",
        "The case of equality holds",
        1,
        SamplePlan::vectors(V_AB).with_sets(SetPlan::One { max_size: 4 }),
        &["|<S_Z a,b> - <a,b>/2|", "|a||b|/2"],
        th_gen
    ),
    entry!(
        "PROP_EORTH",
        "a refinement of the Cauchy",
        2,
        SamplePlan::vectors(V_AB_E)
            .with_sets(SetPlan::One { max_size: 4 })
            .reserve_rank(1),
        &["|defect|", "|defect + corr| + |corr|", "|a||b|/2"],
        prop_eorth
    ),
    entry!(
        "REF_CS_DRAGOMIR",
        "is also established by Dragomir",
        1,
        SamplePlan::vectors(V_AB_EUNIT),
        &["|<a,b>|", "|<a,b> - <a,e><e,b>| + |<a,e><e,b>|", "|a||b|"],
        ref_cs_dragomir
    ),
    entry!(
        "COR_RICHARD_REF",
        "refinement of Richard's inequality, from",
        2,
        SamplePlan::vectors(V_RICHARD_REF),
        &["|defect|", "|defect + corr| + |corr|", "|a||b|/2"],
        cor_richard_ref
    ),
    entry!(
        "COR_BUZANO_SELBERG",
        "refinement of Buzano type inequality",
        2,
        SamplePlan::vectors(V_AB_E)
            .with_sets(SetPlan::One { max_size: 4 })
            .reserve_rank(1),
        &["|<S_Z a,b>|", "split middle", "(|<a,b>| + |a||b|)/2"],
        cor_buzano_selberg
    ),
    entry!(
        "PREC_GEN",
        "complex version of Precupanu",
        1,
        SamplePlan::vectors(V_ABWZ),
        &["|projection mix - <a,b>/2|", "|a||b|/2"],
        prec_gen
    ),
    entry!(
        "PREC_GEN2",
        "generalization of Buzano's inequality",
        1,
        SamplePlan::vectors(V_ABWZ),
        &["|projection mix|", "(|<a,b>| + |a||b|)/2"],
        prec_gen2
    ),
    entry!(
        "SUM_BOUND",
        "is a submultiplicative norm",
        1,
        SamplePlan::vectors(V_AB)
            .with_sets(SetPlan::Many { max_size: 3 })
            .with_weights(WeightPlan::Disk),
        &["|<sum z_k(S_k - I/2)a, b>|", "(sum|z_k|/2)|a||b|"],
        sum_bound
    ),
    entry!(
        "PROD_BOUND",
        "is a submultiplicative norm",
        1,
        SamplePlan::vectors(V_AB)
            .with_sets(SetPlan::Many { max_size: 3 })
            .with_weights(WeightPlan::Disk),
        &["|<prod z_k(S_k - I/2)a, b>|", "(prod|z_k|/2^n)|a||b|"],
        prod_bound
    ),
    entry!(
        "PROD_RICHARD",
        "In particular, if",
        1,
        SamplePlan::vectors(V_AB)
            .with_sets(SetPlan::Many { max_size: 3 })
            .with_weights(WeightPlan::ScaledProduct),
        &["|<prod z_k(S_k - I/2)a, b>|", "|a||b|/2"],
        prod_richard
    ),
    entry!(
        "COR_CONVEX",
        "complex numbers such that",
        1,
        SamplePlan::vectors(V_AB)
            .with_sets(SetPlan::Many { max_size: 3 })
            .with_weights(WeightPlan::Simplex),
        &["|<(sum z_k S_k)a, b> - <a,b>/2|", "|a||b|/2"],
        cor_convex
    ),
    entry!(
        "PROP_BUZANO_GEN",
        "attain a generalization of Buzano's",
        1,
        SamplePlan::vectors(V_AB)
            .with_sets(SetPlan::Many { max_size: 3 })
            .with_weights(WeightPlan::Simplex),
        &["|<(sum z_k S_k)a, b>|", "(|<a,b>| + |a||b|)/2"],
        prop_buzano_gen
    ),
    entry!(
        "OPNORM_16_3",
        "Taking the supremum in above relation",
        1,
        SamplePlan::vectors(V_X_NZ).with_params(ParamPlan::AlphaBetaFree),
        &["|alpha S_{x} - beta I|", "max{|beta|,|alpha-beta|}"],
        opnorm_16_3
    ),
];

/// Not part of the registry: a knowingly violated chain for exercising the
/// failure path end to end (reporting, exit codes).
pub static DEBUG_FALSE_ENTRY: EntryDef = EntryDef {
    id: "DEBUG_REVERSED_CS",
    quote: "synthetic violation fixture",
    min_dim: 1,
    plan: SamplePlan::vectors(V_XY),
    chain_names: &["|x||y|", "|<x,y>|"],
    chain: debug_reversed_cs,
};
