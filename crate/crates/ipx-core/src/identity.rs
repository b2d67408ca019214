//! Identity suite: every algebraic identity the inequality chains lean on,
//! verified instance-wise in denominator-cleared, squared form so the exact
//! backend never needs a square root.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::error::CoreError;
use crate::linalg::{inner, norm_sq, Vector};
use crate::scalar::{GaussRational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// (sum a_i^2)(sum b_i^2) = (sum a_i b_i)^2 + sum_{i<j} (a_i b_j - a_j b_i)^2, real tuples.
    Lagrange,
    /// ||y||^4 ||x + alpha y||^2 = ||y||^2 |alpha ||y||^2 + <x,y>|^2 + || ||y||^2 x - <x,y> y ||^2.
    IdAux,
    /// ||alpha <a,x> x - beta ||x||^2 a||^2
    ///   = ||x||^2 |<a,x>|^2 |beta-alpha|^2 + |beta|^2 || ||x||^2 a - <a,x> x ||^2.
    Id10,
    /// ||alpha <a,x> x - beta ||x||^2 a||^2
    ///   = ||x||^2 (|alpha-beta|^2 |<a,x>|^2 + |beta|^2 ||a||^2 ||x||^2 - |beta|^2 |<a,x>|^2).
    Id12,
    /// ||2 <a,x> x - ||x||^2 a||^2 = ||x||^4 ||a||^2 (the alpha=2, beta=1 case, squared and cleared).
    Id13,
    /// || ||x||^2 a - <a,x> x ||^2 = ||x||^2 (||a||^2 ||x||^2 - |<a,x>|^2).
    Residual,
    /// p p1 + q q1 <= max{p, q} (p1 + q1) for nonnegative reals (inequality, not identity).
    ScalarMax,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::Lagrange,
        IdentityId::IdAux,
        IdentityId::Id10,
        IdentityId::Id12,
        IdentityId::Id13,
        IdentityId::Residual,
        IdentityId::ScalarMax,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::Lagrange => "LAGRANGE",
            IdentityId::IdAux => "ID_AUX",
            IdentityId::Id10 => "ID_10",
            IdentityId::Id12 => "ID_12",
            IdentityId::Id13 => "ID_13",
            IdentityId::Residual => "RESIDUAL",
            IdentityId::ScalarMax => "SCALAR_MAX",
        }
    }
}

#[derive(Debug, Clone)]
pub enum IdentityInputs<S: Scalar> {
    Lagrange { a: Vector<S>, b: Vector<S> },
    IdAux { x: Vector<S>, y: Vector<S>, alpha: S },
    Id10 { a: Vector<S>, x: Vector<S>, alpha: S, beta: S },
    Id12 { a: Vector<S>, x: Vector<S>, alpha: S, beta: S },
    Id13 { a: Vector<S>, x: Vector<S> },
    Residual { a: Vector<S>, x: Vector<S> },
    ScalarMax { p: S::Real, p1: S::Real, q: S::Real, q1: S::Real },
}

impl<S: Scalar> IdentityInputs<S> {
    pub fn id(&self) -> IdentityId {
        match self {
            IdentityInputs::Lagrange { .. } => IdentityId::Lagrange,
            IdentityInputs::IdAux { .. } => IdentityId::IdAux,
            IdentityInputs::Id10 { .. } => IdentityId::Id10,
            IdentityInputs::Id12 { .. } => IdentityId::Id12,
            IdentityInputs::Id13 { .. } => IdentityId::Id13,
            IdentityInputs::Residual { .. } => IdentityId::Residual,
            IdentityInputs::ScalarMax { .. } => IdentityId::ScalarMax,
        }
    }
}

/// LHS and RHS of the cleared form; the residual is LHS - RHS.
pub fn evaluate_sides<S: Scalar>(
    inputs: &IdentityInputs<S>,
) -> Result<(S::Real, S::Real), CoreError> {
    match inputs {
        IdentityInputs::Lagrange { a, b } => {
            if !a.is_real() || !b.is_real() {
                return Err(CoreError::IdentityInput("LAGRANGE requires real tuples".into()));
            }
            if a.dim() != b.dim() {
                return Err(CoreError::DimensionMismatch(a.dim(), b.dim()));
            }
            let n = a.dim();
            let re = |v: &Vector<S>, i: usize| v.entry(i).re();
            let mut sum_a2 = S::real_zero();
            let mut sum_b2 = S::real_zero();
            let mut sum_ab = S::real_zero();
            for i in 0..n {
                sum_a2 = sum_a2 + re(a, i) * re(a, i);
                sum_b2 = sum_b2 + re(b, i) * re(b, i);
                sum_ab = sum_ab + re(a, i) * re(b, i);
            }
            let mut cross = S::real_zero();
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = re(a, i) * re(b, j) - re(a, j) * re(b, i);
                    cross = cross + d.clone() * d;
                }
            }
            Ok((sum_a2 * sum_b2, sum_ab.clone() * sum_ab + cross))
        }
        IdentityInputs::IdAux { x, y, alpha } => {
            if y.is_zero() {
                return Err(CoreError::IdentityInput("ID_AUX requires y != 0".into()));
            }
            let ny = norm_sq(y);
            let ip = inner(x, y)?;
            let lhs_vec = x.add(&y.scale(alpha));
            let lhs = ny.clone() * ny.clone() * norm_sq(&lhs_vec);
            let mid = alpha.clone() * S::from_real(ny.clone()) + ip.clone();
            let tail_vec = x.scale(&S::from_real(ny.clone())).sub(&y.scale(&ip));
            let rhs = ny * mid.mod_sq() + norm_sq(&tail_vec);
            Ok((lhs, rhs))
        }
        IdentityInputs::Id10 { a, x, alpha, beta } => {
            if x.is_zero() {
                return Err(CoreError::IdentityInput("ID_10 requires x != 0".into()));
            }
            let nx = norm_sq(x);
            let ip = inner(a, x)?;
            let lhs_vec = x
                .scale(&(alpha.clone() * ip.clone()))
                .sub(&a.scale(&(beta.clone() * S::from_real(nx.clone()))));
            let lhs = norm_sq(&lhs_vec);
            let diff = beta.clone() - alpha.clone();
            let residual_vec = a.scale(&S::from_real(nx.clone())).sub(&x.scale(&ip));
            let rhs = nx * ip.mod_sq() * diff.mod_sq()
                + beta.mod_sq() * norm_sq(&residual_vec);
            Ok((lhs, rhs))
        }
        IdentityInputs::Id12 { a, x, alpha, beta } => {
            let nx = norm_sq(x);
            let na = norm_sq(a);
            let ip = inner(a, x)?;
            let lhs_vec = x
                .scale(&(alpha.clone() * ip.clone()))
                .sub(&a.scale(&(beta.clone() * S::from_real(nx.clone()))));
            let lhs = norm_sq(&lhs_vec);
            let diff = alpha.clone() - beta.clone();
            let rhs = nx.clone()
                * (diff.mod_sq() * ip.mod_sq() + beta.mod_sq() * na * nx.clone()
                    - beta.mod_sq() * ip.mod_sq());
            Ok((lhs, rhs))
        }
        IdentityInputs::Id13 { a, x } => {
            let nx = norm_sq(x);
            let na = norm_sq(a);
            let ip = inner(a, x)?;
            let two_ip = ip.clone() + ip;
            let lhs_vec = x.scale(&two_ip).sub(&a.scale(&S::from_real(nx.clone())));
            Ok((norm_sq(&lhs_vec), nx.clone() * nx * na))
        }
        IdentityInputs::Residual { a, x } => {
            if x.is_zero() {
                return Err(CoreError::IdentityInput("RESIDUAL requires x != 0".into()));
            }
            let nx = norm_sq(x);
            let na = norm_sq(a);
            let ip = inner(a, x)?;
            let lhs_vec = a.scale(&S::from_real(nx.clone())).sub(&x.scale(&ip));
            let lhs = norm_sq(&lhs_vec);
            let rhs = nx.clone() * (na * nx - ip.mod_sq());
            Ok((lhs, rhs))
        }
        IdentityInputs::ScalarMax { p, p1, q, q1 } => {
            let zero = S::real_zero();
            if *p < zero || *p1 < zero || *q < zero || *q1 < zero {
                return Err(CoreError::IdentityInput(
                    "SCALAR_MAX requires nonnegative inputs".into(),
                ));
            }
            let m = if p >= q { p.clone() } else { q.clone() };
            let lhs = p.clone() * p1.clone() + q.clone() * q1.clone();
            let rhs = m * (p1.clone() + q1.clone());
            Ok((lhs, rhs))
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExactReport {
    pub id: IdentityId,
    pub residual: GaussRational,
    pub exact_pass: bool,
}

/// Run an identity on the exact backend. For SCALAR_MAX the pass condition is
/// LHS <= RHS exactly; for all others the residual must be exactly zero.
pub fn check_exact(inputs: &IdentityInputs<GaussRational>) -> Result<ExactReport, CoreError> {
    let (lhs, rhs) = evaluate_sides(inputs)?;
    let residual = lhs - rhs;
    let exact_pass = match inputs.id() {
        IdentityId::ScalarMax => residual <= BigRational::zero(),
        _ => residual.is_zero(),
    };
    Ok(ExactReport {
        id: inputs.id(),
        residual: GaussRational::from_real(residual),
        exact_pass,
    })
}

/// Magnitude of the summands that cancel when an identity is evaluated in
/// floating point: every subtraction replaced by an addition. Rounding error
/// is proportional to this, not to the (possibly tiny) final sides, so the
/// float check scales its tolerance by it.
pub fn cancellation_scale(inputs: &IdentityInputs<Complex64>) -> f64 {
    match inputs {
        IdentityInputs::Lagrange { a, b } => {
            // Both sides are sums of nonnegative products of degree (2, 2).
            2.0 * norm_sq(a) * norm_sq(b)
        }
        IdentityInputs::IdAux { x, y, alpha } => {
            let ny = norm_sq(y);
            ny * ny * (norm_sq(x) + alpha.norm_sqr() * ny)
        }
        IdentityInputs::Id10 { a, x, alpha, beta }
        | IdentityInputs::Id12 { a, x, alpha, beta } => {
            let (nx, na) = (norm_sq(x), norm_sq(a));
            let ipm = nx * na; // |<a,x>|^2 <= ||a||^2 ||x||^2
            nx * (alpha.norm_sqr() * ipm + beta.norm_sqr() * nx * na)
                + nx * ipm * (alpha - beta).norm_sqr()
                + beta.norm_sqr() * nx * (nx * na + ipm)
        }
        IdentityInputs::Id13 { a, x } => {
            let (nx, na) = (norm_sq(x), norm_sq(a));
            nx * nx * na * 6.0
        }
        IdentityInputs::Residual { a, x } => {
            let (nx, na) = (norm_sq(x), norm_sq(a));
            2.0 * nx * (nx * na + nx * na)
        }
        IdentityInputs::ScalarMax { p, p1, q, q1 } => (p + q) * (p1 + q1),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FloatReport {
    pub id: IdentityId,
    pub residual: f64,
    pub scale: f64,
    pub pass: bool,
}

/// Float-backend residual check: |LHS - RHS| <= eps * scale, where scale is
/// the larger of the two sides and the cancellation magnitude of the
/// intermediate terms (SCALAR_MAX: LHS <= RHS + eps * scale).
pub fn check_float(
    inputs: &IdentityInputs<Complex64>,
    eps: f64,
) -> Result<FloatReport, CoreError> {
    let (lhs, rhs) = evaluate_sides(inputs)?;
    let scale = lhs
        .abs()
        .max(rhs.abs())
        .max(cancellation_scale(inputs))
        .max(1.0);
    let residual = lhs - rhs;
    let pass = match inputs.id() {
        IdentityId::ScalarMax => residual <= eps * scale,
        _ => residual.abs() <= eps * scale,
    };
    Ok(FloatReport {
        id: inputs.id(),
        residual,
        scale,
        pass,
    })
}

/// Round exact inputs to the float backend, for residual cross-checks on the
/// same instances.
pub fn to_float(inputs: &IdentityInputs<GaussRational>) -> IdentityInputs<Complex64> {
    let vec = |v: &Vector<GaussRational>| {
        Vector::new(v.entries().iter().map(|e| e.to_complex64()).collect())
    };
    match inputs {
        IdentityInputs::Lagrange { a, b } => IdentityInputs::Lagrange { a: vec(a), b: vec(b) },
        IdentityInputs::IdAux { x, y, alpha } => IdentityInputs::IdAux {
            x: vec(x),
            y: vec(y),
            alpha: alpha.to_complex64(),
        },
        IdentityInputs::Id10 { a, x, alpha, beta } => IdentityInputs::Id10 {
            a: vec(a),
            x: vec(x),
            alpha: alpha.to_complex64(),
            beta: beta.to_complex64(),
        },
        IdentityInputs::Id12 { a, x, alpha, beta } => IdentityInputs::Id12 {
            a: vec(a),
            x: vec(x),
            alpha: alpha.to_complex64(),
            beta: beta.to_complex64(),
        },
        IdentityInputs::Id13 { a, x } => IdentityInputs::Id13 { a: vec(a), x: vec(x) },
        IdentityInputs::Residual { a, x } => IdentityInputs::Residual { a: vec(a), x: vec(x) },
        IdentityInputs::ScalarMax { p, p1, q, q1 } => IdentityInputs::ScalarMax {
            p: crate::scalar::rational_to_f64(p),
            p1: crate::scalar::rational_to_f64(p1),
            q: crate::scalar::rational_to_f64(q),
            q1: crate::scalar::rational_to_f64(q1),
        },
    }
}

pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num = rng.gen_range(-24i64..=24);
    let den = rng.gen_range(1i64..=12);
    BigRational::new(num.into(), den.into())
}

pub fn random_gauss_rational<R: Rng>(rng: &mut R) -> GaussRational {
    GaussRational::new(random_rational(rng), random_rational(rng))
}

fn random_qvector<R: Rng>(dim: usize, real: bool, rng: &mut R) -> Vector<GaussRational> {
    Vector::new(
        (0..dim)
            .map(|_| {
                if real {
                    GaussRational::from_real(random_rational(rng))
                } else {
                    random_gauss_rational(rng)
                }
            })
            .collect(),
    )
}

fn random_nonzero_qvector<R: Rng>(dim: usize, rng: &mut R) -> Vector<GaussRational> {
    loop {
        let v = random_qvector(dim, false, rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Random Gaussian-rational instance for an identity, at the given dimension.
pub fn random_exact_inputs<R: Rng>(
    id: IdentityId,
    dim: usize,
    rng: &mut R,
) -> IdentityInputs<GaussRational> {
    match id {
        IdentityId::Lagrange => IdentityInputs::Lagrange {
            a: random_qvector(dim, true, rng),
            b: random_qvector(dim, true, rng),
        },
        IdentityId::IdAux => IdentityInputs::IdAux {
            x: random_qvector(dim, false, rng),
            y: random_nonzero_qvector(dim, rng),
            alpha: random_gauss_rational(rng),
        },
        IdentityId::Id10 => IdentityInputs::Id10 {
            a: random_qvector(dim, false, rng),
            x: random_nonzero_qvector(dim, rng),
            alpha: random_gauss_rational(rng),
            beta: random_gauss_rational(rng),
        },
        IdentityId::Id12 => IdentityInputs::Id12 {
            a: random_qvector(dim, false, rng),
            x: random_qvector(dim, false, rng),
            alpha: random_gauss_rational(rng),
            beta: random_gauss_rational(rng),
        },
        IdentityId::Id13 => IdentityInputs::Id13 {
            a: random_qvector(dim, false, rng),
            x: random_qvector(dim, false, rng),
        },
        IdentityId::Residual => IdentityInputs::Residual {
            a: random_qvector(dim, false, rng),
            x: random_nonzero_qvector(dim, rng),
        },
        IdentityId::ScalarMax => {
            let mut pos = || {
                let r = random_rational(rng);
                r.abs()
            };
            IdentityInputs::ScalarMax {
                p: pos(),
                p1: pos(),
                q: pos(),
                q1: pos(),
            }
        }
    }
}
