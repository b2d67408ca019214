//! Structured bounded operators on the coordinate space: finite sums of
//! rank-one terms `sum_i c_i (u_i (x) v_i)` plus a multiple of the identity.
//! Rank-one action follows the convention `(x (x) y)(w) = <w, y> x`.

use num_complex::Complex64;

use crate::error::CoreError;
use crate::linalg::{gram, inner, norm_sq, CVector, Vector};
use crate::scalar::{GaussRational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct StructuredOperator<S: Scalar> {
    terms: Vec<(S, Vector<S>, Vector<S>)>,
    shift: S,
    dim: usize,
}

pub type COperator = StructuredOperator<Complex64>;
pub type QOperator = StructuredOperator<GaussRational>;

impl<S: Scalar> StructuredOperator<S> {
    pub fn identity(dim: usize) -> Self {
        StructuredOperator {
            terms: Vec::new(),
            shift: S::one(),
            dim,
        }
    }

    pub fn zero(dim: usize) -> Self {
        StructuredOperator {
            terms: Vec::new(),
            shift: S::zero(),
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shift(&self) -> &S {
        &self.shift
    }

    pub fn terms(&self) -> &[(S, Vector<S>, Vector<S>)] {
        &self.terms
    }

    pub fn apply(&self, w: &Vector<S>) -> Result<Vector<S>, CoreError> {
        if w.dim() != self.dim {
            return Err(CoreError::DimensionMismatch(w.dim(), self.dim));
        }
        let mut out = w.scale(&self.shift);
        for (c, u, v) in &self.terms {
            let coeff = c.clone() * inner(w, v)?;
            out = out.add(&u.scale(&coeff));
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        StructuredOperator {
            terms: self
                .terms
                .iter()
                .map(|(c, u, v)| (c.conj(), v.clone(), u.clone()))
                .collect(),
            shift: self.shift.conj(),
            dim: self.dim,
        }
    }

    /// Dense n x n realization, row-major: M[r][c] such that (Tw)_r = sum_c M[r][c] w_c.
    pub fn dense(&self) -> Vec<Vec<S>> {
        let n = self.dim;
        let mut m = vec![vec![S::zero(); n]; n];
        for (idx, row) in m.iter_mut().enumerate() {
            row[idx] = self.shift.clone();
        }
        for (c, u, v) in &self.terms {
            for r in 0..n {
                for col in 0..n {
                    let add = c.clone() * u.entry(r).clone() * v.entry(col).conj();
                    m[r][col] = m[r][col].clone() + add;
                }
            }
        }
        m
    }
}

/// x (x) y, acting as w -> <w, y> x.
pub fn rank_one<S: Scalar>(x: &Vector<S>, y: &Vector<S>) -> Result<StructuredOperator<S>, CoreError> {
    if x.dim() != y.dim() {
        return Err(CoreError::DimensionMismatch(x.dim(), y.dim()));
    }
    Ok(StructuredOperator {
        terms: vec![(S::one(), x.clone(), y.clone())],
        shift: S::zero(),
        dim: x.dim(),
    })
}

/// Selberg operator S_Z = sum_i (z_i (x) z_i) / d_i with d_i = sum_j |<z_i, z_j>|.
///
/// On the exact backend the weights are rational only when every Gram entry
/// has zero imaginary part (e.g. singleton or orthogonal sets); other exact
/// inputs are rejected rather than approximated.
pub fn selberg<S: Scalar>(vectors: &[Vector<S>]) -> Result<StructuredOperator<S>, CoreError>
where
    S: ScalarModulus,
{
    if vectors.is_empty() {
        return Err(CoreError::SelbergZeroVector);
    }
    let dim = vectors[0].dim();
    for z in vectors {
        if z.dim() != dim {
            return Err(CoreError::DimensionMismatch(z.dim(), dim));
        }
        if z.is_zero() {
            return Err(CoreError::SelbergZeroVector);
        }
    }
    let g = gram(vectors)?;
    let n = vectors.len();
    let mut terms = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = S::real_zero();
        for j in 0..n {
            let m = g
                .entry(i, j)
                .modulus()
                .ok_or(CoreError::IrrationalModulus)?;
            d = d + m;
        }
        // d_i >= ||z_i||^2 > 0, so the weight is well-defined.
        let weight = S::one().div(&S::from_real(d));
        terms.push((weight, vectors[i].clone(), vectors[i].clone()));
    }
    Ok(StructuredOperator {
        terms,
        shift: S::zero(),
        dim,
    })
}

/// Backend-specific modulus |z| as an element of the real subfield, when
/// representable there.
pub trait ScalarModulus: Scalar {
    fn modulus(&self) -> Option<Self::Real>;
}

impl ScalarModulus for Complex64 {
    fn modulus(&self) -> Option<f64> {
        Some(self.norm())
    }
}

impl ScalarModulus for GaussRational {
    fn modulus(&self) -> Option<num_rational::BigRational> {
        use num_traits::Signed;
        if num_traits::Zero::is_zero(&self.im) {
            Some(self.re.abs())
        } else {
            None
        }
    }
}

/// Linear combination sum_k c_k T_k + shift * I.
pub fn combine<S: Scalar>(
    parts: &[(S, &StructuredOperator<S>)],
    shift: S,
) -> Result<StructuredOperator<S>, CoreError> {
    let dim = parts
        .first()
        .map(|(_, t)| t.dim)
        .unwrap_or_else(|| panic!("combine of empty parts needs an explicit dimension; use combine_dim"));
    combine_dim(parts, shift, dim)
}

pub fn combine_dim<S: Scalar>(
    parts: &[(S, &StructuredOperator<S>)],
    shift: S,
    dim: usize,
) -> Result<StructuredOperator<S>, CoreError> {
    let mut terms = Vec::new();
    let mut total_shift = shift;
    for (c, t) in parts {
        if t.dim != dim {
            return Err(CoreError::DimensionMismatch(t.dim, dim));
        }
        for (tc, u, v) in &t.terms {
            terms.push((c.clone() * tc.clone(), u.clone(), v.clone()));
        }
        total_shift = total_shift + c.clone() * t.shift.clone();
    }
    Ok(StructuredOperator {
        terms,
        shift: total_shift,
        dim,
    })
}

/// Operator composition: apply(compose(T, U), w) = T(U(w)).
pub fn compose<S: Scalar>(
    t: &StructuredOperator<S>,
    u: &StructuredOperator<S>,
) -> Result<StructuredOperator<S>, CoreError> {
    if t.dim != u.dim {
        return Err(CoreError::DimensionMismatch(t.dim, u.dim));
    }
    let mut terms = Vec::new();
    // Cross terms: c_i d_j <p_j, v_i> (u_i (x) q_j).
    for (c, tu, tv) in &t.terms {
        for (d, up, uq) in &u.terms {
            let coeff = c.clone() * d.clone() * inner(up, tv)?;
            terms.push((coeff, tu.clone(), uq.clone()));
        }
        // T-term applied to the shift part of U.
        terms.push((c.clone() * u.shift.clone(), tu.clone(), tv.clone()));
    }
    // Shift of T applied to the terms of U.
    for (d, up, uq) in &u.terms {
        terms.push((t.shift.clone() * d.clone(), up.clone(), uq.clone()));
    }
    Ok(StructuredOperator {
        terms,
        shift: t.shift.clone() * u.shift.clone(),
        dim: t.dim,
    })
}

/// Orthogonal projection onto span{x} for unit x, i.e. x (x) x.
pub fn projection(x: &Vector<Complex64>) -> Result<COperator, CoreError> {
    rank_one(x, x)
}

/// Shorthand for the Selberg denominators d_i; exposed for tests.
pub fn selberg_denominators(vectors: &[CVector]) -> Result<Vec<f64>, CoreError> {
    let g = gram(vectors)?;
    let n = vectors.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = 0.0;
        for j in 0..n {
            d += g.entry(i, j).norm();
        }
        if d <= 0.0 {
            return Err(CoreError::SelbergZeroVector);
        }
        out.push(d);
    }
    Ok(out)
}

pub fn dense_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for r in 0..n {
        for c in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += a[r][k] * b[k][c];
            }
            m[r][c] = acc;
        }
    }
    m
}

pub fn dense_max_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    let mut max = 0.0_f64;
    for (ra, rb) in a.iter().zip(b) {
        for (ea, eb) in ra.iter().zip(rb) {
            max = max.max((ea - eb).norm());
        }
    }
    max
}

/// Quadratic form <T a, a> for the float backend, real part (real exactly for
/// self-adjoint T up to rounding).
pub fn quadratic_form(t: &COperator, a: &CVector) -> Result<f64, CoreError> {
    Ok(inner(&t.apply(a)?, a)?.re)
}

/// ||z_i||^2-based sanity used by tests: every Selberg weight obeys
/// 0 < 1/d_i <= 1/||z_i||^2.
pub fn selberg_weights_valid(vectors: &[CVector]) -> Result<bool, CoreError> {
    let ds = selberg_denominators(vectors)?;
    Ok(vectors
        .iter()
        .zip(&ds)
        .all(|(z, d)| *d >= norm_sq(z) && *d > 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm;
    use num_complex::Complex64 as C;

    fn cv(vals: &[f64]) -> CVector {
        Vector::new(vals.iter().map(|&r| C::new(r, 0.0)).collect())
    }

    #[test]
    fn rank_one_action() {
        let e1 = cv(&[1.0, 0.0]);
        let e2 = cv(&[0.0, 1.0]);
        let p = rank_one(&e1, &e1).unwrap();
        assert_eq!(p.apply(&cv(&[3.0, 4.0])).unwrap(), cv(&[3.0, 0.0]));

        let t = rank_one(&e1, &e2).unwrap();
        assert_eq!(t.apply(&cv(&[0.0, 5.0])).unwrap(), cv(&[5.0, 0.0]));
    }

    #[test]
    fn selberg_singleton_unit_is_projection() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x = cv(&[s, s]);
        let sel = selberg(&[x.clone()]).unwrap();
        let p = rank_one(&x, &x).unwrap();
        let w = cv(&[1.0, -2.0]);
        let d = sel.apply(&w).unwrap().sub(&p.apply(&w).unwrap());
        assert!(norm(&d) < 1e-12);
    }

    #[test]
    fn selberg_orthonormal_pair_is_plane_projection() {
        let e1 = cv(&[1.0, 0.0, 0.0]);
        let e2 = cv(&[0.0, 1.0, 0.0]);
        let sel = selberg(&[e1, e2]).unwrap();
        let w = cv(&[2.0, -3.0, 7.0]);
        assert_eq!(sel.apply(&w).unwrap(), cv(&[2.0, -3.0, 0.0]));
    }

    #[test]
    fn selberg_duplicated_vector_halves_weights() {
        let e1 = cv(&[1.0, 0.0]);
        let sel = selberg(&[e1.clone(), e1.clone()]).unwrap();
        // Each copy gets d_i = 2, so the sum equals e1 (x) e1.
        let w = cv(&[5.0, 3.0]);
        assert_eq!(sel.apply(&w).unwrap(), cv(&[5.0, 0.0]));
    }

    #[test]
    fn selberg_rejects_zero_vectors() {
        let z = cv(&[0.0, 0.0]);
        assert!(matches!(
            selberg(&[z]),
            Err(CoreError::SelbergZeroVector)
        ));
    }

    #[test]
    fn combine_reflection_and_cancellation() {
        let e1 = cv(&[1.0, 0.0]);
        let p = rank_one(&e1, &e1).unwrap();
        let refl = combine(&[(C::new(2.0, 0.0), &p)], C::new(-1.0, 0.0)).unwrap();
        assert_eq!(refl.apply(&cv(&[3.0, 4.0])).unwrap(), cv(&[3.0, -4.0]));

        let zero = combine(
            &[(C::new(1.0, 0.0), &p), (C::new(-1.0, 0.0), &p)],
            C::new(0.0, 0.0),
        )
        .unwrap();
        assert!(zero.apply(&cv(&[1.0, 1.0])).unwrap().is_zero());

        let id = combine_dim(&[], C::new(1.0, 0.0), 2).unwrap();
        assert_eq!(id.apply(&cv(&[1.0, 2.0])).unwrap(), cv(&[1.0, 2.0]));
    }

    #[test]
    fn compose_examples() {
        let e1 = cv(&[1.0, 0.0]);
        let e2 = cv(&[0.0, 1.0]);
        let p1 = rank_one(&e1, &e1).unwrap();
        let p2 = rank_one(&e2, &e2).unwrap();
        let z = compose(&p1, &p2).unwrap();
        assert!(z.apply(&cv(&[1.0, 1.0])).unwrap().is_zero());

        let id = StructuredOperator::identity(2);
        let t = compose(&id, &p1).unwrap();
        let w = cv(&[2.0, 3.0]);
        assert_eq!(t.apply(&w).unwrap(), p1.apply(&w).unwrap());

        let pp = compose(&p1, &p1).unwrap();
        assert_eq!(pp.apply(&w).unwrap(), p1.apply(&w).unwrap());
    }

    #[test]
    fn dense_agrees_with_apply() {
        let u = cv(&[1.0, 2.0, -1.0]);
        let v = cv(&[0.5, 0.0, 3.0]);
        let t = combine(
            &[(C::new(1.5, 0.5), &rank_one(&u, &v).unwrap())],
            C::new(0.25, -1.0),
        )
        .unwrap();
        let m = t.dense();
        let w = cv(&[1.0, -1.0, 2.0]);
        let tw = t.apply(&w).unwrap();
        for r in 0..3 {
            let mut acc = C::new(0.0, 0.0);
            for c in 0..3 {
                acc += m[r][c] * w.entry(c);
            }
            assert!((acc - tw.entry(r)).norm() < 1e-12);
        }
    }

    #[test]
    fn adjoint_of_compose() {
        let u = cv(&[1.0, 2.0]);
        let v = cv(&[0.0, 1.0]);
        let t = rank_one(&u, &v).unwrap();
        let s = combine(&[(C::new(0.5, 1.0), &t)], C::new(2.0, 0.0)).unwrap();
        let lhs = compose(&s, &t).unwrap().adjoint().dense();
        let rhs = compose(&t.adjoint(), &s.adjoint()).unwrap().dense();
        assert!(dense_max_diff(&lhs, &rhs) < 1e-12);
    }
}
