//! Finite-dimensional coordinate vectors over a [`Scalar`] backend, the inner
//! product (linear in the first slot, conjugate-linear in the second), Gram
//! matrices, and orthogonal projections.

use num_complex::Complex64;

use crate::error::CoreError;
use crate::scalar::{GaussRational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S: Scalar> {
    entries: Vec<S>,
}

pub type CVector = Vector<Complex64>;
pub type QVector = Vector<GaussRational>;

impl<S: Scalar> Vector<S> {
    pub fn new(entries: Vec<S>) -> Self {
        assert!(!entries.is_empty(), "vector dimension must be >= 1");
        Vector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Vector::new(vec![S::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &S {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.im() == S::real_zero())
    }

    pub fn scale(&self, c: &S) -> Self {
        Vector::new(self.entries.iter().map(|e| e.clone() * c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

/// <x, y> = sum_i x_i conj(y_i).
pub fn inner<S: Scalar>(x: &Vector<S>, y: &Vector<S>) -> Result<S, CoreError> {
    if x.dim() != y.dim() {
        return Err(CoreError::DimensionMismatch(x.dim(), y.dim()));
    }
    let mut acc = S::zero();
    for (a, b) in x.entries.iter().zip(&y.entries) {
        acc = acc + a.clone() * b.conj();
    }
    Ok(acc)
}

/// <x, x> as an element of the real subfield (exact on the exact backend).
pub fn norm_sq<S: Scalar>(x: &Vector<S>) -> S::Real {
    let mut acc = S::real_zero();
    for e in &x.entries {
        acc = acc + e.mod_sq();
    }
    acc
}

pub fn norm(x: &CVector) -> f64 {
    norm_sq(x).sqrt()
}

/// y minus its component along z: y - (<y,z>/||z||^2) z. Orthogonal to z.
pub fn project_out<S: Scalar>(y: &Vector<S>, z: &Vector<S>) -> Result<Vector<S>, CoreError> {
    if z.is_zero() {
        return Err(CoreError::ProjectionOntoZero);
    }
    let coeff = inner(y, z)?.div(&S::from_real(norm_sq(z)));
    Ok(y.sub(&z.scale(&coeff)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<S: Scalar> {
    entries: Vec<Vec<S>>,
}

impl<S: Scalar> GramMatrix<S> {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.entries[i][j]
    }
}

/// G[i][j] = <z_i, z_j>; Hermitian by construction of the inner product.
pub fn gram<S: Scalar>(vectors: &[Vector<S>]) -> Result<GramMatrix<S>, CoreError> {
    let n = vectors.len();
    let mut entries = vec![vec![S::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] = inner(&vectors[i], &vectors[j])?;
        }
    }
    Ok(GramMatrix { entries })
}

/// Modified Gram-Schmidt over the float backend; returns an orthonormal basis
/// of the span, dropping directions below `drop_tol` relative to the input.
pub fn orthonormal_basis(vectors: &[CVector], drop_tol: f64) -> Vec<CVector> {
    let mut basis: Vec<CVector> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for q in &basis {
            let c = inner(&r, q).expect("dims checked by caller");
            r = r.sub(&q.scale(&c));
        }
        let n = norm(&r);
        if n > drop_tol * norm(v).max(1e-300) {
            basis.push(r.scale(&Complex64::new(1.0 / n, 0.0)));
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn cv(vals: &[(f64, f64)]) -> CVector {
        Vector::new(vals.iter().map(|&(r, i)| C::new(r, i)).collect())
    }

    #[test]
    fn inner_examples() {
        let e1 = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        let e2 = cv(&[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(inner(&e1, &e2).unwrap(), C::new(0.0, 0.0));

        let v = cv(&[(1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(inner(&v, &v).unwrap(), C::new(2.0, 0.0));

        let x = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        let y = cv(&[(0.0, 1.0), (0.0, 0.0)]);
        // conjugate-linear in the second slot
        assert_eq!(inner(&x, &y).unwrap(), C::new(0.0, -1.0));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&cv(&[(3.0, 0.0), (4.0, 0.0)])), 5.0);
        assert_eq!(norm(&cv(&[(0.0, 0.0), (0.0, 0.0)])), 0.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((norm(&cv(&[(s, 0.0), (s, 0.0)])) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn project_out_examples() {
        let y = cv(&[(1.0, 0.0), (1.0, 0.0)]);
        let z = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(project_out(&y, &z).unwrap(), cv(&[(0.0, 0.0), (1.0, 0.0)]));

        let y = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(project_out(&y, &z).unwrap(), cv(&[(0.0, 0.0), (0.0, 0.0)]));

        let y = cv(&[(2.0, 0.0), (3.0, 0.0), (1.0, 0.0)]);
        let z = cv(&[(0.0, 0.0), (0.0, 0.0), (5.0, 0.0)]);
        assert_eq!(
            project_out(&y, &z).unwrap(),
            cv(&[(2.0, 0.0), (3.0, 0.0), (0.0, 0.0)])
        );

        let zero = cv(&[(0.0, 0.0)]);
        assert!(matches!(
            project_out(&zero, &zero),
            Err(CoreError::ProjectionOntoZero)
        ));
    }

    #[test]
    fn gram_examples() {
        let e1 = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        let e2 = cv(&[(0.0, 0.0), (1.0, 0.0)]);
        let g = gram(&[e1.clone(), e2]).unwrap();
        assert_eq!(*g.entry(0, 0), C::new(1.0, 0.0));
        assert_eq!(*g.entry(0, 1), C::new(0.0, 0.0));

        let g = gram(&[e1.clone(), e1.clone()]).unwrap();
        assert_eq!(*g.entry(0, 1), C::new(1.0, 0.0));

        let a = cv(&[(1.0, 0.0), (1.0, 0.0)]);
        let b = cv(&[(1.0, 0.0), (-1.0, 0.0)]);
        let g = gram(&[a, b]).unwrap();
        assert_eq!(*g.entry(0, 0), C::new(2.0, 0.0));
        assert_eq!(*g.entry(1, 0), C::new(0.0, 0.0));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = cv(&[(1.0, 0.0)]);
        let b = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert!(matches!(
            inner(&a, &b),
            Err(CoreError::DimensionMismatch(1, 2))
        ));
    }
}
