//! Spectral norms and positivity tests for structured operators.
//!
//! Two independent routes are kept deliberately separate: a Gram-reduction
//! path that restricts a self-adjoint operator to the span of its rank-one
//! terms and diagonalizes the small Hermitian block with a hand-rolled complex
//! Jacobi sweep, and a dense singular-value path (nalgebra SVD) used as the
//! cross-check oracle.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::CoreError;
use crate::linalg::{inner, orthonormal_basis, CVector};
use crate::operator::{compose, COperator};
use crate::scalar::TolerancePolicy;

const SPAN_DROP_TOL: f64 = 1e-12;

/// Eigenvalues of a Hermitian matrix via cyclic complex Jacobi rotations.
/// The input is Hermitized first; intended for the small blocks (<= ~16)
/// this crate produces.
pub fn hermitian_eigenvalues(mat: &[Vec<Complex64>]) -> Vec<f64> {
    let n = mat.len();
    if n == 0 {
        return Vec::new();
    }
    let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for r in 0..n {
        for c in 0..n {
            a[r][c] = 0.5 * (mat[r][c] + mat[c][r].conj());
        }
    }
    let scale: f64 = a
        .iter()
        .flatten()
        .map(|e| e.norm())
        .fold(0.0, f64::max)
        .max(1.0);

    for _sweep in 0..100 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p][q].norm());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                let abs_apq = apq.norm();
                if abs_apq <= 1e-18 * scale {
                    continue;
                }
                let phase = apq / abs_apq;
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let tau = (aqq - app) / (2.0 * abs_apq);
                // Smaller root of t^2 - 2 tau t - 1 = 0.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (tau * tau + 1.0).sqrt())
                } else {
                    1.0 / (-tau + (tau * tau + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // Right-multiply by the rotation U (columns p, q).
                for r in 0..n {
                    let arp = a[r][p];
                    let arq = a[r][q];
                    a[r][p] = c * arp + s * phase.conj() * arq;
                    a[r][q] = -s * phase * arp + c * arq;
                }
                // Left-multiply by U^*.
                for col in 0..n {
                    let apc = a[p][col];
                    let aqc = a[q][col];
                    a[p][col] = c * apc + s * phase * aqc;
                    a[q][col] = -s * phase.conj() * apc + c * aqc;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i].re).collect()
}

fn to_dmatrix(dense: &[Vec<Complex64>]) -> DMatrix<Complex64> {
    let n = dense.len();
    DMatrix::from_fn(n, n, |r, c| dense[r][c])
}

/// Largest singular value of the dense realization.
pub fn spectral_norm_dense(op: &COperator) -> f64 {
    let m = to_dmatrix(&op.dense());
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

/// Gram-reduction spectral norm. Self-adjoint operators are restricted to the
/// span of their rank-one terms and diagonalized there; everything else goes
/// through T*T, which composition keeps in structured form and which is always
/// self-adjoint, so ||T|| = sqrt(max eig of T*T).
pub fn spectral_norm_gram(op: &COperator) -> Result<f64, CoreError> {
    if is_self_adjoint(op, &TolerancePolicy::default()) {
        return hermitian_gram_extent(op);
    }
    let tt = compose(&op.adjoint(), op)?;
    Ok(hermitian_gram_extent(&tt)?.max(0.0).sqrt())
}

/// max{|eigenvalues of the restriction to the term span|, |shift| if the span
/// is proper}; equals the spectral norm when the operator is self-adjoint.
fn hermitian_gram_extent(op: &COperator) -> Result<f64, CoreError> {
    let span_vectors: Vec<CVector> = op
        .terms()
        .iter()
        .flat_map(|(_, u, v)| [u.clone(), v.clone()])
        .collect();
    let basis = orthonormal_basis(&span_vectors, SPAN_DROP_TOL);
    let k = basis.len();
    let mu = op.shift().norm();
    if k == 0 {
        return Ok(mu);
    }
    let mut block = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    for (j, qj) in basis.iter().enumerate() {
        let tqj = op.apply(qj)?;
        for (i, qi) in basis.iter().enumerate() {
            block[i][j] = inner(&tqj, qi)?;
        }
    }
    let mut best = hermitian_eigenvalues(&block)
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max);
    if k < op.dim() {
        best = best.max(mu);
    }
    Ok(best)
}

pub fn is_self_adjoint(op: &COperator, policy: &TolerancePolicy) -> bool {
    let a = op.dense();
    let adj = op.adjoint().dense();
    let scale = a.iter().flatten().map(|e| e.norm()).fold(0.0, f64::max);
    let tol = policy.tolerance(scale);
    a.iter()
        .zip(&adj)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).norm() <= tol))
}

/// Spectral norm via the Gram-reduction route, with the dense SVD as a
/// fallback if the reduction cannot be formed.
pub fn spectral_norm(op: &COperator) -> f64 {
    spectral_norm_gram(op).unwrap_or_else(|_| spectral_norm_dense(op))
}

/// Self-adjoint within tolerance and minimum eigenvalue >= -tolerance.
pub fn is_positive(op: &COperator, policy: &TolerancePolicy) -> bool {
    if !is_self_adjoint(op, policy) {
        return false;
    }
    let dense = op.dense();
    let scale = dense.iter().flatten().map(|e| e.norm()).fold(0.0, f64::max);
    let min_eig = hermitian_eigenvalues(&dense)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    min_eig >= -policy.tolerance(scale)
}
