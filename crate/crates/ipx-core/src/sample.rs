//! Constrained random vector sampling on the float backend. Entries are drawn
//! i.i.d. from the standard complex (or real) Gaussian and constraints are then
//! enforced in a fixed order; rejection-style constraints resample up to a
//! bounded number of attempts.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::CoreError;
use crate::linalg::{inner, norm, project_out, CVector, Vector};

pub const NONZERO_THRESHOLD: f64 = 1e-6;
pub const PROPORTIONALITY_THRESHOLD: f64 = 1e-6;
pub const MAX_ATTEMPTS: usize = 100;

#[derive(Debug, Clone)]
pub enum Constraint<'a> {
    Real,
    NonZero,
    Unit,
    OrthogonalTo(&'a CVector),
    InnerEqualsOne(&'a CVector),
    NotProportionalTo(&'a CVector),
}

impl Constraint<'_> {
    fn order(&self) -> u8 {
        match self {
            Constraint::Real => 0,
            Constraint::NonZero => 1,
            Constraint::Unit => 2,
            Constraint::OrthogonalTo(_) => 3,
            Constraint::InnerEqualsOne(_) => 4,
            Constraint::NotProportionalTo(_) => 5,
        }
    }
}

pub fn gaussian_vector<R: Rng>(dim: usize, real: bool, rng: &mut R) -> CVector {
    let entries = (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = if real { 0.0 } else { rng.sample(StandardNormal) };
            Complex64::new(re, im)
        })
        .collect();
    Vector::new(entries)
}

/// One pass over the constraints in canonical order. `Ok(None)` means a
/// rejection-style constraint failed and the caller should resample.
fn enforce(mut v: CVector, constraints: &[Constraint]) -> Result<Option<CVector>, CoreError> {
    let mut ordered: Vec<&Constraint> = constraints.iter().collect();
    ordered.sort_by_key(|c| c.order());
    for c in ordered {
        match c {
            Constraint::Real => {
                v = Vector::new(v.entries().iter().map(|e| Complex64::new(e.re, 0.0)).collect());
            }
            Constraint::NonZero => {
                if norm(&v) <= NONZERO_THRESHOLD {
                    return Ok(None);
                }
            }
            Constraint::Unit => {
                let n = norm(&v);
                if n <= NONZERO_THRESHOLD {
                    return Ok(None);
                }
                v = v.scale(&Complex64::new(1.0 / n, 0.0));
            }
            Constraint::OrthogonalTo(z) => {
                v = project_out(&v, z)?;
            }
            Constraint::InnerEqualsOne(z) => {
                let defect = Complex64::new(1.0, 0.0) - inner(&v, z)?;
                let nz = crate::linalg::norm_sq(z);
                if nz <= NONZERO_THRESHOLD * NONZERO_THRESHOLD {
                    return Err(CoreError::InfeasibleConstraints(
                        "INNER_EQUALS_ONE against (near-)zero vector".into(),
                    ));
                }
                v = v.add(&z.scale(&(defect / nz)));
            }
            Constraint::NotProportionalTo(w) => {
                let residual = project_out(&v, w)?;
                if norm(&residual) < PROPORTIONALITY_THRESHOLD * norm(&v) {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(v))
}

pub fn sample_with_rng<R: Rng>(
    dim: usize,
    constraints: &[Constraint],
    rng: &mut R,
) -> Result<CVector, CoreError> {
    assert!(dim >= 1);
    let real = constraints.iter().any(|c| matches!(c, Constraint::Real));
    for _ in 0..MAX_ATTEMPTS {
        let v = gaussian_vector(dim, real, rng);
        if let Some(v) = enforce(v, constraints)? {
            // Post-projection degeneracy (e.g. ORTHOGONAL_TO spanning the
            // space) shows up as a collapsed vector; resample.
            let needs_mass = constraints.iter().any(|c| {
                matches!(
                    c,
                    Constraint::NonZero | Constraint::Unit | Constraint::OrthogonalTo(_)
                )
            });
            if needs_mass && norm(&v) <= NONZERO_THRESHOLD {
                continue;
            }
            return Ok(v);
        }
    }
    Err(CoreError::InfeasibleConstraints(format!(
        "no sample satisfying constraints after {MAX_ATTEMPTS} attempts (dim {dim})"
    )))
}

/// Deterministic seeded sampling: same seed, same output.
pub fn sample(dim: usize, constraints: &[Constraint], seed: u64) -> Result<CVector, CoreError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with_rng(dim, constraints, &mut rng)
}

/// Seed mixing for partitioning sample streams across entries, dimensions and
/// sample indices (splitmix64-style finalizer).
pub fn derive_seed(base: u64, tag: &str, dim: u64, index: u64) -> u64 {
    let mut h = base ^ 0x9e37_79b9_7f4a_7c15;
    for b in tag.bytes() {
        h = h.wrapping_mul(0x100_0000_01b3).wrapping_add(b as u64);
    }
    h = h.wrapping_add(dim.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    h = h.wrapping_add(index.wrapping_mul(0x94d0_49bb_1331_11eb));
    h ^= h >> 30;
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^= h >> 27;
    h = h.wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^= h >> 31;
    h
}

pub fn rng_for(base: u64, tag: &str, dim: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, tag, dim, index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm_sq;

    fn cv(vals: &[(f64, f64)]) -> CVector {
        Vector::new(vals.iter().map(|&(r, i)| Complex64::new(r, i)).collect())
    }

    #[test]
    fn unit_constraint_forces_unit_norm() {
        let v = sample(2, &[Constraint::Unit], 7).unwrap();
        assert!((norm(&v) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn orthogonality_constraint() {
        let z = cv(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let v = sample(3, &[Constraint::Real, Constraint::OrthogonalTo(&z)], 11).unwrap();
        assert!(v.entry(0).norm() <= 1e-12);
        assert!(v.is_real());
    }

    #[test]
    fn inner_equals_one_constraint() {
        let z = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        let v = sample(2, &[Constraint::InnerEqualsOne(&z)], 3).unwrap();
        let ip = inner(&v, &z).unwrap();
        assert!((ip - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn determinism_same_seed_same_vector() {
        let a = sample(4, &[Constraint::NonZero], 42).unwrap();
        let b = sample(4, &[Constraint::NonZero], 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn infeasible_orthogonality_errors_out() {
        let e1 = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        let e2 = cv(&[(0.0, 0.0), (1.0, 0.0)]);
        let res = sample(
            2,
            &[
                Constraint::OrthogonalTo(&e1),
                Constraint::OrthogonalTo(&e2),
                Constraint::Unit,
            ],
            5,
        );
        assert!(matches!(res, Err(CoreError::InfeasibleConstraints(_))));
    }

    #[test]
    fn gaussian_norm_sq_is_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = gaussian_vector(5, false, &mut rng);
        assert!(norm_sq(&v) > 0.0);
    }
}
