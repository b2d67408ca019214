//! Complex scalar arithmetic over two backends: IEEE double precision and
//! exact Gaussian rationals, plus the tolerance policy used by every
//! approximate comparison in the crate.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::CoreError;

/// Relative-plus-absolute comparison tolerance. The scale is supplied by the
/// caller (typically the max magnitude of the compared quantities), since
/// inequality chains mix magnitudes across many orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    pub eps_rel: f64,
    pub eps_abs: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            eps_rel: 1e-9,
            eps_abs: 1e-12,
        }
    }
}

impl TolerancePolicy {
    pub fn new(eps_rel: f64, eps_abs: f64) -> Self {
        assert!(eps_rel > 0.0 && eps_abs > 0.0, "tolerances must be positive");
        TolerancePolicy { eps_rel, eps_abs }
    }

    /// tolerance(s) = eps_abs + eps_rel * max(1, s); monotone in the scale.
    pub fn tolerance(&self, scale: f64) -> f64 {
        self.eps_abs + self.eps_rel * scale.abs().max(1.0)
    }
}

/// `lhs <= rhs` up to the policy tolerance at the given scale.
pub fn approx_le(
    lhs: f64,
    rhs: f64,
    scale: f64,
    policy: &TolerancePolicy,
) -> Result<bool, CoreError> {
    if !lhs.is_finite() || !rhs.is_finite() || !scale.is_finite() {
        return Err(CoreError::NonFinite);
    }
    Ok(lhs <= rhs + policy.tolerance(scale))
}

pub fn approx_eq(
    lhs: f64,
    rhs: f64,
    scale: f64,
    policy: &TolerancePolicy,
) -> Result<bool, CoreError> {
    Ok(approx_le(lhs, rhs, scale, policy)? && approx_le(rhs, lhs, scale, policy)?)
}

/// The operations a complex scalar backend must provide. Vectors, operators
/// and identity checks are written against this trait so the float and exact
/// backends share one implementation.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The real subfield: `f64` for the float backend, `BigRational` for the
    /// exact one.
    type Real: Clone + PartialOrd + fmt::Debug + Add<Output = Self::Real> + Sub<Output = Self::Real> + Mul<Output = Self::Real>;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(r: Self::Real) -> Self;
    fn real_zero() -> Self::Real;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn conj(&self) -> Self;
    /// |z|^2 = re^2 + im^2, a nonnegative element of the real subfield.
    fn mod_sq(&self) -> Self::Real;
    fn is_zero(&self) -> bool;
    /// Field division; the divisor must be nonzero.
    fn div(&self, rhs: &Self) -> Self;
    fn scale_real(&self, r: &Self::Real) -> Self;
}

impl Scalar for Complex64 {
    type Real = f64;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }
    fn real_zero() -> f64 {
        0.0
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
    fn conj(&self) -> Self {
        Complex64::new(self.re, -self.im)
    }
    fn mod_sq(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn scale_real(&self, r: &f64) -> Self {
        self * r
    }
}

/// A Gaussian rational: a complex number with arbitrary-precision rational
/// real and imaginary parts. Closed under +, -, *, /, conjugation; equality
/// is decidable, which is what the exact identity suite runs on.
#[derive(Clone, PartialEq, Eq)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_ints(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussRational {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ints(n, 1, 0, 1)
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // Fine for the magnitudes the samplers produce.
    let num = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let den = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    num / den
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussRational::new(re, im)
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Scalar for GaussRational {
    type Real = BigRational;

    fn zero() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        GaussRational::new(BigRational::one(), BigRational::zero())
    }
    fn from_real(r: BigRational) -> Self {
        GaussRational::new(r, BigRational::zero())
    }
    fn real_zero() -> BigRational {
        BigRational::zero()
    }
    fn re(&self) -> BigRational {
        self.re.clone()
    }
    fn im(&self) -> BigRational {
        self.im.clone()
    }
    fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }
    fn mod_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn div(&self, rhs: &Self) -> Self {
        let d = rhs.mod_sq();
        assert!(!d.is_zero(), "division by zero Gaussian rational");
        let num = self.clone() * rhs.conj();
        GaussRational::new(num.re / &d, num.im / &d)
    }
    fn scale_real(&self, r: &BigRational) -> Self {
        GaussRational::new(&self.re * r, &self.im * r)
    }
}

/// Exact equality of two Gaussian rationals. (The float backend has no exact
/// comparison; this is only defined on the exact backend by construction.)
pub fn exact_eq(a: &GaussRational, b: &GaussRational) -> bool {
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approx_le_basic() {
        let pol = TolerancePolicy::default();
        assert!(approx_le(0.5, 0.5, 1.0, &pol).unwrap());
        assert!(approx_le(0.5 + 1e-15, 0.5, 1.0, &pol).unwrap());
        assert!(!approx_le(0.6, 0.5, 1.0, &pol).unwrap());
    }

    #[test]
    fn approx_le_rejects_non_finite() {
        let pol = TolerancePolicy::default();
        assert!(matches!(
            approx_le(f64::NAN, 0.0, 1.0, &pol),
            Err(CoreError::NonFinite)
        ));
        assert!(matches!(
            approx_le(0.0, f64::INFINITY, 1.0, &pol),
            Err(CoreError::NonFinite)
        ));
    }

    #[test]
    fn approx_le_reflexive_and_transitive_up_to_tolerance() {
        let pol = TolerancePolicy::default();
        let scale = 1.0;
        let tol = pol.tolerance(scale);
        for &v in &[0.0, 1.0, -3.5, 1e6_f64.recip()] {
            assert!(approx_le(v, v, scale, &pol).unwrap());
        }
        // a <= b + tol and b <= c + tol imply a <= c + 2 tol.
        let (a, b, c) = (1.0 + 0.9 * tol, 1.0, 1.0 - 0.9 * tol);
        assert!(approx_le(a, b, scale, &pol).unwrap());
        assert!(approx_le(b, c, scale, &pol).unwrap());
        assert!(a <= c + 2.0 * tol);
    }

    #[test]
    fn exact_eq_canonical_form() {
        let half = GaussRational::from_ints(1, 2, 0, 1);
        let two_fourths = GaussRational::from_ints(2, 4, 0, 1);
        assert!(exact_eq(&half, &two_fourths));

        let i = GaussRational::from_ints(0, 1, 1, 1);
        let minus_i = GaussRational::from_ints(0, 1, -1, 1);
        assert!(!exact_eq(&i, &minus_i));

        let z = GaussRational::from_ints(3, 5, 4, 5);
        assert!(exact_eq(&z.conj(), &GaussRational::from_ints(3, 5, -4, 5)));
    }

    #[test]
    fn mod_sq_matches_component_squares() {
        let z = GaussRational::from_ints(3, 7, -5, 2);
        let via_product = z.clone() * z.conj();
        assert_eq!(via_product.re, z.mod_sq());
        assert!(via_product.im.is_zero());
    }

    #[test]
    fn gauss_rational_field_ops() {
        let a = GaussRational::from_ints(1, 3, 2, 5);
        let b = GaussRational::from_ints(-4, 7, 1, 2);
        let q = a.div(&b);
        let back = q * b;
        assert!(exact_eq(&back, &GaussRational::from_ints(1, 3, 2, 5)));
    }
}
