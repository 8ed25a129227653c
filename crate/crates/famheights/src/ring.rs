//! Coefficient rings for exact polynomial arithmetic.
//!
//! Everything downstream is generic over [`Ring`]: the rationals ℚ
//! (`BigRat`) and the univariate polynomial ring ℚ[t] ([`crate::upoly::TPoly`])
//! are the two instances the library actually uses. The trait carries just
//! enough structure for fraction-free elimination: exact division and a
//! canonical content gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational number; numerator/denominator kept reduced
/// with positive denominator by `num-rational`.
pub type BigRat = BigRational;

/// Exact commutative ring with the operations elimination needs.
///
/// `gcd` must return a canonical non-negative representative of the content
/// gcd (for ℚ that is gcd of numerators over lcm of denominators), so that
/// dividing a coefficient list by the fold of `gcd` yields a primitive,
/// integrally normalized list. `is_negative` fixes the canonical sign.
pub trait Ring:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Exact division: `Some(q)` with `q * rhs == self`, `None` if `rhs`
    /// does not divide `self` (or `rhs == 0`).
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
    /// Canonical content gcd; `gcd(0, 0) == 0`, otherwise nonzero with
    /// non-negative canonical sign, and it exactly divides both inputs.
    fn gcd(&self, rhs: &Self) -> Self;
    /// Canonical sign of the element (used for sign normalization of forms).
    fn is_negative(&self) -> bool;
    fn from_int(n: i64) -> Self;
    /// Scale by a rational number (always exact in our coefficient rings).
    fn mul_rat(&self, r: &BigRat) -> Self;
}

/// Content gcd of two rationals: gcd of numerators over lcm of denominators,
/// taken non-negative. This is the unique positive rational `g` with
/// `a/g, b/g` coprime integers when `a, b` are not both zero.
pub fn rat_content_gcd(a: &BigRat, b: &BigRat) -> BigRat {
    if Zero::is_zero(a) {
        return abs_rat(b);
    }
    if Zero::is_zero(b) {
        return abs_rat(a);
    }
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    BigRational::new(num, den)
}

fn abs_rat(a: &BigRat) -> BigRat {
    if Signed::is_negative(a) {
        -a.clone()
    } else {
        a.clone()
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn gcd(&self, rhs: &Self) -> Self {
        rat_content_gcd(self, rhs)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn mul_rat(&self, r: &BigRat) -> Self {
        self * r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRat {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_content_gcd_matches_integer_case() {
        assert_eq!(rat_content_gcd(&rat(4, 1), &rat(6, 1)), rat(2, 1));
        assert_eq!(rat_content_gcd(&rat(-4, 1), &rat(6, 1)), rat(2, 1));
        assert_eq!(rat_content_gcd(&rat(0, 1), &rat(-7, 1)), rat(7, 1));
    }

    #[test]
    fn rational_content_gcd_mixed_denominators() {
        // coefficients 1/2, 1/3 -> content 1/6, primitive parts 3 and 2
        let g = rat_content_gcd(&rat(1, 2), &rat(1, 3));
        assert_eq!(g, rat(1, 6));
        assert_eq!(Ring::exact_div(&rat(1, 2), &g).unwrap(), rat(3, 1));
        assert_eq!(Ring::exact_div(&rat(1, 3), &g).unwrap(), rat(2, 1));
    }
}
