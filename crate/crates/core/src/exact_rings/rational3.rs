use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{ring_ops, Ring};

/// An element of Z[1/3], stored as `numerator / 3^denominator_exp`.
///
/// Canonical form: when `denominator_exp > 0` the numerator is not divisible
/// by 3, and zero is stored with exponent 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational3 {
    numerator: BigInt,
    denominator_exp: u32,
}

fn pow3(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(3), k as usize)
}

impl Rational3 {
    pub fn new(numerator: impl Into<BigInt>, denominator_exp: u32) -> Self {
        let mut numerator = numerator.into();
        let mut denominator_exp = denominator_exp;
        if Zero::is_zero(&numerator) {
            denominator_exp = 0;
        }
        let three = BigInt::from(3);
        while denominator_exp > 0 {
            let (q, r) = numerator.div_rem(&three);
            if !Zero::is_zero(&r) {
                break;
            }
            numerator = q;
            denominator_exp -= 1;
        }
        Self {
            numerator,
            denominator_exp,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n, 0)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator_exp(&self) -> u32 {
        self.denominator_exp
    }

    /// 3-adic valuation; `None` for zero.
    pub fn three_adic_valuation(&self) -> Option<i64> {
        if Zero::is_zero(&self.numerator) {
            return None;
        }
        let three = BigInt::from(3);
        let mut n = self.numerator.clone();
        let mut v = 0i64;
        while Zero::is_zero(&(&n % &three)) {
            n /= &three;
            v += 1;
        }
        Some(v - i64::from(self.denominator_exp))
    }

    /// Whether the value is `±3^k` for some integer `k`.
    pub fn is_signed_power_of_three(&self) -> bool {
        if Zero::is_zero(&self.numerator) {
            return false;
        }
        let three = BigInt::from(3);
        let mut n = self.numerator.abs();
        while Zero::is_zero(&(&n % &three)) {
            n /= &three;
        }
        One::is_one(&n)
    }

    pub fn is_integer(&self) -> bool {
        self.denominator_exp == 0
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), pow3(self.denominator_exp))
    }

    /// Converts a rational whose denominator is a power of 3.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let mut d = q.denom().clone();
        let three = BigInt::from(3);
        let mut k = 0u32;
        while Zero::is_zero(&(&d % &three)) {
            d /= &three;
            k += 1;
        }
        if !One::is_one(&d) {
            return None;
        }
        Some(Self::new(q.numer().clone(), k))
    }
}

impl Ring for Rational3 {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_int(n)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Self::from_int(n.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.numerator)
    }
    fn add(&self, rhs: &Self) -> Self {
        let e = self.denominator_exp.max(rhs.denominator_exp);
        let a = &self.numerator * pow3(e - self.denominator_exp);
        let b = &rhs.numerator * pow3(e - rhs.denominator_exp);
        Self::new(a + b, e)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn neg(&self) -> Self {
        Self {
            numerator: -&self.numerator,
            denominator_exp: self.denominator_exp,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &self.numerator * &rhs.numerator,
            self.denominator_exp + rhs.denominator_exp,
        )
    }
    fn inverse(&self) -> Option<Self> {
        if !self.is_signed_power_of_three() {
            return None;
        }
        let v = self.three_adic_valuation()?;
        let sign = if self.numerator.is_negative() { -1 } else { 1 };
        Some(if v >= 0 {
            Self::new(sign, v as u32)
        } else {
            Self::new(BigInt::from(sign) * pow3((-v) as u32), 0)
        })
    }
    fn is_one(&self) -> bool {
        self.denominator_exp == 0 && One::is_one(&self.numerator)
    }
}

ring_ops!(Rational3);

impl fmt::Display for Rational3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.denominator_exp {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "{}/3", self.numerator),
            k => write!(f, "{}/3^{}", self.numerator, k),
        }
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
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
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_strips_threes() {
        let a = Rational3::new(9, 3);
        assert_eq!(a.numerator(), &BigInt::from(1));
        assert_eq!(a.denominator_exp(), 1);
        assert_eq!(Rational3::new(0, 5).denominator_exp(), 0);
        assert_eq!(Rational3::new(18, 0).numerator(), &BigInt::from(18));
    }

    #[test]
    fn units_are_signed_powers_of_three() {
        let nine = Rational3::from_int(9);
        assert_eq!(nine.inverse().unwrap(), Rational3::new(1, 2));
        let third = Rational3::new(-1, 1);
        assert_eq!(third.inverse().unwrap(), Rational3::from_int(-3));
        assert!(Rational3::from_int(2).inverse().is_none());
        assert!(Rational3::zero().inverse().is_none());
    }

    #[test]
    fn arithmetic() {
        let a = Rational3::new(1, 1);
        let b = Rational3::new(2, 2);
        assert_eq!(&a + &b, Rational3::new(5, 2));
        assert_eq!(&a * &Rational3::from_int(3), Rational3::one());
        assert_eq!(&a - &a, Rational3::zero());
    }
}
