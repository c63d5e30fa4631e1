use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// A commutative ring with exact, canonical-form elements.
///
/// Elements of rings that need runtime context (finite fields, quotient
/// rings) carry that context, so constants are produced from an existing
/// element with the `*_like` constructors.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// The multiplicative inverse, or `None` when the element is not a unit.
    fn inverse(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn from_bigint_like(&self, n: &BigInt) -> Self {
        if let Some(small) = n.to_i64() {
            return self.from_i64_like(small);
        }
        let base = self.from_i64_like(1 << 32);
        let mut acc = self.zero_like();
        let (_, digits) = n.abs().to_u32_digits();
        for d in digits.iter().rev() {
            acc = acc.mul(&base).add(&self.from_i64_like(i64::from(*d)));
        }
        if n.is_negative() {
            acc.neg()
        } else {
            acc
        }
    }

    fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    /// Cofactors `s` with `sum s_i * g_i = 1`, when the ideal generated by
    /// `gens` is the unit ideal. The default only finds certificates where
    /// one generator is itself a unit, which is complete for fields and
    /// local rings.
    fn unit_ideal_cofactors(gens: &[Self]) -> Option<Vec<Self>> {
        let (idx, inv) = gens
            .iter()
            .enumerate()
            .find_map(|(i, g)| g.inverse().map(|inv| (i, inv)))?;
        Some(
            gens.iter()
                .enumerate()
                .map(|(i, g)| if i == idx { inv.clone() } else { g.zero_like() })
                .collect(),
        )
    }
}

/// Fields that may contain a primitive cube root of unity.
pub trait CubeRoots: Ring {
    /// All roots of `x^2 + x + 1` in the field, in a deterministic order.
    fn primitive_cube_roots(&self) -> Vec<Self>;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::from(1)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        n.clone()
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
        if self.abs() == BigInt::from(1) {
            Some(self.clone())
        } else {
            None
        }
    }
}

/// Implements the `std::ops` operators on references in terms of [`Ring`].
macro_rules! ring_ops {
    ($t:ty) => {
        impl std::ops::Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $crate::exact_rings::Ring::add(self, rhs)
            }
        }
        impl std::ops::Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $crate::exact_rings::Ring::sub(self, rhs)
            }
        }
        impl std::ops::Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $crate::exact_rings::Ring::mul(self, rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::exact_rings::Ring::neg(self)
            }
        }
    };
}
pub(crate) use ring_ops;
