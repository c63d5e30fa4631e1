use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::rational3::Rational3;
use super::ring::{ring_ops, CubeRoots, Ring};

/// `c0 + c1*w` with `1 + w + w^2 = 0`, over a coefficient ring.
///
/// With `Rational3` coefficients this is the ring A = Z[1/3][w]; with
/// rational coefficients it is the field Q(w).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Eisenstein<C> {
    pub c0: C,
    pub c1: C,
}

/// Elements of A = Z[1/3, w]/(1 + w + w^2).
pub type EisElem = Eisenstein<Rational3>;
/// Elements of the field Q(w).
pub type QOmega = Eisenstein<BigRational>;

impl<C: Ring> Eisenstein<C> {
    pub fn new(c0: C, c1: C) -> Self {
        Self { c0, c1 }
    }

    pub fn from_coeff(c: C) -> Self {
        let z = c.zero_like();
        Self { c0: c, c1: z }
    }

    /// `w` itself, with coefficients built from the context of `c`.
    pub fn omega_like(c: &C) -> Self {
        Self {
            c0: c.zero_like(),
            c1: c.one_like(),
        }
    }

    /// `w^2 = -1 - w`.
    pub fn omega_bar_like(c: &C) -> Self {
        Self {
            c0: c.from_i64_like(-1),
            c1: c.from_i64_like(-1),
        }
    }

    /// Complex conjugation `w -> w^2`.
    pub fn conj(&self) -> Self {
        Self {
            c0: self.c0.sub(&self.c1),
            c1: self.c1.neg(),
        }
    }

    /// `a^2 - ab + b^2` for `a + b*w`.
    pub fn norm(&self) -> C {
        let a = &self.c0;
        let b = &self.c1;
        a.mul(a).sub(&a.mul(b)).add(&b.mul(b))
    }

    pub fn scale(&self, k: &C) -> Self {
        Self {
            c0: self.c0.mul(k),
            c1: self.c1.mul(k),
        }
    }

    /// Whether the element lies in the coefficient ring.
    pub fn is_rational(&self) -> bool {
        self.c1.is_zero()
    }
}

impl EisElem {
    pub fn from_int(n: i64) -> Self {
        Self::from_coeff(Rational3::from_int(n))
    }

    pub fn omega() -> Self {
        Self::omega_like(&Rational3::zero())
    }

    pub fn omega_bar() -> Self {
        Self::omega_bar_like(&Rational3::zero())
    }

    /// Embedding A into Q(w).
    pub fn to_qomega(&self) -> QOmega {
        QOmega::new(self.c0.to_rational(), self.c1.to_rational())
    }
}

impl QOmega {
    pub fn from_int(n: i64) -> Self {
        Self::from_coeff(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn omega() -> Self {
        Self::omega_like(&BigRational::from_integer(BigInt::from(0)))
    }

    pub fn omega_bar() -> Self {
        Self::omega_bar_like(&BigRational::from_integer(BigInt::from(0)))
    }

    /// The element of A with the same value, if the denominators are powers
    /// of 3.
    pub fn to_eis(&self) -> Option<EisElem> {
        Some(EisElem::new(
            Rational3::from_rational(&self.c0)?,
            Rational3::from_rational(&self.c1)?,
        ))
    }
}

impl<C: Ring> Ring for Eisenstein<C> {
    fn zero_like(&self) -> Self {
        Self::from_coeff(self.c0.zero_like())
    }
    fn one_like(&self) -> Self {
        Self::from_coeff(self.c0.one_like())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_coeff(self.c0.from_i64_like(n))
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Self::from_coeff(self.c0.from_bigint_like(n))
    }
    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Self {
            c0: self.c0.add(&rhs.c0),
            c1: self.c1.add(&rhs.c1),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Self {
            c0: self.c0.sub(&rhs.c0),
            c1: self.c1.sub(&rhs.c1),
        }
    }
    fn neg(&self) -> Self {
        Self {
            c0: self.c0.neg(),
            c1: self.c1.neg(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
        let ac = self.c0.mul(&rhs.c0);
        let bd = self.c1.mul(&rhs.c1);
        let ad = self.c0.mul(&rhs.c1);
        let bc = self.c1.mul(&rhs.c0);
        Self {
            c0: ac.sub(&bd),
            c1: ad.add(&bc).sub(&bd),
        }
    }
    /// Invertible exactly when the norm is a unit of the coefficient ring;
    /// over Z[1/3] that is the criterion `norm = 3^k`.
    fn inverse(&self) -> Option<Self> {
        let n_inv = self.norm().inverse()?;
        Some(self.conj().scale(&n_inv))
    }
}

impl CubeRoots for QOmega {
    fn primitive_cube_roots(&self) -> Vec<Self> {
        vec![QOmega::omega(), QOmega::omega_bar()]
    }
}

ring_ops!(EisElem);
ring_ops!(QOmega);

impl<C: Ring> fmt::Display for Eisenstein<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            return write!(f, "{}", self.c0);
        }
        let w = if self.c1.is_one() {
            "w".to_string()
        } else if self.c1.neg().is_one() {
            "-w".to_string()
        } else {
            format!("({})*w", self.c1)
        };
        if self.c0.is_zero() {
            write!(f, "{w}")
        } else {
            write!(f, "{} + {w}", self.c0)
        }
    }
}
