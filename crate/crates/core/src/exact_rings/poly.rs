use std::fmt;

use super::ring::Ring;
use crate::error::{Error, Result};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `x^i`.
///
/// Trailing zeros are always trimmed. A copy of the coefficient ring's zero
/// is kept so that contextual rings (finite fields) survive the zero
/// polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> Poly<R> {
    pub fn from_coeffs(zero: &R, coeffs: Vec<R>) -> Self {
        let mut p = Self {
            coeffs,
            zero: zero.zero_like(),
        };
        p.trim();
        p
    }

    pub fn zero(ctx: &R) -> Self {
        Self::from_coeffs(ctx, Vec::new())
    }

    pub fn constant(c: R) -> Self {
        let z = c.zero_like();
        Self::from_coeffs(&z, vec![c])
    }

    /// The variable `x`.
    pub fn x(ctx: &R) -> Self {
        Self::from_coeffs(ctx, vec![ctx.zero_like(), ctx.one_like()])
    }

    /// `c * x^n`.
    pub fn monomial(c: R, n: usize) -> Self {
        let z = c.zero_like();
        let mut coeffs = vec![z.clone(); n];
        coeffs.push(c);
        Self::from_coeffs(&z, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn ring_zero(&self) -> &R {
        &self.zero
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn map<S: Ring>(&self, zero: &S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::from_coeffs(zero, self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::from_coeffs(&self.zero, self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    pub fn eval(&self, at: &R) -> R {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// Horner evaluation in another ring through a coefficient map.
    pub fn eval_with<S: Ring>(&self, at: &S, lift: impl Fn(&R) -> S) -> S {
        let mut acc = at.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(&lift(c));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.from_i64_like(i as i64)))
            .collect();
        Self::from_coeffs(&self.zero, coeffs)
    }

    /// Euclidean division; the divisor's leading coefficient must be a unit.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.leading().ok_or(Error::ZeroInput)?;
        let inv = dl
            .inverse()
            .ok_or_else(|| Error::NonUnitDenominator(dl.to_string()))?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(&self.zero), self.clone()));
        }
        let mut quot = vec![self.zero.clone(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(dc));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((
            Self::from_coeffs(&self.zero, quot),
            Self::from_coeffs(&self.zero, rem),
        ))
    }

    /// Divides by `x - root`, returning the quotient when the division is
    /// exact.
    pub fn div_linear_exact(&self, root: &R) -> Option<Self> {
        let n = self.coeffs.len();
        if n == 0 {
            return None;
        }
        let mut quot = vec![self.zero.clone(); n - 1];
        let mut carry = self.zero.clone();
        for i in (0..n).rev() {
            let v = self.coeffs[i].add(&carry.mul(root));
            if i == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                quot[i - 1] = v.clone();
            }
            carry = v;
        }
        Some(Self::from_coeffs(&self.zero, quot))
    }

    /// Monic gcd with Bezout cofactors over a field: returns `(g, s, t)` with
    /// `s*a + t*b = g`.
    pub fn ext_gcd(a: &Self, b: &Self) -> Result<(Self, Self, Self)> {
        let zero = a.zero.clone();
        let one = Self::constant(zero.one_like());
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), Self::zero(&zero));
        let (mut t0, mut t1) = (Self::zero(&zero), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if let Some(lc) = r0.leading() {
            let inv = lc
                .inverse()
                .ok_or_else(|| Error::NonUnitDenominator(lc.to_string()))?;
            let inv = Self::constant(inv);
            Ok((r0.mul(&inv), s0.mul(&inv), t0.mul(&inv)))
        } else {
            Ok((r0, s0, t0))
        }
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.zero)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.zero.one_like())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(self.zero.from_i64_like(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        Self::from_coeffs(&self.zero, coeffs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect();
        Self::from_coeffs(&self.zero, coeffs)
    }
    fn neg(&self) -> Self {
        Self::from_coeffs(&self.zero, self.coeffs.iter().map(Ring::neg).collect())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(&self.zero, out)
    }
    fn inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            self.coeffs[0].inverse().map(Self::constant)
        } else {
            None
        }
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, &self.coeffs, "x")
    }
}

/// Writes `sum c_i * var^i` from the highest degree down, in the exact
/// literal grammar.
pub(crate) fn fmt_poly<R: Ring>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[R],
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            write!(f, "({c})")?;
        } else if c.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "({c})*{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(c: &[i64]) -> Poly<BigInt> {
        let z = BigInt::from(0);
        Poly::from_coeffs(&z, c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn mul_and_divide() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1, 1]);
        let c = a.mul(&b);
        assert_eq!(c, p(&[-1, 0, 0, 1]));
        let (q, r) = c.div_rem(&a).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(c.div_linear_exact(&BigInt::from(1)), Some(b));
        assert_eq!(c.div_linear_exact(&BigInt::from(2)), None);
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(p(&[0]).degree(), None);
        assert_eq!(p(&[0, 0, 3]).derivative(), p(&[0, 6]));
    }
}
