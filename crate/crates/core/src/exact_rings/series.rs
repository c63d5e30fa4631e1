use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::ring::Ring;
use crate::error::{Error, Result};

/// `sum_{i < N} c_i x^i + O(x^N)`. Binary operations truncate at the smaller
/// precision of the two operands.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Series from its first `precision` coefficients (missing ones are 0).
    pub fn from_coeffs(ctx: &R, mut coeffs: Vec<R>, precision: usize) -> Self {
        assert!(precision >= 1, "precision must be positive");
        coeffs.resize(precision, ctx.zero_like());
        Self { coeffs }
    }

    pub fn zero(ctx: &R, precision: usize) -> Self {
        Self::from_coeffs(ctx, Vec::new(), precision)
    }

    pub fn constant(c: R, precision: usize) -> Self {
        let z = c.zero_like();
        Self::from_coeffs(&z, vec![c], precision)
    }

    /// `c * x^n`.
    pub fn monomial(c: R, n: usize, precision: usize) -> Self {
        let mut s = Self::zero(&c, precision);
        if n < precision {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn x(ctx: &R, precision: usize) -> Self {
        Self::monomial(ctx.one_like(), 1, precision)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, i: usize) -> Option<&R> {
        self.coeffs.get(i)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    fn ctx(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let n = precision.min(self.precision());
        Self {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        Self {
            coeffs: (0..n).map(|i| self.coeffs[i].add(&rhs.coeffs[i])).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        Self {
            coeffs: (0..n).map(|i| self.coeffs[i].sub(&rhs.coeffs[i])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.mul(k)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let mut out = vec![self.ctx().zero_like(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.ctx().one_like(), self.precision());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert_series(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].inverse().ok_or(Error::NonUnitConstantTerm)?;
        let n = self.precision();
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = self.ctx().zero_like();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out.push(acc.neg().mul(&c0_inv));
        }
        Ok(Self { coeffs: out })
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let n = self.precision().min(inner.precision());
        let mut acc = Self::zero(self.ctx(), n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone(), n));
        }
        Ok(acc)
    }
}

impl<R: Ring> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.precision())
    }
}

/// Truncated power series in several variables, exact in total degree
/// `< precision`.
///
/// Monomials are packed into a `u64` key with base `precision` per variable,
/// so multiplying monomials is adding keys.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiSeries<R> {
    nvars: usize,
    precision: usize,
    terms: BTreeMap<u64, R>,
    zero: R,
}

impl<R: Ring> fmt::Display for MultiSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        for (n, (exps, c)) in terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    if *e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{e}", i + 1)
                    }
                })
                .collect();
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "({c})*{}", mono.join("*"))?,
            }
        }
        if terms.is_empty() {
            write!(f, "0")?;
        }
        write!(f, " + O(deg {})", self.precision)
    }
}

impl<R: Ring> MultiSeries<R> {
    pub fn zero(ctx: &R, nvars: usize, precision: usize) -> Self {
        assert!(nvars >= 1 && precision >= 1);
        assert!(
            (precision as f64).powi(nvars as i32) < u64::MAX as f64,
            "monomial key overflow"
        );
        Self {
            nvars,
            precision,
            terms: BTreeMap::new(),
            zero: ctx.zero_like(),
        }
    }

    pub fn constant(c: R, nvars: usize, precision: usize) -> Self {
        let mut s = Self::zero(&c, nvars, precision);
        if !c.is_zero() {
            s.terms.insert(0, c);
        }
        s
    }

    /// The `i`-th variable.
    pub fn var(ctx: &R, i: usize, nvars: usize, precision: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        let mut s = Self::zero(ctx, nvars, precision);
        if precision > 1 {
            let key = s.key(&exps);
            s.terms.insert(key, ctx.one_like());
        }
        s
    }

    /// A univariate series placed in variable `i`.
    pub fn from_univariate(u: &TruncSeries<R>, i: usize, nvars: usize, precision: usize) -> Self {
        let mut s = Self::zero(&u.coeffs[0], nvars, precision);
        for (e, c) in u.coeffs.iter().enumerate().take(precision) {
            if !c.is_zero() {
                let mut exps = vec![0u32; nvars];
                exps[i] = e as u32;
                let key = s.key(&exps);
                s.terms.insert(key, c.clone());
            }
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    fn key(&self, exps: &[u32]) -> u64 {
        exps.iter()
            .rev()
            .fold(0u64, |acc, &e| acc * self.precision as u64 + u64::from(e))
    }

    fn exps(&self, mut key: u64) -> Vec<u32> {
        let b = self.precision as u64;
        (0..self.nvars)
            .map(|_| {
                let e = (key % b) as u32;
                key /= b;
                e
            })
            .collect()
    }

    fn degree_of(&self, key: u64) -> usize {
        self.exps(key).iter().map(|&e| e as usize).sum()
    }

    pub fn coefficient(&self, exps: &[u32]) -> R {
        if exps.iter().map(|&e| e as usize).sum::<usize>() >= self.precision {
            return self.zero.clone();
        }
        self.terms
            .get(&self.key(exps))
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    /// `(exponents, coefficient)` for every nonzero term.
    pub fn terms(&self) -> Vec<(Vec<u32>, R)> {
        self.terms
            .iter()
            .map(|(k, c)| (self.exps(*k), c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> R {
        self.terms
            .get(&0)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    /// Drops every term of total degree `>= precision`.
    pub fn truncate(&self, precision: usize) -> Self {
        let precision = precision.min(self.precision);
        let mut out = Self::zero(&self.zero, self.nvars, precision);
        for (k, c) in &self.terms {
            let e = self.exps(*k);
            if e.iter().map(|&x| x as usize).sum::<usize>() < precision {
                let key = out.key(&e);
                out.terms.insert(key, c.clone());
            }
        }
        out
    }

    fn check_compatible(&self, rhs: &Self) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        assert_eq!(self.precision, rhs.precision, "precision mismatch");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            let v = match out.terms.get(k) {
                Some(a) => a.add(c),
                None => c.clone(),
            };
            if v.is_zero() {
                out.terms.remove(k);
            } else {
                out.terms.insert(*k, v);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = Self::zero(&self.zero, self.nvars, self.precision);
        for (key, c) in &self.terms {
            let v = c.mul(k);
            if !v.is_zero() {
                out.terms.insert(*key, v);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_compatible(rhs);
        let lhs: Vec<(u64, usize, &R)> = self
            .terms
            .iter()
            .map(|(k, c)| (*k, self.degree_of(*k), c))
            .collect();
        let mut rhs_terms: Vec<(u64, usize, &R)> = rhs
            .terms
            .iter()
            .map(|(k, c)| (*k, rhs.degree_of(*k), c))
            .collect();
        rhs_terms.sort_by_key(|t| t.1);
        let mut acc: HashMap<u64, R> = HashMap::new();
        for (ka, da, ca) in &lhs {
            for (kb, db, cb) in &rhs_terms {
                if da + db >= self.precision {
                    break;
                }
                let prod = ca.mul(cb);
                acc.entry(ka + kb)
                    .and_modify(|v| *v = v.add(&prod))
                    .or_insert(prod);
            }
        }
        let mut out = Self::zero(&self.zero, self.nvars, self.precision);
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out
    }

    /// Inverse of a series with unit constant term, by Newton iteration
    /// `g -> g (2 - f g)`, which doubles the exact order each step.
    pub fn invert_series(&self) -> Result<Self> {
        let c0_inv = self
            .constant_term()
            .inverse()
            .ok_or(Error::NonUnitConstantTerm)?;
        let two = Self::constant(self.zero.from_i64_like(2), self.nvars, self.precision);
        let mut g = Self::constant(c0_inv, self.nvars, self.precision);
        let mut exact = 1usize;
        while exact < self.precision {
            g = g.mul(&two.sub(&self.mul(&g)));
            exact *= 2;
        }
        Ok(g)
    }

    /// `u(self)` for a univariate series `u`; `self` must have zero constant
    /// term.
    pub fn compose_into(&self, u: &TruncSeries<R>) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let n = self.precision.min(u.precision());
        let inner = self.truncate(n);
        let mut acc = Self::zero(&self.zero, self.nvars, n);
        for c in u.coeffs.iter().take(n).rev() {
            acc = acc
                .mul(&inner)
                .add(&Self::constant(c.clone(), self.nvars, n));
        }
        Ok(acc)
    }

    /// `self(args[0], ..., args[n-1])`; every argument must have zero
    /// constant term and share a variable count and precision.
    ///
    /// Terms are grouped by their exponent of the first variable so that
    /// for two variables only one series product per group is needed.
    pub fn substitute(&self, args: &[Self]) -> Result<Self> {
        assert_eq!(args.len(), self.nvars, "one argument per variable");
        let (nv, prec) = (args[0].nvars, args[0].precision.min(self.precision));
        if args.iter().any(|a| !a.constant_term().is_zero()) {
            return Err(Error::NonzeroInnerConstant);
        }
        let args: Vec<Self> = args.iter().map(|a| a.truncate(prec)).collect();
        // powers[i][e] = args[i]^e
        let mut powers: Vec<Vec<Self>> = Vec::with_capacity(self.nvars);
        for a in &args {
            let mut row = vec![Self::constant(self.zero.one_like(), nv, prec)];
            for e in 1..prec {
                let next = row[e - 1].mul(a);
                row.push(next);
            }
            powers.push(row);
        }
        let mut groups: BTreeMap<u32, Self> = BTreeMap::new();
        for (key, c) in &self.terms {
            let exps = self.exps(*key);
            if exps.iter().map(|&e| e as usize).sum::<usize>() >= prec {
                continue;
            }
            let mut rest = Self::constant(c.clone(), nv, prec);
            let mut scalar_only = true;
            for (i, e) in exps.iter().enumerate().skip(1) {
                if *e == 0 {
                    continue;
                }
                rest = if scalar_only {
                    scalar_only = false;
                    powers[i][*e as usize].scale(c)
                } else {
                    rest.mul(&powers[i][*e as usize])
                };
            }
            let g = groups
                .entry(exps[0])
                .or_insert_with(|| Self::zero(&self.zero, nv, prec));
            *g = g.add(&rest);
        }
        let mut out = Self::zero(&self.zero, nv, prec);
        for (e0, g) in groups {
            let term = if e0 == 0 {
                g
            } else {
                g.mul(&powers[0][e0 as usize])
            };
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Series with the given `(exponents, coefficient)` terms; terms of
    /// total degree `>= precision` are dropped.
    pub fn from_terms(ctx: &R, nvars: usize, precision: usize, terms: Vec<(Vec<u32>, R)>) -> Self {
        let mut out = Self::zero(ctx, nvars, precision);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            if c.is_zero() || e.iter().map(|&x| x as usize).sum::<usize>() >= precision {
                continue;
            }
            let key = out.key(&e);
            let v = match out.terms.get(&key) {
                Some(a) => a.add(&c),
                None => c,
            };
            if v.is_zero() {
                out.terms.remove(&key);
            } else {
                out.terms.insert(key, v);
            }
        }
        out
    }

    /// Restriction to the diagonal `x_1 = ... = x_n = x`.
    pub fn diagonal(&self) -> TruncSeries<R> {
        let mut coeffs = vec![self.zero.clone(); self.precision];
        for (k, c) in &self.terms {
            let d = self.degree_of(*k);
            coeffs[d] = coeffs[d].add(c);
        }
        TruncSeries { coeffs }
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(&self.zero, self.nvars, self.precision);
        for (k, c) in &self.terms {
            let mut e = self.exps(*k);
            e.swap(i, j);
            let key = out.key(&e);
            out.terms.insert(key, c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_rings::finite::FiniteField;
    use num_bigint::BigInt;

    fn ints(c: &[i64], n: usize) -> TruncSeries<BigInt> {
        let z = BigInt::from(0);
        TruncSeries::from_coeffs(&z, c.iter().map(|&v| BigInt::from(v)).collect(), n)
    }

    #[test]
    fn mul_identity_and_precision() {
        let x = ints(&[0, 1], 8);
        let one = ints(&[1], 8);
        assert_eq!(x.mul(&one), x);
        let short = ints(&[1, 1], 3);
        assert_eq!(x.mul(&short).precision(), 3);
    }

    #[test]
    fn geometric_inverse() {
        let s = ints(&[1, -1], 6);
        assert_eq!(s.invert_series().unwrap(), ints(&[1, 1, 1, 1, 1, 1], 6));
        assert_eq!(
            ints(&[2, 1], 4).invert_series(),
            Err(Error::NonUnitConstantTerm)
        );
    }

    #[test]
    fn compose_substitutes_x_squared() {
        // sum x^(3*2^k) composed with x^2 = sum x^(6*2^k)
        let n = 50;
        let f2 = FiniteField::prime(2).unwrap();
        let mut c = vec![f2.zero(); n];
        let mut e = 3;
        while e < n {
            c[e] = f2.one();
            e *= 2;
        }
        let z = TruncSeries::from_coeffs(&f2.zero(), c, n);
        let x2 = TruncSeries::monomial(f2.one(), 2, n);
        let comp = z.compose(&x2).unwrap();
        assert_eq!(comp.support(), vec![6, 12, 24, 48]);
        let bad = TruncSeries::constant(f2.one(), n);
        assert_eq!(z.compose(&bad), Err(Error::NonzeroInnerConstant));
    }

    #[test]
    fn multiseries_products_and_substitution() {
        let z = BigInt::from(0);
        let x = MultiSeries::var(&z, 0, 2, 6);
        let y = MultiSeries::var(&z, 1, 2, 6);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.coefficient(&[1, 1]), BigInt::from(2));
        // (x + y) evaluated at (t, t) is 2t
        let t = MultiSeries::var(&z, 0, 1, 6);
        let d = s.substitute(&[t.clone(), t]).unwrap();
        assert_eq!(d.coefficient(&[1]), BigInt::from(2));
        assert_eq!(sq.diagonal().coefficient(2), Some(&BigInt::from(4)));
        let inv = MultiSeries::constant(BigInt::from(1), 2, 6)
            .sub(&x)
            .invert_series()
            .unwrap();
        assert_eq!(inv.coefficient(&[5, 0]), BigInt::from(1));
    }
}
