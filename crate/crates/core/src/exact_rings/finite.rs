use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::ring::{ring_ops, CubeRoots, Ring};
use crate::error::{Error, Result};

/// Largest field order the table-driven representation accepts.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

#[derive(Debug)]
struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length `k + 1`. `[0, 1]` for `k = 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a primitive element `g` (only for `k > 1`).
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The finite field F_q, q = p^k, realized as F_p[a]/(modulus(a)).
///
/// Elements are encoded as integers `sum d_i p^i` where `d_i` is the
/// coefficient of `a^i`.
#[derive(Clone, Debug)]
pub struct FiniteField(Arc<FieldCtx>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, low degree first, trimmed.
type FpPoly = Vec<u32>;

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (i64::from(p), i64::from(a));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(i64::from(p)) as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> FpPoly {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let c = (u64::from(r[r.len() - 1]) * u64::from(inv) % u64::from(p)) as u32;
        let shift = r.len() - 1 - dm;
        for (j, mc) in m.iter().enumerate() {
            let sub = u64::from(c) * u64::from(*mc) % u64::from(p);
            r[shift + j] = ((u64::from(r[shift + j]) + u64::from(p) - sub) % u64::from(p)) as u32;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + u64::from(*x) * u64::from(*y)) % u64::from(p);
        }
    }
    trim(out.into_iter().map(|v| v as u32).collect())
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> FpPoly {
    let n = a.len().max(b.len());
    let get = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
    trim((0..n).map(|i| (get(a, i) + p - get(b, i)) % p).collect())
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> FpPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin-style test: `f` of degree `k` is irreducible iff
/// `gcd(f, x^(p^i) - x) = 1` for `1 <= i <= k/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let x: FpPoly = vec![0, 1];
    let mut frob = x.clone();
    for _ in 1..=k / 2 {
        // frob <- frob^p mod f
        let mut acc: FpPoly = vec![1];
        for _ in 0..p {
            acc = poly_rem(&poly_mul(&acc, &frob, p), f, p);
        }
        frob = acc;
        let g = poly_gcd(f, &poly_sub(&frob, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl FiniteField {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        Self::with_modulus(p, vec![0, 1])
    }

    /// F_{p^k} with the lexicographically first monic irreducible modulus.
    pub fn extension(p: u32, k: u32) -> Result<Self> {
        if k == 1 {
            return Self::prime(p);
        }
        if !is_prime(u64::from(p)) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let count = u64::from(p).pow(k);
        for code in 0..count {
            let mut m: FpPoly = (0..k)
                .map(|i| ((code / u64::from(p).pow(i)) % u64::from(p)) as u32)
                .collect();
            m.push(1);
            if m[0] != 0 && is_irreducible(&m, p) {
                return Self::with_modulus(p, m);
            }
        }
        Err(Error::InvalidField(format!(
            "no irreducible of degree {k} over F_{p}"
        )))
    }

    /// F_p[a]/(modulus), rejecting reducible or non-monic moduli.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(u64::from(p)) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let modulus: FpPoly = trim(modulus.into_iter().map(|c| c % p).collect());
        let k = match modulus.len().checked_sub(1) {
            Some(k) if k >= 1 => k as u32,
            _ => return Err(Error::InvalidField("modulus must have degree >= 1".into())),
        };
        if modulus[k as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if k > 1 && !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let q64 = u64::from(p).pow(k);
        if q64 > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!("field order {q64} too large")));
        }
        let q = q64 as u32;
        let (exp, log) = if k == 1 {
            (Vec::new(), Vec::new())
        } else {
            build_tables(p, k, q, &modulus)
        };
        Ok(Self(Arc::new(FieldCtx {
            p,
            k,
            q,
            modulus,
            exp,
            log,
        })))
    }

    /// F_q from its order: prime or prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        for p in 2..=q {
            if q.is_multiple_of(p) {
                let mut k = 0;
                let mut r = q;
                while r.is_multiple_of(p) {
                    r /= p;
                    k += 1;
                }
                if r != 1 || !is_prime(p) {
                    break;
                }
                return Self::extension(p as u32, k);
            }
        }
        Err(Error::InvalidField(format!("{q} is not a prime power")))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The element with integer code `v` (see type docs).
    pub fn element(&self, v: u32) -> FinElem {
        assert!(v < self.0.q, "code {v} out of range for F_{}", self.0.q);
        FinElem {
            field: self.clone(),
            v,
        }
    }

    pub fn zero(&self) -> FinElem {
        self.element(0)
    }

    pub fn one(&self) -> FinElem {
        self.element(1)
    }

    pub fn from_int(&self, n: i64) -> FinElem {
        self.element(n.rem_euclid(i64::from(self.0.p)) as u32)
    }

    /// The class of `a`, the adjoined root of the modulus.
    pub fn generator(&self) -> FinElem {
        if self.0.k == 1 {
            let m = &self.0.modulus;
            // root of the linear modulus a + m0
            self.from_int(-i64::from(m[0]))
        } else {
            self.element(self.0.p)
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FinElem> + '_ {
        (0..self.0.q).map(move |v| self.element(v))
    }

    fn digits(&self, v: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut v = v;
        (0..self.0.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    fn code_of_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, x| acc * self.0.p + x)
    }

    fn add_codes(&self, a: u32, b: u32, negate_b: bool) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            let b = if negate_b { (p - b) % p } else { b };
            return ((u64::from(a) + u64::from(b)) % u64::from(p)) as u32;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.k {
            let (da, db) = (a % p, b % p);
            let db = if negate_b { (p - db) % p } else { db };
            out += ((da + db) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn mul_codes(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let ctx = &self.0;
        if ctx.k == 1 {
            return ((u64::from(a) * u64::from(b)) % u64::from(ctx.p)) as u32;
        }
        let n = ctx.q - 1;
        let e = (ctx.log[a as usize] + ctx.log[b as usize]) % n;
        ctx.exp[e as usize]
    }

    fn inv_code(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let ctx = &self.0;
        if ctx.k == 1 {
            return Some(fp_inv(a, ctx.p));
        }
        let n = ctx.q - 1;
        let e = (n - ctx.log[a as usize]) % n;
        Some(ctx.exp[e as usize])
    }
}

fn build_tables(p: u32, k: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let enc = |d: &[u32]| -> u32 {
        (0..k as usize)
            .rev()
            .fold(0, |acc, i| acc * p + d.get(i).copied().unwrap_or(0))
    };
    let dec = |mut v: u32| -> FpPoly {
        trim(
            (0..k)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect(),
        )
    };
    let n = q - 1;
    for cand in 2..q {
        let g = dec(cand);
        let mut exp = Vec::with_capacity(n as usize);
        let mut cur: FpPoly = vec![1];
        let mut ok = true;
        for i in 0..n {
            let code = enc(&cur);
            if i > 0 && code == 1 {
                ok = false;
                break;
            }
            exp.push(code);
            cur = poly_rem(&poly_mul(&cur, &g, p), modulus, p);
        }
        if ok && enc(&cur) == 1 {
            let mut log = vec![0u32; q as usize];
            for (i, &c) in exp.iter().enumerate() {
                log[c as usize] = i as u32;
            }
            return (exp, log);
        }
    }
    unreachable!("a finite field has a primitive element")
}

/// An element of a [`FiniteField`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinElem {
    field: FiniteField,
    v: u32,
}

impl FinElem {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Integer code of the element.
    pub fn code(&self) -> u32 {
        self.v
    }

    /// Coefficients in the basis `1, a, ..., a^(k-1)`.
    pub fn coefficients(&self) -> Vec<u32> {
        self.field.digits(self.v)
    }

    pub fn from_coefficients(field: &FiniteField, coeffs: &[u32]) -> FinElem {
        let p = field.characteristic();
        let mut d: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        d.resize(field.degree() as usize, 0);
        field.element(field.code_of_digits(&d))
    }
}

impl Ring for FinElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert!(self.field == rhs.field);
        self.field
            .element(self.field.add_codes(self.v, rhs.v, false))
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert!(self.field == rhs.field);
        self.field
            .element(self.field.add_codes(self.v, rhs.v, true))
    }
    fn neg(&self) -> Self {
        self.field.element(self.field.add_codes(0, self.v, true))
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(self.field == rhs.field);
        self.field.element(self.field.mul_codes(self.v, rhs.v))
    }
    fn inverse(&self) -> Option<Self> {
        self.field.inv_code(self.v).map(|c| self.field.element(c))
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
}

impl CubeRoots for FinElem {
    fn primitive_cube_roots(&self) -> Vec<Self> {
        if self.field.characteristic() == 3 {
            return Vec::new();
        }
        let one = self.field.one();
        self.field
            .elements()
            .filter(|x| x.mul(x).add(x).add(&one).is_zero())
            .collect()
    }
}

ring_ops!(FinElem);

impl fmt::Display for FinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.v);
        }
        let d = self.coefficients();
        let mut first = true;
        for (i, c) in d.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "a")?,
                (1, _) => write!(f, "{c}*a")?,
                (_, 1) => write!(f, "a^{i}")?,
                _ => write!(f, "{c}*a^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_has_omega_as_generator() {
        let f4 = FiniteField::extension(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let w = f4.generator();
        assert_eq!(w.pow(3), f4.one());
        assert!(!w.is_one());
        let roots = f4.zero().primitive_cube_roots();
        assert_eq!(roots.len(), 2);
        for u in f4.elements().skip(1) {
            assert_eq!(u.pow(3), f4.one(), "every unit of F4 is a cube root of 1");
        }
    }

    #[test]
    fn field_axioms_f25() {
        let f = FiniteField::of_order(25).unwrap();
        assert_eq!(f.characteristic(), 5);
        for a in f.elements() {
            if !a.is_zero() {
                assert!(a.mul(&a.inverse().unwrap()).is_one());
            }
            for b in f.elements().step_by(7) {
                assert_eq!(a.mul(&b), b.mul(&a));
                assert_eq!(a.add(&b).sub(&b), a);
            }
        }
    }

    #[test]
    fn prime_field_basics() {
        let f7 = FiniteField::prime(7).unwrap();
        assert_eq!(f7.from_int(-1).code(), 6);
        assert_eq!(f7.from_int(3).inverse().unwrap().code(), 5);
        let roots: Vec<u32> = f7
            .one()
            .primitive_cube_roots()
            .iter()
            .map(|r| r.code())
            .collect();
        assert_eq!(roots, vec![2, 4]);
        assert!(FiniteField::prime(9).is_err());
        assert!(FiniteField::of_order(12).is_err());
    }

    #[test]
    fn rejects_reducible_modulus() {
        // a^2 + 1 = (a + 2)(a + 3) over F5
        assert!(FiniteField::with_modulus(5, vec![1, 0, 1]).is_err());
        assert!(FiniteField::with_modulus(5, vec![2, 0, 1]).is_ok());
    }
}
