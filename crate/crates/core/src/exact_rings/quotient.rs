use std::fmt;
use std::sync::Arc;

use super::finite::is_prime;
use super::ring::{ring_ops, Ring};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct QuotCtx {
    p: u32,
    names: Vec<String>,
    /// For variable `i`, the monic relation `x_i^d = ...`, low degree first
    /// (length `d + 1`, last entry 1).
    relations: Vec<Vec<u32>>,
}

/// F_p[x_1, ..., x_n] modulo one monic univariate relation per variable,
/// e.g. F_3[w, v]/((w-1)^2, (v-1)^3).
///
/// The relations have pairwise coprime leading monomials, so reduction is
/// confluent and every element has a unique representative with
/// `deg_{x_i} < d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotRing(Arc<QuotCtx>);

impl QuotRing {
    /// `relations[i]` is the monic relation for variable `i`, low degree
    /// first, with integer coefficients reduced mod `p`.
    pub fn new(p: u32, names: &[&str], relations: Vec<Vec<i64>>) -> Result<Self> {
        if !is_prime(u64::from(p)) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if names.len() != relations.len() {
            return Err(Error::InvalidInput("one relation per variable".into()));
        }
        let relations = relations
            .into_iter()
            .map(|r| {
                let r: Vec<u32> = r
                    .into_iter()
                    .map(|c| c.rem_euclid(i64::from(p)) as u32)
                    .collect();
                match r.last() {
                    Some(1) if r.len() >= 2 => Ok(r),
                    _ => Err(Error::InvalidInput(
                        "relations must be monic of degree >= 1".into(),
                    )),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(Arc::new(QuotCtx {
            p,
            names: names.iter().map(|s| s.to_string()).collect(),
            relations,
        })))
    }

    /// F_3[w, v]/((w-1)^2, (v-1)^3), the base of the cuspidal fiber.
    pub fn cuspidal_base() -> Self {
        // (w-1)^2 = w^2 - 2w + 1, (v-1)^3 = v^3 - 3v^2 + 3v - 1
        Self::new(3, &["w", "v"], vec![vec![1, -2, 1], vec![-1, 3, -3, 1]]).expect("valid quotient")
    }

    fn degs(&self) -> Vec<usize> {
        self.0.relations.iter().map(|r| r.len() - 1).collect()
    }

    /// Dimension over F_p.
    pub fn dimension(&self) -> usize {
        self.degs().iter().product()
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn zero(&self) -> QuotElem {
        QuotElem {
            ring: self.clone(),
            coeffs: vec![0; self.dimension()],
        }
    }

    pub fn from_int(&self, n: i64) -> QuotElem {
        let mut z = self.zero();
        z.coeffs[0] = n.rem_euclid(i64::from(self.0.p)) as u32;
        z
    }

    pub fn var(&self, i: usize) -> QuotElem {
        let degs = self.degs();
        let mut exps = vec![0usize; degs.len()];
        exps[i] = 1;
        let mut out = vec![0u64; degs.iter().map(|d| 2 * d).product()];
        out[index(&exps, &degs.iter().map(|d| 2 * d).collect::<Vec<_>>())] = 1;
        self.reduce(out)
    }

    pub fn var_by_name(&self, name: &str) -> Option<QuotElem> {
        let i = self.0.names.iter().position(|n| n == name)?;
        Some(self.var(i))
    }

    /// Reduces a product array with per-variable bound `2*d_i`.
    fn reduce(&self, mut arr: Vec<u64>) -> QuotElem {
        let p = u64::from(self.0.p);
        let degs = self.degs();
        let n = degs.len();
        let mut bounds: Vec<usize> = degs.iter().map(|d| 2 * d).collect();
        for v in 0..n {
            let d = degs[v];
            let rel = &self.0.relations[v];
            // x_v^e for e >= d: replace x_v^d by -(rel[0] + ... + rel[d-1] x^(d-1))
            let total: usize = bounds.iter().product();
            for e in (d..bounds[v]).rev() {
                for flat in 0..total {
                    let mut exps = unindex(flat, &bounds);
                    if exps[v] != e {
                        continue;
                    }
                    let c = arr[flat] % p;
                    if c == 0 {
                        continue;
                    }
                    arr[flat] = 0;
                    for (j, rc) in rel.iter().take(d).enumerate() {
                        exps[v] = e - d + j;
                        let idx = index(&exps, &bounds);
                        arr[idx] = (arr[idx] + c * (p - u64::from(*rc) % p)) % p;
                    }
                }
            }
            // shrink bound for v
            let mut new_bounds = bounds.clone();
            new_bounds[v] = d;
            let new_total: usize = new_bounds.iter().product();
            let mut next = vec![0u64; new_total];
            for (flat, slot) in next.iter_mut().enumerate() {
                let exps = unindex(flat, &new_bounds);
                *slot = arr[index(&exps, &bounds)] % p;
            }
            arr = next;
            bounds = new_bounds;
        }
        QuotElem {
            ring: self.clone(),
            coeffs: arr.into_iter().map(|c| c as u32).collect(),
        }
    }
}

fn index(exps: &[usize], bounds: &[usize]) -> usize {
    exps.iter()
        .zip(bounds)
        .rev()
        .fold(0, |acc, (e, b)| acc * b + e)
}

fn unindex(mut flat: usize, bounds: &[usize]) -> Vec<usize> {
    bounds
        .iter()
        .map(|b| {
            let e = flat % b;
            flat /= b;
            e
        })
        .collect()
}

/// A fully reduced element of a [`QuotRing`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotElem {
    ring: QuotRing,
    coeffs: Vec<u32>,
}

impl QuotElem {
    pub fn ring(&self) -> &QuotRing {
        &self.ring
    }

    /// Nilpotent iff `x^dim = 0`.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.ring.dimension() as u64).is_zero()
    }

    /// Smallest `n >= 1` with `x^n = 0`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut acc = self.clone();
        for n in 1..=self.ring.dimension() {
            if acc.is_zero() {
                return Some(n);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Solves `self * y = 1` by Gaussian elimination over F_p on the
    /// multiplication matrix.
    #[allow(clippy::needless_range_loop)]
    fn solve_inverse(&self) -> Option<QuotElem> {
        let dim = self.ring.dimension();
        let p = u64::from(self.ring.0.p);
        // columns: self * basis_j
        let mut m = vec![vec![0u64; dim + 1]; dim];
        for j in 0..dim {
            let mut basis = self.ring.zero();
            basis.coeffs[j] = 1;
            let prod = self.mul(&basis);
            for i in 0..dim {
                m[i][j] = u64::from(prod.coeffs[i]);
            }
        }
        m[0][dim] = 1;
        let mut row = 0;
        let mut pivots = Vec::new();
        for col in 0..dim {
            let Some(r) = (row..dim).find(|&r| !m[r][col].is_multiple_of(p)) else {
                continue;
            };
            m.swap(row, r);
            let inv = pow_mod(m[row][col], p - 2, p);
            for c in 0..=dim {
                m[row][c] = m[row][c] * inv % p;
            }
            for r2 in 0..dim {
                if r2 != row && m[r2][col] != 0 {
                    let f = m[r2][col];
                    for c in 0..=dim {
                        m[r2][c] = (m[r2][c] + p * p - f * m[row][c]) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if pivots.len() < dim {
            return None;
        }
        let mut out = self.ring.zero();
        for (r, &col) in pivots.iter().enumerate() {
            out.coeffs[col] = m[r][dim] as u32;
        }
        Some(out)
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Ring for QuotElem {
    fn zero_like(&self) -> Self {
        self.ring.zero()
    }
    fn one_like(&self) -> Self {
        self.ring.from_int(1)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.ring.from_int(n)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
    fn add(&self, rhs: &Self) -> Self {
        let p = self.ring.0.p;
        Self {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn neg(&self) -> Self {
        let p = self.ring.0.p;
        Self {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| (p - a) % p).collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let p = u64::from(self.ring.0.p);
        let degs = self.ring.degs();
        let big: Vec<usize> = degs.iter().map(|d| 2 * d).collect();
        let mut out = vec![0u64; big.iter().product()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            let ea = unindex(i, &degs);
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if *b == 0 {
                    continue;
                }
                let eb = unindex(j, &degs);
                let e: Vec<usize> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
                let idx = index(&e, &big);
                out[idx] = (out[idx] + u64::from(*a) * u64::from(*b)) % p;
            }
        }
        self.ring.reduce(out)
    }
    fn inverse(&self) -> Option<Self> {
        self.solve_inverse()
    }
}

ring_ops!(QuotElem);

impl fmt::Display for QuotElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs = self.ring.degs();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let exps = unindex(i, &degs);
            let mono: Vec<String> = exps
                .iter()
                .zip(&self.ring.0.names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| {
                    if *e == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
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
    fn cuspidal_base_relations() {
        let r = QuotRing::cuspidal_base();
        assert_eq!(r.dimension(), 6);
        let one = r.from_int(1);
        let w = r.var(0);
        let v = r.var(1);
        let eps = w.sub(&one);
        let eta = v.sub(&one);
        assert!(eps.mul(&eps).is_zero());
        assert!(!eta.mul(&eta).is_zero());
        assert!(eta.pow(3).is_zero());
        // 1 + w + w^2 = (w - 1)^2 in characteristic 3
        assert!(one.add(&w).add(&w.mul(&w)).is_zero());
        // v^3 - 1 = 0
        assert!(v.pow(3).sub(&one).is_zero());
        assert_eq!(eta.nilpotency_index(), Some(3));
    }

    #[test]
    fn units_of_local_ring() {
        let r = QuotRing::cuspidal_base();
        let v = r.var(1);
        let inv = v.inverse().unwrap();
        assert!(v.mul(&inv).is_one());
        let eta = v.sub(&r.from_int(1));
        assert!(eta.inverse().is_none());
        assert!(eta.is_nilpotent());
    }
}
