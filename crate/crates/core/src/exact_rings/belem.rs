use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::eisenstein::{EisElem, QOmega};
use super::poly::{fmt_poly, Poly};
use super::rational3::Rational3;
use super::ring::{ring_ops, Ring};
use crate::error::{Error, Result};

/// An element of B = Z[1/3, w, v, (v^3 - 1)^-1]/(1 + w + w^2), stored as
/// `numer(v) / (v^3 - 1)^denom_exp` with `numer` over A.
///
/// Canonical form: `numer` is not divisible by `v^3 - 1` when
/// `denom_exp > 0`. Equality of canonical forms is equality in B.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BElem {
    numer: Poly<EisElem>,
    denom_exp: u32,
}

/// `f = unit_part * (v-1)^n1 * (v-w)^n_omega * (v-w^2)^n_omega_bar`.
#[derive(Clone, PartialEq, Debug)]
pub struct NuLinearFactorization {
    pub unit_part: BElem,
    pub n1: i64,
    pub n_omega: i64,
    pub n_omega_bar: i64,
}

impl NuLinearFactorization {
    pub fn reassemble(&self) -> BElem {
        let mut acc = self.unit_part.clone();
        for (root, n) in BElem::linear_roots().iter().zip(self.exponents()) {
            let lin = BElem::nu().sub(&BElem::from_eis(root.clone()));
            let f = if n >= 0 {
                lin.pow(n as u64)
            } else {
                lin.inverse().expect("v - alpha is a unit").pow((-n) as u64)
            };
            acc = acc.mul(&f);
        }
        acc
    }

    pub fn exponents(&self) -> [i64; 3] {
        [self.n1, self.n_omega, self.n_omega_bar]
    }
}

fn eis_zero() -> EisElem {
    EisElem::from_int(0)
}

fn nu_cubed_minus_one() -> Poly<EisElem> {
    let z = eis_zero();
    Poly::from_coeffs(
        &z,
        vec![
            EisElem::from_int(-1),
            z.clone(),
            z.clone(),
            EisElem::from_int(1),
        ],
    )
}

impl BElem {
    /// Builds `numer / (v^3 - 1)^denom_exp` and canonicalizes it.
    pub fn new(numer: Poly<EisElem>, denom_exp: u32) -> Self {
        Self { numer, denom_exp }.canonicalize()
    }

    pub fn from_poly(numer: Poly<EisElem>) -> Self {
        Self {
            numer,
            denom_exp: 0,
        }
    }

    pub fn from_eis(c: EisElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_eis(EisElem::from_int(n))
    }

    pub fn from_rational3(r: Rational3) -> Self {
        Self::from_eis(EisElem::from_coeff(r))
    }

    pub fn nu() -> Self {
        Self::from_poly(Poly::x(&eis_zero()))
    }

    pub fn omega() -> Self {
        Self::from_eis(EisElem::omega())
    }

    pub fn omega_bar() -> Self {
        Self::from_eis(EisElem::omega_bar())
    }

    /// `v - alpha` for `alpha` in A.
    pub fn nu_minus(alpha: &EisElem) -> Self {
        Self::nu().sub(&Self::from_eis(alpha.clone()))
    }

    /// The three roots `1, w, w^2` of `v^3 - 1`, in that order.
    pub fn linear_roots() -> [EisElem; 3] {
        [EisElem::from_int(1), EisElem::omega(), EisElem::omega_bar()]
    }

    pub fn numer(&self) -> &Poly<EisElem> {
        &self.numer
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    /// Degree in `v` counting the denominator; `None` for zero.
    pub fn nu_degree(&self) -> Option<i64> {
        self.numer
            .degree()
            .map(|d| d as i64 - 3 * i64::from(self.denom_exp))
    }

    /// The constant term when `self` lies in A.
    pub fn as_constant(&self) -> Option<EisElem> {
        if self.denom_exp == 0 && self.numer.is_constant() {
            Some(self.numer.coeff(0))
        } else {
            None
        }
    }

    /// Removes every factor `v^3 - 1` shared by numerator and denominator.
    /// Idempotent.
    pub fn canonicalize(mut self) -> Self {
        if self.numer.is_zero() {
            self.denom_exp = 0;
            return self;
        }
        let d = nu_cubed_minus_one();
        while self.denom_exp > 0 {
            let (q, r) = self.numer.div_rem(&d).expect("v^3 - 1 is monic");
            if !r.is_zero() {
                break;
            }
            self.numer = q;
            self.denom_exp -= 1;
        }
        self
    }

    fn lifted_numer(&self, target_exp: u32) -> Poly<EisElem> {
        let k = target_exp - self.denom_exp;
        if k == 0 {
            self.numer.clone()
        } else {
            self.numer.mul(&nu_cubed_minus_one().pow(u64::from(k)))
        }
    }

    /// Applies `w -> w^2` to every coefficient.
    pub fn conj(&self) -> Self {
        Self {
            numer: self.numer.map(&eis_zero(), EisElem::conj),
            denom_exp: self.denom_exp,
        }
    }

    /// Exact factorization with the maximal powers of `v-1, v-w, v-w^2`
    /// removed; the denominator contributes negative exponents.
    pub fn factor_nu_linear(&self) -> Result<NuLinearFactorization> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut rest = self.numer.clone();
        let mut exps = [0i64; 3];
        for (root, e) in Self::linear_roots().iter().zip(exps.iter_mut()) {
            while let Some(q) = rest.div_linear_exact(root) {
                rest = q;
                *e += 1;
            }
            *e -= i64::from(self.denom_exp);
        }
        Ok(NuLinearFactorization {
            unit_part: Self::from_poly(rest),
            n1: exps[0],
            n_omega: exps[1],
            n_omega_bar: exps[2],
        })
    }

    /// Image under a ring map B -> S sending `v` and `w` to the given
    /// elements. Fails when 3 or `nu^3 - 1` is needed and not invertible.
    pub fn specialize<S: Ring>(&self, nu: &S, omega: &S) -> Result<S> {
        let inv3 = std::cell::OnceCell::new();
        let lift_r3 = |r: &Rational3| -> Result<S> {
            let n = nu.from_bigint_like(r.numerator());
            if r.denominator_exp() == 0 {
                return Ok(n);
            }
            let i3: &Option<S> = inv3.get_or_init(|| nu.from_i64_like(3).inverse());
            let i3 = i3
                .as_ref()
                .ok_or_else(|| Error::NonUnitDenominator("3".into()))?;
            Ok(n.mul(&i3.pow(u64::from(r.denominator_exp()))))
        };
        let mut acc = nu.zero_like();
        for c in self.numer.coeffs().iter().rev() {
            let c = lift_r3(&c.c0)?.add(&lift_r3(&c.c1)?.mul(omega));
            acc = acc.mul(nu).add(&c);
        }
        if self.denom_exp > 0 {
            let d = nu.pow(3).sub(&nu.one_like());
            let inv = d
                .inverse()
                .ok_or_else(|| Error::NonUnitDenominator(format!("v^3 - 1 at v = {nu}")))?;
            acc = acc.mul(&inv.pow(u64::from(self.denom_exp)));
        }
        Ok(acc)
    }

    /// Numerator as a polynomial over Q(w).
    fn numer_qomega(&self) -> Poly<QOmega> {
        self.numer.map(&QOmega::from_int(0), EisElem::to_qomega)
    }
}

/// Least common multiple of the denominators of the coefficients.
fn common_denominator(polys: &[Poly<QOmega>]) -> BigInt {
    let mut d = BigInt::one();
    for p in polys {
        for c in p.coeffs() {
            for q in [&c.c0, &c.c1] {
                d = d.lcm(q.denom());
            }
        }
    }
    d
}

fn qomega_poly_to_b(p: &Poly<QOmega>) -> Option<BElem> {
    let coeffs = p
        .coeffs()
        .iter()
        .map(QOmega::to_eis)
        .collect::<Option<Vec<_>>>()?;
    Some(BElem::from_poly(Poly::from_coeffs(&eis_zero(), coeffs)))
}

impl Ring for BElem {
    fn zero_like(&self) -> Self {
        Self::from_int(0)
    }
    fn one_like(&self) -> Self {
        Self::from_int(1)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_int(n)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Self::from_rational3(Rational3::from_int(n.clone()))
    }
    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        let e = self.denom_exp.max(rhs.denom_exp);
        Self::new(self.lifted_numer(e).add(&rhs.lifted_numer(e)), e)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let e = self.denom_exp.max(rhs.denom_exp);
        Self::new(self.lifted_numer(e).sub(&rhs.lifted_numer(e)), e)
    }
    fn neg(&self) -> Self {
        Self {
            numer: self.numer.neg(),
            denom_exp: self.denom_exp,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.numer.mul(&rhs.numer), self.denom_exp + rhs.denom_exp)
    }
    /// A unit of B is `a * prod (v - alpha)^n_alpha` with `a` a unit of A.
    fn inverse(&self) -> Option<Self> {
        let fac = self.factor_nu_linear().ok()?;
        let a = fac.unit_part.as_constant()?;
        let a_inv = a.inverse()?;
        let exps = fac.exponents().map(|n| -n);
        let shift = exps.iter().map(|e| (-e).max(0)).max().unwrap_or(0);
        let mut numer = Poly::constant(a_inv);
        for (root, e) in Self::linear_roots().iter().zip(exps) {
            let lin = Poly::from_coeffs(&eis_zero(), vec![root.neg(), EisElem::from_int(1)]);
            numer = numer.mul(&lin.pow((e + shift) as u64));
        }
        Some(Self::new(numer, shift as u32))
    }
    fn is_one(&self) -> bool {
        self.denom_exp == 0 && self.numer.is_constant() && self.numer.coeff(0).is_one()
    }

    /// Extended gcd over Q(w)[v], then clearing denominators; succeeds when
    /// the resulting constant is a unit of B.
    fn unit_ideal_cofactors(gens: &[Self]) -> Option<Vec<Self>> {
        if let Some((idx, inv)) = gens
            .iter()
            .enumerate()
            .find_map(|(i, g)| g.inverse().map(|inv| (i, inv)))
        {
            return Some(
                gens.iter()
                    .enumerate()
                    .map(|(i, _)| {
                        if i == idx {
                            inv.clone()
                        } else {
                            Self::from_int(0)
                        }
                    })
                    .collect(),
            );
        }
        let numers: Vec<Poly<QOmega>> = gens.iter().map(Self::numer_qomega).collect();
        let first = numers.first()?;
        let mut g = first.clone();
        let mut cofs = vec![Poly::constant(QOmega::from_int(1))];
        for n in &numers[1..] {
            let (g2, s, t) = Poly::ext_gcd(&g, n).ok()?;
            cofs = cofs.iter().map(|c| c.mul(&s)).collect();
            cofs.push(t);
            g = g2;
        }
        if g.is_zero() {
            return None;
        }
        let mut all = cofs.clone();
        all.push(g.clone());
        let d = common_denominator(&all);
        let d_poly = Poly::constant(QOmega::from_coeff(BigRational::from_integer(d)));
        let h = qomega_poly_to_b(&g.mul(&d_poly))?;
        let h_inv = h.inverse()?;
        let mut out = Vec::with_capacity(gens.len());
        for (c, gen) in cofs.iter().zip(gens) {
            let c = qomega_poly_to_b(&c.mul(&d_poly))?;
            let lift = Self::new(nu_cubed_minus_one(), 0).pow(u64::from(gen.denom_exp));
            out.push(c.mul(&lift).mul(&h_inv));
        }
        let check = out
            .iter()
            .zip(gens)
            .fold(Self::from_int(0), |acc, (c, g)| acc.add(&c.mul(g)));
        check.is_one().then_some(out)
    }
}

ring_ops!(BElem);

impl fmt::Display for BElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_exp == 0 {
            return fmt_poly(f, self.numer.coeffs(), "v");
        }
        write!(f, "(")?;
        fmt_poly(f, self.numer.coeffs(), "v")?;
        if self.denom_exp == 1 {
            write!(f, ")/(v^3 - 1)")
        } else {
            write!(f, ")/(v^3 - 1)^{}", self.denom_exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nu() -> BElem {
        BElem::nu()
    }

    fn d() -> BElem {
        BElem::new(nu_cubed_minus_one(), 0)
    }

    #[test]
    fn canonicalize_cancels() {
        let x = BElem::new(nu_cubed_minus_one(), 1);
        assert_eq!(x, BElem::from_int(1));
        assert_eq!(x.denom_exp(), 0);
        let y = &BElem::nu_minus(&EisElem::from_int(1))
            * &(&(&nu() * &nu()) + &(&nu() + &BElem::from_int(1)));
        assert_eq!(y, d());
        // ((v^3-1)^2 w)/(v^3-1) = w (v^3-1)
        let z = BElem::new(nu_cubed_minus_one().pow(2).scale(&EisElem::omega()), 1);
        assert_eq!(z, &BElem::omega() * &d());
        assert_eq!(z.clone().canonicalize(), z);
    }

    #[test]
    fn factorization_examples() {
        let f = d().factor_nu_linear().unwrap();
        assert_eq!(f.exponents(), [1, 1, 1]);
        assert_eq!(f.unit_part, BElem::from_int(1));
        let g = BElem::nu_minus(&EisElem::omega())
            .factor_nu_linear()
            .unwrap();
        assert_eq!(g.exponents(), [0, 1, 0]);
        // 3(v-1)^2/(v^3-1)
        let h = &BElem::from_int(3) * &BElem::nu_minus(&EisElem::from_int(1)).pow(2);
        let h = &h * &d().inverse().unwrap();
        let fh = h.factor_nu_linear().unwrap();
        assert_eq!(fh.exponents(), [1, -1, -1]);
        assert_eq!(fh.unit_part, BElem::from_int(3));
        assert_eq!(fh.reassemble(), h);
        assert_eq!(BElem::from_int(0).factor_nu_linear(), Err(Error::ZeroInput));
    }

    #[test]
    fn unit_examples() {
        let lam = BElem::from_eis(EisElem::from_int(1).sub(&EisElem::omega()));
        let inv = lam.inverse().unwrap();
        let expected = BElem::from_eis(
            EisElem::from_int(1)
                .sub(&EisElem::omega_bar())
                .scale(&Rational3::new(1, 1)),
        );
        assert_eq!(inv, expected);
        let v1 = BElem::nu_minus(&EisElem::from_int(1));
        let inv = v1.inverse().unwrap();
        let expected = BElem::new(
            Poly::from_coeffs(
                &eis_zero(),
                vec![
                    EisElem::from_int(1),
                    EisElem::from_int(1),
                    EisElem::from_int(1),
                ],
            ),
            1,
        );
        assert_eq!(inv, expected);
        assert!((&nu() + &BElem::from_int(1)).inverse().is_none());
        assert!(BElem::from_int(2).inverse().is_none());
    }

    #[test]
    fn specialize_to_rationals() {
        let x = d().inverse().unwrap();
        let at2 = x
            .specialize(&QOmega::from_int(2), &QOmega::omega())
            .unwrap();
        assert_eq!(
            at2,
            QOmega::from_coeff(BigRational::new(BigInt::from(1), BigInt::from(7)))
        );
        assert!(x
            .specialize(&QOmega::from_int(1), &QOmega::omega())
            .is_err());
    }

    #[test]
    fn unit_ideal_certificate_without_unit_generator() {
        // (v + 1) and (v + 2) have no unit among them but generate B.
        let a = &nu() + &BElem::from_int(1);
        let b = &nu() + &BElem::from_int(2);
        assert!(a.inverse().is_none() && b.inverse().is_none());
        let cof = BElem::unit_ideal_cofactors(&[a.clone(), b.clone()]).unwrap();
        assert!((&(&cof[0] * &a) + &(&cof[1] * &b)).is_one());
        // (v + 1) and 2(v+1) do not.
        let c = &a * &BElem::from_int(2);
        assert!(BElem::unit_ideal_cofactors(&[a, c]).is_none());
    }
}
