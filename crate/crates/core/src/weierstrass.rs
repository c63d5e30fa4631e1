//! Weierstrass curves and projective points over any [`Ring`].

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_rings::Ring;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, PartialEq, Debug)]
pub struct WeierstrassCurve<R> {
    pub a1: R,
    pub a2: R,
    pub a3: R,
    pub a4: R,
    pub a6: R,
}

/// The standard invariants of a Weierstrass model. `j` is `None` when the
/// discriminant is not a unit.
#[derive(Clone, PartialEq, Debug)]
pub struct Invariants<R> {
    pub b2: R,
    pub b4: R,
    pub b6: R,
    pub b8: R,
    pub c4: R,
    pub c6: R,
    pub delta: R,
    pub j: Option<R>,
}

/// A point `[x:y:z]` of the projective plane. Equality is projective: two
/// points are equal when all 2x2 minors of their coordinate matrix vanish.
#[derive(Clone, Debug)]
pub struct ProjPoint<R> {
    pub x: R,
    pub y: R,
    pub z: R,
}

impl<R: Ring> PartialEq for ProjPoint<R> {
    fn eq(&self, other: &Self) -> bool {
        minors(self, other).iter().all(Ring::is_zero)
    }
}

impl<R: Ring> ProjPoint<R> {
    pub fn new(x: R, y: R, z: R) -> Self {
        Self { x, y, z }
    }

    pub fn affine(x: R, y: R) -> Self {
        let z = x.one_like();
        Self { x, y, z }
    }

    /// The identity `O = [0:1:0]`.
    pub fn infinity(ctx: &R) -> Self {
        Self {
            x: ctx.zero_like(),
            y: ctx.one_like(),
            z: ctx.zero_like(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero() && !self.y.is_zero()
    }

    pub fn coords(&self) -> [&R; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<ProjPoint<S>> {
        Ok(ProjPoint::new(f(&self.x)?, f(&self.y)?, f(&self.z)?))
    }

    /// `(x/z, y/z)`; the z-coordinate must be a unit.
    pub fn to_affine(&self) -> Result<(R, R)> {
        let zi = self
            .z
            .inverse()
            .ok_or_else(|| Error::NonUnitDenominator(format!("z = {}", self.z)))?;
        Ok((self.x.mul(&zi), self.y.mul(&zi)))
    }

    /// Scales to `z = 1` when `z` is a unit, or to `y = 1` when `y` is.
    pub fn normalized(&self) -> Self {
        if let Ok((x, y)) = self.to_affine() {
            return Self::affine(x, y);
        }
        if let Some(yi) = self.y.inverse() {
            return Self::new(self.x.mul(&yi), self.x.one_like(), self.z.mul(&yi));
        }
        self.clone()
    }
}

impl<R: Ring> fmt::Display for ProjPoint<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.x, self.y, self.z)
    }
}

/// `(m_xy, m_xz, m_yz)`, the 2x2 minors of the matrix with rows `p`, `q`.
pub fn minors<R: Ring>(p: &ProjPoint<R>, q: &ProjPoint<R>) -> [R; 3] {
    [
        p.x.mul(&q.y).sub(&p.y.mul(&q.x)),
        p.x.mul(&q.z).sub(&p.z.mul(&q.x)),
        p.y.mul(&q.z).sub(&p.z.mul(&q.y)),
    ]
}

/// Determinant of the 3x3 matrix with rows `p`, `q`, `r`.
pub fn collinear_det<R: Ring>(p: &ProjPoint<R>, q: &ProjPoint<R>, r: &ProjPoint<R>) -> R {
    let [m_xy, m_xz, m_yz] = minors(q, r);
    p.x.mul(&m_yz).sub(&p.y.mul(&m_xz)).add(&p.z.mul(&m_xy))
}

/// Cofactors `s` with `s . minors(p, q) = 1`, proving that `p` and `q`
/// differ at every point of the base.
pub fn distinctness_certificate<R: Ring>(p: &ProjPoint<R>, q: &ProjPoint<R>) -> Result<[R; 3]> {
    let m = minors(p, q);
    let s = R::unit_ideal_cofactors(&m).ok_or(Error::NotEverywhereDistinct)?;
    let check = s
        .iter()
        .zip(&m)
        .fold(m[0].zero_like(), |acc, (a, b)| acc.add(&a.mul(b)));
    if !check.is_one() {
        return Err(Error::NotEverywhereDistinct);
    }
    Ok([s[0].clone(), s[1].clone(), s[2].clone()])
}

impl<R: Ring> WeierstrassCurve<R> {
    pub fn new(a1: R, a2: R, a3: R, a4: R, a6: R) -> Self {
        Self { a1, a2, a3, a4, a6 }
    }

    pub fn coefficients(&self) -> [&R; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<WeierstrassCurve<S>> {
        Ok(WeierstrassCurve::new(
            f(&self.a1)?,
            f(&self.a2)?,
            f(&self.a3)?,
            f(&self.a4)?,
            f(&self.a6)?,
        ))
    }

    fn k(&self, n: i64) -> R {
        self.a1.from_i64_like(n)
    }

    pub fn invariants(&self) -> Invariants<R> {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let k = |n| self.k(n);
        let b2 = a1.square().add(&k(4).mul(a2));
        let b4 = k(2).mul(a4).add(&a1.mul(a3));
        let b6 = a3.square().add(&k(4).mul(a6));
        let b8 = a1
            .square()
            .mul(a6)
            .add(&k(4).mul(a2).mul(a6))
            .sub(&a1.mul(a3).mul(a4))
            .add(&a2.mul(&a3.square()))
            .sub(&a4.square());
        let c4 = b2.square().sub(&k(24).mul(&b4));
        let c6 = b2
            .pow(3)
            .neg()
            .add(&k(36).mul(&b2).mul(&b4))
            .sub(&k(216).mul(&b6));
        let delta = b2
            .square()
            .mul(&b8)
            .neg()
            .sub(&k(8).mul(&b4.pow(3)))
            .sub(&k(27).mul(&b6.square()))
            .add(&k(9).mul(&b2).mul(&b4).mul(&b6));
        let j = delta.inverse().map(|d| c4.pow(3).mul(&d));
        Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            delta,
            j,
        }
    }

    pub fn discriminant(&self) -> R {
        self.invariants().delta
    }

    pub fn j_invariant(&self) -> Result<R> {
        self.invariants().j.ok_or(Error::NonUnitDiscriminant)
    }

    pub fn is_elliptic(&self) -> bool {
        self.discriminant().is_unit()
    }

    /// `F(x,y,z) = y^2 z + a1 xyz + a3 yz^2 - x^3 - a2 x^2 z - a4 xz^2 - a6 z^3`.
    pub fn eval(&self, p: &ProjPoint<R>) -> R {
        let (x, y, z) = (&p.x, &p.y, &p.z);
        let z2 = z.square();
        y.square()
            .mul(z)
            .add(&self.a1.mul(x).mul(y).mul(z))
            .add(&self.a3.mul(y).mul(&z2))
            .sub(&x.pow(3))
            .sub(&self.a2.mul(&x.square()).mul(z))
            .sub(&self.a4.mul(x).mul(&z2))
            .sub(&self.a6.mul(&z2).mul(z))
    }

    /// The affine equation `f(x, y)` with `z = 1`.
    pub fn eval_affine(&self, x: &R, y: &R) -> R {
        self.eval(&ProjPoint::affine(x.clone(), y.clone()))
    }

    /// `(dF/dx, dF/dy, dF/dz)` at `p`.
    pub fn gradient(&self, p: &ProjPoint<R>) -> [R; 3] {
        let (x, y, z) = (&p.x, &p.y, &p.z);
        let k = |n| self.k(n);
        let fx = self
            .a1
            .mul(y)
            .mul(z)
            .sub(&k(3).mul(&x.square()))
            .sub(&k(2).mul(&self.a2).mul(x).mul(z))
            .sub(&self.a4.mul(&z.square()));
        let fy = k(2)
            .mul(y)
            .mul(z)
            .add(&self.a1.mul(x).mul(z))
            .add(&self.a3.mul(&z.square()));
        let fz = y
            .square()
            .add(&self.a1.mul(x).mul(y))
            .add(&k(2).mul(&self.a3).mul(y).mul(z))
            .sub(&self.a2.mul(&x.square()))
            .sub(&k(2).mul(&self.a4).mul(x).mul(z))
            .sub(&k(3).mul(&self.a6).mul(&z.square()));
        [fx, fy, fz]
    }

    pub fn is_on_curve(&self, p: &ProjPoint<R>) -> bool {
        self.eval(p).is_zero()
    }

    /// On the curve, and the three partial derivatives generate the unit
    /// ideal.
    pub fn is_smooth_point(&self, p: &ProjPoint<R>) -> bool {
        self.is_on_curve(p) && R::unit_ideal_cofactors(&self.gradient(p)).is_some()
    }

    pub fn infinity(&self) -> ProjPoint<R> {
        ProjPoint::infinity(&self.a1)
    }

    pub fn negate(&self, p: &ProjPoint<R>) -> ProjPoint<R> {
        let y = p.y.neg().sub(&self.a1.mul(&p.x)).sub(&self.a3.mul(&p.z));
        ProjPoint::new(p.x.clone(), y, p.z.clone())
    }

    /// Denominator `2y + a1 x + a3` of the slope at an affine point.
    fn tangent_denominator(&self, x: &R, y: &R) -> R {
        self.k(2).mul(y).add(&self.a1.mul(x)).add(&self.a3)
    }

    /// `dy/dx` at an affine point of the curve.
    pub fn slope_at(&self, p: &ProjPoint<R>) -> Result<R> {
        let (x, y) = p.to_affine()?;
        let num = self
            .k(3)
            .mul(&x.square())
            .add(&self.k(2).mul(&self.a2).mul(&x))
            .add(&self.a4)
            .sub(&self.a1.mul(&y));
        let den = self.tangent_denominator(&x, &y);
        let inv = den
            .inverse()
            .ok_or_else(|| Error::NonUnitDenominator(den.to_string()))?;
        Ok(num.mul(&inv))
    }

    /// The chord and tangent law. Every division must be by a unit of the
    /// coefficient ring; otherwise the sum is not given by one formula over
    /// the whole base and `NonUnitDenominator` is returned.
    pub fn add(&self, p: &ProjPoint<R>, q: &ProjPoint<R>) -> Result<ProjPoint<R>> {
        if p.is_infinity() {
            return Ok(q.clone());
        }
        if q.is_infinity() {
            return Ok(p.clone());
        }
        if *p == self.negate(q) {
            return Ok(self.infinity());
        }
        let (x1, y1) = p.to_affine()?;
        let (x2, y2) = q.to_affine()?;
        let dx = x2.sub(&x1);
        let lambda = if let Some(inv) = dx.inverse() {
            y2.sub(&y1).mul(&inv)
        } else if dx.is_zero() && y1 == y2 {
            self.slope_at(&ProjPoint::affine(x1.clone(), y1.clone()))?
        } else {
            return Err(Error::NonUnitDenominator(format!("x2 - x1 = {dx}")));
        };
        let nu = y1.sub(&lambda.mul(&x1));
        let x3 = lambda
            .square()
            .add(&self.a1.mul(&lambda))
            .sub(&self.a2)
            .sub(&x1)
            .sub(&x2);
        let y3 = lambda.add(&self.a1).mul(&x3).neg().sub(&nu).sub(&self.a3);
        Ok(ProjPoint::affine(x3, y3))
    }

    pub fn sub(&self, p: &ProjPoint<R>, q: &ProjPoint<R>) -> Result<ProjPoint<R>> {
        self.add(p, &self.negate(q))
    }

    pub fn scalar_mul(&self, n: i64, p: &ProjPoint<R>) -> Result<ProjPoint<R>> {
        let mut base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.infinity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// The curve `a'` reached by the change of coordinates `m`, so that
    /// `m.apply(P)` lies on it whenever `P` lies on `self`.
    pub fn transform(&self, m: &ModelTransform<R>) -> WeierstrassCurve<R> {
        let (u, r, s, t) = (&m.u, &m.r, &m.s, &m.t);
        let k = |n| self.k(n);
        let a1 = u.mul(&self.a1).sub(&k(2).mul(s));
        let a2 = u
            .square()
            .mul(&self.a2)
            .add(&s.mul(&a1))
            .sub(&k(3).mul(r))
            .add(&s.square());
        let a3 = u.pow(3).mul(&self.a3).sub(&r.mul(&a1)).sub(&k(2).mul(t));
        let a4 = u
            .pow(4)
            .mul(&self.a4)
            .add(&s.mul(&a3))
            .sub(&k(2).mul(r).mul(&a2))
            .add(&s.mul(r).mul(&a1))
            .add(&t.mul(&a1))
            .sub(&k(3).mul(&r.square()))
            .add(&k(2).mul(s).mul(t));
        let a6 = u
            .pow(6)
            .mul(&self.a6)
            .sub(&r.mul(&a4))
            .add(&t.mul(&a3))
            .sub(&r.square().mul(&a2))
            .add(&t.mul(r).mul(&a1))
            .sub(&r.pow(3))
            .add(&t.square());
        WeierstrassCurve::new(a1, a2, a3, a4, a6)
    }

    /// Residuals of the five transformation relations between `self`, the
    /// target `target`, and `m`; all zero exactly when `m` maps `self` onto
    /// `target`.
    pub fn transform_residuals(&self, m: &ModelTransform<R>, target: &Self) -> [R; 5] {
        let image = self.transform(m);
        [
            image.a1.sub(&target.a1),
            image.a2.sub(&target.a2),
            image.a3.sub(&target.a3),
            image.a4.sub(&target.a4),
            image.a6.sub(&target.a6),
        ]
    }
}

impl<R: Ring> fmt::Display for WeierstrassCurve<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}, {}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

/// The coordinate change `x -> u^2 x + r z`, `y -> s u^2 x + u^3 y + t z`,
/// i.e. the matrix `A(u, r, s, t)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModelTransform<R> {
    pub u: R,
    pub r: R,
    pub s: R,
    pub t: R,
}

impl<R: Ring> ModelTransform<R> {
    pub fn new(u: R, r: R, s: R, t: R) -> Result<Self> {
        if !u.is_unit() {
            return Err(Error::NotAUnit(u.to_string()));
        }
        Ok(Self { u, r, s, t })
    }

    pub fn identity(ctx: &R) -> Self {
        let z = ctx.zero_like();
        Self {
            u: ctx.one_like(),
            r: z.clone(),
            s: z.clone(),
            t: z,
        }
    }

    /// `A(u, 0, 0, 0)`.
    pub fn scaling(u: R) -> Result<Self> {
        let z = u.zero_like();
        Self::new(u, z.clone(), z.clone(), z)
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one() && self.r.is_zero() && self.s.is_zero() && self.t.is_zero()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<ModelTransform<S>> {
        Ok(ModelTransform {
            u: f(&self.u)?,
            r: f(&self.r)?,
            s: f(&self.s)?,
            t: f(&self.t)?,
        })
    }

    /// The 3x3 matrix `A(u, r, s, t)`.
    pub fn matrix(&self) -> [[R; 3]; 3] {
        let u2 = self.u.square();
        let (z, o) = (self.u.zero_like(), self.u.one_like());
        [
            [u2.clone(), z.clone(), self.r.clone()],
            [self.s.mul(&u2), self.u.pow(3), self.t.clone()],
            [z.clone(), z, o],
        ]
    }

    pub fn apply(&self, p: &ProjPoint<R>) -> ProjPoint<R> {
        let u2 = self.u.square();
        ProjPoint::new(
            u2.mul(&p.x).add(&self.r.mul(&p.z)),
            self.s
                .mul(&u2)
                .mul(&p.x)
                .add(&self.u.pow(3).mul(&p.y))
                .add(&self.t.mul(&p.z)),
            p.z.clone(),
        )
    }

    /// The matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.t);
        let (u0, r0, s0, t0) = (&other.u, &other.r, &other.s, &other.t);
        let u1sq = u1.square();
        Self {
            u: u1.mul(u0),
            r: u1sq.mul(r0).add(r1),
            s: s1.add(&u1.mul(s0)),
            t: s1.mul(&u1sq).mul(r0).add(&u1.pow(3).mul(t0)).add(t1),
        }
    }

    pub fn inverse(&self) -> Self {
        let ui = self.u.inverse().expect("u is a unit");
        let ui2 = ui.square();
        Self {
            u: ui.clone(),
            r: self.r.mul(&ui2).neg(),
            s: self.s.mul(&ui).neg(),
            t: self.r.mul(&self.s).sub(&self.t).mul(&ui2).mul(&ui),
        }
    }
}

impl<R: Ring> fmt::Display for ModelTransform<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({}, {}, {}, {})", self.u, self.r, self.s, self.t)
    }
}
