//! The level-3 structure `phi: F_3^2 -> C(S)` on the universal curve and
//! the checks that it is an injective homomorphism onto everywhere-distinct
//! sections of order three.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_rings::{BElem, EisElem, Poly, Ring};
use crate::weierstrass::{collinear_det, distinctness_certificate, ProjPoint, WeierstrassCurve};

/// A vector of `F_3^2` with coordinates stored as `-1, 0, 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct F3Vec {
    pub k: i8,
    pub l: i8,
}

fn red3(n: i64) -> i8 {
    match n.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

impl F3Vec {
    /// All nine vectors, in the order of the defining table.
    pub const ALL: [F3Vec; 9] = [
        F3Vec { k: 0, l: 0 },
        F3Vec { k: 1, l: 0 },
        F3Vec { k: -1, l: 0 },
        F3Vec { k: 0, l: 1 },
        F3Vec { k: 1, l: 1 },
        F3Vec { k: -1, l: 1 },
        F3Vec { k: 0, l: -1 },
        F3Vec { k: 1, l: -1 },
        F3Vec { k: -1, l: -1 },
    ];

    pub fn new(k: i64, l: i64) -> Self {
        Self {
            k: red3(k),
            l: red3(l),
        }
    }

    pub fn zero() -> Self {
        Self { k: 0, l: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.k == 0 && self.l == 0
    }

    pub fn nonzero() -> impl Iterator<Item = F3Vec> {
        Self::ALL.into_iter().skip(1)
    }

    /// Position in [`F3Vec::ALL`].
    pub fn index(&self) -> usize {
        Self::ALL.iter().position(|v| v == self).expect("reduced")
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(c * i64::from(self.k), c * i64::from(self.l))
    }
}

impl std::ops::Add for F3Vec {
    type Output = F3Vec;
    fn add(self, o: F3Vec) -> F3Vec {
        F3Vec::new(i64::from(self.k + o.k), i64::from(self.l + o.l))
    }
}

impl std::ops::Sub for F3Vec {
    type Output = F3Vec;
    fn sub(self, o: F3Vec) -> F3Vec {
        self + (-o)
    }
}

impl std::ops::Neg for F3Vec {
    type Output = F3Vec;
    fn neg(self) -> F3Vec {
        F3Vec::new(-i64::from(self.k), -i64::from(self.l))
    }
}

impl fmt::Display for F3Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// `w^a` for `a` read in `{-1, 0, 1}`.
pub fn omega_pow(a: i64) -> EisElem {
    match red3(a) {
        0 => EisElem::from_int(1),
        1 => EisElem::omega(),
        _ => EisElem::omega_bar(),
    }
}

fn nu_minus(a: &EisElem) -> BElem {
    BElem::nu_minus(a)
}

/// The universal curve `y^2 + 3v xy + (v^3 - 1) y = x^3` over B.
pub fn curve_c() -> WeierstrassCurve<BElem> {
    let z = BElem::from_int(0);
    WeierstrassCurve::new(
        BElem::from_int(3).mul(&BElem::nu()),
        z.clone(),
        BElem::nu().pow(3).sub(&BElem::from_int(1)),
        z.clone(),
        z,
    )
}

/// `(c4, c6, delta, j)` of C as closed forms in `v`:
/// `9v(v^3+8)`, `27(v^6-20v^3-8)`, `27(v^3-1)^3`, `27v^3(v^3+8)^3/(v^3-1)^3`.
pub fn invariant_formulas() -> [BElem; 4] {
    let n = BElem::nu();
    let k = BElem::from_int;
    let n3 = n.pow(3);
    let d = n3.sub(&k(1));
    let c4 = k(9).mul(&n).mul(&n3.add(&k(8)));
    let c6 = k(27).mul(&n3.square().sub(&k(20).mul(&n3)).sub(&k(8)));
    let delta = k(27).mul(&d.pow(3));
    let j = k(27)
        .mul(&n3)
        .mul(&n3.add(&k(8)).pow(3))
        .mul(&d.pow(3).inverse().expect("unit"));
    [c4, c6, delta, j]
}

/// `phi(v)` over B, from the nine-row table.
pub fn phi(v: F3Vec) -> ProjPoint<BElem> {
    let one = EisElem::from_int(1);
    let (w, wb) = (EisElem::omega(), EisElem::omega_bar());
    let pt = |a: &EisElem, b: &EisElem| {
        let (na, nb) = (nu_minus(a), nu_minus(b));
        ProjPoint::affine(na.mul(&nb).neg(), na.square().mul(&nb))
    };
    match (v.k, v.l) {
        (0, 0) => ProjPoint::infinity(&BElem::from_int(0)),
        (1, 0) => ProjPoint::affine(BElem::from_int(0), BElem::from_int(0)),
        (-1, 0) => ProjPoint::affine(
            BElem::from_int(0),
            BElem::from_int(1).sub(&BElem::nu().pow(3)),
        ),
        (0, 1) => pt(&wb, &w),
        (1, 1) => pt(&one, &wb),
        (-1, 1) => pt(&w, &one),
        (0, -1) => pt(&w, &wb),
        (1, -1) => pt(&one, &w),
        (-1, -1) => pt(&wb, &one),
        _ => unreachable!("reduced coordinates"),
    }
}

/// The closed formula `[-(v - w^a)(v - w^b) : (v - w^a)^2 (v - w^b) : 1]`
/// with `a = (k-1)l`, `b = (k+1)l`; only valid for `l != 0`.
pub fn phi_compact(v: F3Vec) -> Option<ProjPoint<BElem>> {
    if v.l == 0 {
        return None;
    }
    let (k, l) = (i64::from(v.k), i64::from(v.l));
    let na = nu_minus(&omega_pow((k - 1) * l));
    let nb = nu_minus(&omega_pow((k + 1) * l));
    Some(ProjPoint::affine(na.mul(&nb).neg(), na.square().mul(&nb)))
}

/// The slope `mu(v)` of the curve at `phi(v)`, from the slope table.
pub fn mu_phi(v: F3Vec) -> Result<BElem> {
    let (k, l) = (i64::from(v.k), i64::from(v.l));
    match (k, l) {
        (0, 0) => Err(Error::ZeroVector),
        (1, 0) => Ok(BElem::from_int(0)),
        (-1, 0) => Ok(BElem::from_int(-3).mul(&BElem::nu())),
        _ => {
            let c = omega_pow(-l).sub(&EisElem::from_int(1));
            Ok(BElem::from_eis(c).mul(&nu_minus(&omega_pow((k - 1) * l))))
        }
    }
}

/// The nine points of a level structure, indexed by [`F3Vec::index`].
#[derive(Clone, Debug)]
pub struct LevelStructure<R> {
    points: Vec<ProjPoint<R>>,
}

impl<R: Ring> LevelStructure<R> {
    pub fn from_fn(f: impl Fn(F3Vec) -> Result<ProjPoint<R>>) -> Result<Self> {
        Ok(Self {
            points: F3Vec::ALL.iter().map(|v| f(*v)).collect::<Result<_>>()?,
        })
    }

    pub fn get(&self, v: F3Vec) -> &ProjPoint<R> {
        &self.points[v.index()]
    }

    pub fn set(&mut self, v: F3Vec, p: ProjPoint<R>) {
        self.points[v.index()] = p;
    }

    pub fn iter(&self) -> impl Iterator<Item = (F3Vec, &ProjPoint<R>)> {
        F3Vec::ALL.into_iter().zip(&self.points)
    }

    pub fn map<S: Ring>(
        &self,
        f: impl Fn(&ProjPoint<R>) -> Result<ProjPoint<S>>,
    ) -> Result<LevelStructure<S>> {
        Ok(LevelStructure {
            points: self.points.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

impl<R: Ring> PartialEq for LevelStructure<R> {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

/// The structure `phi` over B.
pub fn phi_table() -> LevelStructure<BElem> {
    LevelStructure::from_fn(|v| Ok(phi(v))).expect("table")
}

/// The image of `C` under a ring map `B -> S`, given by `v` and `w`.
pub fn curve_c_at<S: Ring>(nu: &S, omega: &S) -> Result<WeierstrassCurve<S>> {
    curve_c().map(|a| a.specialize(nu, omega))
}

/// The image of `phi` under a ring map `B -> S`.
pub fn phi_at<S: Ring>(nu: &S, omega: &S) -> Result<LevelStructure<S>> {
    phi_table().map(|p| p.map(|c| c.specialize(nu, omega)))
}

/// Expands `f(P + t(1, mu))` in `t` and checks that the coefficients of
/// `t^0, t^1, t^2` vanish.
pub fn verify_inflection_at<R: Ring>(
    curve: &WeierstrassCurve<R>,
    p: &ProjPoint<R>,
    mu: &R,
) -> Result<()> {
    let (x, y) = p.to_affine()?;
    let zero = x.zero_like();
    let lin = |c: &R, d: &R| Poly::from_coeffs(&zero, vec![c.clone(), d.clone()]);
    let xt = lin(&x, &x.one_like());
    let yt = lin(&y, mu);
    let k = |c: &R| Poly::constant(c.clone());
    let f = yt
        .square()
        .add(&k(&curve.a1).mul(&xt).mul(&yt))
        .add(&k(&curve.a3).mul(&yt))
        .sub(&xt.pow(3))
        .sub(&k(&curve.a2).mul(&xt.square()))
        .sub(&k(&curve.a4).mul(&xt))
        .sub(&k(&curve.a6));
    for degree in 0..3 {
        let c = f.coeff(degree);
        if !c.is_zero() {
            return Err(Error::InflectionFailure {
                degree,
                coefficient: c.to_string(),
            });
        }
    }
    Ok(())
}

/// `verify_inflection_at` for `phi(v)` on C, in the direction of `mu(v)`.
pub fn verify_inflection(v: F3Vec) -> Result<()> {
    verify_inflection_at(&curve_c(), &phi(v), &mu_phi(v)?)
}

/// Counts of the sub-checks passed by [`verify_level_structure`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LevelReport {
    pub on_curve: usize,
    pub distinct_pairs: usize,
    pub inflections: usize,
    pub collinear_triples: usize,
    pub homomorphism_pairs: usize,
    pub nowhere_zero: usize,
}

fn fail(check: &str, detail: impl fmt::Display) -> Error {
    Error::Mismatch(format!("{check}: {detail}"))
}

/// Runs, in order: on-curve, pairwise distinctness certificates,
/// inflection at each nonzero point, vanishing determinants on zero-sum
/// triples, the group law on all 81 pairs, and certificates against `O`.
pub fn verify_level_structure<R: Ring>(
    curve: &WeierstrassCurve<R>,
    table: &LevelStructure<R>,
) -> Result<LevelReport> {
    let mut rep = LevelReport::default();
    if !table.get(F3Vec::zero()).is_infinity() {
        return Err(fail("zero", "phi(0) is not O"));
    }
    for (v, p) in table.iter() {
        if !curve.is_on_curve(p) {
            return Err(fail("on_curve", v));
        }
        rep.on_curve += 1;
    }
    for (i, a) in F3Vec::ALL.iter().enumerate() {
        for b in &F3Vec::ALL[i + 1..] {
            distinctness_certificate(table.get(*a), table.get(*b))
                .map_err(|_| fail("distinct", format!("{a} {b}")))?;
            rep.distinct_pairs += 1;
        }
    }
    for v in F3Vec::nonzero() {
        let p = table.get(v);
        let mu = curve.slope_at(p)?;
        verify_inflection_at(curve, p, &mu)?;
        rep.inflections += 1;
    }
    for (i, a) in F3Vec::ALL.iter().enumerate() {
        for (j, b) in F3Vec::ALL.iter().enumerate().skip(i + 1) {
            let c = -(*a + *b);
            if c.index() <= j {
                continue;
            }
            let d = collinear_det(table.get(*a), table.get(*b), table.get(c));
            if !d.is_zero() {
                return Err(fail("collinear", format!("{a} {b} {c}")));
            }
            rep.collinear_triples += 1;
        }
    }
    let pairs: Vec<(F3Vec, F3Vec)> = F3Vec::ALL
        .iter()
        .flat_map(|a| F3Vec::ALL.iter().map(move |b| (*a, *b)))
        .collect();
    let bad = pairs.par_iter().find_first(|(a, b)| {
        curve
            .add(table.get(*a), table.get(*b))
            .map(|s| s != *table.get(*a + *b))
            .unwrap_or(true)
    });
    if let Some((a, b)) = bad {
        return Err(fail("homomorphism", format!("{a} + {b}")));
    }
    rep.homomorphism_pairs = pairs.len();
    let o = curve.infinity();
    for v in F3Vec::nonzero() {
        distinctness_certificate(table.get(v), &o).map_err(|_| fail("nowhere_zero", v))?;
        rep.nowhere_zero += 1;
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_rings::FiniteField;

    #[test]
    fn invariants_of_c() {
        let inv = curve_c().invariants();
        let [c4, c6, delta, j] = invariant_formulas();
        assert_eq!(inv.c4, c4);
        assert_eq!(inv.c6, c6);
        assert_eq!(inv.delta, delta);
        assert_eq!(inv.j.unwrap(), j);
    }

    #[test]
    fn compact_formula_matches_table() {
        for v in F3Vec::ALL {
            if let Some(p) = phi_compact(v) {
                let q = phi(v);
                assert_eq!((p.x, p.y, p.z), (q.x, q.y, q.z));
            }
        }
    }

    #[test]
    fn slopes_match_curve() {
        let c = curve_c();
        for v in F3Vec::nonzero() {
            assert_eq!(c.slope_at(&phi(v)).unwrap(), mu_phi(v).unwrap(), "{v}");
        }
        assert_eq!(mu_phi(F3Vec::zero()), Err(Error::ZeroVector));
        let w1 = BElem::from_eis(EisElem::omega().sub(&EisElem::from_int(1)));
        assert_eq!(
            mu_phi(F3Vec::new(0, -1)).unwrap(),
            w1.mul(&BElem::nu_minus(&EisElem::omega()))
        );
    }

    #[test]
    fn negation_and_inflection() {
        let c = curve_c();
        for v in F3Vec::ALL {
            assert_eq!(phi(-v), c.negate(&phi(v)));
            if !v.is_zero() {
                verify_inflection(v).unwrap();
            }
        }
        let p = phi(F3Vec::new(1, 0));
        let moved = ProjPoint::affine(p.x.add(&BElem::from_int(1)), p.y.clone());
        let err = verify_inflection_at(&c, &moved, &BElem::from_int(0)).unwrap_err();
        assert!(matches!(err, Error::InflectionFailure { degree: 0, .. }));
    }

    #[test]
    fn full_structure_over_b() {
        let rep = verify_level_structure(&curve_c(), &phi_table()).unwrap();
        assert_eq!(rep.distinct_pairs, 36);
        assert_eq!(rep.homomorphism_pairs, 81);
        assert_eq!(rep.inflections, 8);
        assert_eq!(rep.nowhere_zero, 8);
        // four lines through O plus the 8 affine lines not through O
        assert_eq!(rep.collinear_triples, 12);
    }

    #[test]
    fn swapped_point_fails() {
        let mut t = phi_table();
        t.set(F3Vec::new(1, 1), phi(F3Vec::new(1, -1)));
        assert!(verify_level_structure(&curve_c(), &t).is_err());
    }

    #[test]
    fn f4_fiber() {
        let f4 = FiniteField::of_order(4).unwrap();
        let w = f4.generator();
        let c = curve_c_at(&f4.zero(), &w).unwrap();
        let t = phi_at(&f4.zero(), &w).unwrap();
        verify_level_structure(&c, &t).unwrap();
    }
}
