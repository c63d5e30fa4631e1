//! The Weil pairing `e_3(phi(1,0), phi(0,1)) = w` with divisor
//! certificates, and the normalization of an arbitrary elliptic curve with
//! a basis of its 3-torsion to the universal family.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_rings::{BElem, CubeRoots, EisElem, FinElem, FiniteField, Poly, Ring};
use crate::level3::{curve_c, phi, phi_at, F3Vec};
use crate::weierstrass::{ModelTransform, ProjPoint, WeierstrassCurve};

/// A linear form `cx x + cy y + cz z` over B.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub cx: BElem,
    pub cy: BElem,
    pub cz: BElem,
}

impl LinearForm {
    pub fn eval(&self, p: &ProjPoint<BElem>) -> BElem {
        self.cx
            .mul(&p.x)
            .add(&self.cy.mul(&p.y))
            .add(&self.cz.mul(&p.z))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x + ({})y + ({})z", self.cx, self.cy, self.cz)
    }
}

/// The functions `g = y/z` and `h = w/z`, stored as their numerators.
#[derive(Clone, Debug)]
pub struct WeilFunctions {
    pub g: LinearForm,
    pub w: LinearForm,
}

impl WeilFunctions {
    /// `h/g = w/y` at `O = [0:1:0]`.
    pub fn ratio_at_origin(&self) -> Result<BElem> {
        let o = ProjPoint::infinity(&BElem::from_int(0));
        let g = self.g.eval(&o);
        let inv = g.inverse().ok_or_else(|| Error::NotAUnit(g.to_string()))?;
        Ok(self.w.eval(&o).mul(&inv))
    }
}

fn nu_minus(a: &EisElem) -> BElem {
    BElem::nu_minus(a)
}

/// `g = y/z` and `h = w/z` with
/// `w = y + (1-wb)(v-wb) x + (1+w)(v-w)(v-wb)^2 z`.
pub fn weil_functions() -> WeilFunctions {
    let (zero, one) = (BElem::from_int(0), BElem::from_int(1));
    let (w, wb) = (EisElem::omega(), EisElem::omega_bar());
    let cx = one.sub(&BElem::omega_bar()).mul(&nu_minus(&wb));
    let cz = one
        .add(&BElem::omega())
        .mul(&nu_minus(&w))
        .mul(&nu_minus(&wb).square());
    WeilFunctions {
        g: LinearForm {
            cx: zero.clone(),
            cy: one.clone(),
            cz: zero,
        },
        w: LinearForm { cx, cy: one, cz },
    }
}

/// Which function a certificate is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeilFunction {
    G,
    H,
}

/// `div(f) = 3[point] - 3[O]`, witnessed by the restriction of the curve
/// equation to the line `f = 0`.
#[derive(Clone, Debug)]
pub struct DivisorCertificate {
    pub function: WeilFunction,
    pub divisor: &'static str,
    /// The curve equation restricted to the line, as a polynomial in `x`.
    pub restriction: Poly<BElem>,
    /// The cube it must equal.
    pub expected: Poly<BElem>,
}

impl DivisorCertificate {
    pub fn holds(&self) -> bool {
        self.restriction == self.expected
    }
}

fn bpoly_x() -> Poly<BElem> {
    Poly::x(&BElem::from_int(0))
}

/// The curve equation `f(x, y)` on the line `y = ax + b`.
fn restrict_to_line(a: &BElem, b: &BElem) -> Result<Poly<BElem>> {
    let curve = curve_c().map(|c| Ok(Poly::constant(c.clone())))?;
    let x = bpoly_x();
    let y = x.scale(a).add(&Poly::constant(b.clone()));
    Ok(curve.eval_affine(&x, &y))
}

/// Certificates for `div(g) = 3[P] - 3[O]` and `div(h) = 3[Q] - 3[O]`, where
/// `P = phi(1,0)` and `Q = phi(0,1)`.
pub fn verify_divisors() -> Result<(DivisorCertificate, DivisorCertificate)> {
    verify_divisors_for(&weil_functions())
}

/// As [`verify_divisors`] for arbitrary linear forms with unit `y`
/// coefficient.
pub fn verify_divisors_for(
    fns: &WeilFunctions,
) -> Result<(DivisorCertificate, DivisorCertificate)> {
    let mut certs = Vec::new();
    for (function, form, divisor, root) in [
        (
            WeilFunction::G,
            &fns.g,
            "3[P] - 3[O]",
            phi(F3Vec::new(1, 0)),
        ),
        (
            WeilFunction::H,
            &fns.w,
            "3[Q] - 3[O]",
            phi(F3Vec::new(0, 1)),
        ),
    ] {
        let inv = form
            .cy
            .inverse()
            .ok_or_else(|| Error::NotAUnit(form.cy.to_string()))?;
        // form = 0 <=> y = -(cx x + cz) / cy
        let a = form.cx.mul(&inv).neg();
        let b = form.cz.mul(&inv).neg();
        let restriction = restrict_to_line(&a, &b)?;
        let (x0, _) = root.to_affine()?;
        let expected = bpoly_x().sub(&Poly::constant(x0)).pow(3).neg();
        let cert = DivisorCertificate {
            function,
            divisor,
            restriction,
            expected,
        };
        if !cert.holds() {
            let residual = cert.restriction.sub(&cert.expected);
            return Err(Error::DivisorMismatch(format!(
                "{function:?}: residual {residual}"
            )));
        }
        certs.push(cert);
    }
    let h = certs.pop().expect("two certificates");
    let g = certs.pop().expect("two certificates");
    Ok((g, h))
}

/// `e_3(phi(1,0), phi(0,1)) = (-1)^3 g(Q) / h(P)`, computed over B.
pub fn e3_basis() -> Result<EisElem> {
    let fns = weil_functions();
    verify_divisors_for(&fns)?;
    let ratio = fns.ratio_at_origin()?;
    if !ratio.is_one() {
        return Err(Error::Mismatch(format!("h/g at O is {ratio}")));
    }
    let p = phi(F3Vec::new(1, 0));
    let q = phi(F3Vec::new(0, 1));
    let gq = fns.g.eval(&q).mul(&q.z.inverse().expect("affine"));
    let hp = fns.w.eval(&p).mul(&p.z.inverse().expect("affine"));
    let hp_inv = hp
        .inverse()
        .ok_or_else(|| Error::NotAUnit(hp.to_string()))?;
    let e = gq.mul(&hp_inv).neg();
    e.as_constant()
        .ok_or_else(|| Error::Mismatch(format!("e3 = {e} depends on v")))
}

/// `w^det(a|b)`: the alternating bilinear extension of [`e3_basis`].
pub fn e3_pair(a: F3Vec, b: F3Vec) -> EisElem {
    let det = i64::from(a.k) * i64::from(b.l) - i64::from(a.l) * i64::from(b.k);
    crate::level3::omega_pow(det)
}

/// An elliptic curve over a field with a basis `(P, Q)` of its 3-torsion.
#[derive(Clone, Debug)]
pub struct ClassificationInput<R> {
    pub curve: WeierstrassCurve<R>,
    pub p: ProjPoint<R>,
    pub q: ProjPoint<R>,
}

impl<R: Ring> ClassificationInput<R> {
    /// The same data after the change of coordinates `m`.
    pub fn transported(&self, m: &ModelTransform<R>) -> Self {
        Self {
            curve: self.curve.transform(m),
            p: m.apply(&self.p),
            q: m.apply(&self.q),
        }
    }

    /// Checks that the discriminant is a unit and that `P` and `Q` are
    /// points of order three on the curve.
    pub fn validate(&self) -> Result<()> {
        if !self.curve.is_elliptic() {
            return Err(Error::NonUnitDiscriminant);
        }
        for (name, pt) in [("P", &self.p), ("Q", &self.q)] {
            if !self.curve.is_on_curve(pt) {
                return Err(Error::InvalidInput(format!(
                    "{name} = {pt} is not on the curve"
                )));
            }
            if pt.is_infinity() || !self.curve.scalar_mul(3, pt)?.is_infinity() {
                return Err(Error::NotOrderThree(format!("{name} = {pt}")));
            }
        }
        Ok(())
    }
}

/// The parameters `(v, w)` of the universal curve and the change of
/// coordinates carrying the input to it.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationOutput<R> {
    pub nu: R,
    pub omega: R,
    pub transform: ModelTransform<R>,
    pub verified: bool,
}

/// The input moved so that `P = (0,0)` with horizontal tangent; the curve
/// then reads `y^2 + a1 xy + a3 y = x^3`.
#[derive(Clone, Debug)]
pub struct Normalized<R> {
    pub curve: WeierstrassCurve<R>,
    pub p: ProjPoint<R>,
    pub q: ProjPoint<R>,
    pub transform: ModelTransform<R>,
}

pub fn normalize_at_p<R: Ring>(input: &ClassificationInput<R>) -> Result<Normalized<R>> {
    let not3 = |what: &str| Error::NotOrderThree(format!("{what} at P = {}", input.p));
    let (x0, y0) = input.p.to_affine().map_err(|_| not3("no affine chart"))?;
    let ctx = x0.zero_like();
    let translate = ModelTransform::new(ctx.one_like(), x0.neg(), ctx.clone(), y0.neg())?;
    let moved = input.curve.transform(&translate);
    let m = moved
        .slope_at(&translate.apply(&input.p))
        .map_err(|_| not3("vertical tangent"))?;
    let shear = ModelTransform::new(ctx.one_like(), ctx.clone(), m.neg(), ctx.clone())?;
    let transform = shear.compose(&translate);
    let curve = input.curve.transform(&transform);
    if !curve.a6.is_zero() || !curve.a4.is_zero() {
        return Err(not3("P is not on the tangent-normalized curve"));
    }
    if !curve.a2.is_zero() {
        return Err(not3("P is not an inflection point"));
    }
    Ok(Normalized {
        p: transform.apply(&input.p),
        q: transform.apply(&input.q),
        curve,
        transform,
    })
}

/// Finds `(v, w)` and the unique change of coordinates carrying the input
/// to `C_v` with `P -> phi(1,0)` and `Q -> phi(0,1)`.
pub fn classify<R: Ring + CubeRoots>(
    input: &ClassificationInput<R>,
) -> Result<ClassificationOutput<R>> {
    input.validate()?;
    let ctx = input.curve.a1.zero_like();
    let three = ctx.from_i64_like(3);
    let inv3 = three
        .inverse()
        .ok_or_else(|| Error::InvalidField("3 is not invertible".into()))?;
    let norm = normalize_at_p(input)?;
    let c = &norm.curve;
    let slope_diff = || -> Result<R> {
        let plus = c.add(&norm.q, &norm.p)?;
        let minus = c.sub(&norm.q, &norm.p)?;
        Ok(c.slope_at(&plus)?.sub(&c.slope_at(&minus)?))
    };
    let lambda = slope_diff().map_err(|_| Error::SlopeDifferenceNotInvertible)?;
    let lambda_inv = lambda
        .inverse()
        .ok_or(Error::SlopeDifferenceNotInvertible)?;
    // Scaling by U multiplies slopes by U.
    let scale = ModelTransform::scaling(three.mul(&lambda_inv))?;
    let transform = scale.compose(&norm.transform);
    let curve = input.curve.transform(&transform);
    let nu = curve.a1.mul(&inv3);
    let d = nu.pow(3).sub(&ctx.one_like());
    if curve.a3 != d {
        return Err(Error::CanonicalFormMismatch(format!(
            "a3 = {} but v^3 - 1 = {d}",
            curve.a3
        )));
    }
    if !d.is_unit() {
        return Err(Error::CanonicalFormMismatch(format!(
            "v^3 - 1 = {d} is not a unit"
        )));
    }
    let q = transform.apply(&input.q);
    let mut found = None;
    for omega in ctx.primitive_cube_roots() {
        let table = phi_at(&nu, &omega)?;
        if *table.get(F3Vec::new(0, 1)) == q {
            found = Some((omega, table));
            break;
        }
    }
    let (omega, table) = found.ok_or(Error::NoCubeRootMatch)?;
    let mut verified = transform.apply(&input.p) == *table.get(F3Vec::new(1, 0));
    for v in F3Vec::ALL {
        if !verified {
            break;
        }
        let kp = input.curve.scalar_mul(i64::from(v.k), &input.p)?;
        let lq = input.curve.scalar_mul(i64::from(v.l), &input.q)?;
        let image = transform.apply(&input.curve.add(&kp, &lq)?);
        verified = image == *table.get(v);
    }
    Ok(ClassificationOutput {
        nu,
        omega,
        transform,
        verified,
    })
}

/// `C_v` over a field with `P = phi(1,0)` and `Q = phi(0,1)`.
pub fn canonical_input<R: Ring>(nu: &R, omega: &R) -> Result<ClassificationInput<R>> {
    let table = phi_at(nu, omega)?;
    Ok(ClassificationInput {
        curve: crate::level3::curve_c_at(nu, omega)?,
        p: table.get(F3Vec::new(1, 0)).clone(),
        q: table.get(F3Vec::new(0, 1)).clone(),
    })
}

/// Summary of [`classify_roundtrip`] over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub q: u32,
    pub trials: usize,
    pub seed: u64,
    /// Trials where `(v, w)`, the inverse transform and the full table were
    /// all recovered.
    pub recovered: usize,
    pub first_failure: Option<String>,
}

fn random_element(k: &FiniteField, rng: &mut ChaCha8Rng) -> FinElem {
    k.element(rng.gen_range(0..k.order()))
}

/// Specializes C at random `(v0, w0)` over `F_q`, moves it by a random
/// change of coordinates `M`, and checks that classification returns
/// `(v0, w0)` and `M^-1` with the whole level structure verified.
pub fn classify_roundtrip(q: u64, trials: usize, seed: u64) -> Result<RoundtripReport> {
    let k = FiniteField::of_order(q)?;
    let roots = k.one().primitive_cube_roots();
    if roots.is_empty() {
        return Err(Error::InvalidField(format!(
            "F_{q} has no primitive cube root of 1"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut recovered = 0;
    let mut first_failure = None;
    for trial in 0..trials {
        let nu0 = loop {
            let n = random_element(&k, &mut rng);
            if !n.pow(3).is_one() {
                break n;
            }
        };
        let omega = roots[rng.gen_range(0..roots.len())].clone();
        let u = loop {
            let u = random_element(&k, &mut rng);
            if !u.is_zero() {
                break u;
            }
        };
        let (r, s, t) = (
            random_element(&k, &mut rng),
            random_element(&k, &mut rng),
            random_element(&k, &mut rng),
        );
        let m = ModelTransform::new(u, r, s, t)?;
        let input = canonical_input(&nu0, &omega)?.transported(&m);
        let outcome = classify(&input);
        let ok = matches!(&outcome, Ok(out)
            if out.nu == nu0 && out.omega == omega && out.verified && out.transform == m.inverse());
        if ok {
            recovered += 1;
        } else if first_failure.is_none() {
            first_failure = Some(format!(
                "trial {trial}: v0 = {nu0}, w0 = {omega}, M = {m}: {outcome:?}"
            ));
        }
    }
    Ok(RoundtripReport {
        q: k.order(),
        trials,
        seed,
        recovered,
        first_failure,
    })
}
