//! Special and degenerate fibers: the `v = 0` fiber with complex
//! multiplication, its reduction to `F_4` with a height-two formal group,
//! and the nodal and cuspidal fibers over `v^3 = 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_rings::{
    EisElem, FinElem, FiniteField, MultiSeries, Poly, QOmega, QuotRing, Ring, TruncSeries,
};
use crate::level3::{curve_c_at, phi_at, F3Vec, LevelStructure};
use crate::weierstrass::{collinear_det, ProjPoint, WeierstrassCurve};

/// One named sub-check with a short human-readable detail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// `Mismatch` naming the first failed sub-check, if any.
pub fn first_failure(checks: &[SubCheck]) -> Result<()> {
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::Mismatch(format!("{}: {}", c.name, c.detail))),
        None => Ok(()),
    }
}

#[derive(Default)]
struct Checks(Vec<SubCheck>);

impl Checks {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> Result<()> {
        self.0.push(SubCheck {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        Ok(())
    }
}

/// Outcome of [`cm_fiber_check`].
#[derive(Clone, Debug)]
pub struct CmReport {
    pub curve: WeierstrassCurve<EisElem>,
    pub checks: Vec<SubCheck>,
}

fn eis(n: i64) -> EisElem {
    EisElem::from_int(n)
}

/// The affine points of the `v = 0` fiber as printed, indexed `[k][l]`
/// with `k, l` in `-1, 0, 1`; `None` is the point at infinity. The entry
/// at `(1, 0)` is `(0, 0)`: `phi(1,0) = [0:0:1]` for every `v`.
pub fn cm_table() -> [[Option<(EisElem, EisElem)>; 3]; 3] {
    let (w, wb) = (EisElem::omega(), EisElem::omega_bar());
    let n = |e: &EisElem| e.neg();
    let p = |a: EisElem, b: EisElem| Some((a, b));
    [
        [p(n(&wb), n(&w)), p(eis(0), eis(1)), p(n(&w), n(&wb))],
        [p(eis(-1), n(&w)), None, p(eis(-1), n(&wb))],
        [p(n(&w), n(&w)), p(eis(0), eis(0)), p(n(&wb), n(&wb))],
    ]
}

fn table_point(v: F3Vec) -> ProjPoint<EisElem> {
    match &cm_table()[(v.k + 1) as usize][(v.l + 1) as usize] {
        Some((x, y)) => ProjPoint::affine(x.clone(), y.clone()),
        None => ProjPoint::infinity(&eis(0)),
    }
}

/// `[x : y : z] -> [c x : y : z]`.
fn cm_map<R: Ring>(c: &R, p: &ProjPoint<R>) -> ProjPoint<R> {
    ProjPoint::new(c.mul(&p.x), p.y.clone(), p.z.clone())
}

/// Checks the `v = 0` fiber over `A = Z[1/3][w]`: its invariants, the
/// action of `Z[w]`, the negation formula, and the specialized level
/// structure. Fails on the first failed sub-check.
pub fn cm_fiber_check() -> Result<CmReport> {
    let r = cm_fiber_report()?;
    first_failure(&r.checks)?;
    Ok(r)
}

/// As [`cm_fiber_check`], recording failed sub-checks instead of stopping.
pub fn cm_fiber_report() -> Result<CmReport> {
    let mut c = Checks::default();
    let (zero, w, wb) = (eis(0), EisElem::omega(), EisElem::omega_bar());
    let curve = curve_c_at(&zero, &w)?;
    let inv = curve.invariants();
    let all_zero = [&curve.a1, &curve.a2, &curve.a4, &curve.a6, &inv.c4]
        .iter()
        .all(|a| a.is_zero());
    c.check(
        "cm.coefficients",
        all_zero && curve.a3 == eis(-1),
        format!("{curve}"),
    )?;
    c.check("cm.c6", inv.c6 == eis(-216), format!("c6 = {}", inv.c6))?;
    c.check(
        "cm.discriminant",
        inv.delta == eis(-27),
        format!("delta = {}", inv.delta),
    )?;
    c.check("cm.j", inv.j.as_ref().is_some_and(Ring::is_zero), "j = 0")?;

    // Symbolic checks in Z[1/3][w][x][y].
    let e0 = Poly::zero(&zero);
    let lift = |a: &EisElem| Ok(Poly::constant(Poly::constant(a.clone())));
    let gcurve = curve.map(lift)?;
    let x = Poly::constant(Poly::x(&zero));
    let y = Poly::x(&e0);
    let generic = ProjPoint::affine(x.clone(), y.clone());
    let f = gcurve.eval(&generic);
    for (name, unit) in [
        ("cm.omega_preserves_curve", &w),
        ("cm.omega_bar_preserves_curve", &wb),
    ] {
        let u = Poly::constant(Poly::constant(unit.clone()));
        let moved = gcurve.eval(&cm_map(&u, &generic));
        c.check(name, moved.sub(&f).is_zero(), "f(cx, y) = f(x, y)")?;
    }
    let o = curve.infinity();
    c.check(
        "cm.fixes_origin",
        cm_map(&w, &o) == o && cm_map(&wb, &o) == o,
        "[0:1:0] is fixed",
    )?;
    let one = Poly::constant(Poly::constant(eis(1)));
    let neg = gcurve.negate(&generic);
    let expected = ProjPoint::affine(x.clone(), one.sub(&y));
    c.check(
        "cm.negation",
        neg.x == expected.x && neg.y == expected.y && neg.z == expected.z,
        "-(x, y) = (x, 1 - y)",
    )?;

    let table = phi_at(&zero, &w)?;
    for v in F3Vec::ALL {
        c.check(
            &format!("cm.table{v}"),
            *table.get(v) == table_point(v),
            format!("phi{v} = {}", table.get(v)),
        )?;
    }
    let points: Vec<ProjPoint<EisElem>> =
        F3Vec::ALL.iter().map(|v| table.get(*v).clone()).collect();
    let thrice = points
        .iter()
        .all(|p| cm_map(&w, &cm_map(&w, &cm_map(&w, p))) == *p);
    c.check("cm.order_three", thrice, "(w.)^3 = id on the nine points")?;
    for (name, unit) in [("w", &w), ("wb", &wb)] {
        let stable = points.iter().all(|p| points.contains(&cm_map(unit, p)));
        c.check(
            &format!("cm.preserves_subgroup.{name}"),
            stable,
            format!("{unit} permutes the nine points"),
        )?;
    }
    let mut bad = Vec::new();
    for p in &points {
        for q in &points {
            let lhs = cm_map(&w, &curve.add(p, q)?);
            let rhs = curve.add(&cm_map(&w, p), &cm_map(&w, q))?;
            if lhs != rhs {
                bad.push(format!("w.({p} + {q})"));
            }
        }
    }
    let detail = match bad.first() {
        None => format!("{} pairs", points.len() * points.len()),
        Some(b) => format!("{} failing pairs, first {b}", bad.len()),
    };
    c.check("cm.additive", bad.is_empty(), detail)?;
    Ok(CmReport { curve, checks: c.0 })
}

/// `F_4 = F_2[w]/(1 + w + w^2)`.
pub fn f4() -> FiniteField {
    FiniteField::of_order(4).expect("F4")
}

/// The reduction of the `v = 0` fiber to `F_4`: `y^2 + y = x^3`.
pub fn supersingular_curve() -> WeierstrassCurve<FinElem> {
    let k = f4();
    curve_c_at(&k.zero(), &k.generator()).expect("integral coefficients")
}

/// The coordinate `z = z(x)` near `O` in the chart `y = 1`, solving
/// `z = x^3 + a2 x^2 z + a4 x z^2 + a6 z^3 - a1 x z - a3 z^2`.
pub fn chart_z_series<R: Ring>(curve: &WeierstrassCurve<R>, n: usize) -> TruncSeries<R> {
    let ctx = curve.a1.zero_like();
    let x = TruncSeries::x(&ctx, n);
    let x2 = x.mul(&x);
    let x3 = x2.mul(&x);
    let mut z = TruncSeries::zero(&ctx, n);
    // Each pass fixes at least one more coefficient.
    for _ in 0..n {
        let z2 = z.mul(&z);
        let next = x3
            .add(&x2.mul(&z).scale(&curve.a2))
            .add(&x.mul(&z2).scale(&curve.a4))
            .add(&z2.mul(&z).scale(&curve.a6))
            .sub(&x.mul(&z).scale(&curve.a1))
            .sub(&z2.scale(&curve.a3));
        if next == z {
            break;
        }
        z = next;
    }
    z
}

/// `[-1](x) = -x / (1 + a1 x + a3 z(x))`.
pub fn chart_neg_series<R: Ring>(curve: &WeierstrassCurve<R>, n: usize) -> Result<TruncSeries<R>> {
    let ctx = curve.a1.zero_like();
    let x = TruncSeries::x(&ctx, n);
    let z = chart_z_series(curve, n);
    let den = TruncSeries::constant(ctx.one_like(), n)
        .add(&x.scale(&curve.a1))
        .add(&z.scale(&curve.a3));
    Ok(x.neg().mul(&den.invert_series()?))
}

/// The formal group law `F(x1, x2)` of `curve` in the parameter `x`, from
/// the chord through the points with parameters `x1` and `x2`.
pub fn chart_formal_group_law<R: Ring>(
    curve: &WeierstrassCurve<R>,
    n: usize,
) -> Result<MultiSeries<R>> {
    if n < 5 {
        return Err(Error::PrecisionTooLow(n));
    }
    let ctx = curve.a1.zero_like();
    let z = chart_z_series(curve, n);
    let zc = z.coeffs();
    // (z(x2) - z(x1)) / (x2 - x1) = sum_m z_m h_{m-1}(x1, x2)
    let mut terms = Vec::new();
    for d in 0..n - 1 {
        let c = &zc[d + 1];
        if c.is_zero() {
            continue;
        }
        for i in 0..=d {
            terms.push((vec![i as u32, (d - i) as u32], c.clone()));
        }
    }
    let lambda = MultiSeries::from_terms(&ctx, 2, n, terms);
    let x1 = MultiSeries::var(&ctx, 0, 2, n);
    let x2 = MultiSeries::var(&ctx, 1, 2, n);
    let z1 = MultiSeries::from_univariate(&z, 0, 2, n);
    let c = z1.sub(&lambda.mul(&x1));
    let k = |m: i64| MultiSeries::constant(ctx.from_i64_like(m), 2, n);
    let s = |a: &R| MultiSeries::constant(a.clone(), 2, n);
    let (a1, a2, a3, a4, a6) = (
        s(&curve.a1),
        s(&curve.a2),
        s(&curve.a3),
        s(&curve.a4),
        s(&curve.a6),
    );
    let l2 = lambda.mul(&lambda);
    let l3 = l2.mul(&lambda);
    // The line z = lambda x + c meets the chart in -K3 x^3 - K2 x^2 + ...
    let k3 = k(1)
        .add(&a2.mul(&lambda))
        .add(&a4.mul(&l2))
        .add(&a6.mul(&l3));
    let k2 = a2
        .mul(&c)
        .add(&k(2).mul(&a4).mul(&lambda).mul(&c))
        .add(&k(3).mul(&a6).mul(&l2).mul(&c))
        .sub(&a1.mul(&lambda))
        .sub(&a3.mul(&l2));
    let x3 = k2.mul(&k3.invert_series()?).neg().sub(&x1).sub(&x2);
    let z3 = lambda.mul(&x3).add(&c);
    let den = k(1).add(&a1.mul(&x3)).add(&a3.mul(&z3));
    Ok(x3.neg().mul(&den.invert_series()?))
}

/// `z(x)` on the `F_4` fiber, where `z - z^2 = x^3`.
pub fn z_series(n: usize) -> TruncSeries<FinElem> {
    chart_z_series(&supersingular_curve(), n)
}

/// `[-1](x) = x / (1 + z)` on the `F_4` fiber.
pub fn neg_series(n: usize) -> TruncSeries<FinElem> {
    chart_neg_series(&supersingular_curve(), n).expect("1 + z is a unit")
}

/// The formal group law of the `F_4` fiber.
pub fn formal_group_law(n: usize) -> Result<MultiSeries<FinElem>> {
    chart_formal_group_law(&supersingular_curve(), n)
}

/// The closed form `[2](x) = x^4 / (1 + z^4)`.
pub fn two_series(n: usize) -> TruncSeries<FinElem> {
    let k = f4();
    let z4 = z_series(n).pow(4);
    let den = TruncSeries::constant(k.one(), n).add(&z4);
    TruncSeries::monomial(k.one(), 4, n).mul(&den.invert_series().expect("unit"))
}

/// Height of a formal group over a field of characteristic `p` read from its
/// `[p]`-series: the leading exponent must be `p^h` with a unit coefficient.
pub fn height_from_p_series<R: Ring>(series: &TruncSeries<R>, p: u32) -> Result<u32> {
    let lead = series
        .valuation()
        .ok_or_else(|| Error::HeightMismatch("[p](x) vanishes to the working precision".into()))?;
    let mut h = 0;
    let mut pow = 1usize;
    while pow < lead {
        pow *= p as usize;
        h += 1;
    }
    if pow != lead || h == 0 {
        return Err(Error::HeightMismatch(format!(
            "leading exponent {lead} is not a positive power of {p}"
        )));
    }
    if !series.coeffs()[lead].is_unit() {
        return Err(Error::HeightMismatch(
            "leading coefficient is not a unit".into(),
        ));
    }
    Ok(h)
}

/// Height of the formal group of a curve over a field of characteristic 2,
/// from `F(x, x)` at precision `n`.
pub fn curve_height_char2(curve: &WeierstrassCurve<FinElem>, n: usize) -> Result<u32> {
    if curve.a1.field().characteristic() != 2 {
        return Err(Error::InvalidField("expected characteristic 2".into()));
    }
    let two = chart_formal_group_law(curve, n)?.diagonal();
    height_from_p_series(&two, 2)
}

/// The height of the `F_4` fiber: `[2](x)` has no `x` or `x^2` term and a
/// unit `x^4` term, and is a unit multiple of `x - [-1](x)`.
pub fn height_check() -> Result<u32> {
    let n = 8;
    let two = two_series(n);
    let c = two.coeffs();
    if !c[1].is_zero() || !c[2].is_zero() || !c[3].is_zero() {
        return Err(Error::HeightMismatch(format!("[2](x) = {two}")));
    }
    let diff = TruncSeries::x(&c[0], n).sub(&neg_series(n));
    if diff.valuation() != Some(4) {
        return Err(Error::HeightMismatch(format!("x - [-1](x) = {diff}")));
    }
    height_from_p_series(&two, 2)
}

/// The two series are equal as elements of `x^4 F_4[[x]]` up to a unit:
/// `[2](x) = u(x) (x - [-1](x))` with `u(0)` a unit.
pub fn two_is_unit_multiple_of_difference(n: usize) -> Result<TruncSeries<FinElem>> {
    let two = two_series(n);
    let one = two.coeffs()[0].one_like();
    let diff = TruncSeries::x(&one, n).sub(&neg_series(n));
    let shift =
        |s: &TruncSeries<FinElem>| TruncSeries::from_coeffs(&one, s.coeffs()[4..].to_vec(), n - 4);
    let u = shift(&two).mul(&shift(&diff).invert_series()?);
    if !u.coeffs()[0].is_unit() || shift(&diff).mul(&u) != shift(&two) {
        return Err(Error::HeightMismatch("no unit quotient".into()));
    }
    Ok(u)
}

/// Checks `F(F(x1, x2), x3) = F(x1, F(x2, x3))` in total degree `< n`.
pub fn check_associativity<R: Ring>(law: &MultiSeries<R>, n: usize) -> Result<()> {
    let n = n.min(law.precision());
    let ctx = law.constant_term().zero_like();
    let law = law.truncate(n);
    let embed = |a: usize, b: usize| {
        let terms = law
            .terms()
            .into_iter()
            .map(|(e, c)| {
                let mut ex = vec![0u32; 3];
                ex[a] = e[0];
                ex[b] = e[1];
                (ex, c)
            })
            .collect();
        MultiSeries::from_terms(&ctx, 3, n, terms)
    };
    let f12 = embed(0, 1);
    let f23 = embed(1, 2);
    let v = |i| MultiSeries::var(&ctx, i, 3, n);
    let lhs = law.substitute(&[f12, v(2)])?;
    let rhs = law.substitute(&[v(0), f23])?;
    if lhs != rhs {
        let diff = lhs.sub(&rhs);
        return Err(Error::Mismatch(format!(
            "fgl.associativity: {} differing terms",
            diff.terms().len()
        )));
    }
    Ok(())
}

/// Which degenerate fiber a report is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    Nodal,
    Cuspidal,
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Locus::Nodal => "nodal",
            Locus::Cuspidal => "cuspidal",
        })
    }
}

/// Outcome of a degeneration check.
#[derive(Clone, Debug)]
pub struct DegenerationReport {
    pub locus: Locus,
    pub checks: Vec<SubCheck>,
    /// For each component of the base, the vectors `a` with `phi(a)` in the
    /// smooth locus.
    pub smooth_subgroups: Vec<(String, Vec<F3Vec>)>,
}

/// `[9u(u-1)v^2 : 27u : (u-1)^3]`.
fn gm_point<R: Ring>(u: &R, nu: &R) -> ProjPoint<R> {
    let one = u.one_like();
    let um1 = u.sub(&one);
    ProjPoint::new(
        u.from_i64_like(9).mul(u).mul(&um1).mul(&nu.square()),
        u.from_i64_like(27).mul(u),
        um1.pow(3),
    )
}

/// `w^3 P(1/w)` for the nodal parametrization.
fn gm_point_inverse<R: Ring>(w: &R, nu: &R) -> ProjPoint<R> {
    let omw = w.one_like().sub(w);
    ProjPoint::new(
        w.from_i64_like(9).mul(&omw).mul(w).mul(&nu.square()),
        w.from_i64_like(27).mul(&w.square()),
        omw.pow(3),
    )
}

fn qint(n: i64) -> QOmega {
    QOmega::from_int(n)
}

/// The fiber over `v^3 = 1` after inverting 3: `y^2 + 3v xy = x^3`, with
/// smooth locus `G_m` and the level structure split into a subgroup landing
/// in the smooth locus and its complement landing on the node.
pub fn nodal_degeneration_check() -> Result<DegenerationReport> {
    let r = nodal_degeneration_report()?;
    first_failure(&r.checks)?;
    Ok(r)
}

/// As [`nodal_degeneration_check`], recording failed sub-checks.
pub fn nodal_degeneration_report() -> Result<DegenerationReport> {
    let mut c = Checks::default();
    let mut subgroups = Vec::new();
    let q0 = qint(0);
    let pieces = [
        ("v=1", qint(1)),
        ("v=w", QOmega::omega()),
        ("v=wb", QOmega::omega_bar()),
    ];
    for (label, nu) in &pieces {
        let curve = curve_c_at(nu, &QOmega::omega())?;
        let expected = WeierstrassCurve::new(
            qint(3).mul(nu),
            q0.clone(),
            q0.clone(),
            q0.clone(),
            q0.clone(),
        );
        c.check(
            &format!("nodal.{label}.equation"),
            curve == expected,
            format!("{curve}"),
        )?;
        // Symbolic in u.
        let pcurve = curve.map(|a| Ok(Poly::constant(a.clone())))?;
        let u = Poly::x(&q0);
        let pnu = Poly::constant(nu.clone());
        let residual = pcurve.eval(&gm_point(&u, &pnu));
        c.check(
            &format!("nodal.{label}.parametrization"),
            residual.is_zero(),
            "F(P(u)) = 0 in Q(w)[u]",
        )?;
        let identity = gm_point(&qint(1), nu);
        c.check(
            &format!("nodal.{label}.identity"),
            identity == curve.infinity(),
            format!("P(1) = {identity}"),
        )?;
        let node = ProjPoint::affine(q0.clone(), q0.clone());
        let singular = curve.is_on_curve(&node) && curve.gradient(&node).iter().all(Ring::is_zero);
        c.check(
            &format!("nodal.{label}.node"),
            singular,
            "all partials vanish at [0:0:1]",
        )?;
        let samples = [
            qint(-1),
            qint(2),
            qint(3),
            QOmega::omega(),
            qint(1).add(&QOmega::omega_bar()),
        ];
        let mut smooth = curve.is_smooth_point(&curve.infinity());
        for s in samples.iter().filter(|s| !s.is_zero()) {
            let p = gm_point(s, nu);
            smooth &= curve.is_smooth_point(&p) && p != node;
        }
        c.check(
            &format!("nodal.{label}.smooth_samples"),
            smooth,
            format!("{} sample points are smooth", samples.len() + 1),
        )?;
        // Multiplicativity with u3 = 1/(u1 u2), symbolic in Q(w)[u1][u2].
        let inner = Poly::zero(&q0);
        let u1 = Poly::constant(Poly::x(&q0));
        let u2 = Poly::x(&inner);
        let bnu = Poly::constant(Poly::constant(nu.clone()));
        let det = collinear_det(
            &gm_point(&u1, &bnu),
            &gm_point(&u2, &bnu),
            &gm_point_inverse(&u1.mul(&u2), &bnu),
        );
        c.check(
            &format!("nodal.{label}.multiplicative"),
            det.is_zero(),
            "P(u1), P(u2), P(1/(u1 u2)) are collinear",
        )?;
        let table = phi_at(nu, &QOmega::omega())?;
        let name = format!("nodal.{label}.level_structure");
        match split_level_structure(&curve, &table, &node, label) {
            Ok(a) => {
                let shown: Vec<String> = a.iter().map(F3Vec::to_string).collect();
                c.check(&name, true, format!("A = {{{}}}", shown.join(", ")))?;
                subgroups.push((label.to_string(), a));
            }
            Err(e) => c.check(&name, false, e.to_string())?,
        }
    }
    let expected: Vec<F3Vec> = F3Vec::ALL.iter().copied().filter(|v| v.k == 0).collect();
    let v1 = subgroups.iter().find(|(l, _)| l == "v=1").map(|(_, a)| a);
    c.check(
        "nodal.v=1.subgroup",
        v1 == Some(&expected),
        "A = 0 x F_3 on the piece v = 1",
    )?;
    Ok(DegenerationReport {
        locus: Locus::Nodal,
        checks: c.0,
        smooth_subgroups: subgroups,
    })
}

/// Returns the vectors sent to the smooth locus after checking that they
/// form a subgroup of order three on which `phi` is additive, and that the
/// rest go to the node.
fn split_level_structure(
    curve: &WeierstrassCurve<QOmega>,
    table: &LevelStructure<QOmega>,
    node: &ProjPoint<QOmega>,
    label: &str,
) -> Result<Vec<F3Vec>> {
    let mut smooth = Vec::new();
    for (v, p) in table.iter() {
        if !curve.is_on_curve(p) {
            return Err(Error::Mismatch(format!(
                "nodal.{label}.phi{v}: not on the curve"
            )));
        }
        if p == node {
            continue;
        }
        if !curve.is_smooth_point(p) {
            return Err(Error::Mismatch(format!(
                "nodal.{label}.phi{v}: singular but not the node"
            )));
        }
        smooth.push(v);
    }
    if smooth.len() != 3
        || smooth
            .iter()
            .any(|a| smooth.iter().any(|b| !smooth.contains(&(*a + *b))))
    {
        return Err(Error::Mismatch(format!(
            "nodal.{label}.subgroup: smooth set {smooth:?} is not a subgroup of order 3"
        )));
    }
    for a in &smooth {
        for b in &smooth {
            let sum = curve.add(table.get(*a), table.get(*b))?;
            if sum != *table.get(*a + *b) {
                return Err(Error::Mismatch(format!(
                    "nodal.{label}.homomorphism: phi{a} + phi{b}"
                )));
            }
        }
    }
    Ok(smooth)
}

/// `[t : 1 : t^3]`.
fn ga_point<R: Ring>(t: &R) -> ProjPoint<R> {
    ProjPoint::new(t.clone(), t.one_like(), t.pow(3))
}

/// The fiber over `3 = v^3 - 1 = 0`: the cuspidal cubic `y^2 = x^3` with
/// smooth locus `G_a`, and the level structure landing infinitesimally
/// close to the cusp.
pub fn cuspidal_degeneration_check() -> Result<DegenerationReport> {
    let r = cuspidal_degeneration_report()?;
    first_failure(&r.checks)?;
    Ok(r)
}

/// As [`cuspidal_degeneration_check`], recording failed sub-checks.
pub fn cuspidal_degeneration_report() -> Result<DegenerationReport> {
    let mut c = Checks::default();
    let f3 = FiniteField::prime(3)?;
    let (zero, one) = (f3.zero(), f3.one());
    let curve = curve_c_at(&one, &one)?;
    c.check(
        "cuspidal.equation",
        curve.coefficients().iter().all(|a| a.is_zero()),
        format!("{curve}"),
    )?;
    let pcurve = curve.map(|a| Ok(Poly::constant(a.clone())))?;
    let t = Poly::x(&zero);
    c.check(
        "cuspidal.parametrization",
        pcurve.eval(&ga_point(&t)).is_zero(),
        "F(t, 1, t^3) = 0 in F_3[t]",
    )?;
    c.check(
        "cuspidal.identity",
        ga_point(&zero) == curve.infinity(),
        "P(0) = [0:1:0]",
    )?;
    let cusp = ProjPoint::affine(zero.clone(), zero.clone());
    c.check(
        "cuspidal.cusp",
        curve.gradient(&cusp).iter().all(Ring::is_zero),
        "all partials vanish at [0:0:1]",
    )?;
    let symmetric = collinear_det(
        &ga_point(&t),
        &ga_point(&t.neg()),
        &ga_point(&Poly::zero(&zero)),
    );
    c.check(
        "cuspidal.symmetric_triple",
        symmetric.is_zero(),
        "P(t), P(-t), P(0)",
    )?;
    let t1 = Poly::constant(Poly::x(&zero));
    let t2 = Poly::x(&Poly::zero(&zero));
    let det = collinear_det(
        &ga_point(&t1),
        &ga_point(&t2),
        &ga_point(&t1.add(&t2).neg()),
    );
    c.check(
        "cuspidal.additive",
        det.is_zero(),
        "P(t1), P(t2), P(-t1-t2) are collinear",
    )?;

    let q = QuotRing::cuspidal_base();
    let (w, v) = (q.var(0), q.var(1));
    let rel = q.from_int(1).add(&w).add(&w.square());
    c.check("cuspidal.base_relation", rel.is_zero(), "1 + w + w^2 = 0")?;
    let qcurve = curve_c_at(&v, &w)?;
    c.check(
        "cuspidal.base_equation",
        qcurve.coefficients().iter().all(|a| a.is_zero()),
        "3v = v^3 - 1 = 0 in the base",
    )?;
    let table = phi_at(&v, &w)?;
    for a in F3Vec::nonzero() {
        let (x, y) = table.get(a).to_affine()?;
        let nil = x.nilpotency_index().zip(y.nilpotency_index());
        c.check(
            &format!("cuspidal.nilpotent{a}"),
            nil.is_some(),
            match nil {
                Some((nx, ny)) => format!("x^{nx} = y^{ny} = 0"),
                None => format!("phi{a} = ({x}, {y})"),
            },
        )?;
    }
    Ok(DegenerationReport {
        locus: Locus::Cuspidal,
        checks: c.0,
        smooth_subgroups: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn support(s: &TruncSeries<FinElem>) -> Vec<usize> {
        s.support()
    }

    #[test]
    fn cm_fiber() {
        let r = cm_fiber_check().unwrap();
        assert_eq!(r.curve.discriminant(), eis(-27));
        assert!(r.checks.iter().any(|c| c.name == "cm.additive"));
        assert!(phi_at(&eis(0), &EisElem::omega())
            .unwrap()
            .get(F3Vec::zero())
            .is_infinity());
    }

    #[test]
    fn cm_table_entry_one_one() {
        let p = table_point(F3Vec::new(1, 1));
        let wb = EisElem::omega_bar().neg();
        assert_eq!(p, ProjPoint::affine(wb.clone(), wb));
    }

    #[test]
    fn z_series_support() {
        assert_eq!(support(&z_series(50)), vec![3, 6, 12, 24, 48]);
        assert_eq!(support(&z_series(4)), vec![3]);
        let z = z_series(50);
        let x3 = TruncSeries::monomial(f4().one(), 3, 50);
        assert_eq!(z.sub(&z.mul(&z)), x3);
    }

    #[test]
    fn neg_series_leading_terms() {
        let n = neg_series(50);
        let c = n.coeffs();
        assert!(c[1].is_one() && c[4].is_one());
        assert!(c[0].is_zero() && c[2].is_zero() && c[3].is_zero());
    }

    #[test]
    fn two_series_support() {
        assert_eq!(support(&two_series(50)), vec![4, 16, 40]);
        assert_eq!(height_check().unwrap(), 2);
        let u = two_is_unit_multiple_of_difference(50).unwrap();
        assert!(u.coeffs()[0].is_unit());
    }

    #[test]
    fn formal_group_axioms() {
        let n = 50;
        let law = formal_group_law(n).unwrap();
        let k = f4();
        let x = TruncSeries::x(&k.zero(), n);
        let zero = TruncSeries::zero(&k.zero(), n);
        let at = |a: &TruncSeries<FinElem>, b: &TruncSeries<FinElem>| {
            law.substitute(&[
                MultiSeries::from_univariate(a, 0, 1, n),
                MultiSeries::from_univariate(b, 0, 1, n),
            ])
            .unwrap()
            .diagonal()
        };
        assert_eq!(at(&x, &zero), x);
        assert_eq!(at(&zero, &x), x);
        assert!(at(&x, &neg_series(n)).is_zero());
        assert_eq!(law.swap_vars(0, 1), law);
        assert_eq!(law.diagonal(), two_series(n));
        check_associativity(&law, 20).unwrap();
        assert!(matches!(
            formal_group_law(4),
            Err(Error::PrecisionTooLow(4))
        ));
    }

    #[test]
    fn perturbed_law_is_not_associative() {
        let law = formal_group_law(12).unwrap();
        let k = f4();
        let bump = MultiSeries::from_terms(&k.zero(), 2, 12, vec![(vec![1, 2], k.one())]);
        let bad = law.add(&bump).add(&bump.swap_vars(0, 1));
        assert!(check_associativity(&bad, 12).is_err());
    }

    #[test]
    fn ordinary_curve_has_height_one() {
        let f2 = FiniteField::prime(2).unwrap();
        let (o, i) = (f2.zero(), f2.one());
        let e = WeierstrassCurve::new(i.clone(), o.clone(), o.clone(), o, i);
        assert_eq!(curve_height_char2(&e, 12).unwrap(), 1);
        assert_eq!(curve_height_char2(&supersingular_curve(), 12).unwrap(), 2);
    }

    #[test]
    fn zero_series_has_no_height() {
        let zero = TruncSeries::zero(&f4().zero(), 10);
        assert!(matches!(
            height_from_p_series(&zero, 2),
            Err(Error::HeightMismatch(_))
        ));
    }

    #[test]
    fn nodal() {
        let r = nodal_degeneration_check().unwrap();
        assert_eq!(r.smooth_subgroups.len(), 3);
        let nu = qint(1);
        assert_eq!(
            gm_point(&nu, &nu),
            ProjPoint::new(qint(0), qint(27), qint(0))
        );
        let t = phi_at(&nu, &QOmega::omega()).unwrap();
        assert_eq!(
            *t.get(F3Vec::new(1, 0)),
            ProjPoint::affine(qint(0), qint(0))
        );
    }

    #[test]
    fn cuspidal() {
        let r = cuspidal_degeneration_check().unwrap();
        assert!(r.checks.iter().any(|c| c.name == "cuspidal.nilpotent(0,1)"));
        let q = QuotRing::cuspidal_base();
        let (w, v) = (q.var(0), q.var(1));
        let x = phi_at(&v, &w)
            .unwrap()
            .get(F3Vec::new(0, 1))
            .to_affine()
            .unwrap()
            .0;
        assert!(x.square().is_zero());
    }
}
