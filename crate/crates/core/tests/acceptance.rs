//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any failure.

use std::collections::HashMap;
use std::process::ExitCode;

use level3_core::base_scheme::{enumerate_aut_s, pi_perm, BaseAut, OmegaPerm, OmegaPoint};
use level3_core::curve_aut::{
    diagram_commutes, enumerate_aut_cs, gamma, generators, kernel, CurveAut, Gl2F3,
};
use level3_core::exact_rings::{EisElem, FinElem, FiniteField, MultiSeries, Ring, TruncSeries};
use level3_core::fibers::{self, SubCheck};
use level3_core::landweber::{self, count_points, DEFAULT_PRIMES};
use level3_core::level3::{
    curve_c, curve_c_at, invariant_formulas, mu_phi, phi, verify_inflection, F3Vec,
};
use level3_core::pairing_classify::{
    canonical_input, classify, classify_roundtrip, e3_basis, verify_divisors,
};
use level3_core::weierstrass::{collinear_det, distinctness_certificate, WeierstrassCurve};
use level3_core::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(err: Error) -> String {
    format!("{err:?}")
}

fn all_pass(checks: &[SubCheck], wanted: &[&str]) -> Result<usize, String> {
    let mut n = 0;
    for c in checks {
        if wanted.iter().any(|w| c.name.contains(w)) {
            ensure(c.passed, format!("{}: {}", c.name, c.detail))?;
            n += 1;
        }
    }
    ensure(n > 0, format!("no sub-checks matched {wanted:?}"))?;
    Ok(n)
}

fn invariants() -> Outcome {
    let inv = curve_c().invariants();
    let [c4, c6, delta, j] = invariant_formulas();
    ensure(inv.c4 == c4, "c4")?;
    ensure(inv.c6 == c6, "c6")?;
    ensure(inv.delta == delta, "delta")?;
    ensure(inv.j == Some(j), "j")?;
    Ok("c4, c6, delta, j match their closed forms".into())
}

fn aut_s() -> Outcome {
    use OmegaPoint::*;
    let all = enumerate_aut_s().map_err(e)?;
    ensure(
        all.len() == 24,
        format!("closure has {} elements", all.len()),
    )?;
    let table: [&[&[OmegaPoint]]; 3] = [
        &[&[Om, OmBar]],
        &[&[One, Om, OmBar]],
        &[&[One, Infinity], &[Om, OmBar]],
    ];
    for (g, cycles) in BaseAut::generators().iter().zip(table) {
        ensure(
            pi_perm(g).map_err(e)? == OmegaPerm::from_cycles(cycles).map_err(e)?,
            format!("pi({g})"),
        )?;
    }
    let perms = all
        .iter()
        .map(pi_perm)
        .collect::<Result<Vec<_>, _>>()
        .map_err(e)?;
    let mut sorted = perms.clone();
    sorted.sort();
    ensure(sorted == OmegaPerm::all(), "pi is not onto Perm(Omega)")?;
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            ensure(
                pi_perm(&a.compose(b).map_err(e)?).map_err(e)? == perms[i].compose(&perms[j]),
                "pi is not a homomorphism",
            )?;
        }
    }
    Ok("24 elements, pi an isomorphism onto Perm(Omega), generator table exact".into())
}

fn level_structure() -> Outcome {
    let c = curve_c();
    let pts: Vec<_> = F3Vec::ALL.iter().map(|v| phi(*v)).collect();
    for v in F3Vec::nonzero() {
        verify_inflection(v).map_err(e)?;
    }
    let mut pairs = 0;
    for i in 0..9 {
        for j in i + 1..9 {
            distinctness_certificate(&pts[i], &pts[j]).map_err(e)?;
            pairs += 1;
        }
    }
    let mut triples = 0;
    for a in F3Vec::ALL {
        for b in F3Vec::ALL {
            let cv = -(a + b);
            if a.index() < b.index() && b.index() < cv.index() {
                ensure(
                    collinear_det(&phi(a), &phi(b), &phi(cv)).is_zero(),
                    format!("{a} {b} {cv}"),
                )?;
                triples += 1;
            }
            ensure(
                c.add(&phi(a), &phi(b)).map_err(e)? == phi(a + b),
                format!("{a} + {b}"),
            )?;
        }
    }
    ensure(pairs == 36 && triples == 12, "wrong pair or triple count")?;
    Ok("8 inflections, 36 certificates, 12 collinear triples, 81 sums".into())
}

fn mu_table() -> Outcome {
    let c = curve_c();
    for v in F3Vec::nonzero() {
        ensure(
            c.slope_at(&phi(v)).map_err(e)? == mu_phi(v).map_err(e)?,
            format!("mu{v}"),
        )?;
    }
    Ok("8 slopes match".into())
}

fn aut_cs() -> Outcome {
    let gens = generators();
    ensure(
        gens.iter().all(CurveAut::is_valid),
        "a generator fails the transformation equations",
    )?;
    ensure(
        gens[2].compose(&gens[2]).map_err(e)? == CurveAut::minus_one(),
        "(beta2, A2)^2",
    )?;
    let all = enumerate_aut_cs().map_err(e)?;
    ensure(
        all.len() == 48,
        format!("closure has {} elements", all.len()),
    )?;
    let ker = kernel(&all);
    ensure(
        ker.len() == 2
            && ker.contains(&CurveAut::identity())
            && ker.contains(&CurveAut::minus_one()),
        "kernel",
    )?;
    Ok("generators valid, (beta2, A2)^2 = -1, 48 elements, kernel {1, -1}".into())
}

fn gamma_criterion() -> Outcome {
    let expected = [[[1, 0], [0, -1]], [[1, 1], [0, 1]], [[0, -1], [1, 0]]];
    for (g, m) in generators().iter().zip(expected) {
        ensure(gamma(g).map_err(e)?.rows() == m, format!("gamma({g})"))?;
    }
    let all = enumerate_aut_cs().map_err(e)?;
    let g = all
        .iter()
        .map(gamma)
        .collect::<Result<Vec<_>, _>>()
        .map_err(e)?;
    let index: HashMap<&CurveAut, usize> = all.iter().enumerate().map(|(i, a)| (a, i)).collect();
    for i in 0..all.len() {
        for j in 0..all.len() {
            let k = index[&all[i].compose(&all[j]).map_err(e)?];
            ensure(g[k] == g[i].mul(&g[j]), "gamma is not a homomorphism")?;
        }
        ensure(
            diagram_commutes(&all[i], &g[i]).map_err(e)?,
            format!("diagram at {}", all[i]),
        )?;
    }
    let mut sorted = g;
    sorted.sort();
    ensure(sorted == Gl2F3::all(), "gamma is not onto GL2(F3)")?;
    Ok("3 matrices, 2304 products, bijective, diagram commutes".into())
}

fn cm_fiber() -> Outcome {
    let inv = curve_c_at(&EisElem::from_int(0), &EisElem::omega())
        .map_err(e)?
        .invariants();
    ensure(inv.c6 == EisElem::from_int(-216), "c6")?;
    ensure(inv.delta == EisElem::from_int(-27), "delta")?;
    ensure(inv.j == Some(EisElem::from_int(0)), "j")?;
    let report = fibers::cm_fiber_check().map_err(e)?;
    let n = all_pass(&report.checks, &["cm."])?;
    all_pass(&report.checks, &["additive"])?;
    ensure(all_pass(&report.checks, &["table"])? == 9, "table size")?;
    Ok(format!("invariants (0, -216, -27, 0) and {n} sub-checks"))
}

fn formal_group() -> Outcome {
    let n = 50;
    let support = |f: fn(u32) -> usize| (0..).map(f).take_while(|e| *e < n).collect::<Vec<_>>();
    ensure(
        fibers::z_series(n).support() == support(|k| 3 << k),
        "z support",
    )?;
    let neg = fibers::neg_series(n);
    ensure(neg.truncate(5).support() == [1, 4], "[-1] leading terms")?;
    let two = fibers::two_series(n);
    ensure(two.support() == support(|k| (12 << k) - 8), "[2] support")?;
    let law = fibers::formal_group_law(n).map_err(e)?;
    ensure(
        law.diagonal() == two,
        "F(x, x) differs from the closed form of [2]",
    )?;
    fibers::check_associativity(&law, 20).map_err(e)?;
    let x = TruncSeries::x(&fibers::f4().zero(), n);
    let inv = law
        .substitute(&[
            MultiSeries::from_univariate(&x, 0, 1, n),
            MultiSeries::from_univariate(&neg, 0, 1, n),
        ])
        .map_err(e)?;
    ensure(inv.is_zero(), "F(x, [-1](x)) != 0")?;
    ensure(fibers::height_check().map_err(e)? == 2, "height")?;
    Ok("supports, F(x, x) = [2](x) to x^50, associative to degree 20, height 2".into())
}

fn degenerations() -> Outcome {
    let nodal = fibers::nodal_degeneration_check().map_err(e)?;
    all_pass(&nodal.checks, &["parametrization"])?;
    all_pass(&nodal.checks, &["multiplicative"])?;
    let cusp = fibers::cuspidal_degeneration_check().map_err(e)?;
    all_pass(&cusp.checks, &["parametrization"])?;
    all_pass(&cusp.checks, &["additive"])?;
    ensure(
        all_pass(&cusp.checks, &["nilpotent"])? == 8,
        "nilpotence count",
    )?;
    Ok(format!(
        "{} nodal and {} cuspidal sub-checks pass",
        nodal.checks.len(),
        cusp.checks.len()
    ))
}

fn weil() -> Outcome {
    let (g, h) = verify_divisors().map_err(e)?;
    ensure(g.holds() && h.holds(), "certificate")?;
    ensure(e3_basis().map_err(e)? == EisElem::omega(), "e3 != w")?;
    Ok("div(g), div(h) certified and e3 = w".into())
}

fn naive_count(curve: &WeierstrassCurve<FinElem>) -> u64 {
    let k = curve.a1.field().clone();
    let mut n = 1;
    for x in k.elements() {
        for y in k.elements() {
            if curve.eval_affine(&x, &y).is_zero() {
                n += 1;
            }
        }
    }
    n
}

fn landweber_criterion() -> Outcome {
    let mut rows = Vec::new();
    for (p, w) in landweber::ordinary_witnesses(&DEFAULT_PRIMES) {
        let w = w.map_err(e)?;
        ensure(w.ordinary(), format!("p = {p} witness is not ordinary"))?;
        let curve = curve_c_at(&w.nu0, &w.nu0.zero_like()).map_err(e)?;
        ensure(
            naive_count(&curve) == w.count,
            format!("p = {p} brute force disagrees"),
        )?;
        rows.push(format!("p={p}: F_{} v={} #={}", w.q, w.nu0, w.count));
    }
    let ss = landweber::supersingular_confirmation().map_err(e)?;
    let f4 = FiniteField::of_order(4).map_err(e)?;
    let c = count_points(4, &f4.zero()).map_err(e)?;
    ensure((c.count, c.trace, ss.height) == (9, -4, 2), "F_4 fiber")?;
    ensure(
        naive_count(&curve_c_at(&f4.zero(), &f4.zero()).map_err(e)?) == 9,
        "F_4 brute force",
    )?;
    Ok(format!(
        "{}; F_4 v=0: 9 points, trace -4, height 2",
        rows.join(", ")
    ))
}

fn classification() -> Outcome {
    let mut total = 0;
    for q in [7, 13, 25] {
        let r = classify_roundtrip(q, 50, 3).map_err(e)?;
        ensure(
            r.recovered == r.trials,
            format!("F_{q}: {:?}", r.first_failure),
        )?;
        total += r.recovered;
    }
    let k = FiniteField::prime(7).map_err(e)?;
    let mut input = canonical_input(&k.from_int(3), &k.from_int(2)).map_err(e)?;
    input.q = input.curve.negate(&input.p);
    ensure(
        matches!(classify(&input), Err(Error::SlopeDifferenceNotInvertible)),
        "dependent points were not rejected",
    )?;
    Ok(format!("{total} round trips recovered, Q = -P rejected"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("invariants", invariants),
        ("Aut(S)", aut_s),
        ("level structure", level_structure),
        ("slope table", mu_table),
        ("Aut(C, S)", aut_cs),
        ("gamma", gamma_criterion),
        ("CM fiber", cm_fiber),
        ("formal group", formal_group),
        ("degenerations", degenerations),
        ("Weil pairing", weil),
        ("ordinary witnesses", landweber_criterion),
        ("classification round trip", classification),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
