//! The verification suites behind `level3 verify`.

use std::collections::HashMap;
use std::sync::OnceLock;

use level3_core::base_scheme::{enumerate_aut_s, pi_perm, BaseAut, OmegaPerm, OmegaPoint};
use level3_core::curve_aut::{
    diagram_commutes, enumerate_aut_cs, gamma, generators, kernel, CurveAut, Gl2F3,
};
use level3_core::exact_rings::{
    BElem, CubeRoots, EisElem, FiniteField, MultiSeries, Ring, TruncSeries,
};
use level3_core::fibers::{self, SubCheck};
use level3_core::landweber::{self, count_points, translate_parameter};
use level3_core::level3::{
    curve_c, curve_c_at, invariant_formulas, mu_phi, phi, phi_compact, verify_inflection, F3Vec,
};
use level3_core::pairing_classify::{
    canonical_input, classify, classify_roundtrip, e3_basis, verify_divisors, verify_divisors_for,
    weil_functions,
};
use level3_core::weierstrass::{collinear_det, distinctness_certificate, ProjPoint};
use level3_core::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{CheckReport, Report, Status};

/// Every suite, in the order `verify all` lists them.
pub const SUITES: [&str; 11] = [
    "invariants",
    "aut-s",
    "level3",
    "aut-cs",
    "gamma",
    "weil",
    "cm-fiber",
    "formal-group",
    "degeneration",
    "landweber",
    "classify-roundtrip",
];

/// Knobs forwarded to individual suites.
#[derive(Clone, Debug)]
pub struct Options {
    pub precision: usize,
    pub primes: Vec<u32>,
    pub roundtrip_trials: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            precision: 50,
            primes: landweber::DEFAULT_PRIMES.to_vec(),
            roundtrip_trials: 50,
            seed: 3,
        }
    }
}

/// What a single check found.
pub struct Outcome {
    passed: bool,
    expected: Option<Value>,
    actual: Option<Value>,
    details: Value,
}

impl Outcome {
    fn new(passed: bool, details: Value) -> Self {
        Self {
            passed,
            expected: None,
            actual: None,
            details,
        }
    }

    fn compare<T: Serialize + PartialEq>(expected: T, actual: T) -> Self {
        Self {
            passed: expected == actual,
            expected: Some(json!(expected)),
            actual: Some(json!(actual)),
            details: Value::Null,
        }
    }

    fn with(mut self, details: Value) -> Self {
        self.details = details;
        self
    }
}

#[derive(Default)]
struct Suite(Vec<CheckReport>);

impl Suite {
    fn check(&mut self, id: &str, claim: &str, f: impl FnOnce() -> Result<Outcome>) {
        let report = match f() {
            Ok(o) => CheckReport {
                check_id: id.to_string(),
                paper_anchor: claim.to_string(),
                status: if o.passed { Status::Pass } else { Status::Fail },
                expected: o.expected,
                actual: o.actual,
                details: o.details,
            },
            Err(e) => CheckReport {
                check_id: id.to_string(),
                paper_anchor: claim.to_string(),
                status: Status::Error,
                expected: None,
                actual: None,
                details: json!({ "error": error_name(&e), "message": e.to_string() }),
            },
        };
        self.0.push(report);
    }

    fn sub_checks(&mut self, prefix: &str, claim: &str, r: Result<Vec<SubCheck>>) {
        match r {
            Ok(checks) => {
                for c in checks {
                    let name = c.name.split_once('.').map_or(c.name.as_str(), |(_, n)| n);
                    self.check(&format!("{prefix}.{name}"), claim, || {
                        Ok(Outcome::new(c.passed, json!(c.detail)))
                    });
                }
            }
            Err(e) => self.check(&format!("{prefix}.computation"), claim, || Err(e)),
        }
    }
}

/// The variant name of an error, e.g. `SlopeDifferenceNotInvertible`.
pub fn error_name(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

/// Runs one suite by name; `None` if the name is unknown.
pub fn run_suite(name: &str, opts: &Options) -> Option<Vec<CheckReport>> {
    let mut s = Suite::default();
    match name {
        "invariants" => invariants(&mut s),
        "aut-s" => aut_s(&mut s),
        "level3" => level3(&mut s),
        "aut-cs" => aut_cs(&mut s),
        "gamma" => gamma_suite(&mut s),
        "weil" => weil(&mut s),
        "cm-fiber" => s.sub_checks(
            "cm_fiber",
            "the v = 0 fiber has CM by Z[w] and the tabulated level structure",
            fibers::cm_fiber_report().map(|r| r.checks),
        ),
        "formal-group" => formal_group(&mut s, opts.precision),
        "degeneration" => {
            s.sub_checks(
                "degeneration.nodal",
                "over v^3 = 1 the smooth locus is G_m",
                fibers::nodal_degeneration_report().map(|r| r.checks),
            );
            s.sub_checks(
                "degeneration.cuspidal",
                "over 3 = v^3 - 1 = 0 the curve is cuspidal with smooth locus G_a",
                fibers::cuspidal_degeneration_report().map(|r| r.checks),
            );
        }
        "landweber" => landweber_suite(&mut s, &opts.primes),
        "classify-roundtrip" => classify_suite(&mut s, opts),
        _ => return None,
    }
    Some(s.0)
}

fn invariants(s: &mut Suite) {
    let inv = curve_c().invariants();
    let [c4, c6, delta, j] = invariant_formulas();
    let claims = [
        ("invariants.c4", "c4 = 9v(v^3+8)", c4, Some(inv.c4.clone())),
        (
            "invariants.c6",
            "c6 = 27(v^6-20v^3-8)",
            c6,
            Some(inv.c6.clone()),
        ),
        (
            "invariants.delta",
            "delta = 27(v^3-1)^3",
            delta,
            Some(inv.delta.clone()),
        ),
        (
            "invariants.j",
            "j (v^3-1)^3 = 27 v^3 (v^3+8)^3",
            j,
            inv.j.clone(),
        ),
    ];
    for (id, claim, want, got) in claims {
        s.check(id, claim, || {
            let got = got.ok_or(Error::NonUnitDiscriminant)?;
            Ok(Outcome::new(want == got, Value::Null)
                .with(json!({ "expected": want.to_string(), "actual": got.to_string() })))
        });
    }
    s.check(
        "invariants.at_nu_zero",
        "at v = 0: (c4, c6, delta, j) = (0, -216, -27, 0)",
        || {
            let z = EisElem::from_int(0);
            let inv = curve_c_at(&z, &EisElem::omega())?.invariants();
            let j = inv.j.ok_or(Error::NonUnitDiscriminant)?;
            let show = |e: &EisElem| e.to_string();
            Ok(Outcome::compare(
                vec!["0".to_string(), "-216".into(), "-27".into(), "0".into()],
                vec![show(&inv.c4), show(&inv.c6), show(&inv.delta), show(&j)],
            ))
        },
    );
}

fn aut_s(s: &mut Suite) {
    use OmegaPoint::*;
    let expected: [(&str, &[&[OmegaPoint]]); 3] = [
        ("beta0", &[&[Om, OmBar]]),
        ("beta1", &[&[One, Om, OmBar]]),
        ("beta2", &[&[One, Infinity], &[Om, OmBar]]),
    ];
    for ((name, cycles), beta) in expected.iter().zip(BaseAut::generators()) {
        s.check(
            &format!("aut_s.generator.{name}"),
            "the generators act on {1, w, wb, inf} by the tabulated permutations",
            || {
                let want = OmegaPerm::from_cycles(cycles)?;
                Ok(Outcome::compare(
                    want.to_string(),
                    pi_perm(&beta)?.to_string(),
                ))
            },
        );
    }
    let all = enumerate_aut_s();
    s.check("aut_s.closure", "Aut(S) has 24 elements", || {
        Ok(Outcome::compare(24, all.clone()?.len()))
    });
    s.check(
        "aut_s.valid",
        "every element is an automorphism of B",
        || {
            Ok(Outcome::new(
                all.clone()?.iter().all(BaseAut::is_valid),
                Value::Null,
            ))
        },
    );
    s.check(
        "aut_s.pi_bijective",
        "pi: Aut(S) -> Perm(Omega) is bijective",
        || {
            let mut perms = all
                .clone()?
                .iter()
                .map(pi_perm)
                .collect::<Result<Vec<_>>>()?;
            perms.sort();
            Ok(Outcome::new(
                perms == OmegaPerm::all(),
                json!({ "images": perms.len() }),
            ))
        },
    );
    s.check(
        "aut_s.pi_homomorphism",
        "pi is a group homomorphism",
        || {
            let all = all.clone()?;
            let perms = all.iter().map(pi_perm).collect::<Result<Vec<_>>>()?;
            let bad = (0..all.len())
                .into_par_iter()
                .map(|i| -> Result<usize> {
                    let mut bad = 0;
                    for j in 0..all.len() {
                        let c = all[i].compose(&all[j])?;
                        if pi_perm(&c)? != perms[i].compose(&perms[j]) {
                            bad += 1;
                        }
                    }
                    Ok(bad)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum::<usize>();
            Ok(Outcome::new(
                bad == 0,
                json!({ "pairs": all.len() * all.len(), "failures": bad }),
            ))
        },
    );
}

fn level3(s: &mut Suite) {
    let c = curve_c();
    let pts: Vec<ProjPoint<BElem>> = F3Vec::ALL.iter().map(|v| phi(*v)).collect();
    s.check("level3.on_curve", "the nine points lie on C", || {
        Ok(Outcome::compare(
            9,
            pts.iter().filter(|p| c.is_on_curve(p)).count(),
        ))
    });
    s.check(
        "level3.compact_formula",
        "the compact formula agrees with the table",
        || {
            let ok = F3Vec::ALL
                .iter()
                .filter_map(|v| phi_compact(*v).map(|p| (p, phi(*v))))
                .all(|(p, q)| p.x == q.x && p.y == q.y && p.z == q.z);
            Ok(Outcome::new(ok, Value::Null))
        },
    );
    s.check(
        "level3.inflection",
        "nonzero phi(a) are inflection points of order 3",
        || {
            let mut n = 0;
            for v in F3Vec::nonzero() {
                verify_inflection(v)?;
                n += 1;
            }
            Ok(Outcome::compare(8, n))
        },
    );
    s.check(
        "level3.distinct",
        "the nine sections are everywhere distinct",
        || {
            let mut n = 0;
            for i in 0..9 {
                for j in i + 1..9 {
                    distinctness_certificate(&pts[i], &pts[j])?;
                    n += 1;
                }
            }
            Ok(Outcome::compare(36, n))
        },
    );
    s.check("level3.nowhere_zero", "nonzero phi(a) never meet O", || {
        let o = c.infinity();
        let mut n = 0;
        for p in &pts[1..] {
            distinctness_certificate(p, &o)?;
            n += 1;
        }
        Ok(Outcome::compare(8, n))
    });
    s.check(
        "level3.collinear",
        "a + b + c = 0 implies phi(a), phi(b), phi(c) collinear",
        || {
            let mut n = 0;
            let mut bad = Vec::new();
            for (i, a) in F3Vec::ALL.iter().enumerate() {
                for (j, bv) in F3Vec::ALL.iter().enumerate().skip(i + 1) {
                    let cv = -(*a + *bv);
                    let k = cv.index();
                    if k <= j {
                        continue;
                    }
                    n += 1;
                    if !collinear_det(&pts[i], &pts[j], &pts[k]).is_zero() {
                        bad.push(format!("{a} {bv} {cv}"));
                    }
                }
            }
            Ok(Outcome::new(
                bad.is_empty() && n == 12,
                json!({ "triples": n, "failures": bad }),
            ))
        },
    );
    s.check(
        "level3.homomorphism",
        "phi(a) + phi(b) = phi(a + b) for all 81 pairs",
        || {
            let bad = F3Vec::ALL
                .par_iter()
                .map(|a| -> Result<Vec<String>> {
                    let mut bad = Vec::new();
                    for bv in F3Vec::ALL {
                        if c.add(&phi(*a), &phi(bv))? != phi(*a + bv) {
                            bad.push(format!("{a} + {bv}"));
                        }
                    }
                    Ok(bad)
                })
                .collect::<Result<Vec<_>>>()?
                .concat();
            Ok(Outcome::new(
                bad.is_empty(),
                json!({ "pairs": 81, "failures": bad }),
            ))
        },
    );
    s.check(
        "level3.mu_table",
        "the slope at phi(a) matches the slope table",
        || {
            let mut bad = Vec::new();
            for v in F3Vec::nonzero() {
                if c.slope_at(&phi(v))? != mu_phi(v)? {
                    bad.push(v.to_string());
                }
            }
            Ok(Outcome::new(
                bad.is_empty(),
                json!({ "checked": 8, "failures": bad }),
            ))
        },
    );
}

fn aut_cs_all() -> &'static Result<Vec<CurveAut>> {
    static ALL: OnceLock<Result<Vec<CurveAut>>> = OnceLock::new();
    ALL.get_or_init(enumerate_aut_cs)
}

fn aut_cs(s: &mut Suite) {
    for (k, g) in generators().iter().enumerate() {
        s.check(
            &format!("aut_cs.generator.beta{k}"),
            "(beta_k, A_k) satisfy the five transformation equations",
            || Ok(Outcome::new(g.is_valid(), json!(g.to_string()))),
        );
    }
    s.check(
        "aut_cs.beta2_squared",
        "(beta2, A2)^2 = (1, A(-1, 0, -a1, -a3))",
        || {
            let g2 = &generators()[2];
            let sq = g2.compose(g2)?;
            Ok(Outcome::compare(
                CurveAut::minus_one().to_string(),
                sq.to_string(),
            ))
        },
    );
    s.check("aut_cs.closure", "Aut(C, S) has 48 elements", || {
        Ok(Outcome::compare(48, aut_cs_all().clone()?.len()))
    });
    s.check("aut_cs.kernel", "the kernel over Aut(S) is {1, -1}", || {
        let ker = kernel(&aut_cs_all().clone()?);
        let ok = ker.len() == 2
            && ker.contains(&CurveAut::identity())
            && ker.contains(&CurveAut::minus_one());
        Ok(Outcome::new(ok, json!({ "size": ker.len() })))
    });
}

fn gamma_suite(s: &mut Suite) {
    let expected = [[[1, 0], [0, -1]], [[1, 1], [0, 1]], [[0, -1], [1, 0]]];
    for (k, (g, e)) in generators().iter().zip(expected).enumerate() {
        s.check(
            &format!("gamma.generator.beta{k}"),
            "gamma of the generators is the tabulated matrix",
            || Ok(Outcome::compare(e, gamma(g)?.rows())),
        );
    }
    s.check("gamma.minus_one", "gamma(1, -1) = -I", || {
        Ok(Outcome::compare(
            [[-1, 0], [0, -1]],
            gamma(&CurveAut::minus_one())?.rows(),
        ))
    });
    let gammas = || -> Result<(Vec<CurveAut>, Vec<Gl2F3>)> {
        let all = aut_cs_all().clone()?;
        let g = all.iter().map(gamma).collect::<Result<Vec<_>>>()?;
        Ok((all, g))
    };
    s.check(
        "gamma.bijective",
        "gamma: Aut(C, S) -> GL2(F3) is bijective",
        || {
            let (_, mut g) = gammas()?;
            g.sort();
            Ok(Outcome::new(
                g == Gl2F3::all(),
                json!({ "images": g.len() }),
            ))
        },
    );
    s.check(
        "gamma.homomorphism",
        "gamma is a homomorphism on all 48 x 48 pairs",
        || {
            let (all, g) = gammas()?;
            let index: HashMap<&CurveAut, usize> =
                all.iter().enumerate().map(|(i, a)| (a, i)).collect();
            let bad = (0..all.len())
                .into_par_iter()
                .map(|i| -> Result<usize> {
                    let mut bad = 0;
                    for j in 0..all.len() {
                        let c = all[i].compose(&all[j])?;
                        let k = index.get(&c).ok_or_else(|| {
                            Error::Mismatch(format!("{c} is outside the closure"))
                        })?;
                        if g[*k] != g[i].mul(&g[j]) {
                            bad += 1;
                        }
                    }
                    Ok(bad)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum::<usize>();
            Ok(Outcome::new(
                bad == 0,
                json!({ "pairs": all.len() * all.len(), "failures": bad }),
            ))
        },
    );
    s.check(
        "gamma.diagram",
        "xi' . pi = Mobius . gamma on all of Aut(C, S)",
        || {
            let (all, g) = gammas()?;
            let mut bad = 0;
            for (a, m) in all.iter().zip(&g) {
                if !diagram_commutes(a, m)? {
                    bad += 1;
                }
            }
            Ok(Outcome::new(
                bad == 0,
                json!({ "elements": all.len(), "failures": bad }),
            ))
        },
    );
}

fn weil(s: &mut Suite) {
    let certs = verify_divisors();
    s.check(
        "weil.g_certificate",
        "div(g) = 3[P] - 3[O]: f mod y = -x^3",
        || {
            let (g, _) = certs.clone()?;
            Ok(Outcome::compare(
                g.expected.to_string(),
                g.restriction.to_string(),
            ))
        },
    );
    s.check(
        "weil.h_certificate",
        "div(h) = 3[Q] - 3[O]: f on w = 0 is a cube",
        || {
            let (_, h) = certs.clone()?;
            Ok(Outcome::compare(
                h.expected.to_string(),
                h.restriction.to_string(),
            ))
        },
    );
    s.check("weil.normalization", "h/g tends to 1 at O", || {
        Ok(Outcome::compare(
            BElem::from_int(1).to_string(),
            weil_functions().ratio_at_origin()?.to_string(),
        ))
    });
    s.check("weil.e3", "e3(phi(1,0), phi(0,1)) = w", || {
        Ok(Outcome::compare(
            EisElem::omega().to_string(),
            e3_basis()?.to_string(),
        ))
    });
    s.check(
        "weil.tampered_rejected",
        "a sign-flipped w fails its certificate",
        || {
            let mut fns = weil_functions();
            fns.w.cx = fns.w.cx.neg();
            let r = verify_divisors_for(&fns);
            Ok(Outcome::new(
                matches!(r, Err(Error::DivisorMismatch(_))),
                json!(r.err().map(|e| error_name(&e))),
            ))
        },
    );
}

fn exponents_below(n: usize, f: impl Fn(u32) -> usize) -> Vec<usize> {
    (0..).map(f).take_while(|e| *e < n).collect()
}

fn formal_group(s: &mut Suite, n: usize) {
    let k = fibers::f4();
    let x = TruncSeries::x(&k.zero(), n);
    s.check("formal_group.z_support", "z = sum x^(3 2^k)", || {
        Ok(Outcome::compare(
            exponents_below(n, |k| 3 << k),
            fibers::z_series(n).support(),
        ))
    });
    s.check("formal_group.z_equation", "z - z^2 = x^3", || {
        let z = fibers::z_series(n);
        Ok(Outcome::new(z.sub(&z.mul(&z)) == x.pow(3), Value::Null))
    });
    s.check(
        "formal_group.neg_leading",
        "[-1](x) = x + x^4 + O(x^5)",
        || {
            let c = fibers::neg_series(n);
            let head: Vec<String> = c.coeffs().iter().take(5).map(ToString::to_string).collect();
            Ok(Outcome::compare(
                vec!["0", "1", "0", "0", "1"],
                head.iter().map(String::as_str).collect(),
            ))
        },
    );
    s.check(
        "formal_group.two_support",
        "[2](x) = sum x^(12 2^k - 8)",
        || {
            Ok(Outcome::compare(
                exponents_below(n, |k| (12 << k) - 8),
                fibers::two_series(n).support(),
            ))
        },
    );
    s.check(
        "formal_group.unit_multiple",
        "[2](x) is a unit multiple of x - [-1](x)",
        || {
            let u = fibers::two_is_unit_multiple_of_difference(n)?;
            Ok(Outcome::new(
                true,
                json!({ "unit_constant_term": u.coeffs()[0].to_string() }),
            ))
        },
    );
    s.check(
        "formal_group.height",
        "the formal group of C'' has height 2",
        || Ok(Outcome::compare(2, fibers::height_check()?)),
    );
    let law = fibers::formal_group_law(n);
    let at = |a: &TruncSeries<_>, b: &TruncSeries<_>| -> Result<TruncSeries<_>> {
        let law = law.clone()?;
        Ok(law
            .substitute(&[
                MultiSeries::from_univariate(a, 0, 1, n),
                MultiSeries::from_univariate(b, 0, 1, n),
            ])?
            .diagonal())
    };
    let zero = TruncSeries::zero(&k.zero(), n);
    s.check("formal_group.identity", "F(x, 0) = F(0, x) = x", || {
        Ok(Outcome::new(
            at(&x, &zero)? == x && at(&zero, &x)? == x,
            Value::Null,
        ))
    });
    s.check("formal_group.inverse", "F(x, [-1](x)) = 0", || {
        Ok(Outcome::new(
            at(&x, &fibers::neg_series(n))?.is_zero(),
            Value::Null,
        ))
    });
    s.check("formal_group.symmetric", "F(x1, x2) = F(x2, x1)", || {
        let law = law.clone()?;
        Ok(Outcome::new(
            law.swap_vars(0, 1) == law,
            json!({ "terms": law.terms().len() }),
        ))
    });
    s.check(
        "formal_group.doubling",
        "F(x, x) equals the closed form of [2](x)",
        || {
            Ok(Outcome::new(
                law.clone()?.diagonal() == fibers::two_series(n),
                json!({ "precision": n }),
            ))
        },
    );
    let degree = n.min(20);
    s.check(
        "formal_group.associativity",
        "F(F(x1, x2), x3) = F(x1, F(x2, x3))",
        || {
            fibers::check_associativity(&law.clone()?, degree)?;
            Ok(Outcome::new(true, json!({ "total_degree_below": degree })))
        },
    );
}

fn landweber_suite(s: &mut Suite, primes: &[u32]) {
    for (p, w) in landweber::ordinary_witnesses(primes) {
        s.check(
            &format!("landweber.witness.p{p}"),
            "the Hasse invariant is nonzero mod p: some fiber is ordinary",
            || {
                let w = w?;
                let recount = count_points(w.q, &w.nu0)?;
                Ok(Outcome::new(
                    recount == w && w.ordinary() && w.within_hasse_bound(),
                    json!({ "p": w.p, "q": w.q, "nu0": w.nu0.to_string(), "count": w.count, "trace": w.trace, "ordinary": w.ordinary() }),
                ))
            },
        );
    }
    s.check(
        "landweber.supersingular",
        "the fiber at p = 2, v = 0 is supersingular",
        || {
            let r = landweber::supersingular_confirmation()?;
            Ok(Outcome::compare(
                (9, -4, 2),
                (r.count.count, r.count.trace, r.height),
            ))
        },
    );
    s.check(
        "landweber.aut_invariance",
        "point counts are constant on Aut(S)-orbits",
        || {
            let auts = enumerate_aut_s()?;
            let mut fibers_checked = 0;
            for q in [7u64, 13] {
                let k = FiniteField::of_order(q)?;
                let omega = k.one().primitive_cube_roots()[0].clone();
                for nu0 in k.elements().filter(|n| !n.pow(3).is_one()) {
                    let base = count_points(q as u32, &nu0)?.count;
                    for a in &auts {
                        let moved = translate_parameter(a.nu_image(), &nu0, &omega)?;
                        if count_points(q as u32, &moved)?.count != base {
                            return Ok(Outcome::new(
                                false,
                                json!({ "q": q, "nu0": nu0.to_string() }),
                            ));
                        }
                    }
                    fibers_checked += 1;
                }
            }
            Ok(Outcome::new(
                true,
                json!({ "fibers": fibers_checked, "automorphisms": auts.len() }),
            ))
        },
    );
}

fn classify_suite(s: &mut Suite, opts: &Options) {
    for q in [7u64, 13, 25] {
        s.check(
            &format!("classify.roundtrip.F{q}"),
            "classification recovers (v, w) and the transform uniquely",
            || {
                let r = classify_roundtrip(q, opts.roundtrip_trials, opts.seed)?;
                Ok(Outcome::compare(r.trials, r.recovered)
                    .with(json!({ "seed": r.seed, "first_failure": r.first_failure })))
            },
        );
    }
    let f7 = |n| FiniteField::prime(7).map(|k| k.from_int(n));
    s.check(
        "classify.canonical",
        "C at v = 3 over F7 with w = 2 is already canonical",
        || {
            let input = canonical_input(&f7(3)?, &f7(2)?)?;
            let out = classify(&input)?;
            Ok(Outcome::compare(
                ("3".to_string(), "2".to_string(), true, true),
                (
                    out.nu.to_string(),
                    out.omega.to_string(),
                    out.transform.is_identity(),
                    out.verified,
                ),
            ))
        },
    );
    s.check("classify.dependent_points", "Q = -P is rejected", || {
        let mut input = canonical_input(&f7(3)?, &f7(2)?)?;
        input.q = input.curve.negate(&input.p);
        let got = classify(&input).err().map(|e| error_name(&e));
        Ok(Outcome::compare(
            Some("SlopeDifferenceNotInvertible".to_string()),
            got,
        ))
    });
}

/// Runs the named suites concurrently and assembles a sorted report.
/// `target` is a suite name or `all`; `None` if it is neither.
pub fn run(target: &str, opts: &Options) -> Option<Report> {
    let names: Vec<&str> = match target {
        "all" => SUITES.to_vec(),
        t if SUITES.contains(&t) => vec![t],
        _ => return None,
    };
    let checks = names
        .par_iter()
        .map(|n| run_suite(n, opts).expect("registered suite"))
        .collect::<Vec<_>>()
        .concat();
    Some(Report::new(
        names.iter().map(ToString::to_string).collect(),
        checks,
    ))
}
