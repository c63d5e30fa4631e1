use std::sync::OnceLock;

use level3_core::base_scheme::{enumerate_aut_s, valuation, BaseAut, OmegaPoint};
use level3_core::exact_rings::{
    BElem, EisElem, FinElem, FiniteField, Poly, Rational3, Ring, TruncSeries,
};
use level3_core::level3::curve_c_at;
use level3_core::literal::eval_str;
use level3_core::weierstrass::{ModelTransform, ProjPoint, WeierstrassCurve};
use proptest::prelude::*;

fn rational3() -> impl Strategy<Value = Rational3> {
    (-40i64..40, 0u32..3).prop_map(|(n, e)| Rational3::new(n, e))
}

fn eis() -> impl Strategy<Value = EisElem> {
    (rational3(), rational3()).prop_map(|(a, b)| EisElem::new(a, b))
}

fn belem() -> impl Strategy<Value = BElem> {
    (prop::collection::vec(eis(), 0..5), 0u32..3)
        .prop_map(|(cs, d)| BElem::new(Poly::from_coeffs(&EisElem::from_int(0), cs), d))
}

fn nonzero_belem() -> impl Strategy<Value = BElem> {
    belem().prop_filter("nonzero", |b| !b.is_zero())
}

/// A nonzero element times a random product of `v - 1`, `v - w`, `v - w^2`
/// and their inverses.
fn factored_belem() -> impl Strategy<Value = BElem> {
    (nonzero_belem(), -3i64..4, -3i64..4, -3i64..4).prop_map(|(b, e1, e2, e3)| {
        let mut acc = b;
        for (root, e) in BElem::linear_roots().iter().zip([e1, e2, e3]) {
            let lin = BElem::nu().sub(&BElem::from_eis(root.clone()));
            let f = if e >= 0 {
                lin.pow(e as u64)
            } else {
                lin.inverse().unwrap().pow((-e) as u64)
            };
            acc = acc.mul(&f);
        }
        acc
    })
}

fn aut_s() -> &'static [BaseAut] {
    static ALL: OnceLock<Vec<BaseAut>> = OnceLock::new();
    ALL.get_or_init(|| enumerate_aut_s().unwrap())
}

fn f25() -> &'static FiniteField {
    static K: OnceLock<FiniteField> = OnceLock::new();
    K.get_or_init(|| FiniteField::of_order(25).unwrap())
}

fn fin(k: &'static FiniteField) -> impl Strategy<Value = FinElem> {
    (0..k.order()).prop_map(move |v| k.element(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn belem_ring_axioms(a in belem(), b in belem(), c in belem()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&BElem::from_int(1)), a);
    }

    #[test]
    fn belem_inverse(a in factored_belem()) {
        if let Some(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).is_one());
        }
    }

    #[test]
    fn factorization_reassembles(a in factored_belem()) {
        let f = a.factor_nu_linear().unwrap();
        prop_assert_eq!(f.reassemble(), a);
    }

    #[test]
    fn valuations_are_additive(a in factored_belem(), b in factored_belem()) {
        let ab = a.mul(&b);
        for alpha in [OmegaPoint::One, OmegaPoint::Om, OmegaPoint::OmBar, OmegaPoint::Infinity] {
            prop_assert_eq!(
                valuation(&ab, alpha).unwrap(),
                valuation(&a, alpha).unwrap() + valuation(&b, alpha).unwrap()
            );
        }
    }

    #[test]
    fn units_are_closed_under_products(a in factored_belem(), b in factored_belem()) {
        prop_assert_eq!(a.mul(&b).is_unit(), a.is_unit() && b.is_unit());
    }

    #[test]
    fn eisenstein_norm_is_multiplicative(a in eis(), b in eis()) {
        prop_assert_eq!(a.mul(&b).norm(), a.norm().mul(&b.norm()));
        prop_assert_eq!(a.mul(&a.conj()), EisElem::from_coeff(a.norm()));
    }

    #[test]
    fn base_automorphisms_are_ring_maps(a in belem(), b in belem(), i in 0usize..24) {
        let beta = &aut_s()[i];
        let fa = beta.apply(&a).unwrap();
        let fb = beta.apply(&b).unwrap();
        prop_assert_eq!(beta.apply(&a.mul(&b)).unwrap(), fa.mul(&fb));
        prop_assert_eq!(beta.apply(&a.add(&b)).unwrap(), fa.add(&fb));
    }

    #[test]
    fn literals_round_trip(a in belem()) {
        let back = eval_str(
            &a.to_string(),
            &BElem::from_int(0),
            &[("v", BElem::nu()), ("w", BElem::omega())],
        ).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn finite_field_axioms(a in fin(f25()), b in fin(f25()), c in fin(f25())) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.pow(25), a.clone());
        match a.inverse() {
            Some(inv) => prop_assert!(a.mul(&inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn series_inverse(cs in prop::collection::vec(fin(f25()), 1..12)) {
        let k = f25();
        let s = TruncSeries::from_coeffs(&k.zero(), cs, 12);
        match s.invert_series() {
            Ok(inv) => prop_assert_eq!(s.mul(&inv), TruncSeries::constant(k.one(), 12)),
            Err(_) => prop_assert!(s.coeffs().first().is_none_or(|c| c.is_zero())),
        }
    }

    #[test]
    fn model_transforms_respect_the_group_law(
        nu in 2i64..11,
        u in 1i64..13, r in 0i64..13, s in 0i64..13, t in 0i64..13,
        i in 0usize..64, j in 0usize..64,
    ) {
        let k = FiniteField::prime(13).unwrap();
        let curve: WeierstrassCurve<FinElem> = curve_c_at(&k.from_int(nu), &k.from_int(3)).unwrap();
        prop_assume!(curve.is_elliptic());
        let pts: Vec<_> = k
            .elements()
            .flat_map(|x| k.elements().map(move |y| (x.clone(), y)))
            .filter(|(x, y)| curve.eval_affine(x, y).is_zero())
            .map(|(x, y)| ProjPoint::affine(x, y))
            .collect();
        let p = &pts[i % pts.len()];
        let q = &pts[j % pts.len()];
        let m = ModelTransform::new(k.from_int(u), k.from_int(r), k.from_int(s), k.from_int(t)).unwrap();
        let image = curve.transform(&m);
        prop_assert!(image.is_on_curve(&m.apply(p)));
        prop_assert_eq!(
            m.apply(&curve.add(p, q).unwrap()),
            image.add(&m.apply(p), &m.apply(q)).unwrap()
        );
        prop_assert_eq!(m.inverse().apply(&m.apply(p)), p.clone());
    }
}
