//! Point counts on fibers over finite fields: an ordinary fiber for each
//! small prime `p != 3`, and the supersingular fiber at `p = 2, v = 0`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_rings::{BElem, FinElem, FiniteField, Ring};
use crate::fibers::height_check;
use crate::level3::curve_c_at;
use crate::weierstrass::WeierstrassCurve;

/// Largest field order accepted by [`count_points`].
pub const MAX_COUNT_ORDER: u32 = 10_000;

/// Primes checked when none are given.
pub const DEFAULT_PRIMES: [u32; 5] = [2, 5, 7, 11, 13];

/// `#C_{nu0}(F_q)` and its trace of Frobenius `q + 1 - count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCount {
    pub p: u32,
    pub q: u32,
    pub nu0: FinElem,
    pub count: u64,
    pub trace: i64,
}

impl FiberCount {
    pub fn ordinary(&self) -> bool {
        self.trace.rem_euclid(i64::from(self.p)) != 0
    }

    /// `trace^2 <= 4q`.
    pub fn within_hasse_bound(&self) -> bool {
        self.trace * self.trace <= 4 * i64::from(self.q)
    }
}

fn fiber_curve(nu0: &FinElem) -> Result<WeierstrassCurve<FinElem>> {
    if nu0.pow(3).is_one() {
        return Err(Error::SingularFiber);
    }
    // The coefficients of C do not involve w.
    curve_c_at(nu0, &nu0.zero_like())
}

/// Number of projective points of `curve`, counting `y` for each `x` from
/// tables of the values taken by `y^2` and `y^2 + y`.
pub fn count_curve_points(curve: &WeierstrassCurve<FinElem>) -> u64 {
    let k = curve.a1.field().clone();
    let q = k.order() as usize;
    let mut hit = vec![false; q];
    let char2 = k.characteristic() == 2;
    for y in k.elements() {
        let v = if char2 {
            y.square().add(&y)
        } else {
            y.square()
        };
        hit[v.code() as usize] = true;
    }
    let four = k.from_int(4);
    let mut count = 1u64;
    for x in k.elements() {
        // y^2 + b y = c
        let b = curve.a1.mul(&x).add(&curve.a3);
        let c = x
            .pow(3)
            .add(&curve.a2.mul(&x.square()))
            .add(&curve.a4.mul(&x))
            .add(&curve.a6);
        count += if char2 {
            match b.inverse() {
                None => 1,
                Some(bi) if hit[c.mul(&bi.square()).code() as usize] => 2,
                Some(_) => 0,
            }
        } else {
            let d = b.square().add(&four.mul(&c));
            match (d.is_zero(), hit[d.code() as usize]) {
                (true, _) => 1,
                (false, true) => 2,
                (false, false) => 0,
            }
        };
    }
    count
}

/// Exhaustive count of `C_{nu0}(F_q)`.
pub fn count_points(q: u32, nu0: &FinElem) -> Result<FiberCount> {
    let k = nu0.field();
    if k.order() != q {
        return Err(Error::InvalidField(format!(
            "nu0 lives in F_{}, not F_{q}",
            k.order()
        )));
    }
    if k.characteristic() == 3 || q > MAX_COUNT_ORDER {
        return Err(Error::InvalidField(format!("F_{q} is not supported")));
    }
    let curve = fiber_curve(nu0)?;
    let count = count_curve_points(&curve);
    Ok(FiberCount {
        p: k.characteristic(),
        q,
        nu0: nu0.clone(),
        count,
        trace: i64::from(q) + 1 - count as i64,
    })
}

/// First ordinary fiber over `F_p`, then `F_{p^2}`, `F_{p^3}`, ...
/// searching `nu0` in code order.
pub fn ordinary_witness(p: u32) -> Result<FiberCount> {
    if p == 3 || !crate::exact_rings::is_prime(u64::from(p)) || p > 100 {
        return Err(Error::InvalidInput(format!(
            "{p} is not a prime other than 3 up to 100"
        )));
    }
    let mut k = 1;
    loop {
        let q = u64::from(p).pow(k);
        if q > u64::from(MAX_COUNT_ORDER) {
            return Err(Error::NoWitnessFound(p));
        }
        let field = FiniteField::extension(p, k)?;
        for nu0 in field.elements() {
            let fc = match count_points(q as u32, &nu0) {
                Err(Error::SingularFiber) => continue,
                r => r?,
            };
            if fc.ordinary() {
                return Ok(fc);
            }
        }
        k += 1;
    }
}

/// [`ordinary_witness`] for each prime, in parallel, in input order.
pub fn ordinary_witnesses(primes: &[u32]) -> Vec<(u32, Result<FiberCount>)> {
    primes
        .par_iter()
        .map(|&p| (p, ordinary_witness(p)))
        .collect()
}

/// Two independent signs that the `F_4` fiber at `v = 0` is supersingular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersingularReport {
    pub count: FiberCount,
    pub height: u32,
    pub consistent: bool,
}

pub fn supersingular_confirmation() -> Result<SupersingularReport> {
    let f4 = FiniteField::of_order(4)?;
    let count = count_points(4, &f4.zero())?;
    let height = height_check()?;
    let consistent = !count.ordinary() && height == 2;
    if !consistent {
        return Err(Error::Mismatch(format!(
            "trace {} and height {height} disagree",
            count.trace
        )));
    }
    Ok(SupersingularReport {
        count,
        height,
        consistent,
    })
}

/// The image of `nu0` under a base automorphism with `nu -> nu_image`,
/// evaluated with `w -> omega`.
pub fn translate_parameter(nu_image: &BElem, nu0: &FinElem, omega: &FinElem) -> Result<FinElem> {
    nu_image.specialize(nu0, omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_scheme::enumerate_aut_s;
    use crate::exact_rings::CubeRoots;

    fn naive(curve: &WeierstrassCurve<FinElem>) -> u64 {
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

    #[test]
    fn examples() {
        let f4 = FiniteField::of_order(4).unwrap();
        let c = count_points(4, &f4.zero()).unwrap();
        assert_eq!((c.count, c.trace), (9, -4));
        let f5 = FiniteField::prime(5).unwrap();
        let c = count_points(5, &f5.from_int(2)).unwrap();
        assert_eq!((c.count, c.trace), (3, 3));
        assert!(matches!(
            count_points(5, &f5.one()),
            Err(Error::SingularFiber)
        ));
    }

    #[test]
    fn table_count_matches_naive() {
        for q in [2u64, 4, 5, 7, 8, 16, 25, 49] {
            let k = FiniteField::of_order(q).unwrap();
            for nu0 in k.elements() {
                if let Ok(curve) = fiber_curve(&nu0) {
                    let fc = count_points(q as u32, &nu0).unwrap();
                    assert_eq!(fc.count, naive(&curve), "q={q} nu0={nu0}");
                    assert!(fc.within_hasse_bound());
                }
            }
        }
    }

    #[test]
    fn witnesses() {
        let w5 = ordinary_witness(5).unwrap();
        assert!(w5.ordinary());
        let w2 = ordinary_witness(2).unwrap();
        assert_eq!(w2.q, 8);
        assert!(!w2.nu0.is_zero());
        for (p, w) in ordinary_witnesses(&DEFAULT_PRIMES) {
            let w = w.unwrap();
            assert_eq!(w.p, p);
            let recount = count_points(w.q, &w.nu0).unwrap();
            assert!(recount.ordinary() && recount.within_hasse_bound());
        }
        assert!(ordinary_witness(3).is_err());
    }

    #[test]
    fn supersingular() {
        let r = supersingular_confirmation().unwrap();
        assert_eq!(r.count.trace, -4);
        assert_eq!(r.height, 2);
    }

    #[test]
    fn counts_are_invariant_under_base_automorphisms() {
        let auts = enumerate_aut_s().unwrap();
        for q in [7u64, 13, 16, 25] {
            let k = FiniteField::of_order(q).unwrap();
            let omega = k.one().primitive_cube_roots()[0].clone();
            for nu0 in k.elements().filter(|n| !n.pow(3).is_one()) {
                let base = count_points(q as u32, &nu0).unwrap().count;
                for b in &auts {
                    let moved = translate_parameter(b.nu_image(), &nu0, &omega).unwrap();
                    assert_eq!(count_points(q as u32, &moved).unwrap().count, base);
                }
            }
        }
    }
}
