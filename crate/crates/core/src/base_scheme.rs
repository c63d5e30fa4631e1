//! The base scheme S, its boundary set `{1, w, w^2, inf}`, the valuations
//! attached to it, and the 24 automorphisms of S.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::exact_rings::{BElem, EisElem, Ring};

/// A point of the boundary set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum OmegaPoint {
    One,
    Om,
    OmBar,
    Infinity,
}

impl OmegaPoint {
    pub const ALL: [OmegaPoint; 4] = [Self::One, Self::Om, Self::OmBar, Self::Infinity];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    /// The root `alpha` of `v^3 - 1`; `None` at infinity.
    pub fn root(self) -> Option<EisElem> {
        match self {
            Self::One => Some(EisElem::from_int(1)),
            Self::Om => Some(EisElem::omega()),
            Self::OmBar => Some(EisElem::omega_bar()),
            Self::Infinity => None,
        }
    }
}

impl fmt::Display for OmegaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::One => "1",
            Self::Om => "w",
            Self::OmBar => "wb",
            Self::Infinity => "inf",
        })
    }
}

/// A permutation of the boundary set, `images[i]` being the image of
/// `OmegaPoint::ALL[i]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OmegaPerm {
    images: [OmegaPoint; 4],
}

impl OmegaPerm {
    pub fn identity() -> Self {
        Self {
            images: OmegaPoint::ALL,
        }
    }

    /// Fails unless `images` is a bijection.
    pub fn new(images: [OmegaPoint; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for p in images {
            if std::mem::replace(&mut seen[p.index()], true) {
                return Err(Error::InvalidInput("not a bijection".into()));
            }
        }
        Ok(Self { images })
    }

    /// Product of disjoint cycles.
    pub fn from_cycles(cycles: &[&[OmegaPoint]]) -> Result<Self> {
        let mut images = OmegaPoint::ALL;
        for c in cycles {
            for (i, p) in c.iter().enumerate() {
                images[p.index()] = c[(i + 1) % c.len()];
            }
        }
        Self::new(images)
    }

    pub fn apply(&self, p: OmegaPoint) -> OmegaPoint {
        self.images[p.index()]
    }

    pub fn images(&self) -> [OmegaPoint; 4] {
        self.images
    }

    /// `self after other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: OmegaPoint::ALL.map(|p| self.apply(other.apply(p))),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = OmegaPoint::ALL;
        for p in OmegaPoint::ALL {
            images[self.apply(p).index()] = p;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(24);
        let mut idx = [0usize, 1, 2, 3];
        permute(&mut idx, 0, &mut out);
        out.sort();
        out
    }
}

fn permute(idx: &mut [usize; 4], k: usize, out: &mut Vec<OmegaPerm>) {
    if k == idx.len() {
        out.push(OmegaPerm {
            images: idx.map(OmegaPoint::from_index),
        });
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, out);
        idx.swap(k, i);
    }
}

impl fmt::Display for OmegaPerm {
    /// Cycle notation, e.g. `(1 inf)(w wb)`; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut done = [false; 4];
        let mut any = false;
        for p in OmegaPoint::ALL {
            if done[p.index()] || self.apply(p) == p {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut q = p;
            let mut first = true;
            while !done[q.index()] {
                done[q.index()] = true;
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{q}")?;
                q = self.apply(q);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// `v_alpha(f)`: the exponent of `v - alpha` for finite `alpha`, minus the
/// total degree in `v` at infinity.
pub fn valuation(f: &BElem, alpha: OmegaPoint) -> Result<i64> {
    let fac = f.factor_nu_linear()?;
    Ok(match alpha {
        OmegaPoint::One => fac.n1,
        OmegaPoint::Om => fac.n_omega,
        OmegaPoint::OmBar => fac.n_omega_bar,
        OmegaPoint::Infinity => -f.nu_degree().expect("nonzero"),
    })
}

/// An automorphism of S, given by `beta*(w)` (either `w` or `w^2`) and a
/// Mobius substitution `beta*(v) = (p v + q)/(r v + s)` with `p, q, r, s` in A.
#[derive(Clone, Debug)]
pub struct BaseAut {
    omega_conj: bool,
    mobius: [EisElem; 4],
    nu_image: BElem,
}

impl PartialEq for BaseAut {
    fn eq(&self, other: &Self) -> bool {
        self.omega_conj == other.omega_conj && self.nu_image == other.nu_image
    }
}

impl Eq for BaseAut {}

impl Hash for BaseAut {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.omega_conj.hash(state);
        self.nu_image.hash(state);
    }
}

fn conj_if(c: bool, a: &EisElem) -> EisElem {
    if c {
        a.conj()
    } else {
        a.clone()
    }
}

impl BaseAut {
    /// Fails when the Mobius denominator or `beta*(v)^3 - 1` is not a unit
    /// of B, or the matrix is singular.
    pub fn new(omega_conj: bool, mobius: [EisElem; 4]) -> Result<Self> {
        let [p, q, r, s] = &mobius;
        if p.mul(s).sub(&q.mul(r)).is_zero() {
            return Err(Error::InvalidInput("singular Mobius matrix".into()));
        }
        let num = BElem::nu()
            .mul(&BElem::from_eis(p.clone()))
            .add(&BElem::from_eis(q.clone()));
        let den = BElem::nu()
            .mul(&BElem::from_eis(r.clone()))
            .add(&BElem::from_eis(s.clone()));
        let den_inv = den
            .inverse()
            .ok_or_else(|| Error::NonUnitDenominator(den.to_string()))?;
        let nu_image = num.mul(&den_inv);
        let cube = nu_image.pow(3).sub(&BElem::from_int(1));
        if !cube.is_unit() {
            return Err(Error::NonUnitDenominator(cube.to_string()));
        }
        Ok(Self {
            omega_conj,
            mobius,
            nu_image,
        })
    }

    pub fn identity() -> Self {
        let (o, z) = (EisElem::from_int(1), EisElem::from_int(0));
        Self::new(false, [o.clone(), z.clone(), z, o]).expect("identity")
    }

    /// `w -> w^2`, `v -> v`.
    pub fn beta0() -> Self {
        let (o, z) = (EisElem::from_int(1), EisElem::from_int(0));
        Self::new(true, [o.clone(), z.clone(), z, o]).expect("beta0")
    }

    /// `w -> w`, `v -> w v`.
    pub fn beta1() -> Self {
        let (o, z) = (EisElem::from_int(1), EisElem::from_int(0));
        Self::new(false, [EisElem::omega(), z.clone(), z, o]).expect("beta1")
    }

    /// `w -> w`, `v -> (v + 2)/(v - 1)`.
    pub fn beta2() -> Self {
        let e = EisElem::from_int;
        Self::new(false, [e(1), e(2), e(1), e(-1)]).expect("beta2")
    }

    pub fn generators() -> [Self; 3] {
        [Self::beta0(), Self::beta1(), Self::beta2()]
    }

    pub fn omega_conj(&self) -> bool {
        self.omega_conj
    }

    pub fn mobius(&self) -> &[EisElem; 4] {
        &self.mobius
    }

    /// `beta*(v)`.
    pub fn nu_image(&self) -> &BElem {
        &self.nu_image
    }

    /// `beta*(w)`.
    pub fn omega_image(&self) -> BElem {
        if self.omega_conj {
            BElem::omega_bar()
        } else {
            BElem::omega()
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.omega_conj && self.nu_image == BElem::nu()
    }

    /// The ring map `beta*` on B.
    pub fn apply(&self, f: &BElem) -> Result<BElem> {
        f.specialize(&self.nu_image, &self.omega_image())
    }

    /// `beta*` on A.
    pub fn apply_const(&self, a: &EisElem) -> EisElem {
        conj_if(self.omega_conj, a)
    }

    /// `self after other`, so that `(self . other)* = other* . self*`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let m1 = self.mobius.clone().map(|a| other.apply_const(&a));
        let m0 = &other.mobius;
        let mobius = [
            m1[0].mul(&m0[0]).add(&m1[1].mul(&m0[2])),
            m1[0].mul(&m0[1]).add(&m1[1].mul(&m0[3])),
            m1[2].mul(&m0[0]).add(&m1[3].mul(&m0[2])),
            m1[2].mul(&m0[1]).add(&m1[3].mul(&m0[3])),
        ];
        let out = Self::new(self.omega_conj ^ other.omega_conj, mobius)?;
        debug_assert_eq!(out.nu_image, other.apply(&self.nu_image)?);
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self> {
        let [p, q, r, s] = self.mobius.clone().map(|a| conj_if(self.omega_conj, &a));
        Self::new(self.omega_conj, [s, q.neg(), r.neg(), p])
    }

    /// Checks the defining properties: units go to units, `1 + w + w^2`
    /// goes to 0, and composing with the inverse gives the identity.
    pub fn is_valid(&self) -> bool {
        let Ok(inv) = self.inverse() else {
            return false;
        };
        let roundtrip = self.compose(&inv).map(|g| g.is_identity()).unwrap_or(false);
        let w = self.omega_image();
        let cyclo = BElem::from_int(1).add(&w).add(&w.square()).is_zero();
        let units = BElem::linear_roots().iter().all(|a| {
            self.apply(&BElem::nu_minus(a))
                .map(|f| f.is_unit())
                .unwrap_or(false)
        });
        roundtrip && cyclo && units
    }
}

impl fmt::Display for BaseAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.omega_conj { "wb" } else { "w" };
        write!(f, "[w -> {w}, v -> {}]", self.nu_image)
    }
}

/// The permutation `pi(beta)` with `v_a(beta*(f)) = v_{pi(beta)(a)}(f)`.
pub fn pi_perm(beta: &BaseAut) -> Result<OmegaPerm> {
    // row[g][a] = v_g(beta*(v - a)) for the three finite roots a
    let mut rows = [[0i64; 3]; 4];
    for (j, a) in BElem::linear_roots().iter().enumerate() {
        let img = beta
            .apply(&BElem::nu_minus(a))
            .map_err(|_| Error::NoConsistentPermutation)?;
        for g in OmegaPoint::ALL {
            rows[g.index()][j] = valuation(&img, g).map_err(|_| Error::NoConsistentPermutation)?;
        }
    }
    // v_d(v - a) is 1 at d = a, -1 at infinity, 0 otherwise
    let signature = |d: OmegaPoint| -> [i64; 3] {
        let mut s = [0i64; 3];
        for (j, v) in s.iter_mut().enumerate() {
            *v = match d {
                OmegaPoint::Infinity => -1,
                _ if d.index() == j => 1,
                _ => 0,
            };
        }
        s
    };
    let mut images = OmegaPoint::ALL;
    for g in OmegaPoint::ALL {
        let hits: Vec<OmegaPoint> = OmegaPoint::ALL
            .into_iter()
            .filter(|d| signature(*d) == rows[g.index()])
            .collect();
        match hits.as_slice() {
            [d] => images[g.index()] = *d,
            _ => return Err(Error::NoConsistentPermutation),
        }
    }
    OmegaPerm::new(images).map_err(|_| Error::NoConsistentPermutation)
}

/// Closure of `{beta0, beta1, beta2}` under composition, in breadth-first
/// order starting from the identity.
pub fn enumerate_aut_s() -> Result<Vec<BaseAut>> {
    const LIMIT: usize = 24;
    let gens = BaseAut::generators();
    let mut seen: HashMap<BaseAut, ()> = HashMap::new();
    let mut out = vec![BaseAut::identity()];
    seen.insert(BaseAut::identity(), ());
    let mut queue = VecDeque::from([BaseAut::identity()]);
    while let Some(b) = queue.pop_front() {
        for g in &gens {
            let c = b.compose(g)?;
            if seen.contains_key(&c) {
                continue;
            }
            if out.len() == LIMIT {
                return Err(Error::ClosureExceeded(LIMIT));
            }
            seen.insert(c.clone(), ());
            out.push(c.clone());
            queue.push_back(c);
        }
    }
    Ok(out)
}
