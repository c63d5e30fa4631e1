//! Automorphisms of the universal curve covering automorphisms of the base,
//! and their action on the level structure through `GL_2(F_3)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::base_scheme::{pi_perm, BaseAut, OmegaPerm, OmegaPoint};
use crate::error::{Error, Result};
use crate::exact_rings::{BElem, EisElem, Ring};
use crate::level3::{curve_c, phi, F3Vec};
use crate::weierstrass::{ModelTransform, ProjPoint};

/// A pair `(beta, A(u, r, s, t))`, where `A` maps C onto `beta* C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveAut {
    pub beta: BaseAut,
    pub m: ModelTransform<BElem>,
}

fn b(n: i64) -> BElem {
    BElem::from_int(n)
}

fn eis(e: EisElem) -> BElem {
    BElem::from_eis(e)
}

fn inv(x: &BElem) -> BElem {
    x.inverse().expect("unit of B")
}

/// `beta*` applied to each entry of `m`.
pub fn apply_beta_to_transform(
    beta: &BaseAut,
    m: &ModelTransform<BElem>,
) -> Result<ModelTransform<BElem>> {
    m.map(|e| beta.apply(e))
}

/// `beta*` applied to each coordinate of `p`.
pub fn apply_beta_to_point(beta: &BaseAut, p: &ProjPoint<BElem>) -> Result<ProjPoint<BElem>> {
    p.map(|e| beta.apply(e))
}

impl CurveAut {
    pub fn identity() -> Self {
        Self {
            beta: BaseAut::identity(),
            m: ModelTransform::identity(&b(0)),
        }
    }

    /// `(1, A(-1, 0, -a1, -a3))`.
    pub fn minus_one() -> Self {
        let c = curve_c();
        Self {
            beta: BaseAut::identity(),
            m: ModelTransform::new(b(-1), b(0), c.a1.neg(), c.a3.neg()).expect("unit"),
        }
    }

    /// The five transformation relations hold with `a'_k = beta*(a_k)`.
    pub fn is_valid(&self) -> bool {
        let c = curve_c();
        let Ok(target) = c.map(|a| self.beta.apply(a)) else {
            return false;
        };
        self.m.u.is_unit()
            && c.transform_residuals(&self.m, &target)
                .iter()
                .all(Ring::is_zero)
    }

    /// `(b1, A1)(b0, A0) = (b1 b0, b0*(A1) A0)`.
    pub fn compose(&self, g0: &Self) -> Result<Self> {
        let beta = self.beta.compose(&g0.beta)?;
        let a1 = apply_beta_to_transform(&g0.beta, &self.m)?;
        Ok(Self {
            beta,
            m: a1.compose(&g0.m),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.beta.is_identity() && self.m.is_identity()
    }
}

impl fmt::Display for CurveAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.beta, self.m)
    }
}

/// The generators `(beta_k, A_k)` for `k = 0, 1, 2`.
pub fn generators() -> [CurveAut; 3] {
    let nu = BElem::nu();
    let (w, wb) = (EisElem::omega(), EisElem::omega_bar());
    let nm1 = BElem::nu_minus(&EisElem::from_int(1));
    let cube = nu.pow(3).sub(&b(1));
    let u = eis(wb.sub(&w)).mul(&inv(&nm1));
    let r = b(3).mul(&cube.neg()).mul(&inv(&nm1.pow(3)));
    let s = b(3)
        .mul(&eis(wb.clone()))
        .mul(&BElem::nu_minus(&w))
        .mul(&inv(&nm1));
    let one = EisElem::from_int(1);
    let lin = eis(one.sub(&w)).add(&eis(one.sub(&wb)).mul(&nu));
    let t = b(3).mul(&cube).mul(&inv(&nm1.pow(4))).mul(&lin);
    [
        CurveAut {
            beta: BaseAut::beta0(),
            m: ModelTransform::identity(&b(0)),
        },
        CurveAut {
            beta: BaseAut::beta1(),
            m: ModelTransform::scaling(BElem::omega()).expect("unit"),
        },
        CurveAut {
            beta: BaseAut::beta2(),
            m: ModelTransform::new(u, r, s, t).expect("unit"),
        },
    ]
}

/// An invertible 2x2 matrix over `F_3`, entries stored as `-1, 0, 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Gl2F3 {
    pub m: [[i8; 2]; 2],
}

fn red3(n: i64) -> i8 {
    F3Vec::new(n, 0).k
}

impl Gl2F3 {
    pub fn new(m: [[i64; 2]; 2]) -> Result<Self> {
        let g = Self {
            m: m.map(|row| row.map(red3)),
        };
        if g.det() == 0 {
            return Err(Error::InvalidInput("singular matrix".into()));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Self {
            m: [[1, 0], [0, 1]],
        }
    }

    pub fn det(&self) -> i8 {
        let m = self.m.map(|r| r.map(i64::from));
        red3(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, c) = (
            self.m.map(|r| r.map(i64::from)),
            o.m.map(|r| r.map(i64::from)),
        );
        let mut out = [[0i8; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = red3(a[i][0] * c[0][j] + a[i][1] * c[1][j]);
            }
        }
        Self { m: out }
    }

    pub fn neg(&self) -> Self {
        Self {
            m: self.m.map(|r| r.map(|e| red3(-i64::from(e)))),
        }
    }

    /// `M v` for a column vector `v = (k, l)`.
    pub fn apply(&self, v: F3Vec) -> F3Vec {
        let m = self.m.map(|r| r.map(i64::from));
        let (k, l) = (i64::from(v.k), i64::from(v.l));
        F3Vec::new(m[0][0] * k + m[0][1] * l, m[1][0] * k + m[1][1] * l)
    }

    /// Matrix with the given columns.
    pub fn from_columns(c0: F3Vec, c1: F3Vec) -> Result<Self> {
        Self::new([
            [i64::from(c0.k), i64::from(c1.k)],
            [i64::from(c0.l), i64::from(c1.l)],
        ])
    }

    /// All 48 elements in lexicographic order.
    pub fn all() -> Vec<Self> {
        let vals = [-1i64, 0, 1];
        let mut out = Vec::new();
        for a in vals {
            for b in vals {
                for c in vals {
                    for d in vals {
                        if let Ok(g) = Self::new([[a, b], [c, d]]) {
                            out.push(g);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        self.m.map(|r| r.map(i64::from))
    }
}

impl fmt::Display for Gl2F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

/// The unique matrix `M` with `beta*(phi(M v)) = A phi(v)` for every `v`.
pub fn gamma(g: &CurveAut) -> Result<Gl2F3> {
    let mut cols = [F3Vec::zero(); 2];
    for (col, e) in cols.iter_mut().zip([F3Vec::new(1, 0), F3Vec::new(0, 1)]) {
        let target = g.m.apply(&phi(e));
        let mut hit = None;
        for w in F3Vec::nonzero() {
            if apply_beta_to_point(&g.beta, &phi(w))? == target {
                hit = Some(w);
                break;
            }
        }
        *col = hit.ok_or_else(|| Error::NoMatchingTorsionPoint(e.to_string()))?;
    }
    Gl2F3::from_columns(cols[0], cols[1])
        .map_err(|_| Error::NoMatchingTorsionPoint("basis images are dependent".into()))
}

/// Checks the defining square of `gamma(g)` on all nine vectors.
pub fn gamma_square_commutes(g: &CurveAut, m: &Gl2F3) -> Result<bool> {
    for v in F3Vec::ALL {
        let lhs = apply_beta_to_point(&g.beta, &phi(m.apply(v)))?;
        if lhs != g.m.apply(&phi(v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closure of the three generators under composition, breadth first from
/// the identity.
pub fn enumerate_aut_cs() -> Result<Vec<CurveAut>> {
    const LIMIT: usize = 48;
    let gens = generators();
    let mut index: HashMap<CurveAut, usize> = HashMap::new();
    let mut out = vec![CurveAut::identity()];
    index.insert(CurveAut::identity(), 0);
    let mut queue = VecDeque::from([CurveAut::identity()]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let c = x.compose(g)?;
            if index.contains_key(&c) {
                continue;
            }
            if out.len() == LIMIT {
                return Err(Error::ClosureExceeded(LIMIT));
            }
            index.insert(c.clone(), out.len());
            out.push(c.clone());
            queue.push_back(c);
        }
    }
    Ok(out)
}

/// Elements of `auts` lying over the identity of S.
pub fn kernel(auts: &[CurveAut]) -> Vec<CurveAut> {
    auts.iter()
        .filter(|g| g.beta.is_identity())
        .cloned()
        .collect()
}

/// A point of `P^1(F_3) = {0, 1, -1, inf}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum P1Point {
    Fin(i8),
    Inf,
}

impl P1Point {
    pub const ALL: [P1Point; 4] = [Self::Fin(0), Self::Fin(1), Self::Fin(-1), Self::Inf];

    fn index(self) -> usize {
        Self::ALL.iter().position(|p| *p == self).expect("reduced")
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fin(z) => write!(f, "{z}"),
            Self::Inf => write!(f, "inf"),
        }
    }
}

/// A permutation of `P^1(F_3)`, `images[i]` the image of `P1Point::ALL[i]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct P1F3Perm {
    pub images: [P1Point; 4],
}

impl P1F3Perm {
    pub fn apply(&self, p: P1Point) -> P1Point {
        self.images[p.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.images == P1Point::ALL
    }
}

/// The Mobius action `z -> (M11 z + M12)/(M21 z + M22)` on column lines
/// `[z:1]`, with `[1:0] = inf`.
pub fn mobius_perm(m: &Gl2F3) -> P1F3Perm {
    let r = m.rows();
    let act = |p: P1Point| {
        let (z0, z1) = match p {
            P1Point::Fin(z) => (i64::from(z), 1),
            P1Point::Inf => (1, 0),
        };
        let num = red3(r[0][0] * z0 + r[0][1] * z1);
        let den = red3(r[1][0] * z0 + r[1][1] * z1);
        if den == 0 {
            P1Point::Inf
        } else {
            // den is its own inverse in F_3
            P1Point::Fin(red3(i64::from(num) * i64::from(den)))
        }
    };
    P1F3Perm {
        images: P1Point::ALL.map(act),
    }
}

/// `1 -> 0, w -> 1, w^2 -> -1, inf -> inf`.
pub fn xi(p: OmegaPoint) -> P1Point {
    match p {
        OmegaPoint::One => P1Point::Fin(0),
        OmegaPoint::Om => P1Point::Fin(1),
        OmegaPoint::OmBar => P1Point::Fin(-1),
        OmegaPoint::Infinity => P1Point::Inf,
    }
}

/// `xi . sigma . xi^-1`.
pub fn xi_prime(sigma: &OmegaPerm) -> P1F3Perm {
    let mut images = P1Point::ALL;
    for p in OmegaPoint::ALL {
        images[xi(p).index()] = xi(sigma.apply(p));
    }
    P1F3Perm { images }
}

/// Whether `xi'(pi(beta)) = mobius(gamma(g))`.
pub fn diagram_commutes(g: &CurveAut, m: &Gl2F3) -> Result<bool> {
    Ok(xi_prime(&pi_perm(&g.beta)?) == mobius_perm(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_valid() {
        for g in generators() {
            assert!(g.is_valid(), "{g}");
        }
        assert!(CurveAut::minus_one().is_valid());
        let bad = CurveAut {
            beta: BaseAut::beta1(),
            m: ModelTransform::identity(&b(0)),
        };
        assert!(!bad.is_valid());
        assert!(generators()[2].m.u.is_unit());
    }

    #[test]
    fn generator_relations() {
        let [g0, _, g2] = generators();
        assert!(g0.compose(&g0).unwrap().is_identity());
        assert_eq!(g2.compose(&g2).unwrap(), CurveAut::minus_one());
        let id = CurveAut::identity();
        assert_eq!(g2.compose(&id).unwrap(), g2);
    }

    #[test]
    fn gamma_of_generators() {
        let expected = [[[1, 0], [0, -1]], [[1, 1], [0, 1]], [[0, -1], [1, 0]]];
        for (g, e) in generators().iter().zip(expected) {
            let m = gamma(g).unwrap();
            assert_eq!(m, Gl2F3::new(e).unwrap(), "{g}");
            assert!(gamma_square_commutes(g, &m).unwrap());
            assert!(diagram_commutes(g, &m).unwrap());
        }
        assert_eq!(
            gamma(&CurveAut::minus_one()).unwrap(),
            Gl2F3::identity().neg()
        );
    }

    #[test]
    fn mobius_examples() {
        let p = |m| mobius_perm(&Gl2F3::new(m).unwrap());
        let neg = p([[1, 0], [0, -1]]);
        assert_eq!(neg.apply(P1Point::Fin(1)), P1Point::Fin(-1));
        assert_eq!(neg.apply(P1Point::Fin(0)), P1Point::Fin(0));
        assert!(p([[1, 0], [0, 1]]).is_identity());
        let s = p([[0, -1], [1, 0]]);
        assert_eq!(s.apply(P1Point::Fin(0)), P1Point::Inf);
        assert_eq!(s.apply(P1Point::Inf), P1Point::Fin(0));
        assert_eq!(s.apply(P1Point::Fin(1)), P1Point::Fin(-1));
        assert_eq!(Gl2F3::all().len(), 48);
    }

    #[test]
    fn closure_and_gamma_isomorphism() {
        let all = enumerate_aut_cs().unwrap();
        assert_eq!(all.len(), 48);
        let ker = kernel(&all);
        assert_eq!(ker.len(), 2);
        assert!(ker.contains(&CurveAut::minus_one()));
        let gammas: Vec<Gl2F3> = all.iter().map(|g| gamma(g).unwrap()).collect();
        let mut sorted = gammas.clone();
        sorted.sort();
        assert_eq!(sorted, Gl2F3::all());
        let index: HashMap<&CurveAut, usize> =
            all.iter().enumerate().map(|(i, g)| (g, i)).collect();
        for (i, g1) in all.iter().enumerate() {
            assert!(diagram_commutes(g1, &gammas[i]).unwrap());
            for (j, g0) in all.iter().enumerate() {
                let c = g1.compose(g0).unwrap();
                let k = index[&c];
                assert_eq!(gammas[k], gammas[i].mul(&gammas[j]));
            }
        }
    }
}
