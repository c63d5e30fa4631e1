//! Exact coefficient rings: `Z[1/3]`, the Eisenstein ring over it, the
//! localized ring `B`, finite fields, small quotient rings and truncated
//! power series.

mod belem;
mod eisenstein;
mod finite;
mod poly;
mod quotient;
mod rational3;
mod ring;
mod series;

pub use belem::{BElem, NuLinearFactorization};
pub use eisenstein::{EisElem, Eisenstein, QOmega};
pub use finite::{is_prime, FinElem, FiniteField, MAX_FIELD_ORDER};
pub use poly::Poly;
pub use quotient::{QuotElem, QuotRing};
pub use rational3::Rational3;
pub use ring::{CubeRoots, Ring};
pub use series::{MultiSeries, TruncSeries};
