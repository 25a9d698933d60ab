//! Concrete normed Ω-groups.

mod map;
mod matrix;
mod octonion;
mod rational;
mod spec;

pub use map::{MapElem, MapGroup};
pub use matrix::{ColumnVectors, Matrix, MatrixRing, Vector};
pub use octonion::{
    basis_product, octonion_nonassociativity_witness, NonassociativityWitness, Octonion, OctonionAlgebra,
};
pub use rational::{is_prime, padic_valuation, RationalAbs, RationalPadic};
pub use spec::{InstanceSpec, InstanceVisitor};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::group::SampleRng;

/// Small random rational; zero about one time in ten.
pub(crate) fn sample_rational(rng: &mut SampleRng) -> BigRational {
    if rng.random_ratio(1, 10) {
        return BigRational::from_integer(BigInt::from(0));
    }
    let numer: i64 = rng.random_range(-30..=30);
    let denom: i64 = rng.random_range(1..=12);
    BigRational::new(numer.into(), denom.into())
}
