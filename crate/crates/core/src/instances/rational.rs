use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::sample_rational;
use crate::error::{OmegaError, Result};
use crate::group::{OmegaGroup, OperationDescriptor, SampleRng};
use crate::scalar::Scalar;

fn rational_ops() -> Vec<OperationDescriptor<BigRational>> {
    vec![
        OperationDescriptor::new("mul", 2, Scalar::one(), |a: &[BigRational]| &a[0] * &a[1]),
        OperationDescriptor::new("triple", 3, Scalar::one(), |a: &[BigRational]| &a[0] * &a[1] * &a[2]),
    ]
}

/// The rationals with the absolute value.
#[derive(Debug, Clone)]
pub struct RationalAbs {
    ops: Vec<OperationDescriptor<BigRational>>,
}

impl RationalAbs {
    pub fn new() -> Self {
        RationalAbs { ops: rational_ops() }
    }
}

impl Default for RationalAbs {
    fn default() -> Self {
        Self::new()
    }
}

impl OmegaGroup for RationalAbs {
    type Elem = BigRational;

    fn name(&self) -> String {
        "q-abs".into()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn ops(&self) -> &[OperationDescriptor<BigRational>] {
        &self.ops
    }

    fn norm_value(&self, a: &BigRational) -> BigRational {
        a.abs()
    }

    fn sample(&self, rng: &mut SampleRng) -> BigRational {
        sample_rational(rng)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn int_valuation(p: &BigInt, n: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = n.div_rem(p);
        if !rem.is_zero() {
            return v;
        }
        n = quot;
        v += 1;
    }
}

/// `v_p(q)`, or `None` for `q = 0`.
pub fn padic_valuation(p: u64, q: &BigRational) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    Some(int_valuation(&p, q.numer()) - int_valuation(&p, q.denom()))
}

/// The rationals with the p-adic absolute value `p^(-v_p(a))`.
#[derive(Debug, Clone)]
pub struct RationalPadic {
    prime: u64,
    ops: Vec<OperationDescriptor<BigRational>>,
}

impl RationalPadic {
    pub fn new(prime: u64) -> Result<Self> {
        if !is_prime(prime) {
            return Err(OmegaError::InvalidParameter(format!("{prime} is not prime")));
        }
        Ok(RationalPadic {
            prime,
            ops: rational_ops().into_iter().take(1).collect(),
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn valuation(&self, q: &BigRational) -> Option<i64> {
        padic_valuation(self.prime, q)
    }
}

impl OmegaGroup for RationalPadic {
    type Elem = BigRational;

    fn name(&self) -> String {
        format!("q-padic:{}", self.prime)
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn ops(&self) -> &[OperationDescriptor<BigRational>] {
        &self.ops
    }

    fn norm_value(&self, a: &BigRational) -> BigRational {
        match self.valuation(a) {
            None => BigRational::zero(),
            Some(v) => {
                let p = BigInt::from(self.prime);
                let power = num_traits::pow(p, v.unsigned_abs() as usize);
                if v >= 0 {
                    BigRational::new(BigInt::one(), power)
                } else {
                    BigRational::from_integer(power)
                }
            }
        }
    }

    /// Small rationals scaled by a random power of the prime, so that
    /// valuations between -3 and 3 all show up.
    fn sample(&self, rng: &mut SampleRng) -> BigRational {
        let base = sample_rational(rng);
        let e: i32 = rng.random_range(-3..=3);
        let p = BigRational::from_integer(BigInt::from(self.prime));
        let scale = num_traits::pow(p, e.unsigned_abs() as usize);
        if e >= 0 {
            base * scale
        } else {
            base / scale
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{check_group_axioms, check_norm_axioms, op_norm_estimate};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Valuation by repeated division, kept separate from `int_valuation`.
    fn valuation_oracle(p: i64, mut n: i64, mut d: i64) -> i64 {
        let mut v = 0;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        while d % p == 0 {
            d /= p;
            v -= 1;
        }
        v
    }

    #[test]
    fn padic_norm_examples() {
        let g = RationalPadic::new(7).unwrap();
        assert_eq!(valuation_oracle(7, 49, 3), 2);
        assert_eq!(g.norm(&q(49, 3)), Scalar::ratio(1, 49));
        assert_eq!(g.norm(&q(-49, 3)), Scalar::ratio(1, 49));
        assert_eq!(g.norm(&q(7, 1)), Scalar::ratio(1, 7));
        assert_eq!(g.norm(&q(1, 14)), Scalar::from_integer(7));
        assert_eq!(g.norm(&q(0, 1)), Scalar::zero());
        // ‖7 − 1‖ = 1 >= |1/7 − 1| = 6/7
        assert_eq!(g.distance(&q(7, 1), &q(1, 1)), Scalar::one());
        assert!(crate::group::reverse_triangle_check(&g, &q(7, 1), &q(1, 1)));
    }

    #[test]
    fn valuation_agrees_with_oracle() {
        for (n, d) in [(49, 3), (5, 7), (686, 9), (3, 343), (-14, 5), (1, 1)] {
            assert_eq!(padic_valuation(7, &q(n, d)), Some(valuation_oracle(7, n, d)));
        }
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(
            RationalPadic::new(6).unwrap_err(),
            OmegaError::InvalidParameter("6 is not prime".into())
        );
        assert!(RationalPadic::new(1).is_err());
        assert!(RationalPadic::new(2).is_ok());
    }

    #[test]
    fn ultrametric_on_samples() {
        let g = RationalPadic::new(7).unwrap();
        let mut rng = crate::group::rng_from_seed(11);
        for _ in 0..500 {
            let a = g.sample(&mut rng);
            let b = g.sample(&mut rng);
            assert!(g.norm(&(&a + &b)) <= g.norm(&a).max(g.norm(&b)));
        }
    }

    #[test]
    fn abs_mult_norm_estimate_is_exactly_one() {
        let g = RationalAbs::new();
        let mul = g.op("mul").unwrap();
        assert_eq!(op_norm_estimate(&g, mul, 50, 3).unwrap(), Scalar::one());
    }

    #[test]
    fn axioms_hold() {
        let g = RationalAbs::new();
        assert!(check_group_axioms(&g, 100, 0).all_pass());
        assert!(check_norm_axioms(&g, 100, 0).all_pass());
    }
}
