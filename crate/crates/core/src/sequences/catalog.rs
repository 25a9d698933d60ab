//! Named sequences with certified moduli: square roots over the rationals
//! (Babylonian and bisection), p-adic square roots by Hensel lifting, and
//! geometric series.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CauchySequence, Modulus};
use crate::error::{OmegaError, Result};
use crate::group::OmegaGroup;
use crate::instances::{RationalAbs, RationalPadic};
use crate::scalar::Scalar;

pub(crate) fn rational_pow(base: &BigRational, exp: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Least `N` with `c·ρᴺ <= 2⁻ᵏ`, for `0 <= ρ < 1`.
pub(crate) fn power_decay_modulus(c: Scalar, rho: Scalar) -> Modulus {
    Modulus::new(move |k| least_power_index(&c, &rho, k))
}

fn least_power_index(c: &Scalar, rho: &Scalar, k: u32) -> u64 {
    let target = Scalar::pow2_neg(k);
    if c <= &target {
        return 0;
    }
    if rho.is_zero() {
        return 1;
    }
    let holds = |n: u64| c * &rho.pow(n) <= target;
    // float guess, then exact correction in both directions
    let guess = {
        let c = c.value().to_f64().unwrap_or(f64::MAX).ln();
        let r = rho.value().to_f64().unwrap_or(0.5).ln();
        let n = (-(k as f64) * std::f64::consts::LN_2 - c) / r;
        if n.is_finite() && n > 0.0 {
            n.ceil() as u64
        } else {
            1
        }
    };
    let mut n = guess.max(1);
    while !holds(n) {
        n = n.saturating_mul(2);
    }
    let mut lo = 0;
    while lo + 1 < n {
        let mid = lo + (n - lo) / 2;
        if holds(mid) {
            n = mid;
        } else {
            lo = mid;
        }
    }
    n
}

fn check_nonnegative(q: &BigRational) -> Result<()> {
    if q.is_negative() {
        return Err(OmegaError::InvalidParameter(format!(
            "no rational square root sequence for negative {q}"
        )));
    }
    Ok(())
}

struct Babylonian {
    radicand: BigRational,
    iterates: Mutex<Vec<BigRational>>,
}

impl Babylonian {
    fn iterate(&self, n: u64) -> BigRational {
        let mut cache = self.iterates.lock().expect("iterate cache poisoned");
        while cache.len() as u64 <= n {
            let x = cache.last().expect("seeded with x0");
            let next = (x + &self.radicand / x) / BigRational::from_integer(BigInt::from(2));
            cache.push(next);
        }
        cache[n as usize].clone()
    }

    /// `|xⱼ² − q|/xⱼ >= |xⱼ − √q|`.
    fn error_bound(&self, j: u64) -> BigRational {
        let x = self.iterate(j);
        (&x * &x - &self.radicand).abs() / x
    }

    /// First iterate whose error bound is at most `2⁻ⁿ`.
    fn term(&self, n: u64) -> BigRational {
        let band = Scalar::pow2_neg(n.min(u64::from(u32::MAX)) as u32).into_inner();
        let j = (0..).find(|&j| self.error_bound(j) <= band).expect("iterates converge");
        self.iterate(j)
    }
}

/// Newton iterates `x_{j+1} = (xⱼ + q/xⱼ)/2` from `x₀ = 1`, indexed by
/// accuracy: term `n` is the first iterate within `2⁻ⁿ` of `√q`, so
/// `rate(k) = k + 1`.
///
/// The iterates themselves roughly square their denominators at each step;
/// indexing by accuracy keeps term `n` at `O(n)` digits.
pub fn babylonian_sqrt(group: Arc<RationalAbs>, radicand: BigRational) -> Result<CauchySequence<RationalAbs>> {
    check_nonnegative(&radicand)?;
    if radicand.is_zero() {
        return Ok(CauchySequence::constant(group, radicand));
    }
    let state = Arc::new(Babylonian {
        radicand,
        iterates: Mutex::new(vec![BigRational::one()]),
    });
    Ok(CauchySequence::new(
        group,
        move |n| state.term(n),
        Modulus::new(|k| u64::from(k) + 1),
    ))
}

/// Midpoints of the bisection intervals for `x² = q` on `[0, max(1, q)]`.
///
/// Every later midpoint stays inside the n-th interval of width `W·2⁻ⁿ`.
pub fn bisection_sqrt(group: Arc<RationalAbs>, radicand: BigRational) -> Result<CauchySequence<RationalAbs>> {
    check_nonnegative(&radicand)?;
    let width = radicand.clone().max(BigRational::one());
    let hi0 = width.clone();
    let two = BigRational::from_integer(BigInt::from(2));
    let gen = move |n: u64| {
        let (mut lo, mut hi) = (BigRational::zero(), hi0.clone());
        for _ in 0..n {
            let mid = (&lo + &hi) / &two;
            if &mid * &mid <= radicand {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + hi) / &two
    };
    let width = Scalar::new(width).expect("positive");
    let modulus = Modulus::new(move |k| {
        // W·2⁻ᴺ <= 2⁻ᵏ
        let allowed = &Scalar::pow2_neg(k) / &width;
        u64::from(allowed.precision_below())
    });
    Ok(CauchySequence::new(group, gen, modulus))
}

/// The first `count` base-`p` digits of a `p`-adic integer, units digit first.
pub fn padic_digits(q: &BigRational, p: u64, count: u64) -> Result<Vec<u64>> {
    let modulus = BigInt::from(p).pow(count as u32);
    let mut rest = rational_mod(q, &modulus)
        .ok_or_else(|| OmegaError::InvalidParameter(format!("{q} is not a {p}-adic integer")))?;
    let base = BigInt::from(p);
    let mut digits = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let (next, digit) = rest.div_mod_floor(&base);
        digits.push(digit.to_u64().expect("digit below p"));
        rest = next;
    }
    Ok(digits)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let egcd = a.mod_floor(m).extended_gcd(m);
    egcd.gcd.is_one().then(|| egcd.x.mod_floor(m))
}

/// `q mod m` for a rational whose denominator is invertible mod `m`.
fn rational_mod(q: &BigRational, m: &BigInt) -> Option<BigInt> {
    mod_inverse(q.denom(), m).map(|inv| (q.numer() * inv).mod_floor(m))
}

/// Smallest integer `n >= 0` with `pⁿ >= 2ᵏ`.
pub fn digits_for_precision(p: u64, k: u32) -> u64 {
    let target = BigInt::one() << k as usize;
    let p = BigInt::from(p);
    let mut power = BigInt::one();
    let mut n = 0;
    while power < target {
        power *= &p;
        n += 1;
    }
    n
}

/// Square root of a p-adic unit by Hensel lifting: `gen(n)` is the root
/// modulo `p^(n+1)` in `[0, p^(n+1))`, lifted from the smallest root mod `p`.
pub fn hensel_sqrt(group: Arc<RationalPadic>, radicand: BigRational) -> Result<CauchySequence<RationalPadic>> {
    let p = group.prime();
    if p == 2 {
        return Err(OmegaError::Unsupported("Hensel square roots for p = 2".into()));
    }
    if group.valuation(&radicand) != Some(0) {
        return Err(OmegaError::InvalidParameter(format!(
            "{radicand} is not a {p}-adic unit"
        )));
    }
    let pb = BigInt::from(p);
    let residue = rational_mod(&radicand, &pb).expect("unit");
    let root0 = (1..p)
        .map(BigInt::from)
        .find(|x| (x * x - &residue).mod_floor(&pb).is_zero())
        .ok_or_else(|| OmegaError::InvalidParameter(format!("{radicand} is not a square mod {p}")))?;
    let gen = move |n: u64| {
        let mut x = root0.clone();
        let mut modulus = pb.clone();
        for _ in 0..n {
            modulus *= &pb;
            let q = rational_mod(&radicand, &modulus).expect("unit");
            let f = (&x * &x - q).mod_floor(&modulus);
            let inv = mod_inverse(&(&x * 2), &modulus).expect("2x is a unit for odd p");
            x = (&x - f * inv).mod_floor(&modulus);
        }
        BigRational::from_integer(x)
    };
    // ‖gen(a) − gen(b)‖ <= p^-(N+1) for a, b >= N
    let modulus = Modulus::new(move |k| digits_for_precision(p, k).saturating_sub(1));
    Ok(CauchySequence::new(group, gen, modulus))
}

/// Partial sums `Σ_{i<=n} rⁱ` in a rational instance with multiplicative norm.
/// Tails are bounded by `ρᴺ⁺¹/(1−ρ)` with `ρ = ‖r‖ < 1`.
pub fn geometric_series<G: OmegaGroup<Elem = BigRational>>(
    group: Arc<G>,
    ratio: BigRational,
) -> Result<CauchySequence<G>> {
    let rho = group.norm(&ratio);
    if rho >= Scalar::one() {
        return Err(OmegaError::InvalidParameter(format!(
            "geometric series diverges: ‖{ratio}‖ = {rho}"
        )));
    }
    if ratio.is_zero() {
        return Ok(CauchySequence::constant(group, BigRational::one()));
    }
    let gap = Scalar::one().checked_sub(&rho).expect("rho < 1");
    let c = &rho / &gap;
    let modulus = power_decay_modulus(c, rho);
    let one = BigRational::one();
    let denom = &one - &ratio;
    let gen = move |n: u64| (&one - rational_pow(&ratio, n + 1)) / &denom;
    Ok(CauchySequence::new(group, gen, modulus))
}

/// A sequence equal to `value + bump` before index `switch` and to `value` after.
pub fn eventually_constant<G: OmegaGroup>(
    group: Arc<G>,
    value: G::Elem,
    bump: G::Elem,
    switch: u64,
) -> CauchySequence<G> {
    let g = Arc::clone(&group);
    CauchySequence::new(
        group,
        move |n| {
            if n < switch {
                g.add(&value, &bump)
            } else {
                value.clone()
            }
        },
        Modulus::constant(switch),
    )
}
