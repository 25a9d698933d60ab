//! Cauchy sequences with explicit binary moduli of convergence.
//!
//! A [`CauchySequence`] pairs a pure generator `n ↦ aₙ` with a monotone
//! [`Modulus`] `k ↦ N(k)` such that `‖a_p − a_q‖ <= 2⁻ᵏ` whenever
//! `p, q >= N(k)`. Arithmetic on sequences computes the modulus of the result
//! from the moduli of the inputs, using the difference bounds in
//! [`crate::group`].

pub mod catalog;

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;

use crate::error::{OmegaError, Result};
use crate::group::{invert_epsilon_bound, rng_from_seed, OmegaGroup, OperationDescriptor};
use crate::instances::{MapElem, MapGroup, RationalAbs};
use crate::scalar::Scalar;

/// Monotone map from a precision `k` to an index `N(k)`.
#[derive(Clone)]
pub struct Modulus(Arc<dyn Fn(u32) -> u64 + Send + Sync>);

impl Modulus {
    pub fn new(rate: impl Fn(u32) -> u64 + Send + Sync + 'static) -> Self {
        Modulus(Arc::new(rate))
    }

    pub fn constant(n: u64) -> Self {
        Modulus::new(move |_| n)
    }

    pub fn rate(&self, k: u32) -> u64 {
        (self.0)(k)
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<u64> = (0..4).map(|k| self.rate(k)).collect();
        write!(f, "Modulus({head:?}, ..)")
    }
}

type Generator<E> = Arc<dyn Fn(u64) -> E + Send + Sync>;

/// A sequence in `G` with a modulus of convergence.
pub struct CauchySequence<G: OmegaGroup> {
    group: Arc<G>,
    gen: Generator<G::Elem>,
    modulus: Modulus,
    constant: Option<G::Elem>,
}

impl<G: OmegaGroup> Clone for CauchySequence<G> {
    fn clone(&self) -> Self {
        CauchySequence {
            group: Arc::clone(&self.group),
            gen: Arc::clone(&self.gen),
            modulus: self.modulus.clone(),
            constant: self.constant.clone(),
        }
    }
}

impl<G: OmegaGroup> fmt::Debug for CauchySequence<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CauchySequence")
            .field("group", &self.group.name())
            .field("modulus", &self.modulus)
            .field("constant", &self.constant)
            .finish_non_exhaustive()
    }
}

impl<G: OmegaGroup> CauchySequence<G> {
    /// The caller guarantees that `modulus` is a valid, monotone modulus for `gen`.
    pub fn new(group: Arc<G>, gen: impl Fn(u64) -> G::Elem + Send + Sync + 'static, modulus: Modulus) -> Self {
        CauchySequence {
            group,
            gen: Arc::new(gen),
            modulus,
            constant: None,
        }
    }

    pub fn constant(group: Arc<G>, value: G::Elem) -> Self {
        let v = value.clone();
        CauchySequence {
            group,
            gen: Arc::new(move |_| v.clone()),
            modulus: Modulus::constant(0),
            constant: Some(value),
        }
    }

    pub fn group(&self) -> &Arc<G> {
        &self.group
    }

    pub fn at(&self, n: u64) -> G::Elem {
        (self.gen)(n)
    }

    pub fn rate(&self, k: u32) -> u64 {
        self.modulus.rate(k)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// The value of a sequence known to be constant (built by
    /// [`CauchySequence::constant`] or from constants only).
    pub fn as_constant(&self) -> Option<&G::Elem> {
        self.constant.as_ref()
    }

    /// True when both handles share one generator, so the sequences are identical.
    pub fn same_generator(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.gen, &other.gen)
    }

    /// `‖gen(rate(0))‖ + 1`, which bounds `‖aₙ‖` for every `n >= rate(0)`.
    pub fn tail_cap(&self) -> Scalar {
        self.group.norm(&self.at(self.rate(0))) + Scalar::one()
    }

    /// Applies an additive, norm-preserving map pointwise and keeps the modulus.
    pub(crate) fn map_isometric(&self, f: impl Fn(&G, &G::Elem) -> G::Elem + Send + Sync + 'static) -> Self {
        let group = Arc::clone(&self.group);
        let src = self.clone();
        let f = Arc::new(f);
        let constant = self.constant.as_ref().map(|c| f(&group, c));
        let g2 = Arc::clone(&group);
        CauchySequence {
            group,
            gen: Arc::new(move |n| f(&g2, &src.at(n))),
            modulus: self.modulus.clone(),
            constant,
        }
    }
}

/// Index offsets probed above `rate(k)`: a short band, kept small so that
/// fast-converging generators with growing terms stay cheap.
fn probe_index(base: u64, rng: &mut impl Rng) -> u64 {
    let span = base.min(16) + 4;
    base.saturating_add(rng.random_range(0..=span))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyViolation {
    pub k: u32,
    pub p: u64,
    pub q: u64,
    pub distance: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CauchyReport {
    pub probes: usize,
    pub violations: Vec<CauchyViolation>,
}

impl CauchyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples index pairs above `rate(k)` for every `k <= k_max` and checks the
/// `2⁻ᵏ` band.
pub fn spot_check_cauchy<G: OmegaGroup>(
    s: &CauchySequence<G>,
    k_max: u32,
    probes_per_level: usize,
    seed: u64,
) -> CauchyReport {
    let mut rng = rng_from_seed(seed);
    let mut report = CauchyReport::default();
    let g = s.group();
    for k in 0..=k_max {
        let base = s.rate(k);
        let band = Scalar::pow2_neg(k);
        for i in 0..probes_per_level.max(1) {
            let p = if i == 0 { base } else { probe_index(base, &mut rng) };
            let q = probe_index(base, &mut rng);
            let distance = g.distance(&s.at(p), &s.at(q));
            report.probes += 1;
            if distance > band {
                report.violations.push(CauchyViolation { k, p, q, distance });
            }
        }
    }
    report
}

/// `‖a_N − candidate‖ <= 2⁻ᵏ` at `N = rate(k+1)`.
///
/// A true limit always passes; a point farther than `2⁻ᵏ⁺¹` from the limit
/// always fails.
pub fn check_limit<G: OmegaGroup>(s: &CauchySequence<G>, candidate: &G::Elem, k: u32) -> bool {
    let n = s.rate(k + 1);
    s.group().distance(&s.at(n), candidate) <= Scalar::pow2_neg(k)
}

/// Width of the probe band used by [`equivalent_upto`].
const EQUIVALENCE_BAND: u64 = 3;

/// Compares `s` at `s.rate(k+2) + i` with `t` at `t.rate(k+2) + i` for a few
/// offsets `i`, each sequence at its own indices.
///
/// Equivalent sequences pass at every `k`; sequences whose limits are at
/// least `2⁻ᵏ⁺¹` apart fail.
pub fn equivalent_upto<G: OmegaGroup>(s: &CauchySequence<G>, t: &CauchySequence<G>, k: u32) -> bool {
    if s.same_generator(t) {
        return true;
    }
    let g = s.group();
    let band = Scalar::pow2_neg(k);
    let (n, m) = (s.rate(k + 2), t.rate(k + 2));
    (0..=EQUIVALENCE_BAND).all(|i| g.distance(&s.at(n.saturating_add(i)), &t.at(m.saturating_add(i))) <= band)
}

/// Pointwise sum with `rate(k) = max(s.rate(k+1), t.rate(k+1))`.
pub fn seq_add<G: OmegaGroup>(s: &CauchySequence<G>, t: &CauchySequence<G>) -> CauchySequence<G> {
    let group = Arc::clone(s.group());
    let constant = match (s.as_constant(), t.as_constant()) {
        (Some(a), Some(b)) => Some(group.add(a, b)),
        _ => None,
    };
    let (s1, t1) = (s.clone(), t.clone());
    let (s2, t2) = (s.clone(), t.clone());
    let g = Arc::clone(&group);
    CauchySequence {
        group,
        gen: Arc::new(move |n| g.add(&s1.at(n), &t1.at(n))),
        modulus: Modulus::new(move |k| s2.rate(k + 1).max(t2.rate(k + 1))),
        constant,
    }
}

pub fn seq_neg<G: OmegaGroup>(s: &CauchySequence<G>) -> CauchySequence<G> {
    s.map_isometric(|g, a| g.neg(a))
}

/// Pointwise `(s₁(n) … sₙ(n))ω`.
///
/// With tail caps `Cᵢ` and `δ = invert_epsilon_bound(ω, C, 2⁻ᵏ)` rounded down
/// to `2⁻ᵐ`, the result's modulus is `k ↦ maxᵢ sᵢ.rate(m)`.
pub fn seq_apply_op<G: OmegaGroup>(
    op: &OperationDescriptor<G::Elem>,
    ss: &[CauchySequence<G>],
) -> Result<CauchySequence<G>> {
    if ss.len() != op.arity() {
        return Err(OmegaError::ArityMismatch {
            symbol: op.symbol().to_string(),
            expected: op.arity(),
            got: ss.len(),
        });
    }
    let group = Arc::clone(ss[0].group());
    let constant = ss
        .iter()
        .map(|s| s.as_constant().cloned())
        .collect::<Option<Vec<_>>>()
        .map(|args| op.apply(&args));
    let caps: Vec<Scalar> = ss.iter().map(CauchySequence::tail_cap).collect();
    let inputs: Vec<CauchySequence<G>> = ss.to_vec();
    let rate_inputs = inputs.clone();
    let rate_op = op.clone();
    let gen_op = op.clone();
    let modulus = Modulus::new(move |k| {
        let delta = invert_epsilon_bound(&rate_op, &caps, &Scalar::pow2_neg(k));
        let m = delta.precision_below();
        rate_inputs.iter().map(|s| s.rate(m)).max().unwrap_or(0)
    });
    Ok(CauchySequence {
        group,
        gen: Arc::new(move |n| {
            let args: Vec<G::Elem> = inputs.iter().map(|s| s.at(n)).collect();
            gen_op.apply(&args)
        }),
        modulus,
        constant,
    })
}

/// The sequence of norms, as a sequence of rationals with the absolute value.
/// The modulus carries over by the reverse triangle inequality.
pub fn seq_norm<G: OmegaGroup>(s: &CauchySequence<G>) -> CauchySequence<RationalAbs> {
    let rationals = Arc::new(RationalAbs::new());
    let src = s.clone();
    let constant = s.as_constant().map(|c| s.group().norm(c).into_inner());
    CauchySequence {
        group: rationals,
        gen: Arc::new(move |n| src.group().norm(&src.at(n)).into_inner()),
        modulus: s.modulus.clone(),
        constant,
    }
}

/// Uniform-convergence threshold found for one precision level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformLevel {
    pub k: u32,
    pub threshold: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformReport {
    pub levels: Vec<UniformLevel>,
}

impl UniformReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(|l| l.threshold.is_some())
    }
}

/// Largest threshold tried by the doubling search.
const MAX_THRESHOLD: u64 = 1 << 40;

fn threshold_probes(n: u64) -> [u64; 5] {
    [
        n,
        n.saturating_add(1),
        n.saturating_add(2),
        n.saturating_mul(2).saturating_add(1),
        n.saturating_mul(4).saturating_add(3),
    ]
}

/// Doubling search for the first `N` whose probes all satisfy `ok`.
fn find_threshold(start: u64, ok: impl Fn(u64) -> bool) -> Option<u64> {
    let mut n = start;
    loop {
        if threshold_probes(n).into_iter().all(&ok) {
            return Some(n);
        }
        if n >= MAX_THRESHOLD {
            return None;
        }
        n = if n == 0 { 1 } else { n * 2 };
    }
}

/// For each `k <= k_max`, searches an index `N` such that
/// `max_{x∈X} ‖fₙ(x) − f(x)‖ <= 2⁻ᵏ` at the probed `n >= N`.
pub fn uniform_convergence_check<G: OmegaGroup>(
    space: &MapGroup<G>,
    fs: impl Fn(u64) -> MapElem<G::Elem>,
    limit: &MapElem<G::Elem>,
    k_max: u32,
) -> UniformReport {
    let mut levels = Vec::new();
    let mut start = 0;
    for k in 0..=k_max {
        let band = Scalar::pow2_neg(k);
        let threshold = find_threshold(start, |n| space.distance(&fs(n), limit) <= band);
        if let Some(n) = threshold {
            start = n;
        }
        levels.push(UniformLevel { k, threshold });
    }
    UniformReport { levels }
}

/// The same search run separately at each point of `X`.
pub fn pointwise_thresholds<G: OmegaGroup>(
    space: &MapGroup<G>,
    fs: impl Fn(u64) -> MapElem<G::Elem>,
    limit: &MapElem<G::Elem>,
    k: u32,
) -> Vec<Option<u64>> {
    let band = Scalar::pow2_neg(k);
    let target = space.target();
    (0..space.len())
        .map(|x| find_threshold(0, |n| target.distance(&fs(n).0[x], &limit.0[x]) <= band))
        .collect()
}

/// Diagonal limit of a Cauchy sequence of sequences: `yₙ = xₙ(xₙ.rate(n+1))`.
///
/// If `‖xₚ − x_q‖ <= 2⁻ᵏ` in the completion for `p, q >= outer.rate(k)`, then
/// `rate(k) = max(outer.rate(k+1), k+2)` is a modulus for `y`.
pub fn diagonal<G: OmegaGroup>(
    group: Arc<G>,
    terms: impl Fn(u64) -> CauchySequence<G> + Send + Sync + 'static,
    outer: Modulus,
) -> CauchySequence<G> {
    let gen = move |n: u64| {
        let xn = terms(n);
        let k = u32::try_from(n).unwrap_or(u32::MAX - 1);
        xn.at(xn.rate(k + 1))
    };
    let modulus = Modulus::new(move |k| outer.rate(k + 1).max(u64::from(k) + 2));
    CauchySequence::new(group, gen, modulus)
}

impl<G: OmegaGroup<Elem = BigRational>> CauchySequence<G> {
    /// `gen(n) = base + offset·ratioⁿ` in a rational instance with
    /// multiplicative norm, `‖ratio‖ < 1`.
    pub fn geometric_approach(
        group: Arc<G>,
        base: BigRational,
        offset: BigRational,
        ratio: BigRational,
    ) -> Result<Self> {
        let rho = group.norm(&ratio);
        if rho >= Scalar::one() {
            return Err(OmegaError::InvalidParameter(format!(
                "‖{ratio}‖ = {rho} is not below 1"
            )));
        }
        // ‖a_p − a_q‖ <= ‖offset‖(ρᵖ + ρ^q) <= 2‖offset‖ρᴺ
        let c = Scalar::from_integer(2) * group.norm(&offset);
        let modulus = catalog::power_decay_modulus(c, rho);
        let gen = move |n: u64| &base + &offset * catalog::rational_pow(&ratio, n);
        Ok(CauchySequence::new(group, gen, modulus))
    }
}
