//! Normed Ω-groups: an abelian group with a family of polyadditive operations
//! and a norm, plus the sampled axiom suites and the quantitative difference
//! bounds that the sequence and completion layers propagate.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{OmegaError, Result};
use crate::scalar::Scalar;

/// Deterministic generator handed to samplers.
pub type SampleRng = ChaCha8Rng;

pub(crate) fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

type Evaluator<E> = Arc<dyn Fn(&[E]) -> E + Send + Sync>;

/// An n-ary operation together with a declared bound on its norm.
pub struct OperationDescriptor<E> {
    symbol: String,
    arity: usize,
    evaluator: Evaluator<E>,
    norm_bound: Scalar,
}

impl<E> Clone for OperationDescriptor<E> {
    fn clone(&self) -> Self {
        OperationDescriptor {
            symbol: self.symbol.clone(),
            arity: self.arity,
            evaluator: Arc::clone(&self.evaluator),
            norm_bound: self.norm_bound.clone(),
        }
    }
}

impl<E> fmt::Debug for OperationDescriptor<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperationDescriptor")
            .field("symbol", &self.symbol)
            .field("arity", &self.arity)
            .field("norm_bound", &self.norm_bound)
            .finish_non_exhaustive()
    }
}

impl<E> OperationDescriptor<E> {
    pub fn new<F>(symbol: impl Into<String>, arity: usize, norm_bound: Scalar, evaluator: F) -> Self
    where
        F: Fn(&[E]) -> E + Send + Sync + 'static,
    {
        assert!(arity >= 1, "operations have positive arity");
        OperationDescriptor {
            symbol: symbol.into(),
            arity,
            evaluator: Arc::new(evaluator),
            norm_bound,
        }
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn norm_bound(&self) -> &Scalar {
        &self.norm_bound
    }

    /// Evaluates the operation. Panics on an arity mismatch.
    pub fn apply(&self, args: &[E]) -> E {
        assert_eq!(args.len(), self.arity, "arity mismatch for `{}`", self.symbol);
        (self.evaluator)(args)
    }

    pub fn try_apply(&self, args: &[E]) -> Result<E> {
        if args.len() != self.arity {
            return Err(OmegaError::ArityMismatch {
                symbol: self.symbol.clone(),
                expected: self.arity,
                got: args.len(),
            });
        }
        Ok((self.evaluator)(args))
    }
}

/// A normed abelian Ω-group.
///
/// `norm_value` returns the raw rational so that a broken norm can be
/// observed by [`check_norm_axioms`]; everything else goes through
/// [`OmegaGroup::norm`].
pub trait OmegaGroup: Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn ops(&self) -> &[OperationDescriptor<Self::Elem>];
    fn norm_value(&self, a: &Self::Elem) -> BigRational;
    fn sample(&self, rng: &mut SampleRng) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Panics if the instance violates `‖a‖ >= 0`.
    fn norm(&self, a: &Self::Elem) -> Scalar {
        Scalar::new(self.norm_value(a)).expect("norm returned a negative value")
    }

    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> Scalar {
        self.norm(&self.sub(a, b))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn op(&self, symbol: &str) -> Option<&OperationDescriptor<Self::Elem>> {
        self.ops().iter().find(|op| op.symbol() == symbol)
    }
}

/// Outcome of one named property over a batch of samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub samples: usize,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            pass: true,
            samples: 0,
            counterexample: None,
        }
    }

    /// Records one sample; the first failing witness is kept.
    pub(crate) fn record(&mut self, holds: bool, witness: impl FnOnce() -> String) {
        self.samples += 1;
        if !holds && self.pass {
            self.pass = false;
            self.counterexample = Some(witness());
        }
    }
}

/// A suite of checks run from one seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn samples(&self) -> usize {
        self.checks.iter().map(|c| c.samples).max().unwrap_or(0)
    }

    /// First counterexample, prefixed by the name of the failing check.
    pub fn first_counterexample(&self) -> Option<String> {
        self.failures()
            .next()
            .map(|c| format!("{}: {}", c.name, c.counterexample.as_deref().unwrap_or("(no witness)")))
    }
}

pub fn check_group_axioms<G: OmegaGroup + ?Sized>(g: &G, n_samples: usize, seed: u64) -> AxiomReport {
    assert!(n_samples >= 1, "n_samples must be positive");
    let mut rng = rng_from_seed(seed);
    let zero = g.zero();
    let mut assoc = CheckOutcome::new("associativity");
    let mut comm = CheckOutcome::new("commutativity");
    let mut ident = CheckOutcome::new("identity");
    let mut inv = CheckOutcome::new("inverse");
    for _ in 0..n_samples {
        let a = g.sample(&mut rng);
        let b = g.sample(&mut rng);
        let c = g.sample(&mut rng);
        let lhs = g.add(&g.add(&a, &b), &c);
        let rhs = g.add(&a, &g.add(&b, &c));
        assoc.record(g.equal(&lhs, &rhs), || {
            format!("a={a}, b={b}, c={c}: (a+b)+c={lhs}, a+(b+c)={rhs}")
        });
        let ab = g.add(&a, &b);
        let ba = g.add(&b, &a);
        comm.record(g.equal(&ab, &ba), || format!("a={a}, b={b}: a+b={ab}, b+a={ba}"));
        let a0 = g.add(&a, &zero);
        let zero_a = g.add(&zero, &a);
        ident.record(g.equal(&a0, &a) && g.equal(&zero_a, &a), || {
            format!("a={a}: a+0={a0}, 0+a={zero_a}")
        });
        let na = g.neg(&a);
        let s1 = g.add(&a, &na);
        let s2 = g.add(&na, &a);
        inv.record(g.equal(&s1, &zero) && g.equal(&s2, &zero), || {
            format!("a={a}: a+(-a)={s1}, (-a)+a={s2}")
        });
    }
    AxiomReport {
        suite: "group".into(),
        seed,
        checks: vec![assoc, comm, ident, inv],
    }
}

pub fn check_norm_axioms<G: OmegaGroup + ?Sized>(g: &G, n_samples: usize, seed: u64) -> AxiomReport {
    assert!(n_samples >= 1, "n_samples must be positive");
    let mut rng = rng_from_seed(seed);
    let zero = g.zero();
    let mut nonneg = CheckOutcome::new("nonnegative");
    let mut definite = CheckOutcome::new("definite");
    let mut triangle = CheckOutcome::new("triangle");
    let mut symmetric = CheckOutcome::new("symmetric");

    let n0 = g.norm_value(&zero);
    definite.record(n0.is_zero(), || format!("a=0: ‖a‖={n0}"));
    for _ in 0..n_samples {
        let a = g.sample(&mut rng);
        let b = g.sample(&mut rng);
        let na = g.norm_value(&a);
        let nb = g.norm_value(&b);
        nonneg.record(!na.is_negative(), || format!("a={a}: ‖a‖={na}"));
        let is_zero = g.equal(&a, &zero);
        definite.record(na.is_zero() == is_zero, || format!("a={a}: ‖a‖={na}"));
        let sum = g.add(&a, &b);
        let ns = g.norm_value(&sum);
        triangle.record(ns <= &na + &nb, || {
            format!("a={a}, b={b}: ‖a+b‖={ns}, ‖a‖+‖b‖={}", &na + &nb)
        });
        let neg = g.neg(&a);
        let nn = g.norm_value(&neg);
        symmetric.record(nn == na, || format!("a={a}: ‖-a‖={nn}, ‖a‖={na}"));
    }
    AxiomReport {
        suite: "norm".into(),
        seed,
        checks: vec![nonneg, definite, triangle, symmetric],
    }
}

fn sample_tuple<G: OmegaGroup + ?Sized>(g: &G, n: usize, rng: &mut SampleRng) -> Vec<G::Elem> {
    (0..n).map(|_| g.sample(rng)).collect()
}

fn show_tuple<E: fmt::Display>(args: &[E]) -> String {
    let parts: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Checks additivity of `op` in every argument slot.
pub fn check_polyadditivity<G: OmegaGroup + ?Sized>(
    g: &G,
    op: &OperationDescriptor<G::Elem>,
    n_samples: usize,
    seed: u64,
) -> AxiomReport {
    assert!(n_samples >= 1, "n_samples must be positive");
    let mut rng = rng_from_seed(seed);
    let mut checks = Vec::with_capacity(op.arity());
    for slot in 0..op.arity() {
        let mut check = CheckOutcome::new(format!("slot{}", slot + 1));
        for _ in 0..n_samples {
            let args = sample_tuple(g, op.arity(), &mut rng);
            let b = g.sample(&mut rng);
            let mut with_b = args.clone();
            with_b[slot] = b.clone();
            let mut with_sum = args.clone();
            with_sum[slot] = g.add(&args[slot], &b);
            let lhs = op.apply(&with_sum);
            let rhs = g.add(&op.apply(&args), &op.apply(&with_b));
            check.record(g.equal(&lhs, &rhs), || {
                format!("args={}, b={b}: lhs={lhs}, rhs={rhs}", show_tuple(&args))
            });
        }
        checks.push(check);
    }
    AxiomReport {
        suite: format!("polyadditivity:{}", op.symbol()),
        seed,
        checks,
    }
}

/// Checks `‖(a₁…aₙ)ω‖ <= norm_bound · ∏‖aᵢ‖` on sampled tuples.
pub fn check_op_norm_bound<G: OmegaGroup + ?Sized>(
    g: &G,
    op: &OperationDescriptor<G::Elem>,
    n_samples: usize,
    seed: u64,
) -> AxiomReport {
    assert!(n_samples >= 1, "n_samples must be positive");
    let mut rng = rng_from_seed(seed);
    let mut check = CheckOutcome::new("bounded");
    for _ in 0..n_samples {
        let args = sample_tuple(g, op.arity(), &mut rng);
        let value = g.norm(&op.apply(&args));
        let allowed = op.norm_bound() * &args.iter().map(|a| g.norm(a)).product::<Scalar>();
        check.record(value <= allowed, || {
            format!("args={}: ‖(a)ω‖={value} > {allowed}", show_tuple(&args))
        });
    }
    AxiomReport {
        suite: format!("op_norm:{}", op.symbol()),
        seed,
        checks: vec![check],
    }
}

/// Sampled lower estimate of `‖ω‖`: the largest ratio `‖(a)ω‖ / ∏‖aᵢ‖`.
pub fn op_norm_estimate<G: OmegaGroup + ?Sized>(
    g: &G,
    op: &OperationDescriptor<G::Elem>,
    n_samples: usize,
    seed: u64,
) -> Result<Scalar> {
    let mut rng = rng_from_seed(seed);
    let mut best: Option<Scalar> = None;
    for _ in 0..n_samples {
        let args = sample_tuple(g, op.arity(), &mut rng);
        let denom: Scalar = args.iter().map(|a| g.norm(a)).product();
        if denom.is_zero() {
            continue;
        }
        let ratio = &g.norm(&op.apply(&args)) / &denom;
        best = Some(match best {
            Some(b) => b.max(ratio),
            None => ratio,
        });
    }
    best.ok_or(OmegaError::NoValidSample)
}

/// `‖a−b‖ >= |‖a‖−‖b‖|`, evaluated exactly.
pub fn reverse_triangle_check<G: OmegaGroup + ?Sized>(g: &G, a: &G::Elem, b: &G::Elem) -> bool {
    g.distance(a, b) >= g.norm(a).abs_diff(&g.norm(b))
}

pub fn check_reverse_triangle<G: OmegaGroup + ?Sized>(g: &G, n_samples: usize, seed: u64) -> AxiomReport {
    let mut rng = rng_from_seed(seed);
    let mut check = CheckOutcome::new("reverse_triangle");
    for _ in 0..n_samples {
        let a = g.sample(&mut rng);
        let b = g.sample(&mut rng);
        check.record(reverse_triangle_check(g, &a, &b), || format!("a={a}, b={b}"));
    }
    AxiomReport {
        suite: "reverse_triangle".into(),
        seed,
        checks: vec![check],
    }
}

/// Every suite that a shipped instance must pass, in a fixed order.
pub fn full_suite<G: OmegaGroup + ?Sized>(g: &G, n_samples: usize, seed: u64) -> Vec<AxiomReport> {
    let mut reports = vec![
        check_group_axioms(g, n_samples, seed),
        check_norm_axioms(g, n_samples, seed),
    ];
    for op in g.ops() {
        reports.push(check_polyadditivity(g, op, n_samples, seed));
    }
    for op in g.ops() {
        reports.push(check_op_norm_bound(g, op, n_samples, seed));
    }
    reports.push(check_reverse_triangle(g, n_samples, seed));
    reports
}

/// Bound on `‖(c)ω − (a)ω‖` for an operation of norm `norm`, given
/// `‖cᵢ−aᵢ‖ <= radii[i]` and `max(‖aᵢ‖,‖cᵢ‖) <= caps[i]`.
///
/// The sum over nonempty subsets S of `∏_{i∈S} Rᵢ ∏_{j∉S} Cⱼ` telescopes to
/// `∏(Cᵢ+Rᵢ) − ∏Cᵢ`.
pub fn polyadditive_difference_bound(norm: &Scalar, caps: &[Scalar], radii: &[Scalar]) -> Scalar {
    assert_eq!(caps.len(), radii.len(), "caps and radii must have equal length");
    let widened: Scalar = caps.iter().zip(radii).map(|(c, r)| c + r).product();
    let base: Scalar = caps.iter().cloned().product();
    norm * &widened.checked_sub(&base).expect("product is monotone in each factor")
}

/// Conservative inverse of [`polyadditive_difference_bound`]:
/// `δ = min(1, ε / (1 + ‖ω‖ · (∏(Cⱼ+2) − ∏(Cⱼ+1))))`.
///
/// With radii `δ` and caps `Cᵢ + δ` the forward bound stays at most `ε`.
pub fn invert_difference_bound(norm: &Scalar, caps: &[Scalar], eps: &Scalar) -> Scalar {
    assert!(!eps.is_zero(), "target precision must be positive");
    let two = Scalar::from_integer(2);
    let outer: Scalar = caps.iter().map(|c| c + &two).product();
    let inner: Scalar = caps.iter().map(|c| c + &Scalar::one()).product();
    let slope = outer.checked_sub(&inner).expect("monotone");
    let denom = Scalar::one() + norm * &slope;
    (eps / &denom).min(Scalar::one())
}

/// [`polyadditive_difference_bound`] for a concrete operation.
pub fn bound_op_difference<E>(op: &OperationDescriptor<E>, caps: &[Scalar], radii: &[Scalar]) -> Scalar {
    assert_eq!(caps.len(), op.arity(), "one cap per argument");
    polyadditive_difference_bound(op.norm_bound(), caps, radii)
}

/// [`invert_difference_bound`] for a concrete operation.
pub fn invert_epsilon_bound<E>(op: &OperationDescriptor<E>, caps: &[Scalar], eps: &Scalar) -> Scalar {
    assert_eq!(caps.len(), op.arity(), "one cap per argument");
    invert_difference_bound(op.norm_bound(), caps, eps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallKind {
    Open,
    Closed,
}

/// Open or closed ball `{ b : ‖center − b‖ < radius }` (resp. `<=`).
#[derive(Clone, Debug, PartialEq)]
pub struct Ball<E> {
    pub center: E,
    pub radius: Scalar,
    pub kind: BallKind,
}

impl<E> Ball<E> {
    pub fn new(center: E, radius: Scalar, kind: BallKind) -> Result<Self> {
        if radius.is_zero() {
            return Err(OmegaError::InvalidParameter("ball radius must be positive".into()));
        }
        Ok(Ball { center, radius, kind })
    }

    pub fn contains<G: OmegaGroup<Elem = E> + ?Sized>(&self, g: &G, b: &E) -> bool {
        let d = g.distance(&self.center, b);
        match self.kind {
            BallKind::Open => d < self.radius,
            BallKind::Closed => d <= self.radius,
        }
    }
}
