//! Representations `f: A₁ →* A₂` of a normed Ω-group in another, their
//! completion, their extension to map groups, and the Ω-ring product induced
//! by an effective representation of a group in itself.

use std::fmt;
use std::sync::Arc;

use crate::completion::{is_within, Completed, Verdict};
use crate::error::{OmegaError, Result};
use crate::group::{
    check_polyadditivity, invert_difference_bound, polyadditive_difference_bound, rng_from_seed, AxiomReport,
    CheckOutcome, OmegaGroup, OperationDescriptor,
};
use crate::instances::{ColumnVectors, MapElem, MapGroup, MatrixRing, OctonionAlgebra, RationalAbs};
use crate::scalar::Scalar;
use crate::sequences::{CauchySequence, Modulus};

/// How an operation of the source group is carried to the endomorphisms of
/// the target. Addition is always carried pointwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transport {
    /// Binary product maps to composition: `f((ab)ω) = f(a) ∘ f(b)`.
    Composition,
    /// No law is asserted for this operation.
    NotTransported,
}

type Action<A, B> = Arc<dyn Fn(&A, &B) -> B + Send + Sync>;

/// A biadditive action `f(a₁)(a₂)` with a declared finite norm bound.
pub struct Representation<A: OmegaGroup, B: OmegaGroup> {
    source: Arc<A>,
    target: Arc<B>,
    action: Action<A::Elem, B::Elem>,
    norm_bound: Scalar,
    transports: Vec<Transport>,
}

impl<A: OmegaGroup, B: OmegaGroup> Clone for Representation<A, B> {
    fn clone(&self) -> Self {
        Representation {
            source: Arc::clone(&self.source),
            target: Arc::clone(&self.target),
            action: Arc::clone(&self.action),
            norm_bound: self.norm_bound.clone(),
            transports: self.transports.clone(),
        }
    }
}

impl<A: OmegaGroup, B: OmegaGroup> fmt::Debug for Representation<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .field("norm_bound", &self.norm_bound)
            .field("transports", &self.transports)
            .finish()
    }
}

impl<A: OmegaGroup, B: OmegaGroup> Representation<A, B> {
    /// `transports` has one entry per source operation; composition is only
    /// meaningful for binary operations.
    pub fn new<F>(
        source: Arc<A>,
        target: Arc<B>,
        norm_bound: Scalar,
        transports: Vec<Transport>,
        action: F,
    ) -> Result<Self>
    where
        F: Fn(&A::Elem, &B::Elem) -> B::Elem + Send + Sync + 'static,
    {
        if transports.len() != source.ops().len() {
            return Err(OmegaError::InvalidParameter(format!(
                "{} transports declared for {} source operations",
                transports.len(),
                source.ops().len()
            )));
        }
        for (op, t) in source.ops().iter().zip(&transports) {
            if *t == Transport::Composition && op.arity() != 2 {
                return Err(OmegaError::Unsupported(format!(
                    "composition transport for `{}` of arity {}",
                    op.symbol(),
                    op.arity()
                )));
            }
        }
        Ok(Representation {
            source,
            target,
            action: Arc::new(action),
            norm_bound,
            transports,
        })
    }

    pub fn source(&self) -> &Arc<A> {
        &self.source
    }

    pub fn target(&self) -> &Arc<B> {
        &self.target
    }

    pub fn norm_bound(&self) -> &Scalar {
        &self.norm_bound
    }

    pub fn transports(&self) -> &[Transport] {
        &self.transports
    }

    /// `f(a)(b)`.
    pub fn act(&self, a: &A::Elem, b: &B::Elem) -> B::Elem {
        (self.action)(a, b)
    }

    /// Sampled homomorphism laws: `f(a)` is additive, `f` is additive, and
    /// every composition transport holds.
    pub fn check_laws(&self, n_samples: usize, seed: u64) -> AxiomReport {
        let (src, tgt) = (&*self.source, &*self.target);
        let mut rng = rng_from_seed(seed);
        let mut endo = CheckOutcome::new("endomorphism_additive");
        let mut hom = CheckOutcome::new("homomorphism_additive");
        let mut comps: Vec<(usize, CheckOutcome)> = self
            .transports
            .iter()
            .enumerate()
            .filter(|(_, t)| **t == Transport::Composition)
            .map(|(i, _)| (i, CheckOutcome::new(format!("composition:{}", src.ops()[i].symbol()))))
            .collect();
        for _ in 0..n_samples {
            let a = src.sample(&mut rng);
            let a2 = src.sample(&mut rng);
            let m = tgt.sample(&mut rng);
            let m2 = tgt.sample(&mut rng);
            let lhs = self.act(&a, &tgt.add(&m, &m2));
            let rhs = tgt.add(&self.act(&a, &m), &self.act(&a, &m2));
            endo.record(tgt.equal(&lhs, &rhs), || format!("a={a}, m={m}, m'={m2}"));
            let lhs = self.act(&src.add(&a, &a2), &m);
            let rhs = tgt.add(&self.act(&a, &m), &self.act(&a2, &m));
            hom.record(tgt.equal(&lhs, &rhs), || format!("a={a}, a'={a2}, m={m}"));
            for (i, check) in comps.iter_mut() {
                let op = &src.ops()[*i];
                let lhs = self.act(&op.apply(&[a.clone(), a2.clone()]), &m);
                let rhs = self.act(&a, &self.act(&a2, &m));
                check.record(tgt.equal(&lhs, &rhs), || {
                    format!("a={a}, a'={a2}, m={m}: {lhs} vs {rhs}")
                });
            }
        }
        let mut checks = vec![endo, hom];
        checks.extend(comps.into_iter().map(|(_, c)| c));
        AxiomReport {
            suite: "representation".into(),
            seed,
            checks,
        }
    }

    /// `‖f(a)(b)‖ <= ‖f‖·‖a‖·‖b‖` on sampled pairs.
    pub fn check_norm_bound(&self, n_samples: usize, seed: u64) -> AxiomReport {
        let mut rng = rng_from_seed(seed);
        let mut check = CheckOutcome::new("bounded");
        for _ in 0..n_samples {
            let a = self.source.sample(&mut rng);
            let b = self.target.sample(&mut rng);
            let value = self.target.norm(&self.act(&a, &b));
            let allowed = &self.norm_bound * &(self.source.norm(&a) * self.target.norm(&b));
            check.record(value <= allowed, || format!("a={a}, b={b}: {value} > {allowed}"));
        }
        AxiomReport {
            suite: "rep_norm".into(),
            seed,
            checks: vec![check],
        }
    }
}

/// Sampled sup of `‖f(a)(b)‖ / (‖a‖‖b‖)`.
pub fn rep_norm_estimate<A: OmegaGroup, B: OmegaGroup>(
    f: &Representation<A, B>,
    n_samples: usize,
    seed: u64,
) -> Result<Scalar> {
    let mut rng = rng_from_seed(seed);
    let mut best: Option<Scalar> = None;
    for _ in 0..n_samples {
        let a = f.source.sample(&mut rng);
        let b = f.target.sample(&mut rng);
        let denom = f.source.norm(&a) * f.target.norm(&b);
        if denom.is_zero() {
            continue;
        }
        let ratio = &f.target.norm(&f.act(&a, &b)) / &denom;
        best = Some(best.map_or(ratio.clone(), |x| x.max(ratio)));
    }
    best.ok_or(OmegaError::NoValidSample)
}

/// `‖f‖·(R₁R₂ + C₁R₂ + R₁C₂)`: bounds `‖f(c₁)(c₂) − f(a₁)(a₂)‖` when
/// `‖cᵢ−aᵢ‖ <= Rᵢ` and `max(‖aᵢ‖, ‖cᵢ‖) <= Cᵢ`.
pub fn bound_rep_difference<A: OmegaGroup, B: OmegaGroup>(
    f: &Representation<A, B>,
    c1: &Scalar,
    r1: &Scalar,
    c2: &Scalar,
    r2: &Scalar,
) -> Scalar {
    polyadditive_difference_bound(&f.norm_bound, &[c1.clone(), c2.clone()], &[r1.clone(), r2.clone()])
}

fn rep_delta<A: OmegaGroup, B: OmegaGroup>(f: &Representation<A, B>, c1: &Scalar, c2: &Scalar, eps: &Scalar) -> Scalar {
    invert_difference_bound(&f.norm_bound, &[c1.clone(), c2.clone()], eps)
}

/// `n ↦ f(s₁(n))(s₂(n))`, with the modulus derived from
/// [`bound_rep_difference`] and the tail caps of the inputs.
pub fn rep_seq<A: OmegaGroup, B: OmegaGroup>(
    f: &Representation<A, B>,
    s1: &CauchySequence<A>,
    s2: &CauchySequence<B>,
) -> CauchySequence<B> {
    if let (Some(a), Some(b)) = (s1.as_constant(), s2.as_constant()) {
        return CauchySequence::constant(Arc::clone(&f.target), f.act(a, b));
    }
    let (c1, c2) = (s1.tail_cap(), s2.tail_cap());
    let (r1, r2) = (s1.clone(), s2.clone());
    let rep = f.clone();
    let modulus = Modulus::new(move |k| {
        let m = rep_delta(&rep, &c1, &c2, &Scalar::pow2_neg(k)).precision_below();
        r1.rate(m).max(r2.rate(m))
    });
    let (g1, g2) = (s1.clone(), s2.clone());
    let rep = f.clone();
    CauchySequence::new(Arc::clone(&f.target), move |n| rep.act(&g1.at(n), &g2.at(n)), modulus)
}

/// The completion `g` of a representation: `g([a₁ₙ])([a₂ₙ]) = [f(a₁ₙ)(a₂ₙ)]`.
#[derive(Clone, Debug)]
pub struct CompletedRepresentation<A: OmegaGroup, B: OmegaGroup> {
    base: Representation<A, B>,
}

pub fn complete_representation<A: OmegaGroup, B: OmegaGroup>(
    f: &Representation<A, B>,
) -> CompletedRepresentation<A, B> {
    CompletedRepresentation { base: f.clone() }
}

impl<A: OmegaGroup, B: OmegaGroup> CompletedRepresentation<A, B> {
    pub fn base(&self) -> &Representation<A, B> {
        &self.base
    }

    pub fn apply(&self, x: &Completed<A>, y: &Completed<B>) -> Completed<B> {
        rep_seq(&self.base, x.rep(), y.rep()).into()
    }

    /// Compares `g(x)(y)` with `f(a₁)(a₂)` for base approximants `aᵢ` close
    /// enough that the two must lie within `2⁻ᵏ`; for embedded inputs this is
    /// the restriction law `g(embed a₁)(embed a₂) = embed(f(a₁)(a₂))`.
    pub fn restriction_check(&self, x: &Completed<A>, y: &Completed<B>, k: u32) -> Verdict {
        let two = Scalar::from_integer(2);
        let c1 = x.norm_approx(0) + &two;
        let c2 = y.norm_approx(0) + &two;
        let m = rep_delta(&self.base, &c1, &c2, &Scalar::pow2_neg(k + 1)).precision_below();
        let a1 = x.approx(m);
        let a2 = y.approx(m);
        let expected = Completed::embed(Arc::clone(&self.base.target), self.base.act(&a1, &a2));
        is_within(&self.apply(x, y), &expected, &Scalar::pow2_neg(k), k + 2)
    }
}

/// `f*(a)(g)(x) = f(a)(g(x))`, a representation of `A₁` in `M(X, A₂)`.
pub fn extend_to_maps<A: OmegaGroup, B: OmegaGroup>(
    f: &Representation<A, B>,
    points: Vec<String>,
) -> Result<Representation<A, MapGroup<B>>> {
    let target = Arc::new(MapGroup::new(points, Arc::clone(&f.target))?);
    let rep = f.clone();
    Representation::new(
        Arc::clone(&f.source),
        target,
        f.norm_bound.clone(),
        f.transports.clone(),
        move |a, g: &MapElem<B::Elem>| MapElem(g.0.iter().map(|m| rep.act(a, m)).collect()),
    )
}

/// `f_X(g₁)(g₂)(x) = f(g₁(x))(g₂(x))`, a representation of `M(X, A₁)` in `M(X, A₂)`.
pub fn induced_map_representation<A: OmegaGroup, B: OmegaGroup>(
    f: &Representation<A, B>,
    points: Vec<String>,
) -> Result<Representation<MapGroup<A>, MapGroup<B>>> {
    let source = Arc::new(MapGroup::new(points.clone(), Arc::clone(&f.source))?);
    let target = Arc::new(MapGroup::new(points, Arc::clone(&f.target))?);
    let rep = f.clone();
    Representation::new(
        source,
        target,
        f.norm_bound.clone(),
        f.transports.clone(),
        move |g1: &MapElem<A::Elem>, g2: &MapElem<B::Elem>| {
            MapElem(g1.0.iter().zip(&g2.0).map(|(a, m)| rep.act(a, m)).collect())
        },
    )
}

/// Samples `n_samples` pairs of distinct source elements and fails if some
/// pair acts identically on `probes` sampled target elements.
pub fn check_effective<A: OmegaGroup, B: OmegaGroup>(
    f: &Representation<A, B>,
    n_samples: usize,
    probes: usize,
    seed: u64,
) -> Result<()> {
    let mut rng = rng_from_seed(seed);
    let probe_points: Vec<B::Elem> = (0..probes.max(1)).map(|_| f.target.sample(&mut rng)).collect();
    for _ in 0..n_samples {
        let a = f.source.sample(&mut rng);
        let b = f.source.sample(&mut rng);
        if f.source.equal(&a, &b) {
            continue;
        }
        let distinguished = probe_points
            .iter()
            .any(|m| !f.target.equal(&f.act(&a, m), &f.act(&b, m)));
        if !distinguished {
            return Err(OmegaError::IneffectiveRepresentation(format!(
                "{a} and {b} act identically on {} probes",
                probe_points.len()
            )));
        }
    }
    Ok(())
}

/// The product `ab := f(a)(b)` induced by an effective representation of a
/// group in itself, with norm bound `‖f‖`.
pub fn omega_ring_product<A: OmegaGroup>(
    f: &Representation<A, A>,
    n_samples: usize,
    seed: u64,
) -> Result<OperationDescriptor<A::Elem>> {
    check_effective(f, n_samples, 8, seed)?;
    let rep = f.clone();
    Ok(OperationDescriptor::new(
        "rep_mul",
        2,
        f.norm_bound.clone(),
        move |args: &[A::Elem]| rep.act(&args[0], &args[1]),
    ))
}

/// Left and right distributivity of an induced product, checked exactly.
pub fn check_distributivity<A: OmegaGroup>(
    group: &A,
    product: &OperationDescriptor<A::Elem>,
    n_samples: usize,
    seed: u64,
) -> AxiomReport {
    let mut report = check_polyadditivity(group, product, n_samples, seed);
    report.suite = format!("distributivity:{}", product.symbol());
    for (check, side) in report.checks.iter_mut().zip(["left", "right"]) {
        check.name = side.into();
    }
    report
}

/// An effective representation of a ring in an abelian group.
#[derive(Clone, Debug)]
pub struct ModuleInstance<A: OmegaGroup, B: OmegaGroup> {
    action: Representation<A, B>,
}

impl<A: OmegaGroup, B: OmegaGroup> ModuleInstance<A, B> {
    pub fn new(action: Representation<A, B>, n_samples: usize, seed: u64) -> Result<Self> {
        check_effective(&action, n_samples, 8, seed)?;
        Ok(ModuleInstance { action })
    }

    pub fn ring(&self) -> &Arc<A> {
        self.action.source()
    }

    pub fn group(&self) -> &Arc<B> {
        self.action.target()
    }

    pub fn action(&self) -> &Representation<A, B> {
        &self.action
    }
}

/// `ℚ` acting on itself by multiplication.
pub fn q_mult() -> Representation<RationalAbs, RationalAbs> {
    let q = Arc::new(RationalAbs::new());
    let transports = q
        .ops()
        .iter()
        .map(|op| {
            if op.symbol() == "mul" {
                Transport::Composition
            } else {
                Transport::NotTransported
            }
        })
        .collect();
    Representation::new(Arc::clone(&q), q, Scalar::one(), transports, |a, b| a * b).expect("valid catalog entry")
}

/// `n×n` matrices acting on column vectors.
pub fn matrix_vec(dim: usize) -> Result<Representation<MatrixRing, ColumnVectors>> {
    let ring = Arc::new(MatrixRing::new(dim)?);
    let vectors = Arc::new(ColumnVectors::new(dim)?);
    Representation::new(ring, vectors, Scalar::one(), vec![Transport::Composition], |a, v| {
        a.apply(v)
    })
}

/// Octonions acting on themselves by left multiplication. The product does
/// not transport to composition since it is not associative.
pub fn octonion_left() -> Representation<OctonionAlgebra, OctonionAlgebra> {
    let o = Arc::new(OctonionAlgebra::new());
    Representation::new(
        Arc::clone(&o),
        o,
        Scalar::one(),
        vec![Transport::NotTransported],
        |a, b| a.mul(b),
    )
    .expect("valid catalog entry")
}
