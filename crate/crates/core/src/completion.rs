//! The completion of a normed Ω-group.
//!
//! Elements are lazy Cauchy sequences. Nothing here decides equality of
//! completion points: [`is_within`] answers Yes or No only when the computed
//! bounds settle the question, and Unknown otherwise.

use std::sync::Arc;

use crate::error::Result;
use crate::group::{OmegaGroup, OperationDescriptor};
use crate::scalar::Scalar;
use crate::sequences::{equivalent_upto, seq_add, seq_apply_op, seq_neg, CauchySequence, Modulus};

/// A point of the completion, represented by one of its Cauchy sequences.
pub struct Completed<G: OmegaGroup> {
    rep: CauchySequence<G>,
}

impl<G: OmegaGroup> Clone for Completed<G> {
    fn clone(&self) -> Self {
        Completed { rep: self.rep.clone() }
    }
}

impl<G: OmegaGroup> std::fmt::Debug for Completed<G> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Completed").field(&self.rep).finish()
    }
}

impl<G: OmegaGroup> From<CauchySequence<G>> for Completed<G> {
    fn from(rep: CauchySequence<G>) -> Self {
        Completed { rep }
    }
}

impl<G: OmegaGroup> Completed<G> {
    /// The constant sequence at `a`.
    pub fn embed(group: Arc<G>, a: G::Elem) -> Self {
        Completed {
            rep: CauchySequence::constant(group, a),
        }
    }

    pub fn rep(&self) -> &CauchySequence<G> {
        &self.rep
    }

    pub fn group(&self) -> &Arc<G> {
        self.rep.group()
    }

    /// Element of the base group within `2⁻ᵏ` of this point.
    pub fn approx(&self, k: u32) -> G::Elem {
        self.rep.at(self.rep.rate(k + 1))
    }

    /// Within `2⁻ᵏ` of the completion norm `lim ‖aₙ‖`.
    pub fn norm_approx(&self, k: u32) -> Scalar {
        self.group().norm(&self.approx(k))
    }

    pub fn add(&self, other: &Self) -> Self {
        seq_add(&self.rep, &other.rep).into()
    }

    pub fn neg(&self) -> Self {
        seq_neg(&self.rep).into()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn apply_op(op: &OperationDescriptor<G::Elem>, xs: &[Self]) -> Result<Self> {
        let reps: Vec<CauchySequence<G>> = xs.iter().map(|x| x.rep.clone()).collect();
        seq_apply_op(op, &reps).map(Into::into)
    }

    pub fn equivalent_upto(&self, other: &Self, k: u32) -> bool {
        equivalent_upto(&self.rep, &other.rep, k)
    }

    /// Exact value if this point was built from constants only.
    pub fn as_exact(&self) -> Option<&G::Elem> {
        self.rep.as_constant()
    }
}

/// Outcome of a bounded-effort distance query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// The bounds achieved at the given budget; retry with a larger budget.
    Unknown {
        lower: Scalar,
        upper: Scalar,
    },
}

/// Decides `‖x − y‖ <= ε` from an approximation of `x − y` at precision
/// `budget_k`. Never wrong when the answer is not Unknown.
pub fn is_within<G: OmegaGroup>(x: &Completed<G>, y: &Completed<G>, eps: &Scalar, budget_k: u32) -> Verdict {
    assert!(!eps.is_zero(), "ε must be positive");
    if x.rep.same_generator(&y.rep) {
        return Verdict::Yes;
    }
    let g = x.group();
    if let (Some(a), Some(b)) = (x.as_exact(), y.as_exact()) {
        return if &g.distance(a, b) <= eps {
            Verdict::Yes
        } else {
            Verdict::No
        };
    }
    let diff = x.sub(y);
    let centre = diff.norm_approx(budget_k);
    let slack = Scalar::pow2_neg(budget_k);
    let upper = &centre + &slack;
    let lower = centre.saturating_sub(&slack);
    if &upper <= eps {
        Verdict::Yes
    } else if &lower > eps {
        Verdict::No
    } else {
        Verdict::Unknown { lower, upper }
    }
}

/// Limit of a sequence of completion points `xₙ` whose modulus `outer`
/// satisfies `‖xₚ − x_q‖ <= 2⁻ᵏ` for `p, q >= outer(k)`.
pub fn diagonal_limit<G: OmegaGroup>(
    group: Arc<G>,
    terms: impl Fn(u64) -> Completed<G> + Send + Sync + 'static,
    outer: Modulus,
) -> Completed<G> {
    crate::sequences::diagonal(group, move |n| terms(n).rep, outer).into()
}

/// One comparison made by [`completion_uniqueness_suite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessCheck {
    pub pair: usize,
    pub k: u32,
    pub what: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniquenessReport {
    pub checks: Vec<UniquenessCheck>,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn pair_passed(&self, pair: usize) -> bool {
        self.checks.iter().filter(|c| c.pair == pair).all(|c| c.pass)
    }
}

/// For pairs that should denote the same point, checks at every `k <= k_max`
/// that the representatives are equivalent, that their norms agree within
/// `2⁻ᵏ⁺²`, and that sums and every operation of `group` applied to them
/// stay equivalent.
pub fn completion_uniqueness_suite<G: OmegaGroup>(
    group: &G,
    pairs: &[(Completed<G>, Completed<G>)],
    k_max: u32,
) -> UniquenessReport {
    let mut report = UniquenessReport::default();
    for (i, (x, y)) in pairs.iter().enumerate() {
        let sum_x = x.add(x);
        let sum_y = y.add(y);
        let lifted: Vec<(String, Completed<G>, Completed<G>)> = group
            .ops()
            .iter()
            .filter_map(|op| {
                let fx = Completed::apply_op(op, &vec![x.clone(); op.arity()]).ok()?;
                let fy = Completed::apply_op(op, &vec![y.clone(); op.arity()]).ok()?;
                Some((op.symbol().to_string(), fx, fy))
            })
            .collect();
        for k in 0..=k_max {
            let mut push = |what: String, pass: bool| report.checks.push(UniquenessCheck { pair: i, k, what, pass });
            push("equivalent".into(), x.equivalent_upto(y, k));
            let tol = if k >= 2 {
                Scalar::pow2_neg(k - 2)
            } else {
                Scalar::from_integer(1 << (2 - k))
            };
            push("norm".into(), x.norm_approx(k).abs_diff(&y.norm_approx(k)) <= tol);
            push("add".into(), sum_x.equivalent_upto(&sum_y, k));
            for (symbol, fx, fy) in &lifted {
                push(format!("op:{symbol}"), fx.equivalent_upto(fy, k));
            }
        }
    }
    report
}
