//! Acceptance criteria. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::thread;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};

use omega_core::completion::{completion_uniqueness_suite, Completed, Verdict};
use omega_core::group::{
    bound_op_difference, check_group_axioms, check_norm_axioms, check_op_norm_bound, check_polyadditivity,
    check_reverse_triangle, invert_epsilon_bound, op_norm_estimate, OmegaGroup, SampleRng,
};
use omega_core::instances::{
    octonion_nonassociativity_witness, InstanceSpec, InstanceVisitor, MapElem, MapGroup, Matrix, MatrixRing,
    OctonionAlgebra, RationalAbs, RationalPadic,
};
use omega_core::representation::{
    bound_rep_difference, check_distributivity, complete_representation, induced_map_representation, matrix_vec,
    octonion_left, omega_ring_product, q_mult, rep_norm_estimate, Representation, Transport,
};
use omega_core::sequences::catalog::{
    babylonian_sqrt, bisection_sqrt, digits_for_precision, eventually_constant, hensel_sqrt, padic_digits,
};
use omega_core::sequences::{
    check_limit, equivalent_upto, seq_add, seq_apply_op, uniform_convergence_check, CauchySequence,
};
use omega_core::{ElementSyntax, Scalar};

const INSTANCES: [&str; 6] = ["q-abs", "q-padic:7", "q-padic:2", "matrix:3", "octonion", "map:2:q-abs"];

struct Outcome {
    id: u32,
    title: String,
    pass: bool,
    detail: String,
}

fn report(id: u32, title: &str, pass: bool, detail: &str) -> Outcome {
    Outcome {
        id,
        title: title.into(),
        pass,
        detail: detail.into(),
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow2_neg(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

fn visit<V: InstanceVisitor>(spec: &str, v: V) -> V::Output {
    spec.parse::<InstanceSpec>().unwrap().visit(v).unwrap()
}

/// Independent bracket for `√q` by bisection on `x² − q` over `[0, max(1, q)]`.
fn bisection_oracle(radicand: &BigRational, steps: u32) -> (BigRational, BigRational) {
    let (mut lo, mut hi) = (BigRational::zero(), radicand.clone().max(BigRational::one()));
    let two = q(2, 1);
    for _ in 0..steps {
        let mid = (&lo + &hi) / &two;
        if &mid * &mid <= *radicand {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn within_bracket(x: &BigRational, bracket: &(BigRational, BigRational), tol: &BigRational) -> bool {
    (x - &bracket.0).abs() <= *tol && (x - &bracket.1).abs() <= *tol
}

/// `v_p(n)` for a nonzero integer by repeated division.
fn int_valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

// ---------------------------------------------------------------- 1

struct Conformance;

impl InstanceVisitor for Conformance {
    type Output = Vec<(String, bool)>;

    fn visit<G: ElementSyntax>(self, g: Arc<G>) -> Self::Output {
        let mut reports = vec![check_group_axioms(&*g, 1000, 11), check_norm_axioms(&*g, 1000, 12)];
        for op in g.ops() {
            reports.push(check_polyadditivity(&*g, op, 1000, 13));
        }
        reports.push(check_reverse_triangle(&*g, 1000, 14));
        reports
            .into_iter()
            .map(|r| (r.suite.clone(), r.all_pass() && r.samples() >= 1000))
            .collect()
    }
}

fn criterion_01_axiom_conformance() -> Outcome {
    let mut failures = Vec::new();
    let mut suites = 0;
    for spec in INSTANCES {
        for (suite, pass) in visit(spec, Conformance) {
            suites += 1;
            if !pass {
                failures.push(format!("{spec}/{suite}"));
            }
        }
    }
    report(
        1,
        "axiom conformance",
        failures.is_empty(),
        &format!(
            "{suites} suites over {} instances, 1000 samples each, failures: {failures:?}",
            INSTANCES.len()
        ),
    )
}

// ---------------------------------------------------------------- 2

struct OpNorms;

impl InstanceVisitor for OpNorms {
    type Output = Vec<(String, bool)>;

    fn visit<G: ElementSyntax>(self, g: Arc<G>) -> Self::Output {
        g.ops()
            .iter()
            .map(|op| {
                let bounded = check_op_norm_bound(&*g, op, 1000, 21);
                let estimate = op_norm_estimate(&*g, op, 1000, 22).unwrap();
                let pass = bounded.all_pass() && bounded.samples() >= 1000 && &estimate <= op.norm_bound();
                (op.symbol().to_string(), pass)
            })
            .collect()
    }
}

fn criterion_02_operation_norm_soundness() -> Outcome {
    let mut failures = Vec::new();
    let mut ops = 0;
    for spec in INSTANCES {
        for (symbol, pass) in visit(spec, OpNorms) {
            ops += 1;
            if !pass {
                failures.push(format!("{spec}/{symbol}"));
            }
        }
    }
    report(
        2,
        "operation-norm soundness",
        failures.is_empty(),
        &format!("{ops} operations, 1000 tuples each, failures: {failures:?}"),
    )
}

// ---------------------------------------------------------------- 3

/// `‖ω‖ Σ_{S≠∅} ∏_{i∈S} Rᵢ ∏_{j∉S} Cⱼ` by explicit subset enumeration.
fn subset_bound(norm: &BigRational, caps: &[BigRational], radii: &[BigRational]) -> BigRational {
    let n = caps.len();
    let mut total = BigRational::zero();
    for mask in 1u32..(1 << n) {
        let mut term = BigRational::one();
        for i in 0..n {
            term *= if mask & (1 << i) != 0 { &radii[i] } else { &caps[i] };
        }
        total += term;
    }
    norm * total
}

struct DifferenceBounds;

impl InstanceVisitor for DifferenceBounds {
    /// (checks, violations, oracle mismatches)
    type Output = (usize, usize, usize);

    fn visit<G: ElementSyntax>(self, g: Arc<G>) -> Self::Output {
        let mut rng = SampleRng::seed_from_u64(31);
        let (mut checks, mut violations, mut mismatches) = (0, 0, 0);
        for op in g.ops() {
            for _ in 0..500 {
                let a: Vec<G::Elem> = (0..op.arity()).map(|_| g.sample(&mut rng)).collect();
                let d: Vec<G::Elem> = (0..op.arity()).map(|_| g.sample(&mut rng)).collect();
                let c: Vec<G::Elem> = a.iter().zip(&d).map(|(x, y)| g.add(x, y)).collect();
                let radii: Vec<Scalar> = d.iter().map(|x| g.norm(x)).collect();
                let caps: Vec<Scalar> = a.iter().zip(&c).map(|(x, y)| g.norm(x).max(g.norm(y))).collect();
                let actual = g.distance(&op.apply(&c), &op.apply(&a));
                let bound = bound_op_difference(op, &caps, &radii);
                let oracle = subset_bound(
                    op.norm_bound().value(),
                    &caps.iter().map(|s| s.value().clone()).collect::<Vec<_>>(),
                    &radii.iter().map(|s| s.value().clone()).collect::<Vec<_>>(),
                );
                checks += 1;
                violations += usize::from(actual > bound);
                mismatches += usize::from(bound.value() != &oracle);
            }
        }
        (checks, violations, mismatches)
    }
}

fn rep_difference_violations<A: OmegaGroup, B: OmegaGroup>(f: &Representation<A, B>, seed: u64) -> (usize, usize) {
    let mut rng = SampleRng::seed_from_u64(seed);
    let (src, tgt) = (f.source(), f.target());
    let mut violations = 0;
    for _ in 0..500 {
        let (a1, d1) = (src.sample(&mut rng), src.sample(&mut rng));
        let (a2, d2) = (tgt.sample(&mut rng), tgt.sample(&mut rng));
        let (c1, c2) = (src.add(&a1, &d1), tgt.add(&a2, &d2));
        let cap1 = src.norm(&a1).max(src.norm(&c1));
        let cap2 = tgt.norm(&a2).max(tgt.norm(&c2));
        let bound = bound_rep_difference(f, &cap1, &src.norm(&d1), &cap2, &tgt.norm(&d2));
        let actual = tgt.distance(&f.act(&c1, &c2), &f.act(&a1, &a2));
        violations += usize::from(actual > bound);
    }
    (500, violations)
}

fn criterion_03_difference_bound_soundness() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for spec in INSTANCES {
        let (checks, violations, mismatches) = visit(spec, DifferenceBounds);
        pass &= violations == 0 && mismatches == 0 && checks >= 500;
        detail.push(format!(
            "{spec}: {checks} checks/{violations} violations/{mismatches} oracle mismatches"
        ));
    }
    for (name, (checks, violations)) in [
        ("q-mult", rep_difference_violations(&q_mult(), 32)),
        ("matrix-vec:3", rep_difference_violations(&matrix_vec(3).unwrap(), 33)),
        ("octonion-left", rep_difference_violations(&octonion_left(), 34)),
    ] {
        pass &= violations == 0;
        detail.push(format!("{name}: {checks} checks/{violations} violations"));
    }

    // forward re-check of the inverse bound on random (ε, caps)
    let mut rng = SampleRng::seed_from_u64(35);
    let mut forward_failures = 0;
    let rationals = RationalAbs::new();
    for _ in 0..100 {
        let op = &rationals.ops()[rng.random_range(0..rationals.ops().len())];
        let eps = Scalar::ratio(rng.random_range(1..=1000), 1 << rng.random_range(0..40));
        let caps: Vec<Scalar> = (0..op.arity())
            .map(|_| Scalar::ratio(rng.random_range(0..=5000), rng.random_range(1..=50)))
            .collect();
        let delta = invert_epsilon_bound(op, &caps, &eps);
        let widened: Vec<Scalar> = caps.iter().map(|c| c + &delta).collect();
        let forward = bound_op_difference(op, &widened, &vec![delta.clone(); op.arity()]);
        forward_failures += usize::from(delta.is_zero() || forward > eps);
    }
    pass &= forward_failures == 0;
    detail.push(format!(
        "inverse forward re-check: 100 cases/{forward_failures} failures"
    ));
    report(3, "difference-bound soundness", pass, &detail.join("; "))
}

// ---------------------------------------------------------------- 4

fn criterion_04_exact_real_oracle() -> Outcome {
    let g = Arc::new(RationalAbs::new());
    let oracle = bisection_oracle(&q(2, 1), 45);
    let sqrt2: Completed<RationalAbs> = RationalAbs::named_element(&g, "sqrt", "2").unwrap().into();
    let a30 = sqrt2.approx(30);
    let sqrt_ok = within_bracket(&a30, &oracle, &pow2_neg(30));

    let mul = g.op("mul").unwrap();
    let square = Completed::apply_op(mul, &[sqrt2.clone(), sqrt2]).unwrap();
    let s20 = square.approx(20);
    let square_err = (&s20 - q(2, 1)).abs();
    let square_ok = square_err <= pow2_neg(18);
    report(
        4,
        "exact-real oracle agreement",
        sqrt_ok && square_ok,
        &format!(
            "|sqrt2@30 - bisection| <= 2^-30: {sqrt_ok}; |sqrt2*sqrt2@20 - 2| = {:.3e} <= 2^-18: {square_ok}",
            f64_of(&square_err)
        ),
    )
}

fn f64_of(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------- 5

/// Digits of a square root of `radicand` in `ℤ_p`, found one digit at a time
/// by trying all `p` candidates, starting from the smallest root mod `p`.
fn brute_force_root_digits(radicand: i64, p: u64, count: u32) -> Vec<u64> {
    let pb = BigInt::from(p);
    let a = BigInt::from(radicand);
    let mut root = (0..p)
        .map(BigInt::from)
        .find(|r| ((r * r - &a).mod_floor(&pb)).is_zero())
        .expect("quadratic residue");
    let mut digits = vec![(&root % &pb).try_into().unwrap()];
    let mut power = pb.clone();
    for _ in 1..count {
        let next_power = &power * &pb;
        let d = (0..p)
            .find(|d| {
                let candidate = &root + BigInt::from(*d) * &power;
                (&candidate * &candidate - &a).mod_floor(&next_power).is_zero()
            })
            .expect("lift exists");
        digits.push(d);
        root += BigInt::from(d) * &power;
        power = next_power;
    }
    digits
}

fn criterion_05_padic_oracle() -> Outcome {
    let g = Arc::new(RationalPadic::new(7).unwrap());
    let root: Completed<RationalPadic> = hensel_sqrt(Arc::clone(&g), q(2, 1)).unwrap().into();
    // 7¹⁰ >= 2²⁸
    let k = 28;
    let m = digits_for_precision(7, k);
    let approx = root.approx(k);
    let digits = padic_digits(&approx, 7, m).unwrap();
    let oracle = brute_force_root_digits(2, 7, 10);
    let digits_ok = m == 10 && digits == oracle;

    let diff = &approx * &approx - q(2, 1);
    let close = diff.is_zero() || (int_valuation(diff.numer(), 7) >= 10 && int_valuation(diff.denom(), 7) == 0);
    report(
        5,
        "p-adic oracle agreement",
        digits_ok && close,
        &format!("digits {digits:?} vs brute-force {oracle:?}; |x^2 - 2|_7 <= 7^-10: {close}"),
    )
}

// ---------------------------------------------------------------- 6

struct EmbedHomomorphism;

impl InstanceVisitor for EmbedHomomorphism {
    type Output = (usize, usize);

    fn visit<G: ElementSyntax>(self, g: Arc<G>) -> Self::Output {
        let mut rng = SampleRng::seed_from_u64(61);
        let mut failures = 0;
        for _ in 0..500 {
            let (a, b) = (g.sample(&mut rng), g.sample(&mut rng));
            let (ea, eb) = (
                Completed::embed(Arc::clone(&g), a.clone()),
                Completed::embed(Arc::clone(&g), b.clone()),
            );
            let mut ok = ea.add(&eb).as_exact().is_some_and(|s| g.equal(s, &g.add(&a, &b)));
            ok &= ea.neg().as_exact().is_some_and(|s| g.equal(s, &g.neg(&a)));
            ok &= [0, 7, 40].iter().all(|&k| ea.norm_approx(k) == g.norm(&a));
            for op in g.ops() {
                let args: Vec<G::Elem> = (0..op.arity())
                    .map(|i| if i % 2 == 0 { a.clone() } else { b.clone() })
                    .collect();
                let embedded: Vec<Completed<G>> = args
                    .iter()
                    .map(|x| Completed::embed(Arc::clone(&g), x.clone()))
                    .collect();
                let lifted = Completed::apply_op(op, &embedded).unwrap();
                ok &= lifted.as_exact().is_some_and(|v| g.equal(v, &op.apply(&args)));
            }
            failures += usize::from(!ok);
        }
        (500, failures)
    }
}

fn criterion_06_completion_laws() -> Outcome {
    let g = Arc::new(RationalAbs::new());
    let k = 20;
    let bab: Completed<RationalAbs> = babylonian_sqrt(Arc::clone(&g), q(2, 1)).unwrap().into();
    let bis: Completed<RationalAbs> = bisection_sqrt(Arc::clone(&g), q(2, 1)).unwrap().into();
    let third = Completed::embed(Arc::clone(&g), q(1, 3));
    let mul = g.op("mul").unwrap();
    let mut checks: Vec<(&str, bool)> = Vec::new();

    checks.push(("representatives", bab.equivalent_upto(&bis, k)));
    checks.push((
        "add",
        bab.add(&third).equivalent_upto(&bis.add(&third), k) && bab.add(&bab).equivalent_upto(&bis.add(&bis), k),
    ));
    let m_bab = Completed::apply_op(mul, &[bab.clone(), bab.clone()]).unwrap();
    let m_bis = Completed::apply_op(mul, &[bis.clone(), bis.clone()]).unwrap();
    let m_mix = Completed::apply_op(mul, &[bab.clone(), bis.clone()]).unwrap();
    checks.push((
        "mult",
        m_bab.equivalent_upto(&m_bis, k) && m_mix.equivalent_upto(&m_bis, k),
    ));

    // each norm is within 2⁻ᵏ of √2
    let oracle = bisection_oracle(&q(2, 1), 40);
    let tol = pow2_neg(k) + pow2_neg(40);
    let nb = bab.norm_approx(k).into_inner();
    let ns = bis.norm_approx(k).into_inner();
    checks.push((
        "norm_approx",
        within_bracket(&nb, &oracle, &tol)
            && within_bracket(&ns, &oracle, &tol)
            && (&nb - &ns).abs() <= pow2_neg(k - 1),
    ));

    let rep = complete_representation(&q_mult());
    let two = Completed::embed(Arc::clone(&g), q(2, 1));
    let out_bab = rep.apply(&bab, &bab);
    let out_bis = rep.apply(&bis, &bis);
    let out_ok = out_bab.equivalent_upto(&out_bis, k)
        && out_bab.equivalent_upto(&two, k)
        && rep.apply(&bab, &third).equivalent_upto(&rep.apply(&bis, &third), k)
        && (out_bab.approx(k) - q(2, 1)).abs() <= pow2_neg(k);
    checks.push(("complete_representation", out_ok));

    let suite = completion_uniqueness_suite(&*g, &[(bab.clone(), bis.clone())], k);
    checks.push(("uniqueness suite", suite.passed()));

    let mut embed_failures = 0;
    for spec in ["q-abs", "q-padic:7", "matrix:3", "octonion"] {
        embed_failures += visit(spec, EmbedHomomorphism).1;
    }
    checks.push(("embed homomorphism (500 samples x 4 instances)", embed_failures == 0));

    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    report(
        6,
        "completion laws",
        failed.is_empty(),
        &format!("{} checks at k={k}, failed: {failed:?}", checks.len()),
    )
}

// ---------------------------------------------------------------- 7

/// A sequence over `ℚ` with a known rational limit, rebuilt from scratch on
/// every call so that copies never share a generator.
#[derive(Clone, Debug)]
enum Recipe {
    Constant(BigRational),
    Geometric {
        limit: BigRational,
        offset: BigRational,
        ratio: BigRational,
    },
    Bumped {
        limit: BigRational,
        bump: BigRational,
        switch: u64,
    },
    Root {
        limit: BigRational,
    },
    Bisection {
        limit: BigRational,
    },
}

impl Recipe {
    fn limit(&self) -> &BigRational {
        match self {
            Recipe::Constant(l) => l,
            Recipe::Geometric { limit, .. }
            | Recipe::Bumped { limit, .. }
            | Recipe::Root { limit }
            | Recipe::Bisection { limit } => limit,
        }
    }

    fn build(&self, g: &Arc<RationalAbs>) -> CauchySequence<RationalAbs> {
        match self {
            Recipe::Constant(l) => CauchySequence::constant(Arc::clone(g), l.clone()),
            Recipe::Geometric { limit, offset, ratio } => {
                CauchySequence::geometric_approach(Arc::clone(g), limit.clone(), offset.clone(), ratio.clone()).unwrap()
            }
            Recipe::Bumped { limit, bump, switch } => {
                eventually_constant(Arc::clone(g), limit.clone(), bump.clone(), *switch)
            }
            Recipe::Root { limit } => babylonian_sqrt(Arc::clone(g), limit * limit).unwrap(),
            Recipe::Bisection { limit } => bisection_sqrt(Arc::clone(g), limit * limit).unwrap(),
        }
    }

    /// Limits are multiples of 4, so distinct limits are never within the
    /// tolerance of any level.
    fn random(rng: &mut SampleRng, limit: Option<&BigRational>) -> Recipe {
        let limit = limit.cloned().unwrap_or_else(|| q(4 * rng.random_range(-2..=2), 1));
        let small = |rng: &mut SampleRng| q(rng.random_range(-20..=20), rng.random_range(1..=8));
        match rng.random_range(0..5) {
            0 => Recipe::Constant(limit),
            1 => {
                let ratio = q(rng.random_range(-7..=7), 8);
                Recipe::Geometric {
                    limit,
                    offset: small(rng),
                    ratio,
                }
            }
            2 => Recipe::Bumped {
                limit,
                bump: small(rng),
                switch: rng.random_range(0..40),
            },
            3 => Recipe::Root { limit: limit.abs() },
            _ => Recipe::Bisection { limit: limit.abs() },
        }
    }
}

fn criterion_07_equivalence_relation() -> Outcome {
    let g = Arc::new(RationalAbs::new());
    let mut rng = SampleRng::seed_from_u64(71);
    let (mut reflexive, mut symmetric, mut transitive, mut decided) = (0, 0, 0, 0);
    let (mut checks, mut transitivity_premises) = (0, 0);
    for _ in 0..100 {
        // half of the later members share the first member's limit
        let r = Recipe::random(&mut rng, None);
        let (share_s, share_t) = (rng.random_bool(0.5), rng.random_bool(0.5));
        let s = Recipe::random(&mut rng, share_s.then_some(r.limit()));
        let t = Recipe::random(&mut rng, share_t.then_some(r.limit()));
        let (x, x2, y, z) = (r.build(&g), r.build(&g), s.build(&g), t.build(&g));
        for k in 0..=20 {
            checks += 1;
            reflexive += usize::from(!equivalent_upto(&x, &x2, k));
            let xy = equivalent_upto(&x, &y, k);
            symmetric += usize::from(xy != equivalent_upto(&y, &x, k));
            decided += usize::from(xy != (r.limit() == s.limit()));
            if k < 20 && equivalent_upto(&x, &y, k + 1) && equivalent_upto(&y, &z, k + 1) {
                transitivity_premises += 1;
                transitive += usize::from(!equivalent_upto(&x, &z, k));
            }
        }
    }
    let pass = reflexive == 0 && symmetric == 0 && transitive == 0 && decided == 0;
    report(
        7,
        "equivalence-relation behavior",
        pass,
        &format!(
            "100 triples x k<=20 ({checks} checks): reflexivity/symmetry/limit-oracle failures {reflexive}/{symmetric}/{decided}; transitivity {transitive} failures over {transitivity_premises} premises"
        ),
    )
}

// ---------------------------------------------------------------- 8

fn geometric_pair<G: OmegaGroup<Elem = BigRational>>(
    g: &Arc<G>,
    rng: &mut SampleRng,
    ratios: &[BigRational],
) -> (CauchySequence<G>, BigRational) {
    let limit = q(rng.random_range(-40..=40), rng.random_range(1..=9));
    let offset = q(rng.random_range(-40..=40), rng.random_range(1..=9));
    let ratio = ratios[rng.random_range(0..ratios.len())].clone();
    (
        CauchySequence::geometric_approach(Arc::clone(g), limit.clone(), offset, ratio).unwrap(),
        limit,
    )
}

fn limit_arithmetic<G: OmegaGroup<Elem = BigRational>>(
    g: &Arc<G>,
    ratios: &[BigRational],
    pairs: usize,
    seed: u64,
) -> (usize, usize) {
    let mut rng = SampleRng::seed_from_u64(seed);
    let k = 15;
    let mut failures = 0;
    let off = q(1, 1);
    for _ in 0..pairs {
        let (s, l1) = geometric_pair(g, &mut rng, ratios);
        let (t, l2) = geometric_pair(g, &mut rng, ratios);
        let sum = seq_add(&s, &t);
        failures += usize::from(!check_limit(&sum, &(&l1 + &l2), k));
        failures += usize::from(check_limit(&sum, &(&l1 + &l2 + &off), k));
        for op in g.ops() {
            let args: Vec<CauchySequence<G>> = (0..op.arity())
                .map(|i| if i % 2 == 0 { s.clone() } else { t.clone() })
                .collect();
            let expected = (0..op.arity()).fold(BigRational::one(), |acc, i| acc * if i % 2 == 0 { &l1 } else { &l2 });
            let lifted = seq_apply_op(op, &args).unwrap();
            failures += usize::from(!check_limit(&lifted, &expected, k));
            failures += usize::from(check_limit(&lifted, &(&expected + &off), k));
        }
    }
    (pairs, failures)
}

fn criterion_08_limit_arithmetic() -> Outcome {
    let real_ratios = [q(1, 2), q(-2, 3), q(3, 4), q(1, 10), q(-7, 8)];
    let padic_ratios = [q(7, 1), q(-14, 3), q(49, 5), q(7, 2)];
    let (n1, f1) = limit_arithmetic(&Arc::new(RationalAbs::new()), &real_ratios, 30, 81);
    let (n2, f2) = limit_arithmetic(&Arc::new(RationalPadic::new(7).unwrap()), &padic_ratios, 20, 82);
    report(
        8,
        "limit arithmetic",
        f1 + f2 == 0,
        &format!("{} convergent pairs (q-abs {n1}, q-padic:7 {n2}) at k=15, sums and every operation, with off-limit controls; failures {}", n1 + n2, f1 + f2),
    )
}

// ---------------------------------------------------------------- 9

fn restriction_failures<A: OmegaGroup, B: OmegaGroup>(f: &Representation<A, B>, pairs: usize, seed: u64) -> usize {
    let mut rng = SampleRng::seed_from_u64(seed);
    let g = complete_representation(f);
    let (src, tgt) = (f.source(), f.target());
    let mut failures = 0;
    for _ in 0..pairs {
        let (a1, a2) = (src.sample(&mut rng), tgt.sample(&mut rng));
        let expected = Completed::embed(Arc::clone(tgt), f.act(&a1, &a2));
        let x = Completed::embed(Arc::clone(src), a1.clone());
        let y = Completed::embed(Arc::clone(tgt), a2.clone());
        let mut ok = g.apply(&x, &y).equivalent_upto(&expected, 20);
        // the same points through non-constant representatives
        let xb: Completed<A> = eventually_constant(
            Arc::clone(src),
            a1.clone(),
            src.sample(&mut rng),
            rng.random_range(1..30),
        )
        .into();
        let yb: Completed<B> = eventually_constant(
            Arc::clone(tgt),
            a2.clone(),
            tgt.sample(&mut rng),
            rng.random_range(1..30),
        )
        .into();
        ok &= g.apply(&xb, &yb).equivalent_upto(&expected, 20);
        ok &= g.restriction_check(&x, &y, 20) == Verdict::Yes;
        failures += usize::from(!ok);
    }
    failures
}

fn criterion_09_representation_laws() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;

    let bounds = [
        (
            "q-mult",
            q_mult().check_norm_bound(1000, 91).all_pass()
                && rep_norm_estimate(&q_mult(), 1000, 92).unwrap() <= Scalar::one(),
        ),
        (
            "matrix-vec:3",
            matrix_vec(3).unwrap().check_norm_bound(1000, 91).all_pass(),
        ),
        ("octonion-left", octonion_left().check_norm_bound(1000, 91).all_pass()),
    ];
    for (name, ok) in bounds {
        pass &= ok;
        detail.push(format!("norm bound {name}: {ok}"));
    }

    let restriction = restriction_failures(&q_mult(), 200, 93)
        + restriction_failures(&matrix_vec(3).unwrap(), 200, 94)
        + restriction_failures(&octonion_left(), 200, 95);
    pass &= restriction == 0;
    detail.push(format!("restriction law 3x200 pairs at k=20: {restriction} failures"));

    let qa = Arc::new(RationalAbs::new());
    let q_prod = omega_ring_product(&q_mult(), 200, 96).unwrap();
    let m3 = Arc::new(MatrixRing::new(3).unwrap());
    let left = Representation::new(
        Arc::clone(&m3),
        Arc::clone(&m3),
        Scalar::one(),
        vec![Transport::Composition],
        |a: &Matrix, b: &Matrix| a.mul(b),
    )
    .unwrap();
    let m_prod = omega_ring_product(&left, 200, 96).unwrap();
    let o = Arc::new(OctonionAlgebra::new());
    let o_prod = omega_ring_product(&octonion_left(), 200, 96).unwrap();
    let distributive = [
        check_distributivity(&*qa, &q_prod, 1000, 97).all_pass(),
        check_distributivity(&*m3, &m_prod, 1000, 97).all_pass(),
        check_distributivity(&*o, &o_prod, 1000, 97).all_pass(),
    ];
    pass &= distributive.iter().all(|ok| *ok);
    detail.push(format!(
        "distributivity (q, matrix:3, octonion) 1000 samples: {distributive:?}"
    ));

    let w = octonion_nonassociativity_witness();
    let via_product = o_prod.apply(&[o_prod.apply(&[w.a.clone(), w.b.clone()]), w.c.clone()]);
    let via_product_right = o_prod.apply(&[w.a.clone(), o_prod.apply(&[w.b.clone(), w.c.clone()])]);
    let nonassoc = w.left != w.right && via_product == w.left && via_product_right == w.right && distributive[2];
    pass &= nonassoc;
    detail.push(format!(
        "nonassociativity witness ({})({})({}): {} vs {}",
        w.a, w.b, w.c, w.left, w.right
    ));
    report(9, "representation laws", pass, &detail.join("; "))
}

// ---------------------------------------------------------------- 10

fn criterion_10_uniform_convergence() -> Outcome {
    let q_abs = Arc::new(RationalAbs::new());
    let space = MapGroup::with_size(4, Arc::clone(&q_abs)).unwrap();
    let limits = |seed: i64| -> Vec<BigRational> { (0..4).map(|i| q(seed * 3 - i * 5, i + 1)).collect() };
    let ratios = &[q(1, 2), q(-3, 4), q(2, 3), q(-1, 5)];
    // fₙ(xᵢ) = Lᵢ + cᵢ rᵢⁿ
    let family = |l: Vec<BigRational>, c: i64| {
        move |n: u64| -> MapElem<BigRational> {
            MapElem(
                (0..4)
                    .map(|i| {
                        let r = &ratios[i];
                        &l[i] + q(c + i as i64, 1) * (0..n).fold(BigRational::one(), |acc, _| acc * r)
                    })
                    .collect(),
            )
        }
    };
    let (lf, lg, lh) = (limits(1), limits(-2), limits(3));
    let (f, g, h) = (family(lf.clone(), 3), family(lg.clone(), -5), family(lh.clone(), 7));

    let sum_limit = MapElem((0..4).map(|i| &lf[i] + &lg[i]).collect());
    let sum = uniform_convergence_check(&space, |n| space.add(&f(n), &g(n)), &sum_limit, 12);

    let triple = space.op("triple").unwrap();
    let triple_limit = MapElem((0..4).map(|i| &lf[i] * &lg[i] * &lh[i]).collect());
    let lifted = uniform_convergence_check(&space, |n| triple.apply(&[f(n), g(n), h(n)]), &triple_limit, 12);

    let points: Vec<String> = space.points().to_vec();
    let induced = induced_map_representation(&q_mult(), points).unwrap();
    let product_limit = MapElem((0..4).map(|i| &lf[i] * &lg[i]).collect());
    let composite = uniform_convergence_check(&space, |n| induced.act(&f(n), &g(n)), &product_limit, 12);

    let pass = sum.passed() && lifted.passed() && composite.passed();
    let last = |r: &omega_core::sequences::UniformReport| r.levels.last().and_then(|l| l.threshold);
    report(
        10,
        "map-group uniform convergence",
        pass,
        &format!(
            "|X|=4, k_max=12, thresholds at k=12: sum {:?}, triple {:?}, f_X composite {:?}",
            last(&sum),
            last(&lifted),
            last(&composite)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_01_axiom_conformance,
        criterion_02_operation_norm_soundness,
        criterion_03_difference_bound_soundness,
        criterion_04_exact_real_oracle,
        criterion_05_padic_oracle,
        criterion_06_completion_laws,
        criterion_07_equivalence_relation,
        criterion_08_limit_arithmetic,
        criterion_09_representation_laws,
        criterion_10_uniform_convergence,
    ];
    let start = Instant::now();
    let outcomes: Vec<Outcome> = thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .enumerate()
            .map(|(i, run)| (i, scope.spawn(run)))
            .collect();
        handles
            .into_iter()
            .map(|(i, h)| {
                h.join()
                    .unwrap_or_else(|_| report(i as u32 + 1, "criterion", false, "panicked"))
            })
            .collect()
    });
    let mut failed = 0;
    for o in &outcomes {
        println!(
            "[{}] criterion {:>2}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        outcomes.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
