use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

use omega_core::group::{invert_difference_bound, polyadditive_difference_bound, OmegaGroup};
use omega_core::instances::{padic_valuation, MatrixRing, OctonionAlgebra, RationalAbs, RationalPadic};
use omega_core::sequences::catalog::babylonian_sqrt;
use omega_core::sequences::{check_limit, equivalent_upto, CauchySequence};
use omega_core::syntax::ElementSyntax;
use omega_core::Scalar;

fn scalar() -> impl Strategy<Value = Scalar> {
    (0u64..500, 1u64..40).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn positive() -> impl Strategy<Value = Scalar> {
    (1u64..500, 1u64..1 << 20).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-400i64..400, 1i64..60).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #[test]
    fn difference_bound_is_monotone(
        caps in prop::collection::vec(scalar(), 1..4),
        radii in prop::collection::vec(scalar(), 4),
        bump in scalar(),
        norm in scalar(),
        slot in 0usize..4,
    ) {
        let n = caps.len();
        let radii = &radii[..n];
        let slot = slot % n;
        let base = polyadditive_difference_bound(&norm, &caps, radii);
        let mut wider_caps = caps.clone();
        wider_caps[slot] = &wider_caps[slot] + &bump;
        let mut wider_radii = radii.to_vec();
        wider_radii[slot] = &wider_radii[slot] + &bump;
        prop_assert!(polyadditive_difference_bound(&norm, &wider_caps, radii) >= base);
        prop_assert!(polyadditive_difference_bound(&norm, &caps, &wider_radii) >= base);
    }

    #[test]
    fn difference_bound_covers_products(
        a in prop::collection::vec(rational(), 3),
        d in prop::collection::vec(rational(), 3),
    ) {
        let g = RationalAbs::new();
        let triple = g.op("triple").unwrap();
        let c: Vec<BigRational> = a.iter().zip(&d).map(|(x, y)| x + y).collect();
        let caps: Vec<Scalar> = a.iter().zip(&c).map(|(x, y)| g.norm(x).max(g.norm(y))).collect();
        let radii: Vec<Scalar> = d.iter().map(|x| g.norm(x)).collect();
        let actual = g.distance(&triple.apply(&c), &triple.apply(&a));
        prop_assert!(actual <= polyadditive_difference_bound(triple.norm_bound(), &caps, &radii));
    }

    #[test]
    fn inverse_bound_forward_recheck(
        caps in prop::collection::vec(scalar(), 1..4),
        norm in scalar(),
        eps in positive(),
    ) {
        let delta = invert_difference_bound(&norm, &caps, &eps);
        prop_assert!(!delta.is_zero());
        prop_assert!(delta <= Scalar::one());
        let widened: Vec<Scalar> = caps.iter().map(|c| c + &delta).collect();
        let radii = vec![delta.clone(); caps.len()];
        prop_assert!(polyadditive_difference_bound(&norm, &widened, &radii) <= eps);
    }

    #[test]
    fn precision_below_is_tight(x in positive()) {
        let m = x.precision_below();
        prop_assert!(Scalar::pow2_neg(m) <= x);
        prop_assert!(m == 0 || Scalar::pow2_neg(m - 1) > x);
    }

    #[test]
    fn padic_norm_is_ultrametric(a in rational(), b in rational()) {
        let g = RationalPadic::new(5).unwrap();
        let sum = g.norm(&(&a + &b));
        prop_assert!(sum <= g.norm(&a).max(g.norm(&b)));
        prop_assert_eq!(g.norm(&(&a * &b)), g.norm(&a) * g.norm(&b));
        if let Some(v) = padic_valuation(5, &a) {
            let scale = Scalar::from_integer(5).pow(v.unsigned_abs());
            if v >= 0 {
                prop_assert_eq!(g.norm(&a) * scale, Scalar::one());
            } else {
                prop_assert_eq!(g.norm(&a), scale);
            }
        }
    }

    #[test]
    fn geometric_approach_hits_its_limit(base in rational(), offset in rational(), num in -7i64..=7, k in 0u32..25) {
        let g = Arc::new(RationalAbs::new());
        let ratio = BigRational::new(BigInt::from(num), BigInt::from(8));
        let s = CauchySequence::geometric_approach(g, base.clone(), offset, ratio).unwrap();
        prop_assert!(check_limit(&s, &base, k));
        let off = &base + BigRational::new(BigInt::from(2), BigInt::from(1u64 << k));
        prop_assert!(!check_limit(&s, &off, k));
    }

    #[test]
    fn equivalence_is_symmetric(a in 0i64..30, b in 0i64..30, k in 0u32..16) {
        let g = Arc::new(RationalAbs::new());
        let sq = |n: i64| BigRational::from_integer(BigInt::from(n * n));
        let s = babylonian_sqrt(Arc::clone(&g), sq(a)).unwrap();
        let t = babylonian_sqrt(g, sq(b)).unwrap();
        prop_assert_eq!(equivalent_upto(&s, &t, k), equivalent_upto(&t, &s, k));
        if a == b || (a - b).abs() >= 2 {
            prop_assert_eq!(equivalent_upto(&s, &t, k), a == b);
        }
    }

    #[test]
    fn literals_round_trip(entries in prop::collection::vec(rational(), 8)) {
        let o = OctonionAlgebra::new();
        let x = o.parse_element(&format!("[{}]", entries.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))).unwrap();
        prop_assert_eq!(o.parse_element(&x.to_string()).unwrap(), x);
        let m = MatrixRing::new(2).unwrap();
        let text = format!("[[{},{}],[{},{}]]", entries[0], entries[1], entries[2], entries[3]);
        let a = m.parse_element(&text).unwrap();
        prop_assert_eq!(a.to_string(), text);
        prop_assert!(m.norm(&a).value() <= &(entries[0].abs() + entries[1].abs()).max(entries[2].abs() + entries[3].abs()));
    }
}
