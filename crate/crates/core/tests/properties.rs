mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use w2bound_core::curve::{CurveModP, CurvePoint};
use w2bound_core::field::{ExtField, Fe};
use w2bound_core::picard::{add, class_of_pair, neg, scalar_mul, sub, DivisorClass};
use w2bound_core::poly::Poly;
use w2bound_core::wedge::{case_split, permutes_weierstrass, WedgeForm};

struct Fixture {
    curve: CurveModP,
    pts1: Vec<CurvePoint>,
    pts2: Vec<CurvePoint>,
    order: u64,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let curve = CurveModP::reduce(&CURVE1, 7).unwrap();
        let pts1 = curve.points(1).unwrap();
        let pts2 = curve.points(2).unwrap().into_iter().filter(|q| !q.is_rational()).collect();
        let order = jacobian_order_oracle(&curve);
        Fixture { curve, pts1, pts2, order }
    })
}

fn class_from_seed(seed: u64) -> DivisorClass {
    let f = fixture();
    random_class(&mut ChaCha8Rng::seed_from_u64(seed), &f.curve, &f.pts1, &f.pts2)
}

fn poly_strategy(p: u64, max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..p, 0..max_len).prop_map(move |c| Poly::new(p, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cantor_group_laws(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let curve = &fixture().curve;
        let (x, y, z) = (class_from_seed(a), class_from_seed(b), class_from_seed(c));
        prop_assert!(x.is_valid(curve));
        prop_assert_eq!(add(curve, &x, &y), add(curve, &y, &x));
        prop_assert_eq!(add(curve, &add(curve, &x, &y), &z), add(curve, &x, &add(curve, &y, &z)));
        prop_assert_eq!(add(curve, &x, &DivisorClass::zero(7)), x.clone());
        prop_assert!(add(curve, &x, &neg(&x)).is_zero());
        prop_assert_eq!(sub(curve, &add(curve, &x, &y), &y), x);
    }

    #[test]
    fn group_order_kills_everything(a in any::<u64>(), k in 0u64..1000) {
        let f = fixture();
        let x = class_from_seed(a);
        prop_assert!(scalar_mul(&f.curve, f.order, &x).is_zero());
        prop_assert_eq!(scalar_mul(&f.curve, k + f.order, &x), scalar_mul(&f.curve, k, &x));
    }

    #[test]
    fn pair_classes_are_symmetric(i in 0usize..64, j in 0usize..64) {
        let f = fixture();
        let (a, b) = (&f.pts1[i % f.pts1.len()], &f.pts1[j % f.pts1.len()]);
        let ab = class_of_pair(&f.curve, a, b).unwrap();
        prop_assert_eq!(&ab, &class_of_pair(&f.curve, b, a).unwrap());
        let sum = add(&f.curve, &class_of_pair(&f.curve, a, &CurvePoint::Infinity).unwrap(),
            &class_of_pair(&f.curve, b, &CurvePoint::Infinity).unwrap());
        prop_assert_eq!(ab, sum);
    }

    #[test]
    fn sqrt_squares_back(p in prop::sample::select(vec![5u64, 7, 11, 13]), d in 1usize..=3, i in any::<u64>()) {
        let k = ExtField::new(p, d).unwrap();
        let a = k.element(i % k.order());
        let sq = k.square(a);
        let r = k.sqrt(sq).unwrap();
        prop_assert_eq!(k.square(r), sq);
        prop_assert!(r == a || r == k.neg(a));
        prop_assert!(r <= k.neg(r));
        prop_assert_eq!(k.is_square(a), k.sqrt(a).is_some());
    }

    #[test]
    fn field_inverse(p in prop::sample::select(vec![5u64, 7, 13]), d in 1usize..=3, i in 1u64..10_000) {
        let k = ExtField::new(p, d).unwrap();
        let a = k.element(i % (k.order() - 1) + 1);
        prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
        prop_assert_eq!(k.pow(a, k.order() - 1), k.one());
    }

    #[test]
    fn div_rem_reconstructs(a in poly_strategy(11, 12), b in poly_strategy(11, 6)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.deg() < b.deg());
    }

    #[test]
    fn xgcd_bezout(a in poly_strategy(7, 9), b in poly_strategy(7, 9)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (d, s, t) = a.xgcd(&b);
        prop_assert_eq!(a.mul(&s).add(&b.mul(&t)), d.clone());
        prop_assert!(a.rem(&d).unwrap().is_zero());
        prop_assert!(b.rem(&d).unwrap().is_zero());
    }

    #[test]
    fn mobius_twice_is_delta_power(beta in prop::array::uniform3(0i64..7), g in poly_strategy(7, 9)) {
        let Ok(w) = WedgeForm::new(beta, 7) else { return Ok(()) };
        prop_assume!(w.delta() != 0);
        let once = w.mobius_numerator(&g, 8).unwrap();
        let twice = w.mobius_numerator(&once, 8).unwrap();
        prop_assert_eq!(twice, g.scale(w.delta().pow(8) % 7));
    }

    #[test]
    fn case_is_scaling_invariant(beta in prop::array::uniform3(0i64..7), lambda in 1i64..7) {
        let Ok(w) = WedgeForm::new(beta, 7) else { return Ok(()) };
        let scaled = WedgeForm::new(beta.map(|b| b * lambda), 7).unwrap();
        prop_assert_eq!(w, scaled);
        let c = CurveModP::reduce(&CURVE1, 7).unwrap();
        let raw = w.beta();
        let m1 = c.f().mobius_numerator(raw, 8);
        let m2 = c.f().mobius_numerator(raw.map(|b| b * lambda as u64 % 7), 8);
        if let (Ok(m1), Ok(m2)) = (m1, m2) {
            // Both numerator and denominator scale by lambda.
            prop_assert_eq!(m2, m1.scale((lambda as u64).pow(8) % 7));
        }
        let case = case_split(&c, &w).map(|t| t.label());
        prop_assert_eq!(case, case_split(&c, &scaled).map(|t| t.label()));
    }

    #[test]
    fn w2_count_on_random_curves(seed in any::<u64>(), p in prop::sample::select(vec![5u64, 7, 11])) {
        let c = random_curve(&mut ChaCha8Rng::seed_from_u64(seed), p);
        let w2 = w2bound_core::picard::enumerate_w2(&c).unwrap();
        prop_assert_eq!(w2.len() as u64, w2_count_oracle(&c));
        prop_assert_eq!(c.zeta().unwrap().jacobian_order, jacobian_order_oracle(&c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reducibility_criteria_agree(seed in any::<u64>(), p in prop::sample::select(vec![5u64, 7])) {
        let c = random_curve(&mut ChaCha8Rng::seed_from_u64(seed), p);
        for w in WedgeForm::all(p).into_iter().filter(|w| !w.is_case_one()) {
            let reducible = matches!(
                case_split(&c, &w),
                Ok(w2bound_core::wedge::CaseTag::CaseII { .. }) | Err(w2bound_core::Error::EllipticObstruction { .. })
            );
            prop_assert_eq!(reducible, permutes_weierstrass(&c, &w), "beta {:?}", w.beta());
        }
    }
}

#[test]
fn cantor_scalar_matches_repeated_addition() {
    let f = fixture();
    let x = class_from_seed(3);
    let mut acc = DivisorClass::zero(7);
    for k in 0..40u64 {
        assert_eq!(scalar_mul(&f.curve, k, &x), acc);
        acc = add(&f.curve, &acc, &x);
    }
}

#[test]
fn field_elements_are_distinct() {
    let k = ExtField::new(5, 3).unwrap();
    let all: std::collections::BTreeSet<Fe> = k.elements().collect();
    assert_eq!(all.len(), 125);
}
