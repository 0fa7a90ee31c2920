use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nfc_core::normalizer::{apply_group_action, GroupElement};
use nfc_core::random::{random_class_surface, random_hermitian, random_jet, random_map, SurfaceShape};
use nfc_core::resonance::{matrix_a, matrix_b};
use nfc_core::scalar::{rat, GaussianRational, KPoly};
use nfc_core::series::{compose_maps, invert_map, invert_real_triple, Series3};
use nfc_core::surface::transform;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hermitian_closed_under_ring_ops(seed in any::<u64>(), n in 2u32..7) {
        let mut r = rng(seed);
        let a = random_hermitian(&mut r, n, 0.4);
        let b = random_hermitian(&mut r, n, 0.4);
        prop_assert!(a.mul(&b).is_hermitian());
        prop_assert!(a.add(&b).is_hermitian());
        prop_assert!(a.partial_u().is_hermitian());
        prop_assert_eq!(a.hermitian_conjugate(), a);
    }

    #[test]
    fn series_mul_commutes_and_distributes(seed in any::<u64>(), n in 2u32..6) {
        let mut r = rng(seed);
        let a = random_hermitian(&mut r, n, 0.4);
        let b = random_hermitian(&mut r, n, 0.4).scale(&GaussianRational::i());
        let c = random_hermitian(&mut r, n, 0.4);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn map_inverse_round_trip(seed in any::<u64>(), n in 3u32..6) {
        let mut r = rng(seed);
        let f = random_map(&mut r, n, 0.3).unwrap();
        let inv = invert_map(&f).unwrap();
        prop_assert!(compose_maps(&f, &inv).unwrap().is_identity());
        prop_assert!(compose_maps(&inv, &f).unwrap().is_identity());
    }

    #[test]
    fn reversion_round_trip(seed in any::<u64>(), n in 2u32..6) {
        let mut r = rng(seed);
        let higher = |s: Series3| s.filter(|e| e.0 + e.1 + e.2 >= 2);
        let z1 = Series3::z(n).add(&higher(random_hermitian(&mut r, n, 0.3)));
        let u1 = Series3::u(n).add(&higher(random_hermitian(&mut r, n, 0.3)));
        let (z, u) = invert_real_triple(&z1, &u1).unwrap();
        let zb = z.hermitian_conjugate();
        prop_assert_eq!(z1.substitute(&z, &zb, &u).unwrap(), Series3::z(n));
        prop_assert_eq!(u1.substitute(&z, &zb, &u).unwrap(), Series3::u(n));
    }

    #[test]
    fn det_a_factors_through_det_b(seed in any::<u64>()) {
        let j = random_jet(&mut rng(seed));
        let lhs = matrix_a(&j).det();
        let rhs = (&KPoly::k_minus(1) * &matrix_b(&j).det()).scale(&GaussianRational::real(rat(1, 4)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_action_composes(seed in any::<u64>(), a1 in -3i64..4, b1 in -3i64..4, s1 in 1i64..4, a2 in 1i64..4, b2 in -3i64..4, s2 in -3i64..4) {
        prop_assume!((a1, b1) != (0, 0) && s2 != 0);
        let shape = SurfaceShape { order: 6, density: 0.3, quadric_u_linear: false };
        let m = random_class_surface(&mut rng(seed), &shape).unwrap();
        let g1 = GroupElement::new(GaussianRational::from_parts(a1, 1, b1, 1), rat(s1, 1));
        let g2 = GroupElement::new(GaussianRational::from_parts(a2, 1, b2, 1), rat(s2, 1));
        let (Ok(g1), Ok(g2)) = (g1, g2) else { return Ok(()) };
        let stepwise = apply_group_action(&apply_group_action(&m, &g1).unwrap(), &g2).unwrap();
        let product = GroupElement::new(&g1.alpha * &g2.alpha, &g1.s * &g2.s).unwrap();
        prop_assert_eq!(stepwise, apply_group_action(&m, &product).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn transform_is_functorial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shape = SurfaceShape { order: 6, density: 0.3, quadric_u_linear: false };
        let m = random_class_surface(&mut r, &shape).unwrap();
        let f = random_map(&mut r, 6, 0.2).unwrap();
        let g = random_map(&mut r, 6, 0.2).unwrap();
        let stepwise = transform(&transform(&m, &f).unwrap(), &g).unwrap();
        prop_assert_eq!(stepwise, transform(&m, &compose_maps(&g, &f).unwrap()).unwrap());
    }
}
