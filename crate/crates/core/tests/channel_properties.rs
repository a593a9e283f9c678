use negacap::linalg::{operator_norm, BipartiteDims, ComplexMatrix};
use negacap::{random, Channel};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dims_strategy() -> impl Strategy<Value = BipartiteDims> {
    (1usize..=3, 1usize..=3).prop_map(|(a, b)| BipartiteDims::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kraus_round_trip(d1 in dims_strategy(), d2 in dims_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random::hp_map(d1, d2, &mut rng);
        let back = Channel::from_kraus(&l.kraus().unwrap(), d1, d2).unwrap();
        prop_assert!(back.choi().max_abs_diff(l.choi()) < 1e-9);
    }

    #[test]
    fn choi_is_a_hilbert_schmidt_isometry(d1 in dims_strategy(), d2 in dims_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (l1, l2) = (random::hp_map(d1, d2, &mut rng), random::hp_map(d1, d2, &mut rng));
        let m = d1.total();
        let mut rhs = negacap::Complex64::new(0.0, 0.0);
        for i in 0..m {
            for j in 0..m {
                let mut e = ComplexMatrix::zeros(m, m);
                e[(i, j)] = negacap::Complex64::new(1.0, 0.0);
                rhs += l1.apply(&e).unwrap().hs_inner(&l2.apply(&e).unwrap());
            }
        }
        let lhs = l1.choi().hs_inner(l2.choi());
        prop_assert!((lhs - rhs).norm() < 1e-9 * lhs.norm().max(1.0));
    }

    #[test]
    fn channels_have_choi_trace_equal_to_input_dimension(d in dims_strategy(), k in 1usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ch = random::channel(d, d, k, &mut rng);
        prop_assert!((ch.choi_trace() - d.total() as f64).abs() < 1e-10);
        prop_assert!(ch.is_cp(1e-9) && ch.is_tp(1e-10));
    }

    #[test]
    fn ancilla_leaves_adjoint_norm_unchanged(d in dims_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random::hp_map(d, d, &mut rng);
        let a = operator_norm(&l.adjoint_identity()).unwrap();
        let b = operator_norm(&l.with_ancilla(2).unwrap().adjoint_identity()).unwrap();
        prop_assert!((a - b).abs() < 1e-10 * a.max(1.0));
    }

    #[test]
    fn map_partial_transpose_is_an_involution_preserving_tp(d in dims_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ch = random::channel(d, d, 2, &mut rng);
        let pt = ch.partial_transpose();
        prop_assert!(pt.is_tp(1e-10) && pt.is_hp(1e-10));
        prop_assert!(pt.adjoint_identity().max_abs_diff(&ComplexMatrix::identity(d.total())) < 1e-10);
        prop_assert!(pt.partial_transpose().choi().max_abs_diff(ch.choi()) < 1e-14);
    }
}
