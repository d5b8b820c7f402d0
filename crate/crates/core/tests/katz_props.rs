use arrmc_core::katz::{
    check_property_p, multiplicative_middle_convolution, tuple_isomorphism, CharacterValue,
    MonodromyTuple, DEFAULT_RANK_TOL,
};
use arrmc_core::linalg::complex::{c, identity, null_space, CMat};
use arrmc_core::rational::qf;
use proptest::prelude::*;

const TOL: f64 = 1e-8;

fn tuple_strategy() -> impl Strategy<Value = MonodromyTuple> {
    (1usize..=2, 2usize..=3)
        .prop_flat_map(|(rank, n)| {
            (
                Just(rank),
                Just(n),
                proptest::collection::vec(-1.0f64..1.0, 2 * rank * rank * n),
            )
        })
        .prop_filter_map("well conditioned tuple", |(rank, n, v)| {
            let ms = (0..n)
                .map(|k| {
                    let off = k * 2 * rank * rank;
                    let entries: Vec<_> = (0..rank * rank)
                        .map(|i| c(v[off + 2 * i], v[off + 2 * i + 1]))
                        .collect();
                    &CMat::from_row_slice(rank, rank, &entries) + &identity(rank) * c(1.5, 0.0)
                })
                .collect();
            MonodromyTuple::new(rank, ms).ok()
        })
}

fn character() -> impl Strategy<Value = CharacterValue> {
    (1i64..=6, 7i64..=11).prop_map(|(n, d)| CharacterValue::new(&qf(n, d)).unwrap())
}

fn kernel_dim(m: &CMat) -> usize {
    null_space(m, DEFAULT_RANK_TOL).ncols()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn katz_dimension_counts(t in tuple_strategy(), ch in character()) {
        prop_assume!(check_property_p(&t, DEFAULT_RANK_TOL).holds);
        let r = multiplicative_middle_convolution(&t, &ch, DEFAULT_RANK_TOL).unwrap();
        let one = identity(t.rank());
        let dim_k: usize = t.matrices().iter().map(|m| kernel_dim(&(m - &one))).sum();
        let dim_l = kernel_dim(&(t.product() * ch.value() - &one));
        prop_assert_eq!((r.dim_k, r.dim_l), (dim_k, dim_l));
        prop_assert_eq!(r.tuple.rank(), t.n() * t.rank() - dim_k - dim_l);
    }

    #[test]
    fn inverse_character_undoes_convolution(t in tuple_strategy(), ch in character()) {
        prop_assume!(check_property_p(&t, DEFAULT_RANK_TOL).holds);
        let once = multiplicative_middle_convolution(&t, &ch, DEFAULT_RANK_TOL).unwrap().tuple;
        prop_assume!(check_property_p(&once, DEFAULT_RANK_TOL).holds);
        let back = multiplicative_middle_convolution(&once, &ch.inverse(), DEFAULT_RANK_TOL).unwrap().tuple;
        let iso = tuple_isomorphism(&back, &t, TOL).unwrap();
        prop_assert!(iso.invariants_match && iso.isomorphic, "residual {}", iso.residual);
    }

    #[test]
    fn characters_compose(t in tuple_strategy(), a in character(), b in character()) {
        let ab = a.mul(&b);
        prop_assume!(ab.is_ok());
        prop_assume!(check_property_p(&t, DEFAULT_RANK_TOL).holds);
        let once = multiplicative_middle_convolution(&t, &a, DEFAULT_RANK_TOL).unwrap().tuple;
        prop_assume!(check_property_p(&once, DEFAULT_RANK_TOL).holds);
        let twice = multiplicative_middle_convolution(&once, &b, DEFAULT_RANK_TOL).unwrap().tuple;
        let direct = multiplicative_middle_convolution(&t, &ab.unwrap(), DEFAULT_RANK_TOL).unwrap().tuple;
        let iso = tuple_isomorphism(&twice, &direct, TOL).unwrap();
        prop_assert!(iso.invariants_match && iso.isomorphic, "residual {}", iso.residual);
    }

    #[test]
    fn convolution_commutes_with_conjugation(t in tuple_strategy(), ch in character(), p in proptest::collection::vec(-1.0f64..1.0, 8)) {
        prop_assume!(check_property_p(&t, DEFAULT_RANK_TOL).holds);
        let r = t.rank();
        let entries: Vec<_> = (0..r * r).map(|i| c(p[2 * i], p[2 * i + 1])).collect();
        let g = &CMat::from_row_slice(r, r, &entries) + &identity(r) * c(2.0, 0.0);
        let moved = t.conjugate(&g).unwrap();
        let a = multiplicative_middle_convolution(&t, &ch, DEFAULT_RANK_TOL).unwrap().tuple;
        let b = multiplicative_middle_convolution(&moved, &ch, DEFAULT_RANK_TOL).unwrap().tuple;
        prop_assert!(tuple_isomorphism(&a, &b, TOL).unwrap().isomorphic);
    }
}
