//! Multiplicative middle convolution on monodromy tuples.

mod iso;
mod mc;
mod property;
mod tuple;

pub use iso::{
    conjugacy_invariants, intertwining_residual, tuple_isomorphism, tuple_isomorphism_seeded,
    Invariant, TupleIsoReport, DEFAULT_ISO_TOL, TUPLE_ISO_SEED,
};
pub use mc::{
    convolution_tuple, katz_k_subspace, katz_l_subspace, multiplicative_middle_convolution,
    KatzResult, DEFAULT_RANK_TOL,
};
pub use property::{check_property_p, PropertyReport, NEAR_FAILURE_FACTOR};
pub use tuple::{CharacterValue, MonodromyTuple, SINGULAR_CONDITION};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::linalg::complex::{c, eigenvalues, identity, unit, CMat, C64};
    use crate::rational::qf;

    fn scalar_tuple(ts: &[f64]) -> MonodromyTuple {
        let ms = ts
            .iter()
            .map(|&t| CMat::from_element(1, 1, unit(t)))
            .collect();
        MonodromyTuple::new(1, ms).unwrap()
    }

    fn rank2_tuple() -> MonodromyTuple {
        let m1 = CMat::from_row_slice(2, 2, &[unit(0.1), c(1.0, 0.0), c(0.0, 0.0), unit(0.35)]);
        let m2 = CMat::from_row_slice(2, 2, &[unit(0.6), c(0.0, 0.0), c(0.5, -0.2), unit(0.27)]);
        let m3 = CMat::from_row_slice(
            2,
            2,
            &[c(0.3, 0.1), c(0.7, 0.0), c(-0.4, 0.2), c(1.1, -0.3)],
        );
        MonodromyTuple::new(2, vec![m1, m2, m3]).unwrap()
    }

    fn ch(n: i64, d: i64) -> CharacterValue {
        CharacterValue::new(&qf(n, d)).unwrap()
    }

    fn contains(eigs: &[C64], z: C64) -> bool {
        eigs.iter().any(|e| (e - z).norm() < 1e-9)
    }

    #[test]
    fn scalar_mc_has_expected_local_eigenvalues() {
        let t = scalar_tuple(&[0.5, 1.0 / 3.0]);
        let cv = ch(1, 5);
        let r = multiplicative_middle_convolution(&t, &cv, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(r.tuple.rank(), 2);
        assert_eq!((r.dim_k, r.dim_l), (0, 0));
        for (k, m) in t.matrices().iter().enumerate() {
            let e = eigenvalues(&r.tuple.matrices()[k]);
            assert!(contains(&e, c(1.0, 0.0)));
            assert!(contains(&e, m[(0, 0)] * cv.value()));
        }
    }

    #[test]
    fn identity_tuple_collapses() {
        let t = MonodromyTuple::new(2, vec![identity(2), identity(2), identity(2)]).unwrap();
        let r = multiplicative_middle_convolution(&t, &ch(1, 3), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(r.tuple.rank(), 0);
        assert_eq!(r.dim_k, 6);
        assert!(!check_property_p(&t, DEFAULT_RANK_TOL).holds);
    }

    #[test]
    fn trivial_character_rejected() {
        assert!(matches!(
            CharacterValue::new(&qf(3, 1)),
            Err(Error::TrivialCharacter)
        ));
        assert_eq!(ch(-1, 5).lambda(), &qf(4, 5));
        assert!(ch(1, 5).mul(&ch(4, 5)).is_err());
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]);
        assert!(matches!(
            MonodromyTuple::new(2, vec![identity(2), m]),
            Err(Error::SingularInput(2))
        ));
    }

    #[test]
    fn property_p_examples() {
        assert!(check_property_p(&scalar_tuple(&[0.5, 1.0 / 3.0]), DEFAULT_RANK_TOL).holds);
        let with_trivial = rank2_tuple()
            .direct_sum(&MonodromyTuple::new(1, vec![identity(1); 3]).unwrap())
            .unwrap();
        let rep = check_property_p(&with_trivial, DEFAULT_RANK_TOL);
        assert!(!rep.holds && rep.common_fixed_vector);
    }

    #[test]
    fn conjugate_tuples_isomorphic() {
        let t = rank2_tuple();
        let p = CMat::from_row_slice(2, 2, &[c(2.0, 0.0), c(1.0, 1.0), c(0.0, 1.0), c(1.0, 0.0)]);
        let u = t.conjugate(&p).unwrap();
        let r = tuple_isomorphism(&t, &u, DEFAULT_ISO_TOL).unwrap();
        assert!(r.isomorphic, "{r:?}");
        assert!(r.residual < 1e-12);
        let same = tuple_isomorphism(&t, &t, DEFAULT_ISO_TOL).unwrap();
        assert!(same.isomorphic);
    }

    #[test]
    fn different_traces_fail_fast() {
        let a = scalar_tuple(&[0.5, 0.25]);
        let b = scalar_tuple(&[0.5, 0.3]);
        let r = tuple_isomorphism(&a, &b, DEFAULT_ISO_TOL).unwrap();
        assert!(!r.isomorphic && !r.invariants_match);
        assert_eq!(r.hom_dim, 0);
    }

    #[test]
    fn inverse_law_on_rank2_tuple() {
        let t = rank2_tuple();
        assert!(check_property_p(&t, DEFAULT_RANK_TOL).holds);
        let cv = ch(2, 7);
        let once = multiplicative_middle_convolution(&t, &cv, DEFAULT_RANK_TOL)
            .unwrap()
            .tuple;
        let back = multiplicative_middle_convolution(&once, &cv.inverse(), DEFAULT_RANK_TOL)
            .unwrap()
            .tuple;
        let r = tuple_isomorphism(&t, &back, 1e-8).unwrap();
        assert!(r.isomorphic, "{r:?}");
    }

    #[test]
    fn sum_law_on_rank2_tuple() {
        let t = rank2_tuple();
        let (c1, c2) = (ch(1, 5), ch(1, 7));
        let lhs = multiplicative_middle_convolution(
            &multiplicative_middle_convolution(&t, &c1, DEFAULT_RANK_TOL)
                .unwrap()
                .tuple,
            &c2,
            DEFAULT_RANK_TOL,
        )
        .unwrap()
        .tuple;
        let rhs = multiplicative_middle_convolution(&t, &c1.mul(&c2).unwrap(), DEFAULT_RANK_TOL)
            .unwrap()
            .tuple;
        let r = tuple_isomorphism(&lhs, &rhs, 1e-8).unwrap();
        assert!(r.isomorphic, "{r:?}");
    }
}
