//! Isomorphism of Pfaffian systems: invertible simultaneous intertwiners.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::pfaffian::PfaffianSystem;
use crate::rational::{q, Q};

/// Seed of the random combinations tried for large intertwiner spaces.
pub const ISO_SEED: u64 = 0x5eed_1a7e_2024_0001;

/// Largest intertwiner-space dimension decided by the exact grid test.
pub const EXACT_SEARCH_MAX_DIM: usize = 4;

/// How an invertible intertwiner was found (or ruled out).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    Trivial,
    BasisElement,
    ExactGrid,
    RandomCombination,
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    pub isomorphic: bool,
    /// `S` with `S A1_H = A2_H S` for all `H`.
    pub intertwiner: Option<QMatrix>,
    /// Dimension of the space of (not necessarily invertible) intertwiners.
    pub hom_dim: usize,
    pub method: SearchMethod,
}

/// Basis of `{S : S A1_i = A2_i S for all i}` for `d2 x d1` matrices.
pub fn intertwiner_space(a1: &[&QMatrix], a2: &[&QMatrix], d1: usize, d2: usize) -> Vec<QMatrix> {
    let unknowns = d1 * d2;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (m1, m2) in a1.iter().zip(a2) {
        // (S m1 - m2 S)_{ij} = sum_k S_{ik} m1_{kj} - sum_k m2_{ik} S_{kj}
        for i in 0..d2 {
            for j in 0..d1 {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..d1 {
                    row[i * d1 + k] += &m1[(k, j)];
                }
                for k in 0..d2 {
                    row[k * d1 + j] -= &m2[(i, k)];
                }
                rows.push(row);
            }
        }
    }
    let sys = if rows.is_empty() {
        QMatrix::zeros(0, unknowns)
    } else {
        QMatrix::from_rows(rows)
    };
    let ker = sys.kernel();
    (0..ker.ncols())
        .map(|c| {
            let mut s = QMatrix::zeros(d2, d1);
            for i in 0..d2 {
                for j in 0..d1 {
                    s[(i, j)] = ker[(i * d1 + j, c)].clone();
                }
            }
            s
        })
        .collect()
}

fn combine(basis: &[QMatrix], coeffs: &[Q]) -> QMatrix {
    let (r, c) = (basis[0].nrows(), basis[0].ncols());
    basis
        .iter()
        .zip(coeffs)
        .fold(QMatrix::zeros(r, c), |acc, (s, a)| &acc + &s.scale(a))
}

/// Searches the span of `basis` (square `d x d` matrices) for an invertible
/// element. Basis elements are tried first. For spans of dimension at most
/// [`EXACT_SEARCH_MAX_DIM`] the determinant, a polynomial of degree at most
/// `d` in each combination coefficient, is evaluated on the grid
/// `{0..=d}^m`; vanishing there means it vanishes identically, so the
/// answer is exact. Larger spans fall back to seeded random combinations
/// with enough samples to push the false-negative probability below
/// `2^-64`.
pub fn find_invertible(basis: &[QMatrix]) -> (Option<QMatrix>, SearchMethod) {
    let Some(first) = basis.first() else {
        return (None, SearchMethod::BasisElement);
    };
    let d = first.nrows();
    if let Some(s) = basis.iter().find(|s| !s.det().is_zero()) {
        return (Some(s.clone()), SearchMethod::BasisElement);
    }
    let m = basis.len();
    if m == 1 {
        return (None, SearchMethod::BasisElement);
    }
    if m <= EXACT_SEARCH_MAX_DIM {
        let side = d + 1;
        let total = side.pow(m as u32);
        for idx in 0..total {
            let mut rem = idx;
            let coeffs: Vec<Q> = (0..m)
                .map(|_| {
                    let c = rem % side;
                    rem /= side;
                    q(c as i64)
                })
                .collect();
            let s = combine(basis, &coeffs);
            if !s.det().is_zero() {
                return (Some(s), SearchMethod::ExactGrid);
            }
        }
        return (None, SearchMethod::ExactGrid);
    }
    // Each sample from [-2^31, 2^31) misses a nonzero determinant with
    // probability at most d / 2^32.
    let bits_per_sample = 32.0 - (d.max(2) as f64).log2();
    let samples = (64.0 / bits_per_sample).ceil() as usize + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    for _ in 0..samples {
        let coeffs: Vec<Q> = (0..m)
            .map(|_| Q::from_integer(BigInt::from(rng.random::<i32>())))
            .collect();
        let s = combine(basis, &coeffs);
        if !s.det().is_zero() {
            return (Some(s), SearchMethod::RandomCombination);
        }
    }
    (None, SearchMethod::RandomCombination)
}

/// Decides whether two systems on the same hyperplanes are isomorphic.
pub fn is_isomorphic(s1: &PfaffianSystem, s2: &PfaffianSystem) -> Result<IsoReport> {
    if s1.dim_e() != s2.dim_e() {
        return Err(Error::DimensionMismatch(format!(
            "systems have dimensions {} and {}",
            s1.dim_e(),
            s2.dim_e()
        )));
    }
    if !s1.arrangement().same_hyperplanes(s2.arrangement()) {
        return Err(Error::Invalid(
            "systems live on different arrangements".into(),
        ));
    }
    let d = s1.dim_e();
    if d == 0 {
        return Ok(IsoReport {
            isomorphic: true,
            intertwiner: Some(QMatrix::zeros(0, 0)),
            hom_dim: 0,
            method: SearchMethod::Trivial,
        });
    }
    let a1: Vec<&QMatrix> = s1.residues().iter().collect();
    let a2: Vec<&QMatrix> = s1
        .arrangement()
        .hyperplanes()
        .iter()
        .map(|h| s2.residue_at(h).expect("same hyperplanes"))
        .collect();
    let basis = intertwiner_space(&a1, &a2, d, d);
    let (s, method) = find_invertible(&basis);
    Ok(IsoReport {
        isomorphic: s.is_some(),
        intertwiner: s,
        hom_dim: basis.len(),
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::rational::qf;

    fn arr1() -> Arrangement {
        Arrangement::from_integer_forms(1, &[("p", &[1], 0), ("r", &[1], -1)]).unwrap()
    }

    fn sample() -> PfaffianSystem {
        PfaffianSystem::new(
            arr1(),
            2,
            vec![
                QMatrix::from_rows(vec![vec![qf(1, 2), q(1)], vec![q(0), qf(1, 3)]]),
                QMatrix::from_rows(vec![vec![q(0), q(0)], vec![q(2), qf(1, 7)]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn self_isomorphic() {
        let s = sample();
        let r = is_isomorphic(&s, &s).unwrap();
        assert!(r.isomorphic);
        let i = r.intertwiner.unwrap();
        for a in s.residues() {
            assert_eq!(&i * a, a * &i);
        }
    }

    #[test]
    fn conjugate_isomorphic() {
        let s = sample();
        let p = QMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let t = s.conjugate(&p).unwrap();
        let r = is_isomorphic(&s, &t).unwrap();
        assert!(r.isomorphic);
        let i = r.intertwiner.unwrap();
        assert!(!i.det().is_zero());
        for (a, b) in s.residues().iter().zip(t.residues()) {
            assert_eq!(&i * a, b * &i);
        }
    }

    #[test]
    fn different_scalars_not_isomorphic() {
        let arr = Arrangement::from_integer_forms(1, &[("p", &[1], 0)]).unwrap();
        let a = PfaffianSystem::scalar(arr.clone(), &[qf(1, 2)]).unwrap();
        let b = PfaffianSystem::scalar(arr, &[qf(1, 3)]).unwrap();
        assert!(!is_isomorphic(&a, &b).unwrap().isomorphic);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let arr = Arrangement::from_integer_forms(1, &[("p", &[1], 0)]).unwrap();
        let a = PfaffianSystem::scalar(arr.clone(), &[qf(1, 2)]).unwrap();
        let b = PfaffianSystem::new(arr, 2, vec![QMatrix::identity(2)]).unwrap();
        assert!(matches!(
            is_isomorphic(&a, &b),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn grid_finds_invertible_combination() {
        // neither basis element is invertible, their sum is
        let e11 = QMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        let e22 = QMatrix::from_i64(&[&[0, 0], &[0, 1]]);
        let (s, m) = find_invertible(&[e11, e22]);
        assert_eq!(m, SearchMethod::ExactGrid);
        assert!(!s.unwrap().det().is_zero());
    }

    #[test]
    fn grid_rules_out_singular_span() {
        let e11 = QMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        let e21 = QMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        let (s, m) = find_invertible(&[e11, e21]);
        assert_eq!(m, SearchMethod::ExactGrid);
        assert!(s.is_none());
    }

    #[test]
    fn random_combination_for_large_spans() {
        let n = 5;
        let basis: Vec<QMatrix> = (0..n)
            .map(|i| {
                let mut e = QMatrix::zeros(n, n);
                e[(i, (i + 1) % n)] = q(1);
                e
            })
            .collect();
        // each element is a partial permutation, none invertible alone
        let (s, m) = find_invertible(&basis);
        assert_eq!(m, SearchMethod::RandomCombination);
        assert!(!s.unwrap().det().is_zero());
    }
}
