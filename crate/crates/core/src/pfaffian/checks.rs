//! Integrability, genericity and the star conditions.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ConvolutionParameter, PfaffianSystem};
use crate::arrangement::{
    build_intersection_poset, fiber_points, parallel_subarrangement, Flat, LineDirection,
};
use crate::error::Result;
use crate::linalg::{char_poly, Poly, QMatrix};
use crate::rational::{ceil_abs, format_q, q, Q};

#[derive(Clone, Debug)]
pub struct IntegrabilityReport {
    pub integrable: bool,
    /// Rank-2 flat and arrangement index of the hyperplane where the
    /// commutator fails.
    pub witness: Option<(Flat, usize)>,
}

/// For every rank-2 flat `X` and `H ⊇ X`: `[A_H, sum_{H' ⊇ X} A_{H'}] = 0`.
pub fn check_integrability(sys: &PfaffianSystem) -> IntegrabilityReport {
    let poset = build_intersection_poset(sys.arrangement());
    for x in poset.rank(2) {
        let mut total = QMatrix::zeros(sys.dim_e(), sys.dim_e());
        for &h in x.containing() {
            total = &total + sys.residue(h);
        }
        for &h in x.containing() {
            if !sys.residue(h).commutator(&total).is_zero() {
                return IntegrabilityReport {
                    integrable: false,
                    witness: Some((x.clone(), h)),
                };
            }
        }
    }
    IntegrabilityReport {
        integrable: true,
        witness: None,
    }
}

/// The nonzero integers `k` with `det(m - k) = 0`, scanning
/// `0 < |k| <= B` with `B` the Cauchy bound of the characteristic
/// polynomial.
pub fn nonzero_integer_eigenvalues(m: &QMatrix) -> Vec<BigInt> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let cp = char_poly(m);
    let bound = ceil_abs(&cp.cauchy_bound());
    let mut out = Vec::new();
    let mut k = -bound.clone();
    while k <= bound {
        if !k.is_zero() && cp.eval(&Q::from_integer(k.clone())).is_zero() {
            out.push(k.clone());
        }
        k += 1;
    }
    out
}

/// Sum of the residues over the hyperplanes transverse to the line.
pub fn transverse_sum(sys: &PfaffianSystem, y: &LineDirection) -> Result<QMatrix> {
    let split = parallel_subarrangement(sys.arrangement(), y)?;
    let mut s = QMatrix::zeros(sys.dim_e(), sys.dim_e());
    for &i in &split.transverse {
        s = &s + sys.residue(i);
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct GenericReport {
    pub passes: bool,
    /// `(label, k)`: the residue at `label` (or `SUM_LABEL` for
    /// `sum A_H + lambda`) has the nonzero integer eigenvalue `k`.
    pub offenders: Vec<(String, BigInt)>,
}

pub const SUM_LABEL: &str = "sum+lambda";

/// No transverse residue, and not `sum A_H + lambda`, has a nonzero integer
/// eigenvalue.
pub fn check_assumption_generic(
    sys: &PfaffianSystem,
    y: &LineDirection,
    lam: &ConvolutionParameter,
) -> Result<GenericReport> {
    let split = parallel_subarrangement(sys.arrangement(), y)?;
    let mut offenders = Vec::new();
    for &i in &split.transverse {
        for k in nonzero_integer_eigenvalues(sys.residue(i)) {
            offenders.push((sys.arrangement().get(i).label().to_string(), k));
        }
    }
    let shifted = &transverse_sum(sys, y)? + &QMatrix::scalar(sys.dim_e(), lam.lambda());
    for k in nonzero_integer_eigenvalues(&shifted) {
        offenders.push((SUM_LABEL.to_string(), k));
    }
    Ok(GenericReport {
        passes: offenders.is_empty(),
        offenders,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Gcd of the maximal minors of the pencil `A B + tau B`, where the columns
/// of `b` are independent. A nonconstant gcd means some `tau` admits a
/// nonzero `v` in the span of `b` with `(A + tau) v = 0`. Returns `None`
/// for an empty basis.
pub fn pencil_minor_gcd(a: &QMatrix, b: &QMatrix) -> Option<Poly> {
    let k = b.ncols();
    if k == 0 {
        return None;
    }
    let ab = a * b;
    let nodes: Vec<Q> = (0..=k as i64).map(q).collect();
    let all_cols: Vec<usize> = (0..k).collect();
    let mut g = Poly::zero();
    for rows in combinations(b.nrows(), k) {
        let values: Vec<Q> = nodes
            .iter()
            .map(|t| {
                let m = &ab + &b.scale(t);
                m.submatrix(&rows, &all_cols).det()
            })
            .collect();
        let minor = Poly::interpolate(&nodes, &values);
        g = Poly::gcd(&g, &minor);
        if g.degree() == Some(0) {
            break;
        }
    }
    Some(g)
}

/// True when the pencil has a common root (or is identically singular).
fn pencil_degenerate(a: &QMatrix, w: &QMatrix) -> bool {
    match pencil_minor_gcd(a, w) {
        None => false,
        Some(g) => g.degree() != Some(0),
    }
}

/// Common kernel of the given matrices, as basis columns.
pub fn common_kernel(ms: &[&QMatrix], n: usize) -> QMatrix {
    let mut stacked = QMatrix::zeros(0, n);
    for m in ms {
        stacked = stacked.vstack(m);
    }
    stacked.kernel()
}

#[derive(Clone, Debug)]
pub struct StarReport {
    pub holds: bool,
    /// Labels `H` for which the kernel condition fails.
    pub star1_failures: Vec<String>,
    /// Labels `H` for which the image condition fails.
    pub star2_failures: Vec<String>,
}

fn star_failures(residues: &[(String, QMatrix)], dim_e: usize) -> Vec<String> {
    let mut fails = Vec::new();
    for (i, (label, a)) in residues.iter().enumerate() {
        let others: Vec<&QMatrix> = residues
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (_, m))| m)
            .collect();
        let w = common_kernel(&others, dim_e);
        if pencil_degenerate(a, &w) {
            fails.push(label.clone());
        }
    }
    fails
}

/// The kernel condition on `A \ A_Y`, and the same condition on the
/// transposed residues (equivalent to the image condition).
pub fn check_star_conditions(sys: &PfaffianSystem, y: &LineDirection) -> Result<StarReport> {
    let split = parallel_subarrangement(sys.arrangement(), y)?;
    let direct: Vec<(String, QMatrix)> = split
        .transverse
        .iter()
        .map(|&i| {
            (
                sys.arrangement().get(i).label().to_string(),
                sys.residue(i).clone(),
            )
        })
        .collect();
    let transposed: Vec<(String, QMatrix)> = direct
        .iter()
        .map(|(l, m)| (l.clone(), m.transpose()))
        .collect();
    let star1_failures = star_failures(&direct, sys.dim_e());
    let star2_failures = star_failures(&transposed, sys.dim_e());
    Ok(StarReport {
        holds: star1_failures.is_empty() && star2_failures.is_empty(),
        star1_failures,
        star2_failures,
    })
}

/// Residues `-A_H^T`.
pub fn dual_system(sys: &PfaffianSystem) -> PfaffianSystem {
    let residues = sys.residues().iter().map(|a| -&a.transpose()).collect();
    PfaffianSystem::new_unchecked(sys.arrangement().clone(), sys.dim_e(), residues)
        .expect("shapes preserved")
}

/// The system restricted to one fiber of the projection along the line:
/// `dF/dt = sum_H A_H / (t - q_H) F`.
#[derive(Clone, Debug)]
pub struct FiberSystem {
    pub labels: Vec<String>,
    pub poles: Vec<Q>,
    pub residues: Vec<QMatrix>,
    pub dim_e: usize,
}

impl FiberSystem {
    /// Residue at infinity, `-sum_k R_k`.
    pub fn infinity_residue(&self) -> QMatrix {
        let mut s = QMatrix::zeros(self.dim_e, self.dim_e);
        for r in &self.residues {
            s = &s - r;
        }
        s
    }
}

pub fn fiber_restriction(
    sys: &PfaffianSystem,
    y: &LineDirection,
    base: &[Q],
) -> Result<FiberSystem> {
    let fp = fiber_points(sys.arrangement(), y, base)?;
    if !fp.distinct() {
        let (i, j) = fp.collisions[0];
        return Err(crate::error::Error::Invalid(format!(
            "fiber punctures of {} and {} coincide over this base point",
            sys.arrangement().get(i).label(),
            sys.arrangement().get(j).label()
        )));
    }
    Ok(FiberSystem {
        labels: fp
            .roots
            .iter()
            .map(|(i, _)| sys.arrangement().get(*i).label().to_string())
            .collect(),
        poles: fp.roots.iter().map(|(_, t)| t.clone()).collect(),
        residues: fp
            .roots
            .iter()
            .map(|(i, _)| sys.residue(*i).clone())
            .collect(),
        dim_e: sys.dim_e(),
    })
}

/// Human-readable line for a generic-assumption offender.
pub fn describe_offender(label: &str, k: &BigInt) -> String {
    format!(
        "{label}: eigenvalue {}",
        format_q(&Q::from_integer(k.clone()))
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::rational::qf;

    fn vertical() -> LineDirection {
        LineDirection::from_ints(&[0, 1]).unwrap()
    }

    fn two_transverse() -> Arrangement {
        Arrangement::from_integer_forms(2, &[("y=0", &[0, 1], 0), ("x-y=0", &[1, -1], 0)]).unwrap()
    }

    #[test]
    fn scalar_residues_integrable() {
        let arr = two_transverse();
        let sys = PfaffianSystem::new_unchecked(
            arr,
            2,
            vec![QMatrix::scalar(2, &qf(1, 2)), QMatrix::scalar(2, &q(3))],
        )
        .unwrap();
        assert!(check_integrability(&sys).integrable);
    }

    #[test]
    fn nilpotent_pair_not_integrable() {
        let sys = PfaffianSystem::new_unchecked(
            two_transverse(),
            2,
            vec![
                QMatrix::from_i64(&[&[0, 1], &[0, 0]]),
                QMatrix::from_i64(&[&[0, 0], &[1, 0]]),
            ],
        )
        .unwrap();
        let r = check_integrability(&sys);
        assert!(!r.integrable);
        let (flat, _) = r.witness.unwrap();
        assert_eq!(flat.rank(), 2);
        assert!(
            PfaffianSystem::new(sys.arrangement().clone(), 2, sys.residues().to_vec()).is_err()
        );
    }

    #[test]
    fn integer_eigenvalue_found() {
        let m = QMatrix::from_rows(vec![vec![q(1), q(0)], vec![q(0), qf(1, 2)]]);
        assert_eq!(nonzero_integer_eigenvalues(&m), vec![BigInt::from(1)]);
        let nil = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(nonzero_integer_eigenvalues(&nil).is_empty());
        let neg = QMatrix::from_i64(&[&[-3, 7], &[0, 2]]);
        assert_eq!(
            nonzero_integer_eigenvalues(&neg),
            vec![BigInt::from(-3), BigInt::from(2)]
        );
    }

    #[test]
    fn generic_assumption_fails_at_one() {
        let arr = Arrangement::from_integer_forms(2, &[("y=0", &[0, 1], 0)]).unwrap();
        let m = QMatrix::from_rows(vec![vec![q(1), q(0)], vec![q(0), qf(1, 2)]]);
        let sys = PfaffianSystem::new(arr, 2, vec![m]).unwrap();
        let lam = ConvolutionParameter::new(qf(1, 5)).unwrap();
        let r = check_assumption_generic(&sys, &vertical(), &lam).unwrap();
        assert!(!r.passes);
        assert_eq!(r.offenders[0], ("y=0".to_string(), BigInt::from(1)));
    }

    #[test]
    fn generic_assumption_passes_for_small_eigenvalues() {
        let sys = PfaffianSystem::new(
            two_transverse(),
            2,
            vec![
                QMatrix::from_rows(vec![vec![qf(1, 2), q(0)], vec![q(0), qf(1, 3)]]),
                QMatrix::from_rows(vec![vec![qf(1, 3), q(0)], vec![q(0), qf(1, 2)]]),
            ],
        )
        .unwrap();
        let lam = ConvolutionParameter::new(qf(1, 5)).unwrap();
        assert!(
            check_assumption_generic(&sys, &vertical(), &lam)
                .unwrap()
                .passes
        );
        // nilpotent residues: zero is not a nonzero integer
        let nil = PfaffianSystem::new(
            Arrangement::from_integer_forms(2, &[("y=0", &[0, 1], 0)]).unwrap(),
            2,
            vec![QMatrix::from_i64(&[&[0, 1], &[0, 0]])],
        )
        .unwrap();
        assert!(
            check_assumption_generic(&nil, &vertical(), &lam)
                .unwrap()
                .passes
        );
    }

    #[test]
    fn star_scalar_nonzero_holds() {
        let sys = PfaffianSystem::scalar(two_transverse(), &[qf(1, 2), qf(1, 3)]).unwrap();
        assert!(check_star_conditions(&sys, &vertical()).unwrap().holds);
    }

    #[test]
    fn star_fails_with_zero_partner() {
        let sys = PfaffianSystem::new(
            two_transverse(),
            2,
            vec![
                QMatrix::from_rows(vec![vec![qf(1, 2), q(1)], vec![q(0), qf(1, 3)]]),
                QMatrix::zeros(2, 2),
            ],
        )
        .unwrap();
        let r = check_star_conditions(&sys, &vertical()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.star1_failures, vec!["y=0".to_string()]);
    }

    #[test]
    fn pencil_of_empty_basis_is_vacuous() {
        assert!(pencil_minor_gcd(&QMatrix::identity(2), &QMatrix::zeros(2, 0)).is_none());
    }

    #[test]
    fn pencil_root_is_minus_eigenvalue() {
        let a = QMatrix::from_rows(vec![vec![qf(1, 2), q(0)], vec![q(0), q(3)]]);
        let g = pencil_minor_gcd(&a, &QMatrix::identity(2)).unwrap();
        assert_eq!(g.degree(), Some(2));
        assert!(g.eval(&qf(-1, 2)).is_zero());
        assert!(g.eval(&q(-3)).is_zero());
    }

    #[test]
    fn dual_is_involution() {
        let sys = PfaffianSystem::new(
            two_transverse(),
            2,
            vec![
                QMatrix::from_rows(vec![vec![qf(1, 2), q(1)], vec![q(0), qf(1, 3)]]),
                QMatrix::scalar(2, &q(2)),
            ],
        )
        .unwrap();
        let dd = dual_system(&dual_system(&sys));
        assert_eq!(dd.residues(), sys.residues());
        assert_eq!(dual_system(&sys).residue(1)[(0, 0)], q(-2));
    }

    #[test]
    fn fiber_restriction_of_four_lines() {
        let arr = Arrangement::from_integer_forms(
            2,
            &[
                ("y=0", &[0, 1], 0),
                ("x-y=0", &[1, -1], 0),
                ("x=0", &[1, 0], 0),
                ("x=1", &[1, 0], -1),
            ],
        )
        .unwrap();
        let sys = PfaffianSystem::scalar(arr, &[qf(1, 2), qf(1, 3), q(0), q(0)]).unwrap();
        let f = fiber_restriction(&sys, &vertical(), &[q(2)]).unwrap();
        assert_eq!(f.poles, vec![q(0), q(2)]);
        assert_eq!(f.residues[1][(0, 0)], qf(1, 3));
        assert_eq!(f.infinity_residue()[(0, 0)], qf(-5, 6));
    }

    #[test]
    fn fiber_restriction_empty_when_all_parallel() {
        let arr = Arrangement::from_integer_forms(2, &[("x=0", &[1, 0], 0)]).unwrap();
        let sys = PfaffianSystem::scalar(arr, &[qf(1, 2)]).unwrap();
        let f = fiber_restriction(&sys, &vertical(), &[q(1)]).unwrap();
        assert!(f.poles.is_empty());
        assert!(f.infinity_residue().is_zero());
    }
}
