use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::complex::{
    c, char_poly, condition_number, identity, max_abs_diff, null_space, CMat, C64,
};

use super::tuple::MonodromyTuple;

pub const DEFAULT_ISO_TOL: f64 = 1e-6;
pub const TUPLE_ISO_SEED: u64 = 0x7a1e_0b5e_55ed_0002;
const COMBINATION_ATTEMPTS: usize = 8;

/// Named conjugacy invariant: characteristic polynomial of a generator or of
/// an adjacent product `M_{k+1} M_k`.
#[derive(Clone, Debug)]
pub struct Invariant {
    pub name: String,
    pub lhs: Vec<C64>,
    pub rhs: Vec<C64>,
    pub diff: f64,
}

#[derive(Clone, Debug)]
pub struct TupleIsoReport {
    pub isomorphic: bool,
    pub invariants: Vec<Invariant>,
    pub invariants_match: bool,
    /// Dimension of the numeric intertwiner space.
    pub hom_dim: usize,
    pub intertwiner: Option<CMat>,
    /// `max_k |S M1_k - M2_k S| / |S|`.
    pub residual: f64,
    pub condition: f64,
}

fn scaled_diff(a: &[C64], b: &[C64]) -> f64 {
    let scale = a.iter().chain(b).map(|z| z.norm()).fold(1.0, f64::max);
    max_abs_diff(a, b) / scale
}

pub fn conjugacy_invariants(t1: &MonodromyTuple, t2: &MonodromyTuple) -> Vec<Invariant> {
    let mut out = Vec::new();
    let (m1, m2) = (t1.matrices(), t2.matrices());
    for k in 0..t1.n() {
        let (lhs, rhs) = (char_poly(&m1[k]), char_poly(&m2[k]));
        out.push(Invariant {
            name: t1.labels()[k].clone(),
            diff: scaled_diff(&lhs, &rhs),
            lhs,
            rhs,
        });
    }
    for k in 0..t1.n().saturating_sub(1) {
        let (lhs, rhs) = (
            char_poly(&(&m1[k + 1] * &m1[k])),
            char_poly(&(&m2[k + 1] * &m2[k])),
        );
        out.push(Invariant {
            name: format!("{}*{}", t1.labels()[k + 1], t1.labels()[k]),
            diff: scaled_diff(&lhs, &rhs),
            lhs,
            rhs,
        });
    }
    out
}

/// Relative intertwining residual `max_k |S A_k - B_k S| / |S|`.
pub fn intertwining_residual(s: &CMat, a: &[CMat], b: &[CMat]) -> f64 {
    let sn = s.norm().max(f64::MIN_POSITIVE);
    a.iter()
        .zip(b)
        .map(|(x, y)| (s * x - y * s).norm() / (sn * x.norm().max(y.norm()).max(1.0)))
        .fold(0.0, f64::max)
}

/// Numeric isomorphism of tuples: invariant comparison first, then the null
/// space of `S -> (S M1_k - M2_k S)_k` and a seeded random element of it.
pub fn tuple_isomorphism(
    t1: &MonodromyTuple,
    t2: &MonodromyTuple,
    tol: f64,
) -> Result<TupleIsoReport> {
    tuple_isomorphism_seeded(t1, t2, tol, TUPLE_ISO_SEED)
}

/// As [`tuple_isomorphism`] with an explicit seed for the random
/// combinations.
pub fn tuple_isomorphism_seeded(
    t1: &MonodromyTuple,
    t2: &MonodromyTuple,
    tol: f64,
    seed: u64,
) -> Result<TupleIsoReport> {
    if t1.rank() != t2.rank() || t1.n() != t2.n() {
        return Err(Error::DimensionMismatch(format!(
            "tuples of rank {} / length {} and rank {} / length {}",
            t1.rank(),
            t1.n(),
            t2.rank(),
            t2.n()
        )));
    }
    let r = t1.rank();
    let invariants = conjugacy_invariants(t1, t2);
    let invariants_match = invariants.iter().all(|i| i.diff <= tol);
    let mut report = TupleIsoReport {
        isomorphic: false,
        invariants,
        invariants_match,
        hom_dim: 0,
        intertwiner: None,
        residual: f64::INFINITY,
        condition: f64::INFINITY,
    };
    if r == 0 {
        report.isomorphic = true;
        report.intertwiner = Some(CMat::zeros(0, 0));
        report.residual = 0.0;
        report.condition = 1.0;
        return Ok(report);
    }
    if !invariants_match {
        return Ok(report);
    }
    // vec(S A) = (A^T ⊗ I) vec S and vec(B S) = (I ⊗ B) vec S, column-major
    let id = identity(r);
    let rr = r * r;
    let mut stacked = CMat::zeros(rr * t1.n(), rr);
    for (k, (a, b)) in t1.matrices().iter().zip(t2.matrices()).enumerate() {
        let op = a.transpose().kronecker(&id) - id.kronecker(b);
        stacked.view_mut((k * rr, 0), (rr, rr)).copy_from(&op);
    }
    let ns = null_space(&stacked, tol);
    report.hom_dim = ns.ncols();
    if ns.ncols() == 0 {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(CMat, f64, f64)> = None;
    for _ in 0..COMBINATION_ATTEMPTS {
        let coeffs: Vec<C64> = (0..ns.ncols())
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let v = &ns * DMatrix::from_vec(coeffs.len(), 1, coeffs);
        let s = CMat::from_fn(r, r, |i, j| v[(j * r + i, 0)]);
        let cond = condition_number(&s);
        let res = intertwining_residual(&s, t1.matrices(), t2.matrices());
        if best.as_ref().is_none_or(|b| cond < b.1) {
            best = Some((s, cond, res));
        }
        if cond < 1.0 / tol {
            break;
        }
    }
    let (s, cond, res) = best.expect("at least one attempt");
    report.isomorphic = cond < 1.0 / tol && res < tol;
    report.intertwiner = Some(s);
    report.condition = cond;
    report.residual = res;
    Ok(report)
}
