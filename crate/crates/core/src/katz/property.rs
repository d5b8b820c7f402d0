use crate::linalg::complex::{eigenvalues, identity, null_space, singular_values, CMat, C64};

use super::tuple::MonodromyTuple;

/// Smallest singular values below this multiple of the rank tolerance, but
/// above the tolerance itself, are flagged as near failures.
pub const NEAR_FAILURE_FACTOR: f64 = 1e3;

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub holds: bool,
    pub common_fixed_vector: bool,
    pub common_fixed_covector: bool,
    /// Punctures (1-based) where the kernel condition fails.
    pub kernel_failures: Vec<usize>,
    /// Punctures (1-based) where the dual condition fails.
    pub dual_failures: Vec<usize>,
    /// Punctures whose decisive singular value was within
    /// [`NEAR_FAILURE_FACTOR`] of the threshold.
    pub near_failures: Vec<usize>,
}

fn stacked_minus_id(ms: &[&CMat], r: usize) -> CMat {
    let id = identity(r);
    let mut s = CMat::zeros(r * ms.len(), r);
    for (k, m) in ms.iter().enumerate() {
        s.view_mut((k * r, 0), (r, r)).copy_from(&(*m - &id));
    }
    s
}

fn common_fixed(ms: &[&CMat], r: usize, tol: f64) -> CMat {
    if ms.is_empty() {
        return identity(r);
    }
    null_space(&stacked_minus_id(ms, r), tol)
}

/// Smallest singular value of `(M_k - tau) W` over the eigenvalues `tau` of
/// `M_k`, with `W` the common fixed space of the other matrices; `None`
/// when `W = 0`.
fn kernel_margin(ms: &[CMat], k: usize, r: usize, tol: f64) -> Option<f64> {
    let others: Vec<&CMat> = ms
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != k)
        .map(|(_, m)| m)
        .collect();
    let w = common_fixed(&others, r, tol);
    if w.ncols() == 0 {
        return None;
    }
    let scale = ms[k].norm().max(1.0);
    let margin = eigenvalues(&ms[k])
        .into_iter()
        .map(|tau: C64| {
            let pencil = (&ms[k] - identity(r) * tau) * &w;
            singular_values(&pencil).last().copied().unwrap_or(0.0) / scale
        })
        .fold(f64::INFINITY, f64::min);
    Some(margin)
}

/// Operational criterion for property ℘: no common fixed vector or
/// covector, and for every `k` and `tau`,
/// `∩_{j≠k} Ker(M_j - 1) ∩ Ker(M_k - tau) = 0`, together with the same
/// condition on the transposed tuple.
pub fn check_property_p(t: &MonodromyTuple, tol: f64) -> PropertyReport {
    let r = t.rank();
    let ms: Vec<CMat> = t.matrices().to_vec();
    let ts: Vec<CMat> = ms.iter().map(|m| m.transpose()).collect();
    let refs: Vec<&CMat> = ms.iter().collect();
    let trefs: Vec<&CMat> = ts.iter().collect();
    let common_fixed_vector = r > 0 && common_fixed(&refs, r, tol).ncols() > 0;
    let common_fixed_covector = r > 0 && common_fixed(&trefs, r, tol).ncols() > 0;
    let mut kernel_failures = Vec::new();
    let mut dual_failures = Vec::new();
    let mut near_failures = Vec::new();
    for k in 0..t.n() {
        for (set, failures) in [(&ms, &mut kernel_failures), (&ts, &mut dual_failures)] {
            if let Some(m) = kernel_margin(set, k, r, tol) {
                if m <= tol {
                    failures.push(k + 1);
                } else if m <= NEAR_FAILURE_FACTOR * tol && !near_failures.contains(&(k + 1)) {
                    near_failures.push(k + 1);
                }
            }
        }
    }
    PropertyReport {
        holds: !common_fixed_vector
            && !common_fixed_covector
            && kernel_failures.is_empty()
            && dual_failures.is_empty(),
        common_fixed_vector,
        common_fixed_covector,
        kernel_failures,
        dual_failures,
        near_failures,
    }
}
