use crate::error::{Error, Result};
use crate::linalg::complex::{
    column_span, identity, null_space, numeric_rank, orth_complement, CMat,
};

use super::tuple::{CharacterValue, MonodromyTuple};

/// Relative singular-value threshold for numeric rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// The convolution tuple `(B_1, ..., B_n)` acting on `V^n` (block-major).
///
/// `B_k` is the identity outside block row `k`, which reads
/// `(M_1 - 1, ..., M_{k-1} - 1, c M_k, c (M_{k+1} - 1), ..., c (M_n - 1))`.
pub fn convolution_tuple(t: &MonodromyTuple, c: &CharacterValue) -> Vec<CMat> {
    let (n, r) = (t.n(), t.rank());
    let cv = c.value();
    let id = identity(r);
    (0..n)
        .map(|k| {
            let mut b = identity(n * r);
            for (j, m) in t.matrices().iter().enumerate() {
                let block = match j.cmp(&k) {
                    std::cmp::Ordering::Less => m - &id,
                    std::cmp::Ordering::Equal => m * cv,
                    std::cmp::Ordering::Greater => (m - &id) * cv,
                };
                b.view_mut((k * r, j * r), (r, r)).copy_from(&block);
            }
            b
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct KatzResult {
    pub tuple: MonodromyTuple,
    pub convolution: Vec<CMat>,
    pub dim_k: usize,
    pub dim_l: usize,
}

/// `K = ⊕_k Ker(M_k - 1)` placed in block `k`.
pub fn katz_k_subspace(t: &MonodromyTuple, tol: f64) -> CMat {
    let (n, r) = (t.n(), t.rank());
    let id = identity(r);
    let mut cols = Vec::new();
    for (k, m) in t.matrices().iter().enumerate() {
        let ker = null_space(&(m - &id), tol);
        for c in 0..ker.ncols() {
            let mut v = CMat::zeros(n * r, 1);
            v.view_mut((k * r, 0), (r, 1)).copy_from(&ker.column(c));
            cols.push(v);
        }
    }
    hstack(&cols, n * r)
}

/// `L = ∩_k Ker(B_k - 1)`.
pub fn katz_l_subspace(conv: &[CMat], dim: usize, tol: f64) -> CMat {
    if conv.is_empty() {
        return identity(dim);
    }
    let id = identity(dim);
    let mut stacked = CMat::zeros(dim * conv.len(), dim);
    for (k, b) in conv.iter().enumerate() {
        stacked
            .view_mut((k * dim, 0), (dim, dim))
            .copy_from(&(b - &id));
    }
    null_space(&stacked, tol)
}

fn hstack(cols: &[CMat], rows: usize) -> CMat {
    let total: usize = cols.iter().map(|c| c.ncols()).sum();
    let mut out = CMat::zeros(rows, total);
    let mut at = 0;
    for c in cols {
        out.view_mut((0, at), (rows, c.ncols())).copy_from(c);
        at += c.ncols();
    }
    out
}

/// Induced action on `C^d / span(sub)` for an invariant `sub`, through the
/// orthonormal complement `comp`: the lower-right block `comp^H B comp`.
fn induced(b: &CMat, comp: &CMat) -> CMat {
    comp.adjoint() * b * comp
}

/// Dettweiler-Reiter middle convolution `MC_c`, with the quotient of the
/// convolution tuple by `K + L` presented on the orthogonal complement.
pub fn multiplicative_middle_convolution(
    t: &MonodromyTuple,
    c: &CharacterValue,
    tol: f64,
) -> Result<KatzResult> {
    let dim = t.n() * t.rank();
    let conv = convolution_tuple(t, c);
    let k = katz_k_subspace(t, tol);
    let l = katz_l_subspace(&conv, dim, tol);
    let sub = hstack(&[k.clone(), l.clone()], dim);
    if numeric_rank(&sub, tol) != sub.ncols() {
        return Err(Error::Internal("K and L intersect nontrivially".into()));
    }
    let span = column_span(&sub, tol);
    let comp = orth_complement(&span, dim, tol);
    let mut matrices = Vec::with_capacity(conv.len());
    for b in &conv {
        let image = b * &span;
        let leak = (comp.adjoint() * &image).norm();
        if leak > 1e3 * tol * b.norm().max(1.0) * (span.ncols().max(1) as f64).sqrt() {
            return Err(Error::Internal(format!(
                "K + L is not invariant (leak {leak:.3e})"
            )));
        }
        matrices.push(induced(b, &comp));
    }
    Ok(KatzResult {
        tuple: MonodromyTuple::with_labels(comp.ncols(), matrices, t.labels().to_vec())?,
        convolution: conv,
        dim_k: k.ncols(),
        dim_l: l.ncols(),
    })
}
