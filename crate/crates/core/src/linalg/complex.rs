//! Floating-point complex matrix helpers built on nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::exact::QMatrix;
use crate::rational::to_f64;

pub type C64 = Complex64;
pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `exp(2 pi i t)`.
pub fn unit(t: f64) -> C64 {
    let a = 2.0 * std::f64::consts::PI * t;
    C64::new(a.cos(), a.sin())
}

pub fn to_cmat(m: &QMatrix) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| c(to_f64(&m[(i, j)]), 0.0))
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn frob(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect()
}

/// Orthonormal basis (as columns) of the null space of `m`. Singular values
/// at most `rel_tol * max(1, sigma_max)` count as zero.
pub fn null_space(m: &CMat, rel_tol: f64) -> CMat {
    let n = m.ncols();
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return identity(n);
    }
    // pad to at least n rows so the SVD exposes the full right singular basis
    let padded = if m.nrows() < n {
        let mut p = CMat::zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let sv = &svd.singular_values;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let thr = rel_tol * smax.max(1.0);
    let cols: Vec<_> = (0..sv.len())
        .filter(|&i| sv[i] <= thr)
        .map(|i| v_t.row(i).adjoint())
        .collect();
    if cols.is_empty() {
        CMat::zeros(n, 0)
    } else {
        CMat::from_columns(&cols)
    }
}

/// Orthonormal basis of the column span of `m`.
pub fn column_span(m: &CMat, rel_tol: f64) -> CMat {
    if m.ncols() == 0 || m.nrows() == 0 {
        return CMat::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let sv = &svd.singular_values;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let thr = rel_tol * smax.max(1.0);
    let cols: Vec<_> = (0..sv.len())
        .filter(|&i| sv[i] > thr)
        .map(|i| u.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        CMat::zeros(m.nrows(), 0)
    } else {
        CMat::from_columns(&cols)
    }
}

pub fn numeric_rank(m: &CMat, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let smax = sv.first().copied().unwrap_or(0.0);
    sv.iter().filter(|&&s| s > rel_tol * smax.max(1.0)).count()
}

/// Orthonormal completion: columns spanning the orthogonal complement of
/// the span of the orthonormal columns `q` in `C^n`.
pub fn orth_complement(q: &CMat, n: usize, rel_tol: f64) -> CMat {
    if q.ncols() == 0 {
        return identity(n);
    }
    null_space(&q.adjoint(), rel_tol)
}

/// Condition number `sigma_max / sigma_min`; infinite when singular.
pub fn condition_number(m: &CMat) -> f64 {
    let sv = singular_values(m);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 1.0,
    }
}

/// Eigenvalues via the complex Schur form.
pub fn eigenvalues(m: &CMat) -> Vec<C64> {
    let n = m.nrows();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![m[(0, 0)]];
    }
    // the unshifted QR iteration can stall on derogatory matrices; retry
    // with a diagonal shift, which moves the iteration but not the spectrum
    let scale = frob(m).max(1.0);
    for shift in SCHUR_SHIFTS {
        let sigma = shift * scale;
        let shifted = m + identity(n) * sigma;
        if let Some(schur) = shifted.try_schur(f64::EPSILON, SCHUR_MAX_ITER * n) {
            let (_, t) = schur.unpack();
            return (0..n).map(|i| t[(i, i)] - sigma).collect();
        }
    }
    let (_, t) = m.clone().schur().unpack();
    (0..n).map(|i| t[(i, i)]).collect()
}

const SCHUR_MAX_ITER: usize = 200;
const SCHUR_SHIFTS: [C64; 4] = [
    C64::new(0.0, 0.0),
    C64::new(0.37, 0.21),
    C64::new(-0.29, 0.43),
    C64::new(0.13, -0.51),
];

/// Monic characteristic polynomial coefficients, ascending degree, by
/// Faddeev-LeVerrier.
pub fn char_poly(m: &CMat) -> Vec<C64> {
    let n = m.nrows();
    let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
    coeffs[n] = C64::new(1.0, 0.0);
    let mut mk = CMat::zeros(n, n);
    for k in 1..=n {
        let prev = m * &mk + identity(n) * coeffs[n - k + 1];
        let am = m * &prev;
        coeffs[n - k] = -am.trace() / (k as f64);
        mk = prev;
    }
    coeffs
}

pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_stalling_block_triangular_matrix() {
        // plain QR iteration does not converge on this convolution matrix
        let head = [
            c(1.0347756184747092, 0.5811771888336288),
            c(0.01942420478636603, 0.6137709836679377),
            c(0.5349257656381994, -0.38507595427632146),
            c(0.4398017498672414, -0.24664563545746382),
            c(0.3878637707804208, 0.29909007678774036),
            c(-0.09277159020069486, 0.3530513133309374),
            c(0.5589294609145825, -0.15366375400635535),
            c(0.8836997395856954, 0.944759712347608),
            c(-0.11325470831592749, 0.30582531252633943),
            c(1.1976599106528139, 0.09209198006892672),
            c(0.03056867033286148, 1.284190673774448),
            c(0.2784065234035309, -0.25642223233189193),
        ];
        let mut m = identity(6);
        for (i, z) in head.iter().enumerate() {
            // column-major top two rows
            m[(i % 2, i / 2)] = *z;
        }
        let (a, b, cc, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let disc = ((a - d) * (a - d) + cc * b * 4.0).sqrt();
        let mut expect = vec![(a + d + disc) / 2.0, (a + d - disc) / 2.0];
        expect.extend([c(1.0, 0.0); 4]);
        let mut got = eigenvalues(&m);
        for e in &expect {
            let (i, dist) = got
                .iter()
                .enumerate()
                .map(|(i, g)| (i, (g - e).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            assert!(dist < 1e-7, "{e} missing, nearest at {dist:e}");
            got.remove(i);
        }
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]);
        let ns = null_space(&m, 1e-12);
        assert_eq!(ns.ncols(), 1);
        assert!(frob(&(&m * &ns)) < 1e-12);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let m = CMat::from_row_slice(1, 3, &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]);
        assert_eq!(null_space(&m, 1e-12).ncols(), 2);
    }

    #[test]
    fn complex_eigenvalues_of_rotation() {
        let m = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let mut ev = eigenvalues(&m);
        ev.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_complex_triangular() {
        let m = CMat::from_row_slice(
            3,
            3,
            &[
                unit(0.2),
                c(1.0, 0.0),
                c(0.0, 3.0),
                c(0.0, 0.0),
                unit(0.5),
                c(2.0, -1.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
            ],
        );
        let p = CMat::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0),
                c(2.0, 1.0),
                c(0.0, 0.0),
                c(0.0, 1.0),
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(3.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 1.0),
            ],
        );
        let conj = &p * &m * p.clone().try_inverse().unwrap();
        let ev = eigenvalues(&conj);
        for want in [unit(0.2), unit(0.5), c(1.0, 0.0)] {
            assert!(
                ev.iter().any(|z| (z - want).norm() < 1e-9),
                "{want} missing from {ev:?}"
            );
        }
    }

    #[test]
    fn char_poly_of_diagonal() {
        let m = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(2.0, 0.0), c(0.0, 1.0)]));
        let cp = char_poly(&m);
        // (x - 2)(x - i) = x^2 - (2 + i) x + 2i
        assert!(max_abs_diff(&cp, &[c(0.0, 2.0), c(-2.0, -1.0), c(1.0, 0.0)]) < 1e-12);
    }
}
