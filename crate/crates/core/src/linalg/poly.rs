//! Univariate polynomials over the rationals.

use num_traits::{One, Signed, Zero};

use super::exact::QMatrix;
use crate::rational::{q, Q};

/// Coefficients in ascending degree order, no trailing zeros. The zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Q> {
        self.0.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => Poly(self.0.iter().map(|c| c / l).collect()),
        }
    }

    /// Euclidean remainder.
    pub fn rem(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let dl = d.lead().unwrap().clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / &dl;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Lagrange interpolation through `(xs[i], ys[i])` with distinct nodes.
    pub fn interpolate(xs: &[Q], ys: &[Q]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let mut acc = vec![Q::zero(); xs.len()];
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            if yi.is_zero() {
                continue;
            }
            // basis polynomial prod_{j != i} (x - xj) / (xi - xj)
            let mut basis = vec![Q::one()];
            let mut denom = Q::one();
            for (j, xj) in xs.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![Q::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * xj;
                }
                basis = next;
                denom *= xi - xj;
            }
            let f = yi / denom;
            for (k, c) in basis.iter().enumerate() {
                acc[k] += c * &f;
            }
        }
        Poly::new(acc)
    }

    /// Cauchy bound `1 + max |c_i / c_n|`: every root has modulus below it.
    pub fn cauchy_bound(&self) -> Q {
        let m = self.monic();
        let n = m.0.len().saturating_sub(1);
        q(1) + m.0[..n]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Q::zero)
    }
}

/// Monic characteristic polynomial `det(x Id - m)` by Faddeev-LeVerrier.
pub fn char_poly(m: &QMatrix) -> Poly {
    assert!(m.is_square());
    let n = m.nrows();
    // c[n] = 1, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = QMatrix::zeros(n, n);
    for k in 1..=n {
        let prev = &(m * &mk) + &QMatrix::scalar(n, &coeffs[n - k + 1]);
        let am = m * &prev;
        coeffs[n - k] = -am.trace() / q(k as i64);
        mk = prev;
    }
    Poly::new(coeffs)
}
