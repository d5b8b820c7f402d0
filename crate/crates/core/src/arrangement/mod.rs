//! Exact combinatorics of affine hyperplane arrangements.

mod cone;
mod flat;
mod hyperplane;
mod line;
mod poset;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::rational::Q;

pub use cone::{cone, decone, CONE_LABEL};
pub use flat::Flat;
pub use hyperplane::Hyperplane;
pub use line::{
    fiber_points, format_point, goodness_fiber_oracle, goodness_fiber_oracle_from, is_good_line,
    parallel_subarrangement, shifted_family, FiberPoints, GoodLineReport, LineDirection, LineFrame,
    OracleReport, ParallelSplit, ShiftedHyperplane,
};
pub use poset::{brute_force_flats, build_intersection_poset, IntersectionPoset};

/// A finite set of distinct affine hyperplanes in `C^dim` with unique labels.
#[derive(Clone, Debug)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("ambient dimension must be positive".into()));
        }
        let mut labels = HashSet::new();
        let mut forms = HashSet::new();
        for h in &hyperplanes {
            if h.dim() != dim {
                return Err(Error::Invalid(format!(
                    "hyperplane {} has {} coefficients, expected {dim}",
                    h.label(),
                    h.dim()
                )));
            }
            if !labels.insert(h.label().to_string()) {
                return Err(Error::Invalid(format!("duplicate label {:?}", h.label())));
            }
            if !forms.insert(h.clone()) {
                return Err(Error::Invalid(format!(
                    "hyperplane {} duplicates another hyperplane",
                    h.label()
                )));
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    /// Builds from `(label, coeffs, constant)` triples of integers.
    pub fn from_integer_forms(dim: usize, forms: &[(&str, &[i64], i64)]) -> Result<Self> {
        let hs = forms
            .iter()
            .map(|(l, c, a)| {
                Hyperplane::new(
                    *l,
                    c.iter().map(|&x| crate::rational::q(x)).collect(),
                    crate::rational::q(*a),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn get(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.hyperplanes.iter().position(|h| h.label() == label)
    }

    /// Index of the hyperplane with the same canonical form as `h`.
    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|g| g == h)
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.index_of(h).is_some()
    }

    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(Hyperplane::is_central)
    }

    pub fn subarrangement(&self, indices: &[usize]) -> Arrangement {
        Arrangement {
            dim: self.dim,
            hyperplanes: indices
                .iter()
                .map(|&i| self.hyperplanes[i].clone())
                .collect(),
        }
    }

    /// Same hyperplane set as `other`, compared by canonical forms.
    pub fn same_hyperplanes(&self, other: &Arrangement) -> bool {
        self.dim == other.dim
            && self.len() == other.len()
            && self.hyperplanes.iter().all(|h| other.contains(h))
    }

    /// Applies the coordinate change `x' = g x` (with `g_inv = g^{-1}`).
    pub fn transform(&self, g_inv: &crate::linalg::QMatrix) -> Result<Arrangement> {
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| {
                let coeffs: Vec<Q> = (0..self.dim)
                    .map(|j| (0..self.dim).map(|i| &h.coeffs()[i] * &g_inv[(i, j)]).sum())
                    .collect();
                Hyperplane::new(h.label(), coeffs, h.constant().clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.dim, hs)
    }
}
