use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::{Arrangement, Hyperplane};
use crate::linalg::QMatrix;
use crate::rational::{format_q, Q};

/// A nonempty affine subspace cut out by hyperplanes, stored as the RREF of
/// its augmented system `[A | b]` (solutions of `A x = b`). Equality is
/// equality of that canonical form.
#[derive(Clone)]
pub struct Flat {
    dim: usize,
    equations: QMatrix,
    containing: Vec<usize>,
}

impl Flat {
    /// The whole ambient space.
    pub fn ambient(dim: usize) -> Flat {
        Flat {
            dim,
            equations: QMatrix::zeros(0, dim + 1),
            containing: Vec::new(),
        }
    }

    /// Canonicalizes the augmented system; `None` when inconsistent.
    pub fn from_equations(dim: usize, augmented: &QMatrix) -> Option<Flat> {
        assert_eq!(augmented.ncols(), dim + 1);
        let (r, pivots) = augmented.rref();
        if pivots.last() == Some(&dim) {
            return None;
        }
        let rows: Vec<usize> = (0..pivots.len()).collect();
        let cols: Vec<usize> = (0..=dim).collect();
        Some(Flat {
            dim,
            equations: r.submatrix(&rows, &cols),
            containing: Vec::new(),
        })
    }

    pub fn from_hyperplane(h: &Hyperplane) -> Flat {
        let row = QMatrix::from_rows(vec![h.equation_row()]);
        Flat::from_equations(h.dim(), &row).expect("a hyperplane is consistent")
    }

    pub fn rank(&self) -> usize {
        self.equations.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn equations(&self) -> &QMatrix {
        &self.equations
    }

    /// Indices (into the arrangement this flat was built from) of the
    /// hyperplanes containing it. Empty until [`Flat::attach`] runs.
    pub fn containing(&self) -> &[usize] {
        &self.containing
    }

    pub fn containing_labels<'a>(&self, arr: &'a Arrangement) -> Vec<&'a str> {
        self.containing
            .iter()
            .map(|&i| arr.get(i).label())
            .collect()
    }

    /// Records which hyperplanes of `arr` contain this flat.
    pub fn attach(mut self, arr: &Arrangement) -> Flat {
        self.containing = arr
            .hyperplanes()
            .iter()
            .enumerate()
            .filter(|(_, h)| self.lies_in(h))
            .map(|(i, _)| i)
            .collect();
        self
    }

    /// Intersection with a hyperplane; `None` when empty.
    pub fn intersect(&self, h: &Hyperplane) -> Option<Flat> {
        let row = QMatrix::from_rows(vec![h.equation_row()]);
        Flat::from_equations(self.dim, &self.equations.vstack(&row))
    }

    /// True when the flat is contained in `h`.
    pub fn lies_in(&self, h: &Hyperplane) -> bool {
        match self.intersect(h) {
            Some(f) => f.rank() == self.rank(),
            None => false,
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Flat) -> bool {
        match Flat::from_equations(self.dim, &self.equations.vstack(&other.equations)) {
            Some(f) => f.rank() == self.rank(),
            None => false,
        }
    }

    /// The flat swept out by translating `self` along `direction`: the
    /// equations are the combinations of the defining rows that annihilate
    /// the direction.
    pub fn plus_direction(&self, direction: &[Q]) -> Flat {
        let k = self.rank();
        if k == 0 {
            return self.clone();
        }
        let lin: Vec<Q> = (0..k)
            .map(|i| {
                (0..self.dim)
                    .map(|j| &self.equations[(i, j)] * &direction[j])
                    .sum()
            })
            .collect();
        if lin.iter().all(Zero::is_zero) {
            return self.clone();
        }
        let combos = QMatrix::from_rows(vec![lin]).kernel(); // k x (k-1)
        let new_rows = &combos.transpose() * &self.equations;
        Flat::from_equations(self.dim, &new_rows).expect("sum of a consistent flat and a line")
    }

    /// A point of the flat: free coordinates set to zero.
    pub fn point(&self) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.dim];
        for i in 0..self.rank() {
            let pivot = (0..self.dim)
                .find(|&j| !self.equations[(i, j)].is_zero())
                .expect("rows are nonzero");
            x[pivot] = self.equations[(i, self.dim)].clone();
        }
        x
    }

    /// When the flat is a hyperplane, its defining form.
    pub fn as_hyperplane(&self, label: &str) -> Option<Hyperplane> {
        if self.rank() != 1 {
            return None;
        }
        let row = self.equations.row(0);
        Hyperplane::new(label, row[..self.dim].to_vec(), -row[self.dim].clone()).ok()
    }

    pub fn pretty(&self) -> String {
        if self.rank() == 0 {
            return format!("C^{}", self.dim);
        }
        let rows: Vec<String> = (0..self.rank())
            .map(|i| {
                let r: Vec<String> = self.equations.row(i).iter().map(format_q).collect();
                format!("[{}]", r.join(" "))
            })
            .collect();
        format!("{{{}}}", rows.join(" "))
    }
}

impl PartialEq for Flat {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.equations == other.equations
    }
}

impl Eq for Flat {}

impl std::hash::Hash for Flat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.equations.hash(state);
    }
}

impl PartialOrd for Flat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rank first, then lexicographic RREF.
impl Ord for Flat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.equations.lex_cmp(&other.equations))
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flat(rank {}, {})", self.rank(), self.pretty())
    }
}
