use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{format_q, is_integer, Q};

use super::checks::check_integrability;

/// `d - sum_H A_H dlog f_H` with constant rational residues, one per
/// hyperplane (aligned with the arrangement's order).
#[derive(Clone, Debug)]
pub struct PfaffianSystem {
    arrangement: Arrangement,
    dim_e: usize,
    residues: Vec<QMatrix>,
}

impl PfaffianSystem {
    /// Validates shapes and integrability.
    pub fn new(arrangement: Arrangement, dim_e: usize, residues: Vec<QMatrix>) -> Result<Self> {
        let sys = Self::new_unchecked(arrangement, dim_e, residues)?;
        let report = check_integrability(&sys);
        if let Some((flat, h)) = report.witness {
            return Err(Error::NonIntegrable {
                flat: flat.pretty(),
                hyperplane: sys.arrangement.get(h).label().to_string(),
            });
        }
        Ok(sys)
    }

    /// Validates shapes only.
    pub fn new_unchecked(
        arrangement: Arrangement,
        dim_e: usize,
        residues: Vec<QMatrix>,
    ) -> Result<Self> {
        if residues.len() != arrangement.len() {
            return Err(Error::Invalid(format!(
                "{} residues for {} hyperplanes",
                residues.len(),
                arrangement.len()
            )));
        }
        for (h, r) in arrangement.hyperplanes().iter().zip(&residues) {
            if r.nrows() != dim_e || r.ncols() != dim_e {
                return Err(Error::DimensionMismatch(format!(
                    "residue at {} is {}x{}, expected {dim_e}x{dim_e}",
                    h.label(),
                    r.nrows(),
                    r.ncols()
                )));
            }
        }
        Ok(PfaffianSystem {
            arrangement,
            dim_e,
            residues,
        })
    }

    /// Residues keyed by label, in any order.
    pub fn from_labeled(
        arrangement: Arrangement,
        dim_e: usize,
        residues: Vec<(String, QMatrix)>,
        checked: bool,
    ) -> Result<Self> {
        let mut slots: Vec<Option<QMatrix>> = vec![None; arrangement.len()];
        for (label, m) in residues {
            let i = arrangement.index_of_label(&label).ok_or_else(|| {
                Error::Invalid(format!("residue for unknown hyperplane {label:?}"))
            })?;
            if slots[i].replace(m).is_some() {
                return Err(Error::Invalid(format!("two residues for {label:?}")));
            }
        }
        let residues = slots
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    Error::Invalid(format!(
                        "missing residue for {:?}",
                        arrangement.get(i).label()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if checked {
            Self::new(arrangement, dim_e, residues)
        } else {
            Self::new_unchecked(arrangement, dim_e, residues)
        }
    }

    /// Rank-one system with the given scalar residues.
    pub fn scalar(arrangement: Arrangement, residues: &[Q]) -> Result<Self> {
        let rs = residues.iter().map(|a| QMatrix::scalar(1, a)).collect();
        Self::new(arrangement, 1, rs)
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn dim_e(&self) -> usize {
        self.dim_e
    }

    pub fn residues(&self) -> &[QMatrix] {
        &self.residues
    }

    pub fn residue(&self, i: usize) -> &QMatrix {
        &self.residues[i]
    }

    pub fn residue_by_label(&self, label: &str) -> Option<&QMatrix> {
        self.arrangement
            .index_of_label(label)
            .map(|i| &self.residues[i])
    }

    /// Residue at the hyperplane with the same canonical form as `h`.
    pub fn residue_at(&self, h: &Hyperplane) -> Option<&QMatrix> {
        self.arrangement.index_of(h).map(|i| &self.residues[i])
    }

    /// Gauge transform `A_H -> P A_H P^{-1}`.
    pub fn conjugate(&self, p: &QMatrix) -> Result<Self> {
        let p_inv = p
            .inverse()
            .ok_or_else(|| Error::Invalid("conjugating matrix is singular".into()))?;
        let residues = self.residues.iter().map(|a| &(p * a) * &p_inv).collect();
        Ok(PfaffianSystem {
            arrangement: self.arrangement.clone(),
            dim_e: self.dim_e,
            residues,
        })
    }

    /// Block-diagonal sum of two systems on the same arrangement.
    pub fn direct_sum(&self, other: &PfaffianSystem) -> Result<Self> {
        if !self.arrangement.same_hyperplanes(&other.arrangement) {
            return Err(Error::Invalid(
                "direct sum needs a common arrangement".into(),
            ));
        }
        let n = self.dim_e + other.dim_e;
        let residues = self
            .arrangement
            .hyperplanes()
            .iter()
            .zip(&self.residues)
            .map(|(h, a)| {
                let b = other.residue_at(h).expect("same hyperplanes");
                let mut m = QMatrix::zeros(n, n);
                for i in 0..self.dim_e {
                    for j in 0..self.dim_e {
                        m[(i, j)] = a[(i, j)].clone();
                    }
                }
                for i in 0..other.dim_e {
                    for j in 0..other.dim_e {
                        m[(self.dim_e + i, self.dim_e + j)] = b[(i, j)].clone();
                    }
                }
                m
            })
            .collect();
        Ok(PfaffianSystem {
            arrangement: self.arrangement.clone(),
            dim_e: n,
            residues,
        })
    }

    /// Same residues re-indexed onto `arr`, which must have the same
    /// hyperplanes.
    pub fn reindexed(&self, arr: &Arrangement) -> Result<Self> {
        if !self.arrangement.same_hyperplanes(arr) {
            return Err(Error::Invalid("arrangements differ".into()));
        }
        let residues = arr
            .hyperplanes()
            .iter()
            .map(|h| self.residue_at(h).unwrap().clone())
            .collect();
        Ok(PfaffianSystem {
            arrangement: arr.clone(),
            dim_e: self.dim_e,
            residues,
        })
    }
}

/// A non-integral rational `lambda`; the induced character value is
/// `exp(2 pi i lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionParameter {
    lambda: Q,
}

impl ConvolutionParameter {
    pub fn new(lambda: Q) -> Result<Self> {
        if is_integer(&lambda) {
            return Err(Error::ParameterIntegral(format_q(&lambda)));
        }
        Ok(ConvolutionParameter { lambda })
    }

    pub fn lambda(&self) -> &Q {
        &self.lambda
    }

    /// `lambda mod 1`, the exact label of the character.
    pub fn class(&self) -> Q {
        crate::rational::frac(&self.lambda)
    }

    pub fn neg(&self) -> Self {
        ConvolutionParameter {
            lambda: -self.lambda.clone(),
        }
    }

    /// `lambda + mu`, failing when integral.
    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(&self.lambda + &other.lambda)
    }
}

impl std::fmt::Display for ConvolutionParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_q(&self.lambda))
    }
}
