use crate::error::{Error, Result};
use crate::linalg::complex::{condition_number, identity, unit, CMat};
use crate::pfaffian::ConvolutionParameter;
use crate::rational::{format_q, frac, is_integer, to_f64, Q};

/// Matrices with condition number above this are rejected as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Monodromy matrices `(M_1, ..., M_n)` around ordered punctures of
/// `C \ {n points}`. The monodromy at infinity is `(M_n ... M_1)^{-1}`.
#[derive(Clone, Debug)]
pub struct MonodromyTuple {
    rank: usize,
    matrices: Vec<CMat>,
    labels: Vec<String>,
}

impl MonodromyTuple {
    pub fn new(rank: usize, matrices: Vec<CMat>) -> Result<Self> {
        let labels = (1..=matrices.len()).map(|k| format!("M{k}")).collect();
        Self::with_labels(rank, matrices, labels)
    }

    pub fn with_labels(rank: usize, matrices: Vec<CMat>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != matrices.len() {
            return Err(Error::Invalid(format!(
                "{} labels for {} matrices",
                labels.len(),
                matrices.len()
            )));
        }
        for (k, m) in matrices.iter().enumerate() {
            if m.nrows() != rank || m.ncols() != rank {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {} is {}x{}, expected {rank}x{rank}",
                    k + 1,
                    m.nrows(),
                    m.ncols()
                )));
            }
            if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::Invalid(format!(
                    "matrix {} has non-finite entries",
                    k + 1
                )));
            }
            if condition_number(m) > SINGULAR_CONDITION {
                return Err(Error::SingularInput(k + 1));
            }
        }
        Ok(MonodromyTuple {
            rank,
            matrices,
            labels,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `M_n ... M_1`.
    pub fn product(&self) -> CMat {
        self.matrices
            .iter()
            .fold(identity(self.rank), |acc, m| m * acc)
    }

    /// `(M_n ... M_1)^{-1}`.
    pub fn infinity(&self) -> Option<CMat> {
        self.product().try_inverse()
    }

    pub fn conjugate(&self, p: &CMat) -> Result<Self> {
        let p_inv = p
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Invalid("conjugating matrix is singular".into()))?;
        let matrices = self.matrices.iter().map(|m| p * m * &p_inv).collect();
        Self::with_labels(self.rank, matrices, self.labels.clone())
    }

    /// Block-diagonal sum with a tuple of the same length.
    pub fn direct_sum(&self, other: &MonodromyTuple) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "tuples of lengths {} and {}",
                self.n(),
                other.n()
            )));
        }
        let r = self.rank + other.rank;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut m = CMat::zeros(r, r);
                m.view_mut((0, 0), (self.rank, self.rank)).copy_from(a);
                m.view_mut((self.rank, self.rank), (other.rank, other.rank))
                    .copy_from(b);
                m
            })
            .collect();
        Self::with_labels(r, matrices, self.labels.clone())
    }
}

/// A nontrivial character `chi(1) = exp(2 pi i lambda)`, stored as
/// `lambda mod 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterValue {
    lambda: Q,
}

impl CharacterValue {
    pub fn new(lambda: &Q) -> Result<Self> {
        if is_integer(lambda) {
            return Err(Error::TrivialCharacter);
        }
        Ok(CharacterValue {
            lambda: frac(lambda),
        })
    }

    pub fn from_parameter(p: &ConvolutionParameter) -> Self {
        CharacterValue { lambda: p.class() }
    }

    pub fn lambda(&self) -> &Q {
        &self.lambda
    }

    pub fn value(&self) -> crate::linalg::complex::C64 {
        unit(to_f64(&self.lambda))
    }

    pub fn inverse(&self) -> Self {
        CharacterValue {
            lambda: frac(&-self.lambda.clone()),
        }
    }

    /// `c * c'`, failing when trivial.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(&(&self.lambda + &other.lambda))
    }
}

impl std::fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exp(2 pi i {})", format_q(&self.lambda))
    }
}
