use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_q, Q};

/// Affine hyperplane `L(x) + a = 0`, stored with the first nonzero
/// coefficient of `L` scaled to one. Equality ignores the label.
#[derive(Clone)]
pub struct Hyperplane {
    label: String,
    coeffs: Vec<Q>,
    constant: Q,
}

impl Hyperplane {
    pub fn new(label: impl Into<String>, coeffs: Vec<Q>, constant: Q) -> Result<Self> {
        let label = label.into();
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Invalid(format!(
                "hyperplane {label:?} has a zero linear part"
            )));
        };
        let coeffs = coeffs.iter().map(|c| c / &lead).collect();
        let constant = constant / lead;
        Ok(Hyperplane {
            label,
            coeffs,
            constant,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Q {
        &self.constant
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn with_label(&self, label: impl Into<String>) -> Self {
        Hyperplane {
            label: label.into(),
            ..self.clone()
        }
    }

    /// The linear part applied to a vector.
    pub fn linear(&self, v: &[Q]) -> Q {
        self.coeffs.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// `f_H(x) = L(x) + a`.
    pub fn eval(&self, x: &[Q]) -> Q {
        self.linear(x) + &self.constant
    }

    pub fn is_central(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn is_parallel_to(&self, direction: &[Q]) -> bool {
        self.linear(direction).is_zero()
    }

    /// The defining row `[L | -a]` of `L(x) = -a`.
    pub fn equation_row(&self) -> Vec<Q> {
        let mut row = self.coeffs.clone();
        row.push(-self.constant.clone());
        row
    }

    /// Human-readable form such as `x1 - x2 + 1 = 0`.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = format!("x{}", i + 1);
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let term = if mag.is_one() {
                var
            } else {
                format!("{}*{}", format_q(&mag), var)
            };
            if out.is_empty() {
                out = if neg { format!("-{term}") } else { term };
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        if !self.constant.is_zero() {
            let neg = self.constant < Q::zero();
            let mag = if neg {
                -self.constant.clone()
            } else {
                self.constant.clone()
            };
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&format_q(&mag));
        }
        out.push_str(" = 0");
        out
    }
}

impl PartialEq for Hyperplane {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.constant == other.constant
    }
}

impl Eq for Hyperplane {}

impl PartialOrd for Hyperplane {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the canonical form `(coeffs, constant)`.
impl Ord for Hyperplane {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .cmp(&other.coeffs)
            .then_with(|| self.constant.cmp(&other.constant))
    }
}

impl std::hash::Hash for Hyperplane {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
        self.constant.hash(state);
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.pretty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn canonical_form_scales_first_coefficient() {
        let h = Hyperplane::new("H", vec![q(0), q(-2), q(4)], q(6)).unwrap();
        assert_eq!(h.coeffs(), &[q(0), q(1), q(-2)]);
        assert_eq!(h.constant(), &q(-3));
    }

    #[test]
    fn proportional_forms_are_equal() {
        let a = Hyperplane::new("a", vec![q(1), q(-1)], q(2)).unwrap();
        let b = Hyperplane::new("b", vec![qf(-1, 2), qf(1, 2)], q(-1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_linear_part_rejected() {
        assert!(Hyperplane::new("z", vec![q(0), q(0)], q(1)).is_err());
    }

    #[test]
    fn pretty_printing() {
        let h = Hyperplane::new("h", vec![q(1), q(-1)], q(-1)).unwrap();
        assert_eq!(h.pretty(), "x1 - x2 - 1 = 0");
    }
}
