use crate::arrangement::LineDirection;
use crate::error::{Error, Result};
use crate::pfaffian::{check_star_conditions, ConvolutionParameter, PfaffianSystem, StarReport};

use super::convolve::middle_convolve;
use super::iso::{is_isomorphic, IsoReport};

/// One side-by-side isomorphism check of the composition laws.
#[derive(Clone, Debug)]
pub struct LawCheck {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    /// `None` when the dimensions differ.
    pub iso: Option<IsoReport>,
}

impl LawCheck {
    fn compare(lhs: &PfaffianSystem, rhs: &PfaffianSystem) -> Result<Self> {
        let iso = if lhs.dim_e() == rhs.dim_e() {
            Some(is_isomorphic(lhs, rhs)?)
        } else {
            None
        };
        Ok(LawCheck {
            lhs_dim: lhs.dim_e(),
            rhs_dim: rhs.dim_e(),
            iso,
        })
    }

    pub fn holds(&self) -> bool {
        self.iso.as_ref().is_some_and(|r| r.isomorphic)
    }
}

#[derive(Clone, Debug)]
pub struct CompositionReport {
    pub lambda: ConvolutionParameter,
    pub mu: ConvolutionParameter,
    pub input_dim: usize,
    pub input_star: StarReport,
    /// Star conditions of `mc_lambda(sys)`; reported, not required.
    pub intermediate_star: StarReport,
    pub mc_lambda_dim: usize,
    /// `mc_mu(mc_lambda(sys))` against `mc_{lambda+mu}(sys)`.
    pub sum_law: LawCheck,
    /// `mc_{-lambda}(mc_lambda(sys))` against `sys`.
    pub inverse_law: LawCheck,
}

impl CompositionReport {
    pub fn holds(&self) -> bool {
        self.sum_law.holds() && self.inverse_law.holds()
    }
}

/// Checks `mc_mu . mc_lambda = mc_{lambda+mu}` and
/// `mc_{-lambda} . mc_lambda = id` up to isomorphism.
pub fn verify_composition_law(
    sys: &PfaffianSystem,
    y: &LineDirection,
    lam: &ConvolutionParameter,
    mu: &ConvolutionParameter,
) -> Result<CompositionReport> {
    let lam_mu = lam.add(mu)?;
    let input_star = check_star_conditions(sys, y)?;
    if !input_star.holds {
        let mut labels = input_star.star1_failures.clone();
        labels.extend(input_star.star2_failures.iter().cloned());
        labels.sort();
        labels.dedup();
        return Err(Error::StarConditionsFail(labels.join(", ")));
    }
    let mc_lam = middle_convolve(sys, y, lam)?;
    let intermediate_star = check_star_conditions(&mc_lam, y)?;
    let lhs = middle_convolve(&mc_lam, y, mu)?;
    let rhs = middle_convolve(sys, y, &lam_mu)?;
    let sum_law = LawCheck::compare(&lhs, &rhs)?;
    let back = middle_convolve(&mc_lam, y, &lam.neg())?.reindexed(sys.arrangement())?;
    let inverse_law = LawCheck::compare(&back, sys)?;
    Ok(CompositionReport {
        lambda: lam.clone(),
        mu: mu.clone(),
        input_dim: sys.dim_e(),
        input_star,
        intermediate_star,
        mc_lambda_dim: mc_lam.dim_e(),
        sum_law,
        inverse_law,
    })
}
