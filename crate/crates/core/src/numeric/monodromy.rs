use crate::arrangement::LineDirection;
use crate::convolution::middle_convolve;
use crate::error::{Error, Result};
use crate::katz::{
    multiplicative_middle_convolution, tuple_isomorphism, CharacterValue, MonodromyTuple,
    TupleIsoReport, DEFAULT_RANK_TOL,
};
use crate::linalg::complex::{identity, CMat, C64};
use crate::pfaffian::{
    check_assumption_generic, describe_offender, fiber_restriction, ConvolutionParameter,
    PfaffianSystem,
};
use crate::rational::Q;

use super::loops::{standard_loops, LoopSystem};
use super::ode::{transport_along_path, FuchsianODE, TransportSettings};

/// Relative slack, in units of the integration tolerance, allowed between
/// the big-loop monodromy and the product of the generators.
pub const PRODUCT_SLACK: f64 = 1e3;

/// Monodromy of the fiber ODE in the generator convention of
/// [`standard_loops`].
///
/// The transported fundamental solution `F_k` composes contravariantly in
/// the loop; the generator is `M_k = F_k^T`, which makes the tuple a
/// representation with big-loop monodromy `M_n ... M_1` and monodromy at
/// infinity `(M_n ... M_1)^{-1}`.
#[derive(Clone, Debug)]
pub struct MonodromyReport {
    pub tuple: MonodromyTuple,
    pub poles: Vec<C64>,
    pub basepoint: C64,
    pub radius: f64,
    /// `|M_big - M_n ... M_1| / |M_big|`.
    pub product_residual: f64,
    pub steps: usize,
}

pub fn monodromy_of_ode(
    ode: &FuchsianODE,
    settings: &TransportSettings,
) -> Result<MonodromyReport> {
    let ls: LoopSystem = standard_loops(&ode.poles)?;
    let mut matrices = Vec::with_capacity(ode.n());
    let mut steps = 0;
    for l in &ls.loops {
        let (f, stats) = transport_along_path(ode, l, settings)?;
        steps += stats.accepted;
        matrices.push(f.transpose());
    }
    let labels: Vec<String> = ls.order.iter().map(|&k| ode.labels[k].clone()).collect();
    let poles: Vec<C64> = ls.order.iter().map(|&k| ode.poles[k]).collect();
    let tuple = MonodromyTuple::with_labels(ode.rank, matrices, labels)?;
    let product_residual = match &ls.big_loop {
        Some(big) => {
            let (f, stats) = transport_along_path(ode, big, settings)?;
            steps += stats.accepted;
            let m_big: CMat = f.transpose();
            (&m_big - tuple.product()).norm() / m_big.norm().max(1.0)
        }
        None => 0.0,
    };
    if product_residual > PRODUCT_SLACK * settings.tol {
        return Err(Error::ToleranceNotMet(format!(
            "generator product differs from the big loop by {product_residual:.3e}"
        )));
    }
    Ok(MonodromyReport {
        tuple,
        poles,
        basepoint: ls.basepoint,
        radius: ls.radius,
        product_residual,
        steps,
    })
}

pub fn monodromy_tuple_of_system(
    sys: &PfaffianSystem,
    y: &LineDirection,
    base: &[Q],
    settings: &TransportSettings,
) -> Result<MonodromyReport> {
    let fs = fiber_restriction(sys, y, base)?;
    monodromy_of_ode(&FuchsianODE::from_fiber(&fs)?, settings)
}

/// Eigenvalues of `exp(2 pi i R)` for the residue `R`: the expected local
/// monodromy spectrum in the non-resonant case.
pub fn expected_local_eigenvalues(residue: &CMat) -> Vec<C64> {
    crate::linalg::complex::eigenvalues(residue)
        .into_iter()
        .map(|e| (C64::new(0.0, 2.0 * std::f64::consts::PI) * e).exp())
        .collect()
}

#[derive(Clone, Debug)]
pub struct CompatibilityReport {
    pub lambda: ConvolutionParameter,
    pub character: CharacterValue,
    pub input: MonodromyReport,
    /// `MC_chi` of the input tuple.
    pub katz: MonodromyTuple,
    pub katz_dims: (usize, usize),
    /// Monodromy of `mc_lambda`.
    pub additive: MonodromyReport,
    pub mc_dim: usize,
    /// `None` when the ranks differ.
    pub iso: Option<TupleIsoReport>,
}

impl CompatibilityReport {
    pub fn holds(&self) -> bool {
        self.iso.as_ref().is_some_and(|r| r.isomorphic)
    }
}

/// Compares `MC_chi` of the monodromy of `sys` with the monodromy of
/// `mc_lambda(sys)` over the fiber at `base`.
pub fn verify_mc_compatibility(
    sys: &PfaffianSystem,
    y: &LineDirection,
    lam: &ConvolutionParameter,
    base: &[Q],
    settings: &TransportSettings,
    iso_tol: f64,
) -> Result<CompatibilityReport> {
    let generic = check_assumption_generic(sys, y, lam)?;
    if !generic.passes {
        let msg: Vec<String> = generic
            .offenders
            .iter()
            .map(|(l, k)| describe_offender(l, k))
            .collect();
        return Err(Error::AssumptionFail(msg.join("; ")));
    }
    let mc = middle_convolve(sys, y, lam)?;
    // fail on an inadmissible base before integrating anything
    fiber_restriction(&mc, y, base)?;
    let character = CharacterValue::from_parameter(lam);
    let input = monodromy_tuple_of_system(sys, y, base, settings)?;
    let katz = multiplicative_middle_convolution(&input.tuple, &character, DEFAULT_RANK_TOL)?;
    let additive = monodromy_tuple_of_system(&mc, y, base, settings)?;
    let iso = if katz.tuple.rank() == additive.tuple.rank() {
        Some(tuple_isomorphism(&katz.tuple, &additive.tuple, iso_tol)?)
    } else {
        None
    };
    Ok(CompatibilityReport {
        lambda: lam.clone(),
        character,
        katz_dims: (katz.dim_k, katz.dim_l),
        katz: katz.tuple,
        mc_dim: mc.dim_e(),
        input,
        additive,
        iso,
    })
}

/// `|M - Id|`, for trivial-monodromy checks.
pub fn distance_from_identity(m: &CMat) -> f64 {
    (m - identity(m.nrows())).norm()
}
