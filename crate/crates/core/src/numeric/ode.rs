use crate::error::{Error, Result};
use crate::linalg::complex::{identity, to_cmat, CMat, C64};
use crate::pfaffian::FiberSystem;
use crate::rational::to_f64;

use super::integrator::{Integrator, DEFAULT_INTEGRATOR};
use super::path::{LoopPath, Segment};

pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_STEPS: usize = 200_000;
const MIN_STEP: f64 = 1e-13;
const INITIAL_STEP: f64 = 0.02;

/// `dF/dy = (sum_k R_k / (y - q_k)) F`.
#[derive(Clone, Debug)]
pub struct FuchsianODE {
    pub labels: Vec<String>,
    pub poles: Vec<C64>,
    pub residues: Vec<CMat>,
    pub rank: usize,
}

impl FuchsianODE {
    pub fn new(
        labels: Vec<String>,
        poles: Vec<C64>,
        residues: Vec<CMat>,
        rank: usize,
    ) -> Result<Self> {
        if labels.len() != poles.len() || residues.len() != poles.len() {
            return Err(Error::Invalid(
                "poles, labels and residues differ in number".into(),
            ));
        }
        if residues
            .iter()
            .any(|r| r.nrows() != rank || r.ncols() != rank)
        {
            return Err(Error::DimensionMismatch(format!(
                "residues must be {rank}x{rank}"
            )));
        }
        for i in 0..poles.len() {
            for j in 0..i {
                if (poles[i] - poles[j]).norm() == 0.0 {
                    return Err(Error::Invalid(format!(
                        "poles {} and {} coincide",
                        labels[j], labels[i]
                    )));
                }
            }
        }
        Ok(FuchsianODE {
            labels,
            poles,
            residues,
            rank,
        })
    }

    pub fn from_fiber(fs: &FiberSystem) -> Result<Self> {
        Self::new(
            fs.labels.clone(),
            fs.poles.iter().map(|q| C64::new(to_f64(q), 0.0)).collect(),
            fs.residues.iter().map(to_cmat).collect(),
            fs.dim_e,
        )
    }

    pub fn n(&self) -> usize {
        self.poles.len()
    }

    pub fn coefficient(&self, z: C64) -> CMat {
        let mut m = CMat::zeros(self.rank, self.rank);
        for (q, r) in self.poles.iter().zip(&self.residues) {
            m += r / (z - q);
        }
        m
    }

    pub fn nearest_pole_distance(&self, z: C64) -> f64 {
        self.poles
            .iter()
            .map(|q| (z - q).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// `-sum_k R_k`.
    pub fn infinity_residue(&self) -> CMat {
        -self
            .residues
            .iter()
            .fold(CMat::zeros(self.rank, self.rank), |acc, r| acc + r)
    }
}

pub struct TransportSettings {
    pub tol: f64,
    pub integrator: Box<dyn Integrator>,
}

impl TransportSettings {
    pub fn new(tol: f64, integrator: &str) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Invalid(format!("tolerance {tol} must be positive")));
        }
        Ok(TransportSettings {
            tol,
            integrator: super::integrator::integrator_by_name(integrator)?,
        })
    }
}

impl Default for TransportSettings {
    fn default() -> Self {
        Self::new(DEFAULT_TOL, DEFAULT_INTEGRATOR).expect("default integrator registered")
    }
}

/// Statistics of one transport.
#[derive(Clone, Copy, Debug, Default)]
pub struct TransportStats {
    pub accepted: usize,
    pub rejected: usize,
}

fn integrate_segment(
    ode: &FuchsianODE,
    seg: &Segment,
    start: &CMat,
    settings: &TransportSettings,
    stats: &mut TransportStats,
) -> Result<CMat> {
    let f = |s: f64, y: &CMat| ode.coefficient(seg.point(s)) * seg.velocity(s) * y;
    let order = settings.integrator.order() as f64;
    let mut y = start.clone();
    let mut s = 0.0;
    let mut h = INITIAL_STEP;
    while s < 1.0 {
        let z = seg.point(s);
        let speed = seg.velocity(s).norm().max(f64::MIN_POSITIVE);
        let cap = 0.5 * ode.nearest_pole_distance(z) / speed;
        h = h.min(cap).min(1.0 - s);
        if h < MIN_STEP {
            return Err(Error::StepUnderflow(format!("{:.6}{:+.6}i", z.re, z.im)));
        }
        if stats.accepted + stats.rejected >= MAX_STEPS {
            return Err(Error::ToleranceNotMet(format!(
                "{} steps exceeded at s = {s:.6} near {:.6}{:+.6}i",
                MAX_STEPS, z.re, z.im
            )));
        }
        let (next, err) = settings.integrator.step(&f, s, &y, h);
        let scale = y.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let e = err.iter().map(|v| v.norm()).fold(0.0, f64::max) / scale;
        let allowed = settings.tol * h;
        if !e.is_finite() {
            stats.rejected += 1;
            h *= 0.2;
            continue;
        }
        let factor = if e == 0.0 {
            5.0
        } else {
            (0.9 * (allowed / e).powf(1.0 / (order - 1.0))).clamp(0.2, 5.0)
        };
        if e <= allowed {
            stats.accepted += 1;
            s = if 1.0 - (s + h) < 1e-15 { 1.0 } else { s + h };
            y = next;
        } else {
            stats.rejected += 1;
        }
        h *= factor;
    }
    Ok(y)
}

/// Fundamental solution `F(end)` with `F(start) = Id` along `path`. The
/// local error is controlled per unit of path parameter.
pub fn transport_along_path(
    ode: &FuchsianODE,
    path: &LoopPath,
    settings: &TransportSettings,
) -> Result<(CMat, TransportStats)> {
    let mut stats = TransportStats::default();
    let mut y = identity(ode.rank);
    for seg in &path.segments {
        y = integrate_segment(ode, seg, &y, settings, &mut stats)?;
    }
    Ok((y, stats))
}
