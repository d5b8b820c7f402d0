use crate::error::{Error, Result};
use crate::linalg::complex::{c, C64};

use super::path::LoopPath;

/// Generators of `pi_1(C \ poles)`: simple counterclockwise loops around the
/// poles sorted by real part (ties by imaginary part), all based at a point
/// below every pole, plus one large circle enclosing all of them.
#[derive(Clone, Debug)]
pub struct LoopSystem {
    pub basepoint: C64,
    pub radius: f64,
    /// Pole indices in generator order.
    pub order: Vec<usize>,
    pub loops: Vec<LoopPath>,
    pub big_loop: Option<LoopPath>,
}

/// Poles sorted by real part, then imaginary part.
pub fn generator_order(poles: &[C64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..poles.len()).collect();
    idx.sort_by(|&a, &b| {
        poles[a]
            .re
            .total_cmp(&poles[b].re)
            .then(poles[a].im.total_cmp(&poles[b].im))
    });
    idx
}

pub fn standard_loops(poles: &[C64]) -> Result<LoopSystem> {
    let n = poles.len();
    if n == 0 {
        return Ok(LoopSystem {
            basepoint: c(0.0, -1.0),
            radius: 1.0 / 3.0,
            order: Vec::new(),
            loops: Vec::new(),
            big_loop: None,
        });
    }
    let mut gap = f64::INFINITY;
    for i in 0..n {
        for j in 0..i {
            gap = gap.min((poles[i] - poles[j]).norm());
        }
    }
    if gap == 0.0 {
        return Err(Error::Path("poles coincide".into()));
    }
    let radius = if n == 1 { 1.0 / 3.0 } else { gap / 3.0 };
    let (lo, hi) = poles
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), z| {
            (a.min(z.re), b.max(z.re))
        });
    let (ilo, ihi) = poles
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), z| {
            (a.min(z.im), b.max(z.im))
        });
    let center = c(0.5 * (lo + hi), 0.5 * (ilo + ihi));
    let reach = poles
        .iter()
        .map(|z| (z - center).norm())
        .fold(0.0, f64::max);
    let basepoint = center - c(0.0, reach + 1.0 + 3.0 * radius);
    let order = generator_order(poles);
    let expected_for = |k: usize| -> Vec<i64> { (0..n).map(|j| i64::from(j == k)).collect() };
    let mut loops = Vec::with_capacity(n);
    for &k in &order {
        let l = LoopPath::around(basepoint, poles[k], radius)?;
        l.validate(poles, &expected_for(k), radius)?;
        loops.push(l);
    }
    let big = LoopPath::circle(basepoint, center)?;
    big.validate(poles, &vec![1; n], radius)?;
    Ok(LoopSystem {
        basepoint,
        radius,
        order,
        loops,
        big_loop: Some(big),
    })
}
