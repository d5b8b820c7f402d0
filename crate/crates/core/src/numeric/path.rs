//! Piecewise loops in the punctured plane.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::complex::{c, C64};

#[derive(Clone, Debug, PartialEq)]
pub enum Segment {
    Line {
        from: C64,
        to: C64,
    },
    /// `center + radius * exp(i (start + sweep * s))` for `s` in `[0, 1]`.
    Arc {
        center: C64,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl Segment {
    pub fn point(&self, s: f64) -> C64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * s,
            Segment::Arc {
                center,
                radius,
                start,
                sweep,
            } => center + C64::from_polar(radius, start + sweep * s),
        }
    }

    pub fn velocity(&self, s: f64) -> C64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc {
                radius,
                start,
                sweep,
                ..
            } => c(0.0, sweep) * C64::from_polar(radius, start + sweep * s),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Segment::Line { from, to } => (to - from).norm(),
            Segment::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    pub fn end(&self) -> C64 {
        self.point(1.0)
    }

    /// Smallest distance from the segment to `z`.
    pub fn distance_to(&self, z: C64) -> f64 {
        match *self {
            Segment::Line { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                let t = if len2 == 0.0 {
                    0.0
                } else {
                    (((z - from) * d.conj()).re / len2).clamp(0.0, 1.0)
                };
                (from + d * t - z).norm()
            }
            Segment::Arc { .. } => {
                // dense sampling suffices for margin checks
                (0..=512)
                    .map(|i| (self.point(i as f64 / 512.0) - z).norm())
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// A closed path based at `basepoint`.
#[derive(Clone, Debug)]
pub struct LoopPath {
    pub basepoint: C64,
    pub segments: Vec<Segment>,
}

const WINDING_SAMPLES: usize = 2048;

impl LoopPath {
    pub fn new(basepoint: C64, segments: Vec<Segment>) -> Result<Self> {
        let Some(first) = segments.first() else {
            return Err(Error::Path("loop has no segments".into()));
        };
        let close = |a: C64, b: C64| (a - b).norm() <= 1e-12 * (1.0 + a.norm());
        if !close(first.point(0.0), basepoint) {
            return Err(Error::Path("loop does not start at its basepoint".into()));
        }
        for w in segments.windows(2) {
            if !close(w[0].end(), w[1].point(0.0)) {
                return Err(Error::Path("loop segments are not contiguous".into()));
            }
        }
        if !close(segments.last().unwrap().end(), basepoint) {
            return Err(Error::Path("loop does not return to its basepoint".into()));
        }
        Ok(LoopPath {
            basepoint,
            segments,
        })
    }

    /// Straight to `pole - i radius`, once around `pole` counterclockwise,
    /// and straight back.
    pub fn around(basepoint: C64, pole: C64, radius: f64) -> Result<Self> {
        let foot = pole - c(0.0, radius);
        let mut segments = Vec::new();
        if (foot - basepoint).norm() > 0.0 {
            segments.push(Segment::Line {
                from: basepoint,
                to: foot,
            });
        }
        segments.push(Segment::Arc {
            center: pole,
            radius,
            start: -PI / 2.0,
            sweep: 2.0 * PI,
        });
        if (foot - basepoint).norm() > 0.0 {
            segments.push(Segment::Line {
                from: foot,
                to: basepoint,
            });
        }
        Self::new(basepoint, segments)
    }

    /// Full counterclockwise circle through `basepoint` around `center`.
    pub fn circle(basepoint: C64, center: C64) -> Result<Self> {
        let d = basepoint - center;
        Self::new(
            basepoint,
            vec![Segment::Arc {
                center,
                radius: d.norm(),
                start: d.arg(),
                sweep: 2.0 * PI,
            }],
        )
    }

    /// Winding number around `z`, by summing argument increments.
    pub fn winding_number(&self, z: C64) -> i64 {
        let mut total = 0.0;
        for seg in &self.segments {
            let mut prev = (seg.point(0.0) - z).arg();
            for i in 1..=WINDING_SAMPLES {
                let a = (seg.point(i as f64 / WINDING_SAMPLES as f64) - z).arg();
                let mut d = a - prev;
                if d > PI {
                    d -= 2.0 * PI;
                } else if d < -PI {
                    d += 2.0 * PI;
                }
                total += d;
                prev = a;
            }
        }
        (total / (2.0 * PI)).round() as i64
    }

    pub fn clearance(&self, z: C64) -> f64 {
        self.segments
            .iter()
            .map(|s| s.distance_to(z))
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks the winding numbers `expected[k]` around `poles[k]` and the
    /// clearance from every pole.
    pub fn validate(&self, poles: &[C64], expected: &[i64], margin: f64) -> Result<()> {
        for (k, (&p, &w)) in poles.iter().zip(expected).enumerate() {
            let got = self.winding_number(p);
            if got != w {
                return Err(Error::Path(format!(
                    "winding number {got} around pole {}, expected {w}",
                    k + 1
                )));
            }
            let d = self.clearance(p);
            if d < margin * (1.0 - 1e-9) {
                return Err(Error::Path(format!(
                    "loop passes within {d:.3e} of pole {}",
                    k + 1
                )));
            }
        }
        Ok(())
    }
}
