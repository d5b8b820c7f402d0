//! Embedded Runge-Kutta pairs, selectable by name.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::complex::{CMat, C64};

/// One adaptive step of a matrix ODE `dF/ds = f(s, F)`.
pub trait Integrator: Send + Sync {
    fn name(&self) -> &'static str;
    /// Order of the propagated solution.
    fn order(&self) -> usize;
    /// Advances by `h` and returns `(F_next, error_estimate)`, where the
    /// estimate is the difference between the embedded solutions.
    fn step(&self, f: &dyn Fn(f64, &CMat) -> CMat, s: f64, y: &CMat, h: f64) -> (CMat, CMat);
}

/// Butcher tableau of an explicit embedded pair.
pub struct EmbeddedTableau {
    name: &'static str,
    order: usize,
    c: Vec<f64>,
    a: Vec<Vec<f64>>,
    /// Propagated weights.
    b: Vec<f64>,
    /// Embedded weights of the companion order.
    b_hat: Vec<f64>,
}

impl Integrator for EmbeddedTableau {
    fn name(&self) -> &'static str {
        self.name
    }

    fn order(&self) -> usize {
        self.order
    }

    fn step(&self, f: &dyn Fn(f64, &CMat) -> CMat, s: f64, y: &CMat, h: f64) -> (CMat, CMat) {
        let mut ks: Vec<CMat> = Vec::with_capacity(self.c.len());
        for (i, ci) in self.c.iter().enumerate() {
            let mut yi = y.clone();
            for (j, aij) in self.a[i].iter().enumerate() {
                if *aij != 0.0 {
                    yi += &ks[j] * C64::new(h * aij, 0.0);
                }
            }
            ks.push(f(s + ci * h, &yi));
        }
        let mut next = y.clone();
        let mut err = CMat::zeros(y.nrows(), y.ncols());
        for (k, (b, bh)) in ks.iter().zip(self.b.iter().zip(&self.b_hat)) {
            if *b != 0.0 {
                next += k * C64::new(h * b, 0.0);
            }
            if b - bh != 0.0 {
                err += k * C64::new(h * (b - bh), 0.0);
            }
        }
        (next, err)
    }
}

pub fn dopri5() -> EmbeddedTableau {
    EmbeddedTableau {
        name: "dopri5",
        order: 5,
        c: vec![0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0],
        a: vec![
            vec![],
            vec![1.0 / 5.0],
            vec![3.0 / 40.0, 9.0 / 40.0],
            vec![44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
            vec![
                19372.0 / 6561.0,
                -25360.0 / 2187.0,
                64448.0 / 6561.0,
                -212.0 / 729.0,
            ],
            vec![
                9017.0 / 3168.0,
                -355.0 / 33.0,
                46732.0 / 5247.0,
                49.0 / 176.0,
                -5103.0 / 18656.0,
            ],
            vec![
                35.0 / 384.0,
                0.0,
                500.0 / 1113.0,
                125.0 / 192.0,
                -2187.0 / 6784.0,
                11.0 / 84.0,
            ],
        ],
        b: vec![
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
            0.0,
        ],
        b_hat: vec![
            5179.0 / 57600.0,
            0.0,
            7571.0 / 16695.0,
            393.0 / 640.0,
            -92097.0 / 339200.0,
            187.0 / 2100.0,
            1.0 / 40.0,
        ],
    }
}

pub fn cash_karp() -> EmbeddedTableau {
    EmbeddedTableau {
        name: "cash-karp",
        order: 5,
        c: vec![0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0],
        a: vec![
            vec![],
            vec![1.0 / 5.0],
            vec![3.0 / 40.0, 9.0 / 40.0],
            vec![3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0],
            vec![-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0],
            vec![
                1631.0 / 55296.0,
                175.0 / 512.0,
                575.0 / 13824.0,
                44275.0 / 110592.0,
                253.0 / 4096.0,
            ],
        ],
        b: vec![
            37.0 / 378.0,
            0.0,
            250.0 / 621.0,
            125.0 / 594.0,
            0.0,
            512.0 / 1771.0,
        ],
        b_hat: vec![
            2825.0 / 27648.0,
            0.0,
            18575.0 / 48384.0,
            13525.0 / 55296.0,
            277.0 / 14336.0,
            1.0 / 4.0,
        ],
    }
}

type Factory = fn() -> Box<dyn Integrator>;

/// Integrators by name.
pub struct IntegratorRegistry {
    entries: BTreeMap<&'static str, Factory>,
}

impl IntegratorRegistry {
    pub fn empty() -> Self {
        IntegratorRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, name: &'static str, make: Factory) {
        self.entries.insert(name, make);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, name: &str) -> Result<Box<dyn Integrator>> {
        self.entries
            .get(name)
            .map(|make| make())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "integrator",
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }
}

impl Default for IntegratorRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register("dopri5", || Box::new(dopri5()));
        r.register("cash-karp", || Box::new(cash_karp()));
        r
    }
}

pub const DEFAULT_INTEGRATOR: &str = "dopri5";

pub fn integrator_by_name(name: &str) -> Result<Box<dyn Integrator>> {
    IntegratorRegistry::default().get(name)
}
