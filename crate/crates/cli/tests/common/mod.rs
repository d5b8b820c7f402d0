#![allow(dead_code)]

use std::path::PathBuf;

use arrmc_core::arrangement::{Arrangement, LineDirection};
use arrmc_core::convolution::middle_convolve;
use arrmc_core::katz::MonodromyTuple;
use arrmc_core::linalg::complex::{c, unit, CMat};
use arrmc_core::linalg::QMatrix;
use arrmc_core::pfaffian::{ConvolutionParameter, PfaffianSystem};
use arrmc_core::rational::{q, qf, Q};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("corpus")
}

pub fn four_lines() -> Arrangement {
    Arrangement::from_integer_forms(
        2,
        &[
            ("y0", &[0, 1], 0),
            ("diag", &[1, -1], 0),
            ("x0", &[1, 0], 0),
            ("x1", &[1, 0], -1),
        ],
    )
    .unwrap()
}

pub fn five_lines() -> Arrangement {
    Arrangement::from_integer_forms(
        2,
        &[
            ("x0", &[1, 0], 0),
            ("x1", &[1, 0], -1),
            ("y0", &[0, 1], 0),
            ("y1", &[0, 1], -1),
            ("diag", &[1, -1], 0),
        ],
    )
    .unwrap()
}

pub fn braid3() -> Arrangement {
    Arrangement::from_integer_forms(
        3,
        &[
            ("d12", &[1, -1, 0], 0),
            ("d13", &[1, 0, -1], 0),
            ("d23", &[0, 1, -1], 0),
            ("x1", &[1, 0, 0], 0),
            ("x2", &[0, 1, 0], 0),
            ("x3", &[0, 0, 1], 0),
        ],
    )
    .unwrap()
}

pub fn points() -> Arrangement {
    Arrangement::from_integer_forms(1, &[("p0", &[1], 0), ("p1", &[1], -1), ("p2", &[1], 1)])
        .unwrap()
}

pub fn y2() -> LineDirection {
    LineDirection::from_ints(&[0, 1]).unwrap()
}

pub fn y3() -> LineDirection {
    LineDirection::from_ints(&[0, 0, 1]).unwrap()
}

pub fn y1() -> LineDirection {
    LineDirection::from_ints(&[1]).unwrap()
}

pub fn lam(n: i64, d: i64) -> ConvolutionParameter {
    ConvolutionParameter::new(qf(n, d)).unwrap()
}

fn scalar(arr: Arrangement, v: &[Q]) -> PfaffianSystem {
    PfaffianSystem::scalar(arr, v).unwrap()
}

/// The four-line scalar system with residues `a, b` on `y = 0, x = y` and
/// `c = d = 0` on `x = 0, x = 1`.
pub fn four_line_scenario() -> PfaffianSystem {
    scalar(four_lines(), &[qf(1, 2), qf(1, 3), q(0), q(0)])
}

fn rank_two_sum(arr: Arrangement, a: &[Q], b: &[Q]) -> PfaffianSystem {
    scalar(arr.clone(), a).direct_sum(&scalar(arr, b)).unwrap()
}

fn shear() -> QMatrix {
    QMatrix::from_i64(&[&[1, 1], &[0, 1]])
}

/// Systems satisfying the star conditions along their line.
pub fn star_systems() -> Vec<(&'static str, PfaffianSystem, LineDirection)> {
    let generic = scalar(four_lines(), &[qf(1, 2), qf(1, 3), qf(2, 7), qf(3, 11)]);
    let mc = middle_convolve(&generic, &y2(), &lam(1, 5))
        .unwrap()
        .reindexed(&four_lines())
        .unwrap();
    vec![
        ("four lines", four_line_scenario(), y2()),
        ("four lines generic", generic, y2()),
        (
            "square with diagonal",
            scalar(
                five_lines(),
                &[qf(1, 3), qf(1, 4), qf(1, 5), qf(1, 6), qf(1, 7)],
            ),
            y2(),
        ),
        (
            "braid",
            scalar(
                braid3(),
                &[qf(1, 2), qf(1, 3), qf(1, 5), qf(1, 7), qf(2, 9), qf(3, 11)],
            ),
            y3(),
        ),
        (
            "points",
            scalar(points(), &[qf(1, 3), qf(1, 4), qf(-1, 5)]),
            y1(),
        ),
        (
            "four lines rank two",
            rank_two_sum(
                four_lines(),
                &[qf(1, 2), qf(1, 3), q(0), q(0)],
                &[qf(1, 4), qf(-2, 5), qf(1, 6), q(0)],
            ),
            y2(),
        ),
        (
            "four lines rank two conjugated",
            rank_two_sum(
                four_lines(),
                &[qf(1, 2), qf(1, 3), q(0), q(0)],
                &[qf(1, 4), qf(-2, 5), qf(1, 6), q(0)],
            )
            .conjugate(&shear())
            .unwrap(),
            y2(),
        ),
        ("four lines middle convolution", mc, y2()),
    ]
}

/// Integrable systems, including degenerate and non-generic ones.
pub fn systems() -> Vec<(&'static str, PfaffianSystem, LineDirection)> {
    let mut out = star_systems();
    out.push((
        "four lines zero",
        scalar(four_lines(), &[q(0), q(0), q(0), q(0)]),
        y2(),
    ));
    out.push((
        "four lines integer eigenvalue",
        scalar(four_lines(), &[q(1), qf(1, 3), q(0), q(0)]),
        y2(),
    ));
    out.push((
        "four lines one pole",
        scalar(four_lines(), &[qf(1, 2), q(0), qf(1, 3), q(0)]),
        y2(),
    ));
    out.push(("square zero", scalar(five_lines(), &zeros(5)), y2()));
    out.push(("braid zero", scalar(braid3(), &zeros(6)), y3()));
    out.push(("points zero", scalar(points(), &zeros(3)), y1()));
    out
}

fn tuple(ms: Vec<CMat>) -> MonodromyTuple {
    let r = ms[0].nrows();
    MonodromyTuple::new(r, ms).unwrap()
}

fn m2(v: [(f64, f64); 4]) -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[
            c(v[0].0, v[0].1),
            c(v[1].0, v[1].1),
            c(v[2].0, v[2].1),
            c(v[3].0, v[3].1),
        ],
    )
}

fn s(t: f64) -> CMat {
    CMat::from_element(1, 1, unit(t))
}

pub fn tuples() -> Vec<(&'static str, MonodromyTuple)> {
    let m1 = CMat::from_row_slice(2, 2, &[unit(0.1), c(1.0, 0.0), c(0.0, 0.0), unit(0.35)]);
    let m2a = CMat::from_row_slice(2, 2, &[unit(0.6), c(0.0, 0.0), c(0.5, -0.2), unit(0.27)]);
    let m3 = m2([(0.3, 0.1), (0.7, 0.0), (-0.4, 0.2), (1.1, -0.3)]);
    vec![
        ("scalar pair", tuple(vec![s(0.5), s(1.0 / 3.0)])),
        ("scalar triple", tuple(vec![s(0.2), s(0.45), s(-0.3)])),
        (
            "rank two triple",
            tuple(vec![m1.clone(), m2a.clone(), m3.clone()]),
        ),
        ("rank two pair", tuple(vec![m1, m3])),
        (
            "rank two generic",
            tuple(vec![
                m2([(1.2, 0.3), (0.4, -0.1), (0.2, 0.5), (0.9, -0.6)]),
                m2([(0.7, -0.2), (-0.3, 0.4), (0.6, 0.1), (1.4, 0.2)]),
                m2([(-0.8, 0.5), (0.1, 0.2), (0.3, -0.7), (1.1, 0.4)]),
            ]),
        ),
        (
            "rank two quadruple",
            tuple(vec![m2a, s2(0.15, 0.4), s2(0.7, 0.05), s2(-0.2, 0.33)]),
        ),
    ]
}

/// Upper triangular `[[e(a), 1], [0, e(b)]]`.
fn s2(a: f64, b: f64) -> CMat {
    CMat::from_row_slice(2, 2, &[unit(a), c(1.0, 0.0), c(0.0, 0.0), unit(b)])
}

fn zeros(n: usize) -> Vec<Q> {
    vec![q(0); n]
}
