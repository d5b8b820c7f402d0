//! Line directions, good lines and the fibers of the projection along a line.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{build_intersection_poset, Arrangement, Flat, Hyperplane};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{format_q, q, Q};

/// A line through the origin, stored by a direction vector whose first
/// nonzero entry is one. Only the direction matters: every operation here
/// is translation invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineDirection {
    direction: Vec<Q>,
}

impl LineDirection {
    pub fn new(direction: Vec<Q>) -> Result<Self> {
        let Some(lead) = direction.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Invalid("line direction must be nonzero".into()));
        };
        Ok(LineDirection {
            direction: direction.iter().map(|c| c / &lead).collect(),
        })
    }

    pub fn from_ints(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| q(x)).collect())
    }

    pub fn direction(&self) -> &[Q] {
        &self.direction
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    fn check_dim(&self, arr: &Arrangement) -> Result<()> {
        if self.dim() != arr.dim() {
            return Err(Error::DimensionMismatch(format!(
                "line lives in C^{}, arrangement in C^{}",
                self.dim(),
                arr.dim()
            )));
        }
        Ok(())
    }
}

/// Linear coordinates `(u, t)` with the line as the last axis: the point
/// with coordinates `(u, t)` is `sum_j u_j e_{transverse[j]} + t * y`, where
/// `transverse` skips the pivot (first nonzero) coordinate of `y`.
#[derive(Clone, Debug)]
pub struct LineFrame {
    direction: Vec<Q>,
    transverse: Vec<usize>,
}

impl LineFrame {
    pub fn new(y: &LineDirection) -> Self {
        let pivot = y
            .direction()
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero direction");
        LineFrame {
            direction: y.direction().to_vec(),
            transverse: (0..y.dim()).filter(|&i| i != pivot).collect(),
        }
    }

    /// Dimension of the base `C^{l-1}`.
    pub fn base_dim(&self) -> usize {
        self.transverse.len()
    }

    /// The change of basis: columns `e_i` for the transverse coordinates,
    /// then the direction vector.
    pub fn matrix(&self) -> QMatrix {
        let l = self.direction.len();
        let mut cols: Vec<Vec<Q>> = self
            .transverse
            .iter()
            .map(|&i| {
                let mut e = vec![Q::zero(); l];
                e[i] = q(1);
                e
            })
            .collect();
        cols.push(self.direction.clone());
        QMatrix::from_columns(&cols, l)
    }

    pub fn point(&self, base: &[Q], t: &Q) -> Vec<Q> {
        let mut x: Vec<Q> = self.direction.iter().map(|c| c * t).collect();
        for (u, &i) in base.iter().zip(&self.transverse) {
            x[i] += u;
        }
        x
    }

    /// Root `t` of `f_H(base, t) = 0` for a hyperplane transverse to the line.
    pub fn fiber_root(&self, h: &Hyperplane, base: &[Q]) -> Q {
        let slope = h.linear(&self.direction);
        assert!(!slope.is_zero(), "hyperplane parallel to the line");
        -h.eval(&self.point(base, &Q::zero())) / slope
    }

    /// `q_H(u)` as an affine function `(alpha, beta)` of the base point.
    fn root_form(&self, h: &Hyperplane) -> (Vec<Q>, Q) {
        let slope = h.linear(&self.direction);
        let alpha = self
            .transverse
            .iter()
            .map(|&i| -&h.coeffs()[i] / &slope)
            .collect();
        (alpha, -h.constant() / slope)
    }
}

/// `A_Y` (hyperplanes parallel to the line) and its complement, as index
/// lists into the original arrangement.
#[derive(Clone, Debug)]
pub struct ParallelSplit {
    pub parallel: Vec<usize>,
    pub transverse: Vec<usize>,
}

impl ParallelSplit {
    /// `n = |A \ A_Y|`.
    pub fn n(&self) -> usize {
        self.transverse.len()
    }

    pub fn parallel_arrangement(&self, arr: &Arrangement) -> Arrangement {
        arr.subarrangement(&self.parallel)
    }

    pub fn transverse_arrangement(&self, arr: &Arrangement) -> Arrangement {
        arr.subarrangement(&self.transverse)
    }
}

pub fn parallel_subarrangement(arr: &Arrangement, y: &LineDirection) -> Result<ParallelSplit> {
    y.check_dim(arr)?;
    let (parallel, transverse) =
        (0..arr.len()).partition(|&i| arr.get(i).is_parallel_to(y.direction()));
    Ok(ParallelSplit {
        parallel,
        transverse,
    })
}

#[derive(Clone, Debug)]
pub struct GoodLineReport {
    pub good: bool,
    /// A rank-2 flat `X` with `X + Y` outside the poset.
    pub witness: Option<Flat>,
    pub witness_shift: Option<Flat>,
}

pub fn is_good_line(arr: &Arrangement, y: &LineDirection) -> Result<GoodLineReport> {
    y.check_dim(arr)?;
    let poset = build_intersection_poset(arr);
    for x in poset.rank(2) {
        let shifted = x.plus_direction(y.direction());
        if !poset.contains(&shifted) {
            return Ok(GoodLineReport {
                good: false,
                witness: Some(x.clone()),
                witness_shift: Some(shifted),
            });
        }
    }
    Ok(GoodLineReport {
        good: true,
        witness: None,
        witness_shift: None,
    })
}

/// One hyperplane of `A^{+Y}` with the transverse pairs `{H1, H2}` whose
/// intersection shifts onto it (indices into the original arrangement).
#[derive(Clone, Debug)]
pub struct ShiftedHyperplane {
    pub hyperplane: Hyperplane,
    pub pairs: Vec<(usize, usize)>,
    /// Index of the same hyperplane in the arrangement, when present.
    pub member: Option<usize>,
}

/// `A^{+Y} = { X + Y : X in L_2(A \ A_Y) }`, deduplicated.
pub fn shifted_family(arr: &Arrangement, y: &LineDirection) -> Result<Vec<ShiftedHyperplane>> {
    let split = parallel_subarrangement(arr, y)?;
    let sub = split.transverse_arrangement(arr);
    let poset = build_intersection_poset(&sub);
    let mut out: BTreeMap<Hyperplane, ShiftedHyperplane> = BTreeMap::new();
    for x in poset.rank(2) {
        let shifted = x.plus_direction(y.direction());
        let Some(h) = shifted.as_hyperplane("") else {
            return Err(Error::Internal(format!(
                "rank-2 flat {} shifted along the line is not a hyperplane",
                x.pretty()
            )));
        };
        let member = arr.index_of(&h);
        let containing: Vec<usize> = x
            .containing()
            .iter()
            .map(|&i| split.transverse[i])
            .collect();
        let mut pairs = Vec::new();
        for (a, &i) in containing.iter().enumerate() {
            for &j in &containing[a + 1..] {
                pairs.push((i, j));
            }
        }
        let entry = out.entry(h.clone()).or_insert_with(|| {
            let label = match member {
                Some(m) => arr.get(m).label().to_string(),
                None => format!(
                    "Y+({},{})",
                    arr.get(pairs[0].0).label(),
                    arr.get(pairs[0].1).label()
                ),
            };
            ShiftedHyperplane {
                hyperplane: h.with_label(label),
                pairs: Vec::new(),
                member,
            }
        });
        entry.pairs.extend(pairs);
    }
    Ok(out.into_values().collect())
}

#[derive(Clone, Debug)]
pub struct FiberPoints {
    /// `(arrangement index, root)` for each transverse hyperplane, in
    /// arrangement order.
    pub roots: Vec<(usize, Q)>,
    /// Pairs of arrangement indices whose roots coincide.
    pub collisions: Vec<(usize, usize)>,
}

impl FiberPoints {
    pub fn distinct(&self) -> bool {
        self.collisions.is_empty()
    }
}

fn check_base(
    arr: &Arrangement,
    frame: &LineFrame,
    split: &ParallelSplit,
    base: &[Q],
) -> Result<()> {
    if base.len() != frame.base_dim() {
        return Err(Error::DimensionMismatch(format!(
            "base point has {} coordinates, expected {}",
            base.len(),
            frame.base_dim()
        )));
    }
    for &i in &split.parallel {
        let h = arr.get(i);
        if h.eval(&frame.point(base, &Q::zero())).is_zero() {
            return Err(Error::BaseOnProjectedHyperplane(h.label().to_string()));
        }
    }
    Ok(())
}

/// The punctures `q_H` of the fiber over `base`.
pub fn fiber_points(arr: &Arrangement, y: &LineDirection, base: &[Q]) -> Result<FiberPoints> {
    let split = parallel_subarrangement(arr, y)?;
    let frame = LineFrame::new(y);
    check_base(arr, &frame, &split, base)?;
    let roots: Vec<(usize, Q)> = split
        .transverse
        .iter()
        .map(|&i| (i, frame.fiber_root(arr.get(i), base)))
        .collect();
    let mut collisions = Vec::new();
    for (a, (i, ri)) in roots.iter().enumerate() {
        for (j, rj) in &roots[a + 1..] {
            if ri == rj {
                collisions.push((*i, *j));
            }
        }
    }
    Ok(FiberPoints { roots, collisions })
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    /// No sampled fiber showed coinciding punctures.
    pub all_distinct: bool,
    /// First sampled base point with a collision, and the colliding pair.
    pub collision: Option<(Vec<Q>, (usize, usize))>,
    pub fibers_checked: usize,
}

/// Radical inverse of `i` in base `b`.
fn van_der_corput(mut i: u64, b: u64) -> Q {
    let mut out = Q::zero();
    let mut scale = Q::new(1.into(), b.into());
    while i > 0 {
        out += &scale * Q::from_integer((i % b).into());
        i /= b;
        scale /= Q::from_integer(b.into());
    }
    out
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Deterministic rational Halton point in `[-5, 5)^d`.
fn halton(i: u64, d: usize) -> Vec<Q> {
    (0..d)
        .map(|j| van_der_corput(i + 1, PRIMES[j % PRIMES.len()]) * q(10) - q(5))
        .collect()
}

/// Checks the fibers over `sample_count` Halton base points, and over each
/// such point projected onto every pairwise root-coincidence locus
/// `q_{H1}(u) = q_{H2}(u)`. Points on the projected parallel hyperplanes are
/// skipped. A collision proves the line is not good; no collision is only
/// evidence of goodness.
pub fn goodness_fiber_oracle(
    arr: &Arrangement,
    y: &LineDirection,
    sample_count: usize,
) -> Result<OracleReport> {
    goodness_fiber_oracle_from(arr, y, sample_count, 0)
}

/// As [`goodness_fiber_oracle`], starting at index `start` of the Halton
/// sequence.
pub fn goodness_fiber_oracle_from(
    arr: &Arrangement,
    y: &LineDirection,
    sample_count: usize,
    start: u64,
) -> Result<OracleReport> {
    let split = parallel_subarrangement(arr, y)?;
    let frame = LineFrame::new(y);
    let d = frame.base_dim();
    let forms: Vec<(usize, (Vec<Q>, Q))> = split
        .transverse
        .iter()
        .map(|&i| (i, frame.root_form(arr.get(i))))
        .collect();

    // affine loci where two roots coincide
    let mut loci: Vec<(Vec<Q>, Q)> = Vec::new();
    for (a, (_, (al1, b1))) in forms.iter().enumerate() {
        for (_, (al2, b2)) in &forms[a + 1..] {
            let alpha: Vec<Q> = al1.iter().zip(al2).map(|(x, y)| x - y).collect();
            if alpha.iter().any(|c| !c.is_zero()) {
                loci.push((alpha, b1 - b2));
            }
        }
    }

    let mut checked = 0;
    for i in start..start + sample_count as u64 {
        let generic = halton(i, d);
        let mut candidates = vec![generic.clone()];
        for (alpha, beta) in &loci {
            let j = alpha.iter().position(|c| !c.is_zero()).unwrap();
            let mut u = generic.clone();
            let rest: Q = alpha
                .iter()
                .zip(&u)
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, (a, x))| a * x)
                .sum();
            u[j] = -(beta + rest) / &alpha[j];
            candidates.push(u);
        }
        for u in candidates {
            let fp = match fiber_points(arr, y, &u) {
                Ok(fp) => fp,
                Err(Error::BaseOnProjectedHyperplane(_)) => continue,
                Err(e) => return Err(e),
            };
            checked += 1;
            if let Some(&pair) = fp.collisions.first() {
                return Ok(OracleReport {
                    all_distinct: false,
                    collision: Some((u, pair)),
                    fibers_checked: checked,
                });
            }
        }
    }
    Ok(OracleReport {
        all_distinct: true,
        collision: None,
        fibers_checked: checked,
    })
}

pub fn format_point(p: &[Q]) -> String {
    let s: Vec<String> = p.iter().map(format_q).collect();
    format!("({})", s.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn four_lines() -> Arrangement {
        Arrangement::from_integer_forms(
            2,
            &[
                ("y=0", &[0, 1], 0),
                ("x-y=0", &[1, -1], 0),
                ("x=0", &[1, 0], 0),
                ("x=1", &[1, 0], -1),
            ],
        )
        .unwrap()
    }

    fn vertical() -> LineDirection {
        LineDirection::from_ints(&[0, 1]).unwrap()
    }

    #[test]
    fn four_line_arrangement_is_good() {
        let r = is_good_line(&four_lines(), &vertical()).unwrap();
        assert!(r.good);
        assert!(r.witness.is_none());
    }

    #[test]
    fn two_lines_not_good() {
        let arr =
            Arrangement::from_integer_forms(2, &[("y", &[0, 1], 0), ("x-y", &[1, -1], 0)]).unwrap();
        let r = is_good_line(&arr, &vertical()).unwrap();
        assert!(!r.good);
        assert_eq!(r.witness.unwrap().point(), vec![q(0), q(0)]);
    }

    #[test]
    fn single_line_vacuously_good() {
        let arr = Arrangement::from_integer_forms(2, &[("x", &[1, 0], 0)]).unwrap();
        for y in [[0, 1], [1, 0], [1, 1]] {
            assert!(
                is_good_line(&arr, &LineDirection::from_ints(&y).unwrap())
                    .unwrap()
                    .good
            );
        }
    }

    #[test]
    fn parallel_split_of_four_lines() {
        let arr = four_lines();
        let s = parallel_subarrangement(&arr, &vertical()).unwrap();
        assert_eq!(s.parallel, vec![2, 3]);
        assert_eq!(s.transverse, vec![0, 1]);
        assert_eq!(s.n(), 2);
    }

    #[test]
    fn parallel_split_extremes() {
        let arr =
            Arrangement::from_integer_forms(2, &[("a", &[1, 0], 0), ("b", &[1, 0], 1)]).unwrap();
        let s = parallel_subarrangement(&arr, &vertical()).unwrap();
        assert_eq!(s.n(), 0);
        let s = parallel_subarrangement(&arr, &LineDirection::from_ints(&[1, 0]).unwrap()).unwrap();
        assert_eq!(s.n(), 2);
        assert!(s.parallel.is_empty());
    }

    #[test]
    fn shifted_family_of_four_lines() {
        let arr = four_lines();
        let fam = shifted_family(&arr, &vertical()).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].hyperplane.label(), "x=0");
        assert_eq!(fam[0].member, Some(2));
        assert_eq!(fam[0].pairs, vec![(0, 1)]);
    }

    #[test]
    fn shifted_family_empty_when_transverse_part_is_parallel() {
        let arr =
            Arrangement::from_integer_forms(2, &[("a", &[0, 1], 0), ("b", &[0, 1], -1)]).unwrap();
        assert!(shifted_family(&arr, &vertical()).unwrap().is_empty());
    }

    #[test]
    fn fiber_points_of_four_lines() {
        let arr = four_lines();
        let fp = fiber_points(&arr, &vertical(), &[q(2)]).unwrap();
        assert_eq!(fp.roots, vec![(0, q(0)), (1, q(2))]);
        assert!(fp.distinct());
        assert!(matches!(
            fiber_points(&arr, &vertical(), &[q(0)]),
            Err(Error::BaseOnProjectedHyperplane(_))
        ));
    }

    #[test]
    fn fiber_collision_for_non_good_pair() {
        let arr =
            Arrangement::from_integer_forms(2, &[("y", &[0, 1], 0), ("x-y", &[1, -1], 0)]).unwrap();
        let fp = fiber_points(&arr, &vertical(), &[q(0)]).unwrap();
        assert_eq!(fp.collisions, vec![(0, 1)]);
        let oracle = goodness_fiber_oracle(&arr, &vertical(), 20).unwrap();
        assert!(!oracle.all_distinct);
        assert_eq!(oracle.collision.unwrap().0, vec![q(0)]);
    }

    #[test]
    fn oracle_on_good_and_vacuous_cases() {
        assert!(
            goodness_fiber_oracle(&four_lines(), &vertical(), 20)
                .unwrap()
                .all_distinct
        );
        let arr = Arrangement::from_integer_forms(2, &[("a", &[1, 0], 0)]).unwrap();
        let r = goodness_fiber_oracle(&arr, &vertical(), 20).unwrap();
        assert!(r.all_distinct);
    }

    #[test]
    fn frame_matrix_is_invertible() {
        let y = LineDirection::from_ints(&[0, 2, -4]).unwrap();
        let m = LineFrame::new(&y).matrix();
        assert!(m.inverse().is_some());
        assert_eq!(m.column(2), vec![q(0), q(1), q(-2)]);
    }
}
