use std::collections::BTreeSet;

use arrmc_core::arrangement::{
    build_intersection_poset, cone, decone, goodness_fiber_oracle, is_good_line, Arrangement, Flat,
    Hyperplane, LineDirection,
};
use arrmc_core::linalg::QMatrix;
use arrmc_core::rational::{q, Q};
use proptest::prelude::*;

fn hyperplane_strategy(dim: usize) -> impl Strategy<Value = (Vec<i64>, i64)> {
    (proptest::collection::vec(-2i64..=2, dim), -2i64..=2)
        .prop_filter("nonzero normal", |(c, _)| c.iter().any(|&x| x != 0))
}

fn arrangement_strategy() -> impl Strategy<Value = Arrangement> {
    (1usize..=3)
        .prop_flat_map(|dim| {
            (
                Just(dim),
                proptest::collection::vec(hyperplane_strategy(dim), 1..=6),
            )
        })
        .prop_filter_map("distinct hyperplanes", |(dim, forms)| {
            let hs: Vec<Hyperplane> = forms
                .iter()
                .enumerate()
                .map(|(i, (c, k))| {
                    Hyperplane::new(format!("H{i}"), c.iter().map(|&x| q(x)).collect(), q(*k))
                        .unwrap()
                })
                .collect();
            Arrangement::new(dim, hs).ok()
        })
}

/// Every consistent subset system, canonicalized.
fn subset_flats(arr: &Arrangement) -> BTreeSet<Flat> {
    let n = arr.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let rows: Vec<Vec<Q>> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| arr.get(i).equation_row())
            .collect();
        let system = if rows.is_empty() {
            QMatrix::zeros(0, arr.dim() + 1)
        } else {
            QMatrix::from_rows(rows)
        };
        if let Some(f) = Flat::from_equations(arr.dim(), &system) {
            out.insert(f);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poset_matches_subset_enumeration(arr in arrangement_strategy()) {
        let poset = build_intersection_poset(&arr);
        let built: BTreeSet<Flat> = poset.flats().cloned().collect();
        prop_assert_eq!(built.len(), poset.len());
        prop_assert_eq!(&built, &subset_flats(&arr));
        for (k, level) in poset.levels().iter().enumerate() {
            for f in level {
                prop_assert_eq!(f.rank(), k);
                let inside: Vec<usize> = (0..arr.len()).filter(|&i| f.lies_in(arr.get(i))).collect();
                prop_assert_eq!(f.containing(), &inside[..]);
            }
        }
    }

    #[test]
    fn goodness_invariant_under_linear_change(
        arr in arrangement_strategy(),
        g in proptest::collection::vec(-2i64..=2, 9),
        y in proptest::collection::vec(-1i64..=1, 3),
    ) {
        let d = arr.dim();
        let gm = QMatrix::from_rows((0..d).map(|i| (0..d).map(|j| q(g[i * 3 + j])).collect()).collect());
        let g_inv = gm.inverse();
        prop_assume!(g_inv.is_some());
        let y0 = LineDirection::from_ints(&y[..d]);
        prop_assume!(y0.is_ok());
        let y0 = y0.unwrap();
        let moved = arr.transform(&g_inv.unwrap()).unwrap();
        let y1 = LineDirection::new(gm.apply(y0.direction())).unwrap();
        prop_assert_eq!(is_good_line(&arr, &y0).unwrap().good, is_good_line(&moved, &y1).unwrap().good);
    }

    #[test]
    fn cone_then_decone_is_identity(arr in arrangement_strategy()) {
        let back = decone(&cone(&arr).unwrap()).unwrap();
        prop_assert!(back.same_hyperplanes(&arr));
    }
}

fn arr(dim: usize, forms: &[(&str, &[i64], i64)]) -> Arrangement {
    Arrangement::from_integer_forms(dim, forms).unwrap()
}

fn goodness_corpus() -> Vec<(&'static str, Arrangement, LineDirection, bool)> {
    let y2 = LineDirection::from_ints(&[0, 1]).unwrap();
    let y3 = LineDirection::from_ints(&[0, 0, 1]).unwrap();
    vec![
        (
            "four lines",
            arr(
                2,
                &[
                    ("y0", &[0, 1], 0),
                    ("diag", &[1, -1], 0),
                    ("x0", &[1, 0], 0),
                    ("x1", &[1, 0], -1),
                ],
            ),
            y2.clone(),
            true,
        ),
        (
            "four lines without x0",
            arr(
                2,
                &[
                    ("y0", &[0, 1], 0),
                    ("diag", &[1, -1], 0),
                    ("x1", &[1, 0], -1),
                ],
            ),
            y2.clone(),
            false,
        ),
        (
            "square with diagonal",
            arr(
                2,
                &[
                    ("x0", &[1, 0], 0),
                    ("x1", &[1, 0], -1),
                    ("y0", &[0, 1], 0),
                    ("y1", &[0, 1], -1),
                    ("diag", &[1, -1], 0),
                ],
            ),
            y2.clone(),
            true,
        ),
        (
            "square with diagonal, no x1",
            arr(
                2,
                &[
                    ("x0", &[1, 0], 0),
                    ("y0", &[0, 1], 0),
                    ("y1", &[0, 1], -1),
                    ("diag", &[1, -1], 0),
                ],
            ),
            y2.clone(),
            false,
        ),
        (
            "parallel horizontal lines",
            arr(
                2,
                &[("y0", &[0, 1], 0), ("y1", &[0, 1], -1), ("y2", &[0, 1], -2)],
            ),
            y2.clone(),
            true,
        ),
        (
            "single transverse line",
            arr(2, &[("y0", &[0, 1], 0), ("x0", &[1, 0], 0)]),
            y2.clone(),
            true,
        ),
        (
            "central pencil",
            arr(
                2,
                &[
                    ("y0", &[0, 1], 0),
                    ("diag", &[1, -1], 0),
                    ("anti", &[1, 1], 0),
                ],
            ),
            y2.clone(),
            false,
        ),
        (
            "central pencil with x0",
            arr(
                2,
                &[
                    ("y0", &[0, 1], 0),
                    ("diag", &[1, -1], 0),
                    ("anti", &[1, 1], 0),
                    ("x0", &[1, 0], 0),
                ],
            ),
            y2.clone(),
            true,
        ),
        (
            "all parallel to the line",
            arr(2, &[("x0", &[1, 0], 0), ("x1", &[1, 0], -1)]),
            y2.clone(),
            true,
        ),
        (
            "braid with coordinates",
            arr(
                3,
                &[
                    ("d12", &[1, -1, 0], 0),
                    ("d13", &[1, 0, -1], 0),
                    ("d23", &[0, 1, -1], 0),
                    ("x1", &[1, 0, 0], 0),
                    ("x2", &[0, 1, 0], 0),
                    ("x3", &[0, 0, 1], 0),
                ],
            ),
            y3.clone(),
            true,
        ),
        (
            "braid without x1=x2",
            arr(
                3,
                &[
                    ("d13", &[1, 0, -1], 0),
                    ("d23", &[0, 1, -1], 0),
                    ("x1", &[1, 0, 0], 0),
                    ("x2", &[0, 1, 0], 0),
                    ("x3", &[0, 0, 1], 0),
                ],
            ),
            y3,
            false,
        ),
        (
            "diagonal direction",
            arr(
                2,
                &[
                    ("y0", &[0, 1], 0),
                    ("x0", &[1, 0], 0),
                    ("diag", &[1, -1], 0),
                ],
            ),
            LineDirection::from_ints(&[1, 1]).unwrap(),
            true,
        ),
        (
            "diagonal direction, no diag",
            arr(2, &[("y0", &[0, 1], 0), ("x0", &[1, 0], 0)]),
            LineDirection::from_ints(&[1, 1]).unwrap(),
            false,
        ),
    ]
}

#[test]
fn goodness_agrees_with_fiber_oracle_on_corpus() {
    let corpus = goodness_corpus();
    assert!(corpus.len() >= 10);
    for (name, a, y, expect) in corpus {
        let good = is_good_line(&a, &y).unwrap();
        let oracle = goodness_fiber_oracle(&a, &y, 20).unwrap();
        assert_eq!(good.good, expect, "{name}");
        assert_eq!(oracle.all_distinct, good.good, "{name}");
        if !good.good {
            assert!(oracle.collision.is_some(), "{name}");
            assert!(good.witness.is_some(), "{name}");
        }
    }
}
