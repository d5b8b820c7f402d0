use std::collections::BTreeSet;

use super::{Arrangement, Flat};

/// The intersection poset `L(A)` graded by rank.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    /// `levels[k]` holds the rank-`k` flats in canonical order.
    levels: Vec<Vec<Flat>>,
    /// `covers[k][j]` lists the indices in `levels[k]` of the flats that
    /// contain `levels[k + 1][j]`.
    covers: Vec<Vec<Vec<usize>>>,
}

impl IntersectionPoset {
    pub fn levels(&self) -> &[Vec<Flat>] {
        &self.levels
    }

    pub fn rank(&self, k: usize) -> &[Flat] {
        self.levels.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn max_rank(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn covers(&self) -> &[Vec<Vec<usize>>] {
        &self.covers
    }

    pub fn flats(&self) -> impl Iterator<Item = &Flat> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, f: &Flat) -> bool {
        self.levels
            .get(f.rank())
            .is_some_and(|lvl| lvl.binary_search(f).is_ok())
    }
}

/// Breadth-first closure: every rank-`k+1` flat is a rank-`k` flat cut by
/// one more hyperplane.
pub fn build_intersection_poset(arr: &Arrangement) -> IntersectionPoset {
    let mut levels: Vec<Vec<Flat>> = vec![vec![Flat::ambient(arr.dim()).attach(arr)]];
    loop {
        let current = levels.last().unwrap();
        let mut next = BTreeSet::new();
        for flat in current {
            for (i, h) in arr.hyperplanes().iter().enumerate() {
                if flat.containing().contains(&i) {
                    continue;
                }
                if let Some(f) = flat.intersect(h) {
                    if f.rank() == flat.rank() + 1 {
                        next.insert(f);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.into_iter().map(|f| f.attach(arr)).collect());
    }

    let covers = levels
        .windows(2)
        .map(|w| {
            w[1].iter()
                .map(|child| {
                    w[0].iter()
                        .enumerate()
                        .filter(|(_, parent)| {
                            parent
                                .containing()
                                .iter()
                                .all(|h| child.containing().contains(h))
                        })
                        .map(|(j, _)| j)
                        .collect()
                })
                .collect()
        })
        .collect();

    IntersectionPoset { levels, covers }
}

/// Every nonempty intersection of a subset of hyperplanes, found by
/// enumerating all `2^n` subsets. Exponential; meant as a test oracle.
pub fn brute_force_flats(arr: &Arrangement) -> BTreeSet<Flat> {
    let n = arr.len();
    assert!(n < 24, "brute force over 2^{n} subsets");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let mut flat = Some(Flat::ambient(arr.dim()));
        for i in 0..n {
            if mask & (1 << i) != 0 {
                flat = flat.and_then(|f| f.intersect(arr.get(i)));
            }
        }
        if let Some(f) = flat {
            out.insert(f);
        }
    }
    out
}
