use arrmc_core::arrangement::{
    build_intersection_poset, cone, decone, format_point, goodness_fiber_oracle_from, is_good_line,
    parallel_subarrangement, shifted_family,
};
use arrmc_core::io::arrangement_json;
use arrmc_core::Result;
use serde_json::json;

use super::Command;
use crate::job::JobSpec;
use crate::report::{flat, Outcome};

pub struct Poset;

impl Command for Poset {
    fn name(&self) -> &'static str {
        "poset"
    }

    fn about(&self) -> &'static str {
        "intersection poset of an arrangement, by rank"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(1)?;
        let arr = job.arrangement(0)?;
        let poset = build_intersection_poset(&arr);
        let levels: Vec<_> = poset
            .levels()
            .iter()
            .enumerate()
            .map(|(k, lvl)| {
                json!({
                    "rank": k,
                    "flats": lvl.iter().map(|f| flat(f, &arr)).collect::<Vec<_>>(),
                    // indices into the previous level of the flats containing each flat
                    "covers": if k == 0 { serde_json::Value::Null } else { json!(poset.covers()[k - 1]) },
                })
            })
            .collect();
        Ok(Outcome::ok(json!({
            "dim": arr.dim(),
            "flat_count": poset.len(),
            "levels": levels,
        })))
    }
}

pub struct GoodLine;

impl Command for GoodLine {
    fn name(&self) -> &'static str {
        "goodline"
    }

    fn about(&self) -> &'static str {
        "decide whether --line is good, cross-checked by the fiber oracle"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(1)?;
        let arr = job.arrangement(0)?;
        let y = job.line()?;
        let good = is_good_line(&arr, &y)?;
        let split = parallel_subarrangement(&arr, &y)?;
        let oracle = goodness_fiber_oracle_from(&arr, &y, job.samples, job.seed.unwrap_or(0))?;
        let label = |i: usize| arr.get(i).label().to_string();
        let shifted = if good.good {
            shifted_family(&arr, &y)?
                .iter()
                .map(|s| s.hyperplane.label().to_string())
                .collect::<Vec<_>>()
        } else {
            Vec::new()
        };
        let report = json!({
            "good": good.good,
            "witness": good.witness.as_ref().map(|w| flat(w, &arr)),
            "witness_shift": good.witness_shift.as_ref().map(|w| w.pretty()),
            "parallel": split.parallel.iter().map(|&i| label(i)).collect::<Vec<_>>(),
            "transverse": split.transverse.iter().map(|&i| label(i)).collect::<Vec<_>>(),
            "n": split.n(),
            "shifted_family": shifted,
            "oracle": {
                "samples": job.samples,
                "fibers_checked": oracle.fibers_checked,
                "all_distinct": oracle.all_distinct,
                "collision": oracle.collision.as_ref().map(|(u, (i, j))| json!({
                    "base": format_point(u),
                    "pair": [label(*i), label(*j)],
                })),
            },
            "oracle_agrees": oracle.all_distinct == good.good,
        });
        Ok(Outcome::verdict(report, good.good))
    }
}

pub struct Cone;

impl Command for Cone {
    fn name(&self) -> &'static str {
        "cone"
    }

    fn about(&self) -> &'static str {
        "homogenize an affine arrangement"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(1)?;
        let c = cone(&job.arrangement(0)?)?;
        let doc = arrangement_json(&c);
        let report = json!({ "arrangement": serde_json::from_str::<serde_json::Value>(&doc)? });
        Ok(Outcome::ok(report).with_document(doc))
    }
}

pub struct Decone;

impl Command for Decone {
    fn name(&self) -> &'static str {
        "decone"
    }

    fn about(&self) -> &'static str {
        "dehomogenize a central arrangement at x0 = 1"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(1)?;
        let d = decone(&job.arrangement(0)?)?;
        let doc = arrangement_json(&d);
        let report = json!({ "arrangement": serde_json::from_str::<serde_json::Value>(&doc)? });
        Ok(Outcome::ok(report).with_document(doc))
    }
}
