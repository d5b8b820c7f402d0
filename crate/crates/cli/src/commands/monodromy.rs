use arrmc_core::arrangement::LineDirection;
use arrmc_core::convolution::{is_isomorphic, middle_convolve};
use arrmc_core::io::tuple_json;
use arrmc_core::katz::{
    check_property_p, multiplicative_middle_convolution, tuple_isomorphism, MonodromyTuple,
    PropertyReport,
};
use arrmc_core::numeric::TransportSettings;
use arrmc_core::numeric::{
    monodromy_tuple_of_system, verify_mc_compatibility, CompatibilityReport, MonodromyReport,
};
use arrmc_core::pfaffian::{check_star_conditions, ConvolutionParameter, PfaffianSystem};
use arrmc_core::rational::{format_q, q, Q};
use arrmc_core::Result;
use serde_json::{json, Value};

use super::system::star_json;
use super::Command;
use crate::job::JobSpec;
use crate::report::{complex, cvec, error_kind, finite, qmatrix, tuple, tuple_iso, Outcome};

fn property_json(p: &PropertyReport) -> Value {
    json!({
        "holds": p.holds,
        "common_fixed_vector": p.common_fixed_vector,
        "common_fixed_covector": p.common_fixed_covector,
        "kernel_failures": p.kernel_failures,
        "dual_failures": p.dual_failures,
        "near_failures": p.near_failures,
    })
}

fn monodromy_json(m: &MonodromyReport) -> Value {
    json!({
        "convention": "M_k = transport^T around the k-th pole from the left; infinity = (M_n...M_1)^-1",
        "basepoint": complex(m.basepoint),
        "radius": m.radius,
        "poles": cvec(&m.poles),
        "labels": m.tuple.labels(),
        "product_residual": m.product_residual,
        "steps": m.steps,
        "tuple": tuple(&m.tuple),
    })
}

pub struct KatzMc;

impl Command for KatzMc {
    fn name(&self) -> &'static str {
        "katz-mc"
    }

    fn about(&self) -> &'static str {
        "multiplicative middle convolution of a monodromy tuple"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(2)?;
        let t = job.tuple(0)?;
        let ch = job.character(1)?;
        let r = multiplicative_middle_convolution(&t, &ch, job.rank_tol)?;
        let doc = tuple_json(&r.tuple);
        let report = json!({
            "lambda": format_q(ch.lambda()),
            "input_rank": t.rank(),
            "n": t.n(),
            "input_property_p": property_json(&check_property_p(&t, job.rank_tol)),
            "dim_K": r.dim_k,
            "dim_L": r.dim_l,
            "rank": r.tuple.rank(),
            "tuple": tuple(&r.tuple),
        });
        Ok(Outcome::ok(report).with_document(doc))
    }
}

pub struct Monodromy;

impl Command for Monodromy {
    fn name(&self) -> &'static str {
        "monodromy"
    }

    fn about(&self) -> &'static str {
        "numeric monodromy tuple of a system on the fiber over --base"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(1)?;
        let sys = job.system(0, job.unchecked)?;
        let m = monodromy_tuple_of_system(&sys, &job.line()?, &job.base()?, &job.settings()?)?;
        let doc = tuple_json(&m.tuple);
        let mut report = monodromy_json(&m);
        report["integrator"] = json!(job.integrator);
        report["tol"] = json!(job.tol);
        report["property_p"] = property_json(&check_property_p(&m.tuple, job.rank_tol));
        Ok(Outcome::ok(report).with_document(doc))
    }
}

fn invariant_table(c: &CompatibilityReport) -> Value {
    match &c.iso {
        Some(iso) => Value::Array(
            iso.invariants
                .iter()
                .map(|i| {
                    json!({
                        "generator": i.name,
                        "katz_charpoly": cvec(&i.lhs),
                        "additive_charpoly": cvec(&i.rhs),
                        "diff": i.diff,
                    })
                })
                .collect(),
        ),
        None => Value::Null,
    }
}

/// `mc_(lambda+1)` has the same character; its monodromy is compared with the
/// Katz tuple and reported without entering the verdict.
fn shifted_lambda(
    sys: &PfaffianSystem,
    y: &LineDirection,
    lam: &ConvolutionParameter,
    base: &[Q],
    settings: &TransportSettings,
    iso_tol: f64,
    katz: &MonodromyTuple,
) -> Value {
    let run = || -> Result<Value> {
        let shifted = ConvolutionParameter::new(lam.lambda() + q(1))?;
        let mc = middle_convolve(sys, y, &shifted)?;
        let m = monodromy_tuple_of_system(&mc, y, base, settings)?;
        let iso = if m.tuple.rank() == katz.rank() {
            Some(tuple_isomorphism(katz, &m.tuple, iso_tol)?)
        } else {
            None
        };
        Ok(json!({
            "lambda": shifted.to_string(),
            "mc_dimE": mc.dim_e(),
            "isomorphic_to_katz": iso.as_ref().is_some_and(|i| i.isomorphic),
            "isomorphism": iso.as_ref().map(tuple_iso),
        }))
    };
    run().unwrap_or_else(
        |e| json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } }),
    )
}

pub struct RhVerify;

impl Command for RhVerify {
    fn name(&self) -> &'static str {
        "rh-verify"
    }

    fn about(&self) -> &'static str {
        "mc_lambda of a solution solves MC_chi of its local system, and mc_(-lambda) recovers it"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(1)?;
        let sys = job.system(0, false)?;
        let (y, lam, base) = (job.line()?, job.lambda()?, job.base()?);
        let settings = job.settings()?;
        let compat = verify_mc_compatibility(&sys, &y, &lam, &base, &settings, job.iso_tol)?;
        let mc = middle_convolve(&sys, &y, &lam)?;
        let star = check_star_conditions(&sys, &y)?;
        let back = middle_convolve(&mc, &y, &lam.neg())?.reindexed(sys.arrangement())?;
        let round_trip = if back.dim_e() == sys.dim_e() {
            Some(is_isomorphic(&back, &sys)?)
        } else {
            None
        };
        let round_trip_holds = round_trip.as_ref().is_some_and(|r| r.isomorphic);
        let holds = compat.holds() && round_trip_holds;
        let report = json!({
            "lambda": lam.to_string(),
            "character_lambda": format_q(compat.character.lambda()),
            "base": base.iter().map(format_q).collect::<Vec<_>>(),
            "integrator": job.integrator,
            "tol": job.tol,
            "iso_tol": job.iso_tol,
            "input_dimE": sys.dim_e(),
            "mc_dimE": compat.mc_dim,
            "katz_rank": compat.katz.rank(),
            "katz_dim_K": compat.katz_dims.0,
            "katz_dim_L": compat.katz_dims.1,
            "input_monodromy": monodromy_json(&compat.input),
            "katz_tuple": tuple(&compat.katz),
            "mc_monodromy": monodromy_json(&compat.additive),
            "invariant_table": invariant_table(&compat),
            "isomorphism": compat.iso.as_ref().map(tuple_iso),
            "mc_is_solution": compat.holds(),
            "input_star": star_json(&star),
            "round_trip": {
                "dimE": back.dim_e(),
                "isomorphic": round_trip_holds,
                "intertwiner": round_trip.as_ref().and_then(|r| r.intertwiner.as_ref()).map(qmatrix),
            },
            "lambda_plus_one": shifted_lambda(&sys, &y, &lam, &base, &settings, job.iso_tol, &compat.katz),
            "max_invariant_diff": compat.iso.as_ref().map(|i| finite(i.invariants.iter().map(|v| v.diff).fold(0.0, f64::max))),
            "holds": holds,
        });
        Ok(Outcome::verdict(report, holds))
    }
}
