use arrmc_core::convolution::{
    convolve, kernel_subspaces, middle_convolve, verify_composition_law, LawCheck,
};
use arrmc_core::io::system_json;
use arrmc_core::pfaffian::{
    check_assumption_generic, check_integrability, check_star_conditions, describe_offender,
    StarReport,
};
use arrmc_core::rational::format_q;
use arrmc_core::Result;
use serde_json::{json, Value};

use super::Command;
use crate::job::JobSpec;
use crate::report::{qcolumns, qmatrix, Outcome};

pub fn star_json(s: &StarReport) -> Value {
    json!({
        "holds": s.holds,
        "star1_failures": s.star1_failures,
        "star2_failures": s.star2_failures,
    })
}

fn system_value(doc: &str) -> Result<Value> {
    Ok(serde_json::from_str(doc)?)
}

pub struct Check;

impl Command for Check {
    fn name(&self) -> &'static str {
        "check"
    }

    fn about(&self) -> &'static str {
        "integrability, the genericity assumption (with --lambda) and the star conditions (with --line)"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(1)?;
        let sys = job.system(0, true)?;
        let integ = check_integrability(&sys);
        let mut holds = integ.integrable;
        let mut report = json!({
            "dimE": sys.dim_e(),
            "integrable": integ.integrable,
            "integrability_witness": integ.witness.as_ref().map(|(x, h)| json!({
                "flat": x.pretty(),
                "hyperplane": sys.arrangement().get(*h).label(),
            })),
        });
        if let Some(y) = &job.line {
            if let Some(l) = &job.lambda {
                let lam = arrmc_core::pfaffian::ConvolutionParameter::new(l.clone())?;
                let g = check_assumption_generic(&sys, y, &lam)?;
                holds &= g.passes;
                report["generic"] = json!({
                    "lambda": lam.to_string(),
                    "passes": g.passes,
                    "offenders": g.offenders.iter().map(|(h, k)| json!({
                        "hyperplane": h,
                        "k": k.to_string(),
                        "message": describe_offender(h, k),
                    })).collect::<Vec<_>>(),
                });
            }
            let star = check_star_conditions(&sys, y)?;
            holds &= star.holds;
            report["star"] = star_json(&star);
        }
        report["holds"] = json!(holds);
        Ok(Outcome::verdict(report, holds))
    }
}

pub struct Convolve;

impl Command for Convolve {
    fn name(&self) -> &'static str {
        "convolve"
    }

    fn about(&self) -> &'static str {
        "additive convolution c_lambda along --line"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(1)?;
        let sys = job.system(0, job.unchecked)?;
        let (y, lam) = (job.line()?, job.lambda()?);
        let r = convolve(&sys, &y, &lam)?;
        let doc = system_json(&r.system);
        let report = json!({
            "lambda": lam.to_string(),
            "n": r.n(),
            "dimE": r.system.dim_e(),
            "block_order": r.block_order,
            "K_basis": qcolumns(&r.k_basis),
            "L_basis": qcolumns(&r.l_basis),
            "integrable": check_integrability(&r.system).integrable,
            "system": system_value(&doc)?,
        });
        Ok(Outcome::ok(report).with_document(doc))
    }
}

pub struct MiddleConvolve;

impl Command for MiddleConvolve {
    fn name(&self) -> &'static str {
        "middle-convolve"
    }

    fn about(&self) -> &'static str {
        "middle convolution mc_lambda along --line"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(1)?;
        let sys = job.system(0, job.unchecked)?;
        let (y, lam) = (job.line()?, job.lambda()?);
        let (k, l) = kernel_subspaces(&sys, &y, &lam)?;
        let mc = middle_convolve(&sys, &y, &lam)?;
        let doc = system_json(&mc);
        let report = json!({
            "lambda": lam.to_string(),
            "input_dimE": sys.dim_e(),
            "dim_K": k.ncols(),
            "dim_L": l.ncols(),
            "dimE": mc.dim_e(),
            "integrable": check_integrability(&mc).integrable,
            "residues": sys.arrangement().hyperplanes().iter().zip(mc.residues())
                .map(|(h, a)| (h.label().to_string(), qmatrix(a)))
                .collect::<serde_json::Map<_, _>>(),
            "system": system_value(&doc)?,
        });
        Ok(Outcome::ok(report).with_document(doc))
    }
}

fn law_json(l: &LawCheck) -> Value {
    json!({
        "holds": l.holds(),
        "lhs_dimE": l.lhs_dim,
        "rhs_dimE": l.rhs_dim,
        "hom_dim": l.iso.as_ref().map(|r| r.hom_dim),
        "intertwiner": l.iso.as_ref().and_then(|r| r.intertwiner.as_ref()).map(qmatrix),
    })
}

pub struct ComposeVerify;

impl Command for ComposeVerify {
    fn name(&self) -> &'static str {
        "compose-verify"
    }

    fn about(&self) -> &'static str {
        "check mc_mu(mc_lambda) = mc_(lambda+mu) and mc_(-lambda)(mc_lambda) = id"
    }

    fn run(&self, job: &JobSpec) -> Result<Outcome> {
        job.expect_inputs(1)?;
        let sys = job.system(0, job.unchecked)?;
        let (y, lam, mu) = (job.line()?, job.lambda()?, job.mu()?);
        let r = verify_composition_law(&sys, &y, &lam, &mu)?;
        let report = json!({
            "lambda": lam.to_string(),
            "mu": mu.to_string(),
            "lambda_plus_mu": format_q(&(lam.lambda() + mu.lambda())),
            "input_dimE": r.input_dim,
            "mc_lambda_dimE": r.mc_lambda_dim,
            "input_star": star_json(&r.input_star),
            "intermediate_star": star_json(&r.intermediate_star),
            "sum_law": law_json(&r.sum_law),
            "inverse_law": law_json(&r.inverse_law),
            "holds": r.holds(),
        });
        Ok(Outcome::verdict(report, r.holds()))
    }
}
