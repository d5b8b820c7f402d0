use std::path::{Path, PathBuf};

use arrmc_core::arrangement::{Arrangement, LineDirection};
use arrmc_core::io::{self, ArrangementDoc, SystemDoc};
use arrmc_core::katz::{CharacterValue, MonodromyTuple, DEFAULT_ISO_TOL, DEFAULT_RANK_TOL};
use arrmc_core::numeric::{TransportSettings, DEFAULT_INTEGRATOR, DEFAULT_TOL};
use arrmc_core::pfaffian::{ConvolutionParameter, PfaffianSystem};
use arrmc_core::rational::{parse_q, Q};
use arrmc_core::{Error, Result};
use clap::Parser;

pub const CORPUS_ENV: &str = "ARRMC_CORPUS_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "arrmc",
    version,
    about = "Hyperplane arrangements, middle convolution and monodromy"
)]
pub struct Args {
    /// Subcommand name (listed below).
    pub command: String,

    /// Input JSON files.
    pub inputs: Vec<PathBuf>,

    /// Convolution parameter, an exact non-integer rational.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,

    /// Second convolution parameter for `compose-verify`.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,

    /// Line direction as comma-separated rationals, e.g. "0,1".
    #[arg(long, allow_hyphen_values = true)]
    pub line: Option<String>,

    /// Base point transverse to the line, e.g. "2".
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,

    /// Integration tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Tolerance for numeric tuple isomorphism.
    #[arg(long = "iso-tol", default_value_t = DEFAULT_ISO_TOL)]
    pub iso_tol: f64,

    /// Relative singular-value threshold for numeric ranks.
    #[arg(long = "rank-tol", default_value_t = DEFAULT_RANK_TOL)]
    pub rank_tol: f64,

    /// Number of base points sampled by the fiber oracle.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,

    /// Offset into the Halton sequence of the goodness oracle.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Embedded Runge-Kutta pair used for transport.
    #[arg(long, default_value = DEFAULT_INTEGRATOR)]
    pub integrator: String,

    /// Skip the integrability check when loading systems.
    #[arg(long)]
    pub unchecked: bool,

    /// Write the resulting document (arrangement, system or tuple) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A parsed invocation.
pub struct JobSpec {
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub lambda: Option<Q>,
    pub mu: Option<Q>,
    pub line: Option<LineDirection>,
    pub base: Option<Vec<Q>>,
    pub tol: f64,
    pub iso_tol: f64,
    pub rank_tol: f64,
    pub samples: usize,
    pub seed: Option<u64>,
    pub integrator: String,
    pub unchecked: bool,
    pub out: Option<PathBuf>,
}

fn parse_list(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(|t| parse_q(t.trim())).collect()
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Parse(format!(
            "--{name} must be a positive number, got {v}"
        )))
    }
}

impl JobSpec {
    pub fn from_args(a: Args) -> Result<Self> {
        Ok(JobSpec {
            command: a.command,
            inputs: a.inputs,
            lambda: a.lambda.as_deref().map(parse_q).transpose()?,
            mu: a.mu.as_deref().map(parse_q).transpose()?,
            line: a
                .line
                .as_deref()
                .map(|s| parse_list(s).and_then(LineDirection::new))
                .transpose()?,
            base: a.base.as_deref().map(parse_list).transpose()?,
            tol: positive("tol", a.tol)?,
            iso_tol: positive("iso-tol", a.iso_tol)?,
            rank_tol: positive("rank-tol", a.rank_tol)?,
            samples: a.samples,
            seed: a.seed,
            integrator: a.integrator,
            unchecked: a.unchecked,
            out: a.out,
        })
    }

    /// Finds an input, falling back to the corpus directory for relative
    /// paths that do not exist.
    pub fn resolve(path: &Path) -> Result<PathBuf> {
        if path.exists() {
            return Ok(path.to_path_buf());
        }
        if path.is_relative() {
            if let Some(dir) = std::env::var_os(CORPUS_ENV) {
                let p = Path::new(&dir).join(path);
                if p.exists() {
                    return Ok(p);
                }
            }
        }
        Err(Error::Parse(format!(
            "input file {} not found",
            path.display()
        )))
    }

    pub fn read_input(&self, i: usize, what: &str) -> Result<String> {
        let path = self
            .inputs
            .get(i)
            .ok_or_else(|| Error::Parse(format!("missing input file: {what}")))?;
        let p = Self::resolve(path)?;
        std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
    }

    pub fn expect_inputs(&self, n: usize) -> Result<()> {
        if self.inputs.len() > n {
            return Err(Error::Parse(format!(
                "{} takes at most {n} input file(s), got {}",
                self.command,
                self.inputs.len()
            )));
        }
        Ok(())
    }

    /// An arrangement document, or the arrangement of a system document.
    pub fn arrangement(&self, i: usize) -> Result<Arrangement> {
        let text = self.read_input(i, "arrangement")?;
        let v: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        if v.get("residues").is_some() {
            let doc: SystemDoc =
                serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(doc.to_system(true)?.arrangement().clone())
        } else {
            let doc: ArrangementDoc =
                serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            doc.to_arrangement(true)
        }
    }

    pub fn system(&self, i: usize, unchecked: bool) -> Result<PfaffianSystem> {
        io::parse_system(&self.read_input(i, "system")?, unchecked)
    }

    pub fn tuple(&self, i: usize) -> Result<MonodromyTuple> {
        io::parse_tuple(&self.read_input(i, "tuple")?)
    }

    pub fn line(&self) -> Result<LineDirection> {
        self.line
            .clone()
            .ok_or_else(|| Error::Parse("--line is required".into()))
    }

    pub fn base(&self) -> Result<Vec<Q>> {
        self.base
            .clone()
            .ok_or_else(|| Error::Parse("--base is required".into()))
    }

    pub fn lambda(&self) -> Result<ConvolutionParameter> {
        let l = self
            .lambda
            .clone()
            .ok_or_else(|| Error::Parse("--lambda is required".into()))?;
        ConvolutionParameter::new(l)
    }

    pub fn mu(&self) -> Result<ConvolutionParameter> {
        let m = self
            .mu
            .clone()
            .ok_or_else(|| Error::Parse("--mu is required".into()))?;
        ConvolutionParameter::new(m)
    }

    /// The character from `--lambda`, or from a character document given
    /// as input `i`.
    pub fn character(&self, i: usize) -> Result<CharacterValue> {
        match (&self.lambda, self.inputs.get(i)) {
            (Some(l), None) => CharacterValue::new(l),
            (None, Some(_)) => io::parse_character(&self.read_input(i, "character")?),
            (Some(_), Some(_)) => Err(Error::Parse(
                "give either --lambda or a character file, not both".into(),
            )),
            (None, None) => Err(Error::Parse(
                "--lambda or a character file is required".into(),
            )),
        }
    }

    pub fn settings(&self) -> Result<TransportSettings> {
        TransportSettings::new(self.tol, &self.integrator)
    }
}
