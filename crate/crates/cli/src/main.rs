mod commands;
mod job;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use commands::CommandRegistry;
use job::{Args, JobSpec};

fn write_out(job: &JobSpec, doc: &str) -> Result<(), String> {
    match &job.out {
        Some(path) => std::fs::write(path, doc).map_err(|e| format!("{}: {e}", path.display())),
        None => Ok(()),
    }
}

fn emit(value: &serde_json::Value) {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let registry = CommandRegistry::default();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                println!("\ncommands:\n{}", registry.help());
                return ExitCode::SUCCESS;
            }
            return ExitCode::from(2);
        }
    };
    let name = args.command.clone();
    let outcome = JobSpec::from_args(args).and_then(|job| {
        let cmd = registry.get(&job.command)?;
        cmd.run(&job).map(|o| (job, o))
    });
    match outcome {
        Ok((job, o)) => {
            if let Some(doc) = &o.document {
                if let Err(e) = write_out(&job, doc) {
                    eprintln!("arrmc: {e}");
                    return ExitCode::from(2);
                }
            }
            let mut rep = json!({
                "command": name,
                "status": if o.holds { "ok" } else { "property-false" },
            });
            rep["report"] = o.report;
            emit(&rep);
            if o.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = report::exit_code(&e);
            eprintln!("arrmc {name}: {e}");
            emit(&json!({
                "command": name,
                "status": "error",
                "error": { "kind": report::error_kind(&e), "message": e.to_string() },
            }));
            ExitCode::from(code as u8)
        }
    }
}
