//! Command-line front end for the `diracsym` library.

pub mod config;
pub mod render;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::Path;

use diracsym::dirac_spectrum::{classify_noncompact, minimal_highest_weights, parthasarathy_oracle, spectrum_report};
use diracsym::f4_casimir::{casimir_argmin, casimir_table};
use diracsym::holonomy::{g2_casimir_split, kahler_report, qk_report};
use diracsym::root_systems::Family;
use diracsym::symmetric_pairs::{Catalog, Structure, SymmetricPair};
use diracsym::Error;
use serde_json::Value;

pub use config::{Cli, CommandConfig, CommandKind, OutputFormat, WEYL_CAP_ENV};
use render::{HolonomyExtras, Spin9Link};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Success = 0,
    VerificationFailure = 1,
    InputError = 2,
    CapExceeded = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub code: ExitCode,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: ExitCode::InputError, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => ExitCode::CapExceeded,
            Error::Assertion(_) | Error::BadHalfSums(_) | Error::WolfViolation { .. } => ExitCode::VerificationFailure,
            _ => ExitCode::InputError,
        };
        Self { code, message: e.to_string() }
    }
}

pub fn read_catalog_file(path: &Path) -> Result<Vec<SymmetricPair>, Failure> {
    let fail = |e: &dyn std::fmt::Display| Failure::input(format!("{}: {e}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| fail(&e))?;
    Catalog::parse_entries(&text).map_err(|e| fail(&e))
}

/// Built-in entries with the file at `path` (if any) merged over them.
pub fn load_catalog(path: Option<&Path>) -> Result<Catalog, Failure> {
    let mut catalog = Catalog::builtin();
    if let Some(path) = path {
        let entries = read_catalog_file(path)?;
        catalog.merge(entries);
    }
    Ok(catalog)
}

/// The entry named `name`, taken from the file at `path` when it defines
/// one and otherwise built alone from the built-ins.
pub fn load_entry(name: &str, path: Option<&Path>) -> Result<SymmetricPair, Failure> {
    if let Some(path) = path {
        let entries = read_catalog_file(path)?;
        if let Some(p) = entries.into_iter().find(|p| p.name() == name) {
            return Ok(p);
        }
    }
    Ok(Catalog::builtin_entry(name)?)
}

/// Runs one command, writing the report to `out` and diagnostics to `err`.
pub fn run(config: &CommandConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode {
    match execute(config, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(
    out: &mut dyn Write,
    format: OutputFormat,
    json: impl FnOnce() -> Value,
    table: impl FnOnce() -> String,
) -> Result<(), Failure> {
    let text = match format {
        OutputFormat::Json => render::to_json_text(&json()),
        OutputFormat::Table => table(),
    };
    out.write_all(text.as_bytes()).map_err(|e| Failure::input(format!("writing report: {e}")))
}

fn execute(config: &CommandConfig, out: &mut dyn Write) -> Result<ExitCode, Failure> {
    config.validate().map_err(Failure::input)?;
    let path = config.catalog_path.as_deref();
    let space = || -> Result<SymmetricPair, Failure> {
        let name = config.space.as_deref().ok_or_else(|| Failure::input("--space is required"))?;
        load_entry(name, path)
    };
    let fmt = config.output;
    match config.command {
        CommandKind::Catalog => {
            let catalog = load_catalog(path)?;
            if let Some(path) = &config.export_path {
                fs::write(path, catalog.to_json() + "\n")
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            }
            emit(out, fmt, || render::catalog_json(&catalog), || render::catalog_table(&catalog))?;
        }
        CommandKind::Spectrum => {
            let p = &space()?;
            let report = spectrum_report(p)?;
            let oracle = if config.oracle { Some(parthasarathy_oracle(p, config.weyl_cap)?) } else { None };
            emit(
                out,
                fmt,
                || render::spectrum_json(p, &report, oracle.as_ref()),
                || render::spectrum_table(p, &report, oracle.as_ref()),
            )?;
        }
        CommandKind::Holonomy => {
            let p = &space()?;
            let (reports, extras) = holonomy(p)?;
            emit(
                out,
                fmt,
                || render::holonomy_json(p.name(), &reports, &extras),
                || render::holonomy_table(p.name(), &reports, &extras),
            )?;
        }
        CommandKind::Casimir => {
            let p = &space()?;
            if p.structure() != Structure::Spin9 {
                return Err(Failure::input(format!("casimir applies to the Spin9 entry, not {}", p.name())));
            }
            let table = casimir_table(&config.orders)?;
            let argmins = config.orders.iter().map(|&k| casimir_argmin(k)).collect::<Result<Vec<_>, _>>()?;
            emit(
                out,
                fmt,
                || render::casimir_json(p.name(), &table, &argmins),
                || render::casimir_table_text(p.name(), &table, &argmins),
            )?;
        }
        CommandKind::Verify => {
            let catalog = match &config.space {
                Some(_) => Catalog::new(vec![space()?])?,
                None => load_catalog(path)?,
            };
            let report = verify::verify_catalog(&catalog, None, config.weyl_cap)?;
            emit(out, fmt, || render::verify_json(&report), || render::verify_table(&report))?;
            if !report.all_passed() {
                return Ok(ExitCode::VerificationFailure);
            }
        }
    }
    Ok(ExitCode::Success)
}

fn holonomy(p: &SymmetricPair) -> Result<(Vec<diracsym::holonomy::HolonomyReport>, HolonomyExtras), Failure> {
    let mut reports = Vec::new();
    let mut extras = HolonomyExtras::default();
    if p.metadata().is_kahler() {
        reports.push(kahler_report(p)?);
    }
    if p.structure() == Structure::QuaternionKahler {
        reports.push(qk_report(p)?);
        if p.root_system().cartan().family == Family::G {
            extras.g2_split = Some(g2_casimir_split()?);
        }
    }
    if p.structure() == Structure::Spin9 {
        p.require_spin()?;
        let family = minimal_highest_weights(p)?;
        let signs = classify_noncompact(p);
        let beta_i0 = family
            .find(&signs.i_zero)
            .map(|m| m.beta.clone())
            .ok_or_else(|| Failure::from(Error::Assertion("no β_{I₀} in the minimal family".into())))?;
        extras.spin9 = Some(Spin9Link { argmin: casimir_argmin(4)?, beta_i0 });
    }
    if reports.is_empty() && extras.spin9.is_none() {
        return Err(Failure::input(format!("{} carries no Kähler, quaternion-Kähler or Spin9 structure", p.name())));
    }
    Ok((reports, extras))
}
