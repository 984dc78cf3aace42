use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use diracsym::root_systems::DEFAULT_WEYL_CAP;

pub const WEYL_CAP_ENV: &str = "DIRACSYM_WEYL_CAP";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "diracsym",
    version,
    about = "Exact first Dirac eigenvalue and holonomy criteria on compact spin symmetric spaces"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,

    /// Largest Weyl group enumerated by the brute-force oracle
    /// (default 1000000, or $DIRACSYM_WEYL_CAP).
    #[arg(long, global = true)]
    pub weyl_cap: Option<u64>,

    /// JSON catalog file merged over the built-in entries.
    #[arg(long = "catalog", global = true, value_name = "PATH")]
    pub catalog_path: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List catalog entries.
    Catalog {
        /// Write the catalog as JSON to this file.
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
    },
    /// First Dirac eigenvalue and minimal highest weights.
    Spectrum {
        #[arg(long)]
        space: String,
        /// Also run the brute-force oracle over the Weyl group.
        #[arg(long)]
        oracle: bool,
    },
    /// Kähler and quaternion-Kähler criteria.
    Holonomy {
        #[arg(long)]
        space: String,
    },
    /// Higher Casimir eigenvalues on the spin components of F4/Spin9.
    Casimir {
        #[arg(long)]
        space: String,
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 4])]
        orders: Vec<u32>,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, conflicts_with = "space")]
        all: bool,
        #[arg(long)]
        space: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Catalog,
    Spectrum,
    Holonomy,
    Casimir,
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandConfig {
    pub command: CommandKind,
    pub space: Option<String>,
    pub orders: Vec<u32>,
    pub weyl_cap: u64,
    pub output: OutputFormat,
    pub catalog_path: Option<PathBuf>,
    pub export_path: Option<PathBuf>,
    pub oracle: bool,
}

impl CommandConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            space: None,
            orders: Vec::new(),
            weyl_cap: DEFAULT_WEYL_CAP,
            output: OutputFormat::Table,
            catalog_path: None,
            export_path: None,
            oracle: false,
        }
    }

    /// `env_cap` is the raw value of [`WEYL_CAP_ENV`]; an explicit flag wins.
    pub fn from_cli(cli: Cli, env_cap: Option<&str>) -> Result<Self, String> {
        let weyl_cap = match (cli.weyl_cap, env_cap) {
            (Some(c), _) => c,
            (None, Some(s)) => {
                s.trim().parse().map_err(|_| format!("{WEYL_CAP_ENV}={s:?} is not a nonnegative integer"))?
            }
            (None, None) => DEFAULT_WEYL_CAP,
        };
        let mut c = Self::new(CommandKind::Catalog);
        c.weyl_cap = weyl_cap;
        c.output = cli.output;
        c.catalog_path = cli.catalog_path;
        match cli.command {
            Command::Catalog { export } => c.export_path = export,
            Command::Spectrum { space, oracle } => {
                c.command = CommandKind::Spectrum;
                c.space = Some(space);
                c.oracle = oracle;
            }
            Command::Holonomy { space } => {
                c.command = CommandKind::Holonomy;
                c.space = Some(space);
            }
            Command::Casimir { space, orders } => {
                c.command = CommandKind::Casimir;
                c.space = Some(space);
                c.orders = orders;
            }
            Command::Verify { all: _, space } => {
                c.command = CommandKind::Verify;
                c.space = space;
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), String> {
        let needs_space = matches!(self.command, CommandKind::Spectrum | CommandKind::Holonomy | CommandKind::Casimir);
        if needs_space && self.space.is_none() {
            return Err("--space is required".into());
        }
        if self.command == CommandKind::Casimir && self.orders.is_empty() {
            return Err("--orders must list at least one order".into());
        }
        if self.command != CommandKind::Casimir && !self.orders.is_empty() {
            return Err("--orders is only valid with casimir".into());
        }
        Ok(())
    }
}
