use std::io;
use std::process;

use clap::Parser;
use diracsym_cli::{run, Cli, CommandConfig, ExitCode, WEYL_CAP_ENV};

fn main() {
    let cli = Cli::parse();
    let env_cap = std::env::var(WEYL_CAP_ENV).ok();
    let config = match CommandConfig::from_cli(cli, env_cap.as_deref()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            process::exit(ExitCode::InputError as i32);
        }
    };
    let code = run(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    process::exit(code as i32);
}
