use clap::error::ErrorKind;
use clap::Parser;

use teneig_cli::args::{Cli, Command};
use teneig_cli::commands;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let result = match &cli.command {
        Command::Solve(args) => commands::cmd_solve(args),
        Command::Enumerate(args) => commands::cmd_enumerate(args),
        Command::SweepAlpha(args) => commands::cmd_sweep(args),
        Command::Basins(args) => commands::cmd_basins(args),
        Command::Trace(args) => commands::cmd_trace(args),
        Command::Classify(args) => commands::cmd_classify(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
