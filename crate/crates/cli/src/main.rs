use clap::Parser;
use ptosc_cli::cli::Cli;
use ptosc_cli::{commands, ExitCode};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Usage } else { ExitCode::Success };
            let _ = e.print();
            std::process::exit(code as i32);
        }
    };
    if let Err(e) = commands::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code() as i32);
    }
}
