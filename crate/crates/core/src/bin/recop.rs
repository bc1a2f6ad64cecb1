use std::io::Write;

use clap::Parser;
use recop::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(outcome.render().as_bytes());
    std::process::exit(outcome.exit_code);
}
