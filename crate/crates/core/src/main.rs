use clap::Parser;

use cdim2::cli::{run, Cli};

fn main() {
    let outcome = run(&Cli::parse());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
