use clap::Parser;

use f2g_cli::{emit, run, RunConfig, EXIT_INVALID};

fn main() {
    let config = RunConfig::parse();
    let outcome = run(&config);
    if let Err(e) = emit(&config, &outcome) {
        eprintln!("error: writing output: {e}");
        std::process::exit(EXIT_INVALID);
    }
    std::process::exit(outcome.exit_code);
}
