use clap::Parser;
use slocc::cli::{run, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    std::process::exit(run(&cfg));
}
