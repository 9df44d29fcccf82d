use clap::Parser;
use relspin::cli::{run_cli, RunSpec};

fn main() {
    let spec = RunSpec::parse();
    std::process::exit(run_cli(&spec));
}
