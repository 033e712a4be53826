use clap::Parser;

use hint_core::cli::{run, RunConfig};

fn main() {
    let config = RunConfig::parse();
    let code = run(config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
