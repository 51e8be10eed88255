use clap::Parser;
use halcece::cli::{run, Args};

fn main() {
    let args = Args::parse();
    let code = run(&args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
