use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use bsroots_cli::{run, RunConfig};

fn main() -> ExitCode {
    if let Some(n) = std::env::var("BSROOTS_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cfg = RunConfig::parse();
    let out = run(&cfg);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code)
}
