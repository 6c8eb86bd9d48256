//! Drive the command-line front end from code and print the JSON report.

use clap::Parser;
use realcalc::cli::{run, Cli};

fn main() {
    let file = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "bundled:gc_su4.json".into());
    let cli = Cli::parse_from(["realcalc", "--format", "json", "analyze", &file]);
    match run(&cli) {
        Ok(report) => print!("{report}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
