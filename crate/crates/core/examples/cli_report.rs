// The batch front end driven in-process.

use kdirac::cli::{execute, CommandKind, OutputFormat, RunConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = RunConfig::new(CommandKind::Discover, 2, 2, 2);
    let report = execute(&cfg)?;
    print!("{}", report.to_json());

    cfg.command = CommandKind::SolutionDims;
    cfg.output_format = OutputFormat::Csv;
    print!("{}", execute(&cfg)?.render(cfg.output_format));

    let mut out = Vec::new();
    let code = kdirac::cli::run(["kdirac", "verify-liealg", "--k", "2", "--n", "3"], &mut out, &mut std::io::stderr());
    println!("verify-liealg exit {code}");
    if !report.pass || code != 0 {
        return Err("report failed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
