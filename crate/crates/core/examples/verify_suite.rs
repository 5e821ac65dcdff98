//! Runs the verification suite and writes the report as JSON.
//!
//! ```text
//! cargo run --release --example verify_suite [--quick] [--fault NAME]
//! ```

use reeb_symm::config::RunConfig;
use reeb_symm::verify::run_suite;

fn main() -> reeb_symm::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let quick = args.iter().any(|a| a == "--quick");
    let fault = args.iter().position(|a| a == "--fault").and_then(|i| args.get(i + 1)).cloned();
    let cfg = RunConfig {
        quick,
        inject_fault: fault.clone(),
        out: "target/verify_suite".into(),
        ..Default::default()
    };

    let report = run_suite(quick, cfg.seed, fault.as_deref());
    for c in &report.checks {
        println!("{:>2} {:<5} {:<22} {:>9.2e} / {:<9.2e} {:>8.1} ms", c.id, if c.pass { "ok" } else { "FAIL" }, c.name, c.measured, c.tolerance, c.elapsed_ms);
    }
    let path = cfg.write_json("verify.json", &report)?;
    println!("{} -> {}", if report.pass { "all passed" } else { "FAILED" }, path.display());
    if !report.pass {
        std::process::exit(1);
    }
    Ok(())
}
