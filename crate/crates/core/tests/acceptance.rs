//! One PASS/FAIL line per acceptance criterion, then the oracle reports and
//! a check that every criterion can be forced to fail. Exits 1 on failure.
//!
//! ```text
//! cargo test --release --test acceptance
//! ```

use std::process::ExitCode;

use reeb_symm::verify::{oracle_reports, run_suite, CHECK_NAMES};

fn main() -> ExitCode {
    let report = run_suite(false, 1, None);
    let mut ok = report.checks.len() == CHECK_NAMES.len();
    for c in &report.checks {
        let budget = c.budget_ms.map(|b| format!(", budget {b} ms")).unwrap_or_default();
        println!(
            "{} criterion {:>2} {}: measured {:.3e}, tolerance {:.3e} ({:.1} ms{budget}); {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.measured,
            c.tolerance,
            c.elapsed_ms,
            c.detail
        );
    }
    ok &= report.pass;

    match oracle_reports(7, false) {
        Ok(reports) => {
            for r in reports {
                println!(
                    "{} oracle {}: main {:.6e}, oracle {:.6e}, tolerance {}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.quantity,
                    r.main_value,
                    r.oracle_value,
                    r.tolerance_name
                );
                ok &= r.pass;
            }
        }
        Err(e) => {
            println!("FAIL oracle reports: {e}");
            ok = false;
        }
    }

    let mut injected = true;
    for name in CHECK_NAMES {
        let failed: Vec<_> = run_suite(true, 1, Some(name)).failures().map(|c| c.name.clone()).collect();
        injected &= failed == [name];
    }
    println!("{} injected faults fail exactly the named criterion", if injected { "PASS" } else { "FAIL" });
    ok &= injected;

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
