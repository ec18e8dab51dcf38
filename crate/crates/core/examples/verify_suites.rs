//! Runs every theorem suite and prints its report.

use lune::verify::{run_suite, GeneratorSpec, TheoremId};

fn main() -> lune::Result<()> {
    let seed = std::env::var("LUNE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let mut failed = 0;
    for id in TheoremId::ALL {
        let r = run_suite(id, &GeneratorSpec::default(), seed)?;
        println!(
            "{:<18} cases {:>3}  worst violation {:.3e}  {}",
            id,
            r.cases_run,
            r.worst_violation,
            if r.pass { "pass" } else { "FAIL" }
        );
        failed += usize::from(!r.pass);
    }
    println!("{failed} suite(s) failed");
    Ok(())
}
