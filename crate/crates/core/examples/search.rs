//! Looks for a body of constant diameter whose width is not constant.
//!
//! Below pi/2 it is not known whether such bodies exist. The search only
//! reports candidates; a flag is a prompt for closer study, not a proof.

fn main() -> lune::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let trials = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200);
    let report = lune::verify::search_constant_diameter_counterexample(seed, trials)?;
    println!("seed {seed}, {trials} trials");
    println!("constant-diameter candidates: {}", report.constant_diameter);
    for f in &report.flagged {
        println!(
            "  trial {}: {} vertices, diameter {:.9}, width deviation {:.3e} (recheck {:.3e})",
            f.trial, f.vertices, f.diameter, f.width_deviation, f.recheck_deviation
        );
    }
    println!("{}", report.summary);
    Ok(())
}
