//! Runs perturbation plus realization over a schedule of accuracies and
//! prints the error, common denominator and blow-up size of each step.

use moonforge::{approximate_realize, ScoreSequence};

fn main() -> moonforge::Result<()> {
    let targets = ScoreSequence::parse_list("6/5,6/5,3/5")?;
    let run = approximate_realize(&targets, &[10, 20, 40, 80, 160])?;
    println!(
        "{:>5} {:>10} {:>6} {:>8}  sequence",
        "m", "sup error", "lcm", "vertices"
    );
    for r in &run.records {
        let status = if r.is_skipped() { " (skipped)" } else { "" };
        println!(
            "{:>5} {:>10} {:>6} {:>8}  {}{status}",
            r.m,
            r.sup_error.to_string(),
            r.lcm_denominator,
            r.vertices,
            r.perturbed
        );
    }
    Ok(())
}
