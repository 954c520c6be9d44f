//! Realizes a rational sequence by blowing each vertex up into `m` copies,
//! realizing the integer sequence, and averaging clusters back down.
//!
//!     cargo run --example rational_blowup -- "1/3,2/3,2"

use moonforge::{blowup_scores, cluster_average, realize_integer, ScoreSequence};

fn main() -> moonforge::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1/2,1/2,2".into());
    let targets = ScoreSequence::parse_list(&text)?;
    let m: u64 = targets.lcm_denominators().try_into().expect("small lcm");

    let plan = blowup_scores(&targets, m)?;
    println!("m = {m}, base {}, lifted {}", plan.base, plan.lifted);

    let h = realize_integer(&plan.lifted)?;
    let g = cluster_average(&h, targets.len(), m as usize)?;
    for i in 0..g.n() {
        let row: Vec<String> = g.row(i).iter().map(ToString::to_string).collect();
        println!("[{}]", row.join(", "));
    }
    assert_eq!(g.scores(), targets);
    println!("row sums {}", g.scores());
    Ok(())
}
