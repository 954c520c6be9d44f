//! Trades exactness for small denominators: an 8-digit decimal sequence is
//! moved by less than 1/m to one with a far smaller common denominator.

use moonforge::{perturb, ScoreSequence};

fn main() -> moonforge::Result<()> {
    let targets = ScoreSequence::parse_list("1.41421356,1.41421356,0.17157288")?;
    println!("input {targets}, lcm {}", targets.lcm_denominators());
    for m in [2, 10, 100, 1000] {
        let p = perturb(&targets, m)?;
        println!(
            "m = {m:>4}: {} lcm {}, sup error {}",
            p.output,
            p.output.lcm_denominators(),
            p.sup_error
        );
    }
    Ok(())
}
