//! Checks a few sequences and prints the violated subset when there is one.
//!
//!     cargo run --example check_feasibility -- "0,0,2"

use moonforge::{check_exhaustive, check_fast, ScoreSequence};

fn main() -> moonforge::Result<()> {
    let inputs: Vec<String> = match std::env::args().nth(1) {
        Some(arg) => vec![arg],
        None => ["1,1,1", "0,0,2", "1,1,2", "1/2,1/2,2", "6/5,6/5,3/5"]
            .map(String::from)
            .to_vec(),
    };
    for text in inputs {
        let seq = ScoreSequence::parse_list(&text)?;
        let fast = check_fast(&seq)?;
        let slow = check_exhaustive(&seq)?;
        assert_eq!(fast.feasible, slow.feasible);
        match &fast.witness {
            None => println!("{seq}: feasible"),
            Some(w) => println!("{seq}: infeasible, {w}"),
        }
    }
    Ok(())
}
