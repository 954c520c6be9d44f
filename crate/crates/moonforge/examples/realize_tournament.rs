//! Builds a tournament for an integer score sequence and lists its arcs.
//!
//!     cargo run --example realize_tournament -- "1,1,1,3,4"

use moonforge::{realize_integer, scores_of, FlowNetwork, ScoreSequence};

fn main() -> moonforge::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "2,2,2,2,2".into());
    let seq = ScoreSequence::parse_list(&text)?;

    let mut net = FlowNetwork::for_scores(&seq.to_integers()?);
    println!(
        "flow network: {} nodes, max flow {}",
        net.node_count(),
        net.solve()
    );

    let t = realize_integer(&seq)?;
    for (winner, loser) in t.edges() {
        println!("{} -> {}", winner + 1, loser + 1);
    }
    println!("scores {}", scores_of(&t));
    Ok(())
}
