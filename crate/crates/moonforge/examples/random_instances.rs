//! Seeded feasible instances. The same seed gives the same sequence on every
//! platform.

use moonforge::{check_fast, random_feasible, realize_rational};

fn main() -> moonforge::Result<()> {
    for seed in 0..5 {
        let seq = random_feasible(6, 4, seed)?;
        assert!(check_fast(&seq)?.feasible);
        let g = realize_rational(&seq)?;
        println!("seed {seed}: {seq} (realized on {} vertices)", g.n());
    }
    Ok(())
}
