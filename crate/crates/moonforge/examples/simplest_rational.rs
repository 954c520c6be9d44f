//! The rational with the least denominator strictly between two bounds.
//!
//!     cargo run --example simplest_rational -- 3.14159 3.1416

use moonforge::{parse_rational, simplest_rational_in};

fn main() -> moonforge::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs = if args.len() == 2 {
        vec![(args[0].clone(), args[1].clone())]
    } else {
        [
            ("1/2", "7/10"),
            ("3.14159", "3.1416"),
            ("-7/10", "-1/2"),
            ("0", "1/1000"),
        ]
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .to_vec()
    };
    for (a, b) in pairs {
        let (lo, hi) = (parse_rational(&a)?, parse_rational(&b)?);
        println!("({lo}, {hi}) -> {}", simplest_rational_in(&lo, &hi)?);
    }
    Ok(())
}
