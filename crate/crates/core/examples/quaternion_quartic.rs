//! The 16-variable quaternionic quartic: invariance, restriction, rank-one
//! vanishing and the two nullspace dimensions behind extremality.
//!
//! cargo run --release --example quaternion_quartic [exact]

use hyperwron::quaternion_example::{example_report, ExampleCheck, ExampleOptions, SystemMode};

fn main() {
    let exact = std::env::args().any(|a| a == "exact");
    let mut opts = ExampleOptions::default();
    if exact {
        opts.mode = SystemMode::Exact;
    }
    match example_report(&ExampleCheck::ALL, opts) {
        Ok(report) => println!("{report}"),
        Err(e) => eprintln!("{e}"),
    }
}
