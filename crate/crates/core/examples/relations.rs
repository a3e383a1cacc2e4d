//! Verifies every relation of the table in the groupoid model, then runs
//! the same suite with the braiding interpreted backwards on one side.
//!
//! ```bash
//! cargo run --release --example relations -- S3
//! ```

use std::time::Instant;

use little_bundles::make_group;
use little_bundles::trees::check_all_relations;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "S3".to_string());
    let g = make_group(&spec)?;

    let start = Instant::now();
    let reports = check_all_relations(&g, false)?;
    println!("{:<15} {:>8} {:>9}", "relation", "checked", "failures");
    for r in &reports {
        println!("{:<15} {:>8} {:>9}", r.relation, r.assignments_checked, r.failures.len());
    }
    println!("model: {:?}", start.elapsed());

    let mutated = check_all_relations(&g, true)?;
    let broken: Vec<_> = mutated.iter().filter(|r| !r.passed()).collect();
    println!("\nflipped braiding breaks {} relation(s)", broken.len());
    for r in broken {
        let first = &r.failures[0];
        println!("  {}: {} of {}, e.g. {:?}: {}", r.relation, r.failures.len(), r.assignments_checked, first.assignment, first.reason);
    }
    Ok(())
}
