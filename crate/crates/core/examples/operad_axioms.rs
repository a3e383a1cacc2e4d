//! Exhaustive operad axioms for the normal-form operad of a group, and the
//! same suite with the label premultiplication left out of composition.
//!
//! ```bash
//! cargo run --release --example operad_axioms -- S3 arity=3,cap=1000000000
//! ```

use std::time::Instant;

use little_bundles::make_group;
use little_bundles::operad::{check_operad_axioms, Bounds, Pi0Operad};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let g = make_group(&args.next().unwrap_or_else(|| "S3".into()))?;
    let bounds: Bounds = args.next().as_deref().unwrap_or("arity=3,cap=1000000000").parse()?;
    println!("{} (order {}), {bounds}", g.label(), g.order());

    for (title, mutated) in [("normal forms", false), ("labels not premultiplied", true)] {
        let start = Instant::now();
        let reports = check_operad_axioms(&Pi0Operad::new(&g, mutated), &bounds)?;
        println!("\n{title} ({:.1?})", start.elapsed());
        for r in reports {
            let first = r.failures.first().map(String::as_str).unwrap_or("");
            println!("  {:<26} {:>11} instances {:>10} failures  {first}", r.axiom, r.instances, r.failure_count);
        }
    }
    Ok(())
}
