//! Compares the Grothendieck construction of the Hurwitz diagram with the
//! direct presentation of the Hurwitz groupoid.
//!
//! ```bash
//! cargo run --release --example grothendieck -- S3 3
//! ```

use little_bundles::hurwitz::grothendieck::compare_hurwitz_grothendieck;
use little_bundles::make_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let g = make_group(&args.next().unwrap_or_else(|| "S3".into()))?;
    let r: usize = args.next().unwrap_or_else(|| "3".into()).parse()?;
    let report = compare_hurwitz_grothendieck(&g, r)?;
    println!("{} r={r}", g.label());
    println!("  objects             {:>8}  bijection {}", report.objects, report.object_bijection);
    println!("  generators checked  {:>8}  match {}", report.generators_checked, report.generator_correspondence);
    println!("  composable pairs    {:>8}  match {}", report.pairs_checked, report.composition_law);
    for f in report.failures.iter().take(5) {
        println!("  failure: {f}");
    }
    println!("equivalent: {}", report.matches());
    Ok(())
}
