//! Orbit counts of braid groupoid components and of the full Hurwitz space.
//!
//! ```bash
//! cargo run --release --example hurwitz_orbits -- S3 3
//! ```

use little_bundles::hurwitz::{component_orbits, hurwitz_space_orbits, ColorSignature};
use little_bundles::{make_group, Elem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let g = make_group(&args.next().unwrap_or_else(|| "S3".into()))?;
    let r: usize = args.next().unwrap_or_else(|| "3".into()).parse()?;

    let space = hurwitz_space_orbits(&g, r, true);
    println!("{} r={r}: {} objects in {} orbits", g.label(), space.total(), space.count());
    println!("orbit sizes {:?}", space.sizes());

    // components with every input colored by the same element
    println!("\nconstant input colors");
    for c in g.elements() {
        let inputs = vec![c; r];
        let mut out = Elem::IDENTITY;
        for &x in &inputs {
            out = g.mul(out, x);
        }
        let sig = ColorSignature::new(inputs, out);
        let orbits = component_orbits(&g, &sig, true);
        println!("  {sig}: {} objects, {} orbits, first representatives:", orbits.total(), orbits.count());
        for rep in orbits.representatives().into_iter().take(3) {
            println!("    {rep}");
        }
    }
    Ok(())
}
