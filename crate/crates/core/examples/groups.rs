//! Builds groups from specs, prints their tables and conjugacy classes.
//!
//! ```bash
//! cargo run --example groups -- S3 D4 C2xC3
//! ```

use little_bundles::make_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = vec!["S3".into(), "C2xC2".into()];
    }
    for spec in specs {
        let g = make_group(&spec)?;
        println!("{} order {} abelian {}", g.label(), g.order(), g.is_abelian());
        print!("{}", g.to_table_string());
        for class in g.conjugacy_classes() {
            let names: Vec<&str> = class.iter().map(|&a| g.name(a)).collect();
            let rep = class[0];
            println!("  class {{{}}} centralizer order {}", names.join(", "), g.centralizer(rep).len());
        }
        println!();
    }
    Ok(())
}
