//! Normal forms of trees, the standard tree, rewriting and grafting.
//!
//! ```bash
//! cargo run --example normal_forms -- 'L[2](T(leaf:2:1, L[3](leaf:1:2)))'
//! ```

use little_bundles::make_group;
use little_bundles::trees::rewrite::rewrite_to_fixpoint;
use little_bundles::trees::{compose_normal, denormalize, graft, normalize, GTree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_group("S3")?;
    let text = std::env::args().nth(1).unwrap_or_else(|| "L[2](T(leaf:2:1, L[3](T(U, leaf:1:2))))".into());
    let t = GTree::parse(&text)?;
    let nf = normalize(&g, &t)?;
    println!("tree        {t}");
    println!("normal form {nf}");
    println!("standard    {}", denormalize(&nf));

    let (fixpoint, steps) = rewrite_to_fixpoint(&g, &t, &mut |_| 0)?;
    println!("rewrote in {steps} steps to {fixpoint}");
    let (other, _) = rewrite_to_fixpoint(&g, &t, &mut |n| n - 1)?;
    println!("other strategy reaches the same tree: {}", other == fixpoint);

    let inner = GTree::parse("T(L[1](leaf:1:0), leaf:2:2)")?;
    let grafted = graft(&g, &t, 1, &inner)?;
    let composed = compose_normal(&g, &nf, 1, &normalize(&g, &inner)?)?;
    println!("\ngraft into slot 1: {grafted}");
    println!("normal form       {}", normalize(&g, &grafted)?);
    println!("fast composition  {composed}");
    Ok(())
}
