//! Braid words, Garside normal forms, the word problem and cabling.
//!
//! ```bash
//! cargo run --example braids
//! ```

use little_bundles::BraidWord;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let braid_rel_lhs = BraidWord::new(3, vec![1, 2, 1])?;
    let braid_rel_rhs = BraidWord::new(3, vec![2, 1, 2])?;
    println!("{braid_rel_lhs} ~ {braid_rel_rhs}: {}", braid_rel_lhs.equivalent(&braid_rel_rhs));
    println!("garside form of {braid_rel_lhs}: {}", braid_rel_lhs.garside());

    let w = BraidWord::new(4, vec![1, -2, 3, 2, -1, 2, 2, -3])?;
    let nf = w.normal_form();
    println!("\n{w}\n  garside {}\n  normal form {nf}\n  permutation {}", w.garside(), w.underlying_permutation());
    println!("  w * w^-1 trivial: {}", w.concat(&w.inverse())?.equivalent(&BraidWord::identity(4)));

    let commuting = BraidWord::new(4, vec![1, 3])?;
    let swapped = BraidWord::new(4, vec![3, 1])?;
    let not_commuting = BraidWord::new(4, vec![2, 1])?;
    println!("\ns1 s3 ~ s3 s1: {}", commuting.equivalent(&swapped));
    println!("s1 s2 ~ s2 s1: {}", BraidWord::new(4, vec![1, 2])?.equivalent(&not_commuting));

    let outer = BraidWord::new(2, vec![1])?;
    let inner = BraidWord::new(2, vec![1])?;
    let cabled = outer.cable_compose(1, &inner)?;
    println!("\ncabling s1 into strand 1 of s1: {cabled} ({} strands, permutation {})", cabled.strands(), cabled.underlying_permutation());
    println!("pure: {}", cabled.is_pure());
    Ok(())
}
