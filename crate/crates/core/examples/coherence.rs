//! Checks coherence of finite braided crossed data with scalars in Z/m,
//! loads data from JSON and solves for all coherent scalar assignments.
//!
//! ```bash
//! cargo run --release --example coherence -- data/c2_z2.json
//! ```

use little_bundles::algebra::{builtin_group_example, check_coherence, solve_coherence, CrossedAlgebra, CrossedAlgebraData};

fn summary(alg: &CrossedAlgebra) -> Result<bool, Box<dyn std::error::Error>> {
    let mut all = true;
    for r in check_coherence(alg)? {
        all &= r.passed();
        println!("  {:<15} {:>6} checked {:>5} failures", r.relation, r.assignments_checked, r.failures.len());
    }
    Ok(all)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alg = match std::env::args().nth(1) {
        Some(path) => CrossedAlgebra::new(CrossedAlgebraData::from_json(&std::fs::read_to_string(path)?)?)?,
        None => builtin_group_example("C2", 2)?,
    };
    println!("{} objects, {} scalar variables", alg.objects(), alg.variable_count());
    println!("coherent: {}", summary(&alg)?);

    let mut data = alg.data.clone();
    data.scalars.braiding[1] = (data.scalars.braiding[1] + 1) % data.modulus;
    println!("\nwith one braiding entry shifted");
    println!("coherent: {}", summary(&CrossedAlgebra::new(data)?)?);

    match solve_coherence(&alg, 10_000_000) {
        Ok(solutions) => println!("\n{} coherent scalar assignments on this shape", solutions.len()),
        Err(e) => println!("\nsolver: {e}"),
    }
    Ok(())
}
