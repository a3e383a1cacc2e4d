//! Acceptance run: one line per criterion with its verdict, time and
//! details. Exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use common::*;
use little_bundles::algebra::{builtin_group_example, check_coherence, coherence_equations, solve_coherence};
use little_bundles::hurwitz::grothendieck::compare_hurwitz_grothendieck;
use little_bundles::hurwitz::{
    braid_act, braid_act_labeled, component_objects, component_orbits, hurwitz_space_objects, ColorSignature,
    DecoratedTuple,
};
use little_bundles::operad::{check_operad_axioms, Bounds, Pi0Operad};
use little_bundles::trees::{check_all_relations, compose_normal, compose_normal_by_graft, normalize, NormalForm};
use little_bundles::{make_group, BraidWord, Elem, FiniteGroup, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn colorings(g: &FiniteGroup, r: usize) -> Vec<Vec<Elem>> {
    (0..g.order().pow(r as u32))
        .map(|c| (0..r).map(|i| Elem((c / g.order().pow((r - 1 - i) as u32) % g.order()) as u16)).collect())
        .collect()
}

fn c1_action_laws() -> Verdict {
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for spec in ["C2", "C3", "S3", "D4"] {
        let g = make_group(spec).unwrap();
        for r in 2..=4 {
            let w = |l: &[i32]| BraidWord::new(r, l.to_vec()).unwrap();
            let mut pairs = Vec::new();
            for i in 1..r as i32 {
                pairs.push((w(&[i, -i]), w(&[])));
                pairs.push((w(&[-i, i]), w(&[])));
                if i + 1 < r as i32 {
                    pairs.push((w(&[i, i + 1, i]), w(&[i + 1, i, i + 1])));
                }
                for j in i + 2..r as i32 {
                    pairs.push((w(&[i, j]), w(&[j, i])));
                }
            }
            for x in hurwitz_space_objects(&g, r) {
                for (a, b) in &pairs {
                    checked += 1;
                    if braid_act(&g, a, &x).unwrap() != braid_act(&g, b, &x).unwrap() {
                        failures.push(format!("{spec} {x}: [{a}] vs [{b}]"));
                    }
                }
            }
        }
    }
    let ok = failures.is_empty();
    verdict(ok, format!("{checked} equalities on Σ_r × G^r, r ≤ 4, {} failures", failures.len()))
}

fn c2_color_closure() -> Verdict {
    let groups = ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "S3", "D4", "C2xC2", "C2xC4", "C2xC2xC2"];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = 0;
    let mut objects = 0;
    for _ in 0..200 {
        let g = make_group(groups[rng.gen_range(0..groups.len())]).unwrap();
        let r = rng.gen_range(1..=3);
        let inputs: Vec<Elem> = (0..r).map(|_| Elem(rng.gen_range(0..g.order()) as u16)).collect();
        let output = Elem(rng.gen_range(0..g.order()) as u16);
        let sig = ColorSignature::new(inputs.clone(), output);
        let members = component_objects(&g, &sig);
        let set: BTreeSet<&DecoratedTuple> = members.iter().collect();
        objects += members.len();
        for x in &members {
            for j in 1..r {
                for l in [j as i32, -(j as i32)] {
                    let y = braid_act_labeled(&g, &BraidWord::generator(r, j, l > 0), x, &inputs).unwrap();
                    if !set.contains(&y) {
                        failures += 1;
                    }
                }
            }
        }
    }
    verdict(failures == 0, format!("200 signatures, {objects} objects, {failures} escapes"))
}

/// `(σ, b, h)` packed into one word: output in the low byte, then
/// 4 bits per image and per label.
fn key(sigma: &Permutation, b: &[Elem], h: Elem) -> u64 {
    sigma
        .images()
        .zip(b)
        .fold(0u64, |acc, (s, e)| acc << 8 | (s as u64) << 4 | e.index() as u64)
        << 8
        | h.index() as u64
}

fn c3_normal_form_bijection() -> Verdict {
    let mut trees = 0u64;
    let mut compared = 0;
    let mut mismatches = Vec::new();
    // (group, leaves incl. units, labels, colorings: None = all)
    type Plan = (&'static str, usize, usize, Labels, Option<Vec<u16>>);
    let mut plans: Vec<Plan> = Vec::new();
    for n in 1..=5 {
        for units in 0..=n {
            let labels = if n <= 4 { Labels::Everywhere } else { Labels::Leaves };
            plans.push(("C2", n, units, labels, None));
        }
    }
    for n in 1..=3 {
        for units in 0..=n {
            let labels = if n <= 2 { Labels::Everywhere } else { Labels::Leaves };
            plans.push(("S3", n, units, labels, None));
        }
    }
    plans.push(("S3", 4, 0, Labels::Leaves, Some(vec![1, 3, 5, 4])));
    plans.push(("S3", 4, 0, Labels::Leaves, Some(vec![3, 3, 3, 3])));
    plans.push(("S3", 5, 0, Labels::Leaves, Some(vec![1, 1, 3, 2, 4])));

    // outputs collected per (group, inputs)
    let mut seen: BTreeMap<(&str, Vec<u16>), HashSet<u64>> = BTreeMap::new();
    for (spec, n, units, labels, fixed) in &plans {
        let g = make_group(spec).unwrap();
        let r = n - units;
        let all: Vec<Vec<u16>> = match fixed {
            Some(c) => vec![c.clone()],
            None => colorings(&g, r).into_iter().map(|c| c.iter().map(|e| e.0).collect()).collect(),
        };
        let perms = lex_permutations(r);
        let shapes = shapes(*n);
        for colors in &all {
            let entry = seen.entry((spec, colors.clone())).or_default();
            for perm in &perms {
                let slots: Vec<usize> = perm.iter().map(|s| s + 1).collect();
                for atoms in atom_sequences(&slots, *units) {
                    for shape in &shapes {
                        for_each_labeled_tree(shape, &atoms, colors, g.order(), *labels, &mut |t| {
                            trees += 1;
                            let nf = normalize(&g, &t).unwrap();
                            entry.insert(key(&nf.sigma, &nf.b, nf.signature.output));
                        });
                    }
                }
            }
        }
    }
    for ((spec, colors), outputs) in &seen {
        let g = make_group(spec).unwrap();
        for h in g.elements() {
            let sig = ColorSignature::new(colors.iter().map(|&c| Elem(c)).collect(), h);
            let expected: HashSet<u64> =
                component_objects(&g, &sig).iter().map(|x| key(&x.sigma, &x.b, h)).collect();
            let got: HashSet<u64> = outputs.iter().copied().filter(|k| k & 0xff == h.index() as u64).collect();
            compared += 1;
            if got != expected {
                mismatches.push(format!("{spec} {sig}: {} vs {}", got.len(), expected.len()));
            }
        }
    }
    let detail = format!(
        "{trees} trees (C2 all colorings ≤ 5 leaves; S3 all colorings ≤ 3 leaves, 3 signatures at 4–5 leaves), {compared} signatures, {} mismatches",
        mismatches.len()
    );
    verdict(mismatches.is_empty(), detail)
}

fn c4_counting_identity() -> Verdict {
    let mut checked = 0;
    let mut failures = Vec::new();
    for spec in ["C1", "C2", "C3", "C4", "C5", "C6", "S3", "C2xC2"] {
        let g = make_group(spec).unwrap();
        for r in 0..=3 {
            let expected: usize = (1..=r).product::<usize>() * g.order().pow(r as u32);
            for inputs in colorings(&g, r) {
                let total: usize = g
                    .elements()
                    .map(|h| component_objects(&g, &ColorSignature::new(inputs.clone(), h)).len())
                    .sum();
                checked += 1;
                if total != expected {
                    failures.push(format!("{spec} {inputs:?}"));
                }
            }
        }
    }
    verdict(failures.is_empty(), format!("{checked} color vectors, {} failures", failures.len()))
}

fn c5_relations() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for spec in ["C2", "C3", "S3"] {
        let g = make_group(spec).unwrap();
        let reports = check_all_relations(&g, false).unwrap();
        let instances: usize = reports.iter().map(|r| r.assignments_checked).sum();
        let failed: usize = reports.iter().map(|r| r.failures.len()).sum();
        ok &= failed == 0;
        parts.push(format!("{spec}: {instances} instances, {failed} failures"));
    }
    let g = make_group("S3").unwrap();
    let mutant = check_all_relations(&g, true).unwrap();
    let broken: Vec<&str> = mutant.iter().filter(|r| !r.passed()).map(|r| r.relation.as_str()).collect();
    ok &= !broken.is_empty();
    parts.push(format!("flipped braiding breaks {}", broken.join(", ")));
    verdict(ok, parts.join("; "))
}

fn normal_forms(g: &FiniteGroup, r: usize) -> Vec<NormalForm> {
    let mut out = Vec::new();
    for inputs in colorings(g, r) {
        for h in g.elements() {
            let sig = ColorSignature::new(inputs.clone(), h);
            for x in component_objects(g, &sig) {
                out.push(NormalForm {
                    sigma: x.sigma,
                    b: x.b,
                    signature: sig.clone(),
                });
            }
        }
    }
    out
}

fn c6_operad() -> Verdict {
    let g = make_group("S3").unwrap();
    let bounds = Bounds {
        max_arity: 3,
        max_order: 6,
        cap: 1_000_000_000,
    };
    let reports = check_operad_axioms(&Pi0Operad::new(&g, false), &bounds).unwrap();
    let instances: u64 = reports.iter().map(|r| r.instances).sum();
    let failed: u64 = reports.iter().map(|r| r.failure_count).sum();

    let by_arity: Vec<Vec<NormalForm>> = (0..=3).map(|r| normal_forms(&g, r)).collect();
    let mut pairs = 0u64;
    let mut differ = 0u64;
    for a in 1..=3 {
        for s in 0..=(4 - a) {
            for outer in &by_arity[a] {
                for j in 1..=a {
                    let want = outer.signature.inputs[j - 1];
                    for inner in by_arity[s].iter().filter(|x| x.signature.output == want) {
                        pairs += 1;
                        let fast = compose_normal(&g, outer, j, inner).unwrap();
                        if fast != compose_normal_by_graft(&g, outer, j, inner).unwrap() {
                            differ += 1;
                        }
                    }
                }
            }
        }
    }
    let ok = failed == 0 && differ == 0;
    verdict(
        ok,
        format!("{instances} axiom instances, {failed} failures; fast vs graft on {pairs} pairs, {differ} differ"),
    )
}

fn c7_grothendieck() -> Verdict {
    let g = make_group("S3").unwrap();
    let mut parts = Vec::new();
    let mut ok = true;
    for r in 1..=3 {
        let report = compare_hurwitz_grothendieck(&g, r).unwrap();
        ok &= report.matches();
        parts.push(format!(
            "r={r}: {} objects, {} generators, {} pairs {}",
            report.objects,
            report.generators_checked,
            report.pairs_checked,
            if report.matches() { "match" } else { "MISMATCH" }
        ));
    }
    verdict(ok, parts.join("; "))
}

fn sorted_sizes(g: &FiniteGroup, sig: &ColorSignature) -> Vec<usize> {
    let mut s = component_orbits(g, sig, false).sizes();
    s.sort_unstable();
    s
}

fn c8_pi0() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();

    let trivial = make_group("C1").unwrap();
    let trivial_ok = (0..=6).all(|r| {
        let sig = ColorSignature::new(vec![Elem(0); r], Elem(0));
        component_orbits(&trivial, &sig, false).count() == 1
    });
    ok &= trivial_ok;
    parts.push(format!("trivial group r ≤ 6: {}", if trivial_ok { "1 component" } else { "WRONG" }));

    let mut abelian = 0;
    let mut generic = 0;
    for n in [2usize, 3] {
        let g = make_group(&format!("C{n}")).unwrap();
        let t = Table::cyclic(n);
        for r in 2..=3 {
            for inputs in colorings(&g, r) {
                let raw: Vec<usize> = inputs.iter().map(|e| e.index()).collect();
                let h = raw.iter().sum::<usize>() % n;
                let sig = ColorSignature::new(inputs.clone(), Elem(h as u16));
                let main = sorted_sizes(&g, &sig);
                let oracle = naive_component_orbits(&t, &raw, h);
                let predicted = abelian_prediction(n, &raw);
                ok &= main == oracle && oracle.len() == predicted;
                abelian += 1;
                if r == 2 && raw.iter().any(|&x| x != 0) {
                    ok &= predicted == n;
                    generic += 1;
                }
            }
        }
    }
    parts.push(format!(
        "C2, C3 r = 2, 3: {abelian} signatures match |G|^r/|L| in both BFS; |G|^(r-1) on the {generic} r = 2 signatures with a nontrivial color"
    ));

    let g = make_group("S3").unwrap();
    let t = Table::symmetric(3);
    let golden: [(&[u16], u16, usize); 8] = [
        (&[1, 1], 0, 6),
        (&[1, 1], 3, 2),
        (&[3, 3], 4, 3),
        (&[3, 4], 3, 3),
        (&[1, 1, 1], 5, 4),
        (&[3, 3, 3], 0, 2),
        (&[1, 3, 5], 4, 2),
        (&[0, 1, 3], 2, 2),
    ];
    let mut s3_ok = true;
    for (inputs, h, expected) in golden {
        let sig = ColorSignature::new(inputs.iter().map(|&x| Elem(x)).collect(), Elem(h));
        let raw: Vec<usize> = inputs.iter().map(|&x| x as usize).collect();
        let oracle = naive_component_orbits(&t, &raw, h as usize);
        s3_ok &= sorted_sizes(&g, &sig) == oracle && oracle.len() == expected;
    }
    let space: Vec<usize> = (1..=3).map(|r| naive_hurwitz_space_orbits(&t, r).len()).collect();
    s3_ok &= space == [3, 11, 40];
    ok &= s3_ok;
    parts.push(format!("S3: 8 component goldens and space π₀ {space:?} {}", if s3_ok { "agree" } else { "DISAGREE" }));
    verdict(ok, parts.join("; "))
}

fn c9_coherence() -> Verdict {
    let groups = ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "S3", "D4", "C2xC2", "C2xC4", "C2xC2xC2"];
    let mut ok = true;
    for spec in groups {
        let alg = builtin_group_example(spec, 2).unwrap();
        ok &= check_coherence(&alg).unwrap().iter().all(|r| r.passed());
    }
    let shape = builtin_group_example("C2", 2).unwrap();
    let solutions = solve_coherence(&shape, 1_000_000).unwrap();
    let oracle = count_solutions_mod_p(shape.variable_count(), &coherence_equations(&shape).unwrap(), 2);
    let reverified = solutions
        .iter()
        .all(|s| check_coherence(s).unwrap().iter().all(|r| r.passed()));
    ok &= solutions.len() == 256 && oracle == 256 && reverified;
    verdict(
        ok,
        format!(
            "builtin example passes for {} groups of order ≤ 8; C2/Z2 solutions {} (elimination {oracle}), all re-verified: {reverified}",
            groups.len(),
            solutions.len()
        ),
    )
}

fn main() {
    type Criterion = (&'static str, u64, fn() -> Verdict);
    let criteria: [Criterion; 9] = [
        ("Hurwitz action laws", 10, c1_action_laws),
        ("color-condition closure", 5, c2_color_closure),
        ("normal-form bijection", 30, c3_normal_form_bijection),
        ("counting identity", 5, c4_counting_identity),
        ("relation suite", 60, c5_relations),
        ("operad axioms", 60, c6_operad),
        ("Grothendieck comparison", 10, c7_grothendieck),
        ("π₀ golden values", 30, c8_pi0),
        ("coherence checker", 120, c9_coherence),
    ];
    let mut all = true;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let pass = v.ok && in_time;
        all &= pass;
        println!(
            "criterion {}: {} {name} ({:.2}s, limit {limit}s): {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            v.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
