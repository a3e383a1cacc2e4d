//! Object-level rewriting of trees toward the standard shape.
//!
//! Each rule is an instance of a generator (or its inverse) oriented so
//! that labels move down to the leaves, stacked labels merge, trivial
//! labels and units disappear and tensors become left combs. Any order of
//! application ends in the same normal form.

use super::{GTree, TreeError};
use crate::groups::{Elem, FiniteGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `A(BC) → (AB)C`
    Reassociate,
    /// `h.(A⊗B) → h.A ⊗ h.B`
    Distribute,
    /// `h₂.(h₁.A) → (h₂h₁).A`
    Merge,
    /// `e.A → A`
    DropIdentity,
    /// `h.U → U`
    AbsorbLabel,
    /// `U⊗A → A`
    LeftUnit,
    /// `A⊗U → A`
    RightUnit,
}

fn matches(rule: Rule, t: &GTree) -> bool {
    use GTree::*;
    match (rule, t) {
        (Rule::Reassociate, Tensor(_, b)) => matches!(**b, Tensor(..)),
        (Rule::Distribute, Label { child, .. }) => matches!(**child, Tensor(..)),
        (Rule::Merge, Label { child, .. }) => matches!(**child, Label { .. }),
        (Rule::DropIdentity, Label { h, .. }) => *h == Elem::IDENTITY,
        (Rule::AbsorbLabel, Label { child, .. }) => **child == Unit,
        (Rule::LeftUnit, Tensor(a, _)) => **a == Unit,
        (Rule::RightUnit, Tensor(_, b)) => **b == Unit,
        _ => false,
    }
}

const RULES: [Rule; 7] = [
    Rule::Reassociate,
    Rule::Distribute,
    Rule::Merge,
    Rule::DropIdentity,
    Rule::AbsorbLabel,
    Rule::LeftUnit,
    Rule::RightUnit,
];

/// Every applicable `(rule, address)`, in preorder.
pub fn redexes(t: &GTree) -> Vec<(Rule, Vec<usize>)> {
    let mut out = Vec::new();
    collect(t, &mut Vec::new(), &mut out);
    out
}

fn collect(t: &GTree, path: &mut Vec<usize>, out: &mut Vec<(Rule, Vec<usize>)>) {
    for rule in RULES {
        if matches(rule, t) {
            out.push((rule, path.clone()));
        }
    }
    let children: Vec<&GTree> = match t {
        GTree::Label { child, .. } => vec![child],
        GTree::Tensor(a, b) => vec![a, b],
        _ => vec![],
    };
    for (i, c) in children.into_iter().enumerate() {
        path.push(i);
        collect(c, path, out);
        path.pop();
    }
}

pub fn apply_rule(g: &FiniteGroup, t: &GTree, rule: Rule, address: &[usize]) -> Result<GTree, TreeError> {
    t.replace_at(address, &mut |s: &GTree| {
        use GTree::*;
        if !matches(rule, s) {
            return Err(TreeError::NotApplicable {
                generator: format!("{rule:?}"),
                address: address.to_vec(),
                reason: "rule does not match".into(),
            });
        }
        Ok(match (rule, s) {
            (Rule::Reassociate, Tensor(a, bc)) => {
                let Tensor(b, c) = &**bc else { unreachable!() };
                GTree::tensor(GTree::tensor((**a).clone(), (**b).clone()), (**c).clone())
            }
            (Rule::Distribute, Label { h, child }) => {
                let Tensor(a, b) = &**child else { unreachable!() };
                GTree::tensor(GTree::label(*h, (**a).clone()), GTree::label(*h, (**b).clone()))
            }
            (Rule::Merge, Label { h: h2, child }) => {
                let Label { h: h1, child: a } = &**child else { unreachable!() };
                GTree::label(g.mul(*h2, *h1), (**a).clone())
            }
            (Rule::DropIdentity, Label { child, .. }) => (**child).clone(),
            (Rule::AbsorbLabel, _) => Unit,
            (Rule::LeftUnit, Tensor(_, a)) => (**a).clone(),
            (Rule::RightUnit, Tensor(a, _)) => (**a).clone(),
            _ => unreachable!("matched above"),
        })
    })
}

/// Rewrites to a fixpoint. `choose(n)` picks which of the `n` current
/// redexes to fire. Returns the final tree and the number of steps.
pub fn rewrite_to_fixpoint(
    g: &FiniteGroup,
    t: &GTree,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<(GTree, usize), TreeError> {
    let mut current = t.clone();
    let mut steps = 0;
    loop {
        let options = redexes(&current);
        if options.is_empty() {
            return Ok((current, steps));
        }
        let (rule, address) = &options[choose(options.len()) % options.len()];
        current = apply_rule(g, &current, *rule, address)?;
        steps += 1;
    }
}

/// True for `U` and for left combs of leaves, each under at most one
/// non-identity label.
pub fn is_standard(t: &GTree) -> bool {
    fn labeled_leaf(t: &GTree) -> bool {
        match t {
            GTree::Leaf { .. } => true,
            GTree::Label { h, child } => *h != Elem::IDENTITY && matches!(**child, GTree::Leaf { .. }),
            _ => false,
        }
    }
    fn comb(t: &GTree) -> bool {
        match t {
            GTree::Tensor(a, b) => labeled_leaf(b) && comb(a),
            other => labeled_leaf(other),
        }
    }
    *t == GTree::Unit || comb(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{denormalize, normalize};

    #[test]
    fn fixpoint_is_standard_and_agrees_with_normalize() {
        let g = FiniteGroup::symmetric(3);
        let tree = GTree::parse("L[1](T(T(U, L[3](leaf:2:4)), L[0](T(leaf:1:1, L[2](U)))))").unwrap();
        for seed in 0..20usize {
            let mut k = seed;
            let mut choose = |n: usize| {
                k = k.wrapping_mul(2_654_435_761).wrapping_add(12_345);
                k % n
            };
            let (fixed, _) = rewrite_to_fixpoint(&g, &tree, &mut choose).unwrap();
            assert!(is_standard(&fixed), "{fixed}");
            let nf = normalize(&g, &tree).unwrap();
            assert_eq!(fixed, denormalize(&nf));
        }
    }

    #[test]
    fn no_redex_in_standard_shape() {
        let t = GTree::parse("T(T(leaf:3:0, L[2](leaf:1:1)), leaf:2:0)").unwrap();
        assert!(redexes(&t).is_empty());
        assert!(is_standard(&t));
        assert!(is_standard(&GTree::Unit));
    }
}
