//! Hurwitz actions on tuples of group elements and the groupoids built
//! from them.
//!
//! A [`DecoratedTuple`] `(σ, b)` stores `σ` in one-line notation as the list
//! of input slots read left to right ("position → slot"), and `b` indexed by
//! slot. The positional view of `b` is `(b_{σ(1)}, …, b_{σ(r)})`; braid
//! generators act on adjacent positions, so on `σ` a braid acts by right
//! multiplication `σ ↦ σ ∘ π(w)`.
//!
//! Two actions are provided:
//!
//! * [`braid_act`] treats `b` as holonomies and applies the Hurwitz formula
//!   `(…, x, y, …) ↦ (…, x y x⁻¹, x, …)` to the positional view.
//! * [`braid_act_labeled`] treats `b` as edge labels above inputs colored by
//!   a signature. The braiding of adjacent legs multiplies the label of the
//!   leg moving left by the effective color `y = b g b⁻¹` of the leg it
//!   passes. Effective colors then transform by the Hurwitz formula, so the
//!   ordered product [`color_condition`] is invariant.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braids::BraidWord;
use crate::groups::{Elem, FiniteGroup};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("generator index {j} outside 1..{r}")]
    IndexOutOfRange { j: usize, r: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("element {0} is not in the group")]
    ForeignElement(Elem),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("diagram is not functorial: {0}")]
    Functoriality(String),
    #[error("ambient set of {size} objects exceeds the cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DecoratedTuple {
    pub sigma: Permutation,
    pub b: Vec<Elem>,
}

impl DecoratedTuple {
    pub fn new(sigma: Permutation, b: Vec<Elem>) -> Result<Self, HurwitzError> {
        if sigma.size() != b.len() {
            return Err(HurwitzError::SizeMismatch {
                expected: sigma.size(),
                found: b.len(),
            });
        }
        Ok(Self { sigma, b })
    }

    pub fn arity(&self) -> usize {
        self.b.len()
    }

    /// `(b_{σ(1)}, …, b_{σ(r)})`
    pub fn positional(&self) -> Vec<Elem> {
        self.sigma.images().map(|s| self.b[s]).collect()
    }

    fn from_positional(sigma: Permutation, positional: &[Elem]) -> Self {
        let mut b = vec![Elem::IDENTITY; positional.len()];
        for (k, s) in sigma.images().enumerate() {
            b[s] = positional[k];
        }
        Self { sigma, b }
    }

    fn check_group(&self, g: &FiniteGroup) -> Result<(), HurwitzError> {
        match self.b.iter().find(|&&x| !g.contains(x)) {
            Some(&x) => Err(HurwitzError::ForeignElement(x)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for DecoratedTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(ToString::to_string).collect();
        write!(f, "sigma={}; b=[{}]", self.sigma, b.join(","))
    }
}

impl FromStr for DecoratedTuple {
    type Err = HurwitzError;

    /// `sigma=[2,1]; b=[3,0]`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| HurwitzError::Parse {
            input: s.to_string(),
            reason,
        };
        let mut sigma = None;
        let mut b = None;
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value in `{part}`")))?;
            match key.trim() {
                "sigma" => {
                    sigma = Some(
                        value
                            .parse::<Permutation>()
                            .map_err(|e| err(e.to_string()))?,
                    )
                }
                "b" => b = Some(parse_elements(value).map_err(err)?),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let sigma = sigma.ok_or_else(|| err("missing sigma".into()))?;
        let b = b.ok_or_else(|| err("missing b".into()))?;
        DecoratedTuple::new(sigma, b)
    }
}

pub(crate) fn parse_elements(text: &str) -> Result<Vec<Elem>, String> {
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u16>()
                .map(Elem)
                .map_err(|e| format!("element `{t}`: {e}"))
        })
        .collect()
}

/// Input colors `g₁…g_r` and output color `h` of an operation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColorSignature {
    pub inputs: Vec<Elem>,
    pub output: Elem,
}

impl ColorSignature {
    pub fn new(inputs: Vec<Elem>, output: Elem) -> Self {
        Self { inputs, output }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

impl fmt::Display for ColorSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.inputs.iter().map(ToString::to_string).collect();
        write!(f, "g=[{}];h={}", g.join(","), self.output)
    }
}

impl FromStr for ColorSignature {
    type Err = HurwitzError;

    /// `g=[1,1];h=0`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| HurwitzError::Parse {
            input: s.to_string(),
            reason,
        };
        let mut inputs = None;
        let mut output = None;
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value in `{part}`")))?;
            match key.trim() {
                "g" => inputs = Some(parse_elements(value).map_err(err)?),
                "h" => {
                    output = Some(Elem(
                        value
                            .trim()
                            .parse()
                            .map_err(|e| err(format!("output color: {e}")))?,
                    ))
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        Ok(ColorSignature {
            inputs: inputs.ok_or_else(|| err("missing g".into()))?,
            output: output.ok_or_else(|| err("missing h".into()))?,
        })
    }
}

/// Hurwitz move at positions `j, j+1` (1-based) of a positional tuple.
pub fn hurwitz_generator(g: &FiniteGroup, j: usize, tuple: &[Elem]) -> Result<Vec<Elem>, HurwitzError> {
    let r = tuple.len();
    if j == 0 || j >= r {
        return Err(HurwitzError::IndexOutOfRange { j, r });
    }
    let mut out = tuple.to_vec();
    let (x, y) = (tuple[j - 1], tuple[j]);
    out[j - 1] = g.conj(x, y);
    out[j] = x;
    Ok(out)
}

/// Inverse Hurwitz move: `(…, x, y, …) ↦ (…, y, y⁻¹ x y, …)`.
pub fn hurwitz_inverse(g: &FiniteGroup, j: usize, tuple: &[Elem]) -> Result<Vec<Elem>, HurwitzError> {
    let r = tuple.len();
    if j == 0 || j >= r {
        return Err(HurwitzError::IndexOutOfRange { j, r });
    }
    let mut out = tuple.to_vec();
    let (x, y) = (tuple[j - 1], tuple[j]);
    out[j - 1] = y;
    out[j] = g.conj(g.inv(y), x);
    Ok(out)
}

fn check_strands(w: &BraidWord, x: &DecoratedTuple) -> Result<(), HurwitzError> {
    let r = x.arity();
    // a braid always has at least one strand; arity 0 only meets the 1-strand identity
    if w.strands() != r && !(r == 0 && w.is_empty()) {
        return Err(HurwitzError::SizeMismatch {
            expected: r,
            found: w.strands(),
        });
    }
    Ok(())
}

/// Holonomy action: `σ ↦ σ ∘ π(w)` and the Hurwitz formula letter by letter
/// on the positional tuple.
pub fn braid_act(g: &FiniteGroup, w: &BraidWord, x: &DecoratedTuple) -> Result<DecoratedTuple, HurwitzError> {
    check_strands(w, x)?;
    x.check_group(g)?;
    let r = x.arity();
    let mut pos = x.positional();
    let mut slots: Vec<usize> = x.sigma.images().collect();
    for &l in w.letters() {
        let j = l.unsigned_abs() as usize;
        pos = if l > 0 {
            hurwitz_generator(g, j, &pos)?
        } else {
            hurwitz_inverse(g, j, &pos)?
        };
        slots.swap(j - 1, j);
    }
    debug_assert_eq!(slots.len(), r);
    let sigma = Permutation::from_images(slots).expect("swaps preserve bijectivity");
    Ok(DecoratedTuple::from_positional(sigma, &pos))
}

/// Label action on `(σ, b)` for inputs colored `inputs` (indexed by slot).
pub fn braid_act_labeled(
    g: &FiniteGroup,
    w: &BraidWord,
    x: &DecoratedTuple,
    inputs: &[Elem],
) -> Result<DecoratedTuple, HurwitzError> {
    check_strands(w, x)?;
    x.check_group(g)?;
    if inputs.len() != x.arity() {
        return Err(HurwitzError::SizeMismatch {
            expected: x.arity(),
            found: inputs.len(),
        });
    }
    let mut labels = x.positional();
    let mut slots: Vec<usize> = x.sigma.images().collect();
    let effective = |labels: &[Elem], slots: &[usize], k: usize| g.conj(labels[k], inputs[slots[k]]);
    for &l in w.letters() {
        let j = l.unsigned_abs() as usize;
        let (a, b) = (j - 1, j);
        if l > 0 {
            // the leg at b moves left past the leg at a
            let y = effective(&labels, &slots, a);
            let moved = g.mul(y, labels[b]);
            labels[b] = labels[a];
            labels[a] = moved;
        } else {
            // the leg at a moves right; undo the label it received
            let back = labels[b];
            let y = g.conj(back, inputs[slots[b]]);
            let restored = g.mul(g.inv(y), labels[a]);
            labels[a] = back;
            labels[b] = restored;
        }
        slots.swap(a, b);
    }
    let sigma = Permutation::from_images(slots).expect("swaps preserve bijectivity");
    Ok(DecoratedTuple::from_positional(sigma, &labels))
}

/// Entrywise conjugation `b ↦ h b h⁻¹`; `σ` is unchanged.
pub fn conjugate_act(g: &FiniteGroup, h: Elem, x: &DecoratedTuple) -> Result<DecoratedTuple, HurwitzError> {
    x.check_group(g)?;
    if !g.contains(h) {
        return Err(HurwitzError::ForeignElement(h));
    }
    Ok(DecoratedTuple {
        sigma: x.sigma.clone(),
        b: x.b.iter().map(|&a| g.conj(h, a)).collect(),
    })
}

/// Boundary holonomies of a Hurwitz-space object: inputs are `b`, the
/// output is the ordered product `b_{σ(1)} ⋯ b_{σ(r)}`.
pub fn boundary_colors(g: &FiniteGroup, x: &DecoratedTuple) -> ColorSignature {
    ColorSignature {
        inputs: x.b.clone(),
        output: g.product(x.positional()),
    }
}

/// The output color forced by `(σ, b)` on inputs `g⃗`:
/// `∏_k b_{σ(k)} g_{σ(k)} b_{σ(k)}⁻¹`, the product taken left to right over
/// positions.
///
/// This is the only placement of indices and inverses (among products of
/// conjugates indexed through `id`, `σ` or `σ⁻¹`, in either order) that is
/// preserved by [`braid_act_labeled`]; the `color_condition_is_pinned` test
/// reruns that search.
pub fn color_condition(g: &FiniteGroup, sigma: &Permutation, b: &[Elem], inputs: &[Elem]) -> Elem {
    g.product(sigma.images().map(|s| g.conj(b[s], inputs[s])))
}

/// All `(σ, b)` with `color_condition(σ, b, g⃗) = h`, in lexicographic order.
pub fn component_objects(g: &FiniteGroup, signature: &ColorSignature) -> Vec<DecoratedTuple> {
    let r = signature.arity();
    let mut out = Vec::new();
    for sigma in Permutation::all(r) {
        for b in tuples(g, r) {
            if color_condition(g, &sigma, &b, &signature.inputs) == signature.output {
                out.push(DecoratedTuple {
                    sigma: sigma.clone(),
                    b,
                });
            }
        }
    }
    out
}

/// `Σ_r × G^r` in lexicographic order.
pub fn hurwitz_space_objects(g: &FiniteGroup, r: usize) -> Vec<DecoratedTuple> {
    Permutation::all(r)
        .into_iter()
        .flat_map(|sigma| {
            tuples(g, r).map(move |b| DecoratedTuple {
                sigma: sigma.clone(),
                b,
            })
        })
        .collect()
}

/// All tuples in `G^r`, lexicographic in element indices.
pub fn tuples(g: &FiniteGroup, r: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let n = g.order();
    let total = n.checked_pow(r as u32).expect("tuple space too large");
    (0..total).map(move |mut code| {
        let mut t = vec![Elem::IDENTITY; r];
        for slot in t.iter_mut().rev() {
            *slot = Elem((code % n) as u16);
            code /= n;
        }
        t
    })
}

/// An orbit as a sorted member list; the representative is its minimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit<T> {
    pub members: Vec<T>,
}

impl<T> Orbit<T> {
    pub fn representative(&self) -> &T {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Orbits sorted by representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition<T> {
    pub orbits: Vec<Orbit<T>>,
}

impl<T> OrbitDecomposition<T> {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::len).collect()
    }

    pub fn representatives(&self) -> Vec<&T> {
        self.orbits.iter().map(Orbit::representative).collect()
    }

    pub fn total(&self) -> usize {
        self.orbits.iter().map(Orbit::len).sum()
    }
}

/// A transformation used as an orbit generator.
pub type Generator<'a, T> = Box<dyn Fn(&T) -> T + Send + Sync + 'a>;

/// Closure of `start` under `generators`, by breadth-first search.
pub fn orbit<T>(start: T, generators: &[Generator<'_, T>]) -> Orbit<T>
where
    T: Clone + Ord + Hash,
{
    let mut seen: HashSet<T> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for gen in generators {
                let y = gen(x);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut members: Vec<T> = seen.into_iter().collect();
    members.sort();
    Orbit { members }
}

/// Same closure with the frontier expanded by worker threads; the result is
/// independent of scheduling.
pub fn orbit_parallel<T>(start: T, generators: &[Generator<'_, T>]) -> Orbit<T>
where
    T: Clone + Ord + Hash + Send + Sync,
{
    let mut seen: HashSet<T> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let candidates: Vec<T> = frontier
            .par_iter()
            .flat_map_iter(|x| generators.iter().map(move |gen| gen(x)))
            .collect();
        frontier = candidates
            .into_iter()
            .filter(|y| seen.insert(y.clone()))
            .collect();
    }
    let mut members: Vec<T> = seen.into_iter().collect();
    members.sort();
    Orbit { members }
}

/// Decomposes `objects` into orbits. Every generator must map the set into
/// itself.
pub fn decompose<T>(objects: &[T], generators: &[Generator<'_, T>], parallel: bool) -> OrbitDecomposition<T>
where
    T: Clone + Ord + Hash + Send + Sync,
{
    let mut assigned: HashSet<T> = HashSet::with_capacity(objects.len());
    let mut orbits = Vec::new();
    let mut sorted: Vec<&T> = objects.iter().collect();
    sorted.sort();
    for x in sorted {
        if assigned.contains(x) {
            continue;
        }
        let o = if parallel {
            orbit_parallel(x.clone(), generators)
        } else {
            orbit(x.clone(), generators)
        };
        assigned.extend(o.members.iter().cloned());
        orbits.push(o);
    }
    orbits.sort_by(|a, b| a.representative().cmp(b.representative()));
    OrbitDecomposition { orbits }
}

/// Braid generators `σ_j^{±1}` acting through [`braid_act_labeled`].
pub fn labeled_braid_generators<'a>(
    g: &'a FiniteGroup,
    inputs: &'a [Elem],
) -> Vec<Generator<'a, DecoratedTuple>> {
    let r = inputs.len();
    let mut gens: Vec<Generator<'a, DecoratedTuple>> = Vec::new();
    for j in 1..r {
        for positive in [true, false] {
            let w = BraidWord::generator(r, j, positive);
            gens.push(Box::new(move |x: &DecoratedTuple| {
                braid_act_labeled(g, &w, x, inputs).expect("well-formed component object")
            }));
        }
    }
    gens
}

/// Braid generators through [`braid_act`] plus conjugation by every element.
pub fn hurwitz_space_generators(g: &FiniteGroup, r: usize) -> Vec<Generator<'_, DecoratedTuple>> {
    let mut gens: Vec<Generator<'_, DecoratedTuple>> = Vec::new();
    for j in 1..r {
        for positive in [true, false] {
            let w = BraidWord::generator(r, j, positive);
            gens.push(Box::new(move |x: &DecoratedTuple| {
                braid_act(g, &w, x).expect("well-formed tuple")
            }));
        }
    }
    for h in g.elements() {
        gens.push(Box::new(move |x: &DecoratedTuple| {
            conjugate_act(g, h, x).expect("well-formed tuple")
        }));
    }
    gens
}

/// Orbits of the braid group on the component `Σ_r ×_h G^r`.
pub fn component_orbits(g: &FiniteGroup, signature: &ColorSignature, parallel: bool) -> OrbitDecomposition<DecoratedTuple> {
    let objects = component_objects(g, signature);
    let gens = labeled_braid_generators(g, &signature.inputs);
    decompose(&objects, &gens, parallel)
}

pub fn pi0_component(g: &FiniteGroup, signature: &ColorSignature) -> usize {
    component_orbits(g, signature, false).count()
}

/// Orbits of braids and global conjugation on `Σ_r × G^r`.
pub fn hurwitz_space_orbits(g: &FiniteGroup, r: usize, parallel: bool) -> OrbitDecomposition<DecoratedTuple> {
    let objects = hurwitz_space_objects(g, r);
    let gens = hurwitz_space_generators(g, r);
    decompose(&objects, &gens, parallel)
}

pub fn pi0_hurwitz_space(g: &FiniteGroup, r: usize) -> usize {
    hurwitz_space_orbits(g, r, false).count()
}

/// `r! · |G|^r`, or `None` on overflow.
pub fn ambient_size(g: &FiniteGroup, r: usize) -> Option<u128> {
    let fact: u128 = (1..=r as u128).product();
    (g.order() as u128).checked_pow(r as u32)?.checked_mul(fact)
}

pub mod grothendieck;
