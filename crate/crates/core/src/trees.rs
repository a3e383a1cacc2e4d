//! Parenthesized G-braid trees, their normal forms and generator morphisms.
//!
//! A [`GTree`] is built from input leaves `leaf:i:g` (slot `i`, color `g`),
//! the unit `U`, labels `L[h](t)` retyping `g` to `hgh⁻¹`, and tensors
//! `T(a, b)` multiplying colors. Trees parse from and print to that syntax.
//!
//! [`normalize`] collapses a tree to `(σ, b)`: `σ` lists the input slots
//! from left to right and `b_i` is the product of the labels on the path to
//! leaf `i`, outermost first. The standard shape returned by
//! [`denormalize`] is a left comb of labeled leaves.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braids::BraidWord;
use crate::groups::{Elem, FiniteGroup};
use crate::hurwitz::{color_condition, ColorSignature};
use crate::perm::Permutation;

pub mod relations;
pub mod rewrite;

pub use relations::{check_all_relations, check_relation, relation_table, Relation, RelationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("cannot parse tree at position {position}: {reason}")]
    Parse { position: usize, reason: String },
    #[error("input slots must be exactly 1..r, found {0:?}")]
    Slots(Vec<usize>),
    #[error("element {0} is not in the group")]
    ForeignElement(Elem),
    #[error("slot {0} does not exist")]
    MissingSlot(usize),
    #[error("color mismatch at slot {slot}: expected {expected}, found {found}")]
    ColorMismatch { slot: usize, expected: Elem, found: Elem },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("no subtree at address {0:?}")]
    BadAddress(Vec<usize>),
    #[error("{generator} does not apply at {address:?}: {reason}")]
    NotApplicable {
        generator: String,
        address: Vec<usize>,
        reason: String,
    },
    #[error("(σ, b) violates the color condition for {0}")]
    ColorCondition(String),
    #[error("relation `{0}` is unknown")]
    UnknownRelation(String),
    #[error("malformed relation table line {line}: {reason}")]
    Table { line: usize, reason: String },
    #[error("assignment misses variable `{0}`")]
    MissingVariable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GTree {
    Unit,
    Leaf { slot: usize, color: Elem },
    Label { h: Elem, child: Box<GTree> },
    Tensor(Box<GTree>, Box<GTree>),
}

impl GTree {
    pub fn leaf(slot: usize, color: Elem) -> Self {
        GTree::Leaf { slot, color }
    }

    pub fn label(h: Elem, child: GTree) -> Self {
        GTree::Label {
            h,
            child: Box::new(child),
        }
    }

    pub fn tensor(a: GTree, b: GTree) -> Self {
        GTree::Tensor(Box::new(a), Box::new(b))
    }

    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let mut p = Parser {
            s: text.as_bytes(),
            pos: 0,
        };
        let t = p.tree()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }

    /// Number of input leaves.
    pub fn arity(&self) -> usize {
        match self {
            GTree::Unit => 0,
            GTree::Leaf { .. } => 1,
            GTree::Label { child, .. } => child.arity(),
            GTree::Tensor(a, b) => a.arity() + b.arity(),
        }
    }

    /// Input slots in left-to-right order.
    pub fn slots(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.visit_leaves(Elem::IDENTITY, &mut |slot, _, _| out.push(slot), None);
        out
    }

    /// Input colors indexed by slot (1-based slots, 0-based vector).
    pub fn input_colors(&self) -> Result<Vec<Elem>, TreeError> {
        self.check_slots()?;
        let mut colors = vec![Elem::IDENTITY; self.arity()];
        self.visit_leaves(Elem::IDENTITY, &mut |slot, color, _| colors[slot - 1] = color, None);
        Ok(colors)
    }

    fn check_slots(&self) -> Result<(), TreeError> {
        let slots = self.slots();
        let mut sorted = slots.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &s)| s != i + 1) {
            return Err(TreeError::Slots(slots));
        }
        Ok(())
    }

    fn check_elements(&self, g: &FiniteGroup) -> Result<(), TreeError> {
        match self {
            GTree::Unit => Ok(()),
            GTree::Leaf { color, .. } if !g.contains(*color) => Err(TreeError::ForeignElement(*color)),
            GTree::Leaf { .. } => Ok(()),
            GTree::Label { h, .. } if !g.contains(*h) => Err(TreeError::ForeignElement(*h)),
            GTree::Label { child, .. } => child.check_elements(g),
            GTree::Tensor(a, b) => {
                a.check_elements(g)?;
                b.check_elements(g)
            }
        }
    }

    /// Checks slots and element membership.
    pub fn validate(&self, g: &FiniteGroup) -> Result<(), TreeError> {
        self.check_slots()?;
        self.check_elements(g)
    }

    /// Calls `f(slot, color, accumulated label)` for every input leaf from
    /// left to right. Labels accumulate outermost first.
    fn visit_leaves(&self, acc: Elem, f: &mut dyn FnMut(usize, Elem, Elem), g: Option<&FiniteGroup>) {
        match self {
            GTree::Unit => {}
            GTree::Leaf { slot, color } => f(*slot, *color, acc),
            GTree::Label { h, child } => {
                let next = g.map_or(acc, |g| g.mul(acc, *h));
                child.visit_leaves(next, f, g)
            }
            GTree::Tensor(a, b) => {
                a.visit_leaves(acc, f, g);
                b.visit_leaves(acc, f, g);
            }
        }
    }

    /// Subtree at a child-index path (`Tensor` has children 0 and 1,
    /// `Label` has child 0).
    pub fn get(&self, address: &[usize]) -> Option<&GTree> {
        match (self, address.split_first()) {
            (_, None) => Some(self),
            (GTree::Label { child, .. }, Some((0, rest))) => child.get(rest),
            (GTree::Tensor(a, _), Some((0, rest))) => a.get(rest),
            (GTree::Tensor(_, b), Some((1, rest))) => b.get(rest),
            _ => None,
        }
    }

    /// Replaces the subtree at `address` by `f(subtree)`.
    pub fn replace_at(
        &self,
        address: &[usize],
        f: &mut dyn FnMut(&GTree) -> Result<GTree, TreeError>,
    ) -> Result<GTree, TreeError> {
        let Some((&first, rest)) = address.split_first() else {
            return f(self);
        };
        match (self, first) {
            (GTree::Label { h, child }, 0) => Ok(GTree::label(*h, child.replace_at(rest, f)?)),
            (GTree::Tensor(a, b), 0) => Ok(GTree::tensor(a.replace_at(rest, f)?, (**b).clone())),
            (GTree::Tensor(a, b), 1) => Ok(GTree::tensor((**a).clone(), b.replace_at(rest, f)?)),
            _ => Err(TreeError::BadAddress(address.to_vec())),
        }
    }

    /// Number of input leaves strictly to the left of the subtree at
    /// `address`.
    pub fn leaves_before(&self, address: &[usize]) -> Result<usize, TreeError> {
        let mut node = self;
        let mut count = 0;
        for &step in address {
            node = match (node, step) {
                (GTree::Label { child, .. }, 0) => child,
                (GTree::Tensor(a, _), 0) => a,
                (GTree::Tensor(a, b), 1) => {
                    count += a.arity();
                    b
                }
                _ => return Err(TreeError::BadAddress(address.to_vec())),
            };
        }
        Ok(count)
    }

    /// Renames slots through `f`.
    pub fn map_slots(&self, f: &dyn Fn(usize) -> usize) -> GTree {
        match self {
            GTree::Unit => GTree::Unit,
            GTree::Leaf { slot, color } => GTree::leaf(f(*slot), *color),
            GTree::Label { h, child } => GTree::label(*h, child.map_slots(f)),
            GTree::Tensor(a, b) => GTree::tensor(a.map_slots(f), b.map_slots(f)),
        }
    }
}

impl fmt::Display for GTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GTree::Unit => write!(f, "U"),
            GTree::Leaf { slot, color } => write!(f, "leaf:{slot}:{color}"),
            GTree::Label { h, child } => write!(f, "L[{h}]({child})"),
            GTree::Tensor(a, b) => write!(f, "T({a}, {b})"),
        }
    }
}

impl std::str::FromStr for GTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GTree::parse(s)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> TreeError {
        TreeError::Parse {
            position: self.pos,
            reason: reason.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), TreeError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<usize, TreeError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| TreeError::Parse {
                position: start,
                reason: "number too large".into(),
            })
    }

    fn element(&mut self) -> Result<Elem, TreeError> {
        let start = self.pos;
        let n = self.number()?;
        u16::try_from(n).map(Elem).map_err(|_| TreeError::Parse {
            position: start,
            reason: "element index too large".into(),
        })
    }

    fn tree(&mut self) -> Result<GTree, TreeError> {
        if self.eat("leaf") {
            self.expect(":")?;
            let slot = self.number()?;
            self.expect(":")?;
            let color = self.element()?;
            Ok(GTree::leaf(slot, color))
        } else if self.eat("U") {
            Ok(GTree::Unit)
        } else if self.eat("T") {
            self.expect("(")?;
            let a = self.tree()?;
            self.expect(",")?;
            let b = self.tree()?;
            self.expect(")")?;
            Ok(GTree::tensor(a, b))
        } else if self.eat("L") {
            self.expect("[")?;
            let h = self.element()?;
            self.expect("]")?;
            self.expect("(")?;
            let child = self.tree()?;
            self.expect(")")?;
            Ok(GTree::label(h, child))
        } else {
            Err(self.error("expected `leaf`, `U`, `T` or `L`"))
        }
    }
}

/// Root color: tensors multiply, labels conjugate, the unit is `e`.
pub fn output_color(g: &FiniteGroup, t: &GTree) -> Result<Elem, TreeError> {
    t.check_elements(g)?;
    Ok(color_unchecked(g, t))
}

fn color_unchecked(g: &FiniteGroup, t: &GTree) -> Elem {
    match t {
        GTree::Unit => Elem::IDENTITY,
        GTree::Leaf { color, .. } => *color,
        GTree::Label { h, child } => g.conj(*h, color_unchecked(g, child)),
        GTree::Tensor(a, b) => g.mul(color_unchecked(g, a), color_unchecked(g, b)),
    }
}

/// Canonical object `(σ, b)` together with its signature.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub sigma: Permutation,
    pub b: Vec<Elem>,
    pub signature: ColorSignature,
}

impl NormalForm {
    /// Validates the color condition.
    pub fn new(g: &FiniteGroup, sigma: Permutation, b: Vec<Elem>, signature: ColorSignature) -> Result<Self, TreeError> {
        let r = signature.arity();
        if sigma.size() != r || b.len() != r {
            return Err(TreeError::SignatureMismatch(format!(
                "σ has {} points and b has {} labels for {r} inputs",
                sigma.size(),
                b.len()
            )));
        }
        if let Some(&x) = b.iter().chain(&signature.inputs).find(|&&x| !g.contains(x)) {
            return Err(TreeError::ForeignElement(x));
        }
        if color_condition(g, &sigma, &b, &signature.inputs) != signature.output {
            return Err(TreeError::ColorCondition(signature.to_string()));
        }
        Ok(Self { sigma, b, signature })
    }

    /// The one-input identity of color `c`.
    pub fn identity(c: Elem) -> Self {
        Self {
            sigma: Permutation::identity(1),
            b: vec![Elem::IDENTITY],
            signature: ColorSignature::new(vec![c], c),
        }
    }

    pub fn arity(&self) -> usize {
        self.b.len()
    }

    /// `x·ρ`: the new input `i` is the old input `ρ(i)`.
    pub fn act(&self, rho: &Permutation) -> NormalForm {
        let inv = rho.inverse();
        let sigma = Permutation::from_images(self.sigma.images().map(|s| inv.apply(s)).collect())
            .expect("relabeling a bijection");
        NormalForm {
            sigma,
            b: rho.images().map(|s| self.b[s]).collect(),
            signature: ColorSignature::new(
                rho.images().map(|s| self.signature.inputs[s]).collect(),
                self.signature.output,
            ),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(ToString::to_string).collect();
        write!(f, "sigma={}; b=[{}]; {}", self.sigma, b.join(","), self.signature)
    }
}

pub fn normalize(g: &FiniteGroup, t: &GTree) -> Result<NormalForm, TreeError> {
    // one pass: (slot, color, accumulated label) per leaf, elements checked
    fn collect(g: &FiniteGroup, t: &GTree, acc: Elem, out: &mut Vec<(usize, Elem, Elem)>) -> Result<(), TreeError> {
        match t {
            GTree::Unit => Ok(()),
            GTree::Leaf { color, .. } if !g.contains(*color) => Err(TreeError::ForeignElement(*color)),
            GTree::Leaf { slot, color } => {
                out.push((*slot, *color, acc));
                Ok(())
            }
            GTree::Label { h, .. } if !g.contains(*h) => Err(TreeError::ForeignElement(*h)),
            GTree::Label { h, child } => collect(g, child, g.mul(acc, *h), out),
            GTree::Tensor(a, b) => {
                collect(g, a, acc, out)?;
                collect(g, b, acc, out)
            }
        }
    }
    let mut leaves = Vec::new();
    collect(g, t, Elem::IDENTITY, &mut leaves)?;
    let r = leaves.len();
    let mut b = vec![Elem::IDENTITY; r];
    let mut inputs = vec![Elem::IDENTITY; r];
    let mut seen = vec![false; r];
    for &(slot, color, label) in &leaves {
        if slot == 0 || slot > r || std::mem::replace(&mut seen[slot - 1], true) {
            return Err(TreeError::Slots(leaves.iter().map(|l| l.0).collect()));
        }
        b[slot - 1] = label;
        inputs[slot - 1] = color;
    }
    Ok(NormalForm {
        sigma: Permutation::from_images(leaves.iter().map(|l| l.0 - 1).collect()).expect("slots checked"),
        b,
        signature: ColorSignature::new(inputs, color_unchecked(g, t)),
    })
}

/// The standard tree of a normal form: a left comb of leaves in `σ` order,
/// each under its label unless the label is `e`; `U` for arity 0.
pub fn denormalize(nf: &NormalForm) -> GTree {
    let leaves = nf.sigma.images().map(|s| {
        let leaf = GTree::leaf(s + 1, nf.signature.inputs[s]);
        if nf.b[s] == Elem::IDENTITY {
            leaf
        } else {
            GTree::label(nf.b[s], leaf)
        }
    });
    leaves.reduce(GTree::tensor).unwrap_or(GTree::Unit)
}

/// Substitutes `inner` for slot `j` of `outer`, renumbering slots into the
/// gap.
pub fn graft(g: &FiniteGroup, outer: &GTree, j: usize, inner: &GTree) -> Result<GTree, TreeError> {
    outer.validate(g)?;
    inner.validate(g)?;
    let colors = outer.input_colors()?;
    if j == 0 || j > colors.len() {
        return Err(TreeError::MissingSlot(j));
    }
    let found = color_unchecked(g, inner);
    if found != colors[j - 1] {
        return Err(TreeError::ColorMismatch {
            slot: j,
            expected: colors[j - 1],
            found,
        });
    }
    let s = inner.arity();
    let shifted_inner = inner.map_slots(&|i| i + j - 1);
    Ok(substitute(outer, j, s, &shifted_inner))
}

fn substitute(t: &GTree, j: usize, s: usize, inner: &GTree) -> GTree {
    match t {
        GTree::Unit => GTree::Unit,
        GTree::Leaf { slot, .. } if *slot == j => inner.clone(),
        GTree::Leaf { slot, color } => GTree::leaf(if *slot > j { slot + s - 1 } else { *slot }, *color),
        GTree::Label { h, child } => GTree::label(*h, substitute(child, j, s, inner)),
        GTree::Tensor(a, b) => GTree::tensor(substitute(a, j, s, inner), substitute(b, j, s, inner)),
    }
}

fn check_composable(outer: &NormalForm, j: usize, inner: &NormalForm) -> Result<(), TreeError> {
    let r = outer.arity();
    if j == 0 || j > r {
        return Err(TreeError::MissingSlot(j));
    }
    if inner.signature.output != outer.signature.inputs[j - 1] {
        return Err(TreeError::SignatureMismatch(format!(
            "inner output {} does not match input {j} of color {}",
            inner.signature.output,
            outer.signature.inputs[j - 1]
        )));
    }
    Ok(())
}

/// `outer ∘_j inner` computed as graft-then-normalize.
pub fn compose_normal_by_graft(
    g: &FiniteGroup,
    outer: &NormalForm,
    j: usize,
    inner: &NormalForm,
) -> Result<NormalForm, TreeError> {
    check_composable(outer, j, inner)?;
    normalize(g, &graft(g, &denormalize(outer), j, &denormalize(inner))?)
}

/// `outer ∘_j inner` in closed form: block substitution on `σ` and inner
/// labels premultiplied by `b_j`.
pub fn compose_normal(g: &FiniteGroup, outer: &NormalForm, j: usize, inner: &NormalForm) -> Result<NormalForm, TreeError> {
    check_composable(outer, j, inner)?;
    Ok(compose_unchecked(g, outer, j, inner, true))
}

pub(crate) fn compose_unchecked(
    g: &FiniteGroup,
    outer: &NormalForm,
    j: usize,
    inner: &NormalForm,
    premultiply: bool,
) -> NormalForm {
    let bj = outer.b[j - 1];
    let splice = |outer_values: &[Elem], inner_values: Vec<Elem>| {
        let mut v = outer_values[..j - 1].to_vec();
        v.extend(inner_values);
        v.extend_from_slice(&outer_values[j..]);
        v
    };
    let inner_b = inner
        .b
        .iter()
        .map(|&x| if premultiply { g.mul(bj, x) } else { x })
        .collect();
    NormalForm {
        sigma: outer.sigma.operadic_compose(j, &inner.sigma),
        b: splice(&outer.b, inner_b),
        signature: ColorSignature::new(
            splice(&outer.signature.inputs, inner.signature.inputs.clone()),
            outer.signature.output,
        ),
    }
}

/// Generating isomorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// `(AB)C → A(BC)`
    Alpha,
    /// `U⊗A → A`
    Lambda,
    /// `A⊗U → A`
    Rho,
    /// `h.A ⊗ h.B → h.(A⊗B)`
    Beta,
    /// `h₂.(h₁.A) → (h₂h₁).A`
    Gamma,
    /// `e.A → A`
    Delta,
    /// `h.U → U`
    Epsilon,
    /// `A⊗B → g.B ⊗ A` with `g` the color of `A`
    Braiding,
}

impl Generator {
    pub const ALL: [Generator; 8] = [
        Generator::Alpha,
        Generator::Lambda,
        Generator::Rho,
        Generator::Beta,
        Generator::Gamma,
        Generator::Delta,
        Generator::Epsilon,
        Generator::Braiding,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Alpha => "alpha",
            Generator::Lambda => "lambda",
            Generator::Rho => "rho",
            Generator::Beta => "beta",
            Generator::Gamma => "gamma",
            Generator::Delta => "delta",
            Generator::Epsilon => "epsilon",
            Generator::Braiding => "c",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == name)
    }
}

/// One generator applied at a subtree. `param` supplies the outer label
/// created by `gamma⁻¹` and the label created by `epsilon⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub generator: Generator,
    pub address: Vec<usize>,
    pub inverse: bool,
    pub param: Option<Elem>,
}

impl Step {
    pub fn new(generator: Generator, address: &[usize]) -> Self {
        Self {
            generator,
            address: address.to_vec(),
            inverse: false,
            param: None,
        }
    }

    pub fn inv(generator: Generator, address: &[usize]) -> Self {
        Self {
            inverse: true,
            ..Self::new(generator, address)
        }
    }

    pub fn with_param(mut self, h: Elem) -> Self {
        self.param = Some(h);
        self
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator.name())?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        if !self.address.is_empty() {
            let parts: Vec<String> = self.address.iter().map(ToString::to_string).collect();
            write!(f, "@{}", parts.join("."))?;
        }
        if let Some(h) = self.param {
            write!(f, "[{h}]")?;
        }
        Ok(())
    }
}

/// A composite of generator steps starting at `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismWord {
    pub source: GTree,
    pub steps: Vec<Step>,
}

impl MorphismWord {
    pub fn identity(source: GTree) -> Self {
        Self { source, steps: Vec::new() }
    }

    pub fn new(source: GTree, steps: Vec<Step>) -> Self {
        Self { source, steps }
    }

    /// The target tree, checking every step.
    pub fn target(&self, g: &FiniteGroup) -> Result<GTree, TreeError> {
        let mut t = self.source.clone();
        for step in &self.steps {
            t = apply_step(g, &t, step)?;
        }
        Ok(t)
    }
}

/// Applies one generator (or its inverse) at the step's address.
pub fn apply_step(g: &FiniteGroup, t: &GTree, step: &Step) -> Result<GTree, TreeError> {
    let fail = |reason: &str| TreeError::NotApplicable {
        generator: format!("{}{}", step.generator.name(), if step.inverse { "^-1" } else { "" }),
        address: step.address.clone(),
        reason: reason.to_string(),
    };
    let param = |fail: &dyn Fn(&str) -> TreeError| step.param.ok_or_else(|| fail("needs a label parameter"));
    t.replace_at(&step.address, &mut |s: &GTree| {
        use GTree::*;
        use Generator::*;
        Ok(match (step.generator, step.inverse, s) {
            (Alpha, false, Tensor(ab, c)) => match &**ab {
                Tensor(a, b) => GTree::tensor((**a).clone(), GTree::tensor((**b).clone(), (**c).clone())),
                _ => return Err(fail("left factor is not a tensor")),
            },
            (Alpha, true, Tensor(a, bc)) => match &**bc {
                Tensor(b, c) => GTree::tensor(GTree::tensor((**a).clone(), (**b).clone()), (**c).clone()),
                _ => return Err(fail("right factor is not a tensor")),
            },
            (Lambda, false, Tensor(u, a)) if **u == Unit => (**a).clone(),
            (Lambda, true, a) => GTree::tensor(Unit, a.clone()),
            (Rho, false, Tensor(a, u)) if **u == Unit => (**a).clone(),
            (Rho, true, a) => GTree::tensor(a.clone(), Unit),
            (Beta, false, Tensor(x, y)) => match (&**x, &**y) {
                (Label { h: h1, child: a }, Label { h: h2, child: b }) if h1 == h2 => {
                    GTree::label(*h1, GTree::tensor((**a).clone(), (**b).clone()))
                }
                _ => return Err(fail("factors are not equally labeled")),
            },
            (Beta, true, Label { h, child }) => match &**child {
                Tensor(a, b) => GTree::tensor(GTree::label(*h, (**a).clone()), GTree::label(*h, (**b).clone())),
                _ => return Err(fail("label is not over a tensor")),
            },
            (Gamma, false, Label { h: h2, child }) => match &**child {
                Label { h: h1, child: a } => GTree::label(g.mul(*h2, *h1), (**a).clone()),
                _ => return Err(fail("label is not over a label")),
            },
            (Gamma, true, Label { h, child }) => {
                let h2 = param(&fail)?;
                GTree::label(h2, GTree::label(g.mul(g.inv(h2), *h), (**child).clone()))
            }
            (Delta, false, Label { h, child }) if *h == Elem::IDENTITY => (**child).clone(),
            (Delta, true, a) => GTree::label(Elem::IDENTITY, a.clone()),
            (Epsilon, false, Label { child, .. }) if **child == Unit => Unit,
            (Epsilon, true, Unit) => GTree::label(param(&fail)?, Unit),
            (Braiding, false, Tensor(a, b)) => {
                GTree::tensor(GTree::label(color_unchecked(g, a), (**b).clone()), (**a).clone())
            }
            (Braiding, true, Tensor(x, a)) => match &**x {
                Label { h, child: b } if *h == color_unchecked(g, a) => GTree::tensor((**a).clone(), (**b).clone()),
                _ => return Err(fail("left factor is not labeled by the color of the right factor")),
            },
            _ => return Err(fail("pattern does not match")),
        })
    })
}

/// Image of a morphism in the action groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub source: NormalForm,
    pub target: NormalForm,
    pub braid: BraidWord,
    pub target_tree: GTree,
}

/// Braid contributed by one step applied to `t`: a block crossing for the
/// braiding, nothing for the other generators.
pub fn step_braid(t: &GTree, step: &Step) -> Result<BraidWord, TreeError> {
    let strands = t.arity().max(1);
    if step.generator != Generator::Braiding {
        return Ok(BraidWord::identity(strands));
    }
    let start = t.leaves_before(&step.address)? + 1;
    let sub = t
        .get(&step.address)
        .ok_or_else(|| TreeError::BadAddress(step.address.clone()))?;
    let GTree::Tensor(x, y) = sub else {
        return Err(TreeError::NotApplicable {
            generator: "c".into(),
            address: step.address.clone(),
            reason: "not a tensor".into(),
        });
    };
    let (m, n) = (x.arity(), y.arity());
    Ok(if step.inverse {
        // source is g.B ⊗ A: undo the crossing of B (n legs) past A (m legs)
        BraidWord::block_crossing(strands, start, n, m, true).inverse()
    } else {
        BraidWord::block_crossing(strands, start, m, n, true)
    })
}

/// Normal forms of both ends and the accumulated braid. With
/// `flip_braiding` every braiding step contributes the inverse crossing.
pub fn interpret_morphism_with(g: &FiniteGroup, m: &MorphismWord, flip_braiding: bool) -> Result<Interpretation, TreeError> {
    let source = normalize(g, &m.source)?;
    let mut t = m.source.clone();
    let mut letters = Vec::new();
    for step in &m.steps {
        let w = step_braid(&t, step)?;
        if flip_braiding {
            letters.extend(w.letters().iter().map(|l| -l));
        } else {
            letters.extend_from_slice(w.letters());
        }
        t = apply_step(g, &t, step)?;
    }
    let braid = BraidWord::new(m.source.arity().max(1), letters).expect("letters within the tree's strands");
    Ok(Interpretation {
        source,
        target: normalize(g, &t)?,
        braid,
        target_tree: t,
    })
}

pub fn interpret_morphism(g: &FiniteGroup, m: &MorphismWord) -> Result<Interpretation, TreeError> {
    interpret_morphism_with(g, m, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{braid_act_labeled, DecoratedTuple};

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    fn t(s: &str) -> GTree {
        GTree::parse(s).unwrap()
    }

    #[test]
    fn parse_round_trip() {
        let text = "T(L[1](leaf:1:2), leaf:2:3)";
        assert_eq!(t(text).to_string(), text);
        assert_eq!(t(" T ( U , leaf : 1 : 0 ) ").to_string(), "T(U, leaf:1:0)");
        let err = GTree::parse("T(leaf:1:0 leaf:2:0)").unwrap_err();
        assert!(matches!(err, TreeError::Parse { position: 11, .. }), "{err:?}");
        assert!(GTree::parse("T(U, U) x").is_err());
    }

    #[test]
    fn output_colors() {
        let g = s3();
        assert_eq!(output_color(&g, &t("leaf:1:4")).unwrap(), Elem(4));
        assert_eq!(output_color(&g, &t("U")).unwrap(), Elem::IDENTITY);
        let (h, x, k) = (Elem(1), Elem(2), Elem(3));
        let expected = g.mul(g.conj(h, x), k);
        assert_eq!(output_color(&g, &t("T(L[1](leaf:1:2), leaf:2:3)")).unwrap(), expected);
        assert!(output_color(&g, &t("leaf:1:9")).is_err());
    }

    #[test]
    fn normalize_examples() {
        let g = s3();
        let nf = normalize(&g, &t("leaf:1:4")).unwrap();
        assert_eq!((nf.sigma.one_line(), nf.b), (vec![1], vec![Elem(0)]));
        let nf = normalize(&g, &t("T(U, leaf:1:4)")).unwrap();
        assert_eq!(nf.signature.output, Elem(4));
        assert_eq!(nf.b, vec![Elem(0)]);
        let nf = normalize(&g, &t("T(L[1](leaf:1:2), leaf:2:3)")).unwrap();
        assert_eq!(nf.sigma.one_line(), vec![1, 2]);
        assert_eq!(nf.b, vec![Elem(1), Elem(0)]);
        assert!(normalize(&g, &t("T(leaf:1:0, leaf:3:0)")).is_err());
    }

    #[test]
    fn stacked_labels_accumulate_outermost_first() {
        let g = s3();
        let (h2, h1) = (Elem(1), Elem(3));
        let nf = normalize(&g, &t("L[1](L[3](leaf:1:0))")).unwrap();
        assert_eq!(nf.b, vec![g.mul(h2, h1)]);
        assert_ne!(g.mul(h2, h1), g.mul(h1, h2));
        let gamma = apply_step(&g, &t("L[1](L[3](leaf:1:0))"), &Step::new(Generator::Gamma, &[])).unwrap();
        assert_eq!(gamma, GTree::label(g.mul(h2, h1), GTree::leaf(1, Elem(0))));
    }

    #[test]
    fn denormalize_round_trip() {
        let g = s3();
        let nf = normalize(&g, &t("T(leaf:2:1, T(L[4](leaf:3:2), L[5](leaf:1:3)))")).unwrap();
        let std = denormalize(&nf);
        assert_eq!(std.to_string(), "T(T(leaf:2:1, L[4](leaf:3:2)), L[5](leaf:1:3))");
        assert_eq!(normalize(&g, &std).unwrap(), nf);
    }

    #[test]
    fn graft_units_and_mismatch() {
        let g = s3();
        let inner = t("T(leaf:1:1, L[2](leaf:2:3))");
        let color = output_color(&g, &inner).unwrap();
        assert_eq!(graft(&g, &GTree::leaf(1, color), 1, &inner).unwrap(), inner);
        let outer = t("T(leaf:1:1, leaf:2:4)");
        assert_eq!(graft(&g, &outer, 2, &t("leaf:1:4")).unwrap(), outer);
        assert!(matches!(
            graft(&g, &outer, 1, &t("leaf:1:2")),
            Err(TreeError::ColorMismatch { slot: 1, .. })
        ));
        assert!(matches!(graft(&g, &outer, 3, &t("leaf:1:1")), Err(TreeError::MissingSlot(3))));
        let grafted = graft(&g, &outer, 1, &t("T(leaf:1:1, U)")).unwrap();
        assert_eq!(grafted.to_string(), "T(T(leaf:1:1, U), leaf:2:4)");
    }

    #[test]
    fn compose_with_identity_and_trivial_labels() {
        let g = s3();
        let nf = normalize(&g, &t("T(L[3](leaf:2:1), leaf:1:4)")).unwrap();
        for j in 1..=2 {
            let id = NormalForm::identity(nf.signature.inputs[j - 1]);
            assert_eq!(compose_normal(&g, &nf, j, &id).unwrap(), nf);
        }
        let id = NormalForm::identity(nf.signature.output);
        assert_eq!(compose_normal(&g, &id, 1, &nf).unwrap(), nf);
        let plain = normalize(&g, &t("T(leaf:1:0, leaf:2:0)")).unwrap();
        let c = compose_normal(&g, &plain, 1, &plain).unwrap();
        assert!(c.sigma.is_identity());
        assert!(c.b.iter().all(|&x| x == Elem::IDENTITY));
    }

    #[test]
    fn fast_composition_matches_graft_on_examples() {
        let g = s3();
        let outer = normalize(&g, &t("T(L[3](leaf:2:1), L[4](leaf:1:4))")).unwrap();
        let inner = normalize(&g, &t("T(leaf:2:5, L[1](leaf:1:3))")).unwrap();
        let inner_out = inner.signature.output;
        for j in 1..=2 {
            if outer.signature.inputs[j - 1] != inner_out {
                continue;
            }
            assert_eq!(
                compose_normal(&g, &outer, j, &inner).unwrap(),
                compose_normal_by_graft(&g, &outer, j, &inner).unwrap()
            );
        }
        assert!(compose_normal(&g, &outer, 1, &NormalForm::identity(Elem(2))).is_err());
    }

    #[test]
    fn single_braiding_is_one_generator() {
        let g = s3();
        let m = MorphismWord::new(t("T(leaf:1:1, leaf:2:3)"), vec![Step::new(Generator::Braiding, &[])]);
        let i = interpret_morphism(&g, &m).unwrap();
        assert_eq!(i.braid.letters(), &[1]);
        assert_eq!(i.target_tree.to_string(), "T(L[1](leaf:2:3), leaf:1:1)");
        let x = DecoratedTuple::new(i.source.sigma.clone(), i.source.b.clone()).unwrap();
        let y = braid_act_labeled(&g, &i.braid, &x, &i.source.signature.inputs).unwrap();
        assert_eq!((y.sigma, y.b), (i.target.sigma.clone(), i.target.b.clone()));
        let id = interpret_morphism(&g, &MorphismWord::identity(t("T(leaf:1:1, leaf:2:3)"))).unwrap();
        assert!(id.braid.is_empty());
        assert_eq!(id.source, id.target);
    }

    #[test]
    fn inverse_steps_undo() {
        let g = s3();
        let src = t("T(T(leaf:1:1, L[2](leaf:2:3)), leaf:3:4)");
        let gens = [
            (Step::new(Generator::Alpha, &[]), Step::inv(Generator::Alpha, &[])),
            (Step::new(Generator::Braiding, &[0]), Step::inv(Generator::Braiding, &[0])),
            (Step::inv(Generator::Gamma, &[0, 1]).with_param(Elem(5)), Step::new(Generator::Gamma, &[0, 1])),
            (Step::inv(Generator::Lambda, &[1]), Step::new(Generator::Lambda, &[1])),
            (Step::inv(Generator::Delta, &[]), Step::new(Generator::Delta, &[])),
        ];
        for (a, b) in gens {
            let there = apply_step(&g, &src, &a).unwrap();
            assert_eq!(apply_step(&g, &there, &b).unwrap(), src, "{a}");
            let word = MorphismWord::new(src.clone(), vec![a, b]);
            assert!(interpret_morphism(&g, &word).unwrap().braid.normal_form().is_empty());
        }
        let bad = apply_step(&g, &src, &Step::new(Generator::Beta, &[]));
        assert!(matches!(bad, Err(TreeError::NotApplicable { .. })));
        assert!(apply_step(&g, &src, &Step::new(Generator::Alpha, &[1, 1])).is_err());
        assert!(apply_step(&g, &t("U"), &Step::inv(Generator::Epsilon, &[])).is_err());
    }

    #[test]
    fn sigma_action_matches_slot_renaming() {
        let g = s3();
        let tree = t("T(leaf:2:1, T(L[4](leaf:3:2), L[5](leaf:1:3)))");
        let nf = normalize(&g, &tree).unwrap();
        for rho in Permutation::all(3) {
            let inv = rho.inverse();
            let renamed = tree.map_slots(&|s| inv.apply(s - 1) + 1);
            assert_eq!(normalize(&g, &renamed).unwrap(), nf.act(&rho));
        }
    }
}
