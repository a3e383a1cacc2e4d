//! Finite groupoid presentations and the Grothendieck construction of a
//! groupoid-indexed diagram of groupoids.
//!
//! A morphism of the construction is a pair `(g₀, f₀)` with `g₀: y₀ → y₁`
//! in the base and `f₀: x₀ → x₁` in the fiber over `y₀`; it runs from
//! `(y₀, x₀)` to `(y₁, g₀.x₁)`. Composition is
//! `(g₁, f₁) ∘ (g₀, f₀) = (g₁g₀, (g₀⁻¹.f₁) f₀)`.

use std::collections::BTreeSet;
use std::fmt::Debug;

use serde::Serialize;

use super::{braid_act, conjugate_act, hurwitz_space_objects, tuples, DecoratedTuple, HurwitzError};
use crate::braids::BraidWord;
use crate::groups::{Elem, FiniteGroup};
use crate::perm::Permutation;

/// A groupoid given by its objects and generating morphisms.
pub trait Groupoid {
    type Obj: Clone + Ord + Debug;
    type Mor: Clone + Debug;

    fn objects(&self) -> Vec<Self::Obj>;
    /// Generators with source `x`, inverses included.
    fn generators_from(&self, x: &Self::Obj) -> Vec<Self::Mor>;
    fn source(&self, m: &Self::Mor) -> Self::Obj;
    fn target(&self, m: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `second ∘ first`; the caller guarantees composability.
    fn compose(&self, second: &Self::Mor, first: &Self::Mor) -> Self::Mor;
    fn inverse(&self, m: &Self::Mor) -> Self::Mor;
    /// Equality of morphisms (not of their presentations).
    fn same(&self, a: &Self::Mor, b: &Self::Mor) -> bool;
}

/// Checks that every generator has a two-sided inverse and that
/// composition is associative on composable generator triples, visiting at
/// most `limit` triples. Returns the failures.
pub fn check_presentation<G: Groupoid>(groupoid: &G, limit: usize) -> Vec<String> {
    let mut failures = Vec::new();
    let mut visited = 0;
    for x in groupoid.objects() {
        for f in groupoid.generators_from(&x) {
            let y = groupoid.target(&f);
            let inv = groupoid.inverse(&f);
            if !groupoid.same(&groupoid.compose(&inv, &f), &groupoid.identity(&x))
                || !groupoid.same(&groupoid.compose(&f, &inv), &groupoid.identity(&y))
            {
                failures.push(format!("inverse of {f:?} fails"));
            }
            for g in groupoid.generators_from(&y) {
                let z = groupoid.target(&g);
                for h in groupoid.generators_from(&z) {
                    if visited >= limit {
                        return failures;
                    }
                    visited += 1;
                    let left = groupoid.compose(&h, &groupoid.compose(&g, &f));
                    let right = groupoid.compose(&groupoid.compose(&h, &g), &f);
                    if !groupoid.same(&left, &right) {
                        failures.push(format!("associativity fails on {f:?}, {g:?}, {h:?}"));
                    }
                }
            }
        }
    }
    failures
}

/// A functor from a base groupoid to groupoids, given on generators.
pub trait GroupoidDiagram {
    type Base: Groupoid;
    type Fiber: Groupoid;

    fn base(&self) -> &Self::Base;
    fn fiber(&self, y: &<Self::Base as Groupoid>::Obj) -> Self::Fiber;
    /// `g.x` for `x` in the fiber over the source of `g`.
    fn act_object(
        &self,
        g: &<Self::Base as Groupoid>::Mor,
        x: &<Self::Fiber as Groupoid>::Obj,
    ) -> <Self::Fiber as Groupoid>::Obj;
    fn act_morphism(
        &self,
        g: &<Self::Base as Groupoid>::Mor,
        f: &<Self::Fiber as Groupoid>::Mor,
    ) -> <Self::Fiber as Groupoid>::Mor;
}

type BaseObj<D> = <<D as GroupoidDiagram>::Base as Groupoid>::Obj;
type BaseMor<D> = <<D as GroupoidDiagram>::Base as Groupoid>::Mor;
type FiberObj<D> = <<D as GroupoidDiagram>::Fiber as Groupoid>::Obj;
type FiberMor<D> = <<D as GroupoidDiagram>::Fiber as Groupoid>::Mor;

pub struct GrothendieckMor<D: GroupoidDiagram> {
    pub source: (BaseObj<D>, FiberObj<D>),
    pub base: BaseMor<D>,
    pub fiber: FiberMor<D>,
}

impl<D: GroupoidDiagram> Debug for GrothendieckMor<D> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GrothendieckMor")
            .field("source", &self.source)
            .field("base", &self.base)
            .field("fiber", &self.fiber)
            .finish()
    }
}

impl<D: GroupoidDiagram> Clone for GrothendieckMor<D> {
    fn clone(&self) -> Self {
        Self {
            source: self.source.clone(),
            base: self.base.clone(),
            fiber: self.fiber.clone(),
        }
    }
}

/// The Grothendieck construction of a diagram.
pub struct Grothendieck<'d, D> {
    diagram: &'d D,
}

/// Builds the construction after checking functoriality of `diagram` on
/// generators: identities act trivially, `g⁻¹` undoes `g`, and composites
/// of generator pairs act as the composite of the actions.
pub fn grothendieck<D: GroupoidDiagram>(diagram: &D) -> Result<Grothendieck<'_, D>, HurwitzError> {
    let base = diagram.base();
    for y in base.objects() {
        let fiber = diagram.fiber(&y);
        let fiber_objects = fiber.objects();
        let id = base.identity(&y);
        for x in &fiber_objects {
            if diagram.act_object(&id, x) != *x {
                return Err(HurwitzError::Functoriality(format!(
                    "identity at {y:?} moves {x:?}"
                )));
            }
        }
        for g0 in base.generators_from(&y) {
            let y1 = base.target(&g0);
            let g0_inv = base.inverse(&g0);
            for x in &fiber_objects {
                let moved = diagram.act_object(&g0, x);
                if diagram.act_object(&g0_inv, &moved) != *x {
                    return Err(HurwitzError::Functoriality(format!(
                        "inverse of {g0:?} does not undo it on {x:?}"
                    )));
                }
                for f in fiber.generators_from(x) {
                    let image = diagram.act_morphism(&g0, &f);
                    let target_fiber = diagram.fiber(&y1);
                    if target_fiber.source(&image) != moved
                        || target_fiber.target(&image) != diagram.act_object(&g0, &fiber.target(&f))
                    {
                        return Err(HurwitzError::Functoriality(format!(
                            "{g0:?} does not carry {f:?} to a morphism between the images"
                        )));
                    }
                }
                for g1 in base.generators_from(&y1) {
                    let composite = base.compose(&g1, &g0);
                    let stepwise = diagram.act_object(&g1, &moved);
                    if diagram.act_object(&composite, x) != stepwise {
                        return Err(HurwitzError::Functoriality(format!(
                            "{g1:?} after {g0:?} differs from their composite on {x:?}"
                        )));
                    }
                }
            }
        }
    }
    Ok(Grothendieck { diagram })
}

impl<D: GroupoidDiagram> Groupoid for Grothendieck<'_, D> {
    type Obj = (BaseObj<D>, FiberObj<D>);
    type Mor = GrothendieckMor<D>;

    fn objects(&self) -> Vec<Self::Obj> {
        let mut out = Vec::new();
        for y in self.diagram.base().objects() {
            for x in self.diagram.fiber(&y).objects() {
                out.push((y.clone(), x));
            }
        }
        out
    }

    fn generators_from(&self, (y, x): &Self::Obj) -> Vec<Self::Mor> {
        let base = self.diagram.base();
        let fiber = self.diagram.fiber(y);
        let source = (y.clone(), x.clone());
        let mut out: Vec<Self::Mor> = base
            .generators_from(y)
            .into_iter()
            .map(|g| GrothendieckMor {
                source: source.clone(),
                base: g,
                fiber: fiber.identity(x),
            })
            .collect();
        out.extend(fiber.generators_from(x).into_iter().map(|f| GrothendieckMor {
            source: source.clone(),
            base: base.identity(y),
            fiber: f,
        }));
        out
    }

    fn source(&self, m: &Self::Mor) -> Self::Obj {
        m.source.clone()
    }

    fn target(&self, m: &Self::Mor) -> Self::Obj {
        let base = self.diagram.base();
        let fiber = self.diagram.fiber(&m.source.0);
        let x1 = fiber.target(&m.fiber);
        (base.target(&m.base), self.diagram.act_object(&m.base, &x1))
    }

    fn identity(&self, (y, x): &Self::Obj) -> Self::Mor {
        GrothendieckMor {
            source: (y.clone(), x.clone()),
            base: self.diagram.base().identity(y),
            fiber: self.diagram.fiber(y).identity(x),
        }
    }

    fn compose(&self, second: &Self::Mor, first: &Self::Mor) -> Self::Mor {
        let base = self.diagram.base();
        let fiber = self.diagram.fiber(&first.source.0);
        let pulled = self.diagram.act_morphism(&base.inverse(&first.base), &second.fiber);
        GrothendieckMor {
            source: first.source.clone(),
            base: base.compose(&second.base, &first.base),
            fiber: fiber.compose(&pulled, &first.fiber),
        }
    }

    fn inverse(&self, m: &Self::Mor) -> Self::Mor {
        // (g, f)⁻¹ = (g⁻¹, g.f⁻¹) starting at the target
        let base = self.diagram.base();
        let fiber = self.diagram.fiber(&m.source.0);
        GrothendieckMor {
            source: self.target(m),
            base: base.inverse(&m.base),
            fiber: self.diagram.act_morphism(&m.base, &fiber.inverse(&m.fiber)),
        }
    }

    fn same(&self, a: &Self::Mor, b: &Self::Mor) -> bool {
        a.source == b.source
            && self.diagram.base().same(&a.base, &b.base)
            && self.diagram.fiber(&a.source.0).same(&a.fiber, &b.fiber)
    }
}

/// `Σ_r // B_r`: braids act on permutations by `σ ↦ σ ∘ π(c)`.
#[derive(Clone, Debug)]
pub struct PermutationBraidGroupoid {
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidMor {
    pub source: Permutation,
    pub braid: BraidWord,
}

impl Groupoid for PermutationBraidGroupoid {
    type Obj = Permutation;
    type Mor = BraidMor;

    fn objects(&self) -> Vec<Permutation> {
        Permutation::all(self.r)
    }

    fn generators_from(&self, x: &Permutation) -> Vec<BraidMor> {
        braid_generators(self.r)
            .map(|braid| BraidMor {
                source: x.clone(),
                braid,
            })
            .collect()
    }

    fn source(&self, m: &BraidMor) -> Permutation {
        m.source.clone()
    }

    fn target(&self, m: &BraidMor) -> Permutation {
        if self.r == 0 {
            return m.source.clone();
        }
        m.source.compose(&m.braid.underlying_permutation())
    }

    fn identity(&self, x: &Permutation) -> BraidMor {
        BraidMor {
            source: x.clone(),
            braid: BraidWord::identity(self.r.max(1)),
        }
    }

    fn compose(&self, second: &BraidMor, first: &BraidMor) -> BraidMor {
        BraidMor {
            source: first.source.clone(),
            braid: first.braid.concat(&second.braid).expect("equal strand counts"),
        }
    }

    fn inverse(&self, m: &BraidMor) -> BraidMor {
        BraidMor {
            source: self.target(m),
            braid: m.braid.inverse(),
        }
    }

    fn same(&self, a: &BraidMor, b: &BraidMor) -> bool {
        a.source == b.source && a.braid.equivalent(&b.braid)
    }
}

fn braid_generators(r: usize) -> impl Iterator<Item = BraidWord> {
    (1..r).flat_map(move |j| [true, false].map(|p| BraidWord::generator(r, j, p)))
}

/// `G^r // G` with `G` acting by entrywise conjugation.
#[derive(Clone, Debug)]
pub struct ConjugationGroupoid<'g> {
    pub group: &'g FiniteGroup,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationMor {
    pub source: Vec<Elem>,
    pub h: Elem,
}

impl Groupoid for ConjugationGroupoid<'_> {
    type Obj = Vec<Elem>;
    type Mor = ConjugationMor;

    fn objects(&self) -> Vec<Vec<Elem>> {
        tuples(self.group, self.r).collect()
    }

    fn generators_from(&self, x: &Vec<Elem>) -> Vec<ConjugationMor> {
        self.group
            .elements()
            .filter(|&h| h != Elem::IDENTITY)
            .map(|h| ConjugationMor {
                source: x.clone(),
                h,
            })
            .collect()
    }

    fn source(&self, m: &ConjugationMor) -> Vec<Elem> {
        m.source.clone()
    }

    fn target(&self, m: &ConjugationMor) -> Vec<Elem> {
        m.source.iter().map(|&a| self.group.conj(m.h, a)).collect()
    }

    fn identity(&self, x: &Vec<Elem>) -> ConjugationMor {
        ConjugationMor {
            source: x.clone(),
            h: Elem::IDENTITY,
        }
    }

    fn compose(&self, second: &ConjugationMor, first: &ConjugationMor) -> ConjugationMor {
        ConjugationMor {
            source: first.source.clone(),
            h: self.group.mul(second.h, first.h),
        }
    }

    fn inverse(&self, m: &ConjugationMor) -> ConjugationMor {
        ConjugationMor {
            source: self.target(m),
            h: self.group.inv(m.h),
        }
    }

    fn same(&self, a: &ConjugationMor, b: &ConjugationMor) -> bool {
        a == b
    }
}

/// Base `Σ_r // B_r`, fiber `G^r // G`, braids acting on tuples by the
/// Hurwitz formula and trivially on conjugating elements.
pub struct HurwitzDiagram<'g> {
    base: PermutationBraidGroupoid,
    group: &'g FiniteGroup,
}

impl<'g> HurwitzDiagram<'g> {
    pub fn new(group: &'g FiniteGroup, r: usize) -> Self {
        Self {
            base: PermutationBraidGroupoid { r },
            group,
        }
    }
}

impl<'g> GroupoidDiagram for HurwitzDiagram<'g> {
    type Base = PermutationBraidGroupoid;
    type Fiber = ConjugationGroupoid<'g>;

    fn base(&self) -> &PermutationBraidGroupoid {
        &self.base
    }

    fn fiber(&self, _y: &Permutation) -> ConjugationGroupoid<'g> {
        ConjugationGroupoid {
            group: self.group,
            r: self.base.r,
        }
    }

    fn act_object(&self, g: &BraidMor, x: &Vec<Elem>) -> Vec<Elem> {
        if self.base.r == 0 {
            return x.clone();
        }
        let t = DecoratedTuple {
            sigma: g.source.clone(),
            b: x.clone(),
        };
        braid_act(self.group, &g.braid, &t).expect("tuple matches strands").b
    }

    fn act_morphism(&self, g: &BraidMor, f: &ConjugationMor) -> ConjugationMor {
        ConjugationMor {
            source: self.act_object(g, &f.source),
            h: f.h,
        }
    }
}

/// The Hurwitz groupoid presented directly: objects `Σ_r × G^r`, morphisms
/// `(c, h)` from `(σ, b)` to `c.(h b h⁻¹)`, composition
/// `(c₁, h₁) ∘ (c₀, h₀) = (c₁c₀, h₁h₀)`.
#[derive(Clone, Debug)]
pub struct HurwitzGroupoid<'g> {
    pub group: &'g FiniteGroup,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzMor {
    pub source: DecoratedTuple,
    pub braid: BraidWord,
    pub h: Elem,
}

impl Groupoid for HurwitzGroupoid<'_> {
    type Obj = DecoratedTuple;
    type Mor = HurwitzMor;

    fn objects(&self) -> Vec<DecoratedTuple> {
        hurwitz_space_objects(self.group, self.r)
    }

    fn generators_from(&self, x: &DecoratedTuple) -> Vec<HurwitzMor> {
        let mut out: Vec<HurwitzMor> = braid_generators(self.r)
            .map(|braid| HurwitzMor {
                source: x.clone(),
                braid,
                h: Elem::IDENTITY,
            })
            .collect();
        out.extend(
            self.group
                .elements()
                .filter(|&h| h != Elem::IDENTITY)
                .map(|h| HurwitzMor {
                    source: x.clone(),
                    braid: BraidWord::identity(self.r.max(1)),
                    h,
                }),
        );
        out
    }

    fn source(&self, m: &HurwitzMor) -> DecoratedTuple {
        m.source.clone()
    }

    fn target(&self, m: &HurwitzMor) -> DecoratedTuple {
        let conjugated = conjugate_act(self.group, m.h, &m.source).expect("group element");
        braid_act(self.group, &m.braid, &conjugated).expect("tuple matches strands")
    }

    fn identity(&self, x: &DecoratedTuple) -> HurwitzMor {
        HurwitzMor {
            source: x.clone(),
            braid: BraidWord::identity(self.r.max(1)),
            h: Elem::IDENTITY,
        }
    }

    fn compose(&self, second: &HurwitzMor, first: &HurwitzMor) -> HurwitzMor {
        HurwitzMor {
            source: first.source.clone(),
            braid: first.braid.concat(&second.braid).expect("equal strand counts"),
            h: self.group.mul(second.h, first.h),
        }
    }

    fn inverse(&self, m: &HurwitzMor) -> HurwitzMor {
        HurwitzMor {
            source: self.target(m),
            braid: m.braid.inverse(),
            h: self.group.inv(m.h),
        }
    }

    fn same(&self, a: &HurwitzMor, b: &HurwitzMor) -> bool {
        a.source == b.source && a.h == b.h && a.braid.equivalent(&b.braid)
    }
}

/// Outcome of comparing the Grothendieck construction of the Hurwitz
/// diagram with the direct presentation.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ComparisonReport {
    pub objects: usize,
    pub object_bijection: bool,
    pub generators_checked: usize,
    pub generator_correspondence: bool,
    pub pairs_checked: usize,
    pub composition_law: bool,
    pub failures: Vec<String>,
}

impl ComparisonReport {
    pub fn matches(&self) -> bool {
        self.object_bijection && self.generator_correspondence && self.composition_law
    }
}

fn to_direct(m: &GrothendieckMor<HurwitzDiagram<'_>>) -> HurwitzMor {
    HurwitzMor {
        source: DecoratedTuple {
            sigma: m.source.0.clone(),
            b: m.source.1.clone(),
        },
        braid: m.base.braid.clone(),
        h: m.fiber.h,
    }
}

fn to_tuple((sigma, b): &(Permutation, Vec<Elem>)) -> DecoratedTuple {
    DecoratedTuple {
        sigma: sigma.clone(),
        b: b.clone(),
    }
}

/// Object bijection, generator correspondence and composition law on all
/// composable generator pairs.
pub fn compare_hurwitz_grothendieck(group: &FiniteGroup, r: usize) -> Result<ComparisonReport, HurwitzError> {
    let diagram = HurwitzDiagram::new(group, r);
    let groth = grothendieck(&diagram)?;
    let direct = HurwitzGroupoid { group, r };
    let mut report = ComparisonReport::default();

    let g_objects = groth.objects();
    let mapped: BTreeSet<DecoratedTuple> = g_objects.iter().map(to_tuple).collect();
    let d_objects: BTreeSet<DecoratedTuple> = direct.objects().into_iter().collect();
    report.objects = g_objects.len();
    report.object_bijection = mapped.len() == g_objects.len() && mapped == d_objects;
    if !report.object_bijection {
        report.failures.push("object sets differ".into());
    }

    report.generator_correspondence = true;
    report.composition_law = true;
    for obj in &g_objects {
        let x = to_tuple(obj);
        let g_gens = groth.generators_from(obj);
        let d_gens = direct.generators_from(&x);
        let g_mapped: Vec<HurwitzMor> = g_gens.iter().map(to_direct).collect();
        report.generators_checked += g_gens.len();
        let same_list = g_mapped.len() == d_gens.len()
            && g_mapped.iter().zip(&d_gens).all(|(a, b)| direct.same(a, b));
        if !same_list {
            report.generator_correspondence = false;
            report.failures.push(format!("generators at {x} differ"));
        }
        for (gm, dm) in g_gens.iter().zip(&d_gens) {
            if to_tuple(&groth.target(gm)) != direct.target(dm) {
                report.generator_correspondence = false;
                report.failures.push(format!("targets of {dm:?} differ"));
            }
        }
        for first in &g_gens {
            let mid = groth.target(first);
            for second in groth.generators_from(&mid) {
                report.pairs_checked += 1;
                let composite = groth.compose(&second, first);
                let expected = direct.compose(&to_direct(&second), &to_direct(first));
                let ok = direct.same(&to_direct(&composite), &expected)
                    && to_tuple(&groth.target(&composite)) == direct.target(&expected);
                if !ok {
                    report.composition_law = false;
                    if report.failures.len() < 20 {
                        report
                            .failures
                            .push(format!("composite of {second:?} after {first:?} differs"));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The one-object groupoid of a cyclic group.
    struct Cyclic(usize);

    impl Groupoid for Cyclic {
        type Obj = ();
        type Mor = usize;

        fn objects(&self) -> Vec<()> {
            vec![()]
        }
        fn generators_from(&self, _: &()) -> Vec<usize> {
            if self.0 == 1 { vec![] } else { vec![1, self.0 - 1] }
        }
        fn source(&self, _: &usize) {}
        fn target(&self, _: &usize) {}
        fn identity(&self, _: &()) -> usize {
            0
        }
        fn compose(&self, a: &usize, b: &usize) -> usize {
            (a + b) % self.0
        }
        fn inverse(&self, m: &usize) -> usize {
            (self.0 - m) % self.0
        }
        fn same(&self, a: &usize, b: &usize) -> bool {
            a == b
        }
    }

    /// `Z/n` acting on itself by translation, or trivially.
    struct Translation {
        base: Cyclic,
        fiber_size: usize,
        trivial_fiber: bool,
    }

    /// Fibers are the discrete groupoid on `0..k`.
    struct Discrete(usize);

    impl Groupoid for Discrete {
        type Obj = usize;
        type Mor = usize;

        fn objects(&self) -> Vec<usize> {
            (0..self.0).collect()
        }
        fn generators_from(&self, _: &usize) -> Vec<usize> {
            vec![]
        }
        fn source(&self, m: &usize) -> usize {
            *m
        }
        fn target(&self, m: &usize) -> usize {
            *m
        }
        fn identity(&self, x: &usize) -> usize {
            *x
        }
        fn compose(&self, a: &usize, _: &usize) -> usize {
            *a
        }
        fn inverse(&self, m: &usize) -> usize {
            *m
        }
        fn same(&self, a: &usize, b: &usize) -> bool {
            a == b
        }
    }

    impl GroupoidDiagram for Translation {
        type Base = Cyclic;
        type Fiber = Discrete;

        fn base(&self) -> &Cyclic {
            &self.base
        }
        fn fiber(&self, _: &()) -> Discrete {
            Discrete(self.fiber_size)
        }
        fn act_object(&self, g: &usize, x: &usize) -> usize {
            if self.trivial_fiber { *x } else { (x + g) % self.fiber_size }
        }
        fn act_morphism(&self, g: &usize, f: &usize) -> usize {
            self.act_object(g, f)
        }
    }

    #[test]
    fn trivial_fibers_give_the_base() {
        let d = Translation {
            base: Cyclic(4),
            fiber_size: 1,
            trivial_fiber: true,
        };
        let g = grothendieck(&d).unwrap();
        assert_eq!(g.objects().len(), 1);
        assert_eq!(g.generators_from(&((), 0)).len(), 2);
        assert!(check_presentation(&g, 1000).is_empty());
    }

    #[test]
    fn trivial_base_gives_the_fiber() {
        let s3 = FiniteGroup::symmetric(3);
        let d = HurwitzDiagram::new(&s3, 1);
        let g = grothendieck(&d).unwrap();
        assert_eq!(g.objects().len(), 6);
        assert!(check_presentation(&g, 10_000).is_empty());
    }

    #[test]
    fn non_functorial_diagram_is_rejected() {
        // translation by 1 on Z/3 fibers is not a Z/4 action
        let d = Translation {
            base: Cyclic(4),
            fiber_size: 3,
            trivial_fiber: false,
        };
        assert!(matches!(grothendieck(&d), Err(HurwitzError::Functoriality(_))));
    }

    #[test]
    fn hurwitz_comparison_small() {
        for r in 0..=2 {
            let report = compare_hurwitz_grothendieck(&FiniteGroup::symmetric(3), r).unwrap();
            assert!(report.matches(), "r={r}: {:?}", report.failures);
        }
    }

    #[test]
    fn direct_presentation_is_a_groupoid() {
        let s3 = FiniteGroup::symmetric(3);
        let g = HurwitzGroupoid { group: &s3, r: 2 };
        assert!(check_presentation(&g, 20_000).is_empty());
    }
}
