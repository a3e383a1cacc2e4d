//! Colored operads and brute-force checks of their axioms.
//!
//! [`check_operad_axioms`] enumerates every instance of sequential and
//! parallel associativity, the unit laws, Σ-equivariance and the Σ-action
//! law in which every operation, intermediate composites included, has
//! arity at most `bounds.max_arity`.
//!
//! The set-level operad of normal forms is [`Pi0Operad`]. Its operations are
//! packed into fixed arrays so the exhaustive suites stay allocation free.

use std::fmt::{self, Debug};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{Elem, FiniteGroup};
use crate::hurwitz::ColorSignature;
use crate::perm::Permutation;
use crate::trees::NormalForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("{axiom}: {instances} instances exceed the cap {cap}")]
    CapExceeded { axiom: String, instances: u64, cap: u64 },
    #[error("group order {order} exceeds the bound {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("arity bound {0} is above the supported maximum {max}", max = MAX_ARITY - 1)]
    ArityTooLarge(usize),
    #[error("cannot parse bounds `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// Limits shared by every exhaustive checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest arity of any operation in a checked instance.
    pub max_arity: usize,
    pub max_order: usize,
    /// Largest number of instances a single check may visit.
    pub cap: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_arity: 3,
            max_order: 6,
            cap: 1_000_000,
        }
    }
}

impl FromStr for Bounds {
    type Err = OperadError;

    /// `arity=3,order=6,cap=1000000`; omitted keys keep their defaults.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| OperadError::Parse {
            input: s.to_string(),
            reason,
        };
        let mut b = Bounds::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value in `{part}`")))?;
            let v: u64 = v.trim().parse().map_err(|e| err(format!("`{k}`: {e}")))?;
            match k.trim() {
                "arity" => b.max_arity = v as usize,
                "order" => b.max_order = v as usize,
                "cap" => b.cap = v,
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        Ok(b)
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arity={},order={},cap={}", self.max_arity, self.max_order, self.cap)
    }
}

/// A colored operad with finitely many operations of each arity.
pub trait ColoredOperadModel: Sync {
    type Op: Clone + PartialEq + Debug + Send + Sync;

    fn colors(&self) -> Vec<Elem>;
    fn operations(&self, arity: usize) -> Vec<Self::Op>;
    fn arity(&self, op: &Self::Op) -> usize;
    fn input_color(&self, op: &Self::Op, j: usize) -> Elem;
    fn output_color(&self, op: &Self::Op) -> Elem;
    /// `outer ∘_j inner` for 1-based `j`; colors already match.
    fn compose(&self, outer: &Self::Op, j: usize, inner: &Self::Op) -> Self::Op;
    /// `op·ρ`: the new input `i` is the old input `ρ(i)`.
    fn act(&self, op: &Self::Op, rho: &Permutation) -> Self::Op;
    fn identity(&self, color: Elem) -> Self::Op;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub instances: u64,
    pub failure_count: u64,
    /// The first few failing instances.
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

const WITNESSES: usize = 5;

/// Operations of one arity bucketed by output color.
struct Catalog<Op> {
    by_arity: Vec<Vec<Op>>,
    by_output: Vec<Vec<Vec<usize>>>,
}

impl<Op: Clone> Catalog<Op> {
    fn new<M: ColoredOperadModel<Op = Op>>(model: &M, max_arity: usize, colors: usize) -> Self {
        let by_arity: Vec<Vec<Op>> = (0..=max_arity).map(|a| model.operations(a)).collect();
        let by_output = by_arity
            .iter()
            .map(|ops| {
                let mut buckets = vec![Vec::new(); colors];
                for (i, op) in ops.iter().enumerate() {
                    buckets[model.output_color(op).index()].push(i);
                }
                buckets
            })
            .collect();
        Self { by_arity, by_output }
    }

    fn with_output(&self, arity: usize, color: Elem) -> impl Iterator<Item = &Op> {
        self.by_output[arity][color.index()]
            .iter()
            .map(move |&i| &self.by_arity[arity][i])
    }

    fn count_with_output(&self, arity: usize, color: Elem) -> u64 {
        self.by_output[arity][color.index()].len() as u64
    }
}

#[derive(Default)]
struct Tally {
    instances: u64,
    failures: u64,
    witnesses: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.failures += other.failures;
        let room = WITNESSES.saturating_sub(self.witnesses.len());
        self.witnesses.extend(other.witnesses.into_iter().take(room));
        self
    }

    fn report(self, axiom: &str) -> AxiomReport {
        AxiomReport {
            axiom: axiom.to_string(),
            instances: self.instances,
            failure_count: self.failures,
            failures: self.witnesses,
        }
    }
}

/// Runs `per_outer` for every operation of every arity up to `max_arity`
/// in parallel and merges the tallies in a fixed order.
fn sweep<M, F>(cat: &Catalog<M::Op>, max_arity: usize, per_outer: F) -> Tally
where
    M: ColoredOperadModel,
    F: Fn(&M::Op, usize, &mut Tally) + Sync,
{
    (0..=max_arity)
        .flat_map(|a| (0..cat.by_arity[a].len()).map(move |i| (a, i)))
        .collect::<Vec<_>>()
        .par_chunks(256)
        .map(|chunk| {
            let mut t = Tally::default();
            for &(a, i) in chunk {
                per_outer(&cat.by_arity[a][i], a, &mut t);
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn check_cap(axiom: &str, instances: u64, cap: u64) -> Result<(), OperadError> {
    if instances > cap {
        return Err(OperadError::CapExceeded {
            axiom: axiom.to_string(),
            instances,
            cap,
        });
    }
    Ok(())
}

/// Instance counts per axiom, computed from the catalog before any check
/// runs.
fn instance_counts<M: ColoredOperadModel>(model: &M, cat: &Catalog<M::Op>, n: usize) -> [u64; 5] {
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    let mut seq = 0u64;
    let mut par = 0u64;
    let mut unit = 0u64;
    let mut equi = 0u64;
    let mut action = 0u64;
    for r in 0..=n {
        for x in &cat.by_arity[r] {
            unit += 1 + r as u64;
            action += fact(r) * fact(r);
            for j in 1..=r {
                for s in 0..=n + 1 - r {
                    let ys = cat.count_with_output(s, model.input_color(x, j));
                    equi += ys * fact(r) * fact(s);
                    // sequential: z of arity t into input k of y
                    for y in cat.with_output(s, model.input_color(x, j)) {
                        for k in 1..=s {
                            for t in 0..=(n + 2).saturating_sub(r + s) {
                                seq += cat.count_with_output(t, model.input_color(y, k));
                            }
                        }
                    }
                    // parallel: z of arity t into input k > j of x
                    for k in j + 1..=r {
                        for t in 0..=(n + 2).saturating_sub(r + s).min(n + 1 - r) {
                            par += ys * cat.count_with_output(t, model.input_color(x, k));
                        }
                    }
                }
            }
        }
    }
    [seq, par, unit, equi, action]
}

pub const AXIOMS: [&str; 5] = [
    "associativity-sequential",
    "associativity-parallel",
    "unit",
    "equivariance",
    "action",
];

/// Exhaustive axiom check. Fails with [`OperadError::CapExceeded`] before
/// doing any work if some axiom has more instances than `bounds.cap`.
pub fn check_operad_axioms<M: ColoredOperadModel>(model: &M, bounds: &Bounds) -> Result<Vec<AxiomReport>, OperadError> {
    let n = bounds.max_arity;
    if n + 1 >= MAX_ARITY {
        return Err(OperadError::ArityTooLarge(n));
    }
    let colors = model.colors();
    if colors.len() > bounds.max_order {
        return Err(OperadError::OrderTooLarge {
            order: colors.len(),
            max: bounds.max_order,
        });
    }
    let cat = Catalog::new(model, n, colors.len());
    let counts = instance_counts(model, &cat, n);
    for (axiom, &count) in AXIOMS.iter().zip(&counts) {
        check_cap(axiom, count, bounds.cap)?;
    }
    let perms: Vec<Vec<Permutation>> = (0..=n).map(Permutation::all).collect();

    let seq = sweep::<M, _>(&cat, n, |x, r, t| {
        for j in 1..=r {
            for s in 0..=n + 1 - r {
                for y in cat.with_output(s, model.input_color(x, j)) {
                    let xy = model.compose(x, j, y);
                    for k in 1..=s {
                        for tz in 0..=(n + 2).saturating_sub(r + s) {
                            for z in cat.with_output(tz, model.input_color(y, k)) {
                                let left = model.compose(&xy, j + k - 1, z);
                                let right = model.compose(x, j, &model.compose(y, k, z));
                                t.record(left == right, || format!("x={x:?} j={j} y={y:?} k={k} z={z:?}"));
                            }
                        }
                    }
                }
            }
        }
    });

    let par = sweep::<M, _>(&cat, n, |x, r, t| {
        for j in 1..=r {
            for k in j + 1..=r {
                for s in 0..=n + 1 - r {
                    for y in cat.with_output(s, model.input_color(x, j)) {
                        let xy = model.compose(x, j, y);
                        for tz in 0..=(n + 2).saturating_sub(r + s).min(n + 1 - r) {
                            for z in cat.with_output(tz, model.input_color(x, k)) {
                                let left = model.compose(&xy, k + s - 1, z);
                                let right = model.compose(&model.compose(x, k, z), j, y);
                                t.record(left == right, || format!("x={x:?} j={j} y={y:?} k={k} z={z:?}"));
                            }
                        }
                    }
                }
            }
        }
    });

    let unit = sweep::<M, _>(&cat, n, |x, r, t| {
        let out = model.identity(model.output_color(x));
        t.record(model.compose(&out, 1, x) == *x, || format!("left unit on {x:?}"));
        for j in 1..=r {
            let id = model.identity(model.input_color(x, j));
            t.record(model.compose(x, j, &id) == *x, || format!("right unit at {j} on {x:?}"));
        }
    });

    let equi = sweep::<M, _>(&cat, n, |x, r, t| {
        for j in 1..=r {
            for s in 0..=n + 1 - r {
                for y in cat.with_output(s, model.input_color(x, j)) {
                    let xy = model.compose(x, j, y);
                    for rho in &perms[r] {
                        let xr = model.act(x, rho);
                        let jr = rho.inverse().apply(j - 1) + 1;
                        for tau in &perms[s] {
                            let left = model.compose(&xr, jr, &model.act(y, tau));
                            let right = model.act(&xy, &rho.operadic_compose(j, tau));
                            t.record(left == right, || format!("x={x:?} j={j} y={y:?} rho={rho} tau={tau}"));
                        }
                    }
                }
            }
        }
    });

    let action = sweep::<M, _>(&cat, n, |x, r, t| {
        for rho in &perms[r] {
            let xr = model.act(x, rho);
            for rho2 in &perms[r] {
                let ok = model.act(&xr, rho2) == model.act(x, &rho.compose(rho2));
                t.record(ok, || format!("x={x:?} rho={rho} rho'={rho2}"));
            }
        }
    });

    Ok(vec![
        seq.report(AXIOMS[0]),
        par.report(AXIOMS[1]),
        unit.report(AXIOMS[2]),
        equi.report(AXIOMS[3]),
        action.report(AXIOMS[4]),
    ])
}

/// Largest arity a packed operation can hold.
pub const MAX_ARITY: usize = 8;

/// A normal form `(σ, b)` with its colors, stored inline.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedOp {
    arity: u8,
    output: u8,
    sigma: [u8; MAX_ARITY],
    b: [u8; MAX_ARITY],
    inputs: [u8; MAX_ARITY],
}

impl PackedOp {
    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn from_normal_form(nf: &NormalForm) -> Self {
        let r = nf.arity();
        assert!(r <= MAX_ARITY, "arity {r} does not fit a packed operation");
        let mut op = PackedOp {
            arity: r as u8,
            output: nf.signature.output.0 as u8,
            sigma: [0; MAX_ARITY],
            b: [0; MAX_ARITY],
            inputs: [0; MAX_ARITY],
        };
        for (k, s) in nf.sigma.images().enumerate() {
            op.sigma[k] = s as u8;
        }
        for i in 0..r {
            op.b[i] = nf.b[i].0 as u8;
            op.inputs[i] = nf.signature.inputs[i].0 as u8;
        }
        op
    }

    pub fn to_normal_form(&self) -> NormalForm {
        let r = self.arity();
        let elems = |v: &[u8]| v[..r].iter().map(|&x| Elem(x as u16)).collect::<Vec<_>>();
        NormalForm {
            sigma: Permutation::from_images(self.sigma[..r].iter().map(|&x| x as usize).collect())
                .expect("packed permutation"),
            b: elems(&self.b),
            signature: ColorSignature::new(elems(&self.inputs), Elem(self.output as u16)),
        }
    }
}

impl Debug for PackedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_normal_form())
    }
}

/// The set-level operad of normal forms over a finite group. With
/// `skip_label_premultiply` the composite keeps the inner labels as they
/// are, which breaks the operad axioms.
pub struct Pi0Operad<'g> {
    group: &'g FiniteGroup,
    mul: Vec<u8>,
    inv: Vec<u8>,
    skip_label_premultiply: bool,
}

/// The π₀-level operad of the groupoid model.
pub fn pi0_operad(group: &FiniteGroup) -> Pi0Operad<'_> {
    Pi0Operad::new(group, false)
}

impl<'g> Pi0Operad<'g> {
    pub fn new(group: &'g FiniteGroup, skip_label_premultiply: bool) -> Self {
        assert!(group.order() <= 256, "packed operations store elements in a byte");
        let n = group.order();
        let mut mul = vec![0u8; n * n];
        for a in group.elements() {
            for b in group.elements() {
                mul[a.index() * n + b.index()] = group.mul(a, b).0 as u8;
            }
        }
        let inv = group.elements().map(|a| group.inv(a).0 as u8).collect();
        Self {
            group,
            mul,
            inv,
            skip_label_premultiply,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    #[inline]
    fn m(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.inv.len() + b as usize]
    }

    /// Operations with a given signature, in lexicographic order.
    pub fn operations_with(&self, signature: &ColorSignature) -> Vec<PackedOp> {
        crate::hurwitz::component_objects(self.group, signature)
            .into_iter()
            .map(|x| {
                PackedOp::from_normal_form(&NormalForm {
                    sigma: x.sigma,
                    b: x.b,
                    signature: signature.clone(),
                })
            })
            .collect()
    }
}

impl ColoredOperadModel for Pi0Operad<'_> {
    type Op = PackedOp;

    fn colors(&self) -> Vec<Elem> {
        self.group.elements().collect()
    }

    fn operations(&self, arity: usize) -> Vec<PackedOp> {
        assert!(arity <= MAX_ARITY);
        let n = self.inv.len();
        let mut out = Vec::new();
        let tuples: Vec<Vec<Elem>> = crate::hurwitz::tuples(self.group, arity).collect();
        for sigma in Permutation::all(arity) {
            for b in &tuples {
                for inputs in &tuples {
                    let mut op = PackedOp {
                        arity: arity as u8,
                        output: 0,
                        sigma: [0; MAX_ARITY],
                        b: [0; MAX_ARITY],
                        inputs: [0; MAX_ARITY],
                    };
                    for (k, s) in sigma.images().enumerate() {
                        op.sigma[k] = s as u8;
                    }
                    for i in 0..arity {
                        op.b[i] = b[i].0 as u8;
                        op.inputs[i] = inputs[i].0 as u8;
                    }
                    let mut h = 0u8;
                    for k in 0..arity {
                        let s = op.sigma[k] as usize;
                        let bs = op.b[s];
                        let y = self.m(self.m(bs, op.inputs[s]), self.inv[bs as usize]);
                        h = self.m(h, y);
                    }
                    op.output = h;
                    debug_assert!((h as usize) < n);
                    out.push(op);
                }
            }
        }
        out
    }

    fn arity(&self, op: &PackedOp) -> usize {
        op.arity()
    }

    fn input_color(&self, op: &PackedOp, j: usize) -> Elem {
        Elem(op.inputs[j - 1] as u16)
    }

    fn output_color(&self, op: &PackedOp) -> Elem {
        Elem(op.output as u16)
    }

    fn compose(&self, x: &PackedOp, j: usize, y: &PackedOp) -> PackedOp {
        let (r, s) = (x.arity(), y.arity());
        let target = (j - 1) as u8;
        let mut out = PackedOp {
            arity: (r + s - 1) as u8,
            output: x.output,
            sigma: [0; MAX_ARITY],
            b: [0; MAX_ARITY],
            inputs: [0; MAX_ARITY],
        };
        let mut p = 0;
        for q in 0..r {
            let v = x.sigma[q];
            if v == target {
                for t in 0..s {
                    out.sigma[p] = target + y.sigma[t];
                    p += 1;
                }
            } else {
                out.sigma[p] = if v < target { v } else { v + s as u8 - 1 };
                p += 1;
            }
        }
        let bj = x.b[j - 1];
        let jj = j - 1;
        out.b[..jj].copy_from_slice(&x.b[..jj]);
        out.inputs[..jj].copy_from_slice(&x.inputs[..jj]);
        for t in 0..s {
            out.b[jj + t] = if self.skip_label_premultiply { y.b[t] } else { self.m(bj, y.b[t]) };
            out.inputs[jj + t] = y.inputs[t];
        }
        for i in j..r {
            out.b[i + s - 1] = x.b[i];
            out.inputs[i + s - 1] = x.inputs[i];
        }
        out
    }

    fn act(&self, x: &PackedOp, rho: &Permutation) -> PackedOp {
        let r = x.arity();
        let mut inv = [0u8; MAX_ARITY];
        for i in 0..r {
            inv[rho.apply(i)] = i as u8;
        }
        let mut out = *x;
        for k in 0..r {
            out.sigma[k] = inv[x.sigma[k] as usize];
        }
        for i in 0..r {
            out.b[i] = x.b[rho.apply(i)];
            out.inputs[i] = x.inputs[rho.apply(i)];
        }
        out
    }

    fn identity(&self, color: Elem) -> PackedOp {
        let mut op = PackedOp {
            arity: 1,
            output: color.0 as u8,
            sigma: [0; MAX_ARITY],
            b: [0; MAX_ARITY],
            inputs: [0; MAX_ARITY],
        };
        op.inputs[0] = color.0 as u8;
        op
    }
}
